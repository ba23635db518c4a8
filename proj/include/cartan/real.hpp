#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <map>
#include <string>

#include "cartan/error.hpp"

namespace cartan {

using BigRational = mpq_class;

BigRational parse_rational(const std::string& text); // "a/b" or "a"
std::string format_rational(const BigRational& q);

// Closed interval [lo, hi] with directed MPFR endpoints (lo rounded down,
// hi rounded up at every operation). All certified real arithmetic in the
// bound formulas goes through this type.
class Ival {
public:
    static constexpr mpfr_prec_t precision = 192;

    Ival();
    Ival(const Ival& o);
    Ival(Ival&& o) noexcept;
    Ival& operator=(const Ival& o);
    Ival& operator=(Ival&& o) noexcept;
    ~Ival();

    static Ival exact_int(long v);
    static Ival exact_uint(unsigned long v);
    static Ival of_mpz(const mpz_class& v);   // exact when representable, else widened
    static Ival of_mpq(const BigRational& v); // directed endpoints
    static Ival of_decimal(const std::string& text); // directed parse of a decimal literal
    static Ival pi();
    static Ival euler_gamma();

    const mpfr_t& lo() const { return lo_; }
    const mpfr_t& hi() const { return hi_; }

    double lo_d() const;
    double hi_d() const;
    double mid_d() const;

    bool contains_zero() const;
    bool is_positive() const; // certified: lo > 0
    bool is_negative() const; // certified: hi < 0

    // Certified order: true only when this.hi < o.lo (resp. <=).
    bool certified_less(const Ival& o) const;
    bool certified_leq(const Ival& o) const;
    bool certified_less(double o) const;
    bool certified_greater(double o) const;

    bool contains(const Ival& o) const; // lo <= o.lo and o.hi <= hi
    bool contains(double v) const;

    double width_d() const;

    Ival operator+(const Ival& o) const;
    Ival operator-(const Ival& o) const;
    Ival operator*(const Ival& o) const;
    Ival operator/(const Ival& o) const; // divisor must not straddle zero
    Ival operator-() const;

    Ival add_int(long v) const { return *this + exact_int(v); }
    Ival mul_int(long v) const { return *this * exact_int(v); }

    Ival log() const;  // requires lo > 0
    Ival exp() const;
    Ival sqrt() const; // requires lo >= 0
    Ival pow(const Ival& e) const; // requires lo > 0
    Ival cos() const;
    Ival abs() const;

    static Ival min(const Ival& x, const Ival& y);
    static Ival max(const Ival& x, const Ival& y);
    static Ival hull(const Ival& x, const Ival& y);

    // Decimal rendering of an endpoint with the stated directed rounding.
    std::string str_lo(int digits = 50) const;
    std::string str_hi(int digits = 50) const;

private:
    mpfr_t lo_;
    mpfr_t hi_;
};

enum class Rounding { up, down, nearest };

std::string rounding_name(Rounding r);

// A certified real bound: the full enclosure plus the endpoint direction the
// caller should read. `up` marks upper bounds, `down` lower estimates.
struct RealBound {
    Ival enclosure;
    Rounding direction = Rounding::up;

    double value_d() const {
        switch (direction) {
            case Rounding::up: return enclosure.hi_d();
            case Rounding::down: return enclosure.lo_d();
            default: return enclosure.mid_d();
        }
    }
    std::string value_str(int digits = 50) const {
        switch (direction) {
            case Rounding::up: return enclosure.str_hi(digits);
            case Rounding::down: return enclosure.str_lo(digits);
            default: return enclosure.str_hi(digits);
        }
    }
};

// Structured result of a bound evaluation.
struct BoundReport {
    std::string formula_id;
    std::map<std::string, std::string> inputs;
    RealBound result;
    std::string anchor;
};

std::string bound_report_json(const BoundReport& r, bool pretty = false);

} // namespace cartan
