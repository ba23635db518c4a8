#include "cartan/real.hpp"

#include <json.hpp>

#include <cstdio>

namespace cartan {

BigRational parse_rational(const std::string& text) {
    if (text.empty()) fail("ParseError", "empty rational literal");
    mpq_class q;
    if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
        fail("ParseError", "bad rational literal \"" + text + "\"");
    if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
        fail("ParseError", "zero denominator in \"" + text + "\"");
    q.canonicalize();
    return q;
}

std::string format_rational(const BigRational& q) { return q.get_str(); }

Ival::Ival() {
    mpfr_init2(lo_, precision);
    mpfr_init2(hi_, precision);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Ival::Ival(const Ival& o) {
    mpfr_init2(lo_, precision);
    mpfr_init2(hi_, precision);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Ival::Ival(Ival&& o) noexcept {
    mpfr_init2(lo_, precision);
    mpfr_init2(hi_, precision);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

Ival& Ival::operator=(const Ival& o) {
    if (this != &o) {
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    return *this;
}

Ival& Ival::operator=(Ival&& o) noexcept {
    if (this != &o) {
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }
    return *this;
}

Ival::~Ival() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Ival Ival::exact_int(long v) {
    Ival r;
    mpfr_set_si(r.lo_, v, MPFR_RNDD);
    mpfr_set_si(r.hi_, v, MPFR_RNDU);
    return r;
}

Ival Ival::exact_uint(unsigned long v) {
    Ival r;
    mpfr_set_ui(r.lo_, v, MPFR_RNDD);
    mpfr_set_ui(r.hi_, v, MPFR_RNDU);
    return r;
}

Ival Ival::of_mpz(const mpz_class& v) {
    Ival r;
    mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
    return r;
}

Ival Ival::of_mpq(const BigRational& v) {
    Ival r;
    mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
    return r;
}

Ival Ival::of_decimal(const std::string& text) {
    Ival r;
    if (text.empty() || mpfr_set_str(r.lo_, text.c_str(), 10, MPFR_RNDD) != 0 ||
        mpfr_set_str(r.hi_, text.c_str(), 10, MPFR_RNDU) != 0)
        fail("ParseError", "bad decimal literal \"" + text + "\"");
    return r;
}

Ival Ival::pi() {
    Ival r;
    mpfr_const_pi(r.lo_, MPFR_RNDD);
    mpfr_const_pi(r.hi_, MPFR_RNDU);
    return r;
}

Ival Ival::euler_gamma() {
    Ival r;
    mpfr_const_euler(r.lo_, MPFR_RNDD);
    mpfr_const_euler(r.hi_, MPFR_RNDU);
    return r;
}

double Ival::lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Ival::hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }
double Ival::mid_d() const { return 0.5 * (lo_d() + hi_d()); }

bool Ival::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
bool Ival::is_positive() const { return mpfr_sgn(lo_) > 0; }
bool Ival::is_negative() const { return mpfr_sgn(hi_) < 0; }

bool Ival::certified_less(const Ival& o) const { return mpfr_cmp(hi_, o.lo_) < 0; }
bool Ival::certified_leq(const Ival& o) const { return mpfr_cmp(hi_, o.lo_) <= 0; }
bool Ival::certified_less(double o) const { return mpfr_cmp_d(hi_, o) < 0; }
bool Ival::certified_greater(double o) const { return mpfr_cmp_d(lo_, o) > 0; }

bool Ival::contains(const Ival& o) const {
    return mpfr_cmp(lo_, o.lo_) <= 0 && mpfr_cmp(o.hi_, hi_) <= 0;
}

bool Ival::contains(double v) const {
    return mpfr_cmp_d(lo_, v) <= 0 && mpfr_cmp_d(hi_, v) >= 0;
}

double Ival::width_d() const {
    mpfr_t w;
    mpfr_init2(w, precision);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double r = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return r;
}

Ival Ival::operator+(const Ival& o) const {
    Ival r;
    mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
    return r;
}

Ival Ival::operator-(const Ival& o) const {
    Ival r;
    mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
    return r;
}

namespace {

// Endpoint product scan: writes min over the four products into out_lo
// (rounded down) and max into out_hi (rounded up).
void mul_scan(mpfr_ptr out_lo, mpfr_ptr out_hi, mpfr_srcptr a_lo, mpfr_srcptr a_hi,
              mpfr_srcptr b_lo, mpfr_srcptr b_hi) {
    mpfr_t t, best_lo, best_hi;
    mpfr_init2(t, Ival::precision);
    mpfr_init2(best_lo, Ival::precision);
    mpfr_init2(best_hi, Ival::precision);
    const mpfr_srcptr as[2] = {a_lo, a_hi};
    const mpfr_srcptr bs[2] = {b_lo, b_hi};
    bool first = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            mpfr_mul(t, as[i], bs[j], MPFR_RNDD);
            if (first || mpfr_cmp(t, best_lo) < 0) mpfr_set(best_lo, t, MPFR_RNDD);
            mpfr_mul(t, as[i], bs[j], MPFR_RNDU);
            if (first || mpfr_cmp(t, best_hi) > 0) mpfr_set(best_hi, t, MPFR_RNDU);
            first = false;
        }
    mpfr_set(out_lo, best_lo, MPFR_RNDD);
    mpfr_set(out_hi, best_hi, MPFR_RNDU);
    mpfr_clear(t);
    mpfr_clear(best_lo);
    mpfr_clear(best_hi);
}

void div_scan(mpfr_ptr out_lo, mpfr_ptr out_hi, mpfr_srcptr a_lo, mpfr_srcptr a_hi,
              mpfr_srcptr b_lo, mpfr_srcptr b_hi) {
    mpfr_t t, best_lo, best_hi;
    mpfr_init2(t, Ival::precision);
    mpfr_init2(best_lo, Ival::precision);
    mpfr_init2(best_hi, Ival::precision);
    const mpfr_srcptr as[2] = {a_lo, a_hi};
    const mpfr_srcptr bs[2] = {b_lo, b_hi};
    bool first = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            mpfr_div(t, as[i], bs[j], MPFR_RNDD);
            if (first || mpfr_cmp(t, best_lo) < 0) mpfr_set(best_lo, t, MPFR_RNDD);
            mpfr_div(t, as[i], bs[j], MPFR_RNDU);
            if (first || mpfr_cmp(t, best_hi) > 0) mpfr_set(best_hi, t, MPFR_RNDU);
            first = false;
        }
    mpfr_set(out_lo, best_lo, MPFR_RNDD);
    mpfr_set(out_hi, best_hi, MPFR_RNDU);
    mpfr_clear(t);
    mpfr_clear(best_lo);
    mpfr_clear(best_hi);
}

} // namespace

Ival Ival::operator*(const Ival& o) const {
    Ival r;
    mul_scan(r.lo_, r.hi_, lo_, hi_, o.lo_, o.hi_);
    return r;
}

Ival Ival::operator/(const Ival& o) const {
    if (o.contains_zero()) fail("ZeroDivisor", "interval division by an interval containing zero");
    Ival r;
    div_scan(r.lo_, r.hi_, lo_, hi_, o.lo_, o.hi_);
    return r;
}

Ival Ival::operator-() const {
    Ival r;
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

Ival Ival::log() const {
    if (mpfr_sgn(lo_) <= 0) fail("NegativeLog", "log of an interval reaching zero or below");
    Ival r;
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Ival Ival::exp() const {
    Ival r;
    mpfr_exp(r.lo_, lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Ival Ival::sqrt() const {
    if (mpfr_sgn(lo_) < 0) fail("NegativeSqrt", "square root of a partly negative interval");
    Ival r;
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Ival Ival::pow(const Ival& e) const { return (log() * e).exp(); }

Ival Ival::cos() const {
    mpfr_t mid, rad, t, c_lo, c_hi;
    mpfr_init2(mid, precision);
    mpfr_init2(rad, precision);
    mpfr_init2(t, precision);
    mpfr_init2(c_lo, precision);
    mpfr_init2(c_hi, precision);
    mpfr_add(mid, lo_, hi_, MPFR_RNDN);
    mpfr_div_ui(mid, mid, 2, MPFR_RNDN);
    mpfr_sub(rad, hi_, mid, MPFR_RNDU);
    mpfr_sub(t, mid, lo_, MPFR_RNDU);
    if (mpfr_cmp(t, rad) > 0) mpfr_set(rad, t, MPFR_RNDU);
    mpfr_cos(c_lo, mid, MPFR_RNDD);
    mpfr_cos(c_hi, mid, MPFR_RNDU);
    Ival r;
    mpfr_sub(r.lo_, c_lo, rad, MPFR_RNDD);
    mpfr_add(r.hi_, c_hi, rad, MPFR_RNDU);
    if (mpfr_cmp_si(r.lo_, -1) < 0) mpfr_set_si(r.lo_, -1, MPFR_RNDD);
    if (mpfr_cmp_si(r.hi_, 1) > 0) mpfr_set_si(r.hi_, 1, MPFR_RNDU);
    mpfr_clear(mid);
    mpfr_clear(rad);
    mpfr_clear(t);
    mpfr_clear(c_lo);
    mpfr_clear(c_hi);
    return r;
}

Ival Ival::abs() const {
    if (mpfr_sgn(lo_) >= 0) return *this;
    if (mpfr_sgn(hi_) <= 0) return -*this;
    Ival r;
    mpfr_set_zero(r.lo_, 1);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    if (mpfr_cmp(hi_, r.hi_) > 0) mpfr_set(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Ival Ival::min(const Ival& x, const Ival& y) {
    Ival r;
    mpfr_min(r.lo_, x.lo_, y.lo_, MPFR_RNDD);
    mpfr_min(r.hi_, x.hi_, y.hi_, MPFR_RNDU);
    return r;
}

Ival Ival::max(const Ival& x, const Ival& y) {
    Ival r;
    mpfr_max(r.lo_, x.lo_, y.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, x.hi_, y.hi_, MPFR_RNDU);
    return r;
}

Ival Ival::hull(const Ival& x, const Ival& y) {
    Ival r;
    mpfr_min(r.lo_, x.lo_, y.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, x.hi_, y.hi_, MPFR_RNDU);
    return r;
}

std::string Ival::str_lo(int digits) const {
    char buf[256];
    mpfr_snprintf(buf, sizeof buf, "%.*R*e", digits, MPFR_RNDD, lo_);
    return buf;
}

std::string Ival::str_hi(int digits) const {
    char buf[256];
    mpfr_snprintf(buf, sizeof buf, "%.*R*e", digits, MPFR_RNDU, hi_);
    return buf;
}

std::string rounding_name(Rounding r) {
    switch (r) {
        case Rounding::up: return "up";
        case Rounding::down: return "down";
        case Rounding::nearest: return "nearest";
    }
    return "?";
}

std::string bound_report_json(const BoundReport& r, bool pretty) {
    nlohmann::ordered_json j;
    j["formula_id"] = r.formula_id;
    nlohmann::ordered_json in = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.inputs) in[k] = v;
    j["inputs"] = in;
    j["value"] = r.result.value_str(40);
    j["value_double"] = r.result.value_d();
    j["enclosure"] = {{"lo", r.result.enclosure.str_lo(40)}, {"hi", r.result.enclosure.str_hi(40)}};
    j["rounding"] = rounding_name(r.result.direction);
    j["anchor"] = r.anchor;
    return pretty ? j.dump(2) : j.dump();
}

} // namespace cartan
