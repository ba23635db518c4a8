#pragma once

#include <utility>

#include "cartan/real.hpp"

namespace cartan {

// Weil height h(a/b) = log max(|a|, b) of a reduced fraction.
RealBound weil_height(const BigRational& j);

// b(j) = h(j) - log max(1, |j|); equals log of the denominator.
RealBound b_of_j(const BigRational& j);

// Two-sided stable-Faltings-height interval from the j-invariant:
// |j| > 3500: h/12 - loglog|j|/2 + [-0.406, +0.159];
// |j| <= 3500: h/12 + [-1.429, -0.135].
std::pair<RealBound, RealBound> faltings_interval(const BigRational& j);
Ival faltings_interval_ival(const BigRational& j);

// Direct q-expansion evaluation of 12F = log den(j) - log|q| - 6 log 2
// - 6 log|log|q|| - 24 sum log|1 - q^n|, for tau = tau_re + i*tau_im in the
// standard fundamental domain. The series is truncated once |q|^n < 1e-30
// and the tail enclosed by 2|q|^{N+1}/(1-|q|).
RealBound faltings_from_tau(const BigRational& tau_re, const BigRational& tau_im,
                            const BigRational& j);

// j(tau) for purely imaginary tau = i*t via the q-expansion, as an interval
// (test oracle for consistent (tau, j) pairs).
Ival j_of_tau_imag(const BigRational& t);

} // namespace cartan
