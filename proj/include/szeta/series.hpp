#pragma once

#include <vector>

#include "szeta/rational.hpp"

namespace szeta {

// Truncated Dirichlet series: exact coefficients a(1)..a(limit), stored with
// coeffs[n - 1] = a(n).  Every operation works at a fixed truncation and
// never consults indices beyond it.
struct CoeffSeries {
    Int limit = 0;
    std::vector<Rat> coeffs;

    CoeffSeries() = default;
    explicit CoeffSeries(Int limit_) : limit(limit_), coeffs(std::size_t(limit_)) {}

    Rat& at(Int n) { return coeffs[std::size_t(n - 1)]; }
    const Rat& at(Int n) const { return coeffs[std::size_t(n - 1)]; }

    friend bool operator==(const CoeffSeries&, const CoeffSeries&) = default;
};

// Taylor coefficients of one local Euler factor at p: taylor[k] multiplies
// p^{-ks}.  Factors fed to euler_product must have taylor[0] = 1.
struct LocalFactor {
    Int p = 0;
    std::vector<Rat> taylor;
};

// Dirichlet convolution: coefficient at n is sum of f(d) g(n/d) over d | n.
// Both inputs must share one limit; throws limit_mismatch otherwise.
CoeffSeries convolve(const CoeffSeries& f, const CoeffSeries& g);

// Multiplicative expansion of a finite product of local factors: the
// coefficient at n multiplies taylor[e] over the prime powers p^e || n.
// A prime without a supplied factor carries the constant factor 1, so any n
// it divides gets coefficient zero.  Duplicate primes are rejected.
CoeffSeries euler_product(const std::vector<LocalFactor>& factors, Int limit);

// Coefficients of zeta(a s - b): value m^b at n = m^a, zero elsewhere; a >= 1.
CoeffSeries zeta_shift(Int a, Int b, Int limit);

// Pointwise combinations at a shared limit (limit_mismatch otherwise).
CoeffSeries add(const CoeffSeries& f, const CoeffSeries& g);
CoeffSeries scale(const CoeffSeries& f, const Rat& c);

}  // namespace szeta
