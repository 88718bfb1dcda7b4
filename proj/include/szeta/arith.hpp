#ifndef SZETA_ARITH_HPP
#define SZETA_ARITH_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "szeta/rational.hpp"

namespace szeta {

// sign (+1/-1; zero input is rejected) together with the sorted list of
// (prime, exponent) pairs of |n|.
struct FactoredInteger {
    int sign = 1;
    std::vector<std::pair<Int, int>> factors;

    Int value() const;          // multiplies back, range-checked
    bool operator==(const FactoredInteger&) const = default;
};

// Full Kronecker symbol (a|n), defined for all integers, following the
// classical extension of Jacobi (Cohen, Algorithm 1.4.10).
int kronecker(Int a, Int n);

// Trial division with a shared prime table.  |n| must be nonzero and at most
// 10^12; above that the routine refuses rather than silently degrading.
FactoredInteger factorize(Int n);
constexpr Int FACTORIZE_LIMIT = 1000000000000LL;

bool is_square(Int n);
Int isqrt(Int n);              // floor sqrt, n >= 0
bool is_prime(Int n);          // trial division against the shared table

// d = 1, or d squarefree with d = 1 mod 4, or d = 4m with m squarefree and
// m = 2 or 3 mod 4.
bool is_fundamental_discriminant(Int d);

// First k primes p = r (mod m) with p >= lo, subject to an optional extra
// predicate, scanned in ascending order below `ceiling`.  gcd(r, m) must be 1.
std::vector<Int> primes_in_progression(Int r, Int m, int k,
                                       Int lo = 2,
                                       const std::function<bool(Int)>& pred = nullptr,
                                       Int ceiling = 10000000LL);

// Solves x = r_i (mod m_i); returns (x, lcm) with 0 <= x < lcm, or nullopt
// when the congruences are incompatible.
std::optional<std::pair<Int, Int>>
crt_solve(const std::vector<std::pair<Int, Int>>& congruences);

// Shared prime table covering at least [2, limit]; may extend further because
// the cache only grows.  Callers iterating it must stop on their own bound.
// Thread-safe; concurrent readers are fine once built.
const std::vector<Int>& primes_up_to(Int limit);

Int power_mod(Int base, Int exp, Int mod);

} // namespace szeta

#endif
