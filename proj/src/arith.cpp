#include "szeta/arith.hpp"
#include "szeta/errors.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>

namespace szeta {

// ===========================================================================
// prime table
// ===========================================================================

namespace {
std::vector<Int> g_primes{2, 3, 5, 7};
Int g_sieved_to = 10;
std::mutex g_prime_mutex;
}

const std::vector<Int>& primes_up_to(Int limit) {
    if (limit <= g_sieved_to) return g_primes;
    std::lock_guard<std::mutex> lock(g_prime_mutex);
    if (limit <= g_sieved_to) return g_primes;
    Int n = std::max<Int>(limit, 2 * g_sieved_to);
    std::vector<bool> composite(size_t(n) + 1, false);
    std::vector<Int> primes;
    for (Int i = 2; i <= n; ++i) {
        if (composite[size_t(i)]) continue;
        primes.push_back(i);
        for (Int j = i * i; j <= n; j += i) composite[size_t(j)] = true;
    }
    g_primes = std::move(primes);
    g_sieved_to = n;
    return g_primes;
}

// ===========================================================================
// kronecker symbol
// ===========================================================================

// Cohen, "A Course in Computational Algebraic Number Theory", Alg. 1.4.10.
int kronecker(Int a, Int n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if (a % 2 == 0 && n % 2 == 0) return 0;

    int v = 0;
    while (n % 2 == 0) { n /= 2; ++v; }
    int k = 1;
    if (v % 2 == 1) {
        Int m = ((a % 8) + 8) % 8;          // (2|a) depends on a mod 8
        if (m == 3 || m == 5) k = -1;
    }
    if (n < 0) {
        n = -n;
        if (a < 0) k = -k;
    }
    // n odd, positive from here on; loop of Cohen, Algorithm 1.4.10
    for (;;) {
        if (a == 0) return n > 1 ? 0 : k;
        v = 0;
        while (a % 2 == 0) { a /= 2; ++v; }
        if (v % 2 == 1) {
            Int m = n % 8;
            if (m == 3 || m == 5) k = -k;
        }
        // reciprocity; both a and n are odd, n > 0
        if ((((a % 4) + 4) % 4) == 3 && n % 4 == 3) k = -k;
        Int r = a < 0 ? -a : a;
        a = n % r;
        n = r;
    }
}

// ===========================================================================
// factorization
// ===========================================================================

Int FactoredInteger::value() const {
    Wide v = sign;
    for (auto [p, e] : factors)
        for (int i = 0; i < e; ++i) {
            v *= p;
            if (v > Wide(INT64_MAX) || v < -Wide(INT64_MAX))
                throw overflow_guard("FactoredInteger::value overflow");
        }
    return Int(v);
}

FactoredInteger factorize(Int n) {
    if (n == 0) throw precondition_violated("factorize: n must be nonzero");
    FactoredInteger out;
    if (n < 0) { out.sign = -1; n = -n; }
    if (n > FACTORIZE_LIMIT)
        throw bound_exceeded("factorize: |n| exceeds 10^12");

    const auto& primes = primes_up_to(1000000);
    for (Int p : primes) {
        if (p * p > n) break;
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.factors.emplace_back(p, e);
    }
    if (n > 1) out.factors.emplace_back(n, 1);  // leftover is prime: no divisor <= 10^6
    return out;
}

Int isqrt(Int n) {
    if (n < 0) throw precondition_violated("isqrt: negative input");
    Int r = Int(std::sqrt((double)n));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_square(Int n) {
    if (n < 0) return false;
    Int r = isqrt(n);
    return r * r == n;
}

bool is_prime(Int n) {
    if (n < 2) return false;
    Int r = isqrt(n);
    for (Int p : primes_up_to(r >= 2 ? r : 2)) {
        if (p > r) break;
        if (n % p == 0) return false;
    }
    return true;
}

namespace {
bool is_squarefree(Int n) {
    if (n < 0) n = -n;
    if (n == 0) return false;
    auto f = factorize(n);
    for (auto [p, e] : f.factors)
        if (e > 1) return false;
    return true;
}
}

bool is_fundamental_discriminant(Int d) {
    if (d == 1) return true;
    if (d == 0) return false;
    Int m4 = ((d % 4) + 4) % 4;
    if (m4 == 1) return is_squarefree(d);
    if (m4 != 0) return false;
    Int m = d / 4;
    Int mm4 = ((m % 4) + 4) % 4;
    return (mm4 == 2 || mm4 == 3) && is_squarefree(m);
}

// ===========================================================================
// progressions, CRT, modular exponentiation
// ===========================================================================

std::vector<Int> primes_in_progression(Int r, Int m, int k, Int lo,
                                       const std::function<bool(Int)>& pred,
                                       Int ceiling) {
    if (m <= 0 || k < 0) throw precondition_violated("primes_in_progression: bad m or k");
    Int rr = ((r % m) + m) % m;
    if (std::gcd(rr, m) != 1)
        throw precondition_violated("primes_in_progression: gcd(r, m) != 1");

    std::vector<Int> out;
    if (k == 0) return out;
    const auto& primes = primes_up_to(ceiling);
    for (Int p : primes) {
        if (p > ceiling) break;
        if (p < lo) continue;
        if (p % m != rr) continue;
        if (pred && !pred(p)) continue;
        out.push_back(p);
        if ((int)out.size() == k) return out;
    }
    throw search_exhausted("primes_in_progression: ceiling " + std::to_string(ceiling) +
                           " reached with " + std::to_string(out.size()) + "/" +
                           std::to_string(k) + " primes found");
}

std::optional<std::pair<Int, Int>>
crt_solve(const std::vector<std::pair<Int, Int>>& congruences) {
    Int x = 0, m = 1;
    for (auto [r, mi] : congruences) {
        if (mi <= 0) throw precondition_violated("crt_solve: modulus must be positive");
        Int ri = ((r % mi) + mi) % mi;
        Int g = std::gcd(m, mi);
        if ((ri - x) % g != 0) return std::nullopt;
        // solve x + m*t = ri (mod mi)
        Int m2 = mi / g;
        Int delta = (ri - x) / g % m2;
        // inverse of (m/g) mod m2 via extended gcd
        Int a = (m / g) % m2, inv = 1;
        if (m2 > 1) {
            Int t0 = 0, t1 = 1, r0 = m2, r1 = ((a % m2) + m2) % m2;
            while (r1 != 0) {
                Int q = r0 / r1;
                std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
                std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
            }
            inv = ((t0 % m2) + m2) % m2;
        }
        Wide t = Wide(delta) * inv % m2;
        Wide nx = x + Wide(m) * Int(((t % m2) + m2) % m2);
        Wide nm = Wide(m) * m2;
        if (nm > Wide(INT64_MAX)) throw overflow_guard("crt_solve: modulus overflow");
        m = Int(nm);
        x = Int(nx % m);
    }
    return std::make_pair(((x % m) + m) % m, m);
}

Int power_mod(Int base, Int exp, Int mod) {
    if (mod <= 0) throw precondition_violated("power_mod: modulus must be positive");
    Wide result = 1, b = ((base % mod) + mod) % mod;
    while (exp > 0) {
        if (exp & 1) result = result * b % mod;
        b = b * b % mod;
        exp >>= 1;
    }
    return Int(result);
}

Rat Rat::parse(const std::string& s) {
    auto bad = [&]() { return parse_error("not a rational literal: '" + s + "'"); };
    if (s.empty()) throw bad();
    size_t slash = s.find('/');
    auto to_int = [&](const std::string& part) -> Int {
        if (part.empty()) throw bad();
        size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (i == part.size()) throw bad();
        for (size_t j = i; j < part.size(); ++j)
            if (!isdigit((unsigned char)part[j])) throw bad();
        try {
            return std::stoll(part);
        } catch (const std::exception&) {
            throw bad();
        }
    };
    if (slash == std::string::npos) return Rat(to_int(s));
    Int n = to_int(s.substr(0, slash));
    Int d = to_int(s.substr(slash + 1));
    if (d == 0) throw bad();
    return Rat(n, d);
}

} // namespace szeta
