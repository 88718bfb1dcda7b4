#ifndef SZETA_RATIONAL_HPP
#define SZETA_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <string>
#include <compare>

#include "szeta/errors.hpp"

namespace szeta {

using Int = long long;
using Wide = __int128;

// Exact rational on 64-bit numerator/denominator, always normalized
// (gcd 1, denominator > 0).  Intermediates go through __int128 and are
// range-checked; series coefficients in this project are tiny, so hitting
// the guard means a logic error upstream rather than a legitimate value.
class Rat {
public:
    Rat() : n_(0), d_(1) {}
    Rat(Int n) : n_(n), d_(1) {}
    Rat(Int n, Int d) { init(n, d); }

    Int num() const { return n_; }
    Int den() const { return d_; }
    bool is_zero() const { return n_ == 0; }
    bool is_integer() const { return d_ == 1; }

    friend Rat operator+(const Rat& x, const Rat& y) {
        return from_wide(Wide(x.n_) * y.d_ + Wide(y.n_) * x.d_, Wide(x.d_) * y.d_);
    }
    friend Rat operator-(const Rat& x, const Rat& y) {
        return from_wide(Wide(x.n_) * y.d_ - Wide(y.n_) * x.d_, Wide(x.d_) * y.d_);
    }
    friend Rat operator*(const Rat& x, const Rat& y) {
        return from_wide(Wide(x.n_) * y.n_, Wide(x.d_) * y.d_);
    }
    friend Rat operator/(const Rat& x, const Rat& y) {
        if (y.n_ == 0) throw precondition_violated("Rat: division by zero");
        return from_wide(Wide(x.n_) * y.d_, Wide(x.d_) * y.n_);
    }
    Rat operator-() const { Rat r; r.n_ = -n_; r.d_ = d_; return r; }
    Rat& operator+=(const Rat& y) { *this = *this + y; return *this; }
    Rat& operator-=(const Rat& y) { *this = *this - y; return *this; }
    Rat& operator*=(const Rat& y) { *this = *this * y; return *this; }

    friend bool operator==(const Rat& x, const Rat& y) {
        return x.n_ == y.n_ && x.d_ == y.d_;
    }
    friend std::strong_ordering operator<=>(const Rat& x, const Rat& y) {
        Wide lhs = Wide(x.n_) * y.d_, rhs = Wide(y.n_) * x.d_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    std::string str() const {
        if (d_ == 1) return std::to_string(n_);
        return std::to_string(n_) + "/" + std::to_string(d_);
    }

    // Accepts "n" or "n/d"; rejects anything else (notably decimal points).
    static Rat parse(const std::string& s);

private:
    Int n_, d_;

    void init(Int n, Int d) {
        if (d == 0) throw precondition_violated("Rat: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        Int g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        n_ = n; d_ = d;
    }

    static Rat from_wide(Wide n, Wide d) {
        if (d == 0) throw precondition_violated("Rat: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        Wide an = n < 0 ? -n : n;
        // binary gcd on __int128 via std::gcd is fine with unsigned casts
        Wide g = wide_gcd(an, d);
        if (g > 1) { n /= g; d /= g; }
        constexpr Wide lim = Wide(INT64_MAX);
        if (n > lim || n < -lim || d > lim)
            throw overflow_guard("Rat: value exceeds 64-bit range");
        Rat r;
        r.n_ = Int(n); r.d_ = Int(d);
        return r;
    }

    static Wide wide_gcd(Wide a, Wide b) {
        while (b != 0) { Wide t = a % b; a = b; b = t; }
        return a < 0 ? -a : a;
    }
};

} // namespace szeta

#endif
