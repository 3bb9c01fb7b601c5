// Copyright 2026 The pcl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "pcl/error.hpp"

namespace pcl {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline constexpr u64 kMaxFactorizable = static_cast<u64>(std::numeric_limits<std::int64_t>::max());

inline u64 checked_add(u64 a, u64 b) {
    u64 r;
    if (__builtin_add_overflow(a, b, &r)) throw ArithmeticError("u64 addition overflow");
    return r;
}

inline u64 checked_mul(u64 a, u64 b) {
    u64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticError("u64 multiplication overflow");
    return r;
}

inline u64 checked_sub(u64 a, u64 b) {
    if (b > a) throw ArithmeticError("u64 subtraction underflow");
    return a - b;
}

/// Largest r with r*r <= n.
constexpr u64 isqrt(u64 n) noexcept {
    if (n < 2) return n;
    u64 r = 0;
    for (u64 bit = u64{1} << 31; bit != 0; bit >>= 1) {
        const u64 c = r | bit;
        if (c * c <= n) r = c;
    }
    return r;
}

constexpr bool is_perfect_square(u64 n) noexcept {
    const u64 r = isqrt(n);
    return r * r == n;
}

struct PrimePower {
    u64 prime;
    unsigned exponent;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime-exponent decomposition of n >= 1, primes strictly increasing.
class Factorization {
public:
    Factorization() = default;

    /// Validates the invariants; throws DomainError if they do not hold.
    Factorization(u64 n, std::vector<PrimePower> factors) : n_(n), factors_(std::move(factors)) {
        if (n_ == 0) throw DomainError("factorization of 0");
        u64 product = 1;
        u64 last = 1;
        for (const auto& [p, e] : factors_) {
            if (p <= last || e == 0) throw DomainError("factors must have increasing primes and exponent >= 1");
            last = p;
            for (unsigned i = 0; i < e; ++i) product = checked_mul(product, p);
        }
        if (product != n_) throw DomainError("factors do not multiply to n");
    }

    u64 n() const noexcept { return n_; }
    std::span<const PrimePower> factors() const noexcept { return factors_; }
    bool empty() const noexcept { return factors_.empty(); }

    unsigned exponent_of(u64 p) const noexcept {
        for (const auto& f : factors_)
            if (f.prime == p) return f.exponent;
        return 0;
    }

    friend bool operator==(const Factorization&, const Factorization&) = default;

private:
    u64 n_ = 1;
    std::vector<PrimePower> factors_;
};

namespace detail {

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

// Deterministic for all 64-bit n with these witnesses.
inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline u64 gcd(u64 a, u64 b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

// Brent's variant of Pollard rho; n odd composite.
inline u64 pollard_brent(u64 n) {
    for (u64 c = 1;; ++c) {
        auto f = [&](u64 x) { return (mulmod(x, x, n) + c) % n; };
        u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
        u64 r = 1;
        constexpr u64 m = 128;
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

inline void collect_prime_factors(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    const u64 d = pollard_brent(n);
    collect_prime_factors(d, out);
    collect_prime_factors(n / d, out);
}

}  // namespace detail

/// Prime factorization by trial division up to 2^10, then Miller-Rabin and
/// Pollard-Brent on the cofactor.
inline Factorization factorize(u64 n) {
    if (n == 0) throw DomainError("factorize: n must be >= 1");
    if (n > kMaxFactorizable) throw DomainError("factorize: n exceeds 2^63-1");
    const u64 n0 = n;
    std::vector<u64> primes;
    for (u64 p = 2; p < 1024 && p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            primes.push_back(p);
            n /= p;
        }
    }
    detail::collect_prime_factors(n, primes);
    std::sort(primes.begin(), primes.end());
    std::vector<PrimePower> factors;
    for (u64 p : primes) {
        if (!factors.empty() && factors.back().prime == p)
            ++factors.back().exponent;
        else
            factors.push_back({p, 1});
    }
    return Factorization(n0, std::move(factors));
}

/// sigma_0: product of (e_i + 1).
inline u64 divisor_count(const Factorization& f) {
    u64 count = 1;
    for (const auto& [p, e] : f.factors()) count = checked_mul(count, e + 1);
    return count;
}

/// sigma_1: product of (p^(e+1) - 1) / (p - 1), evaluated as 1 + p + ... + p^e
/// with checked arithmetic.
inline u64 divisor_sum(const Factorization& f) {
    u64 sum = 1;
    for (const auto& [p, e] : f.factors()) {
        u64 term = 1, power = 1;
        for (unsigned i = 0; i < e; ++i) {
            power = checked_mul(power, p);
            term = checked_add(term, power);
        }
        sum = checked_mul(sum, term);
    }
    return sum;
}

/// sigma_1(n) mod m without ever forming sigma_1(n).
inline u64 divisor_sum_mod(const Factorization& f, u64 m) {
    u64 result = 1 % m;
    for (const auto& [p, e] : f.factors()) {
        u64 term = 1 % m, power = 1 % m;
        const u64 pm = p % m;
        for (unsigned i = 0; i < e; ++i) {
            power = power * pm % m;
            term = (term + power) % m;
        }
        result = result * term % m;
    }
    return result;
}

/// a^2 + b^2 = n with a, b >= 0, decided by the prime criterion: every prime
/// p = 3 (mod 4) divides n to an even power.
inline bool is_sum_of_two_squares(const Factorization& f) {
    return std::ranges::all_of(f.factors(), [](const PrimePower& pp) {
        return pp.prime % 4 != 3 || pp.exponent % 2 == 0;
    });
}

inline bool is_sum_of_two_squares(u64 n) {
    if (n == 0) throw DomainError("is_sum_of_two_squares: n must be >= 1");
    return is_sum_of_two_squares(factorize(n));
}

/// Direct search over a <= sqrt(n/2); the second route for the predicate.
inline bool is_sum_of_two_squares_search(u64 n) {
    if (n == 0) throw DomainError("is_sum_of_two_squares: n must be >= 1");
    for (u64 a = 0; 2 * a * a <= n; ++a)
        if (is_perfect_square(n - a * a)) return true;
    return false;
}

/// Variant with a, b >= 1.
inline bool is_sum_of_two_positive_squares(u64 n) {
    if (n == 0) throw DomainError("is_sum_of_two_squares: n must be >= 1");
    for (u64 a = 1; 2 * a * a <= n; ++a)
        if (is_perfect_square(n - a * a)) return true;
    return false;
}

inline std::string to_string(const Factorization& f) {
    if (f.empty()) return "1";
    std::string s;
    for (const auto& [p, e] : f.factors()) {
        if (!s.empty()) s += " * ";
        s += std::to_string(p);
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

}  // namespace pcl
