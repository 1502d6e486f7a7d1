#ifndef K3FM_ARITH_HPP
#define K3FM_ARITH_HPP

#include <cstdint>
#include <numeric>
#include <limits>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "k3fm/error.hpp"

namespace k3fm {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// machine-integer number theory
// ---------------------------------------------------------------------------

/// Non-negative residue of a modulo n (n > 0).
inline std::int64_t mod(std::int64_t a, std::int64_t n)
{
    std::int64_t r = a % n;
    return r < 0 ? r + n : r;
}

inline std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t n)
{
    __int128 r = static_cast<__int128>(a) * b % n;
    if (r < 0)
        r += n;
    return static_cast<std::int64_t>(r);
}

inline std::int64_t gcd(std::int64_t a, std::int64_t b)
{
    return std::gcd(a, b);
}

inline std::int64_t lcm(std::int64_t a, std::int64_t b)
{
    if (a == 0 || b == 0)
        return 0;
    return a / gcd(a, b) * b;
}

/// Extended Euclid: returns (g, x, y) with a*x + b*y = g = gcd(a,b) >= 0.
inline std::tuple<std::int64_t, std::int64_t, std::int64_t> ext_gcd(std::int64_t a, std::int64_t b)
{
    std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_u = 0, u = 1;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
        std::tie(old_u, u) = std::make_pair(u, old_u - q * u);
    }
    if (old_r < 0)
        return {-old_r, -old_s, -old_u};
    return {old_r, old_s, old_u};
}

/// Inverse of a modulo n; requires gcd(a, n) = 1.
inline std::int64_t inv_mod(std::int64_t a, std::int64_t n)
{
    if (n == 1)
        return 0;
    auto [g, x, y] = ext_gcd(mod(a, n), n);
    require(g == 1, ErrorKind::InvalidParameter,
            std::to_string(a) + " is not a unit modulo " + std::to_string(n));
    return mod(x, n);
}

struct PrimePower {
    std::int64_t p;
    int k;
    std::int64_t pk;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorisation of |n| by trial division, primes ascending. 0 and ±1 give {}.
inline std::vector<PrimePower> factorize(std::int64_t n)
{
    std::vector<PrimePower> out;
    if (n < 0)
        n = -n;
    if (n < 2)
        return out;
    for (std::int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0)
            continue;
        PrimePower f{p, 0, 1};
        while (n % p == 0) {
            n /= p;
            ++f.k;
            f.pk *= p;
        }
        out.push_back(f);
    }
    if (n > 1)
        out.push_back({n, 1, n});
    return out;
}

inline bool is_prime(std::int64_t n)
{
    if (n < 2)
        return false;
    auto f = factorize(n);
    return f.size() == 1 && f[0].k == 1;
}

inline std::int64_t euler_phi(std::int64_t n)
{
    require(n >= 1, ErrorKind::InvalidParameter, "phi needs n >= 1");
    std::int64_t r = n;
    for (const auto& f : factorize(n))
        r = r / f.p * (f.p - 1);
    return r;
}

/// Number of distinct prime factors; omega(1) = 0.
inline int omega(std::int64_t n)
{
    return static_cast<int>(factorize(n).size());
}

inline bool is_prime_power(std::int64_t n)
{
    return factorize(n).size() == 1;
}

/// CRT idempotent for the p-part of Z/n: e = 1 mod p^k, e = 0 mod n/p^k, 0 <= e < n.
inline std::int64_t crt_idempotent(std::int64_t n, std::int64_t pk)
{
    std::int64_t rest = n / pk;
    if (rest == 1)
        return mod(1, n);
    // rest * (rest^{-1} mod pk)
    return mulmod(rest, inv_mod(rest, pk), n);
}

// ---------------------------------------------------------------------------
// rationals
// ---------------------------------------------------------------------------

inline Rational make_rational(std::int64_t num, std::int64_t den)
{
    return Rational(BigInt(num), BigInt(den));
}

/// Representative of x in [0, modulus) for a positive integer modulus.
inline Rational reduce_mod(const Rational& x, std::int64_t modulus)
{
    BigInt num = numerator(x);
    BigInt den = denominator(x);
    BigInt m = den * modulus;
    BigInt r = num % m;
    if (r < 0)
        r += m;
    return Rational(r, den);
}

inline bool is_integral(const Rational& x)
{
    return denominator(x) == 1;
}

/// "p/q" in lowest terms, or "p" when integral.
inline std::string to_string(const Rational& x)
{
    if (denominator(x) == 1)
        return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

inline std::int64_t to_int64(const BigInt& x)
{
    require(x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max(),
            ErrorKind::Capacity, "integer " + x.str() + " exceeds 64-bit range");
    return x.convert_to<std::int64_t>();
}

} // namespace k3fm

#endif // K3FM_ARITH_HPP
