#pragma once

// Exact integer and rational number-theory primitives: Kronecker symbols,
// Moebius, divisor sums, Bernoulli numbers and polynomials, quadratic
// characters and their generalized Bernoulli numbers.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace overpart {

/// Exact rational in lowest terms with positive denominator.
using Rational = mpq_class;
/// Arbitrary-precision integer.
using Integer = mpz_class;

inline Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0) {
        throw std::domain_error("make_rational: zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(long num, long den = 1)
{
    return make_rational(Integer(num), Integer(den));
}

inline Integer ipow(const Integer& base, unsigned long exp)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

/// base^exp for a possibly negative exponent, exactly.
inline Rational rpow(const Rational& base, long exp)
{
    Rational r;
    if (exp >= 0) {
        mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exp));
        mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exp));
    } else {
        if (base == 0) {
            throw std::domain_error("rpow: zero to a negative power");
        }
        mpz_pow_ui(r.get_num_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(-exp));
        mpz_pow_ui(r.get_den_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(-exp));
    }
    r.canonicalize();
    return r;
}

/// 2^e as an exact rational, e may be negative.
inline Rational pow2(long e)
{
    return rpow(Rational(2), e);
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m)
{
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1U) {
            result = mulmod(result, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1U;
    }
    return result;
}

/// Reduces a (possibly negative) integer into [0, m).
inline std::uint64_t reduce_mod(std::int64_t a, std::uint64_t m)
{
    const auto mm = static_cast<std::int64_t>(m);
    std::int64_t r = a % mm;
    return static_cast<std::uint64_t>(r < 0 ? r + mm : r);
}

/// 2-adic valuation of a nonzero integer.
inline int val2(std::int64_t n)
{
    if (n == 0) {
        throw std::domain_error("val2: zero");
    }
    return __builtin_ctzll(static_cast<std::uint64_t>(n < 0 ? -n : n));
}

/// Trial-division factorization, ascending primes with exponents.
inline std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n)
{
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            unsigned e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) {
        out.emplace_back(n, 1U);
    }
    return out;
}

inline bool is_prime(std::uint64_t n)
{
    if (n < 2) {
        return false;
    }
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            return false;
        }
    }
    return true;
}

/// Odd primes in [lo, hi].
inline std::vector<std::uint64_t> odd_primes(std::uint64_t lo, std::uint64_t hi)
{
    std::vector<std::uint64_t> out;
    if (hi < 3) {
        return out;
    }
    std::vector<bool> composite(hi + 1, false);
    for (std::uint64_t p = 2; p * p <= hi; ++p) {
        if (!composite[p]) {
            for (std::uint64_t q = p * p; q <= hi; q += p) {
                composite[q] = true;
            }
        }
    }
    for (std::uint64_t p = std::max<std::uint64_t>(lo, 3); p <= hi; ++p) {
        if (!composite[p]) {
            out.push_back(p);
        }
    }
    return out;
}

/// The Kronecker symbol (a/n), fully extended to n even, n <= 0 and a = 0.
inline int kronecker(std::int64_t a, std::int64_t n)
{
    if (n == 0) {
        return (a == 1 || a == -1) ? 1 : 0;
    }
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) {
            result = -result;
        }
    }
    const int v = val2(n);
    if (v > 0) {
        if (a % 2 == 0) {
            return 0;
        }
        n >>= v;
        const std::int64_t a8 = ((a % 8) + 8) % 8;
        if ((v & 1) && (a8 == 3 || a8 == 5)) {
            result = -result;
        }
    }
    // Jacobi symbol (a/n) for odd positive n.
    std::int64_t aa = a % n;
    if (aa < 0) {
        aa += n;
    }
    std::int64_t nn = n;
    while (aa != 0) {
        while (aa % 2 == 0) {
            aa /= 2;
            const std::int64_t r = nn % 8;
            if (r == 3 || r == 5) {
                result = -result;
            }
        }
        std::swap(aa, nn);
        if (aa % 4 == 3 && nn % 4 == 3) {
            result = -result;
        }
        aa %= nn;
    }
    return nn == 1 ? result : 0;
}

inline int moebius(std::uint64_t n)
{
    if (n == 0) {
        throw std::domain_error("moebius: n must be positive");
    }
    int mu = 1;
    for (const auto& [p, e] : factorize(n)) {
        if (e > 1) {
            return 0;
        }
        mu = -mu;
    }
    return mu;
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n)
{
    std::vector<std::uint64_t> small;
    std::vector<std::uint64_t> large;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n) {
                large.push_back(n / d);
            }
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

/// sigma_k(n) = sum of d^k over the divisors of n.
inline Integer sigma(unsigned long k, std::uint64_t n)
{
    if (n == 0) {
        throw std::domain_error("sigma: n must be positive");
    }
    Integer s = 0;
    for (std::uint64_t d : divisors(n)) {
        s += ipow(Integer(static_cast<unsigned long>(d)), k);
    }
    return s;
}

/// sigma_k(n) mod `modulus`, by modular exponentiation.
inline std::uint64_t sigma(unsigned long k, std::uint64_t n, std::uint64_t modulus)
{
    if (n == 0) {
        throw std::domain_error("sigma: n must be positive");
    }
    std::uint64_t s = 0;
    for (std::uint64_t d : divisors(n)) {
        s = (s + powmod(d, k, modulus)) % modulus;
    }
    return s;
}

inline Integer binomial(unsigned long n, unsigned long k)
{
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

namespace detail {

struct BernoulliTable {
    std::mutex mutex;
    std::vector<Rational> values{Rational(1)};
};

inline BernoulliTable& bernoulli_table()
{
    static BernoulliTable table;
    return table;
}

}  // namespace detail

/// Bernoulli number B_n with B_1 = -1/2; memoized, thread-safe.
inline Rational bernoulli(unsigned n)
{
    auto& table = detail::bernoulli_table();
    std::lock_guard lock(table.mutex);
    auto& b = table.values;
    // sum_{j=0}^{i} C(i+1, j) B_j = 0
    for (unsigned i = static_cast<unsigned>(b.size()); i <= n; ++i) {
        Rational acc = 0;
        for (unsigned j = 0; j < i; ++j) {
            if (j > 1 && (j & 1U)) {
                continue;
            }
            acc += Rational(binomial(i + 1, j)) * b[j];
        }
        b.push_back(-acc / (i + 1));
    }
    return b[n];
}

/// Bernoulli polynomial B_lambda(x).
inline Rational bernoulli_poly(unsigned lambda, const Rational& x)
{
    Rational acc = 0;
    Rational xp = 1;
    // Horner-free evaluation from the highest power of x downwards.
    for (unsigned i = lambda + 1; i-- > 0;) {
        acc += Rational(binomial(lambda, i)) * bernoulli(i) * xp;
        xp *= x;
    }
    return acc;
}

/// Signed squarefree part of a nonzero integer.
inline std::int64_t squarefree_core(std::int64_t n)
{
    if (n == 0) {
        throw std::domain_error("squarefree_core: zero");
    }
    std::int64_t core = n < 0 ? -1 : 1;
    for (const auto& [p, e] : factorize(static_cast<std::uint64_t>(n < 0 ? -n : n))) {
        if (e & 1U) {
            core *= static_cast<std::int64_t>(p);
        }
    }
    return core;
}

/// Primitive quadratic character attached to (-1)^lambda * m.
struct QuadCharacter {
    bool lambda_odd = false;
    std::uint64_t m = 1;
    std::uint64_t conductor = 1;
    std::int64_t discriminant = 1;

    [[nodiscard]] int operator()(std::int64_t a) const { return kronecker(discriminant, a); }
    [[nodiscard]] bool trivial() const { return discriminant == 1; }

    friend bool operator==(const QuadCharacter&, const QuadCharacter&) = default;
};

inline QuadCharacter quad_char(bool lambda_odd, std::uint64_t m)
{
    if (m == 0) {
        throw std::domain_error("quad_char: m must be positive");
    }
    const std::int64_t signed_m = lambda_odd ? -static_cast<std::int64_t>(m) : static_cast<std::int64_t>(m);
    const std::int64_t core = squarefree_core(signed_m);
    const std::int64_t mod4 = ((core % 4) + 4) % 4;
    const std::int64_t d = mod4 == 1 ? core : 4 * core;
    return QuadCharacter{lambda_odd, m, static_cast<std::uint64_t>(d < 0 ? -d : d), d};
}

namespace detail {

struct GenBernoulliCache {
    std::mutex mutex;
    std::map<std::pair<unsigned, std::int64_t>, Rational> values;
};

inline GenBernoulliCache& gen_bernoulli_cache()
{
    static GenBernoulliCache cache;
    return cache;
}

}  // namespace detail

/// Generalized Bernoulli number B_{lambda,omega} = f^(lambda-1) sum_{a=1}^f omega(a) B_lambda(a/f).
///
/// Evaluated through the integer power sums S_j = sum omega(a) a^j, which is
/// the same sum after expanding the Bernoulli polynomial:
///   B_{lambda,omega} = (1/f) sum_i C(lambda,i) B_i f^i S_{lambda-i}.
/// Results are cached per (lambda, discriminant).
inline Rational gen_bernoulli(unsigned lambda, const QuadCharacter& omega)
{
    if (lambda == 0) {
        throw std::domain_error("gen_bernoulli: lambda must be positive");
    }
    auto& cache = detail::gen_bernoulli_cache();
    const auto key = std::make_pair(lambda, omega.discriminant);
    {
        std::lock_guard lock(cache.mutex);
        if (auto it = cache.values.find(key); it != cache.values.end()) {
            return it->second;
        }
    }

    const std::uint64_t f = omega.conductor;
    std::vector<Integer> power_sums(lambda + 1, Integer(0));
    Integer power;
    for (std::uint64_t a = 1; a <= f; ++a) {
        const int chi = omega(static_cast<std::int64_t>(a));
        if (chi == 0) {
            continue;
        }
        power = 1;
        for (unsigned j = 0; j <= lambda; ++j) {
            if (chi > 0) {
                power_sums[j] += power;
            } else {
                power_sums[j] -= power;
            }
            power *= static_cast<unsigned long>(a);
        }
    }
    Rational acc = 0;
    Integer fpow = 1;
    for (unsigned i = 0; i <= lambda; ++i) {
        acc += Rational(binomial(lambda, i) * fpow * power_sums[lambda - i]) * bernoulli(i);
        fpow *= static_cast<unsigned long>(f);
    }
    acc /= static_cast<unsigned long>(f);

    std::lock_guard lock(cache.mutex);
    cache.values.emplace(key, acc);
    return acc;
}

/// Exact square root of a rational that is a perfect square, or nullopt.
inline std::optional<Rational> rational_sqrt(const Rational& x)
{
    if (x < 0) {
        return std::nullopt;
    }
    Integer num;
    Integer den;
    mpz_sqrt(num.get_mpz_t(), x.get_num_mpz_t());
    mpz_sqrt(den.get_mpz_t(), x.get_den_mpz_t());
    if (num * num != x.get_num() || den * den != x.get_den()) {
        return std::nullopt;
    }
    return make_rational(num, den);
}

}  // namespace overpart
