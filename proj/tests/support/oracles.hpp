#pragma once

// Independent reference implementations used to check the library: they share
// no code paths with the routines under test beyond GMP integer arithmetic.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

/// Number of overpartitions of n, by enumerating partitions into parts <= max_part
/// and weighting each by 2^(number of distinct parts).
inline mpz_class overpartitions_brute(unsigned n, unsigned max_part, std::map<std::pair<unsigned, unsigned>, mpz_class>& memo)
{
    if (n == 0) {
        return 1;
    }
    if (max_part == 0) {
        return 0;
    }
    const auto key = std::make_pair(n, max_part);
    if (auto it = memo.find(key); it != memo.end()) {
        return it->second;
    }
    // Either no part equals max_part, or max_part occurs c >= 1 times (one new distinct part).
    mpz_class total = overpartitions_brute(n, max_part - 1, memo);
    for (unsigned c = 1; c * max_part <= n; ++c) {
        total += 2 * overpartitions_brute(n - c * max_part, max_part - 1, memo);
    }
    memo.emplace(key, total);
    return total;
}

/// Literal enumeration: walks every partition of n (parts non-increasing) and
/// adds 2^(distinct parts). Exponential; meant for small n.
inline void enumerate_partitions(unsigned remaining, unsigned max_part, unsigned distinct, unsigned last, mpz_class& total)
{
    if (remaining == 0) {
        mpz_class w = 1;
        w <<= distinct;
        total += w;
        return;
    }
    for (unsigned part = std::min(remaining, max_part); part >= 1; --part) {
        enumerate_partitions(remaining - part, part, distinct + (part != last ? 1 : 0), part, total);
    }
}

inline mpz_class overpartitions_enumerated(unsigned n)
{
    mpz_class total = 0;
    enumerate_partitions(n, n, 0, 0, total);
    return total;
}

/// Bernoulli numbers B_0..B_n with B_1 = -1/2, via the Akiyama-Tanigawa algorithm
/// (which yields B_1 = +1/2; the sign is flipped afterwards).
inline std::vector<mpq_class> bernoulli_numbers(unsigned n)
{
    std::vector<mpq_class> out(n + 1);
    std::vector<mpq_class> a(n + 1);
    for (unsigned m = 0; m <= n; ++m) {
        a[m] = mpq_class(1, m + 1);
        for (unsigned j = m; j >= 1; --j) {
            a[j - 1] = j * (a[j - 1] - a[j]);
            a[j - 1].canonicalize();
        }
        out[m] = a[0];
    }
    if (n >= 1) {
        out[1] = -out[1];
    }
    return out;
}

inline mpz_class choose(unsigned n, unsigned k)
{
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

/// B_n(x) = sum_k C(n,k) B_k x^(n-k).
inline mpq_class bernoulli_polynomial(unsigned n, const mpq_class& x)
{
    const auto B = bernoulli_numbers(n);
    mpq_class total = 0;
    for (unsigned k = 0; k <= n; ++k) {
        mpq_class xp = 1;
        for (unsigned i = 0; i < n - k; ++i) {
            xp *= x;
        }
        total += mpq_class(choose(n, k)) * B[k] * xp;
    }
    return total;
}

inline int gmp_kronecker(long a, long n)
{
    return mpz_kronecker(mpz_class(a).get_mpz_t(), mpz_class(n).get_mpz_t());
}

/// B_{lambda,chi_d} = f^(lambda-1) sum_{a=1}^{f} chi_d(a) B_lambda(a/f), f = |d|.
inline mpq_class generalized_bernoulli(unsigned lambda, long d)
{
    const long f = d < 0 ? -d : d;
    mpq_class total = 0;
    for (long a = 1; a <= f; ++a) {
        const int chi = gmp_kronecker(d, a);
        if (chi != 0) {
            total += chi * bernoulli_polynomial(lambda, mpq_class(a, f));
        }
    }
    mpq_class fp = 1;
    for (unsigned i = 1; i < lambda; ++i) {
        fp *= f;
    }
    mpq_class r = fp * total;
    r.canonicalize();
    return r;
}

/// Dense O(T^2) product of two coefficient lists, truncated to T.
inline std::vector<mpz_class> naive_mul(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b, std::size_t T)
{
    std::vector<mpz_class> out(T, 0);
    for (std::size_t i = 0; i < T && i < a.size(); ++i) {
        for (std::size_t j = 0; i + j < T && j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

/// Coefficients of prod_{n>=1} (1 - q^(delta n))^r for integer r, by repeated
/// dense multiplication / geometric-series expansion.
inline std::vector<mpz_class> eta_factor_naive(unsigned delta, long r, std::size_t T)
{
    std::vector<mpz_class> out(T, 0);
    out[0] = 1;
    for (std::size_t n = 1; delta * n < T; ++n) {
        const std::size_t step = delta * n;
        for (long rep = 0; rep < (r < 0 ? -r : r); ++rep) {
            if (r > 0) {
                for (std::size_t i = T; i-- > step;) {
                    out[i] -= out[i - step];
                }
            } else {
                for (std::size_t i = step; i < T; ++i) {
                    out[i] += out[i - step];
                }
            }
        }
    }
    return out;
}

/// sum_{d | n} d^k by trial division.
inline mpz_class divisor_sum(unsigned k, unsigned long n)
{
    mpz_class total = 0;
    for (unsigned long d = 1; d <= n; ++d) {
        if (n % d == 0) {
            mpz_class p;
            mpz_ui_pow_ui(p.get_mpz_t(), d, k);
            total += p;
        }
    }
    return total;
}

}  // namespace oracle
