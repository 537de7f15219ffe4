#pragma once

// Fourier coefficients of the half-integral weight Eisenstein series E_{k,N},
// E'_{k,N} (N = 4, 8) generating the Eisenstein space of level 16, and the
// integral weight level 2 forms E_k, D_2, E_4, Delta_2.

#include "overpart/eta.hpp"
#include "overpart/linalg.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace overpart {

namespace detail {

inline void require_odd_weight(int k)
{
    if (k < 3 || k % 2 == 0) {
        throw std::invalid_argument("half-integral weight numerator k must be odd and >= 3, got " + std::to_string(k));
    }
}

inline void require_level(int N)
{
    if (N != 4 && N != 8) {
        throw std::invalid_argument("Eisenstein level must be 4 or 8, got " + std::to_string(N));
    }
}

inline std::int64_t signed_by_parity(unsigned lambda, std::uint64_t n)
{
    return (lambda & 1U) ? -static_cast<std::int64_t>(n) : static_cast<std::int64_t>(n);
}

}  // namespace detail

/// c_k^{+/-}(v) = (1 - 2^((2-k)v/2)) / (1 - 2^(2-k)) +/- 2^((2-k)v/2), v even.
inline Rational c_pm(int k, long v, int sign)
{
    if (v < 0 || v % 2 != 0) {
        throw std::invalid_argument("c_pm: v must be even and nonnegative");
    }
    const Rational t = pow2((2 - k) * v / 2);
    const Rational c = (1 - t) / (1 - pow2(2 - k));
    return sign >= 0 ? Rational(c + t) : Rational(c - t);
}

/// C_k(n) with v_n = val_2(n), n' = (-1)^lambda n / 2^(v_n).
inline Rational big_C(int k, std::uint64_t n)
{
    detail::require_odd_weight(k);
    if (n == 0) {
        throw std::invalid_argument("big_C: n must be positive");
    }
    const auto lambda = static_cast<unsigned>((k - 1) / 2);
    const int v = val2(static_cast<std::int64_t>(n));
    const std::int64_t nprime = detail::signed_by_parity(lambda, n >> v);
    if (v % 2 != 0) {
        return c_pm(k, v - 1, -1);
    }
    const std::int64_t r = ((nprime % 4) + 4) % 4;
    if (r == 3) {
        return c_pm(k, v, -1);
    }
    return c_pm(k, v, +1) + pow2(((2 - k) * v + (3 - k)) / 2) * kronecker(nprime, 2);
}

inline Rational gamma_kN(int k, int N, std::uint64_t n)
{
    detail::require_odd_weight(k);
    detail::require_level(N);
    const Rational C = big_C(k, n);
    if (N == 4) {
        return k == 3 ? C - 2 : C;
    }
    const auto lambda = static_cast<unsigned>((k - 1) / 2);
    const std::int64_t r = ((detail::signed_by_parity(lambda, n) % 4) + 4) % 4;
    if (r == 2 || r == 3) {
        return 0;
    }
    return k == 3 ? C - 2 : C - 1;
}

/// sum over odd a, b with (ab)^2 | n of mu(a) omega(a) a^-lambda b^(1-2 lambda).
inline Rational beta(unsigned lambda, const QuadCharacter& omega, std::uint64_t n)
{
    if (n == 0) {
        throw std::invalid_argument("beta: n must be positive");
    }
    Rational total = 0;
    for (std::uint64_t s = 1; s * s <= n; s += 2) {
        if (n % (s * s) != 0) {
            continue;
        }
        for (std::uint64_t a : divisors(s)) {
            const int mu = moebius(a);
            const int chi = omega(static_cast<std::int64_t>(a));
            if (mu == 0 || chi == 0) {
                continue;
            }
            const std::uint64_t b = s / a;
            const Integer den = ipow(Integer(static_cast<unsigned long>(a)), lambda) *
                                ipow(Integer(static_cast<unsigned long>(b)), 2 * lambda - 1);
            total += make_rational(Integer(mu * chi), den);
        }
    }
    return total;
}

/// alpha_{lambda,m} = sqrt(f/m) B_{lambda,omega_m} / (f^lambda B_{2 lambda})
///                    * (1 - omega_m(2) 2^-lambda) / (1 - 2^(-2 lambda)).
inline Rational alpha(unsigned lambda, std::uint64_t m)
{
    if (lambda == 0 || m == 0) {
        throw std::invalid_argument("alpha: lambda and m must be positive");
    }
    const QuadCharacter omega = quad_char(lambda & 1U, m);
    const auto f = static_cast<unsigned long>(omega.conductor);
    const auto root = rational_sqrt(make_rational(Integer(f), Integer(static_cast<unsigned long>(m))));
    if (!root) {
        throw std::logic_error("alpha: f_m/m is not a rational square for m = " + std::to_string(m));
    }
    const Rational two_factor = (1 - omega(2) * pow2(-static_cast<long>(lambda))) / (1 - pow2(-2 * static_cast<long>(lambda)));
    return *root * gen_bernoulli(lambda, omega) / (Rational(ipow(Integer(f), lambda)) * bernoulli(2 * lambda)) * two_factor;
}

/// a_{k,N}(n) (primed = false) or a'_{k,N}(n) (primed = true), n >= 1.
inline Rational eis_coeff(int k, int N, bool primed, std::uint64_t n)
{
    detail::require_odd_weight(k);
    detail::require_level(N);
    if (primed && k == 3) {
        throw std::invalid_argument("E'_{k,N} is only defined for k > 3");
    }
    if (n == 0) {
        throw std::invalid_argument("eis_coeff: n must be positive");
    }
    const auto lambda = static_cast<unsigned>((k - 1) / 2);
    const Rational npow(ipow(Integer(static_cast<unsigned long>(n)), lambda));
    if (primed) {
        const std::uint64_t nN = n * static_cast<std::uint64_t>(N);
        return alpha(lambda, nN) * beta(lambda, quad_char(lambda & 1U, nN), n) * npow;
    }
    const Rational g = gamma_kN(k, N, n);
    if (g == 0) {
        return 0;
    }
    return alpha(lambda, n) * beta(lambda, quad_char(lambda & 1U, n), n) * g * npow;
}

/// S_lambda = 2^(val_2(lambda)+1) for even lambda, 1 for odd lambda.
inline Integer denominator_S(unsigned lambda)
{
    if (lambda % 2 == 1) {
        return 1;
    }
    return ipow(Integer(2), static_cast<unsigned long>(val2(lambda) + 1));
}

/// The rational M with M * (E - 1) integral for E_{k,N}, or M * E' integral for E'_{k,N}:
///   unprimed: 2^(lambda-1) (2^(2 lambda) - 1) B_{2 lambda} S_lambda / lambda
///   primed:   (2^(2 lambda) - 1) B_{2 lambda} S_lambda N^lambda / (lambda 2^lambda)
inline Rational denominator_bound(int k, int N, bool primed)
{
    detail::require_odd_weight(k);
    detail::require_level(N);
    const auto lambda = static_cast<unsigned>((k - 1) / 2);
    const Rational common = Rational(ipow(Integer(2), 2 * lambda) - 1) * bernoulli(2 * lambda) * Rational(denominator_S(lambda));
    if (primed) {
        return common * Rational(ipow(Integer(N), lambda)) / (Rational(lambda) * pow2(lambda));
    }
    return common * pow2(static_cast<long>(lambda) - 1) / Rational(lambda);
}

/// The sharper normalizing constants (S_lambda, S'_{lambda,N}) of the 2-adic refinement.
inline Rational sharper_S(unsigned lambda)
{
    return lambda % 2 == 0 ? pow2(2 - static_cast<long>(lambda)) : pow2(1 - static_cast<long>(lambda));
}

inline Rational sharper_S_prime(unsigned lambda, int N)
{
    if (N == 8) {
        return pow2(-static_cast<long>(lambda));
    }
    if (lambda == 2) {
        return make_rational(1, 2);
    }
    return lambda % 2 == 0 ? pow2(-static_cast<long>(lambda) - 1) : pow2(1 - static_cast<long>(lambda));
}

enum class EisOp { V2, V4, U2 };

inline std::string to_string(EisOp op)
{
    switch (op) {
    case EisOp::V2:
        return "V(2)";
    case EisOp::V4:
        return "V(4)";
    case EisOp::U2:
        return "U(2)";
    }
    return "?";
}

/// One generator of the level 16 Eisenstein space. Post-operators are applied
/// in listed order.
struct EisSpec {
    int k = 3;
    int N = 4;
    bool primed = false;
    std::vector<EisOp> post_ops;

    friend bool operator==(const EisSpec&, const EisSpec&) = default;
};

inline std::string to_string(const EisSpec& s)
{
    std::string out = std::string(s.primed ? "E'" : "E") + "_{" + std::to_string(s.k) + "," + std::to_string(s.N) + "}";
    for (EisOp op : s.post_ops) {
        out += "|" + to_string(op);
    }
    return out;
}

/// The generators of the level 16 Eisenstein space of weight k/2, in order.
inline std::vector<EisSpec> eis_generators_16(int k)
{
    detail::require_odd_weight(k);
    if (k == 3) {
        return {
            {3, 4, false, {}},
            {3, 4, false, {EisOp::V4}},
            {3, 8, false, {}},
            {3, 4, false, {EisOp::U2, EisOp::V2}},
        };
    }
    return {
        {k, 4, false, {}},
        {k, 4, false, {EisOp::V4}},
        {k, 4, true, {}},
        {k, 4, true, {EisOp::V4}},
        {k, 8, false, {}},
        {k, 8, true, {EisOp::V2}},
    };
}

inline void validate(const EisSpec& spec)
{
    detail::require_odd_weight(spec.k);
    detail::require_level(spec.N);
    if (spec.primed && spec.k == 3) {
        throw std::invalid_argument("E'_{3,N} is not a standalone series");
    }
    if (spec.post_ops.empty()) {
        return;
    }
    for (const auto& g : eis_generators_16(spec.k)) {
        if (g == spec) {
            return;
        }
    }
    throw std::invalid_argument("unsupported Eisenstein post-operators: " + to_string(spec));
}

/// Coefficient of q^n in the series named by `spec`.
inline Rational eis_spec_coeff(const EisSpec& spec, std::uint64_t n)
{
    for (auto it = spec.post_ops.rbegin(); it != spec.post_ops.rend(); ++it) {
        switch (*it) {
        case EisOp::V2:
        case EisOp::V4: {
            const std::uint64_t d = *it == EisOp::V2 ? 2 : 4;
            if (n % d != 0) {
                return 0;
            }
            n /= d;
            break;
        }
        case EisOp::U2:
            n *= 2;
            break;
        }
    }
    if (n == 0) {
        return spec.primed ? 0 : 1;
    }
    return eis_coeff(spec.k, spec.N, spec.primed, n);
}

inline Series<RationalRing> eis_series(const EisSpec& spec, std::size_t T)
{
    validate(spec);
    Series<RationalRing> out(RationalRing{}, T);
    for (std::size_t n = 0; n < T; ++n) {
        out[n] = eis_spec_coeff(spec, n);
    }
    return out;
}

struct EisBasis {
    std::vector<EisSpec> specs;
    std::vector<Series<RationalRing>> series;
    /// Coefficient indices whose rows form an invertible minor.
    std::vector<std::size_t> witness_rows;
};

/// Expansions of the level 16 Eisenstein generators with a full-rank witness.
inline EisBasis eis_basis_16(int k, std::size_t T)
{
    EisBasis basis;
    basis.specs = eis_generators_16(k);
    for (const auto& s : basis.specs) {
        basis.series.push_back(eis_series(s, T));
    }
    RationalMatrix rows(T, std::vector<Rational>(basis.specs.size()));
    for (std::size_t n = 0; n < T; ++n) {
        for (std::size_t j = 0; j < basis.specs.size(); ++j) {
            rows[n][j] = basis.series[j][n];
        }
    }
    basis.witness_rows = independent_rows(rows);
    if (basis.witness_rows.size() != basis.specs.size()) {
        throw std::logic_error("Eisenstein generators of weight " + std::to_string(k) + "/2 are rank deficient on " +
                               std::to_string(T) + " coefficients");
    }
    return basis;
}

// ---------------------------------------------------------------------------
// Integral weight, level 1 and 2.

/// E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n, k even >= 2.
inline Series<IntegerRing> integral_eisenstein(int k, std::size_t T)
{
    if (k < 2 || k % 2 != 0) {
        throw std::invalid_argument("integral_eisenstein: k must be even and >= 2");
    }
    const Rational c = -Rational(2 * k) / bernoulli(static_cast<unsigned>(k));
    if (c.get_den() != 1) {
        throw std::logic_error("integral_eisenstein: non-integral normalization");
    }
    Series<IntegerRing> out = Series<IntegerRing>::one(IntegerRing{}, T);
    for (std::size_t n = 1; n < T; ++n) {
        out[n] = c.get_num() * sigma(static_cast<unsigned long>(k - 1), n);
    }
    return out;
}

/// D_2 = 2 E_2|V(2) - E_2.
inline Series<IntegerRing> level2_D2(std::size_t T)
{
    const auto e2 = integral_eisenstein(2, T);
    return scale(Integer(2), op_V(2, e2, T)) - e2;
}

inline Series<IntegerRing> level2_E4(std::size_t T)
{
    return integral_eisenstein(4, T);
}

inline Series<IntegerRing> level2_Delta2(std::size_t T)
{
    return eta_quotient_series(delta2_eta(), T, IntegerRing{});
}

/// coefficient * D_2^a * E_4^b, of weight 2a + 4b.
struct Monomial {
    unsigned a = 0;
    unsigned b = 0;
    Integer coefficient = 1;

    [[nodiscard]] unsigned weight() const { return 2 * a + 4 * b; }
};

inline unsigned monomial_weight(const std::vector<Monomial>& terms)
{
    if (terms.empty()) {
        throw std::invalid_argument("monomial form: no terms");
    }
    for (const auto& t : terms) {
        if (t.weight() != terms.front().weight()) {
            throw std::invalid_argument("monomial form: mixed weights " + std::to_string(terms.front().weight()) +
                                        " and " + std::to_string(t.weight()));
        }
    }
    return terms.front().weight();
}

/// Sum of monomials in D_2 and E_4, all of one weight, over any coefficient ring.
template <class Ring>
Series<Ring> monomial_basis_form(const std::vector<Monomial>& terms, std::size_t T, const Ring& ring)
{
    monomial_weight(terms);
    const auto d2 = reduce(level2_D2(T), ring);
    const auto e4 = reduce(level2_E4(T), ring);
    std::map<unsigned, Series<Ring>> d2_pows;
    std::map<unsigned, Series<Ring>> e4_pows;
    auto power_of = [](std::map<unsigned, Series<Ring>>& memo, const Series<Ring>& base, unsigned e) {
        if (auto it = memo.find(e); it != memo.end()) {
            return it->second;
        }
        auto p = pow(base, e);
        memo.emplace(e, p);
        return p;
    };
    Series<Ring> out(ring, T);
    for (const auto& t : terms) {
        out = out + scale(ring.from_integer(t.coefficient), power_of(d2_pows, d2, t.a) * power_of(e4_pows, e4, t.b));
    }
    return out;
}

inline Series<IntegerRing> monomial_basis_form(const std::vector<Monomial>& terms, std::size_t T)
{
    return monomial_basis_form(terms, T, IntegerRing{});
}

inline std::string to_string(const std::vector<Monomial>& terms)
{
    std::string out;
    for (const auto& t : terms) {
        if (!out.empty()) {
            out += " + ";
        }
        std::string factors;
        auto add = [&factors](const std::string& name, unsigned e) {
            if (e == 0) {
                return;
            }
            if (!factors.empty()) {
                factors += ' ';
            }
            factors += name + (e > 1 ? "^" + std::to_string(e) : "");
        };
        add("D2", t.a);
        add("E4", t.b);
        if (factors.empty()) {
            out += t.coefficient.get_str();
        } else if (t.coefficient == 1) {
            out += factors;
        } else {
            out += t.coefficient.get_str() + " " + factors;
        }
    }
    return out;
}

}  // namespace overpart
