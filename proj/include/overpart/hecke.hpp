#pragma once

// Hecke operators on q-expansions, Sturm bounds and mod-m eigenform tests.

#include "overpart/series.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace overpart {

/// Weight k/2 (k odd >= 3), trivial character.
struct HeckeContext {
    int k = 3;

    [[nodiscard]] unsigned lambda() const { return static_cast<unsigned>((k - 1) / 2); }
};

inline HeckeContext hecke_context(int k)
{
    if (k < 3 || k % 2 == 0) {
        throw std::invalid_argument("Hecke context needs an odd weight numerator k >= 3");
    }
    return HeckeContext{k};
}

/// [SL_2(Z) : Gamma_0(N)] = N prod_{p | N} (1 + 1/p).
inline std::uint64_t index_gamma0(std::uint64_t N)
{
    if (N == 0) {
        throw std::invalid_argument("index_gamma0: N must be positive");
    }
    std::uint64_t index = N;
    for (const auto& [p, e] : factorize(N)) {
        index = index / p * (p + 1);
    }
    return index;
}

/// Weight k_numerator/2 on Gamma_0(level); an integral weight w is k_numerator = 2w.
struct SturmQuery {
    std::uint64_t k_numerator = 1;
    std::uint64_t level = 1;
};

/// floor((k/24) * [SL_2(Z) : Gamma_0(N)]) for weight k/2.
inline std::uint64_t sturm_bound(const SturmQuery& q)
{
    return q.k_numerator * index_gamma0(q.level) / 24;
}

namespace detail {

inline void require_odd_prime(std::uint64_t ell)
{
    if (ell == 2) {
        throw std::invalid_argument("T(l^2) is only supported for odd primes l");
    }
    if (!is_prime(ell)) {
        throw std::invalid_argument("T(l^2): " + std::to_string(ell) + " is not prime");
    }
}

}  // namespace detail

/// Coefficient n of g|T(l^2) for any coefficient accessor `a(i)`:
///   a(l^2 n) + l^(lambda-1) ((-1)^lambda n / l) a(n) + l^(2 lambda - 1) a(n / l^2),
/// the last term present only when l^2 | n. (0/l) = 0 for the constant term.
template <class Ring, class Accessor>
typename Ring::value_type hecke_half_integral_coeff(const HeckeContext& ctx, std::uint64_t ell, const Ring& ring,
                                                    Accessor&& a, std::uint64_t n)
{
    const unsigned lambda = ctx.lambda();
    const std::uint64_t ell2 = ell * ell;
    auto value = a(ell2 * n);
    const std::int64_t signed_n = (lambda & 1U) ? -static_cast<std::int64_t>(n) : static_cast<std::int64_t>(n);
    const int chi = kronecker(signed_n, static_cast<std::int64_t>(ell));
    if (chi != 0) {
        const auto mid = ring.from_integer(ipow(Integer(static_cast<unsigned long>(ell)), lambda - 1) * chi);
        value = ring.add(value, ring.mul(mid, a(n)));
    }
    if (n % ell2 == 0) {
        const auto top = ring.from_integer(ipow(Integer(static_cast<unsigned long>(ell)), 2 * lambda - 1));
        value = ring.add(value, ring.mul(top, a(n / ell2)));
    }
    return value;
}

/// g|T(l^2) on a truncated expansion; known to ceil(T / l^2) terms.
template <class Ring>
Series<Ring> hecke_half_integral(const HeckeContext& ctx, std::uint64_t ell, const Series<Ring>& g)
{
    detail::require_odd_prime(ell);
    const std::uint64_t ell2 = ell * ell;
    if (g.trunc() < ell2) {
        throw std::invalid_argument("T(l^2): series known to " + std::to_string(g.trunc()) + " terms, need at least " +
                                    std::to_string(ell2));
    }
    const std::size_t T = (g.trunc() + ell2 - 1) / ell2;
    Series<Ring> out(g.ring(), T);
    auto accessor = [&g](std::uint64_t i) { return g[i]; };
    for (std::size_t n = 0; n < T; ++n) {
        out[n] = hecke_half_integral_coeff(ctx, ell, g.ring(), accessor, n);
    }
    return out;
}

/// T(m) = U(m) + m^(k-1) V(m) on an integral weight k expansion, m an odd prime.
template <class Ring>
Series<Ring> hecke_integral_Tm(std::uint64_t m, unsigned k, const Series<Ring>& a)
{
    if (m == 2 || !is_prime(m)) {
        throw std::invalid_argument("T(m): m must be an odd prime");
    }
    const auto u = op_U(m, a);
    const auto v = op_V(m, a, u.trunc());
    const auto c = a.ring().from_integer(ipow(Integer(static_cast<unsigned long>(m)), k - 1));
    return u + scale(c, v);
}

/// The residue lambda with g|T(l^2) = lambda g (mod m) on 0 <= n <= bound,
/// or nullopt when no single residue fits (including g = 0 on that range).
inline std::optional<std::uint64_t> is_eigenform_mod(const Series<ModRing>& g, const HeckeContext& ctx, std::uint64_t ell,
                                                     std::uint64_t bound)
{
    detail::require_odd_prime(ell);
    const std::uint64_t ell2 = ell * ell;
    if (g.trunc() < ell2 * bound + 1) {
        throw std::invalid_argument("is_eigenform_mod: series known to " + std::to_string(g.trunc()) +
                                    " terms, need " + std::to_string(ell2 * bound + 1));
    }
    const ModRing& R = g.ring();
    auto accessor = [&g](std::uint64_t i) { return g[i]; };
    std::optional<std::uint64_t> eigenvalue;
    std::vector<std::uint64_t> image(bound + 1);
    for (std::uint64_t n = 0; n <= bound; ++n) {
        image[n] = hecke_half_integral_coeff(ctx, ell, R, accessor, n);
        if (!eigenvalue && !R.is_zero(g[n])) {
            eigenvalue = R.mul(image[n], R.inv(g[n]));
        }
    }
    if (!eigenvalue) {
        return std::nullopt;
    }
    for (std::uint64_t n = 0; n <= bound; ++n) {
        if (image[n] != R.mul(*eigenvalue, g[n])) {
            return std::nullopt;
        }
    }
    return eigenvalue;
}

}  // namespace overpart
