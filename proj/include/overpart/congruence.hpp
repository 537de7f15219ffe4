#pragma once

// Per-prime constants, the forms g_m = F^{a_m} h_m, Sturm-bound certification
// of f|U(m) = g_m (mod m), eigenvalue classification and congruence families
// pbar(m l^e n) = 0 (mod m).

#include "overpart/eisenstein.hpp"
#include "overpart/hecke.hpp"
#include "overpart/linalg.hpp"
#include "overpart/overpartition.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace overpart {

struct PrimeParams {
    std::uint32_t m = 3;
    int k = 5;
    int a = 5;
    int r = 8;
    std::vector<Monomial> h;
};

/// k_m, a_m, r_m for an odd prime m, with h_m left empty.
inline PrimeParams prime_constants(std::uint32_t m)
{
    if (m < 3 || !is_prime(m)) {
        throw std::invalid_argument("prime_params: m must be an odd prime, got " + std::to_string(m));
    }
    PrimeParams p;
    p.m = m;
    p.k = m == 3 ? 5 : static_cast<int>(m) - 2;
    p.a = static_cast<int>((8 - m % 8) % 8);
    p.r = (static_cast<int>(m) * (16 - p.a) - 17) / 2;
    return p;
}

/// The constants for m with a caller supplied h_m; a_m + 2 weight(h_m) must equal k_m.
inline PrimeParams prime_params(std::uint32_t m, std::vector<Monomial> h)
{
    PrimeParams p = prime_constants(m);
    const unsigned w = monomial_weight(h);
    if (p.a + 2 * static_cast<int>(w) != p.k) {
        throw std::invalid_argument("prime_params: h_" + std::to_string(m) + " has weight " + std::to_string(w) +
                                    " but F^" + std::to_string(p.a) + " h must have weight " + std::to_string(p.k) +
                                    "/2");
    }
    p.h = std::move(h);
    return p;
}

inline const std::map<std::uint32_t, std::vector<Monomial>>& builtin_hm_table()
{
    static const std::map<std::uint32_t, std::vector<Monomial>> table{
        {3, {{0, 0, 1}}},
        {5, {{0, 0, 1}}},
        {7, {{1, 0, 1}}},
        {11, {{1, 0, 1}}},
        {13, {{0, 1, 1}}},
        {17, {{2, 0, 13}, {0, 1, 5}}},
        {19, {{3, 0, 11}, {1, 1, 9}}},
    };
    return table;
}

inline PrimeParams prime_params(std::uint32_t m)
{
    const auto& table = builtin_hm_table();
    const auto it = table.find(m);
    if (it == table.end()) {
        throw std::invalid_argument("prime_params: no built-in h_m for m = " + std::to_string(m) +
                                    " (supported: 3, 5, 7, 11, 13, 17, 19; supply h_m explicitly otherwise)");
    }
    return prime_params(m, it->second);
}

/// F = 1/f = 1 + 2 sum_{j>=1} (-1)^j q^(j^2).
template <class Ring>
Series<Ring> theta_F(std::size_t T, const Ring& ring)
{
    Series<Ring> F(ring, T);
    F[0] = ring.one();
    for (std::size_t j = 1; j * j < T; ++j) {
        F[j * j] = ring.from_int(j % 2 == 1 ? -2 : 2);
    }
    return F;
}

/// g_m = F^{a_m} h_m reduced mod m.
inline Series<ModRing> build_gm(const PrimeParams& params, std::size_t T)
{
    if (T == 0) {
        throw std::invalid_argument("build_gm: T must be positive");
    }
    const ModRing R(params.m);
    return pow(theta_F(T, R), static_cast<unsigned>(params.a)) * monomial_basis_form(params.h, T, R);
}

inline Series<ModRing> build_gm(std::uint32_t m, std::size_t T)
{
    return build_gm(prime_params(m), T);
}

/// (f|U(m))(0..T-1) mod m.
inline Series<ModRing> f_U_m(std::uint32_t m, std::size_t T, ResidueStore& store)
{
    const auto table = store.residues(m, static_cast<std::uint64_t>(m) * (T - 1) + 1);
    Series<ModRing> out(ModRing(m), T);
    for (std::size_t n = 0; n < T; ++n) {
        out[n] = table->residues[m * n];
    }
    return out;
}

/// h'_m = (beta|T(m)) / Delta_2 with beta = f^(1 + a_m m) Delta_2^m, an exact
/// integral form of weight r_m. Checks F^{a_m} h'_m = f|U(m) (mod m) on the result.
inline Series<IntegerRing> compute_hm_prime(std::uint32_t m, std::size_t T)
{
    const PrimeParams p = prime_constants(m);
    const auto mi = static_cast<std::int64_t>(m);
    const EtaQuotient beta_eta{{1, 8 * mi - 2 - 2 * mi * p.a}, {2, 8 * mi + 1 + mi * p.a}};
    const IntegerRing Z;
    const std::size_t Tb = static_cast<std::size_t>(m) * (T + 1);
    const auto beta = eta_quotient_series(beta_eta, Tb, Z);
    const auto image = hecke_integral_Tm(m, static_cast<unsigned>(p.r + 8), beta).truncated(T + 1);
    if (image[0] != 0) {
        throw std::domain_error("compute_hm_prime: beta|T(m) does not vanish at infinity");
    }
    Series<IntegerRing> shifted(Z, T);
    for (std::size_t n = 0; n < T; ++n) {
        shifted[n] = image[n + 1];
    }
    const auto delta2 = eta_quotient_series(delta2_eta(), T + 1, Z);
    Series<IntegerRing> delta2_over_q(Z, T);
    for (std::size_t n = 0; n < T; ++n) {
        delta2_over_q[n] = delta2[n + 1];
    }
    auto h = divide(shifted, delta2_over_q);

    const ModRing R(m);
    const auto lhs = pow(theta_F(T, R), static_cast<unsigned>(p.a)) * reduce(h, R);
    const auto rhs = overpartition_series(static_cast<std::size_t>(m) * (T - 1) + 1, R);
    for (std::size_t n = 0; n < T; ++n) {
        if (lhs[n] != rhs[m * n]) {
            throw std::logic_error("compute_hm_prime: F^a h' differs from f|U(m) mod m at n = " + std::to_string(n));
        }
    }
    return h;
}

struct VerificationReport {
    std::string subject;
    bool pass = false;
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    std::uint64_t modulus = 0;
    std::optional<std::uint64_t> witness;
    std::string detail;
};

inline std::uint64_t gm_sturm_bound(const PrimeParams& params)
{
    return sturm_bound({static_cast<std::uint64_t>(params.k), 16});
}

/// f|U(m) = g_m (mod m) on 0 <= n <= Sturm bound for weight k_m/2 on Gamma_0(16).
inline VerificationReport verify_gm_congruence(const PrimeParams& params, ResidueStore& store)
{
    const std::uint64_t bound = gm_sturm_bound(params);
    const auto lhs = f_U_m(params.m, bound + 1, store);
    const auto rhs = build_gm(params, bound + 1);
    VerificationReport report{"f|U(" + std::to_string(params.m) + ") = F^" + std::to_string(params.a) + " (" +
                                  to_string(params.h) + ") mod " + std::to_string(params.m),
                              true, 0, bound, params.m, std::nullopt, ""};
    for (std::uint64_t n = 0; n <= bound; ++n) {
        if (lhs[n] != rhs[n]) {
            report.pass = false;
            report.witness = n;
            report.detail = "coefficient " + std::to_string(n) + ": pbar(" + std::to_string(params.m * n) +
                            ") = " + std::to_string(lhs[n]) + ", g_m has " + std::to_string(rhs[n]);
            return report;
        }
    }
    return report;
}

/// Generators of the level 16 Eisenstein space reduced mod p to T terms.
inline std::vector<Series<ModRing>> eisenstein_generators_mod(int k, std::uint64_t p, std::size_t T)
{
    const ModRing R(p);
    std::vector<Series<ModRing>> out;
    for (const auto& spec : eis_generators_16(k)) {
        const auto s = eis_series(spec, T);
        Series<ModRing> r(R, T);
        for (std::size_t n = 0; n < T; ++n) {
            r[n] = R.from_rational(s[n]);
        }
        out.push_back(std::move(r));
    }
    return out;
}

/// Coefficients x_j (one per generator of eis_generators_16(k)) with
/// sum x_j G_j = g (mod p) on the first g.trunc() terms, if any exist.
inline std::optional<std::vector<std::uint64_t>> solve_eisenstein_combination_mod(const Series<ModRing>& g, int k)
{
    const std::uint64_t p = g.ring().modulus();
    const auto gens = eisenstein_generators_mod(k, p, g.trunc());
    std::vector<std::vector<std::uint64_t>> columns;
    for (const auto& s : gens) {
        columns.emplace_back(s.coeffs().begin(), s.coeffs().end());
    }
    return solve_mod(columns, std::vector<std::uint64_t>(g.coeffs().begin(), g.coeffs().end()), p);
}

/// The stated weight 9/2 combination for g_11, as coefficients of eis_generators_16(9).
inline std::vector<std::uint64_t> stated_g11_combination()
{
    return {9, 4, 7, 4, 0, 7};
}

/// g_11 against 9 E_{9,4} + 4 E_{9,4}|V(4) + 7 E'_{9,4} + 4 E'_{9,4}|V(4) + 7 E'_{9,8}|V(2)
/// (mod 11) on 0 <= n < terms.
inline VerificationReport verify_g11(std::size_t terms = 10)
{
    const ModRing R(11);
    const auto g = build_gm(11, terms);
    const auto gens = eisenstein_generators_mod(9, 11, terms);
    const auto coeffs = stated_g11_combination();
    Series<ModRing> combo(R, terms);
    for (std::size_t j = 0; j < gens.size(); ++j) {
        combo = combo + scale(coeffs[j] % 11, gens[j]);
    }
    VerificationReport report{"g_11 = 9 E_{9,4} + 4 E_{9,4}|V(4) + 7 E'_{9,4} + 4 E'_{9,4}|V(4) + 7 E'_{9,8}|V(2) mod 11",
                              true, 0, terms - 1, 11, std::nullopt, ""};
    for (std::size_t n = 0; n < terms; ++n) {
        if (g[n] != combo[n]) {
            report.pass = false;
            report.witness = n;
            report.detail = "coefficient " + std::to_string(n) + ": g_11 has " + std::to_string(g[n]) +
                            ", combination has " + std::to_string(combo[n]);
            break;
        }
    }
    if (const auto solved = solve_eisenstein_combination_mod(g, 9)) {
        std::string sol;
        for (std::size_t j = 0; j < solved->size(); ++j) {
            sol += (j ? ", " : "") + std::to_string((*solved)[j]);
        }
        report.detail += (report.detail.empty() ? "" : "; ") +
                         std::string("combination satisfied by g_11 mod 11 on these terms: (") + sol + ")";
    }
    return report;
}

struct FamilyClass {
    int exponent = 3;
    int epsilon = 0;
    std::uint64_t eigenvalue = 0;

    friend bool operator==(const FamilyClass&, const FamilyClass&) = default;
};

/// Classifies a T(l^2) eigenvalue lambda mod m: exponent 3 when lambda = 0,
/// exponent 2 with epsilon when lambda = epsilon l^((k_m-3)/2).
inline std::optional<FamilyClass> classify_eigenvalue(std::uint32_t m, std::uint64_t ell, std::uint64_t eigenvalue)
{
    if (ell % 2 == 0 || ell == m) {
        throw std::invalid_argument("classify_eigenvalue: l must be odd and different from m");
    }
    const PrimeParams p = prime_constants(m);
    const std::uint64_t lambda = eigenvalue % m;
    if (lambda == 0) {
        return FamilyClass{3, 0, lambda};
    }
    const std::uint64_t t = powmod(ell % m, static_cast<std::uint64_t>((p.k - 3) / 2), m);
    if (lambda == t) {
        return FamilyClass{2, 1, lambda};
    }
    if (lambda == (m - t) % m) {
        return FamilyClass{2, -1, lambda};
    }
    return std::nullopt;
}

/// lambda_{m,l} = 1 + l^(k_m - 2) (mod m), the Eisenstein eigenvalue of T(l^2).
inline std::uint64_t eisenstein_eigenvalue(std::uint32_t m, std::uint64_t ell)
{
    const PrimeParams p = prime_constants(m);
    return (1 + powmod(ell % m, static_cast<std::uint64_t>(p.k - 2), m)) % m;
}

inline std::optional<FamilyClass> classify_eigenvalue(std::uint32_t m, std::uint64_t ell)
{
    return classify_eigenvalue(m, ell, eisenstein_eigenvalue(m, ell));
}

enum class FamilyStatus { Arithmetic, Verified, Candidate, Failed };

inline std::string to_string(FamilyStatus s)
{
    switch (s) {
    case FamilyStatus::Arithmetic:
        return "arithmetic";
    case FamilyStatus::Verified:
        return "verified";
    case FamilyStatus::Candidate:
        return "candidate (unverified)";
    case FamilyStatus::Failed:
        return "failed";
    }
    return "?";
}

struct CongruenceFamily {
    std::uint32_t m = 3;
    std::uint64_t ell = 3;
    int exponent = 3;
    int epsilon = 0;
    std::uint64_t eigenvalue = 0;
    std::uint64_t verified_bound = 0;
    /// (index m l^e n, residue of pbar at that index)
    std::vector<std::pair<std::uint64_t, std::uint64_t>> spot_checks;
    FamilyStatus status = FamilyStatus::Arithmetic;
    std::optional<std::string> cache_hash;
};

inline bool same_family(const CongruenceFamily& a, const CongruenceFamily& b)
{
    return a.m == b.m && a.ell == b.ell && a.exponent == b.exponent && a.epsilon == b.epsilon;
}

/// The first `count` n >= 1 prime to l (and, for exponent 2, with
/// ((-1)^((k_m-1)/2) n / l) = epsilon).
inline std::vector<std::uint64_t> admissible_n(const CongruenceFamily& fam, std::size_t count)
{
    const PrimeParams p = prime_constants(fam.m);
    const bool negate = ((p.k - 1) / 2) % 2 == 1;
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 1; out.size() < count; ++n) {
        if (n % fam.ell == 0) {
            continue;
        }
        if (fam.exponent == 2) {
            const auto signed_n = negate ? -static_cast<std::int64_t>(n) : static_cast<std::int64_t>(n);
            if (kronecker(signed_n, static_cast<std::int64_t>(fam.ell)) != fam.epsilon) {
                continue;
            }
        }
        out.push_back(n);
    }
    return out;
}

inline std::uint64_t family_index(const CongruenceFamily& fam, std::uint64_t n)
{
    std::uint64_t idx = fam.m;
    for (int i = 0; i < fam.exponent; ++i) {
        idx *= fam.ell;
    }
    return idx * n;
}

/// pbar(m l^e n) = 0 (mod m) for each n in n_list.
inline VerificationReport verify_family_spotcheck(const CongruenceFamily& fam, const std::vector<std::uint64_t>& n_list,
                                                  ResidueStore& store)
{
    if (fam.exponent != 2 && fam.exponent != 3) {
        throw std::invalid_argument("spot check: exponent must be 2 or 3");
    }
    if ((fam.exponent == 3) != (fam.epsilon == 0) || fam.epsilon < -1 || fam.epsilon > 1) {
        throw std::invalid_argument("spot check: exponent 3 needs epsilon 0, exponent 2 needs epsilon +-1");
    }
    if (n_list.empty()) {
        throw std::invalid_argument("spot check: empty n list");
    }
    const PrimeParams p = prime_constants(fam.m);
    const bool negate = ((p.k - 1) / 2) % 2 == 1;
    std::uint64_t max_index = 0;
    for (std::uint64_t n : n_list) {
        if (n == 0 || n % fam.ell == 0) {
            throw std::invalid_argument("spot check: n = " + std::to_string(n) + " is not a positive integer prime to " +
                                        std::to_string(fam.ell));
        }
        if (fam.exponent == 2) {
            const auto signed_n = negate ? -static_cast<std::int64_t>(n) : static_cast<std::int64_t>(n);
            if (kronecker(signed_n, static_cast<std::int64_t>(fam.ell)) != fam.epsilon) {
                throw std::invalid_argument("spot check: n = " + std::to_string(n) + " is not in the Kronecker class " +
                                            std::to_string(fam.epsilon));
            }
        }
        max_index = std::max(max_index, family_index(fam, n));
    }
    if (!store.within_cap(max_index + 1)) {
        throw ResourceLimitError("spot check needs pbar up to index " + std::to_string(max_index) +
                                 ", beyond the index cap " + std::to_string(store.index_cap()));
    }
    const auto table = store.residues(fam.m, max_index + 1);
    VerificationReport report{"pbar(" + std::to_string(fam.m) + " * " + std::to_string(fam.ell) + "^" +
                                  std::to_string(fam.exponent) + " * n) = 0 mod " + std::to_string(fam.m),
                              true, n_list.front(), n_list.back(), fam.m, std::nullopt, ""};
    for (std::uint64_t n : n_list) {
        const std::uint64_t idx = family_index(fam, n);
        if (table->residues[idx] != 0) {
            report.pass = false;
            report.witness = n;
            report.detail = "pbar(" + std::to_string(idx) + ") = " + std::to_string(table->residues[idx]) + " mod " +
                            std::to_string(fam.m);
            return report;
        }
    }
    return report;
}

/// The residue lambda with (f|U(m))|T(l^2) = lambda f|U(m) (mod m) on n <= m - 2
/// (or the Sturm bound of k_m), read from overpartition residues; nullopt if none.
inline std::optional<std::uint64_t> observed_eigenvalue(std::uint32_t m, std::uint64_t ell, ResidueStore& store)
{
    const PrimeParams p = prime_constants(m);
    const std::uint64_t bound = gm_sturm_bound(p);
    const std::uint64_t ell2 = ell * ell;
    const auto series = f_U_m(m, ell2 * bound + 1, store);
    return is_eigenform_mod(series, hecke_context(p.k), ell, bound);
}

inline std::uint64_t eigen_check_terms(std::uint32_t m, std::uint64_t ell)
{
    const std::uint64_t bound = gm_sturm_bound(prime_constants(m));
    return static_cast<std::uint64_t>(m) * ell * ell * bound + 1;
}

struct SearchOptions {
    std::uint64_t lmax = 5000;
    bool verify = false;
    /// For m >= 13: scan every l whose eigenform check fits under the index cap
    /// and classify the eigenvalue read from the residues.
    bool observed = false;
    std::size_t spot_count = 5;
};

namespace detail {

inline void run_spot_checks(CongruenceFamily& fam, std::size_t count, ResidueStore& store)
{
    std::vector<std::uint64_t> ns;
    for (std::uint64_t n : admissible_n(fam, count)) {
        if (store.within_cap(family_index(fam, n) + 1)) {
            ns.push_back(n);
        }
    }
    if (ns.empty()) {
        return;
    }
    const auto report = verify_family_spotcheck(fam, ns, store);
    const auto table = store.residues(fam.m, family_index(fam, ns.back()) + 1);
    for (std::uint64_t n : ns) {
        const auto idx = family_index(fam, n);
        fam.spot_checks.emplace_back(idx, table->residues[idx]);
    }
    if (!report.pass) {
        fam.status = FamilyStatus::Failed;
    }
}

/// Largest number of residues the search will read, so one table serves every l.
inline std::uint64_t search_prefetch_terms(std::uint32_t m, const SearchOptions& opt, const ResidueStore& store)
{
    std::uint64_t need = 0;
    auto want = [&](std::uint64_t terms) {
        if (store.within_cap(terms)) {
            need = std::max(need, terms);
        }
    };
    for (std::uint64_t ell : odd_primes(3, opt.lmax)) {
        if (ell == m) {
            continue;
        }
        const auto cls = classify_eigenvalue(m, ell);
        if (m > 11 && (opt.observed || (opt.verify && cls))) {
            want(eigen_check_terms(m, ell));
        }
        if (opt.verify && cls) {
            CongruenceFamily fam;
            fam.m = m;
            fam.ell = ell;
            fam.exponent = cls->exponent;
            fam.epsilon = cls->epsilon;
            for (std::uint64_t n : admissible_n(fam, opt.spot_count)) {
                want(family_index(fam, n) + 1);
            }
        }
    }
    return need;
}

}  // namespace detail

/// Congruence families for m over odd primes 3 <= l <= lmax, l != m, sorted by l.
///
/// m <= 11: every l whose Eisenstein eigenvalue classifies. m >= 13: the same
/// candidates, confirmed (with `verify`) by the eigenform test on f|U(m) when it
/// fits under the index cap. With `verify`, up to spot_count admissible n are
/// also checked directly when their indices fit.
inline std::vector<CongruenceFamily> search_families(std::uint32_t m, const SearchOptions& opt, ResidueStore& store)
{
    const PrimeParams p = prime_constants(m);
    const std::uint64_t bound = gm_sturm_bound(p);
    const bool eisenstein_range = m <= 11;
    std::shared_ptr<const ResidueTable> table;
    if (opt.verify || opt.observed) {
        if (const auto need = detail::search_prefetch_terms(m, opt, store); need > 0) {
            table = store.residues(m, need);
        }
    }
    std::vector<CongruenceFamily> out;
    for (std::uint64_t ell : odd_primes(3, opt.lmax)) {
        if (ell == m) {
            continue;
        }
        std::optional<FamilyClass> cls = classify_eigenvalue(m, ell);
        bool eigen_confirmed = false;
        bool eigen_failed = false;
        const bool fits = store.within_cap(eigen_check_terms(m, ell));
        if (!eisenstein_range && (opt.verify || opt.observed) && fits && (cls || opt.observed)) {
            const auto lambda = observed_eigenvalue(m, ell, store);
            if (opt.observed) {
                cls = lambda ? classify_eigenvalue(m, ell, *lambda) : std::nullopt;
                eigen_confirmed = cls.has_value();
            } else if (lambda && *lambda == cls->eigenvalue) {
                eigen_confirmed = true;
            } else {
                eigen_failed = true;
            }
        }
        if (!cls) {
            continue;
        }
        CongruenceFamily fam;
        fam.m = m;
        fam.ell = ell;
        fam.exponent = cls->exponent;
        fam.epsilon = cls->epsilon;
        fam.eigenvalue = cls->eigenvalue;
        fam.verified_bound = bound;
        if (!opt.verify) {
            fam.status = eigen_confirmed ? FamilyStatus::Verified : FamilyStatus::Arithmetic;
        } else if (eigen_failed) {
            fam.status = FamilyStatus::Failed;
        } else if (eisenstein_range || eigen_confirmed) {
            fam.status = FamilyStatus::Verified;
        } else {
            fam.status = FamilyStatus::Candidate;
        }
        if (opt.verify && fam.status != FamilyStatus::Failed) {
            detail::run_spot_checks(fam, opt.spot_count, store);
        }
        out.push_back(std::move(fam));
    }
    if (table) {
        const std::string hash = content_hash(*table);
        for (auto& fam : out) {
            if (!fam.spot_checks.empty() || (!eisenstein_range && store.within_cap(eigen_check_terms(m, fam.ell)))) {
                fam.cache_hash = hash;
            }
        }
    }
    return out;
}

inline std::vector<CongruenceFamily> search_families(std::uint32_t m, std::uint64_t lmax, bool verify,
                                                     ResidueStore& store)
{
    SearchOptions opt;
    opt.lmax = lmax;
    opt.verify = verify;
    return search_families(m, opt, store);
}

}  // namespace overpart
