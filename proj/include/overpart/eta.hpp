#pragma once

// Eta-quotients prod eta(delta z)^r_delta: q-expansions, weight/level/character
// and orders of vanishing at cusps.

#include "overpart/series.hpp"

#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace overpart {

struct EtaFactor {
    std::uint64_t delta = 1;
    std::int64_t r = 0;

    friend bool operator==(const EtaFactor&, const EtaFactor&) = default;
};

/// A finite multiset {(delta, r_delta)}, kept sorted by delta with nonzero r.
class EtaQuotient {
public:
    EtaQuotient() = default;

    EtaQuotient(std::initializer_list<EtaFactor> factors) : EtaQuotient(std::vector<EtaFactor>(factors)) {}

    explicit EtaQuotient(const std::vector<EtaFactor>& factors)
    {
        std::map<std::uint64_t, std::int64_t> merged;
        for (const auto& f : factors) {
            if (f.delta == 0) {
                throw std::invalid_argument("eta-quotient: delta must be positive");
            }
            merged[f.delta] += f.r;
        }
        for (const auto& [delta, r] : merged) {
            if (r != 0) {
                factors_.push_back({delta, r});
            }
        }
    }

    [[nodiscard]] const std::vector<EtaFactor>& factors() const { return factors_; }

    /// s_X = sum delta * r_delta
    [[nodiscard]] std::int64_t s() const
    {
        std::int64_t total = 0;
        for (const auto& f : factors_) {
            total += static_cast<std::int64_t>(f.delta) * f.r;
        }
        return total;
    }

    [[nodiscard]] EtaQuotient inverse() const
    {
        std::vector<EtaFactor> inv;
        for (const auto& f : factors_) {
            inv.push_back({f.delta, -f.r});
        }
        return EtaQuotient(inv);
    }

    /// eta^X(mz): every delta scaled by m.
    [[nodiscard]] EtaQuotient dilated(std::uint64_t m) const
    {
        std::vector<EtaFactor> out;
        for (const auto& f : factors_) {
            out.push_back({f.delta * m, f.r});
        }
        return EtaQuotient(out);
    }

    [[nodiscard]] EtaQuotient pow(std::int64_t e) const
    {
        std::vector<EtaFactor> out;
        for (const auto& f : factors_) {
            out.push_back({f.delta, f.r * e});
        }
        return EtaQuotient(out);
    }

    friend EtaQuotient operator*(const EtaQuotient& a, const EtaQuotient& b)
    {
        auto all = a.factors_;
        all.insert(all.end(), b.factors_.begin(), b.factors_.end());
        return EtaQuotient(all);
    }

    friend bool operator==(const EtaQuotient&, const EtaQuotient&) = default;

private:
    std::vector<EtaFactor> factors_;
};

/// Parses "delta:r,delta:r,...", e.g. "1:-2,2:1".
inline EtaQuotient parse_eta_quotient(const std::string& spec)
{
    std::vector<EtaFactor> factors;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
            throw std::invalid_argument("malformed eta spec item '" + item + "' (expected delta:r)");
        }
        try {
            std::size_t used = 0;
            const long long delta = std::stoll(item.substr(0, colon), &used);
            if (used != colon || delta <= 0) {
                throw std::invalid_argument("bad delta");
            }
            const std::string rs = item.substr(colon + 1);
            const long long r = std::stoll(rs, &used);
            if (used != rs.size()) {
                throw std::invalid_argument("bad exponent");
            }
            factors.push_back({static_cast<std::uint64_t>(delta), r});
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed eta spec item '" + item + "'");
        }
    }
    if (factors.empty()) {
        throw std::invalid_argument("empty eta spec");
    }
    return EtaQuotient(factors);
}

inline std::string to_string(const EtaQuotient& x)
{
    std::string out;
    for (const auto& f : x.factors()) {
        if (!out.empty()) {
            out += ',';
        }
        out += std::to_string(f.delta) + ':' + std::to_string(f.r);
    }
    return out;
}

struct EtaMetadata {
    /// k, where the weight is k/2
    std::int64_t weight_times_2 = 0;
    std::uint64_t level = 1;
    /// m such that the character is chi_m
    Integer character_m = 1;
};

inline EtaMetadata eta_quotient_metadata(const EtaQuotient& x)
{
    EtaMetadata meta;
    std::uint64_t lcm = 1;
    Rational inv_sum = 0;
    Rational mprime = 1;
    for (const auto& f : x.factors()) {
        meta.weight_times_2 += f.r;
        lcm = std::lcm(lcm, f.delta);
        inv_sum += make_rational(f.r, static_cast<long>(f.delta));
        mprime *= rpow(Rational(static_cast<unsigned long>(f.delta)), f.r);
    }
    const bool odd = (meta.weight_times_2 % 2) != 0;
    if (odd) {
        lcm = std::lcm(lcm, std::uint64_t{4});
    }
    // Smallest multiple N of lcm with N * sum(r/delta) in 24Z; t <= 24 * den always suffices.
    for (std::uint64_t t = 1;; ++t) {
        const Rational v = inv_sum * static_cast<unsigned long>(lcm * t);
        if (v.get_den() == 1 && v.get_num() % 24 == 0) {
            meta.level = lcm * t;
            break;
        }
    }
    meta.character_m = mprime.get_num() * mprime.get_den() * (odd ? 2 : 1);
    return meta;
}

/// Order of vanishing of eta^X at a cusp a/c (gcd(a,c) = 1) on Gamma_0(N).
inline Rational ligozat_order(const EtaQuotient& x, std::uint64_t c, std::uint64_t N)
{
    if (c == 0 || N == 0) {
        throw std::invalid_argument("ligozat_order: c and N must be positive");
    }
    Rational sum = 0;
    for (const auto& f : x.factors()) {
        const std::uint64_t g = std::gcd(c, f.delta);
        sum += make_rational(static_cast<long>(g * g) * f.r, static_cast<long>(f.delta));
    }
    const std::uint64_t g = std::gcd(c * c, N);
    return sum * make_rational(static_cast<long>(N), static_cast<long>(24 * g));
}

/// Denominators of the cusps of Gamma_0(N): the divisors of N.
inline std::vector<std::uint64_t> cusp_denominators(std::uint64_t N)
{
    return divisors(N);
}

/// prod_{n>=1} (1 - q^(delta n)) via the pentagonal number theorem.
template <class Ring>
Series<Ring> euler_product_series(std::uint64_t delta, std::size_t T, const Ring& ring)
{
    if (delta == 0) {
        throw std::invalid_argument("euler_product_series: delta must be positive");
    }
    Series<Ring> out(ring, T);
    out[0] = ring.one();
    for (std::uint64_t j = 1;; ++j) {
        const std::uint64_t p1 = delta * (j * (3 * j - 1) / 2);
        const std::uint64_t p2 = delta * (j * (3 * j + 1) / 2);
        if (p1 >= T) {
            break;
        }
        const auto sign = (j % 2 == 1) ? ring.neg(ring.one()) : ring.one();
        out[p1] = sign;
        if (p2 < T) {
            out[p2] = sign;
        }
    }
    return out;
}

/// Solves b * d = a for b, where d has unit constant term; O(T * |supp d|).
template <class Ring>
Series<Ring> divide(const Series<Ring>& a, const Series<Ring>& d)
{
    require_same_ring(a, d);
    const auto& R = a.ring();
    if (!R.is_unit(d[0])) {
        throw std::domain_error("series division: divisor constant term is not a unit");
    }
    const auto c0 = R.inv(d[0]);
    const std::size_t T = std::min(a.trunc(), d.trunc());
    std::vector<std::size_t> idx;
    for (std::size_t i : d.truncated(T).support()) {
        if (i > 0) {
            idx.push_back(i);
        }
    }
    Series<Ring> b(R, T);
    for (std::size_t n = 0; n < T; ++n) {
        auto acc = a[n];
        for (std::size_t i : idx) {
            if (i > n) {
                break;
            }
            acc = R.sub(acc, R.mul(d[i], b[n - i]));
        }
        b[n] = R.mul(c0, acc);
    }
    return b;
}

/// Full expansion q^(s_X/24) prod_X prod_n (1 - q^(delta n))^r_delta to T terms.
template <class Ring>
Series<Ring> eta_quotient_series(const EtaQuotient& x, std::size_t T, const Ring& ring)
{
    const std::int64_t s = x.s();
    if (s % 24 != 0) {
        throw std::domain_error("eta-quotient: s_X = " + std::to_string(s) + " is not divisible by 24");
    }
    if (s < 0) {
        throw std::domain_error("eta-quotient: negative leading exponent s_X/24 = " + std::to_string(s / 24));
    }
    const auto lead = static_cast<std::size_t>(s / 24);
    if (lead >= T) {
        return Series<Ring>(ring, T);
    }
    const std::size_t body_terms = T - lead;
    Series<Ring> acc = Series<Ring>::one(ring, body_terms);
    for (const auto& f : x.factors()) {
        const auto factor = euler_product_series(f.delta, body_terms, ring);
        const std::int64_t reps = f.r > 0 ? f.r : -f.r;
        for (std::int64_t i = 0; i < reps; ++i) {
            acc = f.r > 0 ? acc * factor : divide(acc, factor);
        }
    }
    Series<Ring> out(ring, T);
    for (std::size_t n = 0; n < body_terms; ++n) {
        out[n + lead] = acc[n];
    }
    return out;
}

/// The overpartition generating function f = eta(2z)/eta(z)^2.
inline EtaQuotient overpartition_eta()
{
    return EtaQuotient{{1, -2}, {2, 1}};
}

/// Delta_2 = eta(z)^8 eta(2z)^8.
inline EtaQuotient delta2_eta()
{
    return EtaQuotient{{1, 8}, {2, 8}};
}

}  // namespace overpart
