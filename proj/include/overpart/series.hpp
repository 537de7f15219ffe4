#pragma once

// Truncated power series sum_{n<T} a(n) q^n over a coefficient ring.

#include "overpart/rings.hpp"

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace overpart {

template <class Ring>
class Series {
public:
    using ring_type = Ring;
    using value_type = typename Ring::value_type;

    /// The zero series known to `trunc` terms.
    Series(Ring ring, std::size_t trunc) : ring_(std::move(ring)), coeffs_(trunc, ring_.zero())
    {
        if (trunc == 0) {
            throw std::invalid_argument("Series: truncation must be positive");
        }
    }

    Series(Ring ring, std::vector<value_type> coeffs) : ring_(std::move(ring)), coeffs_(std::move(coeffs))
    {
        if (coeffs_.empty()) {
            throw std::invalid_argument("Series: truncation must be positive");
        }
    }

    /// 1 + O(q^trunc)
    static Series one(Ring ring, std::size_t trunc)
    {
        Series s(std::move(ring), trunc);
        s.coeffs_[0] = s.ring_.one();
        return s;
    }

    [[nodiscard]] const Ring& ring() const { return ring_; }
    [[nodiscard]] std::size_t trunc() const { return coeffs_.size(); }
    [[nodiscard]] const value_type& operator[](std::size_t n) const { return coeffs_.at(n); }
    [[nodiscard]] value_type& operator[](std::size_t n) { return coeffs_.at(n); }
    [[nodiscard]] std::span<const value_type> coeffs() const { return coeffs_; }
    [[nodiscard]] std::span<value_type> coeffs() { return coeffs_; }

    /// Indices of nonzero coefficients, ascending.
    [[nodiscard]] std::vector<std::size_t> support() const
    {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (!ring_.is_zero(coeffs_[i])) {
                idx.push_back(i);
            }
        }
        return idx;
    }

    /// Lowest exponent with a nonzero coefficient, or trunc() if none.
    [[nodiscard]] std::size_t valuation() const
    {
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (!ring_.is_zero(coeffs_[i])) {
                return i;
            }
        }
        return coeffs_.size();
    }

    [[nodiscard]] Series truncated(std::size_t trunc) const
    {
        if (trunc > coeffs_.size()) {
            throw std::invalid_argument("Series::truncated: cannot extend a series");
        }
        return Series(ring_, std::vector<value_type>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(trunc)));
    }

    friend bool operator==(const Series& a, const Series& b)
    {
        return a.ring_ == b.ring_ && a.coeffs_ == b.coeffs_;
    }

private:
    Ring ring_;
    std::vector<value_type> coeffs_;
};

template <class Ring>
void require_same_ring(const Series<Ring>& a, const Series<Ring>& b)
{
    if (!(a.ring() == b.ring())) {
        throw std::invalid_argument("series ring mismatch: " + a.ring().name() + " vs " + b.ring().name());
    }
}

template <class Ring>
Series<Ring> operator+(const Series<Ring>& a, const Series<Ring>& b)
{
    require_same_ring(a, b);
    const auto& R = a.ring();
    Series<Ring> out(R, std::min(a.trunc(), b.trunc()));
    for (std::size_t i = 0; i < out.trunc(); ++i) {
        out[i] = R.add(a[i], b[i]);
    }
    return out;
}

template <class Ring>
Series<Ring> operator-(const Series<Ring>& a)
{
    const auto& R = a.ring();
    Series<Ring> out(R, a.trunc());
    for (std::size_t i = 0; i < out.trunc(); ++i) {
        out[i] = R.neg(a[i]);
    }
    return out;
}

template <class Ring>
Series<Ring> operator-(const Series<Ring>& a, const Series<Ring>& b)
{
    require_same_ring(a, b);
    const auto& R = a.ring();
    Series<Ring> out(R, std::min(a.trunc(), b.trunc()));
    for (std::size_t i = 0; i < out.trunc(); ++i) {
        out[i] = R.sub(a[i], b[i]);
    }
    return out;
}

template <class Ring>
Series<Ring> scale(const typename Ring::value_type& c, const Series<Ring>& a)
{
    const auto& R = a.ring();
    Series<Ring> out(R, a.trunc());
    for (std::size_t i = 0; i < out.trunc(); ++i) {
        out[i] = R.mul(c, a[i]);
    }
    return out;
}

/// Cauchy product truncated to the shorter operand. Cost O(T * s) where s is
/// the support size of the sparser factor.
template <class Ring>
Series<Ring> operator*(const Series<Ring>& a, const Series<Ring>& b)
{
    require_same_ring(a, b);
    const auto& R = a.ring();
    const std::size_t T = std::min(a.trunc(), b.trunc());
    const auto sa = a.truncated(T).support();
    const auto sb = b.truncated(T).support();
    const bool a_sparse = sa.size() <= sb.size();
    const auto& sparse = a_sparse ? a : b;
    const auto& dense = a_sparse ? b : a;
    const auto& idx = a_sparse ? sa : sb;

    Series<Ring> out(R, T);
    for (std::size_t i : idx) {
        const auto& c = sparse[i];
        for (std::size_t j = 0; i + j < T; ++j) {
            R.add_mul(out[i + j], c, dense[j]);
        }
    }
    return out;
}

template <class Ring>
Series<Ring> pow(const Series<Ring>& a, unsigned e)
{
    Series<Ring> result = Series<Ring>::one(a.ring(), a.trunc());
    for (unsigned i = 0; i < e; ++i) {
        result = result * a;
    }
    return result;
}

/// b with a*b = 1 + O(q^T), by the triangular recurrence over the support of a.
template <class Ring>
Series<Ring> inverse(const Series<Ring>& a)
{
    const auto& R = a.ring();
    if (!R.is_unit(a[0])) {
        throw std::domain_error("series inverse: constant term is not a unit");
    }
    const auto c0 = R.inv(a[0]);
    std::vector<std::size_t> idx;
    for (std::size_t i : a.support()) {
        if (i > 0) {
            idx.push_back(i);
        }
    }
    const std::size_t T = a.trunc();
    Series<Ring> b(R, T);
    b[0] = c0;
    for (std::size_t n = 1; n < T; ++n) {
        auto acc = R.zero();
        for (std::size_t i : idx) {
            if (i > n) {
                break;
            }
            R.add_mul(acc, a[i], b[n - i]);
        }
        b[n] = R.neg(R.mul(c0, acc));
    }
    return b;
}

/// g|U(m) = sum a(mn) q^n, known to ceil(T/m) terms.
template <class Ring>
Series<Ring> op_U(std::size_t m, const Series<Ring>& a)
{
    if (m == 0) {
        throw std::invalid_argument("U(m): m must be positive");
    }
    const std::size_t T = (a.trunc() + m - 1) / m;
    Series<Ring> out(a.ring(), T);
    for (std::size_t n = 0; n < T; ++n) {
        out[n] = a[m * n];
    }
    return out;
}

/// g|V(m) = sum a(n) q^(mn), known to m(T-1)+1 terms, capped at `cap` when nonzero.
template <class Ring>
Series<Ring> op_V(std::size_t m, const Series<Ring>& a, std::size_t cap = 0)
{
    if (m == 0) {
        throw std::invalid_argument("V(m): m must be positive");
    }
    std::size_t T = m * (a.trunc() - 1) + 1;
    if (cap != 0) {
        T = std::min(T, cap);
    }
    Series<Ring> out(a.ring(), T);
    for (std::size_t n = 0; m * n < T; ++n) {
        out[m * n] = a[n];
    }
    return out;
}

/// q^s * a, keeping the truncation of a.
template <class Ring>
Series<Ring> shift(const Series<Ring>& a, std::size_t s)
{
    Series<Ring> out(a.ring(), a.trunc());
    for (std::size_t n = s; n < a.trunc(); ++n) {
        out[n] = a[n - s];
    }
    return out;
}

/// Coefficient-wise reduction into another ring (e.g. ZZ or QQ into Z/m).
template <class Target, class Source>
Series<Target> reduce(const Series<Source>& a, const Target& target)
{
    Series<Target> out(target, a.trunc());
    for (std::size_t i = 0; i < a.trunc(); ++i) {
        if constexpr (std::is_same_v<typename Source::value_type, Rational>) {
            out[i] = target.from_rational(a[i]);
        } else if constexpr (std::is_same_v<typename Source::value_type, Integer>) {
            out[i] = target.from_integer(a[i]);
        } else {
            out[i] = target.from_int(static_cast<long>(a[i]));
        }
    }
    return out;
}

/// Integer series viewed over QQ.
inline Series<RationalRing> to_rational(const Series<IntegerRing>& a)
{
    Series<RationalRing> out(RationalRing{}, a.trunc());
    for (std::size_t i = 0; i < a.trunc(); ++i) {
        out[i] = Rational(a[i]);
    }
    return out;
}

template <class Ring>
std::ostream& operator<<(std::ostream& os, const Series<Ring>& a)
{
    bool first = true;
    for (std::size_t i = 0; i < a.trunc(); ++i) {
        if (a.ring().is_zero(a[i])) {
            continue;
        }
        if (!first) {
            os << " + ";
        }
        first = false;
        os << a[i];
        if (i == 1) {
            os << "*q";
        } else if (i > 1) {
            os << "*q^" << i;
        }
    }
    if (first) {
        os << "0";
    }
    return os << " + O(q^" << a.trunc() << ")";
}

}  // namespace overpart
