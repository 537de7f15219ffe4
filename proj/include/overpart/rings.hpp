#pragma once

// Coefficient domains for truncated q-series. A ring object carries whatever
// runtime state the domain needs (the modulus for residues) and supplies the
// arithmetic; series operations are written once against this interface.

#include "overpart/arith.hpp"

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace overpart {

struct IntegerRing {
    using value_type = Integer;

    [[nodiscard]] value_type zero() const { return 0; }
    [[nodiscard]] value_type one() const { return 1; }
    [[nodiscard]] value_type from_integer(const Integer& v) const { return v; }
    [[nodiscard]] value_type from_int(long v) const { return v; }
    [[nodiscard]] value_type add(const value_type& a, const value_type& b) const { return a + b; }
    [[nodiscard]] value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    [[nodiscard]] value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    [[nodiscard]] value_type neg(const value_type& a) const { return -a; }
    [[nodiscard]] bool is_zero(const value_type& a) const { return a == 0; }
    [[nodiscard]] bool is_unit(const value_type& a) const { return a == 1 || a == -1; }
    [[nodiscard]] value_type inv(const value_type& a) const
    {
        if (!is_unit(a)) {
            throw std::domain_error("IntegerRing: non-unit has no inverse");
        }
        return a;
    }
    void add_mul(value_type& acc, const value_type& a, const value_type& b) const { acc += a * b; }
    [[nodiscard]] std::string name() const { return "ZZ"; }
    friend bool operator==(const IntegerRing&, const IntegerRing&) = default;
};

struct RationalRing {
    using value_type = Rational;

    [[nodiscard]] value_type zero() const { return 0; }
    [[nodiscard]] value_type one() const { return 1; }
    [[nodiscard]] value_type from_integer(const Integer& v) const { return Rational(v); }
    [[nodiscard]] value_type from_int(long v) const { return v; }
    [[nodiscard]] value_type add(const value_type& a, const value_type& b) const { return a + b; }
    [[nodiscard]] value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    [[nodiscard]] value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    [[nodiscard]] value_type neg(const value_type& a) const { return -a; }
    [[nodiscard]] bool is_zero(const value_type& a) const { return a == 0; }
    [[nodiscard]] bool is_unit(const value_type& a) const { return a != 0; }
    [[nodiscard]] value_type inv(const value_type& a) const
    {
        if (a == 0) {
            throw std::domain_error("RationalRing: zero has no inverse");
        }
        return 1 / a;
    }
    void add_mul(value_type& acc, const value_type& a, const value_type& b) const { acc += a * b; }
    [[nodiscard]] std::string name() const { return "QQ"; }
    friend bool operator==(const RationalRing&, const RationalRing&) = default;
};

/// Integers modulo m, stored as machine-word residues in [0, m). m < 2^62.
class ModRing {
public:
    using value_type = std::uint64_t;

    explicit ModRing(std::uint64_t modulus) : m_(modulus)
    {
        if (modulus < 2 || modulus >= (std::uint64_t{1} << 62)) {
            throw std::domain_error("ModRing: modulus out of range");
        }
    }

    [[nodiscard]] std::uint64_t modulus() const { return m_; }
    [[nodiscard]] value_type zero() const { return 0; }
    [[nodiscard]] value_type one() const { return 1; }
    [[nodiscard]] value_type from_int(long v) const { return reduce_mod(v, m_); }
    [[nodiscard]] value_type from_integer(const Integer& v) const
    {
        Integer r;
        mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), m_);
        return r.get_ui();
    }
    /// Reduces a rational whose denominator is prime to m.
    [[nodiscard]] value_type from_rational(const Rational& v) const
    {
        const value_type den = from_integer(v.get_den());
        if (den == 0) {
            throw std::domain_error("ModRing: denominator not invertible modulo " + std::to_string(m_));
        }
        return mul(from_integer(v.get_num()), inv(den));
    }
    [[nodiscard]] value_type add(value_type a, value_type b) const
    {
        const value_type s = a + b;
        return s >= m_ ? s - m_ : s;
    }
    [[nodiscard]] value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + m_ - b; }
    [[nodiscard]] value_type mul(value_type a, value_type b) const
    {
        return m_ <= 0xFFFFFFFFU ? (a * b) % m_ : mulmod(a, b, m_);
    }
    [[nodiscard]] value_type neg(value_type a) const { return a == 0 ? 0 : m_ - a; }
    [[nodiscard]] bool is_zero(value_type a) const { return a == 0; }
    [[nodiscard]] bool is_unit(value_type a) const { return std::gcd(a, m_) == 1; }
    [[nodiscard]] value_type inv(value_type a) const
    {
        // Extended Euclid; works for any modulus when gcd(a, m) = 1.
        std::int64_t t = 0;
        std::int64_t new_t = 1;
        auto r = static_cast<std::int64_t>(m_);
        auto new_r = static_cast<std::int64_t>(a % m_);
        while (new_r != 0) {
            const std::int64_t q = r / new_r;
            t = std::exchange(new_t, t - q * new_t);
            r = std::exchange(new_r, r - q * new_r);
        }
        if (r != 1) {
            throw std::domain_error("ModRing: element is not invertible");
        }
        return reduce_mod(t, m_);
    }
    [[nodiscard]] value_type pow(value_type a, std::uint64_t e) const { return powmod(a, e, m_); }
    void add_mul(value_type& acc, value_type a, value_type b) const { acc = add(acc, mul(a, b)); }
    [[nodiscard]] std::string name() const { return "Z/" + std::to_string(m_); }
    friend bool operator==(const ModRing&, const ModRing&) = default;

private:
    std::uint64_t m_;
};

}  // namespace overpart
