#pragma once

#include "overpart/rings.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace overpart {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Indices of a maximal set of linearly independent rows, chosen greedily in
/// order, by incremental fraction-exact elimination.
inline std::vector<std::size_t> independent_rows(const RationalMatrix& rows)
{
    std::vector<std::vector<Rational>> basis;
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> chosen;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        auto v = rows[r];
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const Rational& c = v[pivots[b]];
            if (c != 0) {
                const Rational factor = c / basis[b][pivots[b]];
                for (std::size_t j = 0; j < v.size(); ++j) {
                    v[j] -= factor * basis[b][j];
                }
            }
        }
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (v[j] != 0) {
                basis.push_back(std::move(v));
                pivots.push_back(j);
                chosen.push_back(r);
                break;
            }
        }
    }
    return chosen;
}

inline std::size_t rank(const RationalMatrix& rows)
{
    return independent_rows(rows).size();
}

/// Solves sum_j x_j columns[j] = target over Z/p (p prime), using every row.
/// Returns nullopt when inconsistent; free variables are set to zero.
inline std::optional<std::vector<std::uint64_t>> solve_mod(const std::vector<std::vector<std::uint64_t>>& columns,
                                                           const std::vector<std::uint64_t>& target, std::uint64_t p)
{
    const ModRing R(p);
    const std::size_t ncols = columns.size();
    const std::size_t nrows = target.size();
    std::vector<std::vector<std::uint64_t>> a(nrows, std::vector<std::uint64_t>(ncols + 1));
    for (std::size_t i = 0; i < nrows; ++i) {
        for (std::size_t j = 0; j < ncols; ++j) {
            a[i][j] = columns[j].at(i) % p;
        }
        a[i][ncols] = target[i] % p;
    }
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < nrows; ++col) {
        std::size_t sel = row;
        while (sel < nrows && a[sel][col] == 0) {
            ++sel;
        }
        if (sel == nrows) {
            continue;
        }
        std::swap(a[sel], a[row]);
        const auto inv = R.inv(a[row][col]);
        for (auto& v : a[row]) {
            v = R.mul(v, inv);
        }
        for (std::size_t i = 0; i < nrows; ++i) {
            if (i != row && a[i][col] != 0) {
                const auto f = a[i][col];
                for (std::size_t j = 0; j <= ncols; ++j) {
                    a[i][j] = R.sub(a[i][j], R.mul(f, a[row][j]));
                }
            }
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (std::size_t i = row; i < nrows; ++i) {
        if (a[i][ncols] != 0) {
            return std::nullopt;
        }
    }
    std::vector<std::uint64_t> x(ncols, 0);
    for (std::size_t i = 0; i < pivot_col.size(); ++i) {
        x[pivot_col[i]] = a[i][ncols];
    }
    return x;
}

}  // namespace overpart
