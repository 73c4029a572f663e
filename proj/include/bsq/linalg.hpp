#pragma once

#include <cstddef>
#include <vector>

#include "bsq/rational.hpp"

namespace bsq {

/// Small exact linear algebra over cpp_rational / cpp_int. Everything here is
/// sized for moment-polytope work (n <= half a dozen), so plain Gaussian
/// elimination is the right tool.

inline Rat dot(const IntVec& a, const RatVec& x)
{
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += Rat(a[i]) * x[i];
    return s;
}

inline Int dot_int(const IntVec& a, const std::vector<Int>& x)
{
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * x[i];
    return s;
}

inline Int gcd_int(Int a, Int b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

/// gcd of a vector's entries (0 for the zero vector).
inline Int gcd_vec(const IntVec& v)
{
    Int g = 0;
    for (const Int& e : v)
        g = gcd_int(g, e);
    return g;
}

/// Divide out the gcd in place; returns false for the zero vector.
inline bool make_primitive(IntVec& v)
{
    Int g = gcd_vec(v);
    if (g == 0)
        return false;
    if (g != 1)
        for (Int& e : v)
            e /= g;
    return true;
}

/// Clear denominators of a rational vector into a primitive integer vector.
inline IntVec primitive_direction(const RatVec& v)
{
    Int lcm = 1;
    for (const Rat& e : v) {
        Int d = rat_den(e);
        lcm = lcm / gcd_int(lcm, d) * d;
    }
    IntVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = rat_num(v[i]) * (lcm / rat_den(v[i]));
    make_primitive(out);
    return out;
}

using RatMat = std::vector<RatVec>;

/// Rank via fraction-preserving Gaussian elimination (destroys the copy).
inline int rank(RatMat m)
{
    if (m.empty())
        return 0;
    std::size_t rows = m.size(), cols = m[0].size();
    int r = 0;
    for (std::size_t c = 0; c < cols && static_cast<std::size_t>(r) < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (m[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv == rows)
            continue;
        std::swap(m[r], m[piv]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0)
                continue;
            Rat f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j)
                m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

inline Rat determinant(RatMat m)
{
    std::size_t n = m.size();
    Rat det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = n;
        for (std::size_t i = c; i < n; ++i)
            if (m[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv == n)
            return 0;
        if (piv != c) {
            std::swap(m[c], m[piv]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0)
                continue;
            Rat f = m[i][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j)
                m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

inline Int determinant_int(const std::vector<IntVec>& m)
{
    RatMat rm(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (const Int& e : m[i])
            rm[i].emplace_back(e);
    Rat d = determinant(std::move(rm));
    return rat_num(d) / rat_den(d);
}

/// Solve the square system A x = b exactly. Returns false if A is singular.
inline bool solve_square(RatMat a, RatVec b, RatVec& x)
{
    std::size_t n = a.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = n;
        for (std::size_t i = c; i < n; ++i)
            if (a[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv == n)
            return false;
        std::swap(a[c], a[piv]);
        std::swap(b[c], b[piv]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0)
                continue;
            Rat f = a[i][c] / a[c][c];
            for (std::size_t j = c; j < n; ++j)
                a[i][j] -= f * a[c][j];
            b[i] -= f * b[c];
        }
    }
    x.assign(n, Rat(0));
    for (std::size_t i = 0; i < n; ++i)
        x[i] = b[i] / a[i][i];
    return true;
}

/// One-dimensional nullspace of a rank-(n-1) system of integer row vectors,
/// returned as a primitive integer direction. Returns empty if the nullspace
/// is not one-dimensional.
inline IntVec nullspace_line(const std::vector<IntVec>& rows, std::size_t n)
{
    RatMat m;
    for (const IntVec& r : rows) {
        RatVec rr;
        for (const Int& e : r)
            rr.emplace_back(e);
        m.push_back(std::move(rr));
    }
    // reduce to row echelon, track pivot columns
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m.size(); ++c) {
        std::size_t piv = m.size();
        for (std::size_t i = r; i < m.size(); ++i)
            if (m[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv == m.size())
            continue;
        std::swap(m[r], m[piv]);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0)
                continue;
            Rat f = m[i][c] / m[r][c];
            for (std::size_t j = 0; j < n; ++j)
                m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    if (pivots.size() != n - 1)
        return {};
    // the single free column determines the kernel vector
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : pivots)
        is_pivot[c] = true;
    std::size_t free_col = n;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) {
            free_col = c;
            break;
        }
    RatVec v(n, Rat(0));
    v[free_col] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
        v[pivots[i]] = -m[i][free_col] / m[i][pivots[i]];
    return primitive_direction(v);
}

/// Exact inverse of a square rational matrix; returns false if singular.
inline bool invert(RatMat a, RatMat& inv)
{
    std::size_t n = a.size();
    inv.assign(n, RatVec(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
        inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = n;
        for (std::size_t i = c; i < n; ++i)
            if (a[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv == n)
            return false;
        std::swap(a[c], a[piv]);
        std::swap(inv[c], inv[piv]);
        Rat p = a[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] /= p;
            inv[c][j] /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0)
                continue;
            Rat f = a[i][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] -= f * a[c][j];
                inv[i][j] -= f * inv[c][j];
            }
        }
    }
    return true;
}

}  // namespace bsq
