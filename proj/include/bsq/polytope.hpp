#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bsq/errors.hpp"
#include "bsq/linalg.hpp"
#include "bsq/rational.hpp"

namespace bsq {

/**
 * One closed half-space {x : <normal, x> <= offset} with a primitive integer
 * normal. The constructor rescales (normal, offset) by gcd(normal), which
 * leaves the half-space unchanged, and rejects zero normals.
 */
struct HalfSpace {
    IntVec normal;
    Rat offset;

    HalfSpace(IntVec n, Rat off) : normal(std::move(n)), offset(std::move(off))
    {
        Int g = gcd_vec(normal);
        if (g == 0)
            throw InvalidPolytope("half-space normal must be nonzero");
        if (g != 1) {
            for (Int& e : normal)
                e /= g;
            offset /= Rat(g);
        }
    }

    bool operator==(const HalfSpace& o) const
    {
        return normal == o.normal && offset == o.offset;
    }
};

/// A lattice point of a polytope together with its stratum (the number of
/// stored half-spaces met with equality; 0 = interior).
struct LatticePoint {
    std::vector<long long> coords;
    int stratum = 0;

    bool operator==(const LatticePoint& o) const
    {
        return coords == o.coords && stratum == o.stratum;
    }
};

struct DelzantViolation {
    RatVec vertex;
    std::string reason;
};

/// Result of Delzant validation. smooth implies simple and rational.
struct DelzantReport {
    bool simple = true;
    bool rational = true;
    bool smooth = true;
    std::vector<DelzantViolation> violations;
    std::vector<std::size_t> redundant;  // indices of redundant half-spaces
};

namespace detail {

/// Internal inequality row <a, x> <= b over the first `a.size()` variables.
struct Row {
    IntVec a;
    Rat b;
};

inline bool row_less(const Row& x, const Row& y)
{
    if (x.a != y.a)
        return x.a < y.a;
    return x.b < y.b;
}

/// Normalize a row to a primitive normal. A zero row is checked for
/// feasibility: 0 <= b must hold, otherwise the system is infeasible.
/// Returns: 0 drop row (trivially true), 1 keep, -1 infeasible.
inline int normalize_row(Row& r)
{
    Int g = gcd_vec(r.a);
    if (g == 0)
        return r.b >= 0 ? 0 : -1;
    if (g != 1) {
        for (Int& e : r.a)
            e /= g;
        r.b /= Rat(g);
    }
    return 1;
}

/// Drop duplicate normals keeping the tightest offset, and exact duplicates.
inline void prune_rows(std::vector<Row>& rows)
{
    std::map<IntVec, Rat> best;
    for (const Row& r : rows) {
        auto it = best.find(r.a);
        if (it == best.end() || r.b < it->second)
            best[r.a] = r.b;
    }
    rows.clear();
    for (auto& [a, b] : best)
        rows.push_back(Row{a, b});
}

/// Fourier-Motzkin elimination of variable index `var` (must be the last
/// live variable of every row). Projection is exact: the result describes
/// exactly the shadow of the input system. Returns nullopt on infeasibility
/// detected through a contradictory constant row.
inline std::optional<std::vector<Row>> fm_eliminate(const std::vector<Row>& rows,
                                                    std::size_t var)
{
    std::vector<Row> zero, pos, neg;
    for (const Row& r : rows) {
        if (r.a[var] == 0)
            zero.push_back(r);
        else if (r.a[var] > 0)
            pos.push_back(r);
        else
            neg.push_back(r);
    }
    std::vector<Row> out;
    for (Row r : zero) {
        r.a.resize(var);
        int k = normalize_row(r);
        if (k < 0)
            return std::nullopt;
        if (k > 0)
            out.push_back(std::move(r));
    }
    for (const Row& p : pos) {
        for (const Row& q : neg) {
            // q scaled by p.a[var] plus p scaled by -q.a[var] kills x_var
            Int alpha = p.a[var];
            Int beta = -q.a[var];
            Row r;
            r.a.resize(var);
            for (std::size_t j = 0; j < var; ++j)
                r.a[j] = beta * p.a[j] + alpha * q.a[j];
            r.b = Rat(beta) * p.b + Rat(alpha) * q.b;
            int k = normalize_row(r);
            if (k < 0)
                return std::nullopt;
            if (k > 0)
                out.push_back(std::move(r));
        }
    }
    prune_rows(out);
    return out;
}

/// Elimination chain: systems[k] constrains variables x_0..x_{k-1}.
/// systems[n] is the input. Empty optional => the system is infeasible.
inline std::optional<std::vector<std::vector<Row>>> fm_chain(
    const std::vector<Row>& input, std::size_t n)
{
    std::vector<std::vector<Row>> systems(n + 1);
    systems[n] = input;
    for (std::size_t k = n; k > 0; --k) {
        auto next = fm_eliminate(systems[k], k - 1);
        if (!next)
            return std::nullopt;
        systems[k - 1] = std::move(*next);
    }
    if (!systems[0].empty())
        return std::nullopt;  // contradictory constants survive as empty rows
    return systems;
}

/// Bounds for x_{k-1} in systems[k] after substituting the integer prefix.
/// FM exactness guarantees the interval is nonempty (possibly irrational? no:
/// rational) whenever the prefix came from the projected systems.
inline std::pair<Rat, Rat> prefix_bounds(const std::vector<Row>& sys,
                                         const std::vector<long long>& prefix,
                                         bool& has_lo, bool& has_hi)
{
    Rat lo = 0, hi = 0;
    has_lo = has_hi = false;
    std::size_t d = prefix.size();
    for (const Row& r : sys) {
        Rat rest = r.b;
        for (std::size_t j = 0; j < d; ++j)
            rest -= Rat(r.a[j]) * prefix[j];
        const Int& c = r.a[d];
        if (c == 0)
            continue;  // constraint on the prefix only; holds by projection
        Rat bound = rest / Rat(c);
        if (c > 0) {
            if (!has_hi || bound < hi) {
                hi = bound;
                has_hi = true;
            }
        } else {
            if (!has_lo || bound > lo) {
                lo = bound;
                has_lo = true;
            }
        }
    }
    return {lo, hi};
}

}  // namespace detail

/**
 * Rational convex polytope in H-representation, exact arithmetic throughout.
 * May be empty or lower-dimensional; redundant half-spaces are allowed (they
 * are reported, not rejected, by validate_delzant).
 */
class RationalPolytope {
public:
    RationalPolytope(int dim, std::vector<HalfSpace> halfspaces)
        : dim_(dim), halfspaces_(std::move(halfspaces))
    {
        if (dim_ <= 0)
            throw InvalidPolytope("polytope dimension must be positive");
        for (const HalfSpace& h : halfspaces_)
            if (static_cast<int>(h.normal.size()) != dim_)
                throw DimensionMismatch("half-space normal has wrong dimension");
    }

    int dim() const { return dim_; }
    const std::vector<HalfSpace>& halfspaces() const { return halfspaces_; }

    /// Closed containment, exact.
    bool contains(const RatVec& x) const
    {
        if (static_cast<int>(x.size()) != dim_)
            throw DimensionMismatch("point has wrong dimension");
        for (const HalfSpace& h : halfspaces_)
            if (dot(h.normal, x) > h.offset)
                return false;
        return true;
    }

    bool contains(const std::vector<long long>& x) const
    {
        RatVec rx(x.begin(), x.end());
        return contains(rx);
    }

    /// Number of stored half-spaces met with equality at x.
    int stratum_of(const RatVec& x) const
    {
        int k = 0;
        for (const HalfSpace& h : halfspaces_)
            if (dot(h.normal, x) == h.offset)
                ++k;
        return k;
    }

    /// Intersection with one more half-space. May be empty or degenerate.
    RationalPolytope cut(const HalfSpace& h) const
    {
        if (static_cast<int>(h.normal.size()) != dim_)
            throw DimensionMismatch("cut half-space has wrong dimension");
        std::vector<HalfSpace> hs = halfspaces_;
        hs.push_back(h);
        return RationalPolytope(dim_, std::move(hs));
    }

    /// Translate by a rational vector t: offsets pick up <normal, t>.
    RationalPolytope translated(const RatVec& t) const
    {
        if (static_cast<int>(t.size()) != dim_)
            throw DimensionMismatch("translation has wrong dimension");
        std::vector<HalfSpace> hs;
        hs.reserve(halfspaces_.size());
        for (const HalfSpace& h : halfspaces_)
            hs.emplace_back(h.normal, h.offset + dot(h.normal, t));
        return RationalPolytope(dim_, std::move(hs));
    }

    bool is_empty() const { return !fm_systems().has_value(); }

    /// Exact recession-cone test: bounded iff no nonzero d with A d <= 0.
    /// The empty polytope counts as bounded.
    bool is_bounded() const
    {
        if (is_empty())
            return true;
        return !recession_direction().has_value();
    }

    /// Some nonzero integer direction d with <normal_i, d> <= 0 for all i,
    /// if one exists. Extreme rays have n-1 tight independent constraints,
    /// and a rank-deficient system recedes along its nullspace.
    std::optional<IntVec> recession_direction() const
    {
        std::size_t n = dim_;
        std::vector<IntVec> normals;
        for (const HalfSpace& h : halfspaces_)
            normals.push_back(h.normal);

        RatMat nm;
        for (const IntVec& v : normals) {
            RatVec r;
            for (const Int& e : v)
                r.emplace_back(e);
            nm.push_back(std::move(r));
        }
        if (static_cast<std::size_t>(rank(nm)) < n) {
            // nullspace direction: find it by augmenting with unit rows
            for (std::size_t c = 0; c < n; ++c) {
                std::vector<IntVec> rows = normals;
                // try dropping to a rank n-1 subsystem spanning the nullspace
                IntVec d = nullspace_line(rows, n);
                if (!d.empty())
                    return d;
                break;
            }
            // fall through to the generic search below, which also covers
            // nullspaces of dimension > 1 via (n-1)-subset enumeration of a
            // rank-completed system; simplest correct fallback: brute search
            // over coordinate directions of the kernel.
            RatMat m = nm;
            // compute any kernel vector by Gaussian elimination
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
            std::vector<bool> is_pivot(n, false);
            for (std::size_t c : pivots)
                is_pivot[c] = true;
            for (std::size_t fc = 0; fc < n; ++fc) {
                if (is_pivot[fc])
                    continue;
                RatVec v(n, Rat(0));
                v[fc] = 1;
                for (std::size_t i = 0; i < pivots.size(); ++i)
                    v[pivots[i]] = -m[i][fc] / m[i][pivots[i]];
                return primitive_direction(v);
            }
        }

        // pointed cone: check candidate extreme rays
        std::size_t m = normals.size();
        if (n == 1) {
            // rays are +-1; test directly
            for (int s : {1, -1}) {
                bool ok = true;
                for (const IntVec& v : normals)
                    if (v[0] * s > 0) {
                        ok = false;
                        break;
                    }
                if (ok)
                    return IntVec{Int(s)};
            }
            return std::nullopt;
        }
        std::vector<std::size_t> idx(n - 1);
        std::vector<std::size_t> comb;
        auto feasible_ray = [&](const IntVec& d) -> bool {
            for (const IntVec& v : normals)
                if (dot_int(v, d) > 0)
                    return false;
            return true;
        };
        // enumerate (n-1)-subsets
        std::vector<std::size_t> stack;
        std::optional<IntVec> found;
        std::function<void(std::size_t)> rec = [&](std::size_t start) {
            if (found)
                return;
            if (stack.size() == n - 1) {
                std::vector<IntVec> rows;
                for (std::size_t i : stack)
                    rows.push_back(normals[i]);
                IntVec d = nullspace_line(rows, n);
                if (d.empty())
                    return;
                if (feasible_ray(d)) {
                    found = d;
                    return;
                }
                for (Int& e : d)
                    e = -e;
                if (feasible_ray(d))
                    found = d;
                return;
            }
            for (std::size_t i = start; i < m && !found; ++i) {
                stack.push_back(i);
                rec(i + 1);
                stack.pop_back();
            }
        };
        rec(0);
        return found;
    }

    /**
     * All vertices, exactly, via n-fold facet intersection with feasibility
     * filtering. Sorted lexicographically; exact deduplication.
     */
    std::vector<RatVec> vertices() const
    {
        std::size_t n = dim_, m = halfspaces_.size();
        std::set<RatVec> verts;
        if (m < n)
            return {};
        std::vector<std::size_t> stack;
        std::function<void(std::size_t)> rec = [&](std::size_t start) {
            if (stack.size() == n) {
                RatMat a;
                RatVec b;
                for (std::size_t i : stack) {
                    RatVec row;
                    for (const Int& e : halfspaces_[i].normal)
                        row.emplace_back(e);
                    a.push_back(std::move(row));
                    b.push_back(halfspaces_[i].offset);
                }
                RatVec x;
                if (solve_square(std::move(a), std::move(b), x) && contains(x))
                    verts.insert(std::move(x));
                return;
            }
            for (std::size_t i = start; i < m; ++i) {
                stack.push_back(i);
                rec(i + 1);
                stack.pop_back();
            }
        };
        rec(0);
        return {verts.begin(), verts.end()};
    }

    /// Dimension of the affine hull of the vertex set; -1 for empty.
    /// Meaningful for bounded polytopes (where vertices span the hull).
    int affine_dimension() const
    {
        std::vector<RatVec> v = vertices();
        if (v.empty())
            return is_empty() ? -1 : dim_;  // unbounded full cone edge case
        RatMat diffs;
        for (std::size_t i = 1; i < v.size(); ++i) {
            RatVec d(dim_);
            for (int j = 0; j < dim_; ++j)
                d[j] = v[i][j] - v[0][j];
            diffs.push_back(std::move(d));
        }
        return rank(std::move(diffs));
    }

    bool is_degenerate() const { return affine_dimension() < dim_; }

    /// FM elimination chain used by feasibility and lattice enumeration.
    std::optional<std::vector<std::vector<detail::Row>>> fm_systems() const
    {
        std::vector<detail::Row> rows;
        for (const HalfSpace& h : halfspaces_)
            rows.push_back(detail::Row{h.normal, h.offset});
        return detail::fm_chain(rows, dim_);
    }

private:
    int dim_;
    std::vector<HalfSpace> halfspaces_;
};

/**
 * Exactly the integer points of the closed polytope, each with its stratum,
 * sorted lexicographically. Enumeration walks integer prefixes against the
 * Fourier-Motzkin projections, so no infeasible prefix is ever visited.
 */
inline std::vector<LatticePoint> enumerate_lattice_points(const RationalPolytope& p)
{
    auto systems = p.fm_systems();
    if (!systems)
        return {};  // empty polytope
    if (auto d = p.recession_direction())
        throw UnboundedPolytope("polytope has a recession direction");

    std::size_t n = p.dim();
    std::vector<LatticePoint> out;
    std::vector<long long> prefix;

    std::function<void()> rec = [&]() {
        std::size_t d = prefix.size();
        bool has_lo, has_hi;
        auto [lo, hi] = detail::prefix_bounds((*systems)[d + 1], prefix, has_lo, has_hi);
        if (!has_lo || !has_hi)
            throw UnboundedPolytope("unbounded coordinate range");  // defensive; recession test should catch
        Int ilo = ceil_rat(lo), ihi = floor_rat(hi);
        for (Int t = ilo; t <= ihi; ++t) {
            prefix.push_back(t.convert_to<long long>());
            if (d + 1 == n) {
                RatVec x(prefix.begin(), prefix.end());
                LatticePoint lp;
                lp.coords = prefix;
                lp.stratum = p.stratum_of(x);
                out.push_back(std::move(lp));
            } else {
                rec();
            }
            prefix.pop_back();
        }
    };
    rec();
    std::sort(out.begin(), out.end(),
              [](const LatticePoint& a, const LatticePoint& b) { return a.coords < b.coords; });
    return out;
}

namespace detail {

/// Does dropping half-space i change the set? Exact test on the relaxed
/// polytope: every vertex of P_{-i} must satisfy i and every recession ray
/// must not escape through i.
inline bool halfspace_redundant(const RationalPolytope& p, std::size_t i)
{
    std::vector<HalfSpace> hs;
    for (std::size_t j = 0; j < p.halfspaces().size(); ++j)
        if (j != i)
            hs.push_back(p.halfspaces()[j]);
    if (hs.empty())
        return false;
    RationalPolytope relaxed(p.dim(), hs);
    const HalfSpace& h = p.halfspaces()[i];
    for (const RatVec& v : relaxed.vertices())
        if (dot(h.normal, v) > h.offset)
            return false;
    if (auto d = relaxed.recession_direction()) {
        Int s = dot_int(h.normal, *d);
        if (s > 0)
            return false;
        // a ray with <n_i, d> <= 0 cannot leave h; but a two-sided kernel
        // direction needs both signs checked
        IntVec neg = *d;
        for (Int& e : neg)
            e = -e;
        bool neg_recedes = true;
        for (const HalfSpace& hh : relaxed.halfspaces())
            if (dot_int(hh.normal, neg) > 0) {
                neg_recedes = false;
                break;
            }
        if (neg_recedes && dot_int(h.normal, neg) > 0)
            return false;
    }
    return true;
}

}  // namespace detail

/**
 * Delzant validation: simple (exactly n facets at each vertex), rational
 * (integral normals make edges automatically rational), smooth (primitive
 * edge directions at each vertex form a determinant +-1 matrix).
 *
 * Redundant half-spaces are reported in the result and excluded from the
 * facet count at each vertex; exact duplicates are collapsed the same way.
 */
inline DelzantReport validate_delzant(const RationalPolytope& p)
{
    if (p.is_empty())
        throw EmptyPolytope("polytope is infeasible");
    if (auto d = p.recession_direction())
        throw UnboundedPolytope("polytope has a recession direction");

    DelzantReport rep;
    std::size_t n = p.dim();

    // facet list: drop redundant half-spaces and exact duplicates
    std::vector<std::size_t> facets;
    std::set<std::pair<IntVec, Rat>> seen;
    for (std::size_t i = 0; i < p.halfspaces().size(); ++i) {
        if (detail::halfspace_redundant(p, i)) {
            rep.redundant.push_back(i);
            continue;
        }
        auto key = std::make_pair(p.halfspaces()[i].normal, p.halfspaces()[i].offset);
        if (!seen.insert(key).second)
            continue;
        facets.push_back(i);
    }

    for (const RatVec& v : p.vertices()) {
        std::vector<std::size_t> active;
        for (std::size_t i : facets)
            if (dot(p.halfspaces()[i].normal, v) == p.halfspaces()[i].offset)
                active.push_back(i);
        if (active.size() != n) {
            rep.simple = false;
            rep.smooth = false;
            rep.violations.push_back(
                {v, std::to_string(active.size()) + " facets meet (expected " +
                        std::to_string(n) + ")"});
            continue;
        }
        // edge direction along the intersection of all active facets but one,
        // oriented into the polytope (strictly slack on the dropped facet)
        std::vector<IntVec> edges;
        bool degenerate = false;
        for (std::size_t drop : active) {
            std::vector<IntVec> rows;
            for (std::size_t i : active)
                if (i != drop)
                    rows.push_back(p.halfspaces()[i].normal);
            IntVec e = n == 1 ? IntVec{Int(1)} : nullspace_line(rows, n);
            if (e.empty()) {
                degenerate = true;
                break;
            }
            Int s = dot_int(p.halfspaces()[drop].normal, e);
            if (s == 0) {
                degenerate = true;
                break;
            }
            if (s > 0)
                for (Int& x : e)
                    x = -x;
            edges.push_back(std::move(e));
        }
        if (degenerate) {
            rep.smooth = false;
            rep.violations.push_back({v, "active normals are linearly dependent"});
            continue;
        }
        Int det = determinant_int(edges);
        if (det != 1 && det != -1) {
            rep.smooth = false;
            rep.violations.push_back({v, "edge determinant " + det.str()});
        }
    }

    std::sort(rep.violations.begin(), rep.violations.end(),
              [](const DelzantViolation& a, const DelzantViolation& b) {
                  return a.vertex < b.vertex;
              });
    return rep;
}

/**
 * Image of p under x -> U x + t for a unimodular integer matrix U and an
 * integer translation t. Preserves the lattice, Delzant validity, and
 * half-space primitivity.
 */
inline RationalPolytope unimodular_transform(const RationalPolytope& p,
                                             const std::vector<IntVec>& u,
                                             const IntVec& t)
{
    std::size_t n = p.dim();
    if (u.size() != n || t.size() != n)
        throw DimensionMismatch("transform has wrong dimension");
    RatMat um(n, RatVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            um[i][j] = Rat(u[i][j]);
    Rat det = determinant(um);
    if (det != 1 && det != -1)
        throw InvalidPolytope("matrix is not unimodular");
    RatMat inv;
    invert(um, inv);
    std::vector<HalfSpace> hs;
    for (const HalfSpace& h : p.halfspaces()) {
        // new normal = (U^{-1})^T n, integral because U is unimodular
        IntVec nn(n);
        for (std::size_t i = 0; i < n; ++i) {
            Rat s = 0;
            for (std::size_t j = 0; j < n; ++j)
                s += inv[j][i] * Rat(h.normal[j]);
            nn[i] = rat_num(s);  // denominator is 1
        }
        Rat off = h.offset;
        for (std::size_t i = 0; i < n; ++i)
            off += Rat(nn[i]) * Rat(t[i]);
        hs.emplace_back(std::move(nn), std::move(off));
    }
    return RationalPolytope(p.dim(), std::move(hs));
}

}  // namespace bsq
