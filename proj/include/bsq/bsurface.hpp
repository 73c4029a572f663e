#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "bsq/errors.hpp"
#include "bsq/rational.hpp"

namespace bsq {

/// A connected component of the critical hypersurface Z: one latitude circle
/// with its modular period c (> 0), the coefficient of the log singularity of
/// the moment map across it.
struct CriticalCircle {
    double position = 0.0;  // h in (-1,1) for spheres, angle in [0,1) for tori
    double period = 1.0;
};

enum class SurfaceKind { Sphere, Torus };
enum class ProfileKind { PoleEnd, Well };

/**
 * One connected component of M \ Z with its model moment profile:
 *
 *   Well between circles at a,b:  mu(h) = -c_a log(h-a) - c_b log(b-h) + offset
 *   PoleEnd, circle at a, pole p: mu(h) = -c_a log|h-a| + c_a log|p-a| + offset
 *
 * so mu(pole) = offset exactly and mu diverges to +inf at every anchor circle.
 * Signs alternate across each circle.
 */
struct ComponentProfile {
    ProfileKind kind = ProfileKind::Well;
    int left_circle = -1;   // circle index, or -1 for a pole anchor
    int right_circle = -1;  // circle index, or -1 for a pole anchor
    double lo = 0.0;        // left end of the h-interval (unwrapped for tori)
    double hi = 0.0;        // right end
    double period_lo = 0.0;  // period of the circle at lo (0 if pole)
    double period_hi = 0.0;  // period of the circle at hi (0 if pole)
    double offset = 0.0;
    int sign = +1;
};

/// One Bohr-Sommerfeld leaf: the fiber over an integer moment value.
struct BSLeaf {
    long long weight = 0;        // integer m with mu(h) = m + offset_shift
    double h_value = 0.0;        // unwrapped h of the fiber (torus components may exceed 1)
    bool at_pole = false;
    int component = 0;
    int sign = +1;
    int multiplicity_index = 1;  // 1 = root on the left flank, 2 = on the right
};

namespace detail {

/// One monotone flank of a component profile, parameterized by the distance
/// delta to its adjacent circle. mu is strictly decreasing in delta, with
/// mu -> +inf as delta -> 0 and mu(delta_max) the flank minimum. Working in
/// delta avoids the h - a cancellation that would otherwise cap the
/// achievable residual near circles at large |position|.
struct Flank {
    double c_near = 1.0;    // period of the adjacent circle
    double c_far = 0.0;     // period across the component (wells only)
    double width = 0.0;     // full component width
    double delta_max = 0.0; // flank length
    double offset = 0.0;
    bool well = false;

    double mu(double delta) const
    {
        if (well)
            return -c_near * std::log(delta) - c_far * std::log(width - delta) + offset;
        return -c_near * std::log(delta) + c_near * std::log(width) + offset;
    }

    /// Unique delta in (0, delta_max] with mu(delta) = target, for
    /// target >= mu(delta_max). Bisection to a fixed mu-residual.
    double solve(double target, const std::string& what) const
    {
        double lo = delta_max;  // mu(lo) <= target
        double hi = delta_max;
        // geometric walk toward the circle until the target is bracketed
        int guard = 0;
        while (mu(hi) < target) {
            hi *= 0.5;
            if (++guard > 1200 || hi <= 0.0)
                throw NonconvergedBisection("cannot bracket leaf for " + what);
        }
        if (hi < delta_max)
            lo = hi * 2.0;
        // invariant: mu(hi) >= target >= mu(lo), root in [hi, lo] (delta grows right)
        double a = hi, b = lo;
        for (int it = 0; it < 400; ++it) {
            double mid = 0.5 * (a + b);
            double v = mu(mid);
            if (std::abs(v - target) <= 1e-10)
                return mid;
            if (v > target)
                a = mid;
            else
                b = mid;
        }
        double mid = 0.5 * (a + b);
        if (std::abs(mu(mid) - target) <= 1e-9)
            return mid;
        throw NonconvergedBisection("bisection stalled for " + what);
    }
};

}  // namespace detail

/**
 * A b-symplectic toric surface per the GMPS classification: a sphere or torus
 * whose critical hypersurface Z is a set of latitude circles, with one model
 * moment profile per component of M \ Z and alternating orientation signs.
 * The component list is derived from the circles, never supplied.
 */
class BSurface {
public:
    BSurface(SurfaceKind kind, std::vector<CriticalCircle> circles,
             std::vector<double> offsets, int orientation)
        : kind_(kind), circles_(std::move(circles)), orientation_(orientation)
    {
        validate(offsets);
        build_components(offsets);
    }

    SurfaceKind kind() const { return kind_; }
    const std::vector<CriticalCircle>& circles() const { return circles_; }
    const std::vector<ComponentProfile>& components() const { return components_; }
    int orientation() const { return orientation_; }

    int n_components() const { return static_cast<int>(components_.size()); }

    BSurface with_orientation(int orientation) const
    {
        BSurface s = *this;
        if (orientation != s.orientation_) {
            s.orientation_ = orientation;
            for (ComponentProfile& c : s.components_)
                c.sign = -c.sign;
        }
        return s;
    }

    /**
     * The model moment profile of one component, literal formula. h must lie
     * strictly inside the component's interval; the pole endpoint of a
     * PoleEnd component is allowed (mu(pole) = offset exactly).
     */
    double moment_profile(int comp, double h) const
    {
        const ComponentProfile& c = component(comp);
        switch (c.kind) {
        case ProfileKind::Well:
            if (!(h > c.lo && h < c.hi))
                throw OutsideComponent("h outside well component");
            return -c.period_lo * std::log(h - c.lo) - c.period_hi * std::log(c.hi - h) +
                   c.offset;
        case ProfileKind::PoleEnd:
            if (c.left_circle < 0) {
                // pole at lo, circle at hi
                if (!(h >= c.lo && h < c.hi))
                    throw OutsideComponent("h outside pole component");
                return -c.period_hi * std::log(c.hi - h) + c.period_hi * std::log(c.hi - c.lo) +
                       c.offset;
            }
            // circle at lo, pole at hi
            if (!(h > c.lo && h <= c.hi))
                throw OutsideComponent("h outside pole component");
            return -c.period_lo * std::log(h - c.lo) + c.period_lo * std::log(c.hi - c.lo) +
                   c.offset;
        }
        throw OutsideComponent("unreachable");
    }

    /**
     * Location and value of the component minimum. Wells take it at the
     * weighted mean h* = (c_b a + c_a b)/(c_a + c_b); PoleEnds at the pole,
     * where the profile equals the offset.
     */
    std::pair<double, double> profile_minimum(int comp) const
    {
        const ComponentProfile& c = component(comp);
        if (c.kind == ProfileKind::PoleEnd) {
            double pole = c.left_circle < 0 ? c.lo : c.hi;
            return {pole, c.offset};
        }
        double h_star = (c.period_hi * c.lo + c.period_lo * c.hi) / (c.period_lo + c.period_hi);
        return {h_star, moment_profile(comp, h_star)};
    }

    /// The component's moment image [mu_min, +inf), closed on the left.
    double component_image_min(int comp) const { return profile_minimum(comp).second; }

    /**
     * All Bohr-Sommerfeld leaves with integer weight |m| <= window, where a
     * leaf of weight m solves mu(h) = m + offset_shift. Wells contribute two
     * leaves per level strictly above the minimum and a single one at an
     * integral minimum; PoleEnds one per level, the pole itself included when
     * the offset is integral. No leaf ever lies on a critical circle.
     */
    std::vector<BSLeaf> bs_leaves(double window, double offset_shift = 0.0,
                                  double tol = kIntegerTol) const
    {
        if (window < 0)
            return {};
        long long nmax = static_cast<long long>(std::floor(window));
        std::vector<BSLeaf> out;
        for (int comp = 0; comp < n_components(); ++comp) {
            const ComponentProfile& c = component(comp);
            auto [h_star, mu_min] = profile_minimum(comp);
            double lowest = mu_min - offset_shift;  // in weight units
            long long m_lo = static_cast<long long>(std::ceil(lowest - tol));
            m_lo = std::max(m_lo, -nmax);
            for (long long m = m_lo; m <= nmax; ++m) {
                double target = static_cast<double>(m) + offset_shift;
                if (std::abs(target - mu_min) <= tol) {
                    BSLeaf leaf;
                    leaf.weight = m;
                    leaf.h_value = h_star;
                    leaf.at_pole = (c.kind == ProfileKind::PoleEnd);
                    leaf.component = comp;
                    leaf.sign = c.sign;
                    leaf.multiplicity_index = 1;
                    out.push_back(leaf);
                    continue;
                }
                if (target < mu_min)
                    continue;
                for (const auto& [flank, side] : flanks(comp)) {
                    double delta = flank.solve(target, "component " + std::to_string(comp));
                    BSLeaf leaf;
                    leaf.weight = m;
                    leaf.h_value = side == 1 ? c.lo + delta : c.hi - delta;
                    leaf.at_pole = false;
                    leaf.component = comp;
                    leaf.sign = c.sign;
                    leaf.multiplicity_index = side;
                    out.push_back(leaf);
                }
            }
        }
        std::sort(out.begin(), out.end(), [](const BSLeaf& a, const BSLeaf& b) {
            if (a.weight != b.weight)
                return a.weight < b.weight;
            if (a.component != b.component)
                return a.component < b.component;
            return a.multiplicity_index < b.multiplicity_index;
        });
        return out;
    }

    /// Distance from an unwrapped h to the nearest critical circle (cyclic
    /// for tori).
    double distance_to_circles(double h) const
    {
        double best = std::numeric_limits<double>::infinity();
        for (const CriticalCircle& z : circles_) {
            double d = std::abs(h - z.position);
            if (kind_ == SurfaceKind::Torus)
                d = std::min({d, std::abs(h - z.position - 1.0), std::abs(h - z.position + 1.0)});
            best = std::min(best, d);
        }
        return best;
    }

    const ComponentProfile& component(int comp) const
    {
        if (comp < 0 || comp >= n_components())
            throw OutsideComponent("component index out of range");
        return components_[static_cast<std::size_t>(comp)];
    }

    /// Monotone flanks of a component, tagged with the side whose anchor the
    /// flank's delta is measured from (1 = left end, 2 = right end). Wells
    /// have two flanks split at the minimum; PoleEnds a single flank anchored
    /// at their circle.
    std::vector<std::pair<detail::Flank, int>> flanks(int comp) const
    {
        const ComponentProfile& c = component(comp);
        double width = c.hi - c.lo;
        std::vector<std::pair<detail::Flank, int>> fs;
        if (c.kind == ProfileKind::Well) {
            double dstar_left = width * c.period_lo / (c.period_lo + c.period_hi);
            detail::Flank left{c.period_lo, c.period_hi, width, dstar_left, c.offset, true};
            detail::Flank right{c.period_hi, c.period_lo, width, width - dstar_left, c.offset,
                                true};
            fs.emplace_back(left, 1);
            fs.emplace_back(right, 2);
        } else if (c.left_circle < 0) {
            // pole at lo, circle at hi: the flank hangs off the right anchor
            detail::Flank f{c.period_hi, 0.0, width, width, c.offset, false};
            fs.emplace_back(f, 2);
        } else {
            detail::Flank f{c.period_lo, 0.0, width, width, c.offset, false};
            fs.emplace_back(f, 1);
        }
        return fs;
    }

private:
    void validate(const std::vector<double>& offsets) const
    {
        std::size_t k = circles_.size();
        if (orientation_ != 1 && orientation_ != -1)
            throw InvalidSurface("orientation must be +1 or -1");
        for (const CriticalCircle& z : circles_)
            if (!(z.period > 0))
                throw InvalidSurface("modular periods must be positive");
        for (std::size_t i = 1; i < k; ++i)
            if (!(circles_[i - 1].position < circles_[i].position))
                throw InvalidSurface("circle positions must be strictly increasing");
        if (kind_ == SurfaceKind::Sphere) {
            if (k < 1)
                throw InvalidSurface("a b-sphere needs at least one critical circle");
            if (!(circles_.front().position > -1.0 && circles_.back().position < 1.0))
                throw InvalidSurface("sphere circle positions must lie in (-1,1)");
            if (offsets.size() != k + 1)
                throw InvalidSurface("sphere with k circles needs k+1 component offsets");
        } else {
            if (k < 2 || k % 2 != 0)
                throw InvalidSurface("a b-torus needs an even number (>= 2) of circles");
            if (!(circles_.front().position >= 0.0 && circles_.back().position < 1.0))
                throw InvalidSurface("torus circle positions must lie in [0,1)");
            if (offsets.size() != k)
                throw InvalidSurface("torus with k circles needs k component offsets");
        }
    }

    void build_components(const std::vector<double>& offsets)
    {
        std::size_t k = circles_.size();
        if (kind_ == SurfaceKind::Sphere) {
            for (std::size_t j = 0; j <= k; ++j) {
                ComponentProfile c;
                c.offset = offsets[j];
                // the extreme (north) component carries the orientation sign
                c.sign = ((k - j) % 2 == 0) ? orientation_ : -orientation_;
                if (j == 0) {
                    c.kind = ProfileKind::PoleEnd;
                    c.left_circle = -1;
                    c.right_circle = 0;
                    c.lo = -1.0;
                    c.hi = circles_[0].position;
                    c.period_hi = circles_[0].period;
                } else if (j == k) {
                    c.kind = ProfileKind::PoleEnd;
                    c.left_circle = static_cast<int>(k) - 1;
                    c.right_circle = -1;
                    c.lo = circles_[k - 1].position;
                    c.hi = 1.0;
                    c.period_lo = circles_[k - 1].period;
                } else {
                    c.kind = ProfileKind::Well;
                    c.left_circle = static_cast<int>(j) - 1;
                    c.right_circle = static_cast<int>(j);
                    c.lo = circles_[j - 1].position;
                    c.hi = circles_[j].position;
                    c.period_lo = circles_[j - 1].period;
                    c.period_hi = circles_[j].period;
                }
                components_.push_back(c);
            }
        } else {
            for (std::size_t j = 0; j < k; ++j) {
                ComponentProfile c;
                c.kind = ProfileKind::Well;
                c.offset = offsets[j];
                c.sign = (j % 2 == 0) ? orientation_ : -orientation_;
                c.left_circle = static_cast<int>(j);
                c.right_circle = static_cast<int>((j + 1) % k);
                c.lo = circles_[j].position;
                c.hi = j + 1 < k ? circles_[j + 1].position : circles_[0].position + 1.0;
                c.period_lo = circles_[j].period;
                c.period_hi = circles_[(j + 1) % k].period;
                components_.push_back(c);
            }
        }
    }

    SurfaceKind kind_;
    std::vector<CriticalCircle> circles_;
    int orientation_;
    std::vector<ComponentProfile> components_;
};

/// The canonical b-sphere: one critical circle at the equator, unit modular
/// period, zero offsets. Its leaves sit at h = +-e^{-m}.
inline BSurface canonical_bsphere()
{
    return BSurface(SurfaceKind::Sphere, {{0.0, 1.0}}, {0.0, 0.0}, +1);
}

}  // namespace bsq
