#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bsq/errors.hpp"

namespace bsq {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Default absolute tolerance for "this float is an integer" decisions.
/// Overridable per call; the CLI maps BSQ_TOLERANCE onto it.
inline constexpr double kIntegerTol = 1e-9;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

/// Floor of a rational as an exact integer.
inline Int floor_rat(const Rat& r)
{
    Int n = rat_num(r), d = rat_den(r);  // d > 0 canonically
    Int q = n / d;
    if (n < 0 && q * d != n)
        --q;
    return q;
}

inline Int ceil_rat(const Rat& r) { return -floor_rat(-r); }

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

/// Exact rational value of an IEEE double (doubles are dyadic rationals).
inline Rat rat_from_double(double x)
{
    if (x == 0.0)
        return Rat(0);
    Rat r(x);  // boost converts exactly
    return r;
}

/// Parse "p/q", "p", or a plain integer string into an exact rational.
inline Rat parse_rational(const std::string& s)
{
    auto bad = [&] { throw ParseError("invalid rational literal: '" + s + "'"); };
    if (s.empty())
        bad();
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return Rat(Int(s));
        Int p(s.substr(0, slash));
        Int q(s.substr(slash + 1));
        if (q == 0)
            bad();
        return Rat(p, q);
    } catch (const std::exception&) {
        bad();
    }
    return Rat(0);  // unreachable
}

/// Exact "p/q" form ("p" when the denominator is 1).
inline std::string format_rational(const Rat& r)
{
    Int n = rat_num(r), d = rat_den(r);
    if (d == 1)
        return n.str();
    return n.str() + "/" + d.str();
}

/// Fixed 12-significant-digit formatting for deterministic text output.
inline std::string fmt_double(double v)
{
    if (v == 0.0)
        v = 0.0;  // normalize -0
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

/// Round a double through the 12-significant-digit representation, so JSON
/// numbers match the text formatting bit-for-bit across platforms.
inline double round12(double v)
{
    return std::strtod(fmt_double(v).c_str(), nullptr);
}

using RatVec = std::vector<Rat>;
using IntVec = std::vector<Int>;

}  // namespace bsq
