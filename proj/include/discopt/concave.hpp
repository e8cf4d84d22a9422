#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "discopt/errors.hpp"

namespace discopt {

inline constexpr double kSlopeTolerance = 1e-9;

/// Piecewise-linear concave discount function d with d(0)=0, d non-decreasing,
/// d(x) <= x. Beyond the last breakpoint the curve continues with final_slope.
struct DiscountCurve {
    std::vector<std::pair<double, double>> breakpoints; // (cost, price), first is (0,0)
    double final_slope = 1.0;

    double evaluate(double x) const {
        if (x < 0.0)
            throw DomainError("DiscountCurve::evaluate: negative argument");
        if (breakpoints.empty())
            throw DomainError("DiscountCurve::evaluate: empty curve");
        const auto& last = breakpoints.back();
        if (x >= last.first)
            return last.second + final_slope * (x - last.first);
        // first segment with right endpoint beyond x; breakpoints hit exactly
        for (std::size_t i = 1; i < breakpoints.size(); ++i) {
            if (x <= breakpoints[i].first) {
                if (x == breakpoints[i].first)
                    return breakpoints[i].second;
                const auto& a = breakpoints[i - 1];
                const auto& b = breakpoints[i];
                double slope = (b.second - a.second) / (b.first - a.first);
                return a.second + slope * (x - a.first);
            }
        }
        return last.second; // unreachable for valid curves
    }

    bool operator==(const DiscountCurve& o) const {
        return breakpoints == o.breakpoints && final_slope == o.final_slope;
    }
};

struct CurveReport {
    bool ok = true;
    std::vector<std::string> violations;
    std::vector<std::string> warnings;
};

/// Checks properties (1)-(4): d(0)=0, non-decreasing, d(x)<=x, concave.
/// Violations are reported, not thrown. Zero-slope segments are admitted with
/// a warning: the algorithms only need monotone non-decreasing, and the
/// set-cover reduction needs arbitrarily small second slopes.
inline CurveReport validate(const DiscountCurve& curve) {
    CurveReport report;
    auto fail = [&](const std::string& what) {
        report.ok = false;
        report.violations.push_back(what);
    };

    if (curve.breakpoints.empty()) {
        fail("structure: no breakpoints");
        return report;
    }
    const auto& first = curve.breakpoints.front();
    if (std::abs(first.first) > 0.0 || std::abs(first.second) > kSlopeTolerance)
        fail("origin: d(0) != 0");

    // collect segment slopes, final_slope last
    std::vector<double> slopes;
    bool xs_ok = true;
    for (std::size_t i = 1; i < curve.breakpoints.size(); ++i) {
        double dx = curve.breakpoints[i].first - curve.breakpoints[i - 1].first;
        double dy = curve.breakpoints[i].second - curve.breakpoints[i - 1].second;
        if (!(dx > 0.0)) {
            fail("structure: breakpoint x values not strictly increasing");
            xs_ok = false;
            break;
        }
        slopes.push_back(dy / dx);
    }
    if (!xs_ok)
        return report;
    slopes.push_back(curve.final_slope);

    bool monotone = true, concave = true, bounded = true, zero_slope = false;
    for (std::size_t i = 0; i < slopes.size(); ++i) {
        if (slopes[i] < -kSlopeTolerance)
            monotone = false;
        if (std::abs(slopes[i]) <= kSlopeTolerance)
            zero_slope = true;
        if (i + 1 < slopes.size() && slopes[i + 1] > slopes[i] + kSlopeTolerance)
            concave = false;
    }
    if (slopes.front() > 1.0 + kSlopeTolerance)
        bounded = false; // with concavity, first slope <= 1 forces d(x) <= x everywhere

    if (!monotone)
        fail("monotonicity: decreasing segment");
    if (!bounded)
        fail("bounded: first slope exceeds 1, d(x) > x");
    if (!concave)
        fail("concavity: slope increases left to right");
    if (zero_slope)
        report.warnings.push_back("weakly increasing: zero-slope segment");
    return report;
}

/// d(x) = x up to cap and beyond: the linear-cost special case.
inline DiscountCurve identity_curve(double cap) {
    if (!(cap > 0.0))
        throw DomainError("identity_curve: cap must be positive");
    DiscountCurve c;
    c.breakpoints = {{0.0, 0.0}, {cap, cap}};
    c.final_slope = 1.0;
    return c;
}

} // namespace discopt
