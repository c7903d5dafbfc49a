#pragma once

#include "webcas/series.hpp"

#include <array>

namespace webcas {

// 1-form with truncated-series coefficients, centered at the working point.
struct JetCoForm {
    JetSeries a, b;
};

// Moving-frame web curvature computed entirely in truncated series
// arithmetic. Used as the independent oracle for the symbolic pipeline and
// as the cross-check pipeline for series-defined webs.
struct JetWebResult {
    std::array<JetCoForm, 3> normalized;
    JetCoForm rho;   // cap reduced by one
    JetSeries K;     // cap reduced by two
    JetSeries area;
};

// slope_gauge: scale (dy - p_i dx) by (p2-p3, p3-p1, p1-p2) — the same gauge
// the symbolic slope path uses. Otherwise the kernel vector is normalized by
// its first entry (which must be a unit at the center).
JetWebResult jet_web_curvature(const std::array<JetCoForm, 3>& forms);
JetWebResult jet_web_curvature_slopes(const std::array<JetSeries, 3>& slopes);

} // namespace webcas
