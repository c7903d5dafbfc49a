#pragma once

#include "webcas/ratfunc.hpp"

#include <optional>

namespace webcas {

// y'' = h3 p^3 + h2 p^2 + h1 p + h0, coefficients in (x,y). The cubic shape
// is the structural dual-projectivity condition; the remaining one is the
// residual computed by mvanish_residual.
struct CubicODE {
    RatFunc h3, h2, h1, h0;

    static CubicODE zero(const RingPtr& xy);
    // f(x,y,p) over the (x,y,p) ring.
    RatFunc as_f(const RingPtr& xyp) const;
    bool operator==(const CubicODE& o) const = default;
};

// One foliation of a web: either a slope field p(x,y) or the vertical family.
struct Foliation {
    std::optional<RatFunc> slope;  // nullopt = vertical (x = const leaves)
    static Foliation of(RatFunc p) { return {std::move(p)}; }
    static Foliation vertical() { return {std::nullopt}; }
};

// d/dx along y'' = f: g_x + p g_y + f g_p, over the (x,y,p) ring.
RatFunc total_derivative(const RatFunc& g, const RatFunc& f);

// The dual-flatness residual of the path geometry y'' = f:
//   (d/dx)^2 f_pp - 4 (d/dx) f_py + f_p (4 f_py - (d/dx) f_pp)
//   - 3 f_y f_pp + 6 f_yy
RatFunc mvanish_residual(const RatFunc& f);

struct VandermondeFit {
    CubicODE ode;
    // residuals of slopes 5.. against the fitted cubic (empty for d = 4)
    std::vector<RatFunc> extra_residuals;
    RatFunc vandermonde_det;  // of the first four rows
};

// Fits (h3,h2,h1,h0) through the first four slopes: dp/dx = f(x,y,p(x,y))
// with dp/dx = p_x + p p_y. Throws when slopes coincide.
VandermondeFit vandermonde_fit(const std::vector<RatFunc>& slopes);

struct LinearizationReport {
    std::vector<RatFunc> vanderm_residuals;  // one per foliation
    RatFunc mvanish;
    bool L2_zero = true;  // structural: f is cubic in p by construction
    bool L1_zero = false;
    bool verdict = false;
    std::string str() const;
};

// Verdict: every foliation solves the ODE's slope equation (vertical families
// are checked in the swapped chart against the dual cubic) and the residual
// of mvanish_residual vanishes.
LinearizationReport check_linearization(const std::vector<Foliation>& web, const CubicODE& ode);

// The affine line of cubics through the three interpolation constraints of a
// 3-web: base + s * direction. The direction is the cubic vanishing on all
// three slopes.
std::pair<CubicODE, CubicODE> candidate_family_3web(const std::vector<RatFunc>& slopes);

// Dual ODE under swapping x and y: q'' = -(h0(y,x) q^3 + h1(y,x) q^2 + ...).
CubicODE dual_cubic(const CubicODE& ode);

} // namespace webcas
