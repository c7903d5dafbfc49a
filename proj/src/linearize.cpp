#include "webcas/linearize.hpp"

#include <sstream>

namespace webcas {

CubicODE CubicODE::zero(const RingPtr& xy) {
    RatFunc z(xy);
    return {z, z, z, z};
}

RatFunc CubicODE::as_f(const RingPtr& xyp) const {
    RatFunc p = RatFunc::variable(xyp, "p");
    return transport(h3, xyp) * p.pow(3) + transport(h2, xyp) * p.pow(2) +
           transport(h1, xyp) * p + transport(h0, xyp);
}

RatFunc total_derivative(const RatFunc& g, const RatFunc& f) {
    const RingPtr& r = g.ring();
    RatFunc p = RatFunc::variable(r, "p");
    return g.derivative("x") + p * g.derivative("y") + f * g.derivative("p");
}

RatFunc mvanish_residual(const RatFunc& f) {
    auto D = [&](const RatFunc& g) { return total_derivative(g, f); };
    RatFunc f_p = f.derivative("p");
    RatFunc f_pp = f_p.derivative("p");
    RatFunc f_py = f_p.derivative("y");
    RatFunc f_y = f.derivative("y");
    RatFunc f_yy = f_y.derivative("y");
    return D(D(f_pp)) - D(f_py) * Rational(4) + f_p * (f_py * Rational(4) - D(f_pp)) -
           f_y * f_pp * Rational(3) + f_yy * Rational(6);
}

// dp/dx of a slope field, in the (x,y) ring.
static RatFunc slope_flow(const RatFunc& p) {
    return p.derivative("x") + p * p.derivative("y");
}

static RatFunc eval_cubic(const CubicODE& ode, const RatFunc& p) {
    return ode.h3 * p.pow(3) + ode.h2 * p.pow(2) + ode.h1 * p + ode.h0;
}

VandermondeFit vandermonde_fit(const std::vector<RatFunc>& slopes) {
    if (slopes.size() < 4) throw Error("vandermonde_fit needs at least four slopes");
    for (size_t a = 0; a < slopes.size(); ++a)
        for (size_t b = a + 1; b < slopes.size(); ++b)
            if (slopes[a] == slopes[b]) throw Error("slopes not pairwise distinct");

    const RingPtr& xy = slopes[0].ring();
    RatFunc one = RatFunc::constant(xy, Rational(1));

    // 4x5 augmented system, Gaussian elimination over the function field
    std::array<std::array<RatFunc, 5>, 4> m;
    for (size_t a = 0; a < 4; ++a) {
        m[a][0] = slopes[a].pow(3);
        m[a][1] = slopes[a].pow(2);
        m[a][2] = slopes[a];
        m[a][3] = one;
        m[a][4] = slope_flow(slopes[a]);
    }
    RatFunc det = one;
    for (size_t col = 0; col < 4; ++col) {
        size_t piv = col;
        while (piv < 4 && m[piv][col].is_zero()) ++piv;
        if (piv == 4) throw Error("singular Vandermonde system");
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det = det * m[col][col];
        for (size_t row = 0; row < 4; ++row) {
            if (row == col || m[row][col].is_zero()) continue;
            RatFunc factor = m[row][col] / m[col][col];
            for (size_t k = col; k < 5; ++k) m[row][k] = m[row][k] - factor * m[col][k];
        }
    }
    VandermondeFit out{{m[0][4] / m[0][0], m[1][4] / m[1][1], m[2][4] / m[2][2], m[3][4] / m[3][3]},
                       {},
                       det};
    for (size_t a = 4; a < slopes.size(); ++a)
        out.extra_residuals.push_back(slope_flow(slopes[a]) - eval_cubic(out.ode, slopes[a]));
    return out;
}

CubicODE dual_cubic(const CubicODE& ode) {
    const RingPtr& xy = ode.h0.ring();
    std::map<std::string, std::string> swap_xy = {{"x", "y"}, {"y", "x"}};
    auto sw = [&](const RatFunc& h) { return transport(h, xy, swap_xy); };
    return {-sw(ode.h0), -sw(ode.h1), -sw(ode.h2), -sw(ode.h3)};
}

LinearizationReport check_linearization(const std::vector<Foliation>& web, const CubicODE& ode) {
    LinearizationReport rep;
    std::optional<CubicODE> dual;
    for (const auto& fol : web) {
        if (fol.slope) {
            rep.vanderm_residuals.push_back(slope_flow(*fol.slope) - eval_cubic(ode, *fol.slope));
        } else {
            // vertical leaves are straight in the swapped chart with slope 0
            if (!dual) dual = dual_cubic(ode);
            rep.vanderm_residuals.push_back(dual->h0);
        }
    }
    const RingPtr& xy = ode.h0.ring();
    RingPtr xyp = make_ring({"x", "y", "p"});
    (void)xy;
    rep.mvanish = mvanish_residual(ode.as_f(xyp));
    rep.L1_zero = rep.mvanish.is_zero();
    bool all = rep.L1_zero;
    for (const auto& r : rep.vanderm_residuals) all = all && r.is_zero();
    rep.verdict = all;
    return rep;
}

std::pair<CubicODE, CubicODE> candidate_family_3web(const std::vector<RatFunc>& slopes) {
    if (slopes.size() != 3) throw Error("candidate family needs exactly three slopes");
    for (size_t a = 0; a < 3; ++a)
        for (size_t b = a + 1; b < 3; ++b)
            if (slopes[a] == slopes[b]) throw Error("slopes not pairwise distinct");
    const RingPtr& xy = slopes[0].ring();
    RatFunc one = RatFunc::constant(xy, Rational(1));

    // particular solution with h3 = 0: 3x3 Vandermonde on (p^2, p, 1)
    std::array<std::array<RatFunc, 4>, 3> m;
    for (size_t a = 0; a < 3; ++a) {
        m[a][0] = slopes[a].pow(2);
        m[a][1] = slopes[a];
        m[a][2] = one;
        m[a][3] = slope_flow(slopes[a]);
    }
    for (size_t col = 0; col < 3; ++col) {
        size_t piv = col;
        while (piv < 3 && m[piv][col].is_zero()) ++piv;
        if (piv == 3) throw Error("singular interpolation system");
        if (piv != col) std::swap(m[piv], m[col]);
        for (size_t row = 0; row < 3; ++row) {
            if (row == col || m[row][col].is_zero()) continue;
            RatFunc factor = m[row][col] / m[col][col];
            for (size_t k = col; k < 4; ++k) m[row][k] = m[row][k] - factor * m[col][k];
        }
    }
    CubicODE base{RatFunc(xy), m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
    // direction: the cubic vanishing on all three slopes
    CubicODE dir{one, -(slopes[0] + slopes[1] + slopes[2]),
                 slopes[0] * slopes[1] + slopes[0] * slopes[2] + slopes[1] * slopes[2],
                 -(slopes[0] * slopes[1] * slopes[2])};
    return {base, dir};
}

std::string LinearizationReport::str() const {
    std::ostringstream os;
    for (size_t i = 0; i < vanderm_residuals.size(); ++i)
        os << "foliation " << i + 1 << " residual: "
           << (vanderm_residuals[i].is_zero() ? "0" : vanderm_residuals[i].str()) << "\n";
    os << "dual-flatness residual: " << (mvanish.is_zero() ? "0" : mvanish.str()) << "\n";
    os << "cubic-in-p: yes\n";
    os << "verdict: " << (verdict ? "linearizes" : "does not linearize") << "\n";
    return os.str();
}

} // namespace webcas
