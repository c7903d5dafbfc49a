#include "webcas/jetweb.hpp"

namespace webcas {

static JetSeries minor_of(const JetCoForm& u, const JetCoForm& v) {
    return u.a * v.b - v.a * u.b;
}

static JetCoForm scaled(const JetCoForm& f, const JetSeries& s) { return {f.a * s, f.b * s}; }

static JetCoForm truncated(const JetCoForm& f, unsigned cap) {
    return {f.a.truncated(cap), f.b.truncated(cap)};
}

static JetWebResult curvature_core(std::array<JetCoForm, 3> w) {
    // sum-to-zero gauge must hold exactly through the cap
    JetSeries sa = w[0].a + w[1].a + w[2].a;
    JetSeries sb = w[0].b + w[1].b + w[2].b;
    if (!sa.is_zero() || !sb.is_zero()) throw Error("jet web does not close to zero");

    unsigned cap = w[0].a.cap();
    if (cap < 2) throw Error("jet web needs cap >= 2");
    unsigned cap1 = cap - 1, cap2 = cap - 2;

    // d(a dx + b dy) = (b_x - a_y) dx^dy, all at cap-1
    std::array<JetSeries, 3> c;
    for (size_t i = 0; i < 3; ++i) c[i] = w[i].b.derivative(0) - w[i].a.derivative(1);
    std::array<JetCoForm, 3> w1;
    for (size_t i = 0; i < 3; ++i) w1[i] = truncated(w[i], cap1);

    JetSeries det = minor_of(w1[0], w1[1]);
    if (is_zero(det.at_origin())) throw Error("web not transversal at the center");
    JetSeries inv = det.reciprocal();
    JetSeries r1 = (c[0] * w1[1].a - c[1] * w1[0].a) * inv;
    JetSeries r2 = (c[0] * w1[1].b - c[1] * w1[0].b) * inv;
    // check the third structure equation
    JetSeries third = c[2] + r1 * w1[2].b - r2 * w1[2].a;
    if (!third.is_zero()) throw Error("jet connection inconsistent on the third foliation");

    JetWebResult out;
    out.normalized = w;
    out.rho = {r1, r2};
    out.area = minor_of(truncated(w[0], cap2), truncated(w[1], cap2));
    if (is_zero(out.area.at_origin())) throw Error("degenerate area form at the center");
    JetSeries drho = r2.derivative(0) - r1.derivative(1);
    out.K = drho * out.area.reciprocal();
    return out;
}

JetWebResult jet_web_curvature(const std::array<JetCoForm, 3>& forms) {
    // kernel of the 2x3 coefficient matrix, first entry normalized to 1
    std::array<JetSeries, 3> lam = {minor_of(forms[1], forms[2]), minor_of(forms[2], forms[0]),
                                    minor_of(forms[0], forms[1])};
    for (const auto& l : lam)
        if (is_zero(l.at_origin())) throw Error("web not transversal at the center");
    JetSeries lead_inv = lam[0].reciprocal();
    std::array<JetCoForm, 3> w;
    for (size_t i = 0; i < 3; ++i) w[i] = scaled(forms[i], lam[i] * lead_inv);
    return curvature_core(std::move(w));
}

JetWebResult jet_web_curvature_slopes(const std::array<JetSeries, 3>& slopes) {
    const RingPtr& ring = slopes[0].ring();
    unsigned cap = slopes[0].cap();
    JetSeries one = JetSeries::constant(ring, cap, Rational(1));
    std::array<JetSeries, 3> lam = {slopes[1] - slopes[2], slopes[2] - slopes[0],
                                    slopes[0] - slopes[1]};
    for (const auto& l : lam)
        if (is_zero(l.at_origin())) throw Error("slopes not pairwise distinct at the center");
    std::array<JetCoForm, 3> w;
    for (size_t i = 0; i < 3; ++i) w[i] = {(-slopes[i]) * lam[i], one * lam[i]};
    return curvature_core(std::move(w));
}

} // namespace webcas
