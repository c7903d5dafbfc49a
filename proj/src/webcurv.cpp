#include "webcas/webcurv.hpp"
#include "webcas/chart.hpp"
#include "webcas/expr.hpp"

#include <sstream>

namespace webcas {

static std::string strip_ws(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

static void check_xy(const RingPtr& r) {
    if (r->size() != 2) throw Error("web chart must have exactly two coordinates");
}

Web3 Web3::from_slopes(const RingPtr& xy, std::vector<RatFunc> slopes,
                       std::optional<std::vector<Rational>> base) {
    check_xy(xy);
    if (slopes.size() != 3) throw Error("a 3-web needs exactly three slopes");
    Web3 w;
    w.ring_ = xy;
    for (int i = 0; i < 3; ++i)
        w.forms_[static_cast<size_t>(i)] =
            {-slopes[static_cast<size_t>(i)], RatFunc::constant(xy, Rational(1))};
    w.slopes_ = std::move(slopes);
    w.base_ = std::move(base);
    w.check_transversal();
    return w;
}

Web3 Web3::from_forms(const RingPtr& xy, std::array<CoForm, 3> forms,
                      std::optional<std::vector<Rational>> base) {
    check_xy(xy);
    Web3 w;
    w.ring_ = xy;
    w.forms_ = std::move(forms);
    w.base_ = std::move(base);
    w.check_transversal();
    return w;
}

Web3 Web3::from_text(const std::string& text) {
    RingPtr xy = make_ring({"x", "y"});
    ChartPtr chart = Chart::coordinate(xy);
    std::istringstream in(text);
    std::string line;
    std::vector<CoForm> forms;
    std::vector<RatFunc> slopes;
    std::optional<std::vector<Rational>> base;
    while (std::getline(in, line)) {
        std::string t = strip_ws(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.rfind("slope:", 0) == 0) {
            slopes.push_back(parse_ratfunc(t.substr(6), xy));
        } else if (t.rfind("form:", 0) == 0) {
            DiffForm f = parse_form(t.substr(5), chart, 1);
            forms.push_back({f.component({0}), f.component({1})});
        } else if (t.rfind("at:", 0) == 0) {
            std::string rest = t.substr(3);
            size_t comma = rest.find(',');
            if (comma == std::string::npos) throw Error("base point needs two coordinates");
            base = std::vector<Rational>{rat_parse(strip_ws(rest.substr(0, comma))),
                                         rat_parse(strip_ws(rest.substr(comma + 1)))};
        } else {
            throw Error("unrecognized web input line: " + t);
        }
    }
    if (forms.empty() && slopes.size() == 3)
        return from_slopes(xy, std::move(slopes), std::move(base));
    for (const auto& p : slopes) forms.push_back({-p, RatFunc::constant(xy, Rational(1))});
    if (forms.size() != 3) throw Error("a 3-web needs exactly three foliations");
    return from_forms(xy, {forms[0], forms[1], forms[2]}, std::move(base));
}

const std::vector<RatFunc>& Web3::slopes() const {
    if (!slopes_) throw Error("web was not given by slopes");
    return *slopes_;
}

static RatFunc minor_of(const CoForm& u, const CoForm& v) { return u.a * v.b - v.a * u.b; }

void Web3::check_transversal() const {
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            RatFunc m = minor_of(forms_[static_cast<size_t>(i)], forms_[static_cast<size_t>(j)]);
            if (m.is_zero())
                throw Error("foliations " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                            " are not transversal (slopes not pairwise distinct)");
            if (base_ && is_zero(m.num().eval(*base_)))
                throw Error("foliations " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                            " are not transversal at the base point");
        }
}

std::array<CoForm, 3> normalize_web(const Web3& web) {
    const auto& f = web.forms();
    std::array<RatFunc, 3> lam;
    if (web.slope_input()) {
        const auto& p = web.slopes();
        lam = {p[1] - p[2], p[2] - p[0], p[0] - p[1]};
    } else {
        lam = {minor_of(f[1], f[2]), minor_of(f[2], f[0]), minor_of(f[0], f[1])};
        // deterministic representative: first kernel entry 1
        RatFunc lead = lam[0];
        for (auto& l : lam) l = l / lead;
    }
    std::array<CoForm, 3> out;
    for (size_t i = 0; i < 3; ++i) out[i] = {f[i].a * lam[i], f[i].b * lam[i]};
    RatFunc sa = out[0].a + out[1].a + out[2].a;
    RatFunc sb = out[0].b + out[1].b + out[2].b;
    if (!sa.is_zero() || !sb.is_zero()) throw Error("normalization failed to close the web");
    return out;
}

CoForm connection_form(const RingPtr& xy, const std::array<CoForm, 3>& w) {
    // d(a dx + b dy) = (b_x - a_y) dx^dy ; rho ^ w_i = (r1 b_i - r2 a_i) dx^dy
    std::array<RatFunc, 3> c;
    for (size_t i = 0; i < 3; ++i) c[i] = w[i].b.derivative(0) - w[i].a.derivative(1);
    RatFunc det = minor_of(w[0], w[1]);
    if (det.is_zero()) throw Error("degenerate web");
    // [b1 -a1; b2 -a2] [r1 r2]^t = [-c1 -c2]^t
    RatFunc r1 = (-c[0] * (-w[1].a) - (-w[0].a) * (-c[1])) / det;
    RatFunc r2 = (w[0].b * (-c[1]) - w[1].b * (-c[0])) / det;
    // the third structure equation must close automatically
    RatFunc third = c[2] + r1 * w[2].b - r2 * w[2].a;
    if (!third.is_zero()) throw Error("connection inconsistent on the third foliation");
    (void)xy;
    return {r1, r2};
}

CurvatureResult web_curvature(const Web3& web) {
    CurvatureResult out;
    out.normalized = normalize_web(web);
    out.rho = connection_form(web.ring(), out.normalized);
    out.area = minor_of(out.normalized[0], out.normalized[1]);
    RatFunc drho = out.rho.b.derivative(0) - out.rho.a.derivative(1);
    out.K = drho / out.area;
    return out;
}

JetSeries curvature_jet(const Web3& web, const std::vector<Rational>& point, unsigned order) {
    CurvatureResult res = web_curvature(web);
    return series_lift(res.K, point, order);
}

std::array<Rational, 10> j3K(const Web3& web, const std::vector<Rational>& point) {
    JetSeries jet = curvature_jet(web, point, 3);
    std::array<Rational, 10> out;
    size_t k = 0;
    for (unsigned d = 0; d <= 3; ++d)
        for (int i = static_cast<int>(d); i >= 0; --i)
            out[k++] = jet.coeff({static_cast<unsigned>(i), d - static_cast<unsigned>(i)});
    return out;
}

RatFunc foliation_linear_residual(const RatFunc& slope) {
    return slope.derivative(0) + slope * slope.derivative(1);
}

} // namespace webcas
