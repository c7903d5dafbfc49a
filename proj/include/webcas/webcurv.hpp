#pragma once

#include "webcas/series.hpp"

#include <array>

namespace webcas {

// One 1-form a dx + b dy with rational-function coefficients.
struct CoForm {
    RatFunc a, b;
};

// Planar 3-web given by three pairwise transversal 1-forms on the (x,y) chart.
class Web3 {
public:
    static Web3 from_slopes(const RingPtr& xy, std::vector<RatFunc> slopes,
                            std::optional<std::vector<Rational>> base = std::nullopt);
    static Web3 from_forms(const RingPtr& xy, std::array<CoForm, 3> forms,
                           std::optional<std::vector<Rational>> base = std::nullopt);
    // Input text: three lines "form: <a>*dx + <b>*dy" or "slope: <p>",
    // optional "at: x0, y0".
    static Web3 from_text(const std::string& text);

    const RingPtr& ring() const { return ring_; }
    const std::array<CoForm, 3>& forms() const { return forms_; }
    const std::optional<std::vector<Rational>>& base_point() const { return base_; }
    bool slope_input() const { return slopes_.has_value(); }
    const std::vector<RatFunc>& slopes() const;

    // Throws when some pair of forms is proportional (identically, or at the
    // base point when one is set).
    void check_transversal() const;

private:
    RingPtr ring_;
    std::array<CoForm, 3> forms_{};
    std::optional<std::vector<RatFunc>> slopes_;
    std::optional<std::vector<Rational>> base_;
};

struct CurvatureResult {
    std::array<CoForm, 3> normalized;  // sum to zero exactly
    CoForm rho;                        // d w_i + rho ^ w_i = 0 for all i
    RatFunc K;                         // d rho = K w1 ^ w2
    RatFunc area;                      // w1 ^ w2 = area dx ^ dy
};

// Scales the input forms so they sum to zero. Slope inputs use
// (p2-p3, p3-p1, p1-p2) on (dy - p_i dx); form inputs use the 2x3 kernel
// vector with its first entry normalized to 1.
std::array<CoForm, 3> normalize_web(const Web3& web);

// The unique 1-form with d w_i + rho ^ w_i = 0, solved from the first two
// equations and verified on the third.
CoForm connection_form(const RingPtr& xy, const std::array<CoForm, 3>& normalized);

CurvatureResult web_curvature(const Web3& web);

JetSeries curvature_jet(const Web3& web, const std::vector<Rational>& point, unsigned order);

// The 10 Taylor coefficients of K of total degree <= 3 at the point,
// ordered 1, x, y, x^2, x*y, y^2, x^3, x^2*y, x*y^2, y^3.
std::array<Rational, 10> j3K(const Web3& web, const std::vector<Rational>& point);

// p_x + p p_y; the slope field consists of straight lines iff this vanishes.
RatFunc foliation_linear_residual(const RatFunc& slope);

} // namespace webcas
