#pragma once

#include "webcas/expr.hpp"

#include <optional>

namespace webcas {

class Chart;
using ChartPtr = std::shared_ptr<const Chart>;

// Strictly increasing tuple of generator indices.
using FormIdx = std::vector<int>;

// Graded exterior form over a chart. Coefficients are rational functions in
// the chart's scalar variables.
class DiffForm {
public:
    DiffForm() = default;
    DiffForm(ChartPtr chart, int degree);

    static DiffForm scalar(const ChartPtr& chart, const RatFunc& f);
    static DiffForm generator(const ChartPtr& chart, int g);
    static DiffForm generator(const ChartPtr& chart, const std::string& name);

    const ChartPtr& chart() const { return chart_; }
    int degree() const { return degree_; }
    bool is_zero() const { return comps_.empty(); }
    const std::map<FormIdx, RatFunc>& components() const { return comps_; }
    RatFunc component(const FormIdx& idx) const;

    void add(const FormIdx& idx, const RatFunc& c);

    DiffForm operator-() const;
    friend DiffForm operator+(DiffForm a, const DiffForm& b);
    friend DiffForm operator-(DiffForm a, const DiffForm& b);
    DiffForm operator*(const RatFunc& c) const;
    DiffForm operator*(const Rational& c) const;

    bool operator==(const DiffForm& o) const { return degree_ == o.degree_ && comps_ == o.comps_; }
    bool operator!=(const DiffForm& o) const { return !(*this == o); }

    std::string str() const;

private:
    ChartPtr chart_;
    int degree_ = 0;
    std::map<FormIdx, RatFunc> comps_;
};

DiffForm wedge(const DiffForm& a, const DiffForm& b);

// Records, during ext_d, the positions whose coefficient derivative is not
// determined by the chart (underived scalar): any residual monomial that
// contains such a position can be absorbed by a choice of the missing
// derivative and is not a genuine obstruction.
struct AbsorbInfo {
    std::vector<FormIdx> positions;
    std::vector<std::string> variables;
    bool covers(const FormIdx& idx) const;
};

DiffForm ext_d(const DiffForm& a, AbsorbInfo* absorb = nullptr);

// Two kinds of chart: coordinate charts (generators are the differentials of
// the coordinates) and abstract coframes (generator differentials given by a
// structure-equation table, scalar differentials by a derivation table).
class Chart : public std::enable_shared_from_this<Chart> {
public:
    enum class Kind { Coordinate, Coframe };

    static ChartPtr coordinate(const RingPtr& scalars);
    // Generators and scalars fixed up front; rules installed before freezing.
    static ChartPtr coframe(std::vector<std::string> generators, RingPtr scalars,
                            std::map<std::string, std::string> d_rules,
                            std::map<std::string, std::string> derivation);
    static ChartPtr coframe_forms(std::vector<std::string> generators, RingPtr scalars,
                                  std::map<std::string, DiffForm> d_rules,
                                  std::map<std::string, DiffForm> derivation);

    Kind kind() const { return kind_; }
    const RingPtr& scalars() const { return scalars_; }
    int dim() const { return static_cast<int>(gens_.size()); }
    const std::vector<std::string>& generators() const { return gens_; }
    int generator_index(const std::string& name) const;

    // d of the generator, a 2-form. Zero for coordinate charts.
    const DiffForm& d_rule(int g) const;
    // d of a scalar variable, a 1-form; nullopt when the chart leaves the
    // derivative undetermined.
    const std::optional<DiffForm>& derivation(int var) const;
    bool fully_derived() const;

    // d(d(.)) residual for every generator and derivable scalar.
    struct D2Entry {
        std::string name;
        DiffForm residual;        // hard obstruction, zero when consistent
        DiffForm absorbed;        // part determined by prolongation choices
        bool skipped = false;     // underived scalar, nothing to check
    };
    struct D2Report {
        std::vector<D2Entry> entries;
        bool all_zero() const;
        std::string str() const;
    };
    D2Report check_d_squared() const;

private:
    Chart() = default;
    void finalize();  // installs parsed rules; see chart.cpp

    Kind kind_ = Kind::Coordinate;
    RingPtr scalars_;
    std::vector<std::string> gens_;
    std::map<std::string, int> gen_index_;
    std::vector<DiffForm> d_rules_;
    std::vector<std::optional<DiffForm>> derivation_;

    friend DiffForm ext_d(const DiffForm&, AbsorbInfo*);
    friend class ChartBuilder;
};

// Parses a form expression ("2*om^ph11 + t*th") over a chart. Scalar factors
// use the core grammar; '^' between generators is the wedge, '^' before an
// integer literal is a power.
DiffForm parse_form(const std::string& text, const ChartPtr& chart, int expected_degree = -1);

// Plain-text chart definition: [generators], [scalars], [d-rules], [derivation].
ChartPtr load_chart(const std::string& path);
void save_chart(const ChartPtr& chart, const std::string& path);

} // namespace webcas
