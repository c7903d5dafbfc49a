#include "webcas/chart.hpp"
#include "webcas/defsfile.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace webcas {

DiffForm::DiffForm(ChartPtr chart, int degree) : chart_(std::move(chart)), degree_(degree) {
    if (degree_ < 0) throw Error("negative form degree");
}

DiffForm DiffForm::scalar(const ChartPtr& chart, const RatFunc& f) {
    DiffForm out(chart, 0);
    out.add({}, f);
    return out;
}

DiffForm DiffForm::generator(const ChartPtr& chart, int g) {
    DiffForm out(chart, 1);
    out.add({g}, RatFunc::constant(chart->scalars(), Rational(1)));
    return out;
}

DiffForm DiffForm::generator(const ChartPtr& chart, const std::string& name) {
    int g = chart->generator_index(name);
    if (g < 0) throw Error("unknown generator: " + name);
    return generator(chart, g);
}

RatFunc DiffForm::component(const FormIdx& idx) const {
    auto it = comps_.find(idx);
    if (it != comps_.end()) return it->second;
    return RatFunc(chart_ ? chart_->scalars() : RingPtr());
}

void DiffForm::add(const FormIdx& idx, const RatFunc& c) {
    if (static_cast<int>(idx.size()) != degree_) throw Error("component arity mismatch");
    if (c.is_zero()) return;
    auto [it, fresh] = comps_.emplace(idx, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) comps_.erase(it);
    }
}

DiffForm DiffForm::operator-() const {
    DiffForm out(chart_, degree_);
    for (const auto& [i, c] : comps_) out.comps_.emplace(i, -c);
    return out;
}

static void check_same_chart(const DiffForm& a, const DiffForm& b) {
    if (a.chart() && b.chart() && a.chart() != b.chart()) throw Error("chart mismatch");
}

DiffForm operator+(DiffForm a, const DiffForm& b) {
    if (b.is_zero()) return a;
    if (a.is_zero() && a.degree() != b.degree()) return b;
    check_same_chart(a, b);
    if (a.degree() != b.degree()) throw Error("adding forms of different degree");
    for (const auto& [i, c] : b.components()) a.add(i, c);
    return a;
}

DiffForm operator-(DiffForm a, const DiffForm& b) { return std::move(a) + (-b); }

DiffForm DiffForm::operator*(const RatFunc& c) const {
    DiffForm out(chart_, degree_);
    for (const auto& [i, k] : comps_) out.add(i, k * c);
    return out;
}

DiffForm DiffForm::operator*(const Rational& c) const {
    DiffForm out(chart_, degree_);
    if (webcas::is_zero(c)) return out;
    for (const auto& [i, k] : comps_) out.add(i, k * c);
    return out;
}

std::string DiffForm::str() const {
    if (comps_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : comps_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        for (int g : i) os << "*" << chart_->generators()[static_cast<size_t>(g)];
    }
    return os.str();
}

// Merge sign of two strictly increasing tuples; 0 when they intersect.
static int merge_sign(const FormIdx& a, const FormIdx& b, FormIdx& out) {
    out.clear();
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    int swaps = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return 0;
        if (a[i] < b[j]) {
            out.push_back(a[i++]);
        } else {
            // b[j] hops over the remaining entries of a
            swaps += static_cast<int>(a.size() - i);
            out.push_back(b[j++]);
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return (swaps % 2 == 0) ? 1 : -1;
}

DiffForm wedge(const DiffForm& a, const DiffForm& b) {
    check_same_chart(a, b);
    ChartPtr chart = a.chart() ? a.chart() : b.chart();
    DiffForm out(chart, a.degree() + b.degree());
    if (chart && a.degree() + b.degree() > chart->dim()) return out;
    FormIdx merged;
    for (const auto& [ia, ca] : a.components()) {
        for (const auto& [ib, cb] : b.components()) {
            int s = merge_sign(ia, ib, merged);
            if (s == 0) continue;
            RatFunc c = ca * cb;
            if (s < 0) c = -c;
            out.add(merged, c);
        }
    }
    return out;
}

bool AbsorbInfo::covers(const FormIdx& idx) const {
    for (const auto& pos : positions) {
        bool subset = std::includes(idx.begin(), idx.end(), pos.begin(), pos.end());
        if (subset) return true;
    }
    return false;
}

// d of a scalar coefficient as a 1-form; records underived variables.
static DiffForm d_coeff(const RatFunc& f, const ChartPtr& chart, const FormIdx& against,
                        AbsorbInfo* absorb) {
    DiffForm out(chart, 1);
    const RingPtr& ring = chart->scalars();
    for (int v = 0; v < ring->size(); ++v) {
        RatFunc df = f.derivative(v);
        if (df.is_zero()) continue;
        const auto& rule = chart->derivation(v);
        if (!rule) {
            if (!absorb) throw Error("no derivation rule for scalar " + ring->name(v));
            absorb->positions.push_back(against);
            absorb->variables.push_back(ring->name(v));
            continue;
        }
        out = std::move(out) + (*rule) * df;
    }
    return out;
}

DiffForm ext_d(const DiffForm& a, AbsorbInfo* absorb) {
    const ChartPtr& chart = a.chart();
    if (!chart) throw Error("form without chart");
    DiffForm out(chart, a.degree() + 1);
    if (a.degree() + 1 > chart->dim()) return out;
    for (const auto& [idx, c] : a.components()) {
        DiffForm gens(chart, a.degree());
        gens.add(idx, RatFunc::constant(chart->scalars(), Rational(1)));
        out = std::move(out) + wedge(d_coeff(c, chart, idx, absorb), gens);
        // Leibniz over the generator tuple.
        for (size_t k = 0; k < idx.size(); ++k) {
            const DiffForm& dg = chart->d_rule(idx[k]);
            if (dg.is_zero()) continue;
            FormIdx left(idx.begin(), idx.begin() + static_cast<long>(k));
            FormIdx right(idx.begin() + static_cast<long>(k) + 1, idx.end());
            DiffForm lf(chart, static_cast<int>(left.size()));
            lf.add(left, (k % 2 == 0) ? c : -c);
            DiffForm rf(chart, static_cast<int>(right.size()));
            rf.add(right, RatFunc::constant(chart->scalars(), Rational(1)));
            out = std::move(out) + wedge(wedge(lf, dg), rf);
        }
    }
    return out;
}

ChartPtr Chart::coordinate(const RingPtr& scalars) {
    auto chart = std::shared_ptr<Chart>(new Chart());
    chart->kind_ = Kind::Coordinate;
    chart->scalars_ = scalars;
    for (const auto& n : scalars->names()) chart->gens_.push_back("d" + n);
    chart->finalize();
    ChartPtr cc = chart;
    for (int g = 0; g < cc->dim(); ++g) chart->d_rules_.emplace_back(cc, 2);
    for (int v = 0; v < scalars->size(); ++v)
        chart->derivation_.emplace_back(DiffForm::generator(cc, v));
    return cc;
}

void Chart::finalize() {
    for (int i = 0; i < static_cast<int>(gens_.size()); ++i) {
        auto [it, fresh] = gen_index_.emplace(gens_[static_cast<size_t>(i)], i);
        (void)it;
        if (!fresh) throw Error("duplicate generator: " + gens_[static_cast<size_t>(i)]);
        if (scalars_->has(gens_[static_cast<size_t>(i)]))
            throw Error("generator shadows scalar: " + gens_[static_cast<size_t>(i)]);
    }
}

ChartPtr Chart::coframe_forms(std::vector<std::string> generators, RingPtr scalars,
                              std::map<std::string, DiffForm> d_rules,
                              std::map<std::string, DiffForm> derivation) {
    auto chart = std::shared_ptr<Chart>(new Chart());
    chart->kind_ = Kind::Coframe;
    chart->scalars_ = std::move(scalars);
    chart->gens_ = std::move(generators);
    chart->finalize();
    ChartPtr cc = chart;
    // Rules may have been built over a structurally identical staging chart;
    // re-anchor their components on this instance.
    auto rebase = [&](const DiffForm& f) {
        DiffForm g(cc, f.degree());
        for (const auto& [i, c] : f.components()) g.add(i, c);
        return g;
    };
    for (const auto& g : cc->gens_) {
        auto it = d_rules.find(g);
        if (it == d_rules.end()) {
            chart->d_rules_.emplace_back(cc, 2);
        } else {
            if (it->second.degree() != 2) throw Error("d-rule must be a 2-form");
            chart->d_rules_.push_back(rebase(it->second));
        }
    }
    for (const auto& v : cc->scalars_->names()) {
        auto it = derivation.find(v);
        if (it == derivation.end()) {
            chart->derivation_.emplace_back(std::nullopt);
        } else {
            if (it->second.degree() != 1) throw Error("derivation must be a 1-form");
            chart->derivation_.emplace_back(rebase(it->second));
        }
    }
    return cc;
}

int Chart::generator_index(const std::string& name) const {
    auto it = gen_index_.find(name);
    return it == gen_index_.end() ? -1 : it->second;
}

const DiffForm& Chart::d_rule(int g) const { return d_rules_.at(static_cast<size_t>(g)); }

const std::optional<DiffForm>& Chart::derivation(int var) const {
    return derivation_.at(static_cast<size_t>(var));
}

bool Chart::fully_derived() const {
    for (const auto& d : derivation_)
        if (!d) return false;
    return true;
}

bool Chart::D2Report::all_zero() const {
    for (const auto& e : entries)
        if (!e.skipped && !e.residual.is_zero()) return false;
    return true;
}

std::string Chart::D2Report::str() const {
    std::ostringstream os;
    for (const auto& e : entries) {
        os << e.name << ": ";
        if (e.skipped) os << "skipped (underived)";
        else if (e.residual.is_zero()) os << (e.absorbed.is_zero() ? "0" : "0 (mod prolongation)");
        else os << "RESIDUAL " << e.residual.str();
        os << "\n";
    }
    return os.str();
}

Chart::D2Report Chart::check_d_squared() const {
    D2Report report;
    ChartPtr self = shared_from_this();
    for (int g = 0; g < dim(); ++g) {
        AbsorbInfo absorb;
        DiffForm r = ext_d(d_rule(g), &absorb);
        D2Entry entry{gens_[static_cast<size_t>(g)], DiffForm(self, r.degree()),
                      DiffForm(self, r.degree()), false};
        for (const auto& [idx, c] : r.components())
            (absorb.covers(idx) ? entry.absorbed : entry.residual).add(idx, c);
        report.entries.push_back(std::move(entry));
    }
    for (int v = 0; v < scalars_->size(); ++v) {
        const auto& rule = derivation(v);
        if (!rule) {
            report.entries.push_back({scalars_->name(v), DiffForm(self, 2), DiffForm(self, 2), true});
            continue;
        }
        AbsorbInfo absorb;
        DiffForm r = ext_d(*rule, &absorb);
        D2Entry entry{scalars_->name(v), DiffForm(self, 2), DiffForm(self, 2), false};
        for (const auto& [idx, c] : r.components())
            (absorb.covers(idx) ? entry.absorbed : entry.residual).add(idx, c);
        report.entries.push_back(std::move(entry));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Form-expression parsing: the scalar grammar extended with generator names;
// '*' and '^' are both the graded product, '^' before an integer is a power.

namespace {

struct FormVal {
    ChartPtr chart;
    std::map<int, DiffForm> parts;  // degree -> form

    static FormVal scalar(const ChartPtr& c, const RatFunc& f) {
        FormVal v{c, {}};
        if (!f.is_zero()) v.parts.emplace(0, DiffForm::scalar(c, f));
        return v;
    }
    void add_part(const DiffForm& f) {
        if (f.is_zero()) return;
        auto [it, fresh] = parts.emplace(f.degree(), f);
        if (!fresh) {
            it->second = it->second + f;
            if (it->second.is_zero()) parts.erase(it);
        }
    }
};

FormVal fv_add(const FormVal& a, const FormVal& b, int sign) {
    FormVal out = a;
    for (const auto& [d, f] : b.parts) {
        (void)d;
        out.add_part(sign > 0 ? f : -f);
    }
    return out;
}

FormVal fv_mul(const FormVal& a, const FormVal& b) {
    FormVal out{a.chart ? a.chart : b.chart, {}};
    for (const auto& [da, fa] : a.parts)
        for (const auto& [db, fb] : b.parts) {
            (void)da;
            (void)db;
            out.add_part(wedge(fa, fb));
        }
    return out;
}

class FormParser {
public:
    FormParser(const std::string& s, ChartPtr chart) : s_(s), chart_(std::move(chart)) {}

    FormVal run() {
        FormVal v = form();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return v;
    }

private:
    const std::string& s_;
    ChartPtr chart_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    FormVal form() {
        FormVal acc = fterm();
        while (true) {
            char c = peek();
            if (c != '+' && c != '-') return acc;
            ++pos_;
            acc = fv_add(acc, fterm(), c == '+' ? 1 : -1);
        }
    }

    FormVal fterm() {
        FormVal acc = ffactor();
        while (true) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                acc = fv_mul(acc, ffactor());
            } else if (c == '/') {
                ++pos_;
                FormVal rhs = ffactor();
                if (rhs.parts.size() != 1 || rhs.parts.begin()->first != 0)
                    fail("division by a non-scalar form");
                RatFunc d = rhs.parts.begin()->second.component({});
                if (d.is_zero()) fail("division by zero");
                FormVal out{acc.chart, {}};
                for (const auto& [deg, f] : acc.parts) {
                    (void)deg;
                    out.add_part(f * (RatFunc::constant(chart_->scalars(), Rational(1)) / d));
                }
                acc = out;
            } else {
                return acc;
            }
        }
    }

    FormVal ffactor() {
        FormVal b = fbase();
        while (peek() == '^') {
            size_t save = pos_;
            ++pos_;
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
                // scalar power
                long e = 0;
                bool neg = c == '-';
                if (neg) ++pos_;
                if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                    e = e * 10 + (s_[pos_++] - '0');
                if (neg) e = -e;
                if (b.parts.empty()) {
                    if (e <= 0) fail("zero to non-positive power");
                    continue;  // 0^e = 0
                }
                if (b.parts.size() != 1 || b.parts.begin()->first != 0) {
                    if (e < 0) fail("negative power of a form");
                    FormVal acc = b;
                    for (long k = 1; k < e; ++k) acc = fv_mul(acc, b);
                    if (e == 0) acc = FormVal::scalar(chart_, RatFunc::constant(chart_->scalars(), Rational(1)));
                    b = acc;
                    continue;
                }
                RatFunc s = b.parts.begin()->second.component({});
                b = FormVal::scalar(chart_, s.pow(static_cast<int>(e)));
            } else {
                (void)save;
                b = fv_mul(b, fbase());  // wedge
            }
        }
        return b;
    }

    FormVal fbase() {
        char c = peek();
        if (c == '-') {
            ++pos_;
            FormVal v = fbase();
            FormVal out{v.chart, {}};
            for (const auto& [d, f] : v.parts) {
                (void)d;
                out.add_part(-f);
            }
            return out;
        }
        if (c == '(') {
            ++pos_;
            FormVal v = form();
            skip_ws();
            if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
            ++pos_;
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                digits += s_[pos_++];
            size_t save = pos_;
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                skip_ws();
                if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                    std::string dd;
                    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                        dd += s_[pos_++];
                    return FormVal::scalar(chart_, RatFunc::constant(chart_->scalars(),
                                                                     rat_parse(digits + "/" + dd)));
                }
            }
            pos_ = save;
            return FormVal::scalar(chart_, RatFunc::constant(chart_->scalars(), rat_parse(digits)));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string name;
            int brace = 0;
            name += s_[pos_++];
            while (pos_ < s_.size()) {
                char ch = s_[pos_];
                bool ok = std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == ',' ||
                          ch == '{' || ch == '}' || (ch == '-' && brace > 0);
                if (!ok) break;
                if (ch == '{') ++brace;
                if (ch == '}') {
                    if (brace == 0) break;
                    --brace;
                }
                name += ch;
                ++pos_;
            }
            int g = chart_->generator_index(name);
            if (g >= 0) {
                FormVal v{chart_, {}};
                v.add_part(DiffForm::generator(chart_, g));
                return v;
            }
            if (chart_->scalars()->has(name))
                return FormVal::scalar(chart_, RatFunc::variable(chart_->scalars(), name));
            fail("unknown name: " + name);
        }
        fail("expected form expression");
    }
};

} // namespace

DiffForm parse_form(const std::string& text, const ChartPtr& chart, int expected_degree) {
    FormVal v = FormParser(text, chart).run();
    if (v.parts.empty())
        return DiffForm(chart, expected_degree < 0 ? 0 : expected_degree);
    if (v.parts.size() != 1) throw Error("mixed-degree form expression: " + text);
    const DiffForm& f = v.parts.begin()->second;
    if (expected_degree >= 0 && f.degree() != expected_degree)
        throw Error("form has degree " + std::to_string(f.degree()) + ", expected " +
                    std::to_string(expected_degree) + ": " + text);
    return f;
}

ChartPtr Chart::coframe(std::vector<std::string> generators, RingPtr scalars,
                        std::map<std::string, std::string> d_rules,
                        std::map<std::string, std::string> derivation) {
    // two-phase: parse over a rule-less staging chart, then rebuild with rules
    ChartPtr bare = coframe_forms(generators, scalars, {}, {});
    std::map<std::string, DiffForm> dr, dv;
    for (const auto& [k, v] : d_rules) dr.emplace(k, parse_form(v, bare, 2));
    for (const auto& [k, v] : derivation) dv.emplace(k, parse_form(v, bare, 1));
    return coframe_forms(std::move(generators), std::move(scalars), std::move(dr), std::move(dv));
}

ChartPtr load_chart(const std::string& path) {
    DefsFile f = load_defs(path);
    std::vector<std::string> gens, scalars;
    for (const auto& [k, v] : f.section("generators").entries) {
        (void)k;
        gens.push_back(v);
    }
    for (const auto& [k, v] : f.section("scalars").entries) {
        (void)k;
        scalars.push_back(v);
    }
    std::map<std::string, std::string> dr, dv;
    if (f.has_section("d-rules"))
        for (const auto& [k, v] : f.section("d-rules").entries) dr.emplace(k, v);
    if (f.has_section("derivation"))
        for (const auto& [k, v] : f.section("derivation").entries) dv.emplace(k, v);
    return Chart::coframe(std::move(gens), make_ring(std::move(scalars)), std::move(dr),
                          std::move(dv));
}

void save_chart(const ChartPtr& chart, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << "[generators]\n";
    for (size_t i = 0; i < chart->generators().size(); ++i)
        out << "g" << i << " = " << chart->generators()[i] << "\n";
    out << "\n[scalars]\n";
    for (int v = 0; v < chart->scalars()->size(); ++v)
        out << "s" << v << " = " << chart->scalars()->name(v) << "\n";
    out << "\n[d-rules]\n";
    for (int g = 0; g < chart->dim(); ++g)
        if (!chart->d_rule(g).is_zero())
            out << chart->generators()[static_cast<size_t>(g)] << " = " << chart->d_rule(g).str()
                << "\n";
    out << "\n[derivation]\n";
    for (int v = 0; v < chart->scalars()->size(); ++v)
        if (chart->derivation(v))
            out << chart->scalars()->name(v) << " = " << chart->derivation(v)->str() << "\n";
}

} // namespace webcas
