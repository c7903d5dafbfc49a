#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "test_util.hpp"
#include "webcas/linearize.hpp"

using namespace webcas;

static RingPtr xy() { return make_ring({"x", "y"}); }
static RingPtr xyp() { return make_ring({"x", "y", "p"}); }

// Independent route for the dual-flatness residual: differentiate on the
// expression tree, normalize only at the end.
namespace oracle {

Expr d(const Expr& e, const std::string& v);

Expr mul(Expr a, Expr b) { return Expr::node(Expr::Kind::Mul, {std::move(a), std::move(b)}); }
Expr add(Expr a, Expr b) { return Expr::node(Expr::Kind::Add, {std::move(a), std::move(b)}); }
Expr sub(Expr a, Expr b) { return Expr::node(Expr::Kind::Sub, {std::move(a), std::move(b)}); }
Expr con(long n) { return Expr::constant(Rational(n)); }

Expr d(const Expr& e, const std::string& v) {
    switch (e.kind) {
        case Expr::Kind::Const: return con(0);
        case Expr::Kind::Var: return con(e.name == v ? 1 : 0);
        case Expr::Kind::Add: return add(d(e.kids[0], v), d(e.kids[1], v));
        case Expr::Kind::Sub: return sub(d(e.kids[0], v), d(e.kids[1], v));
        case Expr::Kind::Neg: return Expr::node(Expr::Kind::Neg, {d(e.kids[0], v)});
        case Expr::Kind::Mul:
            return add(mul(d(e.kids[0], v), e.kids[1]), mul(e.kids[0], d(e.kids[1], v)));
        case Expr::Kind::Div: {
            Expr num = sub(mul(d(e.kids[0], v), e.kids[1]), mul(e.kids[0], d(e.kids[1], v)));
            return Expr::node(Expr::Kind::Div, {num, Expr::pow(e.kids[1], 2)});
        }
        case Expr::Kind::Pow: {
            Expr inner = d(e.kids[0], v);
            Expr scaled = mul(con(e.exponent), Expr::pow(e.kids[0], e.exponent - 1));
            return mul(scaled, inner);
        }
    }
    throw Error("corrupt tree");
}

Expr total(const Expr& g, const Expr& f) {
    return add(add(d(g, "x"), mul(Expr::var("p"), d(g, "y"))), mul(f, d(g, "p")));
}

// (d/dx)^2 f_pp - 4 (d/dx) f_py + f_p (4 f_py - (d/dx) f_pp) - 3 f_y f_pp + 6 f_yy
RatFunc mvanish(const std::string& f_text, const RingPtr& ring) {
    Expr f = parse_expr(f_text);
    Expr f_p = d(f, "p"), f_pp = d(f_p, "p"), f_py = d(f_p, "y");
    Expr f_y = d(f, "y"), f_yy = d(f_y, "y");
    Expr expr = add(sub(add(sub(total(total(f_pp, f), f), mul(con(4), total(f_py, f))),
                            mul(f_p, sub(mul(con(4), f_py), total(f_pp, f)))),
                        mul(con(3), mul(f_y, f_pp))),
                    mul(con(6), f_yy));
    return normalize(expr, ring);
}

} // namespace oracle

TEST_CASE("total derivative along the flow") {
    auto r = xyp();
    RatFunc y = RatFunc::variable(r, "y"), p = RatFunc::variable(r, "p");
    RatFunc f = parse_ratfunc("x^2 + y*p", r);
    CHECK(total_derivative(y, f) == p);
    CHECK(total_derivative(p, f) == f);
    CHECK(total_derivative(parse_ratfunc("x*p", r), RatFunc(r)) == p);
}

TEST_CASE("dual-flatness residual basics") {
    auto r = xyp();
    CHECK(mvanish_residual(RatFunc(r)).is_zero());
    CHECK(mvanish_residual(parse_ratfunc("x^3 - 2*x", r)).is_zero());
    // pinned: the residual of y*p^3 cancels identically (verified against the
    // tree-level oracle below); y*p is a nonzero specimen
    CHECK(mvanish_residual(parse_ratfunc("y*p^3", r)).is_zero());
    CHECK(mvanish_residual(parse_ratfunc("y*p", r)) == parse_ratfunc("4*y", r));
    CHECK(mvanish_residual(parse_ratfunc("y^2", r)) == parse_ratfunc("12", r));
}

TEST_CASE("residual agrees with the independent tree oracle") {
    auto r = xyp();
    for (const std::string& f :
         {"y*p^3", "y*p", "y^2", "x*p^2 - y", "(x+y)*p^3 + y^2*p", "y^2*p^2 + x"}) {
        CHECK(mvanish_residual(parse_ratfunc(f, r)) == oracle::mvanish(f, r));
    }
}

TEST_CASE("degree <= 1 in p with y-free coefficients is annihilated") {
    auto r = xyp();
    std::mt19937_64 rng(43);
    auto x_only = make_ring({"x"});
    for (int i = 0; i < 30; ++i) {
        Poly a = testing::random_poly(x_only, rng, 3, 3);
        Poly b = testing::random_poly(x_only, rng, 3, 3);
        RatFunc f = transport(RatFunc(a), r) + transport(RatFunc(b), r) * RatFunc::variable(r, "p");
        CHECK(mvanish_residual(f).is_zero());
    }
}

TEST_CASE("vandermonde_fit on constant and straight-line slopes") {
    auto r = xy();
    std::vector<RatFunc> consts;
    for (long v : {0L, 1L, 2L, 3L}) consts.push_back(RatFunc::constant(r, Rational(v)));
    VandermondeFit fit = vandermonde_fit(consts);
    CHECK(fit.ode == CubicODE::zero(r));

    // four pencils: slopes y/(x-c) all solve p_x + p p_y = 0
    std::vector<RatFunc> pencils;
    for (long c = 1; c <= 4; ++c)
        pencils.push_back(parse_ratfunc("y/(x-" + std::to_string(c) + ")", r));
    CHECK(vandermonde_fit(pencils).ode == CubicODE::zero(r));

    CHECK_THROWS_AS(vandermonde_fit({consts[0], consts[0], consts[1], consts[2]}), Error);
}

TEST_CASE("pinned fit for slopes (0,1,2,x)") {
    auto r = xy();
    std::vector<RatFunc> s = {parse_ratfunc("0", r), parse_ratfunc("1", r), parse_ratfunc("2", r),
                              parse_ratfunc("x", r)};
    VandermondeFit fit = vandermonde_fit(s);
    RatFunc denom = parse_ratfunc("x*(x-1)*(x-2)", r);
    CHECK(fit.ode.h3 == parse_ratfunc("1", r) / denom);
    CHECK(fit.ode.h2 == parse_ratfunc("-3", r) / denom);
    CHECK(fit.ode.h1 == parse_ratfunc("2", r) / denom);
    CHECK(fit.ode.h0.is_zero());

    LinearizationReport rep = check_linearization(
        {Foliation::of(s[0]), Foliation::of(s[1]), Foliation::of(s[2]), Foliation::of(s[3])},
        fit.ode);
    for (const auto& res : rep.vanderm_residuals) CHECK(res.is_zero());
    // pinned during bring-up: the fitted cubic is not dual-flat
    CHECK(!rep.L1_zero);
    CHECK(rep.mvanish == oracle::mvanish(
                             "(p^3 - 3*p^2 + 2*p)/(x*(x-1)*(x-2))", make_ring({"x", "y", "p"})));
}

TEST_CASE("flat path geometry linearizes the constant-slope web") {
    auto r = xy();
    std::vector<Foliation> web;
    for (long v : {0L, 1L, 2L}) web.push_back(Foliation::of(RatFunc::constant(r, Rational(v))));
    LinearizationReport rep = check_linearization(web, CubicODE::zero(r));
    CHECK(rep.verdict);
    CHECK(rep.L2_zero);
}

TEST_CASE("series-free Burgers web linearizes with the flat ODE") {
    auto r = xy();
    RatFunc h = parse_ratfunc("(1+y)/(1+x)", r);  // rational Burgers solution
    std::vector<Foliation> web = {Foliation::of(RatFunc(r)), Foliation::vertical(),
                                  Foliation::of(h)};
    LinearizationReport rep = check_linearization(web, CubicODE::zero(r));
    CHECK(rep.verdict);
}

TEST_CASE("vertical family detects h3") {
    auto r = xy();
    CubicODE ode{parse_ratfunc("y", r), RatFunc(r), RatFunc(r), RatFunc(r)};
    LinearizationReport rep = check_linearization({Foliation::vertical()}, ode);
    CHECK(!rep.vanderm_residuals[0].is_zero());
}

TEST_CASE("fit is unique for d >= 4") {
    auto r = xy();
    std::mt19937_64 rng(47);
    for (int round = 0; round < 10; ++round) {
        std::vector<RatFunc> s;
        for (long k = 0; k < 4; ++k)
            s.push_back(RatFunc::constant(r, Rational(5 * k - 7)) +
                        RatFunc(testing::random_poly(r, rng, 1, 2)));
        bool distinct = true;
        for (size_t a = 0; a < 4; ++a)
            for (size_t b = a + 1; b < 4; ++b)
                if (s[a] == s[b]) distinct = false;
        if (!distinct) continue;
        VandermondeFit fit = vandermonde_fit(s);
        // interpolation residuals vanish identically
        std::vector<Foliation> web;
        for (const auto& p : s) web.push_back(Foliation::of(p));
        LinearizationReport rep = check_linearization(web, fit.ode);
        for (const auto& res : rep.vanderm_residuals) CHECK(res.is_zero());
        // nonsingular Vandermonde forces uniqueness: a perturbed cubic fails
        CHECK(!fit.vandermonde_det.is_zero());
        CubicODE other = fit.ode;
        other.h1 = other.h1 + RatFunc::constant(r, Rational(1));
        LinearizationReport rep2 = check_linearization(web, other);
        bool some_nonzero = false;
        for (const auto& res : rep2.vanderm_residuals) some_nonzero |= !res.is_zero();
        CHECK(some_nonzero);
    }
}

TEST_CASE("candidate family through three slopes") {
    auto r = xy();
    std::vector<RatFunc> s = {parse_ratfunc("0", r), parse_ratfunc("1", r), parse_ratfunc("x+2", r)};
    auto [base, dir] = candidate_family_3web(s);
    auto eval_cubic = [](const CubicODE& o, const RatFunc& p) {
        return o.h3 * p.pow(3) + o.h2 * p.pow(2) + o.h1 * p + o.h0;
    };
    for (const auto& p : s) {
        RatFunc flow = p.derivative(0) + p * p.derivative(1);
        CHECK((eval_cubic(base, p) - flow).is_zero());
        CHECK(eval_cubic(dir, p).is_zero());
    }
}
