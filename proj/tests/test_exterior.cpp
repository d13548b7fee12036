#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "geored/exterior.hpp"
#include "geored/normal_form.hpp"
#include "geored/parser.hpp"

using namespace geo;

namespace {

const ChartPtr chart4 = make_chart("M", {"x1", "x2", "x3", "x4"});

Expr random_poly(std::mt19937& rng, const ChartPtr& c, int max_terms = 3) {
  std::vector<Expr> terms;
  int n = 1 + (int)(rng() % max_terms);
  for (int t = 0; t < n; ++t) {
    std::vector<Expr> factors;
    factors.push_back(num((int)(rng() % 9) - 4));
    int deg = (int)(rng() % 3);
    for (int j = 0; j < deg; ++j)
      factors.push_back(sym(c->coords[rng() % c->coords.size()]));
    terms.push_back(mul(std::move(factors)));
  }
  return add(std::move(terms));
}

Form random_form(std::mt19937& rng, const ChartPtr& c, int degree) {
  std::vector<std::pair<std::vector<int>, Expr>> terms;
  int n = 1 + (int)(rng() % 3);
  for (int t = 0; t < n; ++t) {
    std::vector<int> idx;
    while ((int)idx.size() < degree) {
      int i = (int)(rng() % c->coords.size());
      bool dup = false;
      for (int j : idx) dup = dup || j == i;
      if (!dup) idx.push_back(i);
    }
    terms.emplace_back(idx, random_poly(rng, c));
  }
  return make_form(c, degree, std::move(terms));
}

VectorField random_vf(std::mt19937& rng, const ChartPtr& c) {
  std::vector<Expr> comp;
  for (int i = 0; i < c->dim(); ++i) comp.push_back(random_poly(rng, c, 2));
  return make_vf(c, std::move(comp));
}

}  // namespace

TEST_CASE("make_form sorts index tuples and kills repeated indices") {
  Form a = make_form(chart4, 2, {{{1, 0}, sym("x1")}, {{0, 1}, sym("x2")}, {{2, 2}, num(5)}});
  // d1^d0 = -d0^d1, so the coefficient is x2 - x1; the repeated pair drops out
  CHECK(a.coef.size() == 1);
  CHECK(expr_equal(a.coef.at({0, 1}), parse_expr("x2 - x1")));
}

TEST_CASE("wedge is graded commutative and associative") {
  std::mt19937 rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    int p = 1 + (int)(rng() % 2), q = 1 + (int)(rng() % 2);
    Form a = random_form(rng, chart4, p);
    Form b = random_form(rng, chart4, q);
    Form ab = wedge(a, b);
    Form ba = wedge(b, a);
    Form sign = form_scale(num((p * q) % 2 == 0 ? 1 : -1), ba);
    CHECK(form_equal(ab, sign));

    Form c = random_form(rng, chart4, 1);
    CHECK(form_equal(wedge(wedge(a, b), c), wedge(a, wedge(b, c))));
  }
}

TEST_CASE("exterior derivative squares to zero on random forms") {
  std::mt19937 rng(202);
  for (int trial = 0; trial < 1000; ++trial) {
    int degree = (int)(rng() % 3);
    Form a = degree == 0 ? scalar_form(chart4, random_poly(rng, chart4))
                         : random_form(rng, chart4, degree);
    CHECK(form_is_zero(d(d(a))));
  }
}

TEST_CASE("exterior derivative satisfies the graded Leibniz rule") {
  std::mt19937 rng(303);
  for (int trial = 0; trial < 200; ++trial) {
    int p = 1 + (int)(rng() % 2);
    Form a = random_form(rng, chart4, p);
    Form b = random_form(rng, chart4, 1 + (int)(rng() % 2));
    Form lhs = d(wedge(a, b));
    Form rhs = form_add(wedge(d(a), b),
                        form_scale(num(p % 2 == 0 ? 1 : -1), wedge(a, d(b))));
    CHECK(form_equal(lhs, rhs));
  }
}

TEST_CASE("contraction is an antiderivation") {
  std::mt19937 rng(404);
  for (int trial = 0; trial < 200; ++trial) {
    VectorField x = random_vf(rng, chart4);
    int p = 1 + (int)(rng() % 2);
    Form a = random_form(rng, chart4, p);
    Form b = random_form(rng, chart4, 1);
    Form lhs = iota(x, wedge(a, b));
    Form rhs = form_add(wedge(iota(x, a), b),
                        form_scale(num(p % 2 == 0 ? 1 : -1), wedge(a, iota(x, b))));
    CHECK(form_equal(lhs, rhs));
    if (p >= 2) CHECK(form_is_zero(iota(x, iota(x, a))));
  }
}

TEST_CASE("Cartan formula agrees with the coordinate Lie derivative") {
  std::mt19937 rng(505);
  for (int trial = 0; trial < 500; ++trial) {
    VectorField x = random_vf(rng, chart4);
    Form a = random_form(rng, chart4, 1 + (int)(rng() % 2));
    CHECK(form_equal(lie_derivative(x, a), lie_derivative_direct(x, a)));
  }
}

TEST_CASE("Lie derivative commutes with d") {
  std::mt19937 rng(606);
  for (int trial = 0; trial < 200; ++trial) {
    VectorField x = random_vf(rng, chart4);
    Form a = random_form(rng, chart4, 1);
    CHECK(form_equal(d(lie_derivative(x, a)), lie_derivative(x, d(a))));
  }
}

TEST_CASE("Lie bracket satisfies the Jacobi identity") {
  std::mt19937 rng(707);
  for (int trial = 0; trial < 100; ++trial) {
    VectorField x = random_vf(rng, chart4);
    VectorField y = random_vf(rng, chart4);
    VectorField z = random_vf(rng, chart4);
    VectorField j1 = lie_bracket(lie_bracket(x, y), z);
    VectorField j2 = lie_bracket(lie_bracket(y, z), x);
    VectorField j3 = lie_bracket(lie_bracket(z, x), y);
    for (int i = 0; i < chart4->dim(); ++i)
      CHECK(is_zero(j1.comp[i] + j2.comp[i] + j3.comp[i]));
  }
}

TEST_CASE("bracket matches the commutator of derivations") {
  std::mt19937 rng(808);
  for (int trial = 0; trial < 100; ++trial) {
    VectorField x = random_vf(rng, chart4);
    VectorField y = random_vf(rng, chart4);
    Expr f = random_poly(rng, chart4);
    Expr lhs = apply_vf(lie_bracket(x, y), f);
    Expr rhs = apply_vf(x, apply_vf(y, f)) - apply_vf(y, apply_vf(x, f));
    CHECK(expr_equal(lhs, rhs));
  }
}

TEST_CASE("pullback is functorial and commutes with d and wedge") {
  ChartPtr src = make_chart("N", {"u", "v"});
  ChartPtr mid = make_chart("P", {"a", "b", "c"});
  SmoothMap f = make_map(src, mid,
                         {parse_expr("u^2 - v"), parse_expr("u*v"), parse_expr("v^3")});
  SmoothMap g = make_map(mid, chart4,
                         {parse_expr("a + b"), parse_expr("b*c"), parse_expr("a^2"),
                          parse_expr("c - 1")});
  SmoothMap gf = compose(f, g);

  std::mt19937 rng(909);
  for (int trial = 0; trial < 100; ++trial) {
    Form a = random_form(rng, chart4, 1 + (int)(rng() % 2));
    CHECK(form_equal(pullback(gf, a), pullback(f, pullback(g, a))));
    CHECK(form_equal(d(pullback(g, a)), pullback(g, d(a))));
    Form b = random_form(rng, chart4, 1);
    CHECK(form_equal(pullback(g, wedge(a, b)), wedge(pullback(g, a), pullback(g, b))));
  }
}

TEST_CASE("pullback along the identity is the identity") {
  std::mt19937 rng(111);
  SmoothMap id = identity_map(chart4);
  for (int trial = 0; trial < 50; ++trial) {
    Form a = random_form(rng, chart4, 1 + (int)(rng() % 3));
    CHECK(form_equal(pullback(id, a), a));
  }
}

TEST_CASE("vector-valued operations act componentwise") {
  std::mt19937 rng(333);
  for (int trial = 0; trial < 50; ++trial) {
    Form a1 = random_form(rng, chart4, 1);
    Form a2 = random_form(rng, chart4, 1);
    VForm eta = make_vform({a1, a2});
    VForm de = d(eta);
    CHECK(form_equal(de.comp[0], d(a1)));
    CHECK(form_equal(de.comp[1], d(a2)));

    VectorField x = random_vf(rng, chart4);
    VForm ie = iota(x, eta);
    CHECK(form_equal(ie.comp[0], iota(x, a1)));
    CHECK(form_equal(ie.comp[1], iota(x, a2)));
  }
}

TEST_CASE("contract_kv pairs slot i with component i") {
  VectorField e0 = basis_vf(chart4, 0);
  VectorField e1 = basis_vf(chart4, 1);
  KVectorField kv = make_kvf({e0, e1});
  VForm eta = make_vform({coord_diff(chart4, 0), coord_diff(chart4, 1)});
  Form s = contract_kv(kv, eta);
  CHECK(expr_equal(s.coef.at({}), num(2)));  // iota(e0)dx1 + iota(e1)dx2
}

TEST_CASE("mismatched vector form components are rejected") {
  ChartPtr other = make_chart("Q", {"y1", "y2"});
  Form a = coord_diff(chart4, 0);
  Form b = coord_diff(other, 0);
  CHECK_THROWS_AS(make_vform({a, b}), ChartError);
  Form two = wedge(coord_diff(chart4, 0), coord_diff(chart4, 1));
  CHECK_THROWS_AS(make_vform({a, two}), ChartError);
}

TEST_CASE("form text output reparses to the same form") {
  std::mt19937 rng(555);
  ParserEnv env;
  for (int trial = 0; trial < 50; ++trial) {
    Form a = random_form(rng, chart4, 1 + (int)(rng() % 2));
    std::string text = to_string(a);
    if (text == "0") {  // coefficients cancelled; the zero form prints as a scalar
      CHECK(form_is_zero(a));
      continue;
    }
    std::vector<FormTerm> terms = parse_form_terms(text, env);
    std::vector<std::pair<std::vector<int>, Expr>> rebuilt;
    for (const FormTerm& t : terms) {
      std::vector<int> idx;
      for (const std::string& c : t.diffs) idx.push_back(chart4->coord_index(c));
      rebuilt.emplace_back(idx, t.coeff);
    }
    CHECK(form_equal(a, make_form(chart4, a.degree, rebuilt)));
  }
}

TEST_CASE("pointwise evaluation matches symbolic contraction") {
  std::mt19937 rng(666);
  for (int trial = 0; trial < 50; ++trial) {
    Form a = random_form(rng, chart4, 1);
    VectorField x = random_vf(rng, chart4);
    Point p;
    for (const std::string& c : chart4->coords) p[c] = Rat((int)(rng() % 7) - 3);
    RatVec av = oneform_at(a, p);
    RatVec xv = vf_at(x, p);
    Rat dot = 0;
    for (size_t i = 0; i < av.size(); ++i) dot += av[i] * xv[i];
    CHECK(dot == evaluate(iota(x, a).coef.count({}) ? iota(x, a).coef.at({}) : num(0), p));
  }
}
