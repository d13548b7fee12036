#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "geored/lie.hpp"
#include "geored/normal_form.hpp"
#include "geored/parser.hpp"
#include "geored/scenario.hpp"

using namespace geo;

namespace {

LieAlgebraPtr sl2() {
  // [e1,e2] = 2e2, [e1,e3] = -2e3, [e2,e3] = e1
  return make_lie_algebra({"e1", "e2", "e3"}, {{{0, 1}, {0, 2, 0}},
                                               {{0, 2}, {0, 0, -2}},
                                               {{1, 2}, {1, 0, 0}}});
}

LieAlgebraPtr gl2_like() {
  // [v1,v2] = v3, [v1,v3] = -2v1, [v2,v3] = 2v2, v4 central
  return make_lie_algebra({"v1", "v2", "v3", "v4"}, {{{0, 1}, {0, 0, 1, 0}},
                                                     {{0, 2}, {-2, 0, 0, 0}},
                                                     {{1, 2}, {0, 2, 0, 0}}});
}

RatVec basis_vec(int n, int i) {
  RatVec v(n, 0);
  v[i] = 1;
  return v;
}

}  // namespace

TEST_CASE("construction rejects structure constants that break Jacobi") {
  CHECK_THROWS_AS(make_lie_algebra({"a", "b", "c"}, {{{0, 1}, {1, 0, 0}},
                                                     {{1, 2}, {0, 1, 0}},
                                                     {{0, 2}, {0, 0, 1}}}),
                  InternalError);
}

TEST_CASE("bracket is bilinear and antisymmetric") {
  LieAlgebraPtr g = sl2();
  std::mt19937 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    RatVec a(3), b(3), c(3);
    for (int i = 0; i < 3; ++i) {
      a[i] = Rat((int)(rng() % 9) - 4);
      b[i] = Rat((int)(rng() % 9) - 4);
      c[i] = Rat((int)(rng() % 9) - 4);
    }
    RatVec ab = g->bracket(a, b);
    RatVec ba = g->bracket(b, a);
    for (int i = 0; i < 3; ++i) CHECK(ab[i] == -ba[i]);

    RatVec ac = g->bracket(a, c);
    RatVec sum(3);
    for (int i = 0; i < 3; ++i) sum[i] = b[i] + c[i];
    RatVec lhs = g->bracket(a, sum);
    for (int i = 0; i < 3; ++i) CHECK(lhs[i] == ab[i] + ac[i]);
  }
}

TEST_CASE("registry algebras satisfy Jacobi on all basis triples") {
  for (const Scenario& s : registry()) {
    if (!s.algebra) continue;
    const LieAlgebra& g = *s.algebra;
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        for (int m = 0; m < g.n; ++m) {
          RatVec ei = basis_vec(g.n, i), ej = basis_vec(g.n, j), em = basis_vec(g.n, m);
          RatVec t1 = g.bracket(g.bracket(ei, ej), em);
          RatVec t2 = g.bracket(g.bracket(ej, em), ei);
          RatVec t3 = g.bracket(g.bracket(em, ei), ej);
          for (int r = 0; r < g.n; ++r) CHECK(t1[r] + t2[r] + t3[r] == 0);
        }
  }
}

TEST_CASE("coadjoint action pairs against the bracket") {
  LieAlgebraPtr g = gl2_like();
  std::mt19937 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    RatVec mu(4);
    for (auto& x : mu) x = Rat((int)(rng() % 9) - 4);
    for (int i = 0; i < 4; ++i) {
      RatVec v = ad_star(*g, basis_vec(4, i), mu);
      for (int j = 0; j < 4; ++j) {
        RatVec br = g->bracket(basis_vec(4, i), basis_vec(4, j));
        Rat pairing = 0;
        for (int m = 0; m < 4; ++m) pairing += mu[m] * br[m];
        CHECK(v[j] == pairing);
      }
    }
  }
}

TEST_CASE("sl2 isotropy at the third dual basis vector") {
  LieAlgebraPtr g = sl2();
  CoadjointValue mu{1, 3, {{0, 0, 1}}};
  IsotropyReport rep = isotropy(*g, mu);
  CHECK(rep.ker.rank() == 2);
  CHECK(rep.fix.rank() == 1);
  CHECK(rep.k_fix.rank() == 1);
  CHECK(rep.k_ray.rank() == 2);
  CHECK(rep.k_ray_closed);
  CHECK_FALSE(rep.willett[0]);
  CHECK_FALSE(willett_condition(*g, {0, 0, 1}));

  // the fixed subalgebra is the span of e2, the ray subalgebra of e1 and e2
  CHECK(subspace_member(rep.fix, {0, 1, 0}));
  CHECK(subspace_equal(rep.k_ray, make_subspace({{1, 0, 0}, {0, 1, 0}}, 3)));
}

TEST_CASE("central extension isotropy at the second dual basis vector") {
  LieAlgebraPtr g = gl2_like();
  CoadjointValue mu{1, 4, {{0, 1, 0, 0}}};
  IsotropyReport rep = isotropy(*g, mu);
  CHECK(rep.k_fix.rank() == 2);
  CHECK(rep.k_ray.rank() == 3);
  CHECK(rep.k_ray_closed);
  CHECK_FALSE(rep.willett[0]);
  CHECK(subspace_equal(rep.k_fix, make_subspace({{1, 0, 0, 0}, {0, 0, 0, 1}}, 4)));
}

TEST_CASE("zero rows and abelian algebras satisfy the transversality condition") {
  LieAlgebraPtr ab = make_lie_algebra({"x1", "x2"}, {});
  CHECK(willett_condition(*ab, {1, 0}));
  CHECK(willett_condition(*ab, {3, -2}));
  LieAlgebraPtr g = sl2();
  CHECK(willett_condition(*g, {0, 0, 0}));  // zero functional: fix is everything

  CoadjointValue mu{2, 2, {{0, 0}, {1, 0}}};
  IsotropyReport rep = isotropy(*ab, mu);
  CHECK(rep.ker.rank() == 1);   // cut only by the nonzero row
  CHECK(rep.fix.rank() == 2);   // abelian coadjoint action is trivial
  CHECK(rep.k_ray.rank() == 1);
  CHECK(rep.willett[0]);
  CHECK(rep.willett[1]);
}

TEST_CASE("fundamental fields close with the declared sign") {
  // [e1,e2] = e1 realized by e1 -> d/dx, e2 -> x d/dx: a homomorphism
  LieAlgebraPtr g = make_lie_algebra({"e1", "e2"}, {{{0, 1}, {1, 0}}});
  ChartPtr m = make_chart("L", {"x"});
  std::vector<VectorField> fund = {make_vf(m, {num(1)}), make_vf(m, {sym("x")})};

  InfAction good{g, m, fund, 1};
  CHECK(check_infaction(good).pass);

  InfAction bad{g, m, fund, -1};
  StructureReport rep = check_infaction(bad);
  CHECK_FALSE(rep.pass);
  CHECK(rep.first_witness() != "");
}

TEST_CASE("field_of is linear in the algebra argument") {
  LieAlgebraPtr g = sl2();
  ChartPtr m = make_chart("L", {"x", "y"});
  InfAction act{g, m,
                {make_vf(m, {num(1), num(0)}), make_vf(m, {sym("y"), num(0)}),
                 make_vf(m, {num(0), sym("x")})},
                -1};
  VectorField v = act.field_of({2, -1, 3});
  CHECK(expr_equal(v.comp[0], parse_expr("2 - y")));
  CHECK(expr_equal(v.comp[1], parse_expr("3*x")));
}

TEST_CASE("momentum entries are the pairings of eta with the generators") {
  ChartPtr m = make_chart("C", {"q", "p1", "p2", "z1", "z2"});
  Form e1 = make_form(m, 1, {{{3}, num(1)}, {{0}, -sym("p1")}});
  Form e2 = make_form(m, 1, {{{4}, num(1)}, {{0}, -sym("p2")}});
  KContact kc = make_kcontact(make_vform({e1, e2}));

  LieAlgebraPtr g = make_lie_algebra({"xi"}, {});
  InfAction act{g, m, {basis_vf(m, 0)}, -1};
  Momentum j = momentum_from_action(act, kc);
  CHECK(j.k == 2);
  CHECK(j.n == 1);
  CHECK(expr_equal(j.entries[0][0], parse_expr("-p1")));
  CHECK(expr_equal(j.entries[1][0], parse_expr("-p2")));

  CHECK(check_invariance(act, kc.eta).pass);
  CHECK(check_equivariance_inf(j, act).pass);
}

TEST_CASE("momentum from the symplectisation potential scales by the fiber") {
  ChartPtr m = make_chart("C", {"q", "p1", "p2", "z1", "z2"});
  Form e1 = make_form(m, 1, {{{3}, num(1)}, {{0}, -sym("p1")}});
  Form e2 = make_form(m, 1, {{{4}, num(1)}, {{0}, -sym("p2")}});
  KContact kc = make_kcontact(make_vform({e1, e2}));
  std::vector<VectorField> reeb = solve_reeb(kc);
  KSymplectic ks = symplectize(kc, reeb);

  LieAlgebraPtr g = make_lie_algebra({"xi"}, {});
  InfAction act{g, m, {basis_vf(m, 0)}, -1};
  Momentum j = momentum_from_action(act, kc);
  Momentum lifted = extend_momentum(j, ks.chart);

  // drop the s component to compare against the base field pushed to the big chart
  InfAction lifted_act{g, ks.chart,
                       {make_vf(ks.chart, {num(0), num(1), num(0), num(0), num(0), num(0)})},
                       -1};
  Momentum from_theta = momentum_from_theta(lifted_act, *ks.theta);
  for (int a = 0; a < 2; ++a)
    CHECK(expr_equal(lifted.entries[a][0], from_theta.entries[a][0]));
}

TEST_CASE("non-invariant forms are reported with a witness") {
  ChartPtr m = make_chart("C", {"q", "p", "z"});
  Form e = make_form(m, 1, {{{2}, num(1)}, {{0}, -sym("p") - sym("q")}});
  KContact kc = make_kcontact(make_vform({e}));
  LieAlgebraPtr g = make_lie_algebra({"xi"}, {});
  InfAction act{g, m, {basis_vf(m, 0)}, -1};  // translation in q
  StructureReport rep = check_invariance(act, kc.eta);
  CHECK_FALSE(rep.pass);
  CHECK(rep.first_witness() != "");
}
