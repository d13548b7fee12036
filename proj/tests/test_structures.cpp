#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "geored/normal_form.hpp"
#include "geored/parser.hpp"
#include "geored/sampling.hpp"
#include "geored/scenario.hpp"
#include "geored/structures.hpp"

using namespace geo;

namespace {

// canonical 2-contact structure on R^8: eta^a = dz^a - p^a_i dq^i
struct Canonical {
  ChartPtr chart = make_chart("C", {"q1", "q2", "p11", "p12", "p21", "p22", "z1", "z2"});
  KContact kc;
  Canonical() {
    Form e1 = make_form(chart, 1, {{{6}, num(1)}, {{0}, -sym("p11")}, {{1}, -sym("p12")}});
    Form e2 = make_form(chart, 1, {{{7}, num(1)}, {{0}, -sym("p21")}, {{1}, -sym("p22")}});
    kc = make_kcontact(make_vform({e1, e2}));
  }
};

}  // namespace

TEST_CASE("canonical structure verifies at random points") {
  Canonical c;
  auto pts = sample_points(*c.chart, {}, 50, kDefaultSeed);
  StructureReport rep = verify_kcontact(c.kc, pts);
  CHECK(rep.pass);
  CHECK(rep.points.size() == 50);
  for (const PointCheck& pc : rep.points) {
    CHECK(pc.ranks.at("ker_eta") == 6);
    CHECK(pc.ranks.at("ker_deta") == 2);
    CHECK(pc.ranks.at("intersection") == 0);
  }
}

TEST_CASE("canonical Reeb fields are the z translations") {
  Canonical c;
  std::vector<VectorField> reeb = solve_reeb(c.kc);
  REQUIRE(reeb.size() == 2);
  for (int a = 0; a < 2; ++a)
    for (int i = 0; i < c.chart->dim(); ++i) {
      Expr want = (i == 6 + a) ? num(1) : num(0);
      CHECK(expr_equal(reeb[a].comp[i], want));
    }
}

TEST_CASE("a pair of one forms with a shared closed direction is not 2-contact") {
  ChartPtr m = make_chart("M", {"x1", "x2", "x3", "x4"});
  Form e1 = make_form(m, 1, {{{0}, num(1)}, {{3}, sym("x3")}});
  Form e2 = make_form(m, 1, {{{1}, num(1)}, {{0}, sym("x2")}});
  KContact kc = make_kcontact(make_vform({e1, e2}));
  auto pts = sample_points(*m, {}, 20, kDefaultSeed);
  StructureReport rep = verify_kcontact(kc, pts);
  CHECK_FALSE(rep.pass);
  CHECK(rep.first_witness() == "rank ker dη = 0 ≠ 2");
}

TEST_CASE("the symplectisation of the failing pair is still 2-symplectic") {
  // dη is nondegenerate on the span of dx1..dx4, so s dη + ds ∧ η has
  // trivial joint kernel even though the pair fails the contact rank test
  ChartPtr m = make_chart("M", {"x1", "x2", "x3", "x4"});
  Form e1 = make_form(m, 1, {{{0}, num(1)}, {{3}, sym("x3")}});
  Form e2 = make_form(m, 1, {{{1}, num(1)}, {{0}, sym("x2")}});
  KContact kc = make_kcontact(make_vform({e1, e2}));

  ChartPtr sm = symp_chart_of(m);
  SmoothMap pr = symp_projection(sm, m);
  VForm theta = vform_scale(sym("s"), pullback(pr, kc.eta));
  KSymplectic ks = make_ksymplectic(d(theta), theta, {sym("s")});
  auto pts = sample_points(*sm, ks.open_conditions, 30, kDefaultSeed);
  StructureReport rep = verify_ksymplectic(ks, pts);
  CHECK(rep.pass);
}

TEST_CASE("symplectize produces a 2-symplectic structure with Reeb lifts") {
  Canonical c;
  std::vector<VectorField> reeb = solve_reeb(c.kc);
  KSymplectic ks = symplectize(c.kc, reeb);
  CHECK(ks.k() == 2);
  CHECK(ks.chart->coords[0] == "s");
  CHECK(ks.reeb_lift.size() == 2);
  REQUIRE(ks.theta.has_value());
  CHECK(vform_equal(ks.omega, d(*ks.theta)));

  auto pts = sample_points(*ks.chart, ks.open_conditions, 30, kDefaultSeed);
  CHECK(verify_ksymplectic(ks, pts).pass);

  // lifted Reeb fields contract theta to s*delta and omega = ds^eta + s*deta
  // to -delta ds, since they kill ds and the base Reeb relations persist
  Form minus_ds = make_form(ks.chart, 1, {{{0}, num(-1)}});
  for (int a = 0; a < 2; ++a) {
    VForm it = iota(ks.reeb_lift[a], *ks.theta);
    VForm io = iota(ks.reeb_lift[a], ks.omega);
    for (int bq = 0; bq < 2; ++bq) {
      Expr want = (a == bq) ? sym("s") : num(0);
      Expr got = it.comp[bq].coef.count({}) ? it.comp[bq].coef.at({}) : num(0);
      CHECK(expr_equal(got, want));
      CHECK(form_equal(io.comp[bq], a == bq ? minus_ds : zero_form(ks.chart, 1)));
    }
  }
}

TEST_CASE("kernel_at computes the joint kernel of a vector form") {
  Canonical c;
  Point p;
  for (const std::string& coord : c.chart->coords) p[coord] = Rat(1);
  Subspace ker_eta = kernel_at(c.kc.eta, p);
  Subspace ker_deta = kernel_at(c.kc.deta, p);
  CHECK(ker_eta.rank() == 6);
  CHECK(ker_deta.rank() == 2);
  Subspace both = intersect(ker_eta, ker_deta);
  CHECK(both.rank() == 0);
}

TEST_CASE("flat maps vanish exactly on Reeb combinations") {
  Canonical c;
  std::vector<VectorField> reeb = solve_reeb(c.kc);
  KVectorField kv = make_kvf({reeb[0], reeb[1]});
  auto [om, et] = flat_eta(c.kc, kv);
  CHECK(form_is_zero(om));
  CHECK(expr_equal(et, num(2)));  // sum of iota(R^a) eta^a

  // a polarization direction is eta-flat and deta-flat pairs it nontrivially
  KVectorField pq = make_kvf({basis_vf(c.chart, 0), basis_vf(c.chart, 1)});
  auto [om2, et2] = flat_eta(c.kc, pq);
  CHECK(expr_equal(et2, parse_expr("-p11 - p22")));
  CHECK_FALSE(form_is_zero(om2));
}

TEST_CASE("orthogonal complement dimensions follow the rank") {
  Canonical c;
  Point p;
  for (const std::string& coord : c.chart->coords) p[coord] = Rat(2);
  // span of the two momentum-direction basis vectors
  Subspace w = make_subspace({{0, 0, 1, 0, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0, 0, 0}}, 8);
  Subspace perp = orthogonal_deta(c.kc, w, p);
  // deta^1 pairs dp11 with dq1 and dp12 with dq2, so both q directions are cut
  CHECK(perp.rank() == 6);
  CHECK(subspace_contains(perp, w));
}

TEST_CASE("registry scenarios with declared structures verify end to end") {
  for (const Scenario& s : registry()) {
    if (s.id == "symplectisation_nonexample") continue;
    auto pts = sample_points(*s.structure_chart(), s.structure_open(), 25, kDefaultSeed,
                             s.params, s.bindings);
    if (s.kc) {
      CHECK(verify_kcontact(*s.kc, pts, s.bindings).pass);
    } else if (s.ks) {
      CHECK(verify_ksymplectic(*s.ks, pts, s.bindings).pass);
    }
  }
}

TEST_CASE("witness strings name the offending rank") {
  ChartPtr m = make_chart("M", {"x", "y", "z"});
  // eta = dz with k = 1: ker eta has rank 2, ker deta rank 3 (not 2... k=1 wants dim-k=2)
  Form e = make_form(m, 1, {{{2}, num(1)}});
  KContact kc = make_kcontact(make_vform({e}));
  auto pts = sample_points(*m, {}, 5, kDefaultSeed);
  StructureReport rep = verify_kcontact(kc, pts);
  CHECK_FALSE(rep.pass);
  CHECK(rep.first_witness() == "rank ker dη = 3 ≠ 1");
}
