#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "geored/normal_form.hpp"
#include "geored/parser.hpp"
#include "geored/reduction.hpp"
#include "geored/sampling.hpp"
#include "geored/scenario.hpp"

using namespace geo;

namespace {

const Scenario& coupled() { return scenario_by_id("coupled_strings"); }

std::vector<Point> level_samples(const Scenario& s, int n) {
  return sample_points(*s.level->param_chart, s.level->param_open, n, kDefaultSeed,
                       s.params, s.bindings);
}

}  // namespace

TEST_CASE("level_set_of validates the embedding against the momentum value") {
  const Scenario& s = coupled();
  // sane inputs reproduce the stored level set
  LevelSet lv = level_set_of(*s.momentum, *s.mu, s.level->param_chart, s.level->embed,
                             s.level->param_open);
  CHECK(lv.equalities.size() == s.level->equalities.size());
  CHECK(lv.zero_rows == s.level->zero_rows);

  // an embedding that misses the level set is rejected: p2t = -p1t + 1
  // breaks the zero-row equality p1t + p2t = 0
  std::vector<Expr> wrong = s.level->embed.comp;
  wrong[3] = wrong[3] + num(1);
  SmoothMap bad = make_map(s.level->param_chart, s.chart, wrong);
  CHECK_THROWS_AS(level_set_of(*s.momentum, *s.mu, s.level->param_chart, bad,
                               s.level->param_open),
                  std::runtime_error);
}

TEST_CASE("embedded points satisfy the level equalities exactly") {
  const Scenario& s = coupled();
  for (const Point& u : level_samples(s, 20)) {
    Point x = embed_point(*s.level, u, s.bindings);
    for (const Expr& eq : s.level->equalities)
      CHECK(evaluate(eq, x, s.bindings) == 0);
    for (const Expr& oc : s.level->open_conds)
      CHECK(evaluate(oc, x, s.bindings) != 0);
  }
}

TEST_CASE("weak regularity holds along the parametrized level set") {
  const Scenario& s = coupled();
  for (const Point& u : level_samples(s, 20))
    CHECK(weak_regularity_at(*s.level, u, s.bindings));
}

TEST_CASE("tangent and orbit ranks are constant on the coupled level set") {
  const Scenario& s = coupled();
  IsotropyReport iso = isotropy(*s.algebra, *s.mu);
  for (const Point& u : level_samples(s, 10)) {
    Point x = embed_point(*s.level, u, s.bindings);
    Subspace t = tangent_level_set(*s.momentum, *s.mu, x, s.bindings);
    CHECK(t.rank() == (int)s.level->param_chart->dim());
    Subspace o = orbit_tangent(*s.action, iso.k_ray, x, s.bindings);
    CHECK(o.rank() == 1);
    CHECK(subspace_contains(t, o));
  }
}

TEST_CASE("reduction conditions hold on the coupled strings level set") {
  const Scenario& s = coupled();
  IsotropyReport iso = isotropy(*s.algebra, *s.mu);
  auto pts = level_samples(s, 25);
  ConditionReport rep =
      check_contact_conditions(*s.kc, *s.action, iso, *s.momentum, *s.mu, *s.level, pts,
                               s.bindings);
  CHECK(rep.pass);
  CHECK_FALSE(rep.aborted);
  CHECK(rep.samples.size() == 25);

  // the symplectised checker sees the same verdict pointwise
  std::vector<VectorField> reeb = solve_reeb(*s.kc);
  SympLift lift = build_symp_lift(*s.kc, reeb, *s.action, *s.momentum, *s.mu, *s.level);
  std::vector<Point> spts = pts;
  for (size_t i = 0; i < spts.size(); ++i) spts[i]["s"] = Rat((int)(i % 7) + 1);
  ConditionReport srep = check_symplectic_conditions(lift.ks, lift.act, iso, lift.j,
                                                     *s.mu, lift.level, spts, s.bindings);
  CHECK(srep.pass);
  CHECK(condition_reports_agree(rep, srep));
}

TEST_CASE("pointwise agreement compares per-sample equation verdicts") {
  ConditionReport a, b;
  a.samples.resize(2);
  b.samples.resize(2);
  a.samples[0].eq1 = {true, true};
  b.samples[0].eq1 = {true, true};
  CHECK(condition_reports_agree(a, b));
  b.samples[1].eq2 = false;
  CHECK_FALSE(condition_reports_agree(a, b));
  b.samples[1].eq2 = true;
  b.samples[0].eq1 = {true, false};
  CHECK_FALSE(condition_reports_agree(a, b));
  b.samples[0].eq1 = {true, true};
  b.samples.pop_back();
  CHECK_FALSE(condition_reports_agree(a, b));  // length mismatch
}

TEST_CASE("the kernel identity holds with the ray subalgebra only") {
  const Scenario& s = coupled();
  IsotropyReport iso = isotropy(*s.algebra, *s.mu);
  auto pts = level_samples(s, 15);
  CHECK(check_kernel_identity(*s.kc, *s.action, iso.k_ray, *s.level, pts, s.bindings).pass);
  // the strict isotropy orbit is too small to fill the kernel on sl2
  const Scenario& sl2 = scenario_by_id("sl2_counterexample");
  IsotropyReport iso2 = isotropy(*sl2.algebra, *sl2.mu);
  auto pts2 = level_samples(sl2, 15);
  CHECK(check_kernel_identity(*sl2.kc, *sl2.action, iso2.k_ray, *sl2.level, pts2,
                              sl2.bindings).pass);
  StructureReport too_small = check_kernel_identity(*sl2.kc, *sl2.action, iso2.k_fix,
                                                    *sl2.level, pts2, sl2.bindings);
  CHECK_FALSE(too_small.pass);
}

TEST_CASE("level set lemma on the canonical 2-symplectic structure") {
  // fixed samples must satisfy J = mu exactly: p1 = p2 = 1, q free
  const Scenario& s = scenario_by_id("canonical_ksymplectic");
  std::vector<Point> fixed;
  for (int i = -4; i <= 4; ++i)
    fixed.push_back({{"q", Rat(i)}, {"p1", Rat(1)}, {"p2", Rat(1)}});
  StructureReport rep = check_ksymplectic_level_lemma(*s.ks, *s.action, *s.momentum,
                                                      *s.mu, fixed, {}, s.bindings);
  CHECK(rep.pass);
  for (const PointCheck& pc : rep.points)
    CHECK(pc.ranks.at("T_level") == pc.ranks.at("orbit_perp"));
}

TEST_CASE("level set lemma ray comparison on a one-symplectic plane") {
  // theta = p dq on (q, p) with the q-translation action: J = p
  ChartPtr m = make_chart("P", {"q", "p"});
  VForm theta = make_vform({make_form(m, 1, {{{0}, sym("p")}})});
  KSymplectic ks = make_ksymplectic(d(theta), theta, {sym("p")});
  LieAlgebraPtr g = make_lie_algebra({"xi"}, {});
  InfAction act{g, m, {basis_vf(m, 0)}, -1};
  Momentum j = momentum_from_theta(act, theta);
  CoadjointValue mu{1, 1, {{1}}};

  std::vector<Point> fixed, ray;
  for (int i = 1; i <= 8; ++i) {
    fixed.push_back({{"q", Rat(i)}, {"p", Rat(1)}});
    ray.push_back({{"q", Rat(i)}, {"p", Rat(i, 3)}});
  }
  StructureReport rep = check_ksymplectic_level_lemma(ks, act, j, mu, fixed, ray);
  CHECK(rep.pass);
  CHECK(rep.points.size() == 16);
}

TEST_CASE("declared quotient presentation verifies on coupled strings") {
  const Scenario& s = coupled();
  IsotropyReport iso = isotropy(*s.algebra, *s.mu);
  auto pts = level_samples(s, 20);
  auto rpts = sample_points(*s.quotient->reduced, s.quotient->reduced_open, 20,
                            kDefaultSeed, s.params, s.bindings);
  StructureReport rep = verify_reduction(*s.quotient, *s.kc, &*s.action, &iso.k_ray, pts,
                                         rpts, s.bindings);
  CHECK(rep.pass);
}

TEST_CASE("a perturbed reduced form is caught by the pullback comparison") {
  const Scenario& s = coupled();
  IsotropyReport iso = isotropy(*s.algebra, *s.mu);
  QuotientPresentation q = *s.quotient;
  Form extra = make_form(q.reduced, 1, {{{0}, num(1)}});
  q.eta_red = vform_add(q.eta_red, make_vform({extra, zero_form(q.reduced, 1)}));
  auto pts = level_samples(s, 10);
  auto rpts = sample_points(*q.reduced, q.reduced_open, 10, kDefaultSeed, s.params,
                            s.bindings);
  StructureReport rep = verify_reduction(q, *s.kc, &*s.action, &iso.k_ray, pts, rpts,
                                         s.bindings);
  CHECK_FALSE(rep.pass);
  CHECK(rep.first_witness() != "");
}

TEST_CASE("projection and section compose to the identity on samples") {
  const Scenario& s = coupled();
  const QuotientPresentation& q = *s.quotient;
  auto rpts = sample_points(*q.reduced, q.reduced_open, 20, kDefaultSeed, s.params,
                            s.bindings);
  for (const Point& y : rpts) {
    Point u;
    for (int i = 0; i < q.level.param_chart->dim(); ++i)
      u[q.level.param_chart->coords[i]] = evaluate(q.section.comp[i], y, s.bindings);
    for (int i = 0; i < q.reduced->dim(); ++i)
      CHECK(evaluate(q.proj.comp[i], u, s.bindings) == y.at(q.reduced->coords[i]));
  }
}

TEST_CASE("fields that vary along fibers do not push through the quotient") {
  const Scenario& s = coupled();
  const QuotientPresentation& q = *s.quotient;
  auto parent_vf = [&](const Expr& q1_comp) {
    std::vector<Expr> comp(s.chart->dim(), num(0));
    comp[0] = q1_comp;
    return make_vf(s.chart, comp);
  };

  // q1 + q2 is a fiber coordinate of the coupled-strings projection
  PushResult pr = push_through_quotient(q, parent_vf(sym("q1") + sym("q2")));
  CHECK_FALSE(pr.ok);
  CHECK(pr.tangent);

  PushResult pg = push_through_quotient(q, parent_vf(sym("q1") - sym("q2")));
  CHECK(pg.ok);
  // proj sends q1 - q2 to q, so the pushed field is q d/dq
  CHECK(expr_equal(pg.field.comp[0], sym("q")));
  for (int i = 1; i < q.reduced->dim(); ++i) CHECK(is_zero(pg.field.comp[i]));

  // a momentum direction off the level set is not tangent
  std::vector<Expr> off(s.chart->dim(), num(0));
  off[2] = num(1);  // d/d(p1t) alone violates p1t + p2t = 0
  PushResult pt = push_through_quotient(q, make_vf(s.chart, off));
  CHECK_FALSE(pt.tangent);
}

TEST_CASE("parent Reeb fields descend to the declared reduced Reeb") {
  const Scenario& s = coupled();
  std::vector<VectorField> reeb = solve_reeb(*s.kc);
  StructureReport rep = reduced_reeb_consistency(*s.quotient, *s.kc, reeb);
  CHECK(rep.pass);
}

TEST_CASE("probe reports uniform ranks on the symplectised sl2 level set") {
  const Scenario& s = scenario_by_id("sl2_counterexample");
  IsotropyReport iso = isotropy(*s.algebra, *s.mu);
  std::vector<VectorField> reeb = solve_reeb(*s.kc);
  SympLift lift = build_symp_lift(*s.kc, reeb, *s.action, *s.momentum, *s.mu, *s.level);
  std::vector<Point> ambient;
  for (const Point& u : sample_points(*lift.level.param_chart, lift.level.param_open, 15,
                                      kDefaultSeed, s.params, s.bindings))
    ambient.push_back(embed_point(lift.level, u, s.bindings));
  ProbeReport rep = probe_reduction_group(lift.ks, lift.act, lift.j, *s.mu, iso, ambient,
                                          true, s.bindings);
  CHECK(rep.pass);
  for (const ProbeSample& ps : rep.samples) {
    CHECK(ps.kernel_is_ray_orbit);
    CHECK(ps.fix_orbit_strictly_smaller);
    CHECK(ps.rank_kernel == 2);
    CHECK(ps.rank_fix_orbit == 1);
  }
}
