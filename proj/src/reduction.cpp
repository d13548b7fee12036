#include "geored/reduction.hpp"

#include "geored/normal_form.hpp"

#include <functional>
#include <sstream>

namespace geo {

namespace {

// Defining equalities of J_alpha ∈ ℝ^× μ^alpha: the 2x2 minors of the pair
// (J_alpha, mu^alpha). A zero row degenerates to the fixed value 0.
std::vector<Expr> ray_equalities(const Momentum& j, const CoadjointValue& mu, int alpha) {
  std::vector<Expr> out;
  if (mu.zero_row(alpha)) {
    for (int i = 0; i < j.n; ++i) out.push_back(j.entries[alpha][i]);
    return out;
  }
  for (int i = 0; i < j.n; ++i)
    for (int l = i + 1; l < j.n; ++l) {
      if (mu.rows[alpha][i] == 0 && mu.rows[alpha][l] == 0) continue;
      out.push_back(num(mu.rows[alpha][l]) * j.entries[alpha][i] -
                    num(mu.rows[alpha][i]) * j.entries[alpha][l]);
    }
  return out;
}

int distinguished_index(const CoadjointValue& mu, int alpha) {
  for (int i = 0; i < mu.n; ++i)
    if (mu.rows[alpha][i] != 0) return i;
  return -1;
}

RatVec gradient_at(const Expr& e, const ChartPtr& chart, const Point& x, const Bindings& b) {
  RatVec g(chart->dim());
  for (int m = 0; m < chart->dim(); ++m)
    g[m] = evaluate(differentiate(e, chart->coords[m], *chart), x, b);
  return g;
}

RatMat ray_tangent_rows(const Momentum& j, const CoadjointValue& mu, int alpha, const Point& x,
                        const Bindings& b) {
  RatMat rows;
  for (const Expr& e : ray_equalities(j, mu, alpha))
    rows.push_back(gradient_at(e, j.chart, x, b));
  return rows;
}

Subspace single_form_kernel(const Form& f, const Point& x, const Bindings& b) {
  return kernel_at(make_vform({f}), x, b);
}

}  // namespace

LevelSet level_set_of(const Momentum& j, const CoadjointValue& mu, ChartPtr param_chart,
                      SmoothMap embed, std::vector<Expr> param_open) {
  if (j.k != mu.k || j.n != mu.n)
    throw InternalError("level_set_of: momentum and coadjoint value shapes disagree");
  if (embed.src->name != param_chart->name)
    throw ChartError("level_set_of: embedding source is not the parametrizing chart");
  if (embed.dst->name != j.chart->name)
    throw ChartError("level_set_of: embedding target is not the momentum chart");

  LevelSet lev;
  lev.parent = j.chart;
  lev.param_chart = std::move(param_chart);
  lev.embed = std::move(embed);
  lev.param_open = std::move(param_open);
  for (int a = 0; a < j.k; ++a) {
    lev.zero_rows.push_back(mu.zero_row(a));
    for (Expr& e : ray_equalities(j, mu, a)) lev.equalities.push_back(std::move(e));
    if (!lev.zero_rows.back())
      lev.open_conds.push_back(j.entries[a][distinguished_index(mu, a)]);
  }
  for (const Expr& e : lev.equalities)
    if (!is_zero(pullback_expr(lev.embed, e)))
      throw InternalError("level_set_of: parametrization violates defining equality " +
                          to_string(e));
  return lev;
}

Point embed_point(const LevelSet& level, const Point& u, const Bindings& b) {
  Point x = u;
  for (int i = 0; i < level.parent->dim(); ++i)
    x[level.parent->coords[i]] = evaluate(level.embed.comp[i], u, b);
  return x;
}

Subspace tangent_level_set(const Momentum& j, const CoadjointValue& mu, const Point& x,
                           const Bindings& b) {
  RatMat rows;
  for (int a = 0; a < j.k; ++a)
    for (RatVec& r : ray_tangent_rows(j, mu, a, x, b)) rows.push_back(std::move(r));
  return make_subspace(nullspace(rows, j.chart->dim()), j.chart->dim());
}

Subspace tangent_level_row(const Momentum& j, const CoadjointValue& mu, int alpha,
                           const Point& x, const Bindings& b) {
  RatMat rows = ray_tangent_rows(j, mu, alpha, x, b);
  return make_subspace(nullspace(rows, j.chart->dim()), j.chart->dim());
}

Subspace orbit_tangent(const InfAction& act, const Subspace& subalgebra, const Point& x,
                       const Bindings& b) {
  RatMat vecs;
  for (const RatVec& xi : subalgebra.basis) vecs.push_back(vf_at(act.field_of(xi), x, b));
  return make_subspace(std::move(vecs), act.chart->dim());
}

bool weak_regularity_at(const LevelSet& level, const Point& u, const Bindings& b) {
  Point x = embed_point(level, u, b);
  RatMat rows;
  for (const Expr& e : level.equalities) rows.push_back(gradient_at(e, level.parent, x, b));
  int codim = level.parent->dim() - level.param_chart->dim();
  if (rank_of(rows) != codim) return false;
  return rank_of(jacobian_at(level.embed, u, b)) == level.param_chart->dim();
}

namespace {

// Shared by the contact and the k-symplectic checkers; kk_at supplies the
// per-component characteristic subspace at the embedded point.
ConditionReport condition_worker(
    int k, const std::function<Subspace(int, const Point&)>& kk_at, const InfAction& act,
    const IsotropyReport& iso, const Momentum& j, const CoadjointValue& mu,
    const LevelSet& level, const std::vector<Point>& param_samples, const Bindings& b) {
  ConditionReport rep;
  int first_ray_rank = -1;
  std::vector<int> first_row_rank(k, -1);
  for (const Point& u : param_samples) {
    Point x = embed_point(level, u, b);
    ConditionSample cs;
    cs.point = u;

    Subspace o_ray = orbit_tangent(act, iso.k_ray, x, b);
    if (first_ray_rank < 0) {
      first_ray_rank = o_ray.rank();
    } else if (o_ray.rank() != first_ray_rank) {
      rep.aborted = true;
      rep.pass = false;
      rep.notes.push_back("non-free locus: orbit rank dropped from " +
                          std::to_string(first_ray_rank) + " to " +
                          std::to_string(o_ray.rank()) + " between samples");
      break;
    }

    Subspace t_lev = tangent_level_set(j, mu, x, b);
    cs.ranks["T_level"] = t_lev.rank();
    cs.ranks["orbit"] = o_ray.rank();

    Subspace rhs2 = t_lev;
    for (int a = 0; a < k; ++a) {
      Subspace kk = kk_at(a, x);
      cs.ranks["kk" + std::to_string(a + 1)] = kk.rank();

      Subspace t_lev_a = tangent_level_row(j, mu, a, x, b);
      if (first_row_rank[a] < 0) {
        first_row_rank[a] = t_lev_a.rank();
      } else if (t_lev_a.rank() != first_row_rank[a]) {
        rep.pass = false;
        rep.notes.push_back("single-component level set " + std::to_string(a + 1) +
                            " changes rank between samples");
      }
      Subspace o_a = orbit_tangent(act, iso.kred_row[a], x, b);
      bool e1 = subspace_equal(t_lev_a, span_sum(span_sum(kk, t_lev), o_a));
      cs.eq1.push_back(e1);
      if (!e1) cs.pass = false;
      rhs2 = intersect(rhs2, span_sum(kk, o_a));
    }
    cs.eq2 = subspace_equal(o_ray, rhs2);
    if (!cs.eq2) cs.pass = false;
    if (!cs.pass) rep.pass = false;
    rep.samples.push_back(cs);

    if (!weak_regularity_at(level, u, b)) {
      rep.pass = false;
      rep.notes.push_back("weak regularity fails at a sample: defining equalities lose rank");
    }
  }
  if (first_ray_rank >= 0 && first_ray_rank < iso.k_ray.rank())
    rep.notes.push_back("reduction subalgebra acts with isotropy: orbit rank " +
                        std::to_string(first_ray_rank) + " < dim " +
                        std::to_string(iso.k_ray.rank()));
  return rep;
}

}  // namespace

ConditionReport check_contact_conditions(const KContact& kc, const InfAction& act,
                                         const IsotropyReport& iso, const Momentum& j,
                                         const CoadjointValue& mu, const LevelSet& level,
                                         const std::vector<Point>& param_samples,
                                         const Bindings& b) {
  auto kk_at = [&](int a, const Point& x) {
    return intersect(single_form_kernel(kc.eta.comp[a], x, b),
                     single_form_kernel(kc.deta.comp[a], x, b));
  };
  return condition_worker(kc.k(), kk_at, act, iso, j, mu, level, param_samples, b);
}

SympLift build_symp_lift(const KContact& kc, const std::vector<VectorField>& reeb,
                         const InfAction& act, const Momentum& j, const CoadjointValue& mu,
                         const LevelSet& level) {
  SympLift lift;
  lift.ks = symplectize(kc, reeb);
  ChartPtr symp = lift.ks.chart;

  lift.act.g = act.g;
  lift.act.chart = symp;
  lift.act.sigma = act.sigma;
  for (const VectorField& f : act.fund) {
    std::vector<Expr> comp{num(0)};
    for (const Expr& e : f.comp) comp.push_back(e);
    lift.act.fund.push_back(make_vf(symp, std::move(comp)));
  }

  lift.j = extend_momentum(j, symp);

  ChartPtr param2 = symp_chart_of(level.param_chart);
  std::vector<Expr> comp2{sym("s")};
  for (const Expr& e : level.embed.comp) comp2.push_back(e);
  std::vector<Expr> open2{sym("s")};
  for (const Expr& e : level.param_open) open2.push_back(e);
  lift.level = level_set_of(lift.j, mu, param2, make_map(param2, symp, std::move(comp2)),
                            std::move(open2));
  return lift;
}

ConditionReport check_symplectic_conditions(const KSymplectic& ks, const InfAction& act,
                                            const IsotropyReport& iso, const Momentum& j,
                                            const CoadjointValue& mu, const LevelSet& level,
                                            const std::vector<Point>& param_samples,
                                            const Bindings& b) {
  auto kk_at = [&](int a, const Point& p) {
    return single_form_kernel(ks.omega.comp[a], p, b);
  };
  return condition_worker(ks.k(), kk_at, act, iso, j, mu, level, param_samples, b);
}

bool condition_reports_agree(const ConditionReport& contact, const ConditionReport& symp) {
  if (contact.samples.size() != symp.samples.size()) return false;
  for (size_t i = 0; i < contact.samples.size(); ++i) {
    if (contact.samples[i].eq1 != symp.samples[i].eq1) return false;
    if (contact.samples[i].eq2 != symp.samples[i].eq2) return false;
  }
  return contact.aborted == symp.aborted;
}

StructureReport check_kernel_identity(const KContact& kc, const InfAction& act,
                                      const Subspace& reduction_algebra,
                                      const LevelSet& level,
                                      const std::vector<Point>& param_samples,
                                      const Bindings& b) {
  StructureReport rep;
  rep.subject = "kernel identity";
  VForm ieta = pullback(level.embed, kc.eta);
  VForm ideta = pullback(level.embed, kc.deta);
  int pdim = level.param_chart->dim();

  for (const Point& u : param_samples) {
    PointCheck pc;
    pc.point = u;
    Subspace kern = intersect(kernel_at(ieta, u, b), kernel_at(ideta, u, b));

    Point x = embed_point(level, u, b);
    RatMat ti = jacobian_at(level.embed, u, b);
    RatMat pulled;
    bool tangent = true;
    for (const RatVec& xi : reduction_algebra.basis) {
      RatVec v = vf_at(act.field_of(xi), x, b);
      auto w = solve_linear(ti, v);
      if (!w) {
        tangent = false;
        break;
      }
      pulled.push_back(*w);
    }
    if (!tangent) {
      pc.pass = false;
      pc.witness = "orbit direction is not tangent to the level set";
      rep.pass = false;
      rep.points.push_back(pc);
      continue;
    }
    Subspace orbit = make_subspace(std::move(pulled), pdim);
    pc.ranks["kernel"] = kern.rank();
    pc.ranks["orbit"] = orbit.rank();
    if (!subspace_equal(kern, orbit)) {
      pc.pass = false;
      pc.witness = "ker i*η ∩ ker i*dη ≠ orbit tangent (ranks " +
                   std::to_string(kern.rank()) + " vs " + std::to_string(orbit.rank()) + ")";
      rep.pass = false;
    }
    rep.points.push_back(pc);
  }
  return rep;
}

StructureReport check_contact_lemma(const KContact& kc, const InfAction& act,
                                    const IsotropyReport& iso, const Momentum& j,
                                    const CoadjointValue& mu, const LevelSet& level,
                                    const std::vector<Point>& param_samples,
                                    const Bindings& b) {
  StructureReport rep;
  rep.subject = "orbit and level tangency identities";
  int n = act.g->n;
  for (const Point& u : param_samples) {
    Point x = embed_point(level, u, b);
    PointCheck pc;
    pc.point = u;

    Subspace t_lev = tangent_level_set(j, mu, x, b);
    Subspace o_full = orbit_tangent(act, full_space(n), x, b);
    Subspace o_ray = orbit_tangent(act, iso.ray, x, b);
    pc.ranks["T_level"] = t_lev.rank();
    pc.ranks["orbit_full"] = o_full.rank();
    pc.ranks["orbit_ray"] = o_ray.rank();

    if (!subspace_equal(o_ray, intersect(o_full, t_lev))) {
      pc.pass = false;
      pc.witness = "T(G_[μ]x) ≠ T(Gx) ∩ T(level)";
    }
    Subspace w = intersect(o_full, kernel_at(kc.eta, x, b));
    if (pc.pass && !subspace_equal(t_lev, orthogonal_deta(kc, w, x, b))) {
      pc.pass = false;
      pc.witness = "T(level) ≠ (T(Gx) ∩ ker η)^⊥dη";
    }
    if (!pc.pass) rep.pass = false;
    rep.points.push_back(pc);
  }
  return rep;
}

StructureReport check_ksymplectic_level_lemma(const KSymplectic& ks, const InfAction& act,
                                              const Momentum& j, const CoadjointValue& mu,
                                              const std::vector<Point>& fixed_samples,
                                              const std::vector<Point>& ray_samples,
                                              const Bindings& b) {
  StructureReport rep;
  rep.subject = "momentum level orthogonality";
  int n = act.g->n;
  int dim = ks.chart->dim();

  for (const Point& p : fixed_samples) {
    PointCheck pc;
    pc.point = p;
    RatMat rows;
    for (int a = 0; a < j.k; ++a)
      for (int i = 0; i < j.n; ++i) {
        if (evaluate(j.entries[a][i], p, b) != mu.rows[a][i])
          throw InternalError("level lemma: sample is not on the fixed momentum level");
        rows.push_back(gradient_at(j.entries[a][i], ks.chart, p, b));
      }
    Subspace t_lev = make_subspace(nullspace(rows, dim), dim);
    Subspace perp = orthogonal_k(ks, orbit_tangent(act, full_space(n), p, b), p, b);
    pc.ranks["T_level"] = t_lev.rank();
    pc.ranks["orbit_perp"] = perp.rank();
    if (!subspace_equal(t_lev, perp)) {
      pc.pass = false;
      pc.witness = "T(J⁻¹(μ)) ≠ (T(Gp))^⊥ (ranks " + std::to_string(t_lev.rank()) + " vs " +
                   std::to_string(perp.rank()) + ")";
      rep.pass = false;
    }
    rep.points.push_back(pc);
  }
  rep.notes.push_back("fixed-value level tangent = orbit orthogonal at " +
                      std::to_string(fixed_samples.size()) + " samples");

  if (ks.k() == 1 && !mu.zero_row(0) && ks.theta) {
    for (const Point& p : ray_samples) {
      PointCheck pc;
      pc.point = p;
      Subspace t_ray = tangent_level_set(j, mu, p, b);
      Subspace w = intersect(orbit_tangent(act, full_space(n), p, b),
                             kernel_at(*ks.theta, p, b));
      Subspace perp = orthogonal_k(ks, w, p, b);
      pc.ranks["T_ray_level"] = t_ray.rank();
      pc.ranks["theta_kernel_perp"] = perp.rank();
      if (!subspace_equal(t_ray, perp)) {
        pc.pass = false;
        pc.witness = "T(J⁻¹(ℝ^×μ)) ≠ (T(Gp) ∩ ker Θ)^⊥ (ranks " +
                     std::to_string(t_ray.rank()) + " vs " + std::to_string(perp.rank()) + ")";
        rep.pass = false;
      }
      rep.points.push_back(pc);
    }
    rep.notes.push_back("ray level tangent = potential-kernel orthogonal at " +
                        std::to_string(ray_samples.size()) + " samples");
  } else if (!ray_samples.empty()) {
    rep.notes.push_back("ray comparison needs k = 1, a nonzero value and a potential; skipped");
  }
  return rep;
}

StructureReport verify_reduction(const QuotientPresentation& q, const KContact& kc,
                                 const InfAction* act, const Subspace* reduction_algebra,
                                 const std::vector<Point>& param_samples,
                                 const std::vector<Point>& reduced_samples,
                                 const Bindings& b) {
  StructureReport rep;
  rep.subject = "reduction";

  VForm ieta = pullback(q.level.embed, kc.eta);
  VForm peta = pullback(q.proj, q.eta_red);
  for (int a = 0; a < kc.k(); ++a)
    if (!form_equal(ieta.comp[a], peta.comp[a]))
      rep.fail_note("π*η_red ≠ i*η in component " + std::to_string(a + 1) + ": difference " +
                    to_string(form_sub(peta.comp[a], ieta.comp[a])));

  SmoothMap round = compose(q.section, q.proj);
  for (int i = 0; i < q.reduced->dim(); ++i)
    if (!expr_equal(round.comp[i], sym(q.reduced->coords[i])))
      rep.fail_note("proj ∘ section ≠ id at coordinate " + q.reduced->coords[i]);

  KContact rkc = make_kcontact(q.eta_red, {}, q.reduced_open);
  StructureReport sub = verify_kcontact(rkc, reduced_samples, b);
  for (PointCheck& pc : sub.points) rep.points.push_back(std::move(pc));
  if (!sub.pass)
    rep.fail_note("reduced structure fails verification: " + sub.first_witness());

  if (act != nullptr && reduction_algebra != nullptr) {
    int orbit_rank = -1;
    for (const Point& u : param_samples) {
      Point x = embed_point(q.level, u, b);
      int r = orbit_tangent(*act, *reduction_algebra, x, b).rank();
      if (orbit_rank < 0) {
        orbit_rank = r;
      } else if (r != orbit_rank) {
        rep.fail_note("non-free locus: orbit rank varies between level samples");
        break;
      }
    }
    if (orbit_rank >= 0) {
      if (q.reduced->dim() != q.level.param_chart->dim() - orbit_rank)
        rep.fail_note("dimension audit failed: dim reduced = " +
                      std::to_string(q.reduced->dim()) + ", level dim - orbit rank = " +
                      std::to_string(q.level.param_chart->dim() - orbit_rank));
      if (orbit_rank < reduction_algebra->rank())
        rep.notes.push_back("reduction subalgebra acts with isotropy: orbit rank " +
                            std::to_string(orbit_rank) + " < dim " +
                            std::to_string(reduction_algebra->rank()));
    }
  }
  return rep;
}

StructureReport verify_reduction_ksymplectic(const QuotientPresentation& q, const VForm& theta,
                                             const std::vector<Point>& reduced_samples,
                                             const Bindings& b) {
  StructureReport rep;
  rep.subject = "k-symplectic reduction";

  VForm itheta = pullback(q.level.embed, theta);
  VForm ptheta = pullback(q.proj, q.eta_red);
  for (int a = 0; a < theta.k(); ++a)
    if (!form_equal(itheta.comp[a], ptheta.comp[a]))
      rep.fail_note("π*Θ_red ≠ i*Θ in component " + std::to_string(a + 1));

  KSymplectic rks = make_ksymplectic(d(q.eta_red), q.eta_red, q.reduced_open);
  StructureReport sub = verify_ksymplectic(rks, reduced_samples, b);
  for (PointCheck& pc : sub.points) rep.points.push_back(std::move(pc));
  if (!sub.pass)
    rep.fail_note("reduced structure fails verification: " + sub.first_witness());
  return rep;
}

PushResult push_through_quotient(const QuotientPresentation& q, const VectorField& x) {
  PushResult res;
  int pdim = q.level.param_chart->dim();

  std::vector<std::vector<Expr>> ti = jacobian(q.level.embed);
  std::vector<Expr> rhs;
  for (const Expr& e : x.comp) rhs.push_back(pullback_expr(q.level.embed, e));
  SymSolveResult sol = solve_linear_symbolic(ti, rhs);
  if (!sol.ok) {
    res.ok = res.tangent = false;
    res.witness = "field is not tangent to the level set";
    return res;
  }
  if (!sol.kernel.empty()) {
    res.ok = res.tangent = false;
    res.witness = "level embedding is not an immersion";
    return res;
  }

  std::vector<std::vector<Expr>> pj = jacobian(q.proj);
  SmoothMap fiber = compose(q.proj, q.section);  // σ ∘ π on the level chart
  std::vector<Expr> reduced_comp;
  for (int jdx = 0; jdx < q.reduced->dim(); ++jdx) {
    std::vector<Expr> terms;
    for (int m = 0; m < pdim; ++m) terms.push_back(pj[jdx][m] * sol.sol[m]);
    Expr w = add(std::move(terms));
    if (!expr_equal(pullback_expr(fiber, w), w)) {
      res.ok = false;
      res.witness = "pushed field is not constant on fibers (component " +
                    q.reduced->coords[jdx] + ")";
      return res;
    }
    reduced_comp.push_back(pullback_expr(q.section, w));
  }
  res.field = make_vf(q.reduced, std::move(reduced_comp));
  return res;
}

StructureReport reduced_reeb_consistency(const QuotientPresentation& q, const KContact& kc,
                                         const std::vector<VectorField>& parent_reeb) {
  StructureReport rep;
  rep.subject = "reduced Reeb consistency";
  KContact rkc = make_kcontact(q.eta_red, {}, q.reduced_open);
  std::vector<VectorField> rr;
  try {
    rr = solve_reeb(rkc);
  } catch (const InternalError& e) {
    rep.fail_note(std::string("reduced Reeb solve failed: ") + e.what());
    return rep;
  }
  for (int a = 0; a < kc.k(); ++a) {
    PushResult pr = push_through_quotient(q, parent_reeb[a]);
    if (!pr.ok) {
      rep.fail_note("Reeb field " + std::to_string(a + 1) +
                    " does not descend: " + pr.witness);
      continue;
    }
    for (int i = 0; i < q.reduced->dim(); ++i)
      if (!expr_equal(pr.field.comp[i], rr[a].comp[i]))
        rep.fail_note("pushed Reeb field " + std::to_string(a + 1) +
                      " ≠ reduced Reeb field at component " + q.reduced->coords[i] + ": " +
                      to_string(pr.field.comp[i]) + " vs " + to_string(rr[a].comp[i]));
  }
  return rep;
}

ProbeReport probe_reduction_group(const KSymplectic& ks, const InfAction& act,
                                  const Momentum& j, const CoadjointValue& mu,
                                  const IsotropyReport& iso,
                                  const std::vector<Point>& level_samples,
                                  bool base_is_contact, const Bindings& b) {
  ProbeReport rep;
  for (const Point& p : level_samples) {
    ProbeSample ps;
    ps.point = p;
    Subspace v = tangent_level_set(j, mu, p, b);
    Subspace kern = intersect(v, orthogonal_k(ks, v, p, b));
    Subspace o_fix = orbit_tangent(act, iso.k_fix, p, b);
    Subspace o_ray = orbit_tangent(act, iso.k_ray, p, b);

    ps.dim_level = v.rank();
    ps.rank_kernel = kern.rank();
    ps.rank_fix_orbit = o_fix.rank();
    ps.rank_ray_orbit = o_ray.rank();
    ps.kernel_is_ray_orbit = subspace_equal(kern, o_ray);
    ps.fix_orbit_strictly_smaller =
        subspace_contains(kern, o_fix) && o_fix.rank() < kern.rank();
    if (!ps.kernel_is_ray_orbit) rep.pass = false;
    rep.samples.push_back(ps);
  }
  if (rep.samples.empty()) return rep;

  const ProbeSample& s0 = rep.samples.front();
  bool uniform = true;
  for (const ProbeSample& s : rep.samples)
    uniform = uniform && s.dim_level == s0.dim_level && s.rank_kernel == s0.rank_kernel &&
              s.rank_fix_orbit == s0.rank_fix_orbit && s.rank_ray_orbit == s0.rank_ray_orbit;
  if (!uniform) {
    rep.notes.push_back("ranks vary between samples; no uniform quotient dimensions");
    return rep;
  }

  auto parity = [](int d) { return d % 2 == 1 ? std::string("odd") : std::string("even"); };
  int q_ray = s0.dim_level - s0.rank_ray_orbit;
  int q_fix = s0.dim_level - s0.rank_fix_orbit;
  rep.notes.push_back("quotient by ray subalgebra orbits: dim " + std::to_string(q_ray));
  rep.notes.push_back("quotient by isotropy subalgebra orbits: dim " + std::to_string(q_fix));
  if (base_is_contact) {
    int bq_ray = q_ray - 1, bq_fix = q_fix - 1;
    rep.notes.push_back("base quotient by ray subalgebra: dim " + std::to_string(bq_ray) +
                        " (" + parity(bq_ray) + ")");
    rep.notes.push_back("base quotient by isotropy subalgebra: dim " + std::to_string(bq_fix) +
                        " (" + parity(bq_fix) + ")" +
                        (bq_fix % 2 == 0 ? ", cannot carry a contact structure" : ""));
  }
  return rep;
}

}  // namespace geo
