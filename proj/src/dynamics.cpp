#include "geored/dynamics.hpp"

#include "geored/normal_form.hpp"

#include <cmath>
#include <sstream>

namespace geo {

namespace {

Expr twoform_entry(const Form& f, int c, int m) {
  if (c == m) return num(0);
  auto it = f.coef.find(c < m ? std::vector<int>{c, m} : std::vector<int>{m, c});
  if (it == f.coef.end()) return num(0);
  return c < m ? it->second : num(-1) * it->second;
}

Expr oneform_entry(const Form& f, int c) {
  auto it = f.coef.find(std::vector<int>{c});
  return it == f.coef.end() ? num(0) : it->second;
}

struct ShapeIndex {
  int n = 0, k = 0;
  std::vector<int> qi;                 // chart index of q^i
  std::vector<std::vector<int>> pi;    // chart index of p[i][a]
  std::vector<int> zi;                 // chart index of z^a
};

ShapeIndex index_shape(const ChartPtr& chart, const DarbouxShape& shape) {
  ShapeIndex ix;
  ix.n = (int)shape.q.size();
  ix.k = ix.n > 0 ? (int)shape.p[0].size() : (int)shape.z.size();
  if ((int)shape.p.size() != ix.n)
    throw ChartError("darboux layout: p rows do not match q list");
  for (const std::string& c : shape.q) ix.qi.push_back(chart->coord_index(c));
  for (const auto& row : shape.p) {
    if ((int)row.size() != ix.k)
      throw ChartError("darboux layout: ragged p rows");
    std::vector<int> r;
    for (const std::string& c : row) r.push_back(chart->coord_index(c));
    ix.pi.push_back(std::move(r));
  }
  for (const std::string& c : shape.z) ix.zi.push_back(chart->coord_index(c));
  if (!shape.z.empty() && (int)shape.z.size() != ix.k)
    throw ChartError("darboux layout: z list does not match the p columns");
  return ix;
}

// Resolves one constraint group sum(slots) = total: unassigned slots default
// to zero except the last, which absorbs the remainder; a fully assigned
// group must already satisfy the constraint.
void resolve_group(std::vector<Expr*> slots, const std::vector<bool>& assigned,
                   const Expr& total, const std::string& what) {
  int last_free = -1;
  std::vector<Expr> fixed;
  for (size_t i = 0; i < slots.size(); ++i) {
    if (assigned[i]) fixed.push_back(*slots[i]);
    else last_free = (int)i;
  }
  if (last_free < 0) {
    if (!expr_equal(add(fixed), total))
      throw GaugeError("inconsistent gauge assignment for " + what);
    return;
  }
  std::vector<Expr> terms{total};
  for (Expr& e : fixed) terms.push_back(num(-1) * e);
  *slots[last_free] = add(std::move(terms));
}

HamKVF solve_darboux(const ChartPtr& chart, int k, const Expr& h, const DarbouxShape& shape,
                     const GaugeAssignment& gauge, bool contact) {
  ShapeIndex ix = index_shape(chart, shape);
  if (ix.k != k) throw ChartError("darboux layout: wrong number of form components");
  int dim = chart->dim();

  std::vector<std::vector<Expr>> comp(k, std::vector<Expr>(dim, num(0)));
  std::vector<std::vector<bool>> assigned(k, std::vector<bool>(dim, false));
  for (const auto& [key, e] : gauge.slots) {
    auto [a, cname] = key;
    if (a < 0 || a >= k) throw GaugeError("gauge slot field index out of range");
    int c = chart->coord_index(cname);
    for (int i = 0; i < ix.n; ++i)
      if (c == ix.qi[i])
        throw GaugeError("gauge slot " + cname + " is determined by the equations");
    comp[a][c] = e;
    assigned[a][c] = true;
  }

  // (X_a)^{q_i} = dh/dp_i^a is forced.
  for (int a = 0; a < k; ++a)
    for (int i = 0; i < ix.n; ++i)
      comp[a][ix.qi[i]] = differentiate(h, chart->coords[ix.pi[i][a]], *chart);

  // Per-q group: sum_a (X_a)^{p_i^a} = -(dh/dq_i + sum_a p_i^a dh/dz^a).
  for (int i = 0; i < ix.n; ++i) {
    std::vector<Expr> terms{num(-1) * differentiate(h, shape.q[i], *chart)};
    if (contact)
      for (int a = 0; a < k; ++a)
        terms.push_back(num(-1) * sym(shape.p[i][a]) *
                        differentiate(h, shape.z[a], *chart));
    std::vector<Expr*> slots;
    std::vector<bool> flag;
    for (int a = 0; a < k; ++a) {
      slots.push_back(&comp[a][ix.pi[i][a]]);
      flag.push_back(assigned[a][ix.pi[i][a]]);
    }
    resolve_group(std::move(slots), flag, add(std::move(terms)), "momenta of " + shape.q[i]);
  }

  // z group: sum_a (X_a)^{z^a} = sum p dh/dp - h.
  if (contact) {
    std::vector<Expr> terms{num(-1) * h};
    for (int i = 0; i < ix.n; ++i)
      for (int a = 0; a < k; ++a)
        terms.push_back(sym(shape.p[i][a]) *
                        differentiate(h, shape.p[i][a], *chart));
    std::vector<Expr*> slots;
    std::vector<bool> flag;
    for (int a = 0; a < k; ++a) {
      slots.push_back(&comp[a][ix.zi[a]]);
      flag.push_back(assigned[a][ix.zi[a]]);
    }
    resolve_group(std::move(slots), flag, add(std::move(terms)), "the z components");
  }

  HamKVF out;
  std::vector<VectorField> fields;
  for (int a = 0; a < k; ++a) fields.push_back(make_vf(chart, std::move(comp[a])));
  out.x = make_kvf(std::move(fields));
  out.gauge_dim = k * dim - k * ix.n - ix.n - (contact ? 1 : 0);
  return out;
}

// Coefficient-matching system for the general (non-Darboux) path. Unknowns
// are the k*dim field components in field-major order.
HamKVF solve_general(const ChartPtr& chart, const VForm& one, const VForm& two,
                     const std::vector<Expr>& rhs1, const Expr& rhs2, bool contact) {
  int k = two.k(), dim = chart->dim();
  std::vector<std::vector<Expr>> a;
  std::vector<Expr> b;
  for (int m = 0; m < dim; ++m) {
    std::vector<Expr> row(k * dim, num(0));
    for (int al = 0; al < k; ++al)
      for (int c = 0; c < dim; ++c) row[al * dim + c] = twoform_entry(two.comp[al], c, m);
    a.push_back(std::move(row));
    b.push_back(rhs1[m]);
  }
  if (contact) {
    std::vector<Expr> row(k * dim, num(0));
    for (int al = 0; al < k; ++al)
      for (int c = 0; c < dim; ++c) row[al * dim + c] = oneform_entry(one.comp[al], c);
    a.push_back(std::move(row));
    b.push_back(rhs2);
  }

  SymSolveResult sol = solve_linear_symbolic(std::move(a), std::move(b));
  if (!sol.ok) throw InternalError("field equations are inconsistent: " + sol.note);

  HamKVF out;
  std::vector<VectorField> fields;
  for (int al = 0; al < k; ++al) {
    std::vector<Expr> comp(sol.sol.begin() + al * dim, sol.sol.begin() + (al + 1) * dim);
    fields.push_back(make_vf(chart, std::move(comp)));
  }
  out.x = make_kvf(std::move(fields));
  out.gauge_dim = (int)sol.kernel.size();
  out.certified = sol.certified;
  if (!sol.note.empty()) out.notes.push_back(sol.note);
  if (out.gauge_dim > 0)
    out.notes.push_back("gauge freedom of dimension " + std::to_string(out.gauge_dim) +
                        "; returning the pivot solution");
  return out;
}

}  // namespace

VForm darboux_eta(const ChartPtr& chart, const DarbouxShape& shape) {
  ShapeIndex ix = index_shape(chart, shape);
  std::vector<Form> comp;
  for (int a = 0; a < ix.k; ++a) {
    Form f = coord_diff(chart, ix.zi[a]);
    for (int i = 0; i < ix.n; ++i)
      f = form_sub(f, form_scale(sym(shape.p[i][a]), coord_diff(chart, ix.qi[i])));
    comp.push_back(std::move(f));
  }
  return make_vform(std::move(comp));
}

HamKVF solve_hdw_contact(const KContact& kc, const Expr& h, const DarbouxShape* shape,
                         const GaugeAssignment& gauge) {
  if (shape != nullptr) return solve_darboux(kc.chart, kc.k(), h, *shape, gauge, true);
  if (!gauge.slots.empty())
    throw GaugeError("gauge slots need a darboux layout");
  std::vector<VectorField> reeb = solve_reeb(kc);
  std::vector<Expr> rhs1;
  Form dh = d(scalar_form(kc.chart, h));
  Form diss = zero_form(kc.chart, 1);
  for (int a = 0; a < kc.k(); ++a)
    diss = form_add(diss, form_scale(apply_vf(reeb[a], h), kc.eta.comp[a]));
  Form r1 = form_sub(dh, diss);
  for (int m = 0; m < kc.chart->dim(); ++m) rhs1.push_back(oneform_entry(r1, m));
  return solve_general(kc.chart, kc.eta, kc.deta, rhs1, num(-1) * h, true);
}

HamKVF solve_hdw_ksymplectic(const KSymplectic& ks, const Expr& h) {
  Form dh = d(scalar_form(ks.chart, h));
  std::vector<Expr> rhs1;
  for (int m = 0; m < ks.chart->dim(); ++m) rhs1.push_back(oneform_entry(dh, m));
  return solve_general(ks.chart, ks.omega, ks.omega, rhs1, num(0), false);
}

StructureReport verify_hdw(const KContact& kc, const Expr& h, const KVectorField& x,
                           const DarbouxShape* shape) {
  StructureReport rep;
  rep.subject = "field equations";
  std::vector<VectorField> reeb = solve_reeb(kc);

  auto [fdeta, feta] = flat_eta(kc, x);
  Form rhs = d(scalar_form(kc.chart, h));
  for (int a = 0; a < kc.k(); ++a)
    rhs = form_sub(rhs, form_scale(apply_vf(reeb[a], h), kc.eta.comp[a]));
  bool geo_ok = form_equal(fdeta, rhs);
  if (!geo_ok)
    rep.fail_note("Σ ι_X dη ≠ dh - (R h) η: difference " + to_string(form_sub(fdeta, rhs)));
  if (!expr_equal(feta, num(-1) * h)) {
    geo_ok = false;
    rep.fail_note("Σ ι_X η ≠ -h: got " + to_string(feta));
  }

  if (shape != nullptr) {
    ShapeIndex ix = index_shape(kc.chart, *shape);
    bool coord_ok = true;
    for (int a = 0; a < kc.k(); ++a)
      for (int i = 0; i < ix.n; ++i)
        if (!expr_equal(x.comp[a].comp[ix.qi[i]],
                        differentiate(h, shape->p[i][a], *kc.chart)))
          coord_ok = false;
    for (int i = 0; i < ix.n; ++i) {
      std::vector<Expr> lhs, neg;
      neg.push_back(num(-1) * differentiate(h, shape->q[i], *kc.chart));
      for (int a = 0; a < kc.k(); ++a) {
        lhs.push_back(x.comp[a].comp[ix.pi[i][a]]);
        neg.push_back(num(-1) * sym(shape->p[i][a]) *
                      differentiate(h, shape->z[a], *kc.chart));
      }
      if (!expr_equal(add(std::move(lhs)), add(std::move(neg)))) coord_ok = false;
    }
    {
      std::vector<Expr> lhs, rhsz{num(-1) * h};
      for (int a = 0; a < kc.k(); ++a) {
        lhs.push_back(x.comp[a].comp[ix.zi[a]]);
        for (int i = 0; i < ix.n; ++i)
          rhsz.push_back(sym(shape->p[i][a]) *
                         differentiate(h, shape->p[i][a], *kc.chart));
      }
      if (!expr_equal(add(std::move(lhs)), add(std::move(rhsz)))) coord_ok = false;
    }
    if (coord_ok != geo_ok)
      rep.fail_note("geometric and coordinate formulations disagree");
    else if (!coord_ok)
      rep.fail_note("coordinate field equations fail");
    else
      rep.notes.push_back("geometric and coordinate formulations agree");
  }
  return rep;
}

StructureReport verify_hdw_ksymplectic(const KSymplectic& ks, const Expr& h,
                                       const KVectorField& x) {
  StructureReport rep;
  rep.subject = "field equations";
  Form fl = flat_omega(ks, x);
  Form rhs = d(scalar_form(ks.chart, h));
  if (!form_equal(fl, rhs))
    rep.fail_note("Σ ι_X ω ≠ dh: difference " + to_string(form_sub(fl, rhs)));
  return rep;
}

StructureReport integrability_check(const KVectorField& x) {
  StructureReport rep;
  rep.subject = "integrability";
  for (int a = 0; a < x.k(); ++a)
    for (int c = a + 1; c < x.k(); ++c) {
      VectorField br = lie_bracket(x.comp[a], x.comp[c]);
      for (int i = 0; i < (int)br.comp.size(); ++i)
        if (!is_zero(br.comp[i])) {
          rep.fail_note("[X_" + std::to_string(a + 1) + ", X_" + std::to_string(c + 1) +
                        "] ≠ 0 at " + x.chart->coords[i] + ": " + to_string(br.comp[i]));
          break;
        }
    }
  if (rep.pass) rep.notes.push_back("fields commute pairwise");
  return rep;
}

ProjectedDynamics project_dynamics(const QuotientPresentation& q, const KContact& kc,
                                   const InfAction& act, const Subspace& reduction_algebra,
                                   const Expr& h, const KVectorField& x, const Bindings& b) {
  (void)b;
  ProjectedDynamics out;
  out.report.subject = "projected dynamics";
  out.h_red = num(0);
  if (kc.chart->name != q.level.parent->name || x.chart->name != kc.chart->name)
    throw ChartError("project_dynamics: structure, dynamics and level set charts disagree");

  for (const RatVec& xi : reduction_algebra.basis) {
    VectorField xim = act.field_of(xi);
    for (int a = 0; a < x.k(); ++a) {
      VectorField br = lie_bracket(xim, x.comp[a]);
      bool global = true, on_level = true;
      for (const Expr& e : br.comp) {
        if (!is_zero(e)) global = false;
        if (!global && !is_zero(pullback_expr(q.level.embed, e))) {
          on_level = false;
          break;
        }
      }
      if (!on_level)
        out.report.fail_note("dynamics is not invariant: [ξ_M, X_" + std::to_string(a + 1) +
                             "] ≠ 0 on the level set");
      else if (!global)
        out.report.notes.push_back("invariance of X_" + std::to_string(a + 1) +
                                   " holds on the level set only");
    }
  }

  for (int a = 0; a < x.k(); ++a)
    for (const Expr& f : q.level.equalities)
      if (!is_zero(pullback_expr(q.level.embed, apply_vf(x.comp[a], f)))) {
        out.report.fail_note("X_" + std::to_string(a + 1) +
                             " is not tangent to the level set: X(" + to_string(f) + ") ≠ 0");
        break;
      }
  if (!out.report.pass) {
    out.ok = false;
    return out;
  }

  std::vector<VectorField> red;
  for (int a = 0; a < x.k(); ++a) {
    PushResult pr = push_through_quotient(q, x.comp[a]);
    if (!pr.ok) {
      out.report.fail_note("X_" + std::to_string(a + 1) + " does not descend: " + pr.witness);
      out.ok = false;
      return out;
    }
    red.push_back(pr.field);
  }
  out.reduced = make_kvf(std::move(red));

  Expr ih = pullback_expr(q.level.embed, h);
  SmoothMap fiber = compose(q.proj, q.section);
  if (!expr_equal(pullback_expr(fiber, ih), ih)) {
    out.report.fail_note("hamiltonian is not constant on the fibers of the projection");
    out.ok = false;
    return out;
  }
  out.h_red = pullback_expr(q.section, ih);
  if (!expr_equal(pullback_expr(q.proj, out.h_red), ih))
    out.report.fail_note("π*h_red ≠ i*h");

  KContact rkc = make_kcontact(q.eta_red, {}, q.reduced_open);
  StructureReport sub = verify_hdw(rkc, out.h_red, out.reduced);
  if (!sub.pass)
    out.report.fail_note("reduced dynamics fails the field equations: " + sub.first_witness());
  else
    out.report.notes.push_back("reduced dynamics satisfies the field equations");
  out.ok = out.report.pass;
  return out;
}

double eval_d(const Expr& e, const DPoint& p, const Bindings& b) {
  switch (e->k) {
    case EK::Num:
      return e->num.convert_to<double>();
    case EK::Sym: {
      auto it = p.find(e->name);
      if (it == p.end()) throw NameError("unbound symbol " + e->name);
      return it->second;
    }
    case EK::Add: {
      double s = 0;
      for (const Expr& c : e->ch) s += eval_d(c, p, b);
      return s;
    }
    case EK::Mul: {
      double s = 1;
      for (const Expr& c : e->ch) s *= eval_d(c, p, b);
      return s;
    }
    case EK::Pow:
      return std::pow(eval_d(e->ch[0], p, b), e->pw);
    case EK::App: {
      auto it = b.find(e->name);
      if (it == b.end()) throw NameError("unbound opaque symbol " + e->name);
      const OpaqueDef& def = it->second;
      if (def.formals.size() != e->ch.size())
        throw EvalError("opaque arity mismatch for " + e->name);
      Expr body = def.body;
      for (size_t i = 0; i < e->ords.size(); ++i)
        for (int r = 0; r < e->ords[i]; ++r) body = differentiate(body, def.formals[i]);
      DPoint q;
      for (size_t i = 0; i < def.formals.size(); ++i)
        q[def.formals[i]] = eval_d(e->ch[i], p, b);
      return eval_d(body, q, b);
    }
  }
  throw InternalError("eval_d: bad node");
}

std::vector<DPoint> flow_rk4(const VectorField& v, const DPoint& x0, double t_end, double dt,
                             const Bindings& b) {
  int dim = v.chart->dim();
  auto deriv = [&](const DPoint& s) {
    std::vector<double> out(dim);
    for (int i = 0; i < dim; ++i) out[i] = eval_d(v.comp[i], s, b);
    return out;
  };
  auto shift = [&](const DPoint& s, const std::vector<double>& k, double f) {
    DPoint t = s;
    for (int i = 0; i < dim; ++i) t[v.chart->coords[i]] += f * k[i];
    return t;
  };

  std::vector<DPoint> traj{x0};
  DPoint s = x0;
  long nsteps = std::lround(t_end / dt);
  for (long n = 0; n < nsteps; ++n) {
    auto k1 = deriv(s);
    auto k2 = deriv(shift(s, k1, dt / 2));
    auto k3 = deriv(shift(s, k2, dt / 2));
    auto k4 = deriv(shift(s, k3, dt));
    for (int i = 0; i < dim; ++i)
      s[v.chart->coords[i]] += dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    traj.push_back(s);
  }
  return traj;
}

}  // namespace geo
