#include "geored/lie.hpp"

#include "geored/normal_form.hpp"

#include <sstream>

namespace geo {

RatVec LieAlgebra::bracket(const RatVec& a, const RatVec& b) const {
  RatVec v(n, 0);
  for (int i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (b[j] == 0) continue;
      for (int m = 0; m < n; ++m) v[m] += a[i] * b[j] * c[i][j][m];
    }
  }
  return v;
}

int LieAlgebra::index_of(const std::string& name) const {
  for (int i = 0; i < n; ++i)
    if (basis[i] == name) return i;
  return -1;
}

LieAlgebraPtr make_lie_algebra(std::vector<std::string> basis,
                               const std::map<std::pair<int, int>, RatVec>& brackets) {
  auto g = std::make_shared<LieAlgebra>();
  g->n = (int)basis.size();
  g->basis = std::move(basis);
  g->c.assign(g->n, std::vector<RatVec>(g->n, RatVec(g->n, 0)));
  for (auto& [ij, v] : brackets) {
    auto [i, j] = ij;
    if (i < 0 || j < 0 || i >= g->n || j >= g->n || i == j)
      throw InternalError("bad bracket indices");
    if ((int)v.size() != g->n) throw InternalError("bad bracket coefficient count");
    for (int m = 0; m < g->n; ++m) {
      g->c[i][j][m] = v[m];
      g->c[j][i][m] = -v[m];
    }
  }
  for (int i = 0; i < g->n; ++i)
    for (int j = i + 1; j < g->n; ++j)
      for (int l = j + 1; l < g->n; ++l) {
        RatVec ei(g->n, 0), ej(g->n, 0), el(g->n, 0);
        ei[i] = 1;
        ej[j] = 1;
        el[l] = 1;
        RatVec s = g->bracket(g->bracket(ei, ej), el);
        RatVec t = g->bracket(g->bracket(ej, el), ei);
        RatVec u = g->bracket(g->bracket(el, ei), ej);
        for (int m = 0; m < g->n; ++m)
          if (s[m] + t[m] + u[m] != 0)
            throw InternalError("Jacobi identity fails for basis triple (" +
                                g->basis[i] + "," + g->basis[j] + "," + g->basis[l] + ")");
      }
  return g;
}

RatVec ad_star(const LieAlgebra& g, const RatVec& xi, const RatVec& mu) {
  RatVec v(g.n, 0);
  for (int j = 0; j < g.n; ++j)
    for (int i = 0; i < g.n; ++i) {
      if (xi[i] == 0) continue;
      for (int m = 0; m < g.n; ++m) v[j] += xi[i] * g.c[i][j][m] * mu[m];
    }
  return v;
}

VectorField InfAction::field_of(const RatVec& xi) const {
  std::vector<Expr> comp(chart->dim(), num(0));
  for (int i = 0; i < g->n; ++i) {
    if (xi[i] == 0) continue;
    for (int j = 0; j < chart->dim(); ++j)
      comp[j] = comp[j] + num(Rat(xi[i])) * fund[i].comp[j];
  }
  return VectorField{chart, std::move(comp)};
}

StructureReport check_infaction(const InfAction& act) {
  StructureReport rep;
  rep.subject = "action bracket convention";
  const LieAlgebra& g = *act.g;
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j) {
      VectorField lhs = lie_bracket(act.fund[i], act.fund[j]);
      std::vector<Expr> rhs(act.chart->dim(), num(0));
      for (int m = 0; m < g.n; ++m) {
        Rat coef = Rat(act.sigma) * g.c[i][j][m];
        if (coef == 0) continue;
        for (int l = 0; l < act.chart->dim(); ++l)
          rhs[l] = rhs[l] + num(coef) * act.fund[m].comp[l];
      }
      for (int l = 0; l < act.chart->dim(); ++l)
        if (!expr_equal(lhs.comp[l], rhs[l]))
          rep.fail_note("fundamental field bracket [" + g.basis[i] + "," + g.basis[j] +
                        "] mismatches sign convention at coordinate " +
                        act.chart->coords[l]);
    }
  return rep;
}

Momentum momentum_from_action(const InfAction& act, const KContact& kc) {
  if (act.chart->name != kc.chart->name) throw ChartError("momentum chart mismatch");
  Momentum j;
  j.chart = kc.chart;
  j.k = kc.k();
  j.n = act.g->n;
  for (int a = 0; a < j.k; ++a) {
    std::vector<Expr> row;
    for (int i = 0; i < j.n; ++i) {
      Form p = iota(act.fund[i], kc.eta.comp[a]);
      row.push_back(p.coef.count({}) ? p.coef.at({}) : num(0));
    }
    j.entries.push_back(std::move(row));
  }
  return j;
}

Momentum momentum_from_theta(const InfAction& act, const VForm& theta) {
  if (act.chart->name != theta.chart->name) throw ChartError("momentum chart mismatch");
  Momentum j;
  j.chart = theta.chart;
  j.k = theta.k();
  j.n = act.g->n;
  for (int a = 0; a < j.k; ++a) {
    std::vector<Expr> row;
    for (int i = 0; i < j.n; ++i) {
      Form p = iota(act.fund[i], theta.comp[a]);
      row.push_back(p.coef.count({}) ? p.coef.at({}) : num(0));
    }
    j.entries.push_back(std::move(row));
  }
  return j;
}

Momentum extend_momentum(const Momentum& j, const ChartPtr& symp_chart) {
  if (!symp_chart->has_coord("s"))
    throw NameError("missing s coordinate on symplectisation chart");
  Momentum out;
  out.chart = symp_chart;
  out.k = j.k;
  out.n = j.n;
  for (auto& row : j.entries) {
    std::vector<Expr> r;
    for (auto& e : row) r.push_back(sym("s") * e);
    out.entries.push_back(std::move(r));
  }
  return out;
}

bool CoadjointValue::zero_row(int alpha) const {
  for (auto& v : rows[alpha])
    if (v != 0) return false;
  return true;
}

namespace {

// rows j, cols i: entry (ad*_{e_i} mu)_j
RatMat adstar_matrix(const LieAlgebra& g, const RatVec& mu) {
  RatMat m(g.n, RatVec(g.n, 0));
  for (int j = 0; j < g.n; ++j)
    for (int i = 0; i < g.n; ++i)
      for (int l = 0; l < g.n; ++l) m[j][i] += g.c[i][j][l] * mu[l];
  return m;
}

RatMat ray_minor_rows(const RatMat& m, const RatVec& mu) {
  int n = (int)mu.size();
  RatMat rows;
  for (int j = 0; j < n; ++j)
    for (int l = j + 1; l < n; ++l) {
      RatVec row(n, 0);
      bool nonzero = false;
      for (int i = 0; i < n; ++i) {
        row[i] = m[j][i] * mu[l] - m[l][i] * mu[j];
        nonzero = nonzero || row[i] != 0;
      }
      if (nonzero) rows.push_back(std::move(row));
    }
  return rows;
}

}  // namespace

bool willett_condition(const LieAlgebra& g, const RatVec& mu) {
  RatMat ker = nullspace({mu}, g.n);
  RatMat fix = nullspace(adstar_matrix(g, mu), g.n);
  for (auto& r : fix) ker.push_back(r);
  return rank_of(ker) == g.n;
}

IsotropyReport isotropy(const LieAlgebra& g, const CoadjointValue& mu) {
  IsotropyReport rep;
  int n = g.n;
  RatMat ker_rows, fix_rows, ray_rows;
  for (int a = 0; a < mu.k; ++a) {
    const RatVec& row = mu.rows[a];
    RatMat m = adstar_matrix(g, row);
    RatMat minors = ray_minor_rows(m, row);
    rep.ker_row.push_back(make_subspace(nullspace({row}, n), n));
    rep.fix_row.push_back(make_subspace(nullspace(m, n), n));
    rep.ray_row.push_back(make_subspace(nullspace(minors, n), n));
    rep.kred_row.push_back(intersect(rep.ker_row.back(), rep.ray_row.back()));
    rep.willett.push_back(willett_condition(g, row));
    ker_rows.push_back(row);
    for (auto& r : m) fix_rows.push_back(r);
    for (auto& r : minors) ray_rows.push_back(r);
  }
  rep.ker = make_subspace(nullspace(ker_rows, n), n);
  rep.fix = make_subspace(nullspace(fix_rows, n), n);
  rep.ray = make_subspace(nullspace(ray_rows, n), n);

  // same subspaces via per-row intersections; the two routes must agree
  Subspace ker2 = full_space(n), fix2 = full_space(n), ray2 = full_space(n);
  for (int a = 0; a < mu.k; ++a) {
    ker2 = intersect(ker2, rep.ker_row[a]);
    fix2 = intersect(fix2, rep.fix_row[a]);
    ray2 = intersect(ray2, rep.ray_row[a]);
  }
  if (!subspace_equal(rep.ker, ker2) || !subspace_equal(rep.fix, fix2) ||
      !subspace_equal(rep.ray, ray2))
    throw InternalError("isotropy: intersection routes disagree");

  rep.k_fix = intersect(rep.ker, rep.fix);
  rep.k_ray = intersect(rep.ker, rep.ray);

  for (size_t i = 0; i < rep.k_ray.basis.size(); ++i)
    for (size_t j = i + 1; j < rep.k_ray.basis.size(); ++j)
      if (!subspace_member(rep.k_ray, g.bracket(rep.k_ray.basis[i], rep.k_ray.basis[j])))
        rep.k_ray_closed = false;
  return rep;
}

StructureReport check_invariance(const InfAction& act, const VForm& eta) {
  StructureReport rep;
  rep.subject = "action invariance";
  for (int i = 0; i < act.g->n; ++i)
    for (int a = 0; a < eta.k(); ++a) {
      Form lj = lie_derivative(act.fund[i], eta.comp[a]);
      if (!form_is_zero(lj))
        rep.fail_note("ℒ_{ξM} η ≠ 0 for " + act.g->basis[i] + ", component " +
                      std::to_string(a + 1) + ": " + to_string(lj));
    }
  return rep;
}

StructureReport check_equivariance_inf(const Momentum& j, const InfAction& act) {
  StructureReport rep;
  rep.subject = "momentum equivariance (infinitesimal)";
  const LieAlgebra& g = *act.g;
  for (int i = 0; i < g.n; ++i)
    for (int a = 0; a < j.k; ++a)
      for (int l = 0; l < g.n; ++l) {
        Expr lhs = apply_vf(act.fund[i], j.entries[a][l]);
        std::vector<Expr> terms;
        for (int m = 0; m < g.n; ++m) {
          Rat coef = Rat(act.sigma) * g.c[i][l][m];
          if (coef != 0) terms.push_back(num(coef) * j.entries[a][m]);
        }
        Expr rhs = add(std::move(terms));
        if (!expr_equal(lhs, rhs)) {
          std::ostringstream os;
          os << "T J_" << a + 1 << "(" << g.basis[i] << "M) ≠ σ·ad*_" << g.basis[i]
             << " J_" << a + 1 << " at entry " << g.basis[l];
          rep.fail_note(os.str());
        }
      }
  return rep;
}

}  // namespace geo
