#include "geored/structures.hpp"

#include "geored/normal_form.hpp"

#include <sstream>

namespace geo {

std::string StructureReport::first_witness() const {
  for (auto& n : notes)
    if (n.rfind("fail:", 0) == 0) return n.substr(5);
  for (auto& pc : points)
    if (!pc.pass) return pc.witness;
  return "";
}

void StructureReport::fail_note(const std::string& msg) {
  notes.push_back("fail:" + msg);
  pass = false;
}

KContact make_kcontact(VForm eta, std::vector<VectorField> polarization,
                       std::vector<Expr> open_conditions) {
  if (eta.degree != 1) throw ChartError("k-contact form must have degree 1");
  VForm deta = d(eta);
  return KContact{eta.chart, std::move(eta), std::move(deta), std::move(polarization),
                  std::move(open_conditions)};
}

KSymplectic make_ksymplectic(VForm omega, std::optional<VForm> theta,
                             std::vector<Expr> open_conditions) {
  if (omega.degree != 2) throw ChartError("k-symplectic form must have degree 2");
  return KSymplectic{omega.chart, std::move(omega), std::move(theta),
                     std::move(open_conditions), {}, {}};
}

namespace {

RatMat contraction_rows(const VForm& a, const Point& x, const Bindings& b) {
  RatMat rows;
  for (auto& f : a.comp) {
    if (a.degree == 1) {
      rows.push_back(oneform_at(f, x, b));
    } else {
      for (auto& r : twoform_matrix_at(f, x, b)) rows.push_back(r);
    }
  }
  return rows;
}

}  // namespace

Subspace kernel_at(const VForm& a, const Point& x, const Bindings& b) {
  if (a.degree != 1 && a.degree != 2)
    throw ChartError("kernel_at expects a degree 1 or 2 form");
  return make_subspace(nullspace(contraction_rows(a, x, b), a.chart->dim()),
                       a.chart->dim());
}

StructureReport verify_kcontact(const KContact& kc, const std::vector<Point>& samples,
                                const Bindings& b) {
  StructureReport rep;
  rep.subject = "kcontact";
  int dim = kc.chart->dim(), k = kc.k();

  for (auto& v : kc.polarization)
    for (int a = 0; a < k; ++a) {
      Form p = iota(v, kc.eta.comp[a]);
      if (!form_is_zero(p))
        rep.fail_note("polarization field leaves ker η (component " +
                      std::to_string(a + 1) + ")");
    }

  for (auto& x : samples) {
    PointCheck pc;
    pc.point = x;
    Subspace ke = kernel_at(kc.eta, x, b);
    Subspace kd = kernel_at(kc.deta, x, b);
    Subspace in = intersect(ke, kd);
    pc.ranks["ker_eta"] = ke.rank();
    pc.ranks["ker_deta"] = kd.rank();
    pc.ranks["intersection"] = in.rank();
    std::ostringstream w;
    if (ke.rank() != dim - k)
      w << "rank ker η = " << ke.rank() << " ≠ " << dim - k;
    else if (kd.rank() != k)
      w << "rank ker dη = " << kd.rank() << " ≠ " << k;
    else if (in.rank() != 0)
      w << "ker η ∩ ker dη ≠ 0 (rank " << in.rank() << ")";
    else if (ke.rank() == 0)
      w << "ker η = 0 (dim = k not allowed)";
    if (!kc.polarization.empty()) {
      RatMat pol;
      for (auto& v : kc.polarization) pol.push_back(vf_at(v, x, b));
      Subspace ps = make_subspace(pol, dim);
      RatMat with_brackets = ps.basis;
      for (size_t i = 0; i < kc.polarization.size(); ++i)
        for (size_t j = i + 1; j < kc.polarization.size(); ++j)
          with_brackets.push_back(
              vf_at(lie_bracket(kc.polarization[i], kc.polarization[j]), x, b));
      pc.ranks["polarization"] = ps.rank();
      if (w.str().empty() && rank_of(with_brackets) != ps.rank())
        w << "polarization not involutive";
    }
    pc.witness = w.str();
    pc.pass = pc.witness.empty();
    if (!pc.pass) rep.pass = false;
    rep.points.push_back(std::move(pc));
  }
  return rep;
}

StructureReport verify_ksymplectic(const KSymplectic& ks, const std::vector<Point>& samples,
                                   const Bindings& b) {
  StructureReport rep;
  rep.subject = "ksymplectic";
  VForm dw = d(ks.omega);
  for (int a = 0; a < ks.k(); ++a)
    if (!form_is_zero(dw.comp[a]))
      rep.fail_note("dω ≠ 0 (component " + std::to_string(a + 1) + ")");
  if (ks.theta) {
    VForm dt = d(*ks.theta);
    for (int a = 0; a < ks.k(); ++a)
      if (!form_equal(dt.comp[a], ks.omega.comp[a]))
        rep.fail_note("dΘ ≠ ω (component " + std::to_string(a + 1) + ")");
  }
  for (auto& x : samples) {
    PointCheck pc;
    pc.point = x;
    Subspace kw = kernel_at(ks.omega, x, b);
    pc.ranks["ker_omega"] = kw.rank();
    if (kw.rank() != 0) {
      std::ostringstream w;
      w << "rank ker ω = " << kw.rank() << " ≠ 0";
      pc.witness = w.str();
      pc.pass = false;
      rep.pass = false;
    }
    rep.points.push_back(std::move(pc));
  }
  return rep;
}

std::vector<VectorField> solve_reeb(const KContact& kc, std::string* note) {
  int dim = kc.chart->dim(), k = kc.k();
  std::vector<VectorField> reeb;
  for (int alpha = 0; alpha < k; ++alpha) {
    std::vector<std::vector<Expr>> a;
    std::vector<Expr> rhs;
    for (int beta = 0; beta < k; ++beta) {
      std::vector<Expr> row(dim, num(0));
      for (auto& [t, c] : kc.eta.comp[beta].coef) row[t[0]] = c;
      a.push_back(std::move(row));
      rhs.push_back(num(alpha == beta ? 1 : 0));
    }
    for (int beta = 0; beta < k; ++beta) {
      std::vector<std::vector<Expr>> m(dim, std::vector<Expr>(dim, num(0)));
      for (auto& [t, c] : kc.deta.comp[beta].coef) {
        m[t[0]][t[1]] = c;
        m[t[1]][t[0]] = -c;
      }
      for (int j = 0; j < dim; ++j) {
        std::vector<Expr> row(dim);
        for (int i = 0; i < dim; ++i) row[i] = m[i][j];
        a.push_back(std::move(row));
        rhs.push_back(num(0));
      }
    }
    SymSolveResult s = solve_linear_symbolic(std::move(a), std::move(rhs));
    if (!s.ok) throw InternalError("Reeb system inconsistent; structure is not k-contact");
    if (!s.kernel.empty()) throw InternalError("Reeb fields not unique; structure is not k-contact");
    if (!s.certified && note) *note = "pointwise only";
    reeb.push_back(make_vf(kc.chart, std::move(s.sol)));
  }
  for (int alpha = 0; alpha < k; ++alpha) {
    for (int beta = 0; beta < k; ++beta) {
      Form pe = iota(reeb[alpha], kc.eta.comp[beta]);
      Expr val = pe.coef.count({}) ? pe.coef.at({}) : num(0);
      if (!expr_equal(val, num(alpha == beta ? 1 : 0)))
        throw InternalError("Reeb verification failed: ι_Rη ≠ δ");
      if (!form_is_zero(iota(reeb[alpha], kc.deta.comp[beta])))
        throw InternalError("Reeb verification failed: ι_R dη ≠ 0");
    }
    for (int beta = alpha + 1; beta < k; ++beta) {
      VectorField br = lie_bracket(reeb[alpha], reeb[beta]);
      for (auto& c : br.comp)
        if (!is_zero(c)) throw InternalError("Reeb fields do not commute");
    }
  }
  return reeb;
}

ChartPtr symp_chart_of(const ChartPtr& base) {
  std::vector<std::string> coords{"s"};
  for (auto& c : base->coords) coords.push_back(c);
  return make_chart(base->name + "_symp", std::move(coords), base->params);
}

SmoothMap symp_projection(const ChartPtr& symp, const ChartPtr& base) {
  std::vector<Expr> comp;
  for (auto& c : base->coords) comp.push_back(sym(c));
  return make_map(symp, base, std::move(comp));
}

KSymplectic symplectize(const KContact& kc, const std::vector<VectorField>& reeb) {
  ChartPtr P = symp_chart_of(kc.chart);
  SmoothMap pr = symp_projection(P, kc.chart);
  VForm theta = vform_scale(sym("s"), pullback(pr, kc.eta));
  VForm omega = d(theta);
  int k = kc.k();

  KSymplectic ks = make_ksymplectic(omega, theta, {});
  ks.open_conditions.push_back(sym("s"));
  for (auto& c : kc.open_conditions) ks.open_conditions.push_back(pullback_expr(pr, c));

  for (auto& r : reeb) {
    std::vector<Expr> comp{num(0)};
    for (auto& c : r.comp) comp.push_back(pullback_expr(pr, c));
    ks.reeb_lift.push_back(make_vf(P, std::move(comp)));
  }
  std::vector<Expr> eul(P->dim(), num(0));
  eul[0] = sym("s");
  ks.euler = make_vf(P, std::move(eul));

  Form ds = coord_diff(P, 0);
  for (int alpha = 0; alpha < (int)ks.reeb_lift.size(); ++alpha)
    for (int beta = 0; beta < k; ++beta) {
      Form lhs = iota(ks.reeb_lift[alpha], omega.comp[beta]);
      Form rhs = form_scale(num(alpha == beta ? -1 : 0), ds);
      if (!form_equal(lhs, rhs))
        throw InternalError("symplectize: lifted Reeb relation failed");
    }
  for (int alpha = 0; alpha < k; ++alpha)
    if (!form_equal(iota(*ks.euler, omega.comp[alpha]), theta.comp[alpha]))
      throw InternalError("symplectize: Euler field relation failed");
  return ks;
}

std::pair<Form, Expr> flat_eta(const KContact& kc, const KVectorField& x) {
  if (x.k() != kc.k()) throw ChartError("flat map k mismatch");
  Form one = contract_kv(x, kc.deta);
  Form zero = contract_kv(x, kc.eta);
  Expr val = zero.coef.count({}) ? zero.coef.at({}) : num(0);
  return {std::move(one), std::move(val)};
}

Form flat_omega(const KSymplectic& ks, const KVectorField& x) {
  if (x.k() != ks.k()) throw ChartError("flat map k mismatch");
  return contract_kv(x, ks.omega);
}

namespace {

Subspace orthogonal_pairing(const std::vector<RatMat>& mats, const Subspace& w, int dim) {
  RatMat rows;
  for (auto& wv : w.basis)
    for (auto& m : mats) {
      RatVec row(dim, 0);
      for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i) row[j] += wv[i] * m[i][j];
      rows.push_back(std::move(row));
    }
  return make_subspace(nullspace(rows, dim), dim);
}

}  // namespace

Subspace orthogonal_deta(const KContact& kc, const Subspace& w, const Point& x,
                         const Bindings& b) {
  std::vector<RatMat> mats;
  for (auto& f : kc.deta.comp) mats.push_back(twoform_matrix_at(f, x, b));
  return orthogonal_pairing(mats, w, kc.chart->dim());
}

Subspace orthogonal_k(const KSymplectic& ks, const Subspace& w, const Point& x,
                      const Bindings& b) {
  std::vector<RatMat> mats;
  for (auto& f : ks.omega.comp) mats.push_back(twoform_matrix_at(f, x, b));
  return orthogonal_pairing(mats, w, ks.chart->dim());
}

}  // namespace geo
