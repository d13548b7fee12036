#pragma once

#include "geored/reduction.hpp"

namespace geo {

// Darboux-type chart layout: eta^a = dz^a - sum_i p[i][a] dq^i. An empty z
// list describes the k-symplectic layout omega^a = dq^i ∧ dp[i][a].
struct DarbouxShape {
  std::vector<std::string> q;
  std::vector<std::vector<std::string>> p;  // p[i][alpha]
  std::vector<std::string> z;
};

VForm darboux_eta(const ChartPtr& chart, const DarbouxShape& shape);

// Values for gauge slots, keyed by (field index, coordinate name). Field
// indices are zero-based.
struct GaugeAssignment {
  std::map<std::pair<int, std::string>, Expr> slots;
};

struct HamKVF {
  KVectorField x;
  int gauge_dim = 0;
  bool certified = true;
  std::vector<std::string> notes;
};

HamKVF solve_hdw_contact(const KContact& kc, const Expr& h, const DarbouxShape* shape,
                         const GaugeAssignment& gauge = {});
HamKVF solve_hdw_ksymplectic(const KSymplectic& ks, const Expr& h);

StructureReport verify_hdw(const KContact& kc, const Expr& h, const KVectorField& x,
                           const DarbouxShape* shape = nullptr);
StructureReport verify_hdw_ksymplectic(const KSymplectic& ks, const Expr& h,
                                       const KVectorField& x);

// Pairwise commutators; commuting fields admit joint flows.
StructureReport integrability_check(const KVectorField& x);

struct ProjectedDynamics {
  bool ok = true;
  StructureReport report;
  KVectorField reduced;
  Expr h_red;
};

ProjectedDynamics project_dynamics(const QuotientPresentation& q, const KContact& kc,
                                   const InfAction& act, const Subspace& reduction_algebra,
                                   const Expr& h, const KVectorField& x,
                                   const Bindings& b = {});

// Floating-point evaluation for numeric integration.
using DPoint = std::map<std::string, double>;
double eval_d(const Expr& e, const DPoint& p, const Bindings& b = {});

std::vector<DPoint> flow_rk4(const VectorField& v, const DPoint& x0, double t_end, double dt,
                             const Bindings& b = {});

}  // namespace geo
