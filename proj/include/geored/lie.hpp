#pragma once

#include "geored/structures.hpp"

namespace geo {

// Lie algebra by structure constants: [e_i, e_j] = c[i][j][m] e_m.
// Antisymmetry and the Jacobi identity are verified at construction.
struct LieAlgebra {
  int n = 0;
  std::vector<std::string> basis;
  std::vector<std::vector<std::vector<Rat>>> c;
  RatVec bracket(const RatVec& a, const RatVec& b) const;
  int index_of(const std::string& name) const;
};
using LieAlgebraPtr = std::shared_ptr<const LieAlgebra>;

LieAlgebraPtr make_lie_algebra(std::vector<std::string> basis,
                               const std::map<std::pair<int, int>, RatVec>& brackets);

RatVec ad_star(const LieAlgebra& g, const RatVec& xi, const RatVec& mu);

// Fundamental vector fields of a (left or right) action; sigma is the sign in
// [xi_M, nu_M] = sigma * [xi, nu]_M (-1: anti-homomorphism, the default).
struct InfAction {
  LieAlgebraPtr g;
  ChartPtr chart;
  std::vector<VectorField> fund;
  int sigma = -1;
  VectorField field_of(const RatVec& xi) const;
};

StructureReport check_infaction(const InfAction& act);

struct Momentum {
  ChartPtr chart;
  int k = 0, n = 0;
  std::vector<std::vector<Expr>> entries;  // entries[alpha][i] = <J_alpha, e_i>
};

Momentum momentum_from_action(const InfAction& act, const KContact& kc);
Momentum momentum_from_theta(const InfAction& act, const VForm& theta);
Momentum extend_momentum(const Momentum& j, const ChartPtr& symp_chart);

struct CoadjointValue {
  int k = 0, n = 0;
  RatMat rows;  // rows[alpha] = mu^alpha
  bool zero_row(int alpha) const;
};

struct IsotropyReport {
  // per-alpha subspaces of the Lie algebra
  std::vector<Subspace> ker_row, fix_row, ray_row, kred_row;
  // intersections over alpha
  Subspace ker, fix, ray, k_fix, k_ray;  // k_fix = ker ∩ fix, k_ray = ker ∩ ray
  std::vector<bool> willett;
  bool k_ray_closed = true;
};

IsotropyReport isotropy(const LieAlgebra& g, const CoadjointValue& mu);
bool willett_condition(const LieAlgebra& g, const RatVec& mu);
StructureReport check_invariance(const InfAction& act, const VForm& eta);
StructureReport check_equivariance_inf(const Momentum& j, const InfAction& act);

}  // namespace geo
