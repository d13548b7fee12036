#pragma once

#include "geored/expr.hpp"

#include <optional>

namespace geo {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

RatMat rref(RatMat m);
int rank_of(const RatMat& m);
RatMat nullspace(const RatMat& m, int ncols);
std::optional<RatVec> solve_linear(RatMat a, RatVec b);
RatMat mat_mul(const RatMat& a, const RatMat& b);

// Row-span subspace of an ambient coordinate space. Basis rows are a reduced
// echelon basis, so equal subspaces have identical representations.
struct Subspace {
  RatMat basis;
  int ambient = 0;
  int rank() const { return (int)basis.size(); }
};

Subspace make_subspace(RatMat vectors, int ambient);
Subspace full_space(int n);
Subspace zero_space(int n);
Subspace span_sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);
bool subspace_equal(const Subspace& a, const Subspace& b);
bool subspace_contains(const Subspace& big, const Subspace& small);
bool subspace_member(const Subspace& s, const RatVec& v);
RatMat annihilator(const Subspace& s);

// Gaussian elimination with symbolic entries. Pivot zero-tests use the exact
// normal form; when only probabilistic pivots are available the result is
// marked uncertified ("pointwise only").
struct SymSolveResult {
  bool ok = false;
  bool certified = true;
  std::vector<Expr> sol;
  std::vector<std::vector<Expr>> kernel;
  std::string note;
};
SymSolveResult solve_linear_symbolic(std::vector<std::vector<Expr>> a, std::vector<Expr> b);

}  // namespace geo
