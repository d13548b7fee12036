#include "geored/linalg.hpp"

#include "geored/normal_form.hpp"

#include <algorithm>

namespace geo {

RatMat rref(RatMat m) {
  size_t rows = m.size();
  size_t cols = rows ? m[0].size() : 0;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rat inv = Rat(1) / m[r][c];
    for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  m.resize(r);
  return m;
}

int rank_of(const RatMat& m) { return (int)rref(m).size(); }

RatMat nullspace(const RatMat& m, int ncols) {
  RatMat r = rref(m);
  std::vector<int> pivot_col;
  for (auto& row : r) {
    int c = 0;
    while (c < ncols && row[c] == 0) ++c;
    pivot_col.push_back(c);
  }
  std::vector<bool> is_pivot(ncols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  RatMat basis;
  for (int f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    RatVec v(ncols, 0);
    v[f] = 1;
    for (size_t i = 0; i < r.size(); ++i) v[pivot_col[i]] = -r[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatVec> solve_linear(RatMat a, RatVec b) {
  size_t rows = a.size();
  size_t cols = rows ? a[0].size() : 0;
  for (size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
  RatMat r = rref(std::move(a));
  RatVec sol(cols, 0);
  for (auto& row : r) {
    size_t c = 0;
    while (c < cols && row[c] == 0) ++c;
    if (c == cols) {
      if (row[cols] != 0) return std::nullopt;
      continue;
    }
    sol[c] = row[cols];
  }
  return sol;
}

RatMat mat_mul(const RatMat& a, const RatMat& b) {
  size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
  RatMat r(n, RatVec(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
    }
  return r;
}

Subspace make_subspace(RatMat vectors, int ambient) {
  return Subspace{rref(std::move(vectors)), ambient};
}

Subspace full_space(int n) {
  RatMat id(n, RatVec(n, 0));
  for (int i = 0; i < n; ++i) id[i][i] = 1;
  return Subspace{std::move(id), n};
}

Subspace zero_space(int n) { return Subspace{{}, n}; }

Subspace span_sum(const Subspace& a, const Subspace& b) {
  RatMat all = a.basis;
  for (auto& r : b.basis) all.push_back(r);
  return make_subspace(std::move(all), a.ambient);
}

RatMat annihilator(const Subspace& s) { return nullspace(s.basis, s.ambient); }

Subspace intersect(const Subspace& a, const Subspace& b) {
  RatMat eqs = annihilator(a);
  for (auto& r : annihilator(b)) eqs.push_back(r);
  return make_subspace(nullspace(eqs, a.ambient), a.ambient);
}

bool subspace_equal(const Subspace& a, const Subspace& b) {
  int ra = a.rank(), rb = b.rank();
  if (ra != rb) return false;
  return span_sum(a, b).rank() == ra;
}

bool subspace_contains(const Subspace& big, const Subspace& small) {
  return span_sum(big, small).rank() == big.rank();
}

bool subspace_member(const Subspace& s, const RatVec& v) {
  RatMat m = s.basis;
  m.push_back(v);
  return rank_of(m) == s.rank();
}

namespace {

int expr_size(const Expr& e) {
  int n = 1;
  for (auto& c : e->ch) n += expr_size(c);
  return n;
}

}  // namespace

SymSolveResult solve_linear_symbolic(std::vector<std::vector<Expr>> a, std::vector<Expr> b) {
  size_t rows = a.size();
  size_t cols = rows ? a[0].size() : 0;
  SymSolveResult res;
  res.ok = true;
  for (size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);

  std::vector<int> pivot_of_col(cols, -1);
  std::vector<bool> row_used(rows, false);
  for (size_t c = 0; c < cols; ++c) {
    int best = -1, best_size = 0;
    bool best_certified = false;
    for (size_t i = 0; i < rows; ++i) {
      if (row_used[i]) continue;
      if (is_zero_lit(a[i][c])) continue;
      EqResult z = is_zero_ex(a[i][c]);
      if (z.equal) {
        if (!z.certified) res.certified = false;
        a[i][c] = num(0);
        continue;
      }
      int sz = expr_size(a[i][c]);
      bool better = best < 0 || (z.certified && !best_certified) ||
                    (z.certified == best_certified && sz < best_size);
      if (better) {
        best = (int)i;
        best_size = sz;
        best_certified = z.certified;
      }
    }
    if (best < 0) continue;
    if (!best_certified) {
      res.certified = false;
      res.note = "pointwise only";
    }
    row_used[best] = true;
    pivot_of_col[c] = best;
    Expr pinv = pow(a[best][c], -1);
    for (size_t i = 0; i < rows; ++i) {
      if ((int)i == best || is_zero_lit(a[i][c])) continue;
      Expr f = mul({a[i][c], pinv});
      for (size_t j = 0; j < cols + 1; ++j)
        a[i][j] = j == c ? num(0) : a[i][j] - f * a[best][j];
    }
  }

  for (size_t i = 0; i < rows; ++i) {
    if (row_used[i]) continue;
    EqResult z = is_zero_ex(a[i][cols]);
    if (!z.certified) res.certified = false;
    if (!z.equal) {
      res.ok = false;
      res.note = "inconsistent system";
      return res;
    }
  }

  res.sol.assign(cols, num(0));
  for (size_t c = 0; c < cols; ++c) {
    int r = pivot_of_col[c];
    if (r < 0) continue;
    res.sol[c] = mul({a[r][cols], pow(a[r][c], -1)});
  }
  for (size_t f = 0; f < cols; ++f) {
    if (pivot_of_col[f] >= 0) continue;
    std::vector<Expr> v(cols, num(0));
    v[f] = num(1);
    for (size_t c = 0; c < cols; ++c) {
      int r = pivot_of_col[c];
      if (r < 0) continue;
      v[c] = -mul({a[r][f], pow(a[r][c], -1)});
    }
    res.kernel.push_back(std::move(v));
  }
  return res;
}

}  // namespace geo
