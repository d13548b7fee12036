#pragma once

#include "geored/expr.hpp"
#include "geored/linalg.hpp"

namespace geo {

struct VectorField {
  ChartPtr chart;
  std::vector<Expr> comp;
};

struct KVectorField {
  ChartPtr chart;
  std::vector<VectorField> comp;
  int k() const { return (int)comp.size(); }
};

// Alternating form stored sparsely over strictly increasing coordinate index
// tuples; the empty tuple holds a degree-0 (scalar) coefficient.
struct Form {
  ChartPtr chart;
  int degree = 0;
  std::map<std::vector<int>, Expr> coef;
};

struct VForm {
  ChartPtr chart;
  int degree = 0;
  std::vector<Form> comp;
  int k() const { return (int)comp.size(); }
};

struct SmoothMap {
  ChartPtr src, dst;
  std::vector<Expr> comp;  // target coordinates as expressions in source coordinates
};

VectorField make_vf(ChartPtr chart, std::vector<Expr> comp);
VectorField basis_vf(ChartPtr chart, int i);
KVectorField make_kvf(std::vector<VectorField> comp);
Form zero_form(ChartPtr chart, int degree);
Form scalar_form(ChartPtr chart, Expr e);
Form coord_diff(ChartPtr chart, int i);
Form make_form(ChartPtr chart, int degree,
               std::vector<std::pair<std::vector<int>, Expr>> terms);
VForm make_vform(std::vector<Form> comp);
SmoothMap make_map(ChartPtr src, ChartPtr dst, std::vector<Expr> comp);
SmoothMap identity_map(ChartPtr chart);
SmoothMap compose(const SmoothMap& f, const SmoothMap& g);  // g after f: src(f) -> dst(g)

Form form_add(const Form& a, const Form& b);
Form form_sub(const Form& a, const Form& b);
Form form_scale(const Expr& s, const Form& a);
VForm vform_add(const VForm& a, const VForm& b);
VForm vform_scale(const Expr& s, const VForm& a);
Form wedge(const Form& a, const Form& b);
Form d(const Form& a);
VForm d(const VForm& a);
Form iota(const VectorField& x, const Form& a);
VForm iota(const VectorField& x, const VForm& a);
Form contract_kv(const KVectorField& x, const VForm& a);
Form lie_derivative(const VectorField& x, const Form& a);
VForm lie_derivative(const VectorField& x, const VForm& a);
Form lie_derivative_direct(const VectorField& x, const Form& a);  // coordinate formula
VectorField lie_bracket(const VectorField& x, const VectorField& y);
Form pullback(const SmoothMap& f, const Form& a);
VForm pullback(const SmoothMap& f, const VForm& a);
Expr pullback_expr(const SmoothMap& f, const Expr& e);
Expr apply_vf(const VectorField& x, const Expr& e);

bool form_equal(const Form& a, const Form& b);
bool vform_equal(const VForm& a, const VForm& b);
bool form_is_zero(const Form& a);
std::string to_string(const Form& a);

// Pointwise evaluation to exact matrices.
RatVec oneform_at(const Form& a, const Point& p, const Bindings& b = {});
RatMat twoform_matrix_at(const Form& a, const Point& p, const Bindings& b = {});
RatVec vf_at(const VectorField& x, const Point& p, const Bindings& b = {});
RatMat jacobian_at(const SmoothMap& f, const Point& p, const Bindings& b = {});
std::vector<std::vector<Expr>> jacobian(const SmoothMap& f);

}  // namespace geo
