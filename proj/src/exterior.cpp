#include "geored/exterior.hpp"

#include "geored/normal_form.hpp"

#include <algorithm>
#include <sstream>

namespace geo {
namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw ChartError(msg);
}

bool same_chart(const ChartPtr& a, const ChartPtr& b) {
  return a == b || (a && b && a->name == b->name && a->coords == b->coords);
}

// Sorts an index tuple, returning the permutation sign (0 for repeated index).
int sort_tuple(std::vector<int>& t) {
  int sign = 1;
  for (size_t i = 1; i < t.size(); ++i)
    for (size_t j = i; j > 0 && t[j] < t[j - 1]; --j) {
      std::swap(t[j], t[j - 1]);
      sign = -sign;
    }
  for (size_t i = 1; i < t.size(); ++i)
    if (t[i] == t[i - 1]) return 0;
  return sign;
}

void insert_term(Form& f, std::vector<int> t, const Expr& c) {
  if (is_zero_lit(c)) return;
  int sign = sort_tuple(t);
  if (sign == 0) return;
  Expr v = sign < 0 ? -c : c;
  auto it = f.coef.find(t);
  if (it == f.coef.end()) {
    f.coef.emplace(std::move(t), v);
  } else {
    Expr s = it->second + v;
    if (is_zero_lit(s)) f.coef.erase(it);
    else it->second = s;
  }
}

}  // namespace

VectorField make_vf(ChartPtr chart, std::vector<Expr> comp) {
  require((int)comp.size() == chart->dim(), "vector field component count mismatch");
  return VectorField{std::move(chart), std::move(comp)};
}

VectorField basis_vf(ChartPtr chart, int i) {
  std::vector<Expr> comp(chart->dim(), num(0));
  comp[i] = num(1);
  return VectorField{std::move(chart), std::move(comp)};
}

KVectorField make_kvf(std::vector<VectorField> comp) {
  require(!comp.empty(), "k-vector field needs k >= 1");
  for (auto& c : comp)
    require(same_chart(c.chart, comp[0].chart), "k-vector field chart mismatch");
  return KVectorField{comp[0].chart, std::move(comp)};
}

Form zero_form(ChartPtr chart, int degree) { return Form{std::move(chart), degree, {}}; }

Form scalar_form(ChartPtr chart, Expr e) {
  Form f{std::move(chart), 0, {}};
  if (!is_zero_lit(e)) f.coef[{}] = std::move(e);
  return f;
}

Form coord_diff(ChartPtr chart, int i) {
  Form f{std::move(chart), 1, {}};
  f.coef[{i}] = num(1);
  return f;
}

Form make_form(ChartPtr chart, int degree,
               std::vector<std::pair<std::vector<int>, Expr>> terms) {
  Form f{std::move(chart), degree, {}};
  for (auto& [t, c] : terms) {
    require((int)t.size() == degree, "form term degree mismatch");
    for (int i : t) require(i >= 0 && i < f.chart->dim(), "form index out of range");
    insert_term(f, t, c);
  }
  return f;
}

VForm make_vform(std::vector<Form> comp) {
  require(!comp.empty(), "vector-valued form needs k >= 1");
  for (auto& c : comp) {
    require(same_chart(c.chart, comp[0].chart), "VForm chart mismatch");
    require(c.degree == comp[0].degree, "VForm degree mismatch");
  }
  return VForm{comp[0].chart, comp[0].degree, std::move(comp)};
}

SmoothMap make_map(ChartPtr src, ChartPtr dst, std::vector<Expr> comp) {
  require((int)comp.size() == dst->dim(), "smooth map component count mismatch");
  return SmoothMap{std::move(src), std::move(dst), std::move(comp)};
}

SmoothMap identity_map(ChartPtr chart) {
  std::vector<Expr> comp;
  for (auto& c : chart->coords) comp.push_back(sym(c));
  return SmoothMap{chart, chart, std::move(comp)};
}

SmoothMap compose(const SmoothMap& f, const SmoothMap& g) {
  require(same_chart(f.dst, g.src), "map composition chart mismatch");
  std::map<std::string, Expr> m;
  for (int i = 0; i < f.dst->dim(); ++i) m[f.dst->coords[i]] = f.comp[i];
  std::vector<Expr> comp;
  for (auto& e : g.comp) comp.push_back(substitute(e, m, *g.src));
  return SmoothMap{f.src, g.dst, std::move(comp)};
}

Form form_add(const Form& a, const Form& b) {
  require(same_chart(a.chart, b.chart), "form chart mismatch");
  require(a.degree == b.degree, "form degree mismatch");
  Form r = a;
  for (auto& [t, c] : b.coef) insert_term(r, t, c);
  return r;
}

Form form_sub(const Form& a, const Form& b) { return form_add(a, form_scale(num(-1), b)); }

Form form_scale(const Expr& s, const Form& a) {
  Form r{a.chart, a.degree, {}};
  if (is_zero_lit(s)) return r;
  for (auto& [t, c] : a.coef) insert_term(r, t, s * c);
  return r;
}

VForm vform_add(const VForm& a, const VForm& b) {
  require(a.k() == b.k(), "VForm k mismatch");
  std::vector<Form> comp;
  for (int i = 0; i < a.k(); ++i) comp.push_back(form_add(a.comp[i], b.comp[i]));
  return make_vform(std::move(comp));
}

VForm vform_scale(const Expr& s, const VForm& a) {
  std::vector<Form> comp;
  for (auto& c : a.comp) comp.push_back(form_scale(s, c));
  return VForm{a.chart, a.degree, std::move(comp)};
}

Form wedge(const Form& a, const Form& b) {
  require(same_chart(a.chart, b.chart), "wedge chart mismatch");
  Form r{a.chart, a.degree + b.degree, {}};
  if (r.degree > a.chart->dim()) return r;
  for (auto& [ta, ca] : a.coef)
    for (auto& [tb, cb] : b.coef) {
      std::vector<int> t = ta;
      t.insert(t.end(), tb.begin(), tb.end());
      insert_term(r, std::move(t), ca * cb);
    }
  return r;
}

Form d(const Form& a) {
  Form r{a.chart, a.degree + 1, {}};
  if (r.degree > a.chart->dim()) return r;
  for (auto& [t, c] : a.coef)
    for (int j = 0; j < a.chart->dim(); ++j) {
      Expr dc = differentiate(c, a.chart->coords[j]);
      if (is_zero_lit(dc)) continue;
      std::vector<int> nt{j};
      nt.insert(nt.end(), t.begin(), t.end());
      insert_term(r, std::move(nt), dc);
    }
  return r;
}

VForm d(const VForm& a) {
  std::vector<Form> comp;
  for (auto& c : a.comp) comp.push_back(d(c));
  return VForm{a.chart, a.degree + 1, std::move(comp)};
}

Form iota(const VectorField& x, const Form& a) {
  require(same_chart(x.chart, a.chart), "interior product chart mismatch");
  require(a.degree >= 1, "interior product needs degree >= 1");
  Form r{a.chart, a.degree - 1, {}};
  for (auto& [t, c] : a.coef)
    for (size_t m = 0; m < t.size(); ++m) {
      const Expr& xi = x.comp[t[m]];
      if (is_zero_lit(xi)) continue;
      std::vector<int> nt;
      for (size_t j = 0; j < t.size(); ++j)
        if (j != m) nt.push_back(t[j]);
      Expr v = xi * c;
      insert_term(r, std::move(nt), m % 2 ? -v : v);
    }
  return r;
}

VForm iota(const VectorField& x, const VForm& a) {
  std::vector<Form> comp;
  for (auto& c : a.comp) comp.push_back(iota(x, c));
  return VForm{a.chart, a.degree - 1, std::move(comp)};
}

Form contract_kv(const KVectorField& x, const VForm& a) {
  require(x.k() == a.k(), "contraction k mismatch");
  Form r = zero_form(a.chart, a.degree - 1);
  for (int alpha = 0; alpha < x.k(); ++alpha)
    r = form_add(r, iota(x.comp[alpha], a.comp[alpha]));
  return r;
}

Form lie_derivative(const VectorField& x, const Form& a) {
  require(same_chart(x.chart, a.chart), "Lie derivative chart mismatch");
  Form r = iota(x, d(a));
  if (a.degree >= 1) r = form_add(r, d(iota(x, a)));
  return r;
}

VForm lie_derivative(const VectorField& x, const VForm& a) {
  std::vector<Form> comp;
  for (auto& c : a.comp) comp.push_back(lie_derivative(x, c));
  return VForm{a.chart, a.degree, std::move(comp)};
}

Form lie_derivative_direct(const VectorField& x, const Form& a) {
  Form r{a.chart, a.degree, {}};
  for (auto& [t, c] : a.coef) {
    insert_term(r, t, apply_vf(x, c));
    // scatter form of (L_X a)_j = X(a_j) + sum_m (d_{j_m} X^k) a_{j|m->k}
    for (size_t m = 0; m < t.size(); ++m)
      for (int i = 0; i < a.chart->dim(); ++i) {
        Expr dx = differentiate(x.comp[t[m]], a.chart->coords[i]);
        if (is_zero_lit(dx)) continue;
        std::vector<int> nt = t;
        nt[m] = i;
        insert_term(r, std::move(nt), dx * c);
      }
  }
  return r;
}

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  require(same_chart(x.chart, y.chart), "bracket chart mismatch");
  std::vector<Expr> comp;
  for (int j = 0; j < x.chart->dim(); ++j)
    comp.push_back(apply_vf(x, y.comp[j]) - apply_vf(y, x.comp[j]));
  return VectorField{x.chart, std::move(comp)};
}

Expr pullback_expr(const SmoothMap& f, const Expr& e) {
  std::map<std::string, Expr> m;
  for (int i = 0; i < f.dst->dim(); ++i) m[f.dst->coords[i]] = f.comp[i];
  return substitute(e, m, *f.dst);
}

Form pullback(const SmoothMap& f, const Form& a) {
  require(same_chart(a.chart, f.dst), "pullback chart mismatch");
  std::vector<Form> df;
  for (int i = 0; i < f.dst->dim(); ++i) {
    Form fi{f.src, 1, {}};
    for (int j = 0; j < f.src->dim(); ++j)
      insert_term(fi, {j}, differentiate(f.comp[i], f.src->coords[j]));
    df.push_back(std::move(fi));
  }
  Form r = zero_form(f.src, a.degree);
  for (auto& [t, c] : a.coef) {
    Form w = scalar_form(f.src, pullback_expr(f, c));
    for (int idx : t) w = wedge(w, df[idx]);
    r = form_add(r, w);
  }
  return r;
}

VForm pullback(const SmoothMap& f, const VForm& a) {
  std::vector<Form> comp;
  for (auto& c : a.comp) comp.push_back(pullback(f, c));
  return VForm{f.src, a.degree, std::move(comp)};
}

Expr apply_vf(const VectorField& x, const Expr& e) {
  std::vector<Expr> terms;
  for (int i = 0; i < x.chart->dim(); ++i) {
    if (is_zero_lit(x.comp[i])) continue;
    Expr de = differentiate(e, x.chart->coords[i]);
    if (is_zero_lit(de)) continue;
    terms.push_back(x.comp[i] * de);
  }
  return add(std::move(terms));
}

bool form_equal(const Form& a, const Form& b) {
  if (a.degree != b.degree) return false;
  std::set<std::vector<int>> keys;
  for (auto& [t, c] : a.coef) keys.insert(t);
  for (auto& [t, c] : b.coef) keys.insert(t);
  for (auto& t : keys) {
    auto ia = a.coef.find(t), ib = b.coef.find(t);
    Expr ca = ia == a.coef.end() ? num(0) : ia->second;
    Expr cb = ib == b.coef.end() ? num(0) : ib->second;
    if (!expr_equal(ca, cb)) return false;
  }
  return true;
}

bool vform_equal(const VForm& a, const VForm& b) {
  if (a.k() != b.k()) return false;
  for (int i = 0; i < a.k(); ++i)
    if (!form_equal(a.comp[i], b.comp[i])) return false;
  return true;
}

bool form_is_zero(const Form& a) {
  for (auto& [t, c] : a.coef)
    if (!is_zero(c)) return false;
  return true;
}

std::string to_string(const Form& a) {
  if (a.coef.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [t, c] : a.coef) {
    std::string cs = to_string(c);
    if (!first) os << " + ";
    first = false;
    if (t.empty()) {
      os << cs;
      continue;
    }
    if (cs != "1") {
      bool atom = c->k == EK::Sym || c->k == EK::App ||
                  (c->k == EK::Num && c->num >= 0 &&
                   boost::multiprecision::denominator(c->num) == 1);
      os << (atom ? cs : "(" + cs + ")") << "*";
    }
    for (size_t i = 0; i < t.size(); ++i)
      os << (i ? "^" : "") << "d(" << a.chart->coords[t[i]] << ")";
  }
  return os.str();
}

RatVec oneform_at(const Form& a, const Point& p, const Bindings& b) {
  RatVec v(a.chart->dim(), 0);
  for (auto& [t, c] : a.coef) v[t[0]] = evaluate(c, p, b);
  return v;
}

RatMat twoform_matrix_at(const Form& a, const Point& p, const Bindings& b) {
  int n = a.chart->dim();
  RatMat m(n, RatVec(n, 0));
  for (auto& [t, c] : a.coef) {
    Rat v = evaluate(c, p, b);
    m[t[0]][t[1]] = v;
    m[t[1]][t[0]] = -v;
  }
  return m;
}

RatVec vf_at(const VectorField& x, const Point& p, const Bindings& b) {
  RatVec v;
  for (auto& c : x.comp) v.push_back(evaluate(c, p, b));
  return v;
}

std::vector<std::vector<Expr>> jacobian(const SmoothMap& f) {
  std::vector<std::vector<Expr>> j;
  for (auto& c : f.comp) {
    std::vector<Expr> row;
    for (auto& u : f.src->coords) row.push_back(differentiate(c, u));
    j.push_back(std::move(row));
  }
  return j;
}

RatMat jacobian_at(const SmoothMap& f, const Point& p, const Bindings& b) {
  RatMat m;
  for (auto& row : jacobian(f)) {
    RatVec r;
    for (auto& e : row) r.push_back(evaluate(e, p, b));
    m.push_back(std::move(r));
  }
  return m;
}

}  // namespace geo
