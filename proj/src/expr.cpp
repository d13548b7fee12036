#include "geored/expr.hpp"

#include <algorithm>
#include <sstream>

namespace geo {

Rat rat_pow(const Rat& r, int e) {
  if (e == 0) return Rat(1);
  unsigned m = e < 0 ? unsigned(-(long long)e) : unsigned(e);
  Int n = boost::multiprecision::pow(boost::multiprecision::numerator(r), m);
  Int d = boost::multiprecision::pow(boost::multiprecision::denominator(r), m);
  if (e < 0) {
    if (n == 0) throw EvalError("division by zero in constant power");
    std::swap(n, d);
    if (d < 0) {  // cpp_rational requires a positive denominator
      n = -n;
      d = -d;
    }
  }
  return Rat(n, d);
}

Expr num(Rat r) {
  auto n = std::make_shared<ExprNode>();
  n->k = EK::Num;
  n->num = std::move(r);
  return n;
}

Expr num(long long v) { return num(Rat(v)); }

Expr sym(const std::string& s) {
  auto n = std::make_shared<ExprNode>();
  n->k = EK::Sym;
  n->name = s;
  return n;
}

bool is_num(const Expr& e, const Rat& v) { return e->k == EK::Num && e->num == v; }

Expr add(std::vector<Expr> xs) {
  std::vector<Expr> out;
  Rat c = 0;
  for (auto& x : xs) {
    if (x->k == EK::Num) {
      c += x->num;
    } else if (x->k == EK::Add) {
      for (auto& y : x->ch) {
        if (y->k == EK::Num) c += y->num;
        else out.push_back(y);
      }
    } else {
      out.push_back(x);
    }
  }
  if (c != 0) out.push_back(num(c));
  if (out.empty()) return num(0);
  if (out.size() == 1) return out[0];
  auto n = std::make_shared<ExprNode>();
  n->k = EK::Add;
  n->ch = std::move(out);
  return n;
}

Expr mul(std::vector<Expr> xs) {
  Rat c = 1;
  std::vector<Expr> out;
  for (auto& x : xs) {
    if (x->k == EK::Num) {
      c *= x->num;
    } else if (x->k == EK::Mul) {
      for (auto& y : x->ch) {
        if (y->k == EK::Num) c *= y->num;
        else out.push_back(y);
      }
    } else {
      out.push_back(x);
    }
    if (c == 0) return num(0);
  }
  if (out.empty()) return num(c);
  if (c == 1 && out.size() == 1) return out[0];
  std::vector<Expr> ch;
  if (c != 1) ch.push_back(num(c));
  for (auto& x : out) ch.push_back(x);
  if (ch.size() == 1) return ch[0];
  auto n = std::make_shared<ExprNode>();
  n->k = EK::Mul;
  n->ch = std::move(ch);
  return n;
}

Expr pow(Expr b, int e) {
  if (e == 0) return num(1);
  if (e == 1) return b;
  if (b->k == EK::Num) return num(rat_pow(b->num, e));
  if (b->k == EK::Pow) return pow(b->ch[0], b->pw * e);
  auto n = std::make_shared<ExprNode>();
  n->k = EK::Pow;
  n->ch = {std::move(b)};
  n->pw = e;
  return n;
}

Expr app(const std::string& f, std::vector<Expr> args, std::vector<int> ords) {
  if (ords.empty()) ords.assign(args.size(), 0);
  if (ords.size() != args.size()) throw InternalError("app: ords/args size mismatch");
  auto n = std::make_shared<ExprNode>();
  n->k = EK::App;
  n->name = f;
  n->ords = std::move(ords);
  n->ch = std::move(args);
  return n;
}

// Printing. Output re-parses to an equivalent expression.
namespace {

int prec_of(const Expr& e) {
  switch (e->k) {
    case EK::Add: return 1;
    case EK::Mul: return 2;
    case EK::Pow: return 3;
    case EK::Num:
      return (boost::multiprecision::denominator(e->num) == 1 && e->num >= 0) ? 4 : 2;
    default: return 4;
  }
}

std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(r);
  if (boost::multiprecision::denominator(r) != 1)
    os << "/" << boost::multiprecision::denominator(r);
  return os.str();
}

// Splits off a leading minus sign for additive printing.
bool neg_split(const Expr& e, Expr& abs) {
  if (e->k == EK::Num && e->num < 0) {
    abs = num(-e->num);
    return true;
  }
  if (e->k == EK::Mul && e->ch[0]->k == EK::Num && e->ch[0]->num < 0) {
    std::vector<Expr> ch = e->ch;
    ch[0] = num(-ch[0]->num);
    abs = mul(std::move(ch));
    return true;
  }
  return false;
}

void print(std::ostream& os, const Expr& e, int parent) {
  bool wrap = prec_of(e) < parent;
  if (wrap) os << "(";
  switch (e->k) {
    case EK::Num: os << rat_str(e->num); break;
    case EK::Sym: os << e->name; break;
    case EK::Add:
      for (size_t i = 0; i < e->ch.size(); ++i) {
        Expr abs;
        if (i && neg_split(e->ch[i], abs)) {
          os << " - ";
          print(os, abs, 2);
        } else {
          if (i) os << " + ";
          print(os, e->ch[i], 2);
        }
      }
      break;
    case EK::Mul:
      for (size_t i = 0; i < e->ch.size(); ++i) {
        if (i) os << "*";
        print(os, e->ch[i], 3);
      }
      break;
    case EK::Pow:
      print(os, e->ch[0], 4);
      if (e->pw < 0) os << "^(" << e->pw << ")";
      else os << "^" << e->pw;
      break;
    case EK::App: {
      os << e->name;
      bool any = false;
      for (int o : e->ords) any = any || o != 0;
      if (any) {
        os << "[";
        for (size_t i = 0; i < e->ords.size(); ++i) os << (i ? "," : "") << e->ords[i];
        os << "]";
      }
      os << "(";
      for (size_t i = 0; i < e->ch.size(); ++i) {
        if (i) os << ",";
        print(os, e->ch[i], 1);
      }
      os << ")";
      break;
    }
  }
  if (wrap) os << ")";
}

}  // namespace

std::string to_string(const Expr& e) {
  std::ostringstream os;
  print(os, e, 1);
  return os.str();
}

int Chart::coord_index(const std::string& c) const {
  for (size_t i = 0; i < coords.size(); ++i)
    if (coords[i] == c) return (int)i;
  return -1;
}

bool Chart::has_param(const std::string& p) const {
  return std::find(params.begin(), params.end(), p) != params.end();
}

ChartPtr make_chart(std::string name, std::vector<std::string> coords,
                    std::vector<std::string> params) {
  std::set<std::string> seen;
  for (auto& c : coords)
    if (!seen.insert(c).second) throw ChartError("duplicate chart name: " + c);
  for (auto& p : params)
    if (!seen.insert(p).second) throw ChartError("duplicate chart name: " + p);
  auto ch = std::make_shared<Chart>();
  ch->name = std::move(name);
  ch->coords = std::move(coords);
  ch->params = std::move(params);
  return ch;
}

Expr differentiate(const Expr& e, const std::string& v) {
  switch (e->k) {
    case EK::Num: return num(0);
    case EK::Sym: return e->name == v ? num(1) : num(0);
    case EK::Add: {
      std::vector<Expr> out;
      for (auto& c : e->ch) out.push_back(differentiate(c, v));
      return add(std::move(out));
    }
    case EK::Mul: {
      std::vector<Expr> terms;
      for (size_t i = 0; i < e->ch.size(); ++i) {
        Expr di = differentiate(e->ch[i], v);
        if (is_zero_lit(di)) continue;
        std::vector<Expr> fac = e->ch;
        fac[i] = di;
        terms.push_back(mul(std::move(fac)));
      }
      return add(std::move(terms));
    }
    case EK::Pow: {
      Expr db = differentiate(e->ch[0], v);
      if (is_zero_lit(db)) return num(0);
      return mul({num(e->pw), pow(e->ch[0], e->pw - 1), db});
    }
    case EK::App: {
      std::vector<Expr> terms;
      for (size_t i = 0; i < e->ch.size(); ++i) {
        Expr di = differentiate(e->ch[i], v);
        if (is_zero_lit(di)) continue;
        std::vector<int> o = e->ords;
        o[i] += 1;
        terms.push_back(mul({app(e->name, e->ch, std::move(o)), di}));
      }
      return add(std::move(terms));
    }
  }
  throw InternalError("differentiate: bad node");
}

Expr differentiate(const Expr& e, const std::string& v, const Chart& chart) {
  if (!chart.has_coord(v))
    throw NameError("unknown coordinate '" + v + "' in chart " + chart.name);
  return differentiate(e, v);
}

Expr subst_syms(const Expr& e, const std::map<std::string, Expr>& m) {
  switch (e->k) {
    case EK::Num: return e;
    case EK::Sym: {
      auto it = m.find(e->name);
      return it == m.end() ? e : it->second;
    }
    case EK::Add: {
      std::vector<Expr> out;
      for (auto& c : e->ch) out.push_back(subst_syms(c, m));
      return add(std::move(out));
    }
    case EK::Mul: {
      std::vector<Expr> out;
      for (auto& c : e->ch) out.push_back(subst_syms(c, m));
      return mul(std::move(out));
    }
    case EK::Pow: return pow(subst_syms(e->ch[0], m), e->pw);
    case EK::App: {
      std::vector<Expr> args;
      for (auto& c : e->ch) args.push_back(subst_syms(c, m));
      return app(e->name, std::move(args), e->ords);
    }
  }
  throw InternalError("subst_syms: bad node");
}

namespace {
void check_covered(const Expr& e, const std::map<std::string, Expr>& m, const Chart& chart) {
  if (e->k == EK::Sym && chart.has_coord(e->name) && !m.count(e->name))
    throw SubstError("missing coordinate in map: " + e->name);
  for (auto& c : e->ch) check_covered(c, m, chart);
}
}  // namespace

Expr substitute(const Expr& e, const std::map<std::string, Expr>& m, const Chart& chart) {
  check_covered(e, m, chart);
  return subst_syms(e, m);
}

Rat evaluate(const Expr& e, const Point& p, const Bindings& bindings) {
  switch (e->k) {
    case EK::Num: return e->num;
    case EK::Sym: {
      auto it = p.find(e->name);
      if (it == p.end()) throw NameError("unbound symbol '" + e->name + "'");
      return it->second;
    }
    case EK::Add: {
      Rat s = 0;
      for (auto& c : e->ch) s += evaluate(c, p, bindings);
      return s;
    }
    case EK::Mul: {
      Rat s = 1;
      for (auto& c : e->ch) s *= evaluate(c, p, bindings);
      return s;
    }
    case EK::Pow: {
      Rat b = evaluate(e->ch[0], p, bindings);
      if (e->pw < 0 && b == 0)
        throw EvalError("division by zero evaluating " + to_string(e));
      return rat_pow(b, e->pw);
    }
    case EK::App: {
      auto it = bindings.find(e->name);
      if (it == bindings.end())
        throw NameError("unbound opaque symbol '" + e->name + "'");
      const OpaqueDef& od = it->second;
      if (od.formals.size() != e->ch.size())
        throw EvalError("opaque arity mismatch for '" + e->name + "'");
      Expr body = od.body;
      for (size_t i = 0; i < e->ords.size(); ++i)
        for (int o = 0; o < e->ords[i]; ++o) body = differentiate(body, od.formals[i]);
      Point q = p;
      for (size_t i = 0; i < e->ch.size(); ++i)
        q[od.formals[i]] = evaluate(e->ch[i], p, bindings);
      return evaluate(body, q, bindings);
    }
  }
  throw InternalError("evaluate: bad node");
}

void collect_syms(const Expr& e, std::set<std::string>& out) {
  if (e->k == EK::Sym) out.insert(e->name);
  for (auto& c : e->ch) collect_syms(c, out);
}

}  // namespace geo
