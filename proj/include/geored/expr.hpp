#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace geo {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct NameError : std::runtime_error { using std::runtime_error::runtime_error; };
struct EvalError : std::runtime_error { using std::runtime_error::runtime_error; };
struct SubstError : std::runtime_error { using std::runtime_error::runtime_error; };
struct ChartError : std::runtime_error { using std::runtime_error::runtime_error; };
struct GaugeError : std::runtime_error { using std::runtime_error::runtime_error; };
struct InternalError : std::runtime_error { using std::runtime_error::runtime_error; };

enum class EK { Num, Sym, Add, Mul, Pow, App };

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

// Immutable tree. Add/Mul are flattened n-ary; Mul keeps a single numeric
// coefficient as its first child. Pow has integer exponent only. App is an
// opaque function application; ords[i] is the partial-derivative order taken
// in the i-th argument slot, so mixed partials commute by construction.
struct ExprNode {
  EK k = EK::Num;
  Rat num;
  std::string name;
  std::vector<int> ords;
  std::vector<Expr> ch;
  int pw = 0;
};

Expr num(Rat r);
Expr num(long long n);
Expr sym(const std::string& s);
Expr add(std::vector<Expr> xs);
Expr mul(std::vector<Expr> xs);
Expr pow(Expr b, int e);
Expr app(const std::string& f, std::vector<Expr> args, std::vector<int> ords = {});

inline Expr operator+(const Expr& a, const Expr& b) { return add({a, b}); }
inline Expr operator*(const Expr& a, const Expr& b) { return mul({a, b}); }
inline Expr operator-(const Expr& a) { return mul({num(-1), a}); }
inline Expr operator-(const Expr& a, const Expr& b) { return add({a, -b}); }
inline Expr operator/(const Expr& a, const Expr& b) { return mul({a, pow(b, -1)}); }

bool is_num(const Expr& e, const Rat& v);
inline bool is_zero_lit(const Expr& e) { return e->k == EK::Num && e->num == 0; }
std::string to_string(const Expr& e);
Rat rat_pow(const Rat& r, int e);

struct Chart {
  std::string name;
  std::vector<std::string> coords;
  std::vector<std::string> params;
  int dim() const { return (int)coords.size(); }
  int coord_index(const std::string& c) const;
  bool has_coord(const std::string& c) const { return coord_index(c) >= 0; }
  bool has_param(const std::string& p) const;
};
using ChartPtr = std::shared_ptr<const Chart>;
ChartPtr make_chart(std::string name, std::vector<std::string> coords,
                    std::vector<std::string> params = {});

using Point = std::map<std::string, Rat>;

// Concrete realization of an opaque symbol: an expression in formal
// arguments (chart params may also appear in the body).
struct OpaqueDef {
  std::vector<std::string> formals;
  Expr body;
};
using Bindings = std::map<std::string, OpaqueDef>;

Expr differentiate(const Expr& e, const std::string& v);
Expr differentiate(const Expr& e, const std::string& v, const Chart& chart);
Expr subst_syms(const Expr& e, const std::map<std::string, Expr>& m);
Expr substitute(const Expr& e, const std::map<std::string, Expr>& m, const Chart& chart);
Rat evaluate(const Expr& e, const Point& p, const Bindings& bindings = {});
void collect_syms(const Expr& e, std::set<std::string>& out);

}  // namespace geo
