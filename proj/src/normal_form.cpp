#include "geored/normal_form.hpp"

#include <random>
#include <sstream>

namespace geo {
namespace {

// Rational normal form over string-keyed atoms: coordinates/params are "v:x"
// atoms, opaque applications are "o:..." atoms keyed by name, partial orders,
// and the canonical form of their arguments. Expressions normalize to a pair
// (num, den) of atom-polynomials; equality is decided by cross-multiplication,
// which needs no gcd because the atom-polynomial ring is an integral domain.

using Mono = std::map<std::string, int>;
using Poly = std::map<Mono, Rat>;

struct Overflow {};
struct SymbolicDivZero {};

constexpr size_t kTermLimit = 5000;

Poly pconst(const Rat& r) {
  Poly p;
  if (r != 0) p[{}] = r;
  return p;
}

Poly patom(const std::string& key) {
  Poly p;
  p[{{key, 1}}] = 1;
  return p;
}

void padd_into(Poly& a, const Poly& b) {
  for (auto& [m, c] : b) {
    auto it = a.find(m);
    if (it == a.end()) {
      a.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) a.erase(it);
    }
  }
  if (a.size() > kTermLimit) throw Overflow{};
}

Poly pmul(const Poly& a, const Poly& b) {
  if ((double)a.size() * (double)b.size() > 4e6) throw Overflow{};
  Poly r;
  for (auto& [ma, ca] : a)
    for (auto& [mb, cb] : b) {
      Mono m = ma;
      for (auto& [k, e] : mb) m[k] += e;
      Rat c = ca * cb;
      auto it = r.find(m);
      if (it == r.end()) {
        if (c != 0) r.emplace(std::move(m), std::move(c));
      } else {
        it->second += c;
        if (it->second == 0) r.erase(it);
      }
    }
  if (r.size() > kTermLimit) throw Overflow{};
  return r;
}

Poly ppow(Poly b, int e) {
  Poly r = pconst(1);
  while (e > 0) {
    if (e & 1) r = pmul(r, b);
    e >>= 1;
    if (e) b = pmul(b, b);
  }
  return r;
}

struct RF {
  Poly n, d;
};

RF rf_add(const RF& a, const RF& b) {
  if (a.d == b.d) {
    Poly n = a.n;
    padd_into(n, b.n);
    return {std::move(n), a.d};
  }
  Poly n = pmul(a.n, b.d);
  padd_into(n, pmul(b.n, a.d));
  return {std::move(n), pmul(a.d, b.d)};
}

RF rf_mul(const RF& a, const RF& b) { return {pmul(a.n, b.n), pmul(a.d, b.d)}; }

RF rf_pow(RF a, int e) {
  if (e < 0) {
    if (a.n.empty()) throw SymbolicDivZero{};
    std::swap(a.n, a.d);
    e = -e;
  }
  return {ppow(std::move(a.n), e), ppow(std::move(a.d), e)};
}

bool const_poly(const Poly& p, Rat& val) {
  if (p.empty()) {
    val = 0;
    return true;
  }
  if (p.size() == 1 && p.begin()->first.empty()) {
    val = p.begin()->second;
    return true;
  }
  return false;
}

std::string poly_key(const Poly& p) {
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : p) {
    if (!first) os << "+";
    first = false;
    os << c;
    for (auto& [k, e] : m) os << ".{" << k << "}^" << e;
  }
  return os.str();
}

RF nf(const Expr& e) {
  switch (e->k) {
    case EK::Num: return {pconst(e->num), pconst(1)};
    case EK::Sym: return {patom("v:" + e->name), pconst(1)};
    case EK::Add: {
      RF r = {pconst(0), pconst(1)};
      for (auto& c : e->ch) r = rf_add(r, nf(c));
      return r;
    }
    case EK::Mul: {
      RF r = {pconst(1), pconst(1)};
      for (auto& c : e->ch) r = rf_mul(r, nf(c));
      return r;
    }
    case EK::Pow: return rf_pow(nf(e->ch[0]), e->pw);
    case EK::App: {
      std::ostringstream key;
      key << "o:" << e->name << "[";
      for (int o : e->ords) key << o << ",";
      key << "](";
      for (auto& arg : e->ch) {
        RF a = nf(arg);
        Rat dv;
        // Non-polynomial arguments have no canonical key without a gcd;
        // defer those to the sampling fallback.
        if (!const_poly(a.d, dv) || dv == 0) throw Overflow{};
        Poly num = std::move(a.n);
        if (dv != 1)
          for (auto& [m, c] : num) c /= dv;
        key << poly_key(num) << ";";
      }
      key << ")";
      return {patom(key.str()), pconst(1)};
    }
  }
  throw InternalError("nf: bad node");
}

Rat peval(const Expr& e, const Point& p, std::map<std::string, Rat>& memo,
          std::mt19937_64& rng) {
  switch (e->k) {
    case EK::Num: return e->num;
    case EK::Sym: return p.at(e->name);
    case EK::Add: {
      Rat s = 0;
      for (auto& c : e->ch) s += peval(c, p, memo, rng);
      return s;
    }
    case EK::Mul: {
      Rat s = 1;
      for (auto& c : e->ch) s *= peval(c, p, memo, rng);
      return s;
    }
    case EK::Pow: {
      Rat b = peval(e->ch[0], p, memo, rng);
      if (e->pw < 0 && b == 0) throw EvalError("division by zero in sample");
      return rat_pow(b, e->pw);
    }
    case EK::App: {
      std::ostringstream key;
      key << e->name << "[";
      for (int o : e->ords) key << o << ",";
      key << "](";
      for (auto& arg : e->ch) key << peval(arg, p, memo, rng) << ";";
      key << ")";
      auto it = memo.find(key.str());
      if (it != memo.end()) return it->second;
      std::uniform_int_distribution<int> numd(-40, 40), dend(1, 8);
      Rat v(numd(rng), dend(rng));
      memo.emplace(key.str(), v);
      return v;
    }
  }
  throw InternalError("peval: bad node");
}

// Equality at 64 random points with a shared memoized realization of the
// opaque symbols per point. A witnessed disagreement certifies inequality
// (the realization extends to an actual smooth function); agreement at all
// points is only probabilistic.
EqResult random_equal(const Expr& a, const Expr& b) {
  std::set<std::string> syms;
  collect_syms(a, syms);
  collect_syms(b, syms);
  std::mt19937_64 rng(0x6b8b4567u);
  std::uniform_int_distribution<int> numd(-40, 40), dend(1, 8);
  int done = 0, guard = 0;
  while (done < 64) {
    if (++guard > 4096) return {false, false};
    Point p;
    for (auto& s : syms) p[s] = Rat(numd(rng), dend(rng));
    std::map<std::string, Rat> memo;
    Rat va, vb;
    try {
      va = peval(a, p, memo, rng);
      vb = peval(b, p, memo, rng);
    } catch (const EvalError&) {
      continue;
    }
    if (va != vb) return {false, true};
    ++done;
  }
  return {true, false};
}

}  // namespace

EqResult expr_equal_ex(const Expr& a, const Expr& b) {
  try {
    RF ra = nf(a), rb = nf(b);
    Poly lhs = pmul(ra.n, rb.d);
    Poly rhs = pmul(rb.n, ra.d);
    return {lhs == rhs, true};
  } catch (const Overflow&) {
  } catch (const SymbolicDivZero&) {
  }
  return random_equal(a, b);
}

bool expr_equal(const Expr& a, const Expr& b) { return expr_equal_ex(a, b).equal; }

EqResult is_zero_ex(const Expr& e) { return expr_equal_ex(e, num(0)); }

bool is_zero(const Expr& e) { return is_zero_ex(e).equal; }

}  // namespace geo
