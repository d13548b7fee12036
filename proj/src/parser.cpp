#include "geored/parser.hpp"

#include <cctype>

namespace geo {
namespace {

enum class TK { Num, Name, Plus, Minus, Star, Slash, Caret, LPar, RPar, LBrk, RBrk, Comma, Semi, Tick, End };

struct Token {
  TK k;
  std::string text;
  int pos;
};

// A '^' inside a name is a name character when followed by a letter or
// underscore (coordinates like p^t); otherwise it is the power operator.
std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace((unsigned char)c)) {
      ++i;
      continue;
    }
    int pos = (int)i;
    if (std::isdigit((unsigned char)c)) {
      size_t j = i;
      while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
      out.push_back({TK::Num, s.substr(i, j - i), pos});
      i = j;
      continue;
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
      size_t j = i;
      while (j < s.size()) {
        char d = s[j];
        if (std::isalnum((unsigned char)d) || d == '_') {
          ++j;
        } else if (d == '^' && j + 1 < s.size() &&
                   (std::isalpha((unsigned char)s[j + 1]) || s[j + 1] == '_')) {
          j += 2;
        } else {
          break;
        }
      }
      out.push_back({TK::Name, s.substr(i, j - i), pos});
      i = j;
      continue;
    }
    TK k;
    switch (c) {
      case '+': k = TK::Plus; break;
      case '-': k = TK::Minus; break;
      case '*': k = TK::Star; break;
      case '/': k = TK::Slash; break;
      case '^': k = TK::Caret; break;
      case '(': k = TK::LPar; break;
      case ')': k = TK::RPar; break;
      case '[': k = TK::LBrk; break;
      case ']': k = TK::RBrk; break;
      case ',': k = TK::Comma; break;
      case ';': k = TK::Semi; break;
      case '\'': k = TK::Tick; break;
      default: throw ParseError(std::string("unexpected character '") + c + "'", pos);
    }
    out.push_back({k, std::string(1, c), pos});
    ++i;
  }
  out.push_back({TK::End, "", (int)s.size()});
  return out;
}

struct Parser {
  std::vector<Token> ts;
  size_t i = 0;
  const ParserEnv& env;

  explicit Parser(const std::string& src, const ParserEnv& e) : ts(lex(src)), env(e) {}

  const Token& cur() const { return ts[i]; }
  const Token& peek(size_t n = 1) const { return ts[std::min(i + n, ts.size() - 1)]; }
  Token eat() { return ts[i++]; }
  Token expect(TK k, const std::string& what) {
    if (cur().k != k) throw ParseError("expected " + what, cur().pos);
    return eat();
  }

  int parse_int_tok() {
    bool neg = false;
    if (cur().k == TK::Minus) {
      neg = true;
      eat();
    }
    Token t = expect(TK::Num, "integer");
    if (t.text.size() > 9) throw ParseError("integer too large", t.pos);
    int v = std::stoi(t.text);
    return neg ? -v : v;
  }

  int parse_exponent() {
    if (cur().k == TK::LPar) {
      eat();
      int v = parse_int_tok();
      expect(TK::RPar, "')'");
      return v;
    }
    return parse_int_tok();
  }

  Expr parse_primary() {
    const Token& t = cur();
    if (t.k == TK::Num) {
      eat();
      return num(Rat(Int(t.text)));
    }
    if (t.k == TK::LPar) {
      eat();
      Expr e = parse_sum();
      expect(TK::RPar, "')'");
      return e;
    }
    if (t.k == TK::Name) {
      Token name = eat();
      int primes = 0;
      while (cur().k == TK::Tick) {
        ++primes;
        eat();
      }
      auto op = env.opaques.find(name.text);
      if (cur().k == TK::LBrk) {
        if (op == env.opaques.end())
          throw ParseError("unknown function '" + name.text + "'", name.pos);
        eat();
        std::vector<int> ords{parse_int_tok()};
        while (cur().k == TK::Comma) {
          eat();
          ords.push_back(parse_int_tok());
        }
        expect(TK::RBrk, "']'");
        std::vector<Expr> args = parse_args(name);
        if ((int)args.size() != op->second || ords.size() != args.size())
          throw ParseError("wrong arity for '" + name.text + "'", name.pos);
        return app(name.text, std::move(args), std::move(ords));
      }
      if (primes > 0) {
        if (op == env.opaques.end() || op->second != 1)
          throw ParseError("prime notation needs a declared 1-argument opaque", name.pos);
        std::vector<Expr> args = parse_args(name);
        if (args.size() != 1) throw ParseError("wrong arity for '" + name.text + "'", name.pos);
        return app(name.text, std::move(args), {primes});
      }
      if (cur().k == TK::LPar) {
        if (op == env.opaques.end())
          throw ParseError("unknown function '" + name.text + "'", name.pos);
        std::vector<Expr> args = parse_args(name);
        if ((int)args.size() != op->second)
          throw ParseError("wrong arity for '" + name.text + "'", name.pos);
        return app(name.text, std::move(args));
      }
      if (op != env.opaques.end())
        throw ParseError("opaque symbol '" + name.text + "' requires arguments", name.pos);
      return sym(name.text);
    }
    throw ParseError("expected expression", t.pos);
  }

  std::vector<Expr> parse_args(const Token& name) {
    if (cur().k != TK::LPar)
      throw ParseError("expected arguments for '" + name.text + "'", cur().pos);
    eat();
    std::vector<Expr> args{parse_sum()};
    while (cur().k == TK::Comma) {
      eat();
      args.push_back(parse_sum());
    }
    expect(TK::RPar, "')'");
    return args;
  }

  Expr parse_postfix() {
    Expr e = parse_primary();
    while (cur().k == TK::Caret) {
      eat();
      e = pow(e, parse_exponent());
    }
    return e;
  }

  Expr parse_unary() {
    int sign = 1;
    while (cur().k == TK::Minus || cur().k == TK::Plus) {
      if (eat().k == TK::Minus) sign = -sign;
    }
    Expr e = parse_postfix();
    return sign < 0 ? -e : e;
  }

  Expr parse_term() {
    Expr e = parse_unary();
    while (cur().k == TK::Star || cur().k == TK::Slash) {
      bool div = eat().k == TK::Slash;
      Expr f = parse_unary();
      e = div ? e / f : e * f;
    }
    return e;
  }

  Expr parse_sum() {
    Expr e = parse_term();
    while (cur().k == TK::Plus || cur().k == TK::Minus) {
      bool minus = eat().k == TK::Minus;
      Expr f = parse_term();
      e = minus ? e - f : e + f;
    }
    return e;
  }

  bool at_differential() const {
    return cur().k == TK::Name && cur().text == "d" && peek().k == TK::LPar;
  }

  // factor of a form term: d(coord) or a scalar factor (with its powers)
  void parse_form_factor(FormTerm& term, bool invert) {
    if (at_differential()) {
      if (invert) throw ParseError("cannot divide by a differential", cur().pos);
      eat();
      eat();
      Token c = expect(TK::Name, "coordinate name");
      expect(TK::RPar, "')'");
      term.diffs.push_back(c.text);
      return;
    }
    Expr f = parse_unary();
    term.coeff = invert ? term.coeff / f : term.coeff * f;
  }

  FormTerm parse_form_term() {
    FormTerm term{num(1), {}};
    parse_form_factor(term, false);
    for (;;) {
      if (cur().k == TK::Star || cur().k == TK::Slash) {
        bool div = eat().k == TK::Slash;
        parse_form_factor(term, div);
      } else if (cur().k == TK::Caret) {
        // wedge: power operators were already consumed inside scalar factors
        eat();
        if (!at_differential())
          throw ParseError("expected d(...) after wedge '^'", cur().pos);
        parse_form_factor(term, false);
      } else {
        break;
      }
    }
    return term;
  }

  std::vector<FormTerm> parse_form() {
    std::vector<FormTerm> out;
    int sign = 1;
    if (cur().k == TK::Minus || cur().k == TK::Plus) sign = eat().k == TK::Minus ? -1 : 1;
    for (;;) {
      FormTerm t = parse_form_term();
      if (sign < 0) t.coeff = -t.coeff;
      out.push_back(std::move(t));
      if (cur().k == TK::Plus || cur().k == TK::Minus) {
        sign = eat().k == TK::Minus ? -1 : 1;
        continue;
      }
      break;
    }
    expect(TK::End, "end of form expression");
    return out;
  }
};

}  // namespace

Expr parse_expr(const std::string& src, const ParserEnv& env) {
  Parser p(src, env);
  Expr e = p.parse_sum();
  p.expect(TK::End, "end of expression");
  return e;
}

std::vector<Expr> parse_expr_list(const std::string& src, const ParserEnv& env) {
  Parser p(src, env);
  std::vector<Expr> out{p.parse_sum()};
  while (p.cur().k == TK::Semi) {
    p.eat();
    out.push_back(p.parse_sum());
  }
  p.expect(TK::End, "end of expression list");
  return out;
}

std::vector<FormTerm> parse_form_terms(const std::string& src, const ParserEnv& env) {
  Parser p(src, env);
  return p.parse_form();
}

}  // namespace geo
