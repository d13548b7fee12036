#pragma once

#include "geored/expr.hpp"

namespace geo {

struct ParseError : std::runtime_error {
  int pos;
  ParseError(const std::string& msg, int pos_)
      : std::runtime_error(msg), pos(pos_) {}
};

struct ParserEnv {
  std::map<std::string, int> opaques;  // name -> arity
};

Expr parse_expr(const std::string& src, const ParserEnv& env = {});
std::vector<Expr> parse_expr_list(const std::string& src, const ParserEnv& env = {});

// One additive term of a form expression: coefficient * d(c1)^d(c2)^...
// An empty diffs list is a scalar (degree 0) term.
struct FormTerm {
  Expr coeff;
  std::vector<std::string> diffs;
};
std::vector<FormTerm> parse_form_terms(const std::string& src, const ParserEnv& env = {});

}  // namespace geo
