#include "geored/scenario.hpp"

#include "geored/normal_form.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace geo {

namespace {

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
  throw ScenarioError(origin + ":" + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
    return s.substr(1, s.size() - 2);
  return s;
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha((unsigned char)s[0]) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum((unsigned char)c) && c != '_' && c != '^') return false;
  return true;
}

// Cuts an end-of-line comment; '#' inside double quotes is literal.
std::string strip_comment(const std::string& s) {
  bool q = false;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') q = !q;
    else if (s[i] == '#' && !q) return s.substr(0, i);
  }
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) { out.push_back(cur); cur.clear(); }
    else cur += c;
  }
  out.push_back(cur);
  return out;
}

struct RawLine {
  int no = 0;
  std::string key, value;
};

struct RawSection {
  std::string name;
  int no = 0;
  std::vector<RawLine> lines;
};

struct RawFile {
  std::string origin;
  std::vector<RawLine> header;
  std::vector<std::pair<std::string, int>> opaques;  // name, arity (decl order lost, map later)
  std::vector<std::pair<std::string, int>> opaque_lines;
  std::vector<RawSection> sections;
};

RawFile tokenize(const std::string& text, const std::string& origin) {
  RawFile f;
  f.origin = origin;
  std::istringstream in(text);
  std::string raw;
  int no = 0;
  RawSection* cur = nullptr;
  while (std::getline(in, raw)) {
    ++no;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(origin, no, "unterminated section header");
      std::string name = trim(line.substr(1, line.size() - 2));
      if (name.empty()) fail(origin, no, "empty section name");
      f.sections.push_back(RawSection{name, no, {}});
      cur = &f.sections.back();
      continue;
    }
    if (!cur && line.rfind("opaque", 0) == 0 &&
        (line.size() == 6 || std::isspace((unsigned char)line[6]))) {
      std::string rest = trim(line.substr(6));
      size_t colon = rest.find(':');
      if (colon == std::string::npos) fail(origin, no, "opaque declaration needs ':'");
      std::string name = trim(rest.substr(0, colon));
      std::string tail = trim(rest.substr(colon + 1));
      if (!valid_name(name)) fail(origin, no, "invalid opaque name '" + name + "'");
      std::istringstream ts(tail);
      int arity = -1;
      std::string word;
      ts >> arity >> word;
      if (arity < 0 || (word != "arg" && word != "args"))
        fail(origin, no, "opaque declaration must end in '<n> arg(s)'");
      f.opaques.emplace_back(name, arity);
      f.opaque_lines.emplace_back(name, no);
      continue;
    }
    bool q = false;
    size_t eq = std::string::npos;
    for (size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') q = !q;
      else if (line[i] == '=' && !q) { eq = i; break; }
    }
    if (eq == std::string::npos) fail(origin, no, "expected 'key = value'");
    RawLine l{no, unquote(trim(line.substr(0, eq))), unquote(trim(line.substr(eq + 1)))};
    if (l.key.empty()) fail(origin, no, "empty key");
    if (cur) cur->lines.push_back(std::move(l));
    else f.header.push_back(std::move(l));
  }
  return f;
}

// App names used inside an expression (opaque calls).
void collect_apps(const Expr& e, std::set<std::string>& out) {
  if (e->k == EK::App) out.insert(e->name);
  for (const auto& c : e->ch) collect_apps(c, out);
}

// Structure-constant values: signed terms of an optional rational coefficient
// juxtaposed with a basis name, e.g. "2 x2 - x1".
RatVec parse_lincomb(const std::string& src, const std::vector<std::string>& basis,
                     const std::string& origin, int no) {
  RatVec out(basis.size(), Rat(0));
  size_t i = 0;
  auto skip_ws = [&] { while (i < src.size() && std::isspace((unsigned char)src[i])) ++i; };
  skip_ws();
  if (i == src.size()) fail(origin, no, "empty bracket value");
  bool first = true;
  while (i < src.size()) {
    Rat sign(1);
    skip_ws();
    if (i < src.size() && (src[i] == '+' || src[i] == '-')) {
      if (src[i] == '-') sign = -1;
      ++i;
      skip_ws();
    } else if (!first) {
      fail(origin, no, "expected '+' or '-' in bracket value");
    }
    Rat coeff(1);
    if (i < src.size() && std::isdigit((unsigned char)src[i])) {
      size_t j = i;
      while (j < src.size() && std::isdigit((unsigned char)src[j])) ++j;
      std::string numpart = src.substr(i, j - i);
      i = j;
      if (i < src.size() && src[i] == '/') {
        ++i;
        size_t d = i;
        while (d < src.size() && std::isdigit((unsigned char)src[d])) ++d;
        if (d == i) fail(origin, no, "malformed rational in bracket value");
        numpart += "/" + src.substr(i, d - i);
        i = d;
      }
      coeff = Rat(numpart);
      skip_ws();
    }
    size_t j = i;
    while (j < src.size() && (std::isalnum((unsigned char)src[j]) || src[j] == '_' || src[j] == '^'))
      ++j;
    std::string name = src.substr(i, j - i);
    if (name.empty()) fail(origin, no, "expected basis element in bracket value");
    auto it = std::find(basis.begin(), basis.end(), name);
    if (it == basis.end()) fail(origin, no, "unknown basis element '" + name + "'");
    out[it - basis.begin()] += sign * coeff;
    i = j;
    skip_ws();
    first = false;
  }
  return out;
}

std::string format_lincomb(const RatVec& v, const std::vector<std::string>& basis) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    Rat a = v[i];
    if (out.empty()) {
      if (a < 0) { out += "-"; a = -a; }
    } else {
      out += a < 0 ? " - " : " + ";
      if (a < 0) a = -a;
    }
    if (a != 1) out += a.str() + " ";
    out += basis[i];
  }
  return out;
}

struct Builder {
  const RawFile& f;
  Scenario s;
  std::map<std::string, const RawSection*> secs;

  explicit Builder(const RawFile& file) : f(file) {}

  [[noreturn]] void err(int no, const std::string& msg) const { fail(f.origin, no, msg); }

  const RawSection* section(const std::string& name) const {
    auto it = secs.find(name);
    return it == secs.end() ? nullptr : it->second;
  }

  static const RawLine* find_key(const RawSection& sec, const std::string& key) {
    for (const auto& l : sec.lines)
      if (l.key == key) return &l;
    return nullptr;
  }

  void check_keys(const RawSection& sec, const std::vector<std::string>& allowed) const {
    for (const auto& l : sec.lines) {
      bool dup = false;
      for (const auto& m : sec.lines)
        if (&m != &l && m.key == l.key) dup = true;
      if (dup) err(l.no, "duplicate key '" + l.key + "'");
      if (std::find(allowed.begin(), allowed.end(), l.key) == allowed.end())
        err(l.no, "unknown key '" + l.key + "' in [" + sec.name + "]");
    }
  }

  // Keys "<stem>.1" .. "<stem>.N", contiguous from 1, in any file order.
  std::vector<const RawLine*> numbered(const RawSection& sec, const std::string& stem) const {
    std::vector<std::pair<int, const RawLine*>> found;
    for (const auto& l : sec.lines) {
      if (l.key.rfind(stem + ".", 0) != 0)
        err(l.no, "unknown key '" + l.key + "' in [" + sec.name + "]");
      std::string idx = l.key.substr(stem.size() + 1);
      if (idx.empty() || idx.find_first_not_of("0123456789") != std::string::npos)
        err(l.no, "key '" + l.key + "' needs a numeric suffix");
      found.emplace_back(std::stoi(idx), &l);
    }
    std::sort(found.begin(), found.end());
    std::vector<const RawLine*> out;
    for (size_t i = 0; i < found.size(); ++i) {
      if (found[i].first != (int)i + 1)
        err(found[i].second->no, stem + " components must be numbered 1.." +
                                      std::to_string(found.size()));
      out.push_back(found[i].second);
    }
    return out;
  }

  Expr pexpr(const std::string& src, int no) const {
    try {
      return parse_expr(src, s.env);
    } catch (const ParseError& e) {
      err(no, std::string("parse error: ") + e.what());
    }
  }

  std::vector<Expr> pexpr_list(const std::string& src, int no) const {
    try {
      return parse_expr_list(src, s.env);
    } catch (const ParseError& e) {
      err(no, std::string("parse error: ") + e.what());
    }
  }

  void check_syms(const Expr& e, const ChartPtr& chart, int no) const {
    std::set<std::string> syms;
    collect_syms(e, syms);
    for (const auto& n : syms)
      if (!chart->has_coord(n) && !chart->has_param(n))
        err(no, "unknown symbol '" + n + "' (chart " + chart->name + ")");
  }

  Expr chart_expr(const std::string& src, const ChartPtr& chart, int no) const {
    Expr e = pexpr(src, no);
    check_syms(e, chart, no);
    return e;
  }

  std::vector<Expr> chart_exprs(const std::string& src, const ChartPtr& chart, int no) const {
    auto es = pexpr_list(src, no);
    for (const auto& e : es) check_syms(e, chart, no);
    return es;
  }

  Rat prat(const std::string& src, int no) const {
    try {
      return evaluate(pexpr(src, no), Point{}, Bindings{});
    } catch (const std::runtime_error& e) {
      err(no, "expected a rational constant: " + std::string(e.what()));
    }
  }

  int pint(const std::string& src, int no) const {
    try {
      size_t used = 0;
      int v = std::stoi(src, &used);
      if (used != src.size()) throw std::invalid_argument(src);
      return v;
    } catch (const std::exception&) {
      err(no, "expected an integer, got '" + src + "'");
    }
  }

  std::vector<std::string> name_list(const std::string& src, int no) const {
    std::vector<std::string> out;
    for (auto& piece : split(src, ',')) {
      std::string n = trim(piece);
      if (!valid_name(n)) err(no, "invalid name '" + n + "'");
      out.push_back(n);
    }
    return out;
  }

  Form parse_form(const RawLine& l, const ChartPtr& chart, int want_degree) const {
    std::vector<FormTerm> terms;
    try {
      terms = parse_form_terms(l.value, s.env);
    } catch (const ParseError& e) {
      err(l.no, std::string("parse error: ") + e.what());
    }
    if (terms.empty()) err(l.no, "empty form");
    int degree = (int)terms[0].diffs.size();
    std::vector<std::pair<std::vector<int>, Expr>> built;
    for (const auto& t : terms) {
      if ((int)t.diffs.size() != degree) err(l.no, "VForm degree mismatch");
      check_syms(t.coeff, chart, l.no);
      std::vector<int> idx;
      for (const auto& c : t.diffs) {
        int i = chart->coord_index(c);
        if (i < 0) err(l.no, "d(" + c + ") of unknown coordinate");
        idx.push_back(i);
      }
      built.emplace_back(std::move(idx), t.coeff);
    }
    if (degree != want_degree) {
      // A plain "0" literal stands for the zero form of the wanted degree.
      if (degree == 0 && built.size() == 1 && is_zero_lit(built[0].second))
        return zero_form(chart, want_degree);
      err(l.no, "VForm degree mismatch");
    }
    return make_form(chart, degree, std::move(built));
  }

  VForm parse_vform(const RawSection& sec, const std::string& stem, const ChartPtr& chart,
                    int want_degree) const {
    auto lines = numbered(sec, stem);
    if ((int)lines.size() != s.k)
      err(sec.no, "[" + sec.name + "] needs k = " + std::to_string(s.k) + " components");
    std::vector<Form> comps;
    for (const auto* l : lines) comps.push_back(parse_form(*l, chart, want_degree));
    try {
      return make_vform(std::move(comps));
    } catch (const ChartError& e) {
      err(sec.no, e.what());
    }
  }

  void header();
  void chart();
  void params();
  void bindings();
  void structure();
  void darboux();
  void algebra();
  void action();
  void mu();
  void level_set();
  void quotient();
  void hamiltonian();
  void gauges();
  void expected();
  void simulation();

  Scenario build();
};

void Builder::header() {
  bool have_id = false;
  for (const auto& l : f.header) {
    if (l.key == "scenario") {
      if (!valid_name(l.value)) err(l.no, "invalid scenario id '" + l.value + "'");
      s.id = l.value;
      have_id = true;
    } else if (l.key == "k") {
      s.k = pint(l.value, l.no);
      if (s.k < 1) err(l.no, "k must be at least 1");
    } else {
      err(l.no, "unknown header key '" + l.key + "'");
    }
  }
  if (!have_id) err(1, "missing 'scenario = <id>' header");
  for (size_t i = 0; i < f.opaques.size(); ++i) {
    const auto& [name, arity] = f.opaques[i];
    if (s.env.opaques.count(name))
      err(f.opaque_lines[i].second, "duplicate opaque '" + name + "'");
    if (arity < 1) err(f.opaque_lines[i].second, "opaque arity must be at least 1");
    s.env.opaques[name] = arity;
  }
}

void Builder::chart() {
  const RawSection* sec = section("chart");
  if (!sec) err(1, "missing [chart] section");
  check_keys(*sec, {"name", "coords", "params"});
  const RawLine* coords = find_key(*sec, "coords");
  if (!coords) err(sec->no, "[chart] needs 'coords'");
  std::string name = s.id;
  if (const RawLine* n = find_key(*sec, "name")) name = n->value;
  std::vector<std::string> cs = name_list(coords->value, coords->no);
  std::vector<std::string> ps;
  if (const RawLine* p = find_key(*sec, "params")) ps = name_list(p->value, p->no);
  std::set<std::string> seen;
  for (const auto& c : cs)
    if (!seen.insert(c).second) err(coords->no, "duplicate coordinate '" + c + "'");
  for (const auto& p : ps)
    if (!seen.insert(p).second) err(sec->no, "parameter '" + p + "' clashes with a coordinate");
  s.chart = make_chart(name, cs, ps);
}

void Builder::params() {
  const RawSection* sec = section("params");
  if (!sec) return;
  for (const auto& l : sec->lines) {
    if (!s.chart->has_param(l.key)) err(l.no, "unknown parameter '" + l.key + "'");
    if (s.params.count(l.key)) err(l.no, "duplicate parameter value for '" + l.key + "'");
    s.params[l.key] = prat(l.value, l.no);
  }
}

void Builder::bindings() {
  const RawSection* sec = section("bindings");
  if (!sec) return;
  for (const auto& l : sec->lines) {
    auto decl = s.env.opaques.find(l.key);
    if (decl == s.env.opaques.end())
      err(l.no, "binding for undeclared opaque '" + l.key + "'");
    if (s.bindings.count(l.key)) err(l.no, "duplicate binding for '" + l.key + "'");
    size_t arrow = l.value.find("->");
    if (arrow == std::string::npos) err(l.no, "binding needs 'formals -> body'");
    std::vector<std::string> formals = name_list(trim(l.value.substr(0, arrow)), l.no);
    if ((int)formals.size() != decl->second)
      err(l.no, "binding arity mismatch for '" + l.key + "' (declared " +
                    std::to_string(decl->second) + ")");
    Expr body = pexpr(trim(l.value.substr(arrow + 2)), l.no);
    std::set<std::string> apps;
    collect_apps(body, apps);
    if (apps.count(l.key)) err(l.no, "binding for '" + l.key + "' refers to itself");
    std::set<std::string> syms;
    collect_syms(body, syms);
    for (const auto& n : syms) {
      bool formal = std::find(formals.begin(), formals.end(), n) != formals.end();
      if (!formal && !s.chart->has_param(n))
        err(l.no, "binding body uses unknown symbol '" + n + "'");
    }
    s.bindings[l.key] = OpaqueDef{std::move(formals), std::move(body)};
  }
}

void Builder::structure() {
  const RawSection* eta = section("form.eta");
  const RawSection* omega = section("form.omega");
  const RawSection* theta = section("form.theta");
  if (eta && (omega || theta))
    err(eta->no, "scenario declares both a contact and a symplectic structure");
  if (!eta && !omega && !theta)
    err(1, "scenario declares no structure ([form.eta] or [form.omega]/[form.theta])");

  std::vector<Expr> opens;
  if (const RawSection* oc = section("open_conditions")) {
    for (const auto* l : numbered(*oc, "expr"))
      opens.push_back(chart_expr(l->value, s.chart, l->no));
  }

  std::vector<VectorField> pol;
  const RawSection* pol_sec = section("polarization");
  if (pol_sec) {
    if (!eta) err(pol_sec->no, "polarization requires a contact structure");
    for (const auto* l : numbered(*pol_sec, "v")) {
      auto comps = chart_exprs(l->value, s.chart, l->no);
      if ((int)comps.size() != s.chart->dim())
        err(l->no, "vector field needs " + std::to_string(s.chart->dim()) + " components");
      pol.push_back(make_vf(s.chart, std::move(comps)));
    }
  }

  if (eta) {
    VForm v = parse_vform(*eta, "eta", s.chart, 1);
    try {
      s.kc = make_kcontact(std::move(v), std::move(pol), std::move(opens));
    } catch (const ChartError& e) {
      err(eta->no, e.what());
    }
    return;
  }

  std::optional<VForm> th;
  if (theta) th = parse_vform(*theta, "theta", s.chart, 1);
  std::optional<VForm> om;
  if (omega) om = parse_vform(*omega, "omega", s.chart, 2);
  if (th && om && !vform_equal(*om, d(*th)))
    err(omega->no, "[form.omega] disagrees with d of [form.theta]");
  if (!om) om = d(*th);
  try {
    s.ks = make_ksymplectic(std::move(*om), std::move(th), std::move(opens));
  } catch (const ChartError& e) {
    err(theta ? theta->no : omega->no, e.what());
  }
}

void Builder::darboux() {
  const RawSection* sec = section("darboux");
  if (!sec) return;
  const RawLine* q = find_key(*sec, "q");
  if (!q) err(sec->no, "[darboux] needs 'q'");
  DarbouxShape shape;
  shape.q = name_list(q->value, q->no);
  std::vector<std::string> allowed = {"q", "z"};
  for (const auto& qi : shape.q) allowed.push_back("p." + qi);
  check_keys(*sec, allowed);
  for (const auto& qi : shape.q) {
    const RawLine* row = find_key(*sec, "p." + qi);
    if (!row) err(sec->no, "[darboux] needs 'p." + qi + "'");
    auto names = name_list(row->value, row->no);
    if ((int)names.size() != s.k)
      err(row->no, "p." + qi + " needs k = " + std::to_string(s.k) + " momenta");
    shape.p.push_back(std::move(names));
  }
  if (const RawLine* z = find_key(*sec, "z")) {
    shape.z = name_list(z->value, z->no);
    if ((int)shape.z.size() != s.k)
      err(z->no, "z needs k = " + std::to_string(s.k) + " names");
  }
  if (s.kc && shape.z.empty()) err(sec->no, "contact layout needs 'z'");
  if (s.ks && !shape.z.empty()) err(sec->no, "symplectic layout takes no 'z'");
  auto need_coord = [&](const std::string& n) {
    if (!s.chart->has_coord(n)) err(sec->no, "darboux name '" + n + "' is not a coordinate");
  };
  for (const auto& n : shape.q) need_coord(n);
  for (const auto& row : shape.p)
    for (const auto& n : row) need_coord(n);
  for (const auto& n : shape.z) need_coord(n);
  s.darboux = std::move(shape);
}

void Builder::algebra() {
  const RawSection* sec = section("algebra");
  if (!sec) return;
  const RawLine* basis = find_key(*sec, "basis");
  if (!basis) err(sec->no, "[algebra] needs 'basis'");
  std::vector<std::string> names = name_list(basis->value, basis->no);
  std::map<std::pair<int, int>, RatVec> brackets;
  for (const auto& l : sec->lines) {
    if (l.key == "basis") continue;
    auto pieces = split(l.key, ',');
    if (pieces.size() != 2) err(l.no, "bracket key must be '\"a,b\"'");
    int i = -1, j = -1;
    for (size_t m = 0; m < names.size(); ++m) {
      if (names[m] == trim(pieces[0])) i = (int)m;
      if (names[m] == trim(pieces[1])) j = (int)m;
    }
    if (i < 0 || j < 0) err(l.no, "bracket key names unknown basis element");
    if (brackets.count({i, j})) err(l.no, "duplicate bracket");
    brackets[{i, j}] = parse_lincomb(l.value, names, f.origin, l.no);
  }
  try {
    s.algebra = make_lie_algebra(std::move(names), brackets);
  } catch (const InternalError& e) {
    err(sec->no, e.what());
  }
}

void Builder::action() {
  const RawSection* sec = section("action");
  if (!sec) return;
  if (!s.algebra) err(sec->no, "[action] requires [algebra]");
  std::vector<std::string> allowed = {"sigma"};
  for (const auto& b : s.algebra->basis) allowed.push_back(b);
  check_keys(*sec, allowed);
  int sigma = -1;
  if (const RawLine* sg = find_key(*sec, "sigma")) {
    if (sg->value == "1" || sg->value == "+1") sigma = 1;
    else if (sg->value == "-1") sigma = -1;
    else err(sg->no, "sigma must be 1 or -1");
  }
  std::vector<VectorField> fund;
  for (const auto& b : s.algebra->basis) {
    const RawLine* row = find_key(*sec, b);
    if (!row) err(sec->no, "[action] missing fundamental field for '" + b + "'");
    auto comps = chart_exprs(row->value, s.chart, row->no);
    if ((int)comps.size() != s.chart->dim())
      err(row->no, "fundamental field needs " + std::to_string(s.chart->dim()) +
                       " components");
    fund.push_back(make_vf(s.chart, std::move(comps)));
  }
  InfAction act{s.algebra, s.chart, std::move(fund), sigma};
  StructureReport rep = check_infaction(act);
  if (!rep.pass)
    err(sec->no, "fundamental fields do not close under the declared brackets");
  s.action = std::move(act);
  if (s.kc) s.momentum = momentum_from_action(*s.action, *s.kc);
  else if (s.ks && s.ks->theta) s.momentum = momentum_from_theta(*s.action, *s.ks->theta);
}

void Builder::mu() {
  const RawSection* sec = section("mu");
  if (!sec) return;
  if (!s.algebra) err(sec->no, "[mu] requires [algebra]");
  auto lines = numbered(*sec, "mu");
  if ((int)lines.size() != s.k)
    err(sec->no, "[mu] needs k = " + std::to_string(s.k) + " rows");
  CoadjointValue cv;
  cv.k = s.k;
  cv.n = s.algebra->n;
  for (const auto* l : lines) {
    RatVec row;
    for (auto& piece : split(l->value, ',')) row.push_back(prat(trim(piece), l->no));
    if ((int)row.size() != s.algebra->n)
      err(l->no, "mu row needs " + std::to_string(s.algebra->n) + " entries");
    cv.rows.push_back(std::move(row));
  }
  s.mu = std::move(cv);
}

void Builder::level_set() {
  const RawSection* sec = section("level_set");
  if (!sec) return;
  check_keys(*sec, {"coords", "embed", "open"});
  if (!s.action || !s.mu) err(sec->no, "[level_set] requires [action] and [mu]");
  if (!s.momentum)
    err(sec->no, "no momentum map available (symplectic structure lacks [form.theta])");
  const RawLine* coords = find_key(*sec, "coords");
  const RawLine* embed = find_key(*sec, "embed");
  if (!coords || !embed) err(sec->no, "[level_set] needs 'coords' and 'embed'");
  ChartPtr param = make_chart(s.chart->name + "_level", name_list(coords->value, coords->no),
                              s.chart->params);
  auto comps = chart_exprs(embed->value, param, embed->no);
  if ((int)comps.size() != s.chart->dim())
    err(embed->no, "embed needs " + std::to_string(s.chart->dim()) + " components");
  std::vector<Expr> opens;
  if (const RawLine* o = find_key(*sec, "open")) opens = chart_exprs(o->value, param, o->no);
  try {
    s.level = level_set_of(*s.momentum, *s.mu, param, make_map(param, s.chart, comps), opens);
  } catch (const std::runtime_error& e) {
    err(sec->no, e.what());
  }
}

void Builder::quotient() {
  const RawSection* sec = section("quotient");
  if (!sec) return;
  if (!s.level) err(sec->no, "[quotient] requires [level_set]");
  std::vector<std::string> allowed = {"coords", "proj", "section", "open"};
  for (int a = 1; a <= s.k; ++a) allowed.push_back("eta_red." + std::to_string(a));
  check_keys(*sec, allowed);
  const RawLine* coords = find_key(*sec, "coords");
  const RawLine* proj = find_key(*sec, "proj");
  const RawLine* section_l = find_key(*sec, "section");
  if (!coords || !proj || !section_l)
    err(sec->no, "[quotient] needs 'coords', 'proj' and 'section'");
  ChartPtr reduced = make_chart(s.chart->name + "_red", name_list(coords->value, coords->no),
                                s.chart->params);
  ChartPtr param = s.level->param_chart;
  auto proj_c = chart_exprs(proj->value, param, proj->no);
  if ((int)proj_c.size() != reduced->dim())
    err(proj->no, "proj needs " + std::to_string(reduced->dim()) + " components");
  auto sect_c = chart_exprs(section_l->value, reduced, section_l->no);
  if ((int)sect_c.size() != param->dim())
    err(section_l->no, "section needs " + std::to_string(param->dim()) + " components");
  std::vector<Form> comps;
  for (int a = 1; a <= s.k; ++a) {
    const RawLine* l = find_key(*sec, "eta_red." + std::to_string(a));
    if (!l) err(sec->no, "[quotient] needs eta_red.1..eta_red." + std::to_string(s.k));
    comps.push_back(parse_form(*l, reduced, 1));
  }
  std::vector<Expr> opens;
  if (const RawLine* o = find_key(*sec, "open")) opens = chart_exprs(o->value, reduced, o->no);
  s.quotient = QuotientPresentation{*s.level, reduced, make_map(param, reduced, proj_c),
                                    make_map(reduced, param, sect_c),
                                    make_vform(std::move(comps)), std::move(opens)};
}

void Builder::hamiltonian() {
  const RawSection* sec = section("hamiltonian");
  if (!sec) return;
  check_keys(*sec, {"h"});
  const RawLine* h = find_key(*sec, "h");
  if (!h) err(sec->no, "[hamiltonian] needs 'h'");
  s.h = chart_expr(h->value, s.chart, h->no);
}

void Builder::gauges() {
  for (const auto& sec : f.sections) {
    if (sec.name.rfind("gauge.", 0) != 0) continue;
    std::string name = sec.name.substr(6);
    if (name.empty()) err(sec.no, "gauge section needs a name");
    if (s.gauges.count(name)) err(sec.no, "duplicate gauge '" + name + "'");
    GaugeAssignment g;
    for (const auto& l : sec.lines) {
      auto pieces = split(l.key, ':');
      if (pieces.size() != 2) err(l.no, "gauge key must be '<field>:<coordinate>'");
      int field = pint(trim(pieces[0]), l.no);
      if (field < 1 || field > s.k)
        err(l.no, "gauge field index out of range 1.." + std::to_string(s.k));
      std::string coord = trim(pieces[1]);
      if (!s.chart->has_coord(coord)) err(l.no, "unknown coordinate '" + coord + "'");
      auto slot = std::make_pair(field - 1, coord);
      if (g.slots.count(slot)) err(l.no, "duplicate gauge slot");
      g.slots[slot] = chart_expr(l.value, s.chart, l.no);
    }
    s.gauges[name] = std::move(g);
  }
}

void Builder::expected() {
  const RawSection* sec = section("expected");
  if (!sec) return;
  for (const auto& l : sec->lines) {
    if (s.expected.count(l.key)) err(l.no, "duplicate expected key '" + l.key + "'");
    s.expected[l.key] = l.value;
  }
}

void Builder::simulation() {
  const RawSection* sec = section("simulation");
  if (!sec) return;
  check_keys(*sec, {"nodes", "steps", "t_end"});
  if (const RawLine* l = find_key(*sec, "nodes")) s.sim_nodes = pint(l->value, l->no);
  if (const RawLine* l = find_key(*sec, "steps")) s.sim_steps = pint(l->value, l->no);
  if (const RawLine* l = find_key(*sec, "t_end")) {
    try {
      s.sim_t_end = std::stod(l->value);
    } catch (const std::exception&) {
      err(l->no, "expected a number, got '" + l->value + "'");
    }
  }
}

Scenario Builder::build() {
  static const std::vector<std::string> known = {
      "chart",      "params",   "bindings", "form.eta",   "form.omega",
      "form.theta", "polarization", "open_conditions", "darboux", "algebra",
      "action",     "mu",       "level_set", "quotient",  "hamiltonian",
      "expected",   "simulation"};
  for (const auto& sec : f.sections) {
    bool ok = std::find(known.begin(), known.end(), sec.name) != known.end() ||
              sec.name.rfind("gauge.", 0) == 0;
    if (!ok) err(sec.no, "unknown section [" + sec.name + "]");
    if (secs.count(sec.name)) err(sec.no, "duplicate section [" + sec.name + "]");
    secs[sec.name] = &sec;
  }
  header();
  chart();
  params();
  bindings();
  structure();
  darboux();
  algebra();
  action();
  mu();
  level_set();
  quotient();
  hamiltonian();
  gauges();
  expected();
  simulation();
  return std::move(s);
}

std::string form_str(const Form& a) {
  if (a.coef.empty() && a.degree >= 1) {
    std::string out = "0*";
    for (int i = 0; i < a.degree; ++i) {
      if (i) out += "^";
      out += "d(" + a.chart->coords[i] + ")";
    }
    return out;
  }
  return to_string(a);
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i];
  }
  return out;
}

std::string expr_list_str(const std::vector<Expr>& es) {
  std::vector<std::string> parts;
  for (const auto& e : es) parts.push_back(to_string(e));
  return join(parts, "; ");
}

}  // namespace

const ChartPtr& Scenario::structure_chart() const {
  if (kc) return kc->chart;
  if (ks) return ks->chart;
  return chart;
}

std::vector<Expr> Scenario::structure_open() const {
  if (kc) return kc->open_conditions;
  if (ks) return ks->open_conditions;
  return {};
}

Scenario parse_scenario(const std::string& text, const std::string& origin) {
  RawFile raw = tokenize(text, origin);
  Builder b(raw);
  return b.build();
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError(path + ": cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "scenario = " << s.id << "\n";
  out << "k = " << s.k << "\n";
  for (const auto& [name, arity] : s.env.opaques)
    out << "opaque " << name << " : " << arity << (arity == 1 ? " arg" : " args") << "\n";

  out << "\n[chart]\n";
  out << "name = " << s.chart->name << "\n";
  out << "coords = \"" << join(s.chart->coords, ", ") << "\"\n";
  if (!s.chart->params.empty())
    out << "params = \"" << join(s.chart->params, ", ") << "\"\n";

  if (!s.params.empty()) {
    out << "\n[params]\n";
    for (const auto& [k, v] : s.params) out << k << " = " << v.str() << "\n";
  }

  if (!s.bindings.empty()) {
    out << "\n[bindings]\n";
    for (const auto& [k, def] : s.bindings)
      out << k << " = \"" << join(def.formals, ", ") << " -> " << to_string(def.body)
          << "\"\n";
  }

  auto emit_vform = [&](const std::string& section, const std::string& stem, const VForm& v) {
    out << "\n[" << section << "]\n";
    for (int a = 0; a < v.k(); ++a)
      out << stem << "." << a + 1 << " = \"" << form_str(v.comp[a]) << "\"\n";
  };

  if (s.kc) {
    emit_vform("form.eta", "eta", s.kc->eta);
    if (!s.kc->polarization.empty()) {
      out << "\n[polarization]\n";
      for (size_t i = 0; i < s.kc->polarization.size(); ++i)
        out << "v." << i + 1 << " = \"" << expr_list_str(s.kc->polarization[i].comp)
            << "\"\n";
    }
  } else if (s.ks) {
    if (s.ks->theta) emit_vform("form.theta", "theta", *s.ks->theta);
    else emit_vform("form.omega", "omega", s.ks->omega);
  }

  std::vector<Expr> opens = s.structure_open();
  if (!opens.empty()) {
    out << "\n[open_conditions]\n";
    for (size_t i = 0; i < opens.size(); ++i)
      out << "expr." << i + 1 << " = \"" << to_string(opens[i]) << "\"\n";
  }

  if (s.darboux) {
    out << "\n[darboux]\n";
    out << "q = \"" << join(s.darboux->q, ", ") << "\"\n";
    for (size_t i = 0; i < s.darboux->q.size(); ++i)
      out << "p." << s.darboux->q[i] << " = \"" << join(s.darboux->p[i], ", ") << "\"\n";
    if (!s.darboux->z.empty()) out << "z = \"" << join(s.darboux->z, ", ") << "\"\n";
  }

  if (s.algebra) {
    out << "\n[algebra]\n";
    out << "basis = \"" << join(s.algebra->basis, ", ") << "\"\n";
    for (int i = 0; i < s.algebra->n; ++i)
      for (int j = i + 1; j < s.algebra->n; ++j) {
        bool zero = true;
        for (const Rat& c : s.algebra->c[i][j])
          if (c != 0) zero = false;
        if (zero) continue;
        out << "\"" << s.algebra->basis[i] << "," << s.algebra->basis[j] << "\" = \""
            << format_lincomb(s.algebra->c[i][j], s.algebra->basis) << "\"\n";
      }
  }

  if (s.action) {
    out << "\n[action]\n";
    out << "sigma = " << s.action->sigma << "\n";
    for (int i = 0; i < s.algebra->n; ++i)
      out << s.algebra->basis[i] << " = \"" << expr_list_str(s.action->fund[i].comp)
          << "\"\n";
  }

  if (s.mu) {
    out << "\n[mu]\n";
    for (int a = 0; a < s.mu->k; ++a) {
      std::vector<std::string> parts;
      for (const Rat& r : s.mu->rows[a]) parts.push_back(r.str());
      out << "mu." << a + 1 << " = \"" << join(parts, ", ") << "\"\n";
    }
  }

  if (s.level) {
    out << "\n[level_set]\n";
    out << "coords = \"" << join(s.level->param_chart->coords, ", ") << "\"\n";
    out << "embed = \"" << expr_list_str(s.level->embed.comp) << "\"\n";
    if (!s.level->param_open.empty())
      out << "open = \"" << expr_list_str(s.level->param_open) << "\"\n";
  }

  if (s.quotient) {
    out << "\n[quotient]\n";
    out << "coords = \"" << join(s.quotient->reduced->coords, ", ") << "\"\n";
    out << "proj = \"" << expr_list_str(s.quotient->proj.comp) << "\"\n";
    out << "section = \"" << expr_list_str(s.quotient->section.comp) << "\"\n";
    for (int a = 0; a < s.k; ++a)
      out << "eta_red." << a + 1 << " = \"" << form_str(s.quotient->eta_red.comp[a])
          << "\"\n";
    if (!s.quotient->reduced_open.empty())
      out << "open = \"" << expr_list_str(s.quotient->reduced_open) << "\"\n";
  }

  if (s.h) {
    out << "\n[hamiltonian]\n";
    out << "h = \"" << to_string(*s.h) << "\"\n";
  }

  for (const auto& [name, g] : s.gauges) {
    out << "\n[gauge." << name << "]\n";
    for (const auto& [slot, e] : g.slots)
      out << "\"" << slot.first + 1 << ":" << slot.second << "\" = \"" << to_string(e)
          << "\"\n";
  }

  if (!s.expected.empty()) {
    out << "\n[expected]\n";
    for (const auto& [k, v] : s.expected) out << k << " = \"" << v << "\"\n";
  }

  if (s.sim_nodes > 0 || s.sim_steps > 0) {
    out << "\n[simulation]\n";
    out << "nodes = " << s.sim_nodes << "\n";
    out << "steps = " << s.sim_steps << "\n";
    out << "t_end = " << s.sim_t_end << "\n";
  }
  return out.str();
}

namespace {

bool exprs_equal(const std::vector<Expr>& a, const std::vector<Expr>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!expr_equal(a[i], b[i])) return false;
  return true;
}

}  // namespace

bool scenario_equal(const Scenario& a, const Scenario& b) {
  if (a.id != b.id || a.k != b.k) return false;
  if (a.env.opaques != b.env.opaques) return false;
  if (a.chart->name != b.chart->name || a.chart->coords != b.chart->coords ||
      a.chart->params != b.chart->params)
    return false;
  if (a.params != b.params) return false;
  if (a.bindings.size() != b.bindings.size()) return false;
  for (const auto& [k, def] : a.bindings) {
    auto it = b.bindings.find(k);
    if (it == b.bindings.end() || it->second.formals != def.formals ||
        !expr_equal(it->second.body, def.body))
      return false;
  }
  if (a.kc.has_value() != b.kc.has_value() || a.ks.has_value() != b.ks.has_value())
    return false;
  if (a.kc) {
    if (!vform_equal(a.kc->eta, b.kc->eta)) return false;
    if (a.kc->polarization.size() != b.kc->polarization.size()) return false;
    for (size_t i = 0; i < a.kc->polarization.size(); ++i)
      if (!exprs_equal(a.kc->polarization[i].comp, b.kc->polarization[i].comp)) return false;
    if (!exprs_equal(a.kc->open_conditions, b.kc->open_conditions)) return false;
  }
  if (a.ks) {
    if (!vform_equal(a.ks->omega, b.ks->omega)) return false;
    if (a.ks->theta.has_value() != b.ks->theta.has_value()) return false;
    if (a.ks->theta && !vform_equal(*a.ks->theta, *b.ks->theta)) return false;
    if (!exprs_equal(a.ks->open_conditions, b.ks->open_conditions)) return false;
  }
  if (a.darboux.has_value() != b.darboux.has_value()) return false;
  if (a.darboux &&
      (a.darboux->q != b.darboux->q || a.darboux->p != b.darboux->p ||
       a.darboux->z != b.darboux->z))
    return false;
  if ((a.algebra != nullptr) != (b.algebra != nullptr)) return false;
  if (a.algebra && (a.algebra->basis != b.algebra->basis || a.algebra->c != b.algebra->c))
    return false;
  if (a.action.has_value() != b.action.has_value()) return false;
  if (a.action) {
    if (a.action->sigma != b.action->sigma) return false;
    for (int i = 0; i < a.algebra->n; ++i)
      if (!exprs_equal(a.action->fund[i].comp, b.action->fund[i].comp)) return false;
  }
  if (a.mu.has_value() != b.mu.has_value()) return false;
  if (a.mu && a.mu->rows != b.mu->rows) return false;
  if (a.level.has_value() != b.level.has_value()) return false;
  if (a.level) {
    if (a.level->param_chart->coords != b.level->param_chart->coords) return false;
    if (!exprs_equal(a.level->embed.comp, b.level->embed.comp)) return false;
    if (!exprs_equal(a.level->param_open, b.level->param_open)) return false;
  }
  if (a.quotient.has_value() != b.quotient.has_value()) return false;
  if (a.quotient) {
    if (a.quotient->reduced->coords != b.quotient->reduced->coords) return false;
    if (!exprs_equal(a.quotient->proj.comp, b.quotient->proj.comp)) return false;
    if (!exprs_equal(a.quotient->section.comp, b.quotient->section.comp)) return false;
    if (!vform_equal(a.quotient->eta_red, b.quotient->eta_red)) return false;
    if (!exprs_equal(a.quotient->reduced_open, b.quotient->reduced_open)) return false;
  }
  if (a.h.has_value() != b.h.has_value()) return false;
  if (a.h && !expr_equal(*a.h, *b.h)) return false;
  if (a.gauges.size() != b.gauges.size()) return false;
  for (const auto& [name, g] : a.gauges) {
    auto it = b.gauges.find(name);
    if (it == b.gauges.end() || it->second.slots.size() != g.slots.size()) return false;
    for (const auto& [slot, e] : g.slots) {
      auto jt = it->second.slots.find(slot);
      if (jt == it->second.slots.end() || !expr_equal(jt->second, e)) return false;
    }
  }
  if (a.expected != b.expected) return false;
  return a.sim_nodes == b.sim_nodes && a.sim_steps == b.sim_steps &&
         a.sim_t_end == b.sim_t_end;
}

}  // namespace geo
