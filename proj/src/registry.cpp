#include "geored/scenario.hpp"

namespace geo {

namespace {

// Worked examples shipped with the library. Each text is in the scenario file
// format and goes through the ordinary loader, so the registry exercises the
// same validation path as user files.

const char* kCanonicalKContact = R"scn(
scenario = canonical_kcontact
k = 2

[chart]
coords = "q1, q2, p11, p21, p12, p22, z1, z2"

[form.eta]
eta.1 = "d(z1) - p11*d(q1) - p21*d(q2)"
eta.2 = "d(z2) - p12*d(q1) - p22*d(q2)"

[polarization]
v.1 = "0; 0; 1; 0; 0; 0; 0; 0"
v.2 = "0; 0; 0; 1; 0; 0; 0; 0"
v.3 = "0; 0; 0; 0; 1; 0; 0; 0"
v.4 = "0; 0; 0; 0; 0; 1; 0; 0"

[darboux]
q = "q1, q2"
p.q1 = "p11, p12"
p.q2 = "p21, p22"
z = "z1, z2"

[hamiltonian]
h = "1/2*(p11^2 + p12^2 + p21^2 + p22^2)"

[expected]
structure = "pass"
reeb.1 = "0; 0; 0; 0; 0; 0; 1; 0"
reeb.2 = "0; 0; 0; 0; 0; 0; 0; 1"
hdw = "pass"
)scn";

const char* kCanonicalKSymplectic = R"scn(
scenario = canonical_ksymplectic
k = 2

[chart]
coords = "q, p1, p2"

[form.theta]
theta.1 = "p1*d(q)"
theta.2 = "p2*d(q)"

[darboux]
q = "q"
p.q = "p1, p2"

[algebra]
basis = "xi1"

[action]
sigma = -1
xi1 = "1; 0; 0"

[mu]
mu.1 = "1"
mu.2 = "1"

[level_set]
coords = "q, p1, p2"
embed = "q; p1; p2"
open = "p1; p2"

[hamiltonian]
h = "1/2*(p1^2 + p2^2)"

[expected]
structure = "pass"
conditions = "pass"
hdw = "pass"
)scn";

const char* kDampedWave = R"scn(
scenario = damped_wave
k = 2

[chart]
coords = "u, p^t, p^x, s^t, s^x"
params = "rho, tau, kappa"

[params]
rho = 1
tau = 1
kappa = 1/10

[form.eta]
eta.1 = "d(s^t) - p^t*d(u)"
eta.2 = "d(s^x) - p^x*d(u)"

[darboux]
q = "u"
p.u = "p^t, p^x"
z = "s^t, s^x"

[hamiltonian]
h = "1/(2*rho)*(p^t)^2 - 1/(2*tau)*(p^x)^2 + kappa*s^t"

[gauge.paper]
"1:p^t" = "-kappa*p^t"
"1:p^x" = "0"
"2:p^t" = "0"
"1:s^t" = "0"

[gauge.integrable]
"1:p^t" = "-kappa*p^t"
"1:p^x" = "0"
"2:p^t" = "0"
"1:s^t" = "0"
"1:s^x" = "kappa*tau*u*(p^t)^2/(rho*p^x)"
"2:s^t" = "0"

[expected]
structure = "pass"
reeb.1 = "0; 0; 0; 1; 0"
reeb.2 = "0; 0; 0; 0; 1"
hdw = "pass"
integrability.paper = "fail"
integrability.integrable = "pass"

[simulation]
nodes = 256
steps = 1024
t_end = 1
)scn";

const char* kCoupledStrings = R"scn(
scenario = coupled_strings
k = 2
opaque C : 1 arg

[chart]
coords = "q1, q2, p1t, p2t, p1x, p2x, s_t, s_x"
params = "gamma"

[params]
gamma = 1/10

[bindings]
C = "q -> q^2/2"

[form.eta]
eta.1 = "d(s_t) - p1t*d(q1) - p2t*d(q2)"
eta.2 = "d(s_x) - p1x*d(q1) - p2x*d(q2)"

[darboux]
q = "q1, q2"
p.q1 = "p1t, p1x"
p.q2 = "p2t, p2x"
z = "s_t, s_x"

[algebra]
basis = "xi1, xi2"

[action]
sigma = -1
xi1 = "0; 0; 0; 0; 0; 0; 0; 1"
xi2 = "1; 1; 0; 0; 0; 0; 0; 0"

[mu]
mu.1 = "0, 0"
mu.2 = "1, 0"

[level_set]
coords = "q1, q2, p1t, p1x, s_t, s_x"
embed = "q1; q2; p1t; -p1t; p1x; -p1x; s_t; s_x"

[quotient]
coords = "q, pt, px, s_t, s_x"
proj = "q1 - q2; 2*p1t; 2*p1x; s_t; s_x"
section = "q; 0; pt/2; px/2; s_t; s_x"
eta_red.1 = "d(s_t) - 1/2*pt*d(q)"
eta_red.2 = "d(s_x) - 1/2*px*d(q)"

[hamiltonian]
h = "1/2*((p1t)^2 + (p2t)^2 - (p1x)^2 - (p2x)^2) + C(q1 - q2) + gamma*s_t"

[gauge.invariant]
"2:p1x" = "0"
"2:p2x" = "0"
"2:s_x" = "0"

[expected]
structure = "pass"
willett = "true"
k_fix_dim = "1"
k_ray_dim = "1"
conditions = "pass"
reduction = "pass"
h_red = "1/4*(pt^2 - px^2) + C(q) + gamma*s_t"
reeb.1 = "0; 0; 0; 0; 0; 0; 1; 0"
reeb.2 = "0; 0; 0; 0; 0; 0; 0; 1"
reduced_reeb.1 = "0; 0; 0; 1; 0"
reduced_reeb.2 = "0; 0; 0; 0; 1"
hdw = "pass"

[simulation]
steps = 1000
t_end = 1
)scn";

const char* kProductContact = R"scn(
scenario = product_contact
k = 2

[chart]
coords = "x1, x2, y1, y2, z1, x3, y3, z2"

[form.eta]
eta.1 = "d(z1) - y1*d(x1) - y2*d(x2)"
eta.2 = "d(z2) - y3*d(x3)"

[algebra]
basis = "xi1, xi2, xi3"

[action]
sigma = -1
xi1 = "1; 0; 0; 0; 0; 0; 0; 0"
xi2 = "0; 1; 0; 0; 0; 0; 0; 0"
xi3 = "0; 0; 0; 0; 0; 1; 0; 0"

[mu]
mu.1 = "1, 0, 0"
mu.2 = "0, 0, 1"

[level_set]
coords = "x1, x2, y1, z1, x3, y3, z2"
embed = "x1; x2; y1; 0; z1; x3; y3; z2"
open = "y1; y3"

[quotient]
coords = "x1, y1, z1, x3, y3, z2"
proj = "x1; y1; z1; x3; y3; z2"
section = "x1; 0; y1; z1; x3; y3; z2"
eta_red.1 = "d(z1) - y1*d(x1)"
eta_red.2 = "d(z2) - y3*d(x3)"
open = "y1; y3"

[expected]
structure = "pass"
willett = "true"
k_fix_dim = "1"
k_ray_dim = "1"
conditions = "pass"
reduction = "pass"
reeb.1 = "0; 0; 0; 0; 1; 0; 0; 0"
reeb.2 = "0; 0; 0; 0; 0; 0; 0; 1"
reduced_reeb.1 = "0; 0; 1; 0; 0; 0"
reduced_reeb.2 = "0; 0; 0; 0; 0; 1"
)scn";

const char* kR10TwoContact = R"scn(
scenario = r10_two_contact
k = 2

[chart]
coords = "x1, x2, x3, x4, s1, y1, y2, y3, y4, s2"

[form.eta]
eta.1 = "d(s1) - x2*d(x1) - x4*d(x3)"
eta.2 = "d(s2) - y2*d(y1) - y4*d(y3)"

[algebra]
basis = "xi1, xi2, xi3"

[action]
sigma = -1
xi1 = "0; 0; 0; 0; 0; 0; 0; 0; 0; 1"
xi2 = "0; 0; 1; 0; 0; 0; 0; 0; 0; 0"
xi3 = "0; 0; 0; 0; 0; 1; 0; 1; 0; 0"

[mu]
mu.1 = "0, 0, 0"
mu.2 = "1, 0, -1"

[level_set]
coords = "x1, x2, x3, s1, y1, y2, y3, s2"
embed = "x1; x2; x3; 0; s1; y1; y2; y3; 1 - y2; s2"

[quotient]
coords = "x1, x2, s1, beta, z3, z4"
proj = "x1; x2; s1; (y1 + y3 - 2*s2)/3; y1 - y3; 2*y2 - 1"
section = "x1; x2; 0; s1; (beta + z3)/2; (1 + z4)/2; (beta - z3)/2; -beta"
eta_red.1 = "d(s1) - x2*d(x1)"
eta_red.2 = "-3/2*d(beta) - 1/2*z4*d(z3)"

[expected]
structure = "pass"
willett = "true"
k_fix_dim = "2"
k_ray_dim = "2"
conditions = "pass"
reduction = "pass"
reeb.1 = "0; 0; 0; 0; 1; 0; 0; 0; 0; 0"
reeb.2 = "0; 0; 0; 0; 0; 0; 0; 0; 0; 1"
reduced_reeb.1 = "0; 0; 1; 0; 0; 0"
reduced_reeb.2 = "0; 0; 0; -2/3; 0; 0"
)scn";

const char* kSl2Counterexample = R"scn(
scenario = sl2_counterexample
k = 1

[chart]
coords = "a, b, c, l1, l2, l3, t"

[form.eta]
eta.1 = "d(t) - l1*(1 + b*c)/a*d(a) - l2*b*(1 + b*c)/a^2*d(a) + l3*c*d(a) - l2/a*d(b) + l1*b*d(c) + l2*b^2/a*d(c) - l3*a*d(c)"

[open_conditions]
expr.1 = "a"

[algebra]
basis = "xi1, xi2, xi3"
"xi1,xi2" = "2 xi2"
"xi1,xi3" = "-2 xi3"
"xi2,xi3" = "xi1"

[action]
sigma = 1
xi1 = "a; -b; c; 0; 2*l2; -2*l3; 0"
xi2 = "0; a; 0; -2*l2; 0; l1; 0"
xi3 = "b; 0; (1 + b*c)/a; 2*l3; -l1; 0; 0"

[mu]
mu.1 = "0, 0, 1"

[level_set]
coords = "a, b, c, l3, t"
embed = "a; b; c; 0; 0; l3; t"
open = "a; l3"

[quotient]
coords = "t, u, v"
proj = "t; c/a; a^2*l3"
section = "1; 0; u; v; t"
eta_red.1 = "d(t) - v*d(u)"
open = "v"

[expected]
structure = "pass"
willett = "false"
k_fix_dim = "1"
k_ray_dim = "2"
conditions = "pass"
reduction = "pass"
reeb.1 = "0; 0; 0; 0; 0; 0; 1"
reduced_reeb.1 = "1; 0; 0"
)scn";

const char* kGl2Example = R"scn(
scenario = gl2_example
k = 1

[chart]
coords = "t, x1, x2, x3, x4, x5, x6"

[form.eta]
eta.1 = "d(t) - x2*d(x1) + x1*d(x2) - x4*d(x3) + x6*d(x5)"

[algebra]
basis = "v1, v2, v3, v4"
"v1,v2" = "v3"
"v1,v3" = "-2 v1"
"v2,v3" = "2 v2"

[action]
sigma = -1
v1 = "0; x2; 0; 0; 0; 0; 0"
v2 = "0; 0; x1; 0; 0; 0; 0"
v3 = "0; x1; -x2; 0; 0; 0; 0"
v4 = "0; 0; 0; 0; 0; 1; 0"

[mu]
mu.1 = "0, 1, 0, 0"

[level_set]
coords = "t, x1, x3, x4, x5"
embed = "t; x1; 0; x3; x4; x5; 0"
open = "x1"

[quotient]
coords = "t, x3, x4"
proj = "t; x3; x4"
section = "t; 1; x3; x4; 0"
eta_red.1 = "d(t) - x4*d(x3)"

[expected]
structure = "pass"
willett = "false"
k_fix_dim = "2"
k_ray_dim = "3"
conditions = "pass"
reduction = "pass"
reeb.1 = "1; 0; 0; 0; 0; 0; 0"
reduced_reeb.1 = "1; 0; 0"
)scn";

const char* kH2rSymplectised = R"scn(
scenario = h2r_symplectised
k = 1

[chart]
coords = "s, t, x1, x2, x3, x4, x5, x6"

[form.theta]
theta.1 = "s*d(t) - s*x2*d(x1) + s*x1*d(x2) - s*x4*d(x3) + s*x6*d(x5)"

[open_conditions]
expr.1 = "s"

[algebra]
basis = "e1, e2, e3"
"e1,e2" = "-2 e1"

[action]
sigma = -1
e1 = "0; 0; 0; x1; 0; 0; 0; 0"
e2 = "0; 0; -x1; x2; 0; 0; 0; 0"
e3 = "0; 0; 0; 0; 0; 0; 1; 0"

[mu]
mu.1 = "1, 0, 0"

[level_set]
coords = "s, t, x1, x3, x4, x5"
embed = "s; t; x1; 0; x3; x4; x5; 0"
open = "s; x1"

[quotient]
coords = "s, t, x3, x4"
proj = "s; t; x3; x4"
section = "s; t; 1; x3; x4; 0"
eta_red.1 = "s*d(t) - s*x4*d(x3)"
open = "s"

[expected]
structure = "pass"
willett = "false"
k_fix_dim = "1"
k_ray_dim = "2"
conditions = "pass"
reduction = "pass"
)scn";

const char* kSymplectisationNonexample = R"scn(
scenario = symplectisation_nonexample
k = 2

[chart]
coords = "x1, x2, x3, x4"

[form.eta]
eta.1 = "d(x1) + x3*d(x4)"
eta.2 = "d(x2) + x2*d(x1)"

[expected]
structure = "fail"
witness = "rank ker dη = 0 ≠ 2"
)scn";

std::vector<Scenario> build_registry() {
  const std::vector<const char*> texts = {
      kCanonicalKContact, kCanonicalKSymplectic,     kDampedWave,
      kCoupledStrings,    kProductContact,           kR10TwoContact,
      kSl2Counterexample, kGl2Example,               kH2rSymplectised,
      kSymplectisationNonexample};
  std::vector<Scenario> out;
  for (const char* t : texts) {
    Scenario s = parse_scenario(t, "registry");
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

const std::vector<Scenario>& registry() {
  static const std::vector<Scenario> reg = build_registry();
  return reg;
}

const Scenario& scenario_by_id(const std::string& id) {
  for (const auto& s : registry())
    if (s.id == id) return s;
  throw ScenarioError("unknown scenario '" + id + "'");
}

std::vector<std::string> registry_ids() {
  std::vector<std::string> out;
  for (const auto& s : registry()) out.push_back(s.id);
  return out;
}

}  // namespace geo
