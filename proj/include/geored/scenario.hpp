#pragma once

#include "geored/dynamics.hpp"
#include "geored/parser.hpp"

namespace geo {

// Loader failure; the message carries "origin:line:" when a source line is known.
struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Scenario {
  std::string id;
  int k = 1;
  ParserEnv env;
  ChartPtr chart;
  Point params;
  Bindings bindings;
  std::optional<KContact> kc;
  std::optional<KSymplectic> ks;
  std::optional<DarbouxShape> darboux;
  LieAlgebraPtr algebra;
  std::optional<InfAction> action;
  std::optional<Momentum> momentum;  // derived from action and structure, never stored
  std::optional<CoadjointValue> mu;
  std::optional<LevelSet> level;
  std::optional<QuotientPresentation> quotient;
  std::optional<Expr> h;
  std::map<std::string, GaugeAssignment> gauges;
  std::map<std::string, std::string> expected;
  int sim_nodes = 0;
  int sim_steps = 0;
  double sim_t_end = 0;

  const ChartPtr& structure_chart() const;
  std::vector<Expr> structure_open() const;
};

Scenario parse_scenario(const std::string& text, const std::string& origin);
Scenario load_scenario(const std::string& path);
std::string serialize_scenario(const Scenario& s);
bool scenario_equal(const Scenario& a, const Scenario& b);

const std::vector<Scenario>& registry();
const Scenario& scenario_by_id(const std::string& id);
std::vector<std::string> registry_ids();

}  // namespace geo
