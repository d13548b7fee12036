#pragma once

#include "geored/sampling.hpp"
#include "geored/scenario.hpp"

namespace geo {

struct StageResult {
  std::string verdict = "not applicable";
  std::string witness;
  std::vector<std::string> notes;
  long ms = 0;
};

// One full scenario run: every applicable stage, then a regression pass
// against the scenario's [expected] entries. pass means the run matched the
// declared expectations (an expected failure that fails is a pass).
struct RunReport {
  std::string scenario;
  unsigned seed = kDefaultSeed;
  int samples = kDefaultSamples;
  StageResult structure, action, momentum, isotropy, conditions, reduction, dynamics;
  std::vector<std::string> mismatches;
  bool pass = true;
};

RunReport run_pipeline(const Scenario& s, int samples = kDefaultSamples,
                       unsigned seed = kDefaultSeed);

}  // namespace geo
