#pragma once

#include "geored/lie.hpp"

namespace geo {

// Ray (or fixed-value, for zero rows) momentum level set with a user-supplied
// parametrizing chart and embedding; the engine validates, never solves.
struct LevelSet {
  ChartPtr parent;
  std::vector<Expr> equalities;   // vanish on the level set (parent chart)
  std::vector<Expr> open_conds;   // nonzero on the level set (parent chart)
  ChartPtr param_chart;
  SmoothMap embed;                // param chart -> parent chart
  std::vector<Expr> param_open;   // nonzero on the parametrizing chart
  std::vector<bool> zero_rows;    // per alpha: ray degenerated to value 0
};

LevelSet level_set_of(const Momentum& j, const CoadjointValue& mu, ChartPtr param_chart,
                      SmoothMap embed, std::vector<Expr> param_open);

Point embed_point(const LevelSet& level, const Point& u, const Bindings& b = {});
Subspace tangent_level_set(const Momentum& j, const CoadjointValue& mu, const Point& x,
                           const Bindings& b = {});
Subspace tangent_level_row(const Momentum& j, const CoadjointValue& mu, int alpha,
                           const Point& x, const Bindings& b = {});
Subspace orbit_tangent(const InfAction& act, const Subspace& subalgebra, const Point& x,
                       const Bindings& b = {});

// Full-rank Jacobian of the defining equalities at the sample, with the rank
// matching the parametrization codimension.
bool weak_regularity_at(const LevelSet& level, const Point& u, const Bindings& b = {});

struct ConditionSample {
  Point point;  // parametrizing chart
  std::map<std::string, int> ranks;
  std::vector<bool> eq1;
  bool eq2 = true;
  bool pass = true;
};

struct ConditionReport {
  bool pass = true;
  bool aborted = false;
  unsigned seed = 0;
  std::vector<ConditionSample> samples;
  std::vector<std::string> notes;
};

ConditionReport check_contact_conditions(const KContact& kc, const InfAction& act,
                                         const IsotropyReport& iso, const Momentum& j,
                                         const CoadjointValue& mu, const LevelSet& level,
                                         const std::vector<Point>& param_samples,
                                         const Bindings& b = {});

// The same inputs lifted to the symplectisation.
struct SympLift {
  KSymplectic ks;
  InfAction act;
  Momentum j;
  LevelSet level;
};
SympLift build_symp_lift(const KContact& kc, const std::vector<VectorField>& reeb,
                         const InfAction& act, const Momentum& j, const CoadjointValue& mu,
                         const LevelSet& level);

ConditionReport check_symplectic_conditions(const KSymplectic& ks, const InfAction& act,
                                            const IsotropyReport& iso, const Momentum& j,
                                            const CoadjointValue& mu, const LevelSet& level,
                                            const std::vector<Point>& param_samples,
                                            const Bindings& b = {});

// Pointwise cross-check of the two checkers on matched samples.
bool condition_reports_agree(const ConditionReport& contact, const ConditionReport& symp);

StructureReport check_kernel_identity(const KContact& kc, const InfAction& act,
                                      const Subspace& reduction_algebra,
                                      const LevelSet& level,
                                      const std::vector<Point>& param_samples,
                                      const Bindings& b = {});

StructureReport check_contact_lemma(const KContact& kc, const InfAction& act,
                                    const IsotropyReport& iso, const Momentum& j,
                                    const CoadjointValue& mu, const LevelSet& level,
                                    const std::vector<Point>& param_samples,
                                    const Bindings& b = {});

StructureReport check_ksymplectic_level_lemma(const KSymplectic& ks, const InfAction& act,
                                              const Momentum& j, const CoadjointValue& mu,
                                              const std::vector<Point>& fixed_samples,
                                              const std::vector<Point>& ray_samples,
                                              const Bindings& b = {});

struct QuotientPresentation {
  LevelSet level;
  ChartPtr reduced;
  SmoothMap proj;     // param chart -> reduced chart
  SmoothMap section;  // reduced chart -> param chart, proj ∘ section = id
  VForm eta_red;
  std::vector<Expr> reduced_open;
};

StructureReport verify_reduction(const QuotientPresentation& q, const KContact& kc,
                                 const InfAction* act, const Subspace* reduction_algebra,
                                 const std::vector<Point>& param_samples,
                                 const std::vector<Point>& reduced_samples,
                                 const Bindings& b = {});

// k-symplectic variant: pi* theta_red = i* theta, reduced structure verified.
StructureReport verify_reduction_ksymplectic(const QuotientPresentation& q, const VForm& theta,
                                             const std::vector<Point>& reduced_samples,
                                             const Bindings& b = {});

// Pushes a parent vector field through proj; fails when it is not constant on
// the fibers of proj.
struct PushResult {
  bool ok = true;
  bool tangent = true;
  VectorField field;
  std::string witness;
};
PushResult push_through_quotient(const QuotientPresentation& q, const VectorField& x);

StructureReport reduced_reeb_consistency(const QuotientPresentation& q, const KContact& kc,
                                         const std::vector<VectorField>& parent_reeb);

struct ProbeSample {
  Point point;
  int dim_level = 0, rank_kernel = 0, rank_fix_orbit = 0, rank_ray_orbit = 0;
  bool kernel_is_ray_orbit = false;
  bool fix_orbit_strictly_smaller = false;
};

struct ProbeReport {
  bool pass = true;
  std::vector<ProbeSample> samples;
  std::vector<std::string> notes;
};

ProbeReport probe_reduction_group(const KSymplectic& ks, const InfAction& act,
                                  const Momentum& j, const CoadjointValue& mu,
                                  const IsotropyReport& iso,
                                  const std::vector<Point>& level_samples,
                                  bool base_is_contact, const Bindings& b = {});

}  // namespace geo
