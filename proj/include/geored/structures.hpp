#pragma once

#include "geored/exterior.hpp"
#include "geored/linalg.hpp"

#include <optional>

namespace geo {

struct KContact {
  ChartPtr chart;
  VForm eta;
  VForm deta;
  std::vector<VectorField> polarization;  // empty when none declared
  std::vector<Expr> open_conditions;
  int k() const { return eta.k(); }
};

struct KSymplectic {
  ChartPtr chart;
  VForm omega;
  std::optional<VForm> theta;
  std::vector<Expr> open_conditions;
  std::vector<VectorField> reeb_lift;  // filled by symplectize
  std::optional<VectorField> euler;    // filled by symplectize
  int k() const { return omega.k(); }
};

struct PointCheck {
  Point point;
  std::map<std::string, int> ranks;
  bool pass = true;
  std::string witness;
};

struct StructureReport {
  std::string subject;
  bool pass = true;
  unsigned seed = 0;
  std::vector<PointCheck> points;
  std::vector<std::string> notes;  // symbolic-stage findings, sample independent
  std::string first_witness() const;
  void fail_note(const std::string& msg);
};

KContact make_kcontact(VForm eta, std::vector<VectorField> polarization = {},
                       std::vector<Expr> open_conditions = {});
KSymplectic make_ksymplectic(VForm omega, std::optional<VForm> theta = {},
                             std::vector<Expr> open_conditions = {});

Subspace kernel_at(const VForm& a, const Point& x, const Bindings& b = {});
StructureReport verify_kcontact(const KContact& kc, const std::vector<Point>& samples,
                                const Bindings& b = {});
StructureReport verify_ksymplectic(const KSymplectic& ks, const std::vector<Point>& samples,
                                   const Bindings& b = {});
std::vector<VectorField> solve_reeb(const KContact& kc, std::string* note = nullptr);
KSymplectic symplectize(const KContact& kc, const std::vector<VectorField>& reeb);
std::pair<Form, Expr> flat_eta(const KContact& kc, const KVectorField& x);
Form flat_omega(const KSymplectic& ks, const KVectorField& x);
Subspace orthogonal_deta(const KContact& kc, const Subspace& w, const Point& x,
                         const Bindings& b = {});
Subspace orthogonal_k(const KSymplectic& ks, const Subspace& w, const Point& x,
                      const Bindings& b = {});

// The symplectisation chart prefixes the fresh fiber coordinate s.
ChartPtr symp_chart_of(const ChartPtr& base);
SmoothMap symp_projection(const ChartPtr& symp, const ChartPtr& base);

}  // namespace geo
