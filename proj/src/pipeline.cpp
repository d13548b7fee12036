#include "geored/pipeline.hpp"

#include "geored/normal_form.hpp"

#include <chrono>

namespace geo {

namespace {

template <typename F>
void timed(StageResult& st, F&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn(st);
  auto t1 = std::chrono::steady_clock::now();
  st.ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
}

std::string verdict_of(bool pass) { return pass ? "pass" : "fail"; }

}  // namespace

RunReport run_pipeline(const Scenario& s, int samples, unsigned seed) {
  RunReport r;
  r.scenario = s.id;
  r.seed = seed;
  r.samples = samples;
  const Bindings& b = s.bindings;

  std::vector<VectorField> reeb;
  std::optional<IsotropyReport> iso;
  const std::optional<Momentum>& j = s.momentum;
  std::vector<Point> param_samples, reduced_samples;
  std::map<std::string, bool> integrability;
  std::map<std::string, bool> hdw_ok;
  std::optional<Expr> h_red;
  std::vector<VectorField> reduced_reeb;

  timed(r.structure, [&](StageResult& st) {
    if (s.kc) {
      auto pts = sample_points(*s.chart, s.kc->open_conditions, samples, seed, s.params, b);
      StructureReport rep = verify_kcontact(*s.kc, pts, b);
      st.verdict = verdict_of(rep.pass);
      st.witness = rep.first_witness();
      st.notes = rep.notes;
      if (rep.pass) {
        std::string note;
        reeb = solve_reeb(*s.kc, &note);
        if (!note.empty()) st.notes.push_back(note);
      }
    } else if (s.ks) {
      auto pts = sample_points(*s.chart, s.ks->open_conditions, samples, seed, s.params, b);
      StructureReport rep = verify_ksymplectic(*s.ks, pts, b);
      st.verdict = verdict_of(rep.pass);
      st.witness = rep.first_witness();
      st.notes = rep.notes;
    }
  });

  timed(r.action, [&](StageResult& st) {
    if (!s.action) return;
    bool ok = true;
    if (s.kc) {
      StructureReport inv = check_invariance(*s.action, s.kc->eta);
      ok = ok && inv.pass;
      st.notes.push_back(std::string("eta invariance: ") + verdict_of(inv.pass));
      if (!inv.pass && st.witness.empty()) st.witness = inv.first_witness();
    } else if (s.ks && s.ks->theta) {
      StructureReport inv = check_invariance(*s.action, *s.ks->theta);
      ok = ok && inv.pass;
      st.notes.push_back(std::string("theta invariance: ") + verdict_of(inv.pass));
      if (!inv.pass && st.witness.empty()) st.witness = inv.first_witness();
    } else {
      st.notes.push_back("invariance not checked: structure has no potential");
    }
    if (j) {
      StructureReport eq = check_equivariance_inf(*j, *s.action);
      ok = ok && eq.pass;
      st.notes.push_back(std::string("infinitesimal equivariance: ") + verdict_of(eq.pass));
      if (!eq.pass && st.witness.empty()) st.witness = eq.first_witness();
    }
    st.verdict = verdict_of(ok);
  });

  timed(r.momentum, [&](StageResult& st) {
    if (!j) return;
    const VForm& curv = s.kc ? s.kc->deta : s.ks->omega;
    bool ok = true;
    for (int a = 0; a < j->k && ok; ++a)
      for (int i = 0; i < j->n && ok; ++i) {
        Form lhs = iota(s.action->fund[i], curv.comp[a]);
        Form rhs = form_scale(num(-1), d(scalar_form(s.chart, j->entries[a][i])));
        if (!form_equal(lhs, rhs)) {
          ok = false;
          st.witness = "i_xi d(eta^" + std::to_string(a + 1) + ") != -d<J_" +
                       std::to_string(a + 1) + ", e_" + std::to_string(i + 1) + ">";
        }
      }
    st.notes.push_back(std::string("differential identity: ") + verdict_of(ok));
    if (s.kc && !reeb.empty()) {
      bool rinv = true;
      for (int be = 0; be < j->k && rinv; ++be)
        for (int a = 0; a < j->k && rinv; ++a)
          for (int i = 0; i < j->n && rinv; ++i)
            if (!is_zero(apply_vf(reeb[be], j->entries[a][i]))) {
              rinv = false;
              st.witness = "R_" + std::to_string(be + 1) + "<J_" + std::to_string(a + 1) +
                           ", e_" + std::to_string(i + 1) + "> != 0";
            }
      st.notes.push_back(std::string("Reeb invariance of entries: ") + verdict_of(rinv));
      ok = ok && rinv;
    }
    st.verdict = verdict_of(ok);
  });

  timed(r.isotropy, [&](StageResult& st) {
    if (!s.algebra || !s.mu) return;
    iso = isotropy(*s.algebra, *s.mu);
    st.notes.push_back("ker dim " + std::to_string(iso->ker.rank()));
    st.notes.push_back("k_fix dim " + std::to_string(iso->k_fix.rank()));
    st.notes.push_back("k_ray dim " + std::to_string(iso->k_ray.rank()));
    bool willett = true;
    for (bool w : iso->willett) willett = willett && w;
    st.notes.push_back(std::string("willett condition: ") + (willett ? "true" : "false"));
    st.notes.push_back(std::string("k_ray closed under bracket: ") +
                       (iso->k_ray_closed ? "yes" : "no"));
    st.verdict = verdict_of(iso->k_ray_closed);
    if (!iso->k_ray_closed) st.witness = "reduction algebra is not a subalgebra";
  });

  timed(r.conditions, [&](StageResult& st) {
    if (!s.level || !s.action || !s.mu || !iso || !j) return;
    param_samples = sample_points(*s.level->param_chart, s.level->param_open, samples, seed,
                                  s.params, b);
    if (s.kc) {
      ConditionReport c1 =
          check_contact_conditions(*s.kc, *s.action, *iso, *j, *s.mu, *s.level,
                                   param_samples, b);
      if (reeb.empty()) reeb = solve_reeb(*s.kc);
      SympLift lift = build_symp_lift(*s.kc, reeb, *s.action, *j, *s.mu, *s.level);
      std::vector<Point> symp_samples = param_samples;
      for (size_t i = 0; i < symp_samples.size(); ++i)
        symp_samples[i]["s"] = Rat((int)(i % 5) + 1);
      ConditionReport c2 = check_symplectic_conditions(lift.ks, lift.act, *iso, lift.j,
                                                       *s.mu, lift.level, symp_samples, b);
      bool agree = condition_reports_agree(c1, c2);
      st.notes = c1.notes;
      st.notes.push_back(std::string("symplectised checker agrees: ") +
                         (agree ? "yes" : "no"));
      st.verdict = verdict_of(c1.pass && c2.pass && agree);
      if (!c1.pass || c1.aborted) {
        for (const auto& smp : c1.samples)
          if (!smp.pass) {
            st.witness = "condition fails on a level-set sample";
            break;
          }
      }
    } else {
      ConditionReport c = check_symplectic_conditions(*s.ks, *s.action, *iso, *j, *s.mu,
                                                      *s.level, param_samples, b);
      st.notes = c.notes;
      st.verdict = verdict_of(c.pass && !c.aborted);
    }
  });

  timed(r.reduction, [&](StageResult& st) {
    if (!s.quotient) return;
    const QuotientPresentation& q = *s.quotient;
    reduced_samples =
        sample_points(*q.reduced, q.reduced_open, samples, seed, s.params, b);
    if (param_samples.empty() && s.level)
      param_samples = sample_points(*s.level->param_chart, s.level->param_open, samples,
                                    seed, s.params, b);
    bool ok = true;
    if (s.kc) {
      if (s.action && iso) {
        StructureReport ki =
            check_kernel_identity(*s.kc, *s.action, iso->k_ray, *s.level, param_samples, b);
        ok = ok && ki.pass;
        st.notes.push_back(std::string("kernel identity on level set: ") +
                           verdict_of(ki.pass));
        if (!ki.pass && st.witness.empty()) st.witness = ki.first_witness();
      }
      StructureReport vr =
          verify_reduction(q, *s.kc, s.action ? &*s.action : nullptr,
                           iso ? &iso->k_ray : nullptr, param_samples, reduced_samples, b);
      ok = ok && vr.pass;
      for (const auto& n : vr.notes) st.notes.push_back(n);
      if (!vr.pass && st.witness.empty()) st.witness = vr.first_witness();
      if (vr.pass && !reeb.empty()) {
        StructureReport rc = reduced_reeb_consistency(q, *s.kc, reeb);
        ok = ok && rc.pass;
        st.notes.push_back(std::string("reduced Reeb consistency: ") + verdict_of(rc.pass));
        if (!rc.pass && st.witness.empty()) st.witness = rc.first_witness();
        KContact red = make_kcontact(q.eta_red, {}, q.reduced_open);
        reduced_reeb = solve_reeb(red);
      }
    } else if (s.ks && s.ks->theta) {
      StructureReport vr = verify_reduction_ksymplectic(q, *s.ks->theta, reduced_samples, b);
      ok = vr.pass;
      for (const auto& n : vr.notes) st.notes.push_back(n);
      if (!vr.pass) st.witness = vr.first_witness();
    } else {
      st.notes.push_back("reduction needs a contact structure or a potential");
      ok = false;
    }
    st.verdict = verdict_of(ok);
  });

  timed(r.dynamics, [&](StageResult& st) {
    if (!s.h) return;
    bool ok = true;
    if (s.kc) {
      const DarbouxShape* shape = s.darboux ? &*s.darboux : nullptr;
      std::map<std::string, HamKVF> runs;
      if (s.gauges.empty()) {
        runs.emplace("default", solve_hdw_contact(*s.kc, *s.h, shape, {}));
      } else {
        for (const auto& [name, g] : s.gauges)
          runs.emplace(name, solve_hdw_contact(*s.kc, *s.h, shape, g));
      }
      for (const auto& [name, sol] : runs) {
        StructureReport v = verify_hdw(*s.kc, *s.h, sol.x, shape);
        StructureReport ic = integrability_check(sol.x);
        hdw_ok[name] = v.pass;
        integrability[name] = ic.pass;
        ok = ok && v.pass;
        st.notes.push_back("gauge " + name + ": field equations " + verdict_of(v.pass) +
                           ", commuting " + verdict_of(ic.pass) + " (gauge dim " +
                           std::to_string(sol.gauge_dim) + ")");
        if (!v.pass && st.witness.empty()) st.witness = v.first_witness();
      }
      if (s.quotient && s.action && iso) {
        const std::string chosen =
            runs.count("invariant") ? "invariant" : runs.begin()->first;
        ProjectedDynamics pd = project_dynamics(*s.quotient, *s.kc, *s.action, iso->k_ray,
                                                *s.h, runs.at(chosen).x, b);
        ok = ok && pd.ok;
        h_red = pd.h_red;
        st.notes.push_back("projection through quotient (gauge " + chosen + "): " +
                           verdict_of(pd.ok));
        if (!pd.ok && st.witness.empty()) st.witness = pd.report.first_witness();
      }
    } else if (s.ks) {
      HamKVF sol = solve_hdw_ksymplectic(*s.ks, *s.h);
      StructureReport v = verify_hdw_ksymplectic(*s.ks, *s.h, sol.x);
      hdw_ok["default"] = v.pass;
      ok = v.pass;
      st.notes.push_back(std::string("field equations ") + verdict_of(v.pass));
      if (!v.pass) st.witness = v.first_witness();
    }
    st.verdict = verdict_of(ok);
  });

  // Regression against the [expected] entries; unexpected failures count too.
  std::set<std::string> handled;
  auto expected = [&](const std::string& key) -> const std::string* {
    auto it = s.expected.find(key);
    if (it == s.expected.end()) return nullptr;
    handled.insert(key);
    return &it->second;
  };
  auto mism = [&](const std::string& msg) { r.mismatches.push_back(msg); };
  auto check_value = [&](const std::string& key, const std::string& actual) {
    if (const std::string* want = expected(key)) {
      if (*want != actual)
        mism(key + ": expected '" + *want + "', got '" + actual + "'");
    }
  };
  auto check_stage = [&](const std::string& key, const StageResult& st) {
    check_value(key, st.verdict);
    const auto it = s.expected.find(key);
    bool expected_fail = it != s.expected.end() && it->second == "fail";
    if (st.verdict == "fail" && !expected_fail)
      mism(key + " failed unexpectedly" +
           (st.witness.empty() ? "" : ": " + st.witness));
  };

  check_stage("structure", r.structure);
  check_stage("action", r.action);
  check_stage("momentum", r.momentum);
  check_stage("isotropy", r.isotropy);
  check_stage("conditions", r.conditions);
  check_stage("reduction", r.reduction);
  if (const std::string* w = expected("witness")) {
    if (*w != r.structure.witness)
      mism("witness: expected '" + *w + "', got '" + r.structure.witness + "'");
  }
  if (iso) {
    bool willett = true;
    for (bool x : iso->willett) willett = willett && x;
    check_value("willett", willett ? "true" : "false");
    check_value("k_fix_dim", std::to_string(iso->k_fix.rank()));
    check_value("k_ray_dim", std::to_string(iso->k_ray.rank()));
  }
  {
    bool all = !hdw_ok.empty();
    for (const auto& [name, okk] : hdw_ok) all = all && okk;
    if (!hdw_ok.empty()) check_value("hdw", verdict_of(all));
    else if (s.expected.count("hdw")) mism("hdw: expected but dynamics did not run");
    for (const auto& [name, comm] : integrability)
      check_value("integrability." + name, verdict_of(comm));
  }
  if (const std::string* want = expected("h_red")) {
    if (!h_red || !s.quotient) {
      mism("h_red: expected but no projected hamiltonian was computed");
    } else {
      Expr w = parse_expr(*want, s.env);
      if (!expr_equal(w, *h_red)) mism("h_red: projected hamiltonian differs");
    }
  }
  auto check_fields = [&](const std::string& stem, const std::vector<VectorField>& fields,
                          const ChartPtr& chart) {
    for (int a = 0;; ++a) {
      const std::string key = stem + "." + std::to_string(a + 1);
      const std::string* want = expected(key);
      if (!want) break;
      if (a >= (int)fields.size()) {
        mism(key + ": expected but no such field was computed");
        continue;
      }
      std::vector<Expr> comps = parse_expr_list(*want, s.env);
      bool same = (int)comps.size() == chart->dim();
      for (int i = 0; same && i < chart->dim(); ++i)
        same = expr_equal(comps[i], fields[a].comp[i]);
      if (!same) mism(key + ": field differs");
    }
  };
  if (s.kc) check_fields("reeb", reeb, s.chart);
  if (s.quotient && s.kc) check_fields("reduced_reeb", reduced_reeb, s.quotient->reduced);
  for (const auto& [key, value] : s.expected)
    if (!handled.count(key)) mism("unhandled expected key '" + key + "'");

  r.pass = r.mismatches.empty();
  return r;
}

}  // namespace geo
