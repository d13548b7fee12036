#include <CLI11.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

#include "geored/integrate.hpp"
#include "geored/normal_form.hpp"
#include "geored/report.hpp"
#include "geored/sampling.hpp"
#include "geored/scenario.hpp"

namespace {

using namespace geo;

struct Selection {
  std::string scenario, file;
};

struct Output {
  std::string out;
  std::string format = "json";
};

void add_selection(CLI::App* cmd, Selection& sel) {
  auto* a = cmd->add_option("--scenario", sel.scenario, "registry scenario id");
  auto* b = cmd->add_option("--file", sel.file, "scenario file to load");
  a->excludes(b);
}

void add_output(CLI::App* cmd, Output& o) {
  cmd->add_option("--out", o.out, "write the report to this file instead of stdout");
  cmd->add_option("--format", o.format, "report format")
      ->check(CLI::IsMember({"json", "text"}));
}

Scenario select_one(const Selection& sel) {
  if (!sel.file.empty()) return load_scenario(sel.file);
  if (!sel.scenario.empty()) return scenario_by_id(sel.scenario);
  throw ScenarioError("pick a scenario with --scenario or --file");
}

std::vector<Scenario> select_many(const Selection& sel) {
  if (!sel.file.empty() || !sel.scenario.empty()) return {select_one(sel)};
  return registry();
}

void emit(std::string body, const std::string& out) {
  if (body.empty() || body.back() != '\n') body += '\n';
  if (out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw ScenarioError("cannot open " + out + " for writing");
  f << body;
}

std::string vf_text(const ChartPtr& chart, const std::vector<Expr>& comp) {
  std::string s;
  for (size_t i = 0; i < comp.size(); ++i) {
    if (is_zero(comp[i])) continue;
    if (!s.empty()) s += " + ";
    std::string c = to_string(comp[i]);
    if (c == "1")
      s += "d/d(" + chart->coords[i] + ")";
    else
      s += "(" + c + ") d/d(" + chart->coords[i] + ")";
  }
  return s.empty() ? "0" : s;
}

int run_verify(const Selection& sel, int samples, unsigned seed, int jobs, bool timings,
               const Output& oo) {
  std::vector<Scenario> subjects = select_many(sel);
  std::vector<RunReport> reports(subjects.size());

  int n = (int)subjects.size();
  int workers = std::max(1, std::min(jobs, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) reports[i] = run_pipeline(subjects[i], samples, seed);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int i = next++; i < n; i = next++)
          reports[i] = run_pipeline(subjects[i], samples, seed);
      });
    for (auto& t : pool) t.join();
  }

  bool all = true;
  for (const RunReport& r : reports) all = all && r.pass;

  if (oo.format == "json") {
    if (reports.size() == 1) {
      emit(to_json(reports[0], timings).dump(2), oo.out);
    } else {
      Json arr = Json::array();
      for (const RunReport& r : reports) arr.push_back(to_json(r, timings));
      emit(arr.dump(2), oo.out);
    }
  } else {
    std::string body;
    for (const RunReport& r : reports) {
      if (!body.empty()) body += "\n";
      body += to_text(r);
    }
    emit(body, oo.out);
  }
  return all ? 0 : 1;
}

int run_reeb(const Selection& sel, const Output& oo) {
  Scenario s = select_one(sel);
  if (!s.kc) throw ScenarioError(s.id + ": no contact structure to solve for");

  std::vector<VectorField> fields;
  std::string witness;
  try {
    fields = solve_reeb(*s.kc);
  } catch (const InternalError& e) {
    witness = e.what();
  }

  if (oo.format == "json") {
    Json j;
    j["scenario"] = s.id;
    j["verdict"] = witness.empty() ? "pass" : "fail";
    if (!witness.empty()) j["witness"] = witness;
    Json arr = Json::array();
    for (const VectorField& f : fields) {
      Json comp = Json::object();
      for (size_t i = 0; i < f.comp.size(); ++i)
        comp[f.chart->coords[i]] = to_string(f.comp[i]);
      arr.push_back(comp);
    }
    j["reeb"] = arr;
    emit(j.dump(2), oo.out);
  } else {
    std::string body = "scenario " + s.id + "\n";
    if (!witness.empty()) {
      body += "no canonical family: " + witness + "\n";
    } else {
      for (size_t a = 0; a < fields.size(); ++a)
        body += "R^" + std::to_string(a + 1) + " = " +
                vf_text(fields[a].chart, fields[a].comp) + "\n";
    }
    emit(body, oo.out);
  }
  return witness.empty() ? 0 : 1;
}

int run_conditions(const Selection& sel, int samples, unsigned seed, const Output& oo) {
  Scenario s = select_one(sel);
  if (!s.level || !s.action || !s.mu || !s.momentum || !s.algebra)
    throw ScenarioError(s.id + ": needs an action, a momentum value and a level set");

  IsotropyReport iso = isotropy(*s.algebra, *s.mu);
  std::vector<Point> pts = sample_points(*s.level->param_chart, s.level->param_open,
                                         samples, seed, s.params, s.bindings);
  ConditionReport rep;
  if (s.kc)
    rep = check_contact_conditions(*s.kc, *s.action, iso, *s.momentum, *s.mu, *s.level,
                                   pts, s.bindings);
  else
    rep = check_symplectic_conditions(*s.ks, *s.action, iso, *s.momentum, *s.mu, *s.level,
                                      pts, s.bindings);
  rep.seed = seed;

  if (oo.format == "json") {
    Json j;
    j["scenario"] = s.id;
    j["conditions"] = to_json(rep);
    emit(j.dump(2), oo.out);
  } else {
    emit("scenario " + s.id + "\n" + to_text(rep), oo.out);
  }
  return rep.pass && !rep.aborted ? 0 : 1;
}

int run_reduce(const Selection& sel, int samples, unsigned seed, const Output& oo) {
  Scenario s = select_one(sel);
  if (!s.quotient) throw ScenarioError(s.id + ": no quotient presentation to verify");

  RunReport r = run_pipeline(s, samples, seed);
  const StageResult& st = r.reduction;

  if (oo.format == "json") {
    Json j;
    j["scenario"] = r.scenario;
    j["seed"] = r.seed;
    j["samples"] = r.samples;
    Json red;
    red["verdict"] = st.verdict;
    if (!st.witness.empty()) red["witness"] = st.witness;
    red["notes"] = st.notes;
    j["reduction"] = red;
    emit(j.dump(2), oo.out);
  } else {
    std::string body = "scenario " + r.scenario + "\nreduction: " + st.verdict;
    if (!st.witness.empty()) body += " (" + st.witness + ")";
    body += "\n";
    for (const std::string& n : st.notes) body += "  " + n + "\n";
    emit(body, oo.out);
  }
  return st.verdict == "pass" ? 0 : 1;
}

int run_probe(const Selection& sel, int samples, unsigned seed, const Output& oo) {
  Scenario s = select_one(sel);
  if (!s.level || !s.action || !s.mu || !s.momentum || !s.algebra)
    throw ScenarioError(s.id + ": needs an action, a momentum value and a level set");

  IsotropyReport iso = isotropy(*s.algebra, *s.mu);
  const Bindings& b = s.bindings;
  ProbeReport rep;
  if (s.ks) {
    std::vector<Point> ambient;
    for (const Point& u : sample_points(*s.level->param_chart, s.level->param_open,
                                        samples, seed, s.params, b))
      ambient.push_back(embed_point(*s.level, u, b));
    rep = probe_reduction_group(*s.ks, *s.action, *s.momentum, *s.mu, iso, ambient, false, b);
  } else {
    std::vector<VectorField> reeb = solve_reeb(*s.kc);
    SympLift lift = build_symp_lift(*s.kc, reeb, *s.action, *s.momentum, *s.mu, *s.level);
    std::vector<Point> ambient;
    for (const Point& u : sample_points(*lift.level.param_chart, lift.level.param_open,
                                        samples, seed, s.params, b))
      ambient.push_back(embed_point(lift.level, u, b));
    rep = probe_reduction_group(lift.ks, lift.act, lift.j, *s.mu, iso, ambient, true, b);
  }

  if (oo.format == "json") {
    Json j;
    j["scenario"] = s.id;
    j["probe"] = to_json(rep);
    emit(j.dump(2), oo.out);
  } else {
    emit("scenario " + s.id + "\n" + to_text(rep), oo.out);
  }
  return rep.pass ? 0 : 1;
}

double param_d(const Scenario& s, const std::string& name) {
  auto it = s.params.find(name);
  if (it == s.params.end())
    throw ScenarioError(s.id + ": simulate needs parameter '" + name + "'");
  return it->second.convert_to<double>();
}

void write_csv_row(std::string& body, const std::vector<double>& vals) {
  char buf[32];
  for (size_t i = 0; i < vals.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", vals[i]);
    if (i) body += ',';
    body += buf;
  }
  body += '\n';
}

int run_simulate(const Selection& sel, const std::string& grid, double dt_opt,
                 double t_opt, const std::string& out, const std::string& residuals) {
  Scenario s = select_one(sel);
  if (!s.darboux || s.darboux->q.size() != 1 || s.k != 2 || s.darboux->z.size() != 2)
    throw ScenarioError(s.id + ": simulate needs a 1+1 field scenario in adapted coordinates");

  WaveParams wp;
  wp.rho = param_d(s, "rho");
  wp.tau = param_d(s, "tau");
  wp.kappa = param_d(s, "kappa");
  if (s.sim_nodes > 0) wp.nodes = s.sim_nodes;
  if (s.sim_t_end > 0) wp.t_end = s.sim_t_end;
  int steps = s.sim_steps > 0 ? s.sim_steps : 1024;

  if (!grid.empty()) {
    auto x = grid.find('x');
    if (x == std::string::npos)
      throw ScenarioError("--grid expects NODESxSTEPS, e.g. 512x2048");
    wp.nodes = std::stoi(grid.substr(0, x));
    steps = std::stoi(grid.substr(x + 1));
  }
  if (t_opt > 0) wp.t_end = t_opt;
  wp.dt = dt_opt > 0 ? dt_opt : wp.t_end / steps;
  int total = (int)std::lround(wp.t_end / wp.dt);
  wp.store_every = std::max(1, total / 64);

  WaveRun run = integrate_wave(
      wp, [](double x) { return std::sin(x); }, [](double) { return 0.0; }, true);

  const DarbouxShape& shape = *s.darboux;
  std::string body = "t,x," + shape.q[0] + "," + shape.p[0][0] + "," + shape.p[0][1] +
                     "," + shape.z[0] + "," + shape.z[1] + "\n";
  for (const WaveFrame& fr : run.frames) {
    int n = (int)fr.u.size();
    for (int j = 0; j < n; ++j) {
      int jl = j == 0 ? n - 1 : j - 1;
      int jr = j == n - 1 ? 0 : j + 1;
      double px = -wp.tau * (fr.u[jr] - fr.u[jl]) / (2 * run.dx);
      // the integrator works in the gauge slice with vanishing spatial action flux
      write_csv_row(body, {fr.t, j * run.dx, fr.u[j], fr.pt[j], px, fr.st[j], 0.0});
    }
  }
  emit(body, out);

  if (!residuals.empty()) {
    std::array<double, 4> res = wave_residuals(run);
    std::string rbody = "velocity,momentum_strain,momentum_balance,action_balance\n";
    write_csv_row(rbody, {res[0], res[1], res[2], res[3]});
    emit(rbody, residuals);
  }

  if (!out.empty()) {
    std::cout << "simulated " << wp.nodes << " nodes for " << total << " steps (dt "
              << wp.dt << "), stored " << run.frames.size() << " frames in " << out
              << "\n";
  }
  return 0;
}

int run_list() {
  for (const Scenario& s : registry()) {
    std::string kind = s.kc ? "k-contact" : s.ks ? "k-symplectic" : "chart only";
    std::cout << s.id << "  (k=" << s.k << ", " << kind << ")\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"checks for momentum maps and reduction of k-contact and k-symplectic structures"};
  app.require_subcommand(1);

  Selection sel;
  Output oo;
  int samples = kDefaultSamples;
  unsigned seed = kDefaultSeed;
  int jobs = 1;
  bool timings = false;
  std::string grid, residuals, sim_out;
  double dt_opt = 0, t_opt = 0;

  auto add_sampling = [&](CLI::App* cmd) {
    cmd->add_option("--samples", samples, "points sampled per numeric check");
    cmd->add_option("--seed", seed, "seed of the sample stream");
  };

  CLI::App* verify = app.add_subcommand(
      "verify", "run the full check pipeline (all registry scenarios by default)");
  add_selection(verify, sel);
  add_output(verify, oo);
  add_sampling(verify);
  verify->add_option("--jobs", jobs, "scenarios checked in parallel")
      ->check(CLI::PositiveNumber);
  verify->add_flag("--timings", timings, "attach per stage wall times to the report");

  CLI::App* reeb = app.add_subcommand("reeb", "solve for the canonical Reeb family");
  add_selection(reeb, sel);
  add_output(reeb, oo);

  CLI::App* conditions =
      app.add_subcommand("conditions", "check the reduction conditions on the level set");
  add_selection(conditions, sel);
  add_output(conditions, oo);
  add_sampling(conditions);

  CLI::App* reduce =
      app.add_subcommand("reduce", "verify the declared quotient presentation");
  add_selection(reduce, sel);
  add_output(reduce, oo);
  add_sampling(reduce);

  CLI::App* probe = app.add_subcommand(
      "probe-group", "compare kernel and orbit ranks along the level set");
  add_selection(probe, sel);
  add_output(probe, oo);
  add_sampling(probe);

  CLI::App* simulate =
      app.add_subcommand("simulate", "integrate the damped wave field equations");
  add_selection(simulate, sel);
  simulate->add_option("--grid", grid, "space and time resolution as NODESxSTEPS");
  simulate->add_option("--dt", dt_opt, "time step")->check(CLI::PositiveNumber);
  simulate->add_option("--T", t_opt, "horizon")->check(CLI::PositiveNumber);
  simulate->add_option("--out", sim_out, "grid CSV path (stdout when omitted)");
  simulate->add_option("--residuals", residuals, "write field equation residuals here");

  CLI::App* list = app.add_subcommand("list", "print the registry scenario ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(verify)) return run_verify(sel, samples, seed, jobs, timings, oo);
    if (app.got_subcommand(reeb)) return run_reeb(sel, oo);
    if (app.got_subcommand(conditions)) return run_conditions(sel, samples, seed, oo);
    if (app.got_subcommand(reduce)) return run_reduce(sel, samples, seed, oo);
    if (app.got_subcommand(probe)) return run_probe(sel, samples, seed, oo);
    if (app.got_subcommand(simulate))
      return run_simulate(sel, grid, dt_opt, t_opt, sim_out, residuals);
    if (app.got_subcommand(list)) return run_list();
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
