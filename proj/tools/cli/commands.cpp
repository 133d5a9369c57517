#include "commands.hpp"

#include <json.hpp>

#include <fstream>
#include <ostream>
#include <vector>

#include "format.hpp"
#include "tlpulse/errors.hpp"

namespace tlpulse::cli {

namespace {

using Json = nlohmann::ordered_json;

// One table of numbers plus descriptive lines, rendered either way.
struct Table {
  std::string title;
  std::vector<std::string> notes;
  Json meta = Json::object();
  std::vector<std::string> columns;
  // Cells are either numbers or short strings (shape names, flags).
  std::vector<std::vector<Json>> rows;
};

std::string cell_text(const Json& v) {
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  if (v.is_number()) return format_number(v.get<double>());
  return v.get<std::string>();
}

std::string to_csv(const Table& t) {
  CsvWriter w;
  w.comment(t.title);
  for (const auto& n : t.notes) w.comment(n);
  w.header(t.columns);
  std::vector<std::string> cells;
  for (const auto& r : t.rows) {
    cells.clear();
    for (const auto& v : r) cells.push_back(cell_text(v));
    w.row(cells);
  }
  return w.str();
}

std::string to_json(const Table& t) {
  Json doc;
  doc["command"] = t.title;
  doc["meta"] = t.meta;
  doc["columns"] = t.columns;
  Json rows = Json::array();
  for (const auto& r : t.rows) rows.push_back(Json(r));
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

const char* state_name(const FieldState& f) { return f.is_fock() ? "fock" : "coherent"; }

Json lambda_meta(const RunConfig& c, const CouplingBudget& b) {
  return Json{{"spec", describe(c.lambda)},
              {"lambda", b.lambda()},
              {"lambda_fraction", b.fraction()},
              {"gamma_p", b.gamma_p()}};
}

std::string lambda_note(const RunConfig& c, const CouplingBudget& b) {
  return "lambda " + describe(c.lambda) + ": Lambda = " + format_number(b.lambda()) +
         ", Lambda/(8pi/3) = " + format_number(b.fraction()) +
         ", Gamma_p = " + format_number(b.gamma_p()) + " Gamma";
}

const std::vector<std::string> kOptimumColumns = {
    "shape", "state", "mean_photons", "lambda_fraction", "omega_opt", "pe_max", "t_max", "boundary"};

std::vector<Json> optimum_row(const OptimumReport& r) {
  return {std::string(pulse_kind_name(r.kind)),
          state_name(r.field),
          r.field.mean_photons(),
          r.lambda_fraction,
          r.omega_opt,
          r.pe_max,
          r.t_max,
          r.boundary};
}

void warn_boundary(const OptimumReport& r, std::ostream& warnings) {
  if (!r.boundary) return;
  warnings << "warning: " << pulse_kind_name(r.kind) << " " << state_name(r.field)
           << " optimum is at the edge of the bandwidth bracket (" << format_number(r.omega_opt)
           << "); widen --omega-min/--omega-max\n";
}

Table simulate(const RunConfig& c) {
  const CouplingBudget budget = budget_of(c.lambda);
  const PulseShape shape(c.shape, c.bandwidth);
  const Trajectory tr = integrate(make_sim_input(shape, c.field, budget, sim_options(c)));
  const Peak peak = max_over_time(tr);

  Table t;
  t.title = "simulate";
  t.notes = {
      "shape " + std::string(pulse_kind_name(c.shape)) + ", bandwidth " + format_number(c.bandwidth) +
          " Gamma, state " + state_name(c.field) +
          (c.field.is_coherent() ? ", N = " + format_number(c.field.mean_photons()) : ""),
      lambda_note(c, budget),
      "units: t in 1/Gamma; P_e = (s1 + 1) / 2; s1 = <sigma_z>; s2, s3 dimensionless",
      "peak P_e = " + format_number(peak.pe) + " at t = " + format_number(peak.t),
  };
  t.meta = Json{{"shape", pulse_kind_name(c.shape)},
                {"bandwidth", c.bandwidth},
                {"state", state_name(c.field)},
                {"mean_photons", c.field.mean_photons()},
                {"lambda", lambda_meta(c, budget)},
                {"tolerance", c.tolerance},
                {"units", {{"time", "1/Gamma"}, {"rate", "Gamma"}}},
                {"peak", {{"pe", peak.pe}, {"t", peak.t}}}};
  t.columns = {"t", "P_e", "s1", "re_s2", "re_s3", "im_s2", "im_s3"};
  t.rows.reserve(tr.size());
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const StateVector& s = tr.states[i];
    t.rows.push_back({tr.times[i], tr.pe[i], s.s1, s.s2.real(), s.s3.real(), s.s2.imag(), s.s3.imag()});
  }
  return t;
}

Table optimize(const RunConfig& c, std::ostream& warnings) {
  const CouplingBudget budget = budget_of(c.lambda);
  OptimizeOptions opts;
  opts.bracket = c.bracket;
  opts.sim = sim_options(c);
  const OptimumReport r = optimize_bandwidth(c.shape, c.field, budget, opts);
  warn_boundary(r, warnings);

  Table t;
  t.title = "optimize";
  t.notes = {lambda_note(c, budget),
             "bandwidth searched in [" + format_number(c.bracket.lo) + ", " + format_number(c.bracket.hi) +
                 "] Gamma; omega_opt in Gamma, t_max in 1/Gamma"};
  t.meta = Json{{"lambda", lambda_meta(c, budget)},
                {"bracket", {c.bracket.lo, c.bracket.hi}},
                {"tolerance", c.tolerance},
                {"units", {{"time", "1/Gamma"}, {"rate", "Gamma"}}}};
  t.columns = kOptimumColumns;
  t.rows.push_back(optimum_row(r));
  return t;
}

Table table2(const RunConfig& c, std::ostream& warnings) {
  const CouplingBudget budget = budget_of(c.lambda);
  OptimizeOptions opts;
  opts.sim = sim_options(c);
  const auto rows = table_two(budget, opts);

  Table t;
  t.title = "table2";
  t.notes = {lambda_note(c, budget), "coherent rows have N = 1; omega_opt in Gamma, t_max in 1/Gamma"};
  t.meta = Json{{"lambda", lambda_meta(c, budget)},
                {"tolerance", c.tolerance},
                {"units", {{"time", "1/Gamma"}, {"rate", "Gamma"}}}};
  t.columns = kOptimumColumns;
  for (const auto& r : rows) {
    warn_boundary(r, warnings);
    t.rows.push_back(optimum_row(r));
  }
  return t;
}

Table sweep(const RunConfig& c) {
  const CouplingBudget budget = budget_of(c.lambda);
  const auto points = sweep_photon_number(c.shape, c.bandwidth, budget, c.photon_numbers, sim_options(c));

  Table t;
  t.title = "sweep";
  t.notes = {"shape " + std::string(pulse_kind_name(c.shape)) + ", bandwidth " + format_number(c.bandwidth) +
                 " Gamma, coherent state",
             lambda_note(c, budget), "t_max in 1/Gamma"};
  t.meta = Json{{"shape", pulse_kind_name(c.shape)},
                {"bandwidth", c.bandwidth},
                {"lambda", lambda_meta(c, budget)},
                {"tolerance", c.tolerance},
                {"units", {{"time", "1/Gamma"}, {"rate", "Gamma"}}}};
  t.columns = {"mean_photons", "pe_max", "t_max"};
  for (const auto& p : points) t.rows.push_back({p.mean_photons, p.pe_max, p.t_max});
  return t;
}

Table lambda(const RunConfig& c) {
  const CouplingBudget budget = budget_of(c.lambda);
  Table t;
  t.title = "lambda";
  t.notes = {"lambda " + describe(c.lambda) + "; rates in Gamma"};
  t.meta = Json{{"spec", describe(c.lambda)}, {"units", {{"rate", "Gamma"}}}};
  t.columns = {"lambda", "lambda_fraction", "gamma_p", "gamma_env"};
  t.rows.push_back({budget.lambda(), budget.fraction(), budget.gamma_p(), budget.gamma_env()});
  return t;
}

}  // namespace

std::string render(const RunConfig& config, std::ostream& warnings) {
  Table t;
  switch (config.command) {
    case Command::kSimulate: t = simulate(config); break;
    case Command::kOptimize: t = optimize(config, warnings); break;
    case Command::kTable2: t = table2(config, warnings); break;
    case Command::kSweep: t = sweep(config); break;
    case Command::kLambda: t = lambda(config); break;
  }
  return config.format == OutputFormat::kJson ? to_json(t) : to_csv(t);
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::string text;
  try {
    text = render(config, err);
  } catch (const InvalidArgument& e) {
    err << "tlpulse " << command_name(config.command) << ": invalid configuration: " << e.what() << "\n";
    return 2;
  } catch (const IntegrationFailure& e) {
    err << "tlpulse " << command_name(config.command) << ": integration failed: " << e.what() << "\n";
    return 1;
  }

  if (!config.out) {
    out << text;
    out.flush();
    return out ? 0 : 1;
  }
  std::ofstream file(*config.out, std::ios::binary);
  file << text;
  file.close();
  if (!file) {
    err << "tlpulse: cannot write " << *config.out << "\n";
    return 1;
  }
  return 0;
}

}  // namespace tlpulse::cli
