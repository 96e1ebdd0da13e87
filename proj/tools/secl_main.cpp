// Command-line front end: synth -> calibrate -> run -> report.
// Standard output carries summaries only; all data goes to files in the
// output directory. Exit codes: 0 success, 1 validation failure, 2 runtime
// error.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "secl/secl.hpp"

namespace fs = std::filesystem;

namespace {

struct CliArgs {
  std::string config_path;
  std::string out_dir;       // overrides config out_dir when set
  std::string scenario;      // run/report filter
  std::int64_t seed = -1;    // synth override, -1 = unset
};

secl::RunConfig load_config(const CliArgs& args) {
  secl::RunConfig cfg = secl::load_run_config(args.config_path);
  if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
  if (cfg.out_dir.empty()) {
    throw secl::DomainError("no output directory (set out_dir or pass --out)");
  }
  return cfg;
}

secl::synth::SynthConfig to_synth_config(const secl::RunConfig& cfg) {
  secl::synth::SynthConfig sc;
  sc.seed = cfg.seed;
  sc.n_entities = cfg.n_entities;
  sc.n_industries = cfg.n_industries;
  sc.n_regions = cfg.n_regions;
  sc.n_credit_buckets = cfg.n_credit_buckets;
  sc.scenarios = cfg.scenarios;
  sc.snapshot_years = cfg.snapshot_years;
  sc.noise_sd = cfg.noise_sd;
  sc.hazard_min = cfg.hazard_min;
  sc.hazard_max = cfg.hazard_max;
  sc.alpha_min = cfg.alpha_min;
  sc.alpha_max = cfg.alpha_max;
  sc.beta_credit_min = cfg.beta_credit_min;
  sc.beta_credit_max = cfg.beta_credit_max;
  sc.beta_region_min = cfg.beta_region_min;
  sc.beta_region_max = cfg.beta_region_max;
  sc.n_exposures = cfg.n_exposures;
  sc.max_maturity = cfg.max_maturity;
  sc.n_ecl_scenarios = cfg.n_ecl_scenarios;
  return sc;
}

int cmd_synth(const CliArgs& args) {
  secl::RunConfig cfg = load_config(args);
  secl::synth::SynthConfig sc = to_synth_config(cfg);
  if (args.seed >= 0) sc.seed = static_cast<std::uint64_t>(args.seed);

  fs::create_directories(cfg.out_dir);
  const auto sample = secl::synth::generate_sample(sc);
  const auto portfolio =
      secl::synth::generate_portfolio(sc, sc.n_exposures, sc.max_maturity);
  const auto scheme = secl::synth::scheme_for(sc);

  const std::string sample_path = cfg.out_dir + "/sample.csv";
  const std::string portfolio_path = cfg.out_dir + "/portfolio.csv";
  const std::string truth_path = cfg.out_dir + "/truth.csv";
  const std::string scheme_path = cfg.out_dir + "/scheme.csv";
  secl::write_entity_sample(sample_path, sample.entities);
  secl::write_portfolio(portfolio_path, portfolio);
  secl::synth::write_planted_truth(truth_path, sample.truth);
  secl::write_scheme(scheme_path, scheme);

  std::cout << "synth: " << sample.entities.size() << " entities, "
            << portfolio.size() << " exposures (seed " << sc.seed << ")\n"
            << "wrote " << sample_path << "\n"
            << "wrote " << portfolio_path << "\n"
            << "wrote " << truth_path << "\n"
            << "wrote " << scheme_path << "\n";
  return 0;
}

int cmd_calibrate(const CliArgs& args) {
  secl::RunConfig cfg = load_config(args);
  if (cfg.sample_path.empty() || cfg.scheme_path.empty()) {
    throw secl::DomainError("calibrate needs 'sample' and 'scheme' paths");
  }
  if (cfg.scenarios.empty() || cfg.snapshot_years.empty()) {
    throw secl::DomainError(
        "calibrate needs 'scenarios' and 'snapshot_years'");
  }

  const auto scheme = secl::load_scheme(cfg.scheme_path);
  const auto sample = secl::load_entity_sample(cfg.sample_path, scheme);
  const auto result =
      secl::calibrate_all(sample, cfg.calibration_spec(), scheme);

  fs::create_directories(cfg.out_dir);
  const std::string deltas_path = cfg.out_dir + "/deltas.csv";
  const std::string diagnostics_path = cfg.out_dir + "/diagnostics.csv";
  const std::string errors_path = cfg.out_dir + "/calibration_errors.csv";
  secl::write_delta_tables(deltas_path, result.tables);
  secl::write_diagnostics(diagnostics_path, result.fits);
  {
    secl::csv::Writer w(errors_path);
    w.row({"cell", "message"});
    for (const auto& e : result.errors) {
      const auto colon = e.find(": ");
      std::string cell = colon == std::string::npos ? e : e.substr(0, colon);
      std::string msg = colon == std::string::npos ? "" : e.substr(colon + 2);
      for (char& c : msg) {
        if (c == ',' || c == '\n') c = ';';
      }
      w.row({cell, msg});
    }
    w.close();
  }

  std::size_t cells = 0;
  for (const auto& [label, table] : result.tables) {
    for (const auto& [key, years] : table.entries()) cells += years.size();
  }
  std::cout << "calibrate: " << sample.size() << " entities, "
            << result.fits.size() << " fits, " << cells << " delta cells, "
            << result.errors.size() << " skipped cells, "
            << result.missing_snapshot_warnings
            << " missing-snapshot exclusions\n"
            << "wrote " << deltas_path << "\n"
            << "wrote " << diagnostics_path << "\n"
            << "wrote " << errors_path << "\n";
  return 0;
}

int cmd_run(const CliArgs& args) {
  secl::RunConfig cfg = load_config(args);
  if (cfg.portfolio_path.empty() || cfg.deltas_path.empty() ||
      cfg.scheme_path.empty()) {
    throw secl::DomainError("run needs 'portfolio', 'deltas' and 'scheme' paths");
  }
  if (cfg.weights.empty()) {
    throw secl::DomainError("run needs scenario 'weights'");
  }
  if (cfg.start_year <= 0) {
    throw secl::DomainError("run needs a positive 'start_year'");
  }

  const auto scheme = secl::load_scheme(cfg.scheme_path);
  const auto portfolio = secl::load_portfolio(cfg.portfolio_path, scheme);
  secl::DeltaLibrary library = secl::load_delta_tables(cfg.deltas_path);
  if (!args.scenario.empty()) {
    secl::DeltaLibrary filtered;
    filtered.emplace(args.scenario,
                     secl::select_scenario(library, args.scenario));
    library = std::move(filtered);
  }

  const secl::ScenarioWeightConfig weights{cfg.weights};
  fs::create_directories(cfg.out_dir);

  std::vector<secl::AggregateRecord> aggregate_rows;
  std::vector<secl::RunErrorRecord> error_rows;
  std::cout << "run: " << portfolio.size() << " exposures, start year "
            << cfg.start_year << ", lgd mode "
            << (cfg.lgd_mode == secl::LgdMode::kFryeJacobs ? "frye_jacobs"
                                                           : "direct")
            << "\n";
  for (const auto& [label, table] : library) {
    const secl::PortfolioResult res = secl::run_portfolio(
        portfolio, weights, table, cfg.start_year, cfg.lgd_mode);
    const std::string results_path =
        cfg.out_dir + "/results_" + label + ".csv";
    secl::write_results(results_path, res.results);
    const auto rows = secl::flatten_aggregates(label, cfg.start_year, res);
    aggregate_rows.insert(aggregate_rows.end(), rows.begin(), rows.end());
    for (const auto& [id, message] : res.errors) {
      error_rows.push_back({label, id, message});
    }
    std::cout << "scenario " << label << ": total ECL "
              << secl::csv::format_money(res.total.ecl_bs) << " -> "
              << secl::csv::format_money(res.total.ecl_sc) << " (delta "
              << secl::csv::format_money(res.total.delta_ecl) << ", "
              << res.errors.size() << " exposure errors)\n"
              << "wrote " << results_path << "\n";
  }
  const std::string aggregates_path = cfg.out_dir + "/aggregates.csv";
  const std::string errors_path = cfg.out_dir + "/run_errors.csv";
  secl::write_aggregates(aggregates_path, aggregate_rows);
  secl::write_run_errors(errors_path, error_rows);
  std::cout << "wrote " << aggregates_path << "\n"
            << "wrote " << errors_path << "\n";
  return 0;
}

int cmd_report(const CliArgs& args) {
  secl::RunConfig cfg = load_config(args);
  std::string aggregates_path = cfg.aggregates_path;
  if (aggregates_path.empty()) {
    aggregates_path = cfg.out_dir + "/aggregates.csv";
  }
  std::vector<secl::AggregateRecord> rows =
      secl::load_aggregates(aggregates_path);
  if (!args.scenario.empty()) {
    std::erase_if(rows, [&](const secl::AggregateRecord& r) {
      return r.scenario != args.scenario;
    });
  }

  std::set<std::pair<int, std::string>> horizons;  // (start_year, scenario)
  std::set<std::string> industries;
  std::map<std::tuple<int, std::string, std::string>, double> delta;  // (year, scenario, industry)
  std::map<std::pair<int, std::string>, double> totals;
  for (const auto& r : rows) {
    if (r.dimension == "industry") {
      horizons.insert({r.start_year, r.scenario});
      industries.insert(r.key);
      delta[{r.start_year, r.scenario, r.key}] = r.delta_ecl;
    } else if (r.dimension == "total") {
      horizons.insert({r.start_year, r.scenario});
      totals[{r.start_year, r.scenario}] = r.delta_ecl;
    }
  }

  std::set<int> years;
  for (const auto& [year, scenario] : horizons) years.insert(year);

  std::ostringstream table;
  table << "delta ECL by industry x scenario x horizon\n";
  for (int year : years) {
    std::vector<std::string> scenarios;
    for (const auto& [y, s] : horizons) {
      if (y == year) scenarios.push_back(s);
    }
    table << "\nstart_year " << year << "\n";
    table << std::left << std::setw(16) << "industry";
    for (const auto& s : scenarios) table << std::right << std::setw(18) << s;
    table << "\n";
    for (const auto& ind : industries) {
      table << std::left << std::setw(16) << ind;
      for (const auto& s : scenarios) {
        const auto it = delta.find({year, s, ind});
        table << std::right << std::setw(18)
              << (it == delta.end() ? "-"
                                    : secl::csv::format_money(it->second));
      }
      table << "\n";
    }
    table << std::left << std::setw(16) << "TOTAL";
    for (const auto& s : scenarios) {
      const auto it = totals.find({year, s});
      table << std::right << std::setw(18)
            << (it == totals.end() ? "-"
                                   : secl::csv::format_money(it->second));
    }
    table << "\n";
  }

  fs::create_directories(cfg.out_dir);
  const std::string summary_path = cfg.out_dir + "/summary.txt";
  {
    std::ofstream out(summary_path);
    if (!out) throw secl::SchemaError(summary_path, "cannot open for writing");
    out << table.str();
  }
  const std::string plot_path = cfg.out_dir + "/plot_data.csv";
  {
    secl::csv::Writer w(plot_path);
    w.row({"scenario", "start_year", "industry", "delta_ecl"});
    for (const auto& [key, value] : delta) {
      const auto& [year, scenario, industry] = key;
      w.row({scenario, std::to_string(year), industry,
             secl::csv::format_money(value)});
    }
    w.close();
  }

  std::cout << table.str() << "wrote " << summary_path << "\n"
            << "wrote " << plot_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scenario-conditioned expected credit loss engine"};
  app.require_subcommand(1);

  CliArgs args;
  auto* synth_cmd = app.add_subcommand(
      "synth", "generate a synthetic sample, portfolio and planted truth");
  synth_cmd->add_option("--config", args.config_path, "run configuration file")
      ->required();
  synth_cmd->add_option("--out", args.out_dir, "output directory");
  synth_cmd->add_option("--seed", args.seed, "override the generator seed");

  auto* calibrate_cmd = app.add_subcommand(
      "calibrate", "fit sectoral adjustment factors from an entity sample");
  calibrate_cmd
      ->add_option("--config", args.config_path, "run configuration file")
      ->required();
  calibrate_cmd->add_option("--out", args.out_dir, "output directory");

  auto* run_cmd = app.add_subcommand(
      "run", "compute baseline, scenario and delta ECL for a portfolio");
  run_cmd->add_option("--config", args.config_path, "run configuration file")
      ->required();
  run_cmd->add_option("--out", args.out_dir, "output directory");
  run_cmd->add_option("--scenario", args.scenario, "restrict to one scenario");

  auto* report_cmd = app.add_subcommand(
      "report", "summarize delta ECL by industry, scenario and horizon");
  report_cmd->add_option("--config", args.config_path, "run configuration file")
      ->required();
  report_cmd->add_option("--out", args.out_dir, "output directory");
  report_cmd->add_option("--scenario", args.scenario,
                         "restrict to one scenario");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (synth_cmd->parsed()) return cmd_synth(args);
    if (calibrate_cmd->parsed()) return cmd_calibrate(args);
    if (run_cmd->parsed()) return cmd_run(args);
    if (report_cmd->parsed()) return cmd_report(args);
    std::cerr << "error: no subcommand\n";
    return 1;
  } catch (const secl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
