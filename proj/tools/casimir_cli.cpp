// casimir: free energy between concentric dielectric spheres.
//
//   casimir compute --set d_over_a=0.5 --set t=1 --set n=2
//   casimir sweep --config fig1.cfg --out fig1.csv
//   casimir verify
//   casimir dump-debye --terms 6

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "casimir/run_config.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNotConverged = 3;

struct Common {
  std::string config_path;
  std::vector<std::string> overrides;
  double truncation = 0.0;
  int threads = -1;
  bool no_header = false;
  std::string out_path;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config_path, "key = value configuration file");
  cmd->add_option("--set", c.overrides, "override one key (key=value), repeatable");
  cmd->add_option("--truncation", c.truncation, "term truncation ratio");
  cmd->add_option("--threads", c.threads, "OpenMP threads (0 = runtime default)");
  cmd->add_flag("--no-header", c.no_header, "omit the timestamped comment line");
  cmd->add_option("--out", c.out_path, "write output to this file instead of stdout");
}

casimir::ConfigMap load(const Common& c) {
  casimir::ConfigMap config;
  if (!c.config_path.empty()) config = casimir::parse_config_file(c.config_path);
  for (const auto& o : c.overrides) casimir::apply_override(config, o);
  if (c.truncation != 0.0) config.set("truncation", casimir::format_real(c.truncation));
  if (c.threads >= 0) config.set("threads", std::to_string(c.threads));
  return config;
}

// stdout unless --out was given.
std::ostream& output(const Common& c, std::unique_ptr<std::ofstream>& file) {
  if (c.out_path.empty()) return std::cout;
  file = std::make_unique<std::ofstream>(c.out_path);
  if (!*file) throw casimir::ConfigError("cannot open output file '" + c.out_path + "'");
  return *file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir free energy between concentric spheres"};
  app.require_subcommand(1);

  Common compute_opts, sweep_opts;
  bool compute_csv = false;
  auto* compute = app.add_subcommand("compute", "evaluate one configuration");
  add_common(compute, compute_opts);
  compute->add_flag("--csv", compute_csv, "emit the sweep CSV format");

  auto* sweep = app.add_subcommand("sweep", "evaluate a grid along one axis");
  add_common(sweep, sweep_opts);

  auto* verify = app.add_subcommand("verify", "run the built-in consistency checks");

  int dump_terms = casimir::kDefaultCorrectionTerms;
  std::string dump_out;
  auto* dump = app.add_subcommand("dump-debye", "print the Debye correction polynomials");
  dump->add_option("--terms", dump_terms, "number of 1/nu corrections")->check(CLI::Range(0, 60));
  dump->add_option("--out", dump_out, "write to this file instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (compute->parsed()) {
      const casimir::RunConfig config = casimir::build_run_config(load(compute_opts));
      std::unique_ptr<std::ofstream> file;
      std::ostream& out = output(compute_opts, file);
      const casimir::PointResult row = casimir::evaluate_point(config);
      if (compute_csv) {
        if (!compute_opts.no_header) casimir::write_csv_comment(out, "sweep");
        casimir::write_csv_header(out);
        casimir::write_csv_row(out, row);
      } else {
        casimir::write_report(out, config, row);
      }
      if (!row.converged) {
        std::cerr << "casimir: not converged: " << row.error << '\n';
        return kExitNotConverged;
      }
      return 0;
    }
    if (sweep->parsed()) {
      const casimir::SweepSpec spec = casimir::build_sweep_spec(load(sweep_opts));
      std::unique_ptr<std::ofstream> file;
      std::ostream& out = output(sweep_opts, file);
      if (!sweep_opts.no_header) casimir::write_csv_comment(out, "sweep");
      if (!casimir::run_sweep(spec, out)) {
        std::cerr << "casimir: some sweep points did not converge\n";
        return kExitNotConverged;
      }
      return 0;
    }
    if (verify->parsed()) return casimir::run_self_checks(std::cout) ? 0 : 1;
    if (dump->parsed()) {
      const auto tables = casimir::generate_correction_coefficients(dump_terms);
      if (dump_out.empty()) {
        casimir::dump_coefficient_tables(tables, std::cout);
      } else {
        std::ofstream f(dump_out);
        if (!f) throw casimir::ConfigError("cannot open output file '" + dump_out + "'");
        casimir::dump_coefficient_tables(tables, f);
      }
      return 0;
    }
  } catch (const casimir::ConfigError& e) {
    std::cerr << "casimir: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "casimir: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
