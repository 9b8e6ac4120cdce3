#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "casimir/run_config.hpp"

using namespace casimir;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string command = std::string(CASIMIR_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("casimir_test_" + name);
  std::ofstream(path) << text;
  return path;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string report_value(const std::string& report, const std::string& key) {
  for (const auto& l : lines(report)) {
    if (l.rfind(key + " ", 0) == 0) {
      const auto pos = l.find_first_not_of(' ', key.size());
      return l.substr(pos);
    }
  }
  return {};
}

}  // namespace

TEST_CASE("config grammar") {
  const ConfigMap c = parse_config_text(
      "# comment\n"
      "model = \"constant\", n = 2.0\n"
      "d_over_a = 0.5   # trailing comment\n"
      "t=1\n"
      "sweep_values = 0.1, 0.2, 0.4\n");
  CHECK(c.get("model") == "constant");
  CHECK(c.get("n") == "2.0");
  CHECK(c.get("d_over_a") == "0.5");
  CHECK(c.get("sweep_values") == "0.1, 0.2, 0.4");
  CHECK_THROWS_AS(parse_config_text("n 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("bad key = 1\n"), ConfigError);

  ConfigMap d = c;
  apply_override(d, "n=3");
  CHECK(d.get("n") == "3");
  const RunConfig run = build_run_config(d);
  CHECK(std::get<ConstantIndex>(run.model).n == 3.0);
  CHECK(run.geometry.rel_width() == doctest::Approx(0.5));
  CHECK(run.thermal.t == 1.0);
}

TEST_CASE("model grammar and SI inputs") {
  const RunConfig plasma = build_run_config(
      parse_config_text("model = \"plasma\", omega_p_si = 3.0e16\na_m = 0.01\nd_over_a = 0.1\ntemperature_K = 300\n"));
  CHECK(std::get<Plasma>(plasma.model).x_p == doctest::Approx(3.0e16 * 0.01 / kSpeedOfLight));
  CHECK(plasma.thermal.t == doctest::Approx(ThermalState::from_si(300.0, 0.01).t));
  const RunConfig drude = build_run_config(parse_config_text(
      "model = \"drude\", omega_p_si = 3.0e16, gamma_si = 1.0e14\na_m = 0.01\nb_m = 0.011\nt = 1\n"));
  CHECK(std::get<Drude>(drude.model).relaxation_gamma == doctest::Approx(1.0e14 * 0.01 / kSpeedOfLight));
  CHECK(drude.geometry.ratio() == doctest::Approx(0.01 / 0.011));
  const RunConfig pec = build_run_config(parse_config_text("model = \"pec\", zero_mode = \"A\"\na_over_b = 0.5\nt = 1\n"));
  CHECK(std::get<PerfectConductor>(pec.model).zero_mode == ZeroModePolicy::OptionA);

  CHECK_THROWS_AS(build_run_config(parse_config_text("model = drude, x_p = 10\nd_over_a = 1\nt = 1\n")), ConfigError);
  CHECK_THROWS_AS(build_run_config(parse_config_text("n = 2\na_over_b = 1.5\nt = 1\n")), ConfigError);
  CHECK_THROWS_AS(build_run_config(parse_config_text("n = 2\nd_over_a = 1\n")), ConfigError);
  CHECK_THROWS_AS(build_run_config(parse_config_text("n = 0.5\nd_over_a = 1\nt = 1\n")), ConfigError);
  CHECK_THROWS_AS(build_run_config(parse_config_text("model = foo\nd_over_a = 1\nt = 1\n")), ConfigError);
}

TEST_CASE("sweep spec from config") {
  const SweepSpec a = build_sweep_spec(parse_config_text("n = 2\nd_over_a = 0.5\nsweep_axis = temperature_t\nsweep_logspace = 0.01 100 5\n"));
  REQUIRE(a.values.size() == 5);
  CHECK(a.values[0] == doctest::Approx(0.01));
  CHECK(a.values[2] == doctest::Approx(1.0));
  CHECK(a.values[4] == doctest::Approx(100.0));
  CHECK(sweep_point_config(a, 3.0).thermal.t == 3.0);

  const SweepSpec b = build_sweep_spec(parse_config_text("n = 2\nt = 1\nsweep_axis = rel_width\nsweep_values = 0.1, 0.2\n"));
  CHECK(b.axis == SweepAxis::RelWidth);
  CHECK(sweep_point_config(b, 0.2).geometry.rel_width() == doctest::Approx(0.2));

  CHECK_THROWS_AS(build_sweep_spec(parse_config_text("n = 2\nt = 1\nd_over_a = 1\n")), ConfigError);
  CHECK_THROWS_AS(build_sweep_spec(parse_config_text("model = pec\nt = 1\nd_over_a = 1\nsweep_axis = n\nsweep_values = 2\n")), ConfigError);
  CHECK_THROWS_AS(build_sweep_spec(parse_config_text("n = 2\nt = 1\nsweep_axis = d_over_a\nsweep_values = -1\n")), ConfigError);
}

TEST_CASE("real formatting round-trips") {
  for (double v : {0.1, -1.5319423, 1e-300, 123456789.125, 2.0 / 3.0}) {
    CHECK(std::stod(format_real(v)) == v);
  }
  CHECK(format_real(2.0) == "2");
}

TEST_CASE("sweep CSV shape and failed rows") {
  SweepSpec spec = build_sweep_spec(parse_config_text("n = 2\nt = 1\nsweep_axis = d_over_a\nsweep_values = 0.2 0.5 1.0\n"));
  std::ostringstream out;
  CHECK(run_sweep(spec, out));
  const auto rows = lines(out.str());
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "t,d_over_a,n_or_model,beta_F,minus_beta_F_t_log10,Y,terms,converged");
  double previous = 1e300;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = fields(rows[i]);
    REQUIRE(f.size() == 8);
    CHECK(f[2] == "n=2");
    CHECK(f[7] == "true");
    const double bf = std::stod(f[3]);
    CHECK(std::fabs(bf) < previous);
    previous = std::fabs(bf);
  }

  spec.fixed.set("max_l", "2");
  std::ostringstream capped;
  CHECK_FALSE(run_sweep(spec, capped));
  const auto capped_rows = lines(capped.str());
  REQUIRE(capped_rows.size() == 4);
  for (std::size_t i = 1; i < capped_rows.size(); ++i) CHECK(fields(capped_rows[i])[7] == "false");
}

TEST_CASE("compute command") {
  SUBCASE("vacuum") {
    const Run r = run_cli("compute --set n=1 --set d_over_a=0.5 --set t=1");
    CHECK(r.code == 0);
    CHECK(report_value(r.out, "beta_F") == "0");
    CHECK(report_value(r.out, "Y") == "n/a");
  }
  SUBCASE("geometry error") {
    CHECK(run_cli("compute --set n=2 --set a_over_b=1.5 --set t=1").code == 2);
    CHECK(run_cli("compute --set n=2 --set d_over_a=-0.1 --set t=1").code == 2);
    CHECK(run_cli("compute --config /nonexistent/file.cfg").code == 2);
  }
  SUBCASE("non-convergence") {
    CHECK(run_cli("compute --set n=2 --set d_over_a=0.5 --set t=1 --set max_l=2").code == 3);
  }
  SUBCASE("metal options differ by half the zero mode") {
    const std::string base = "compute --set model=pec --set a_over_b=0.5 --set t=1";
    const Run a = run_cli(base + " --set zero_mode=A");
    const Run b = run_cli(base + " --set zero_mode=B");
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    const double fa = std::stod(report_value(a.out, "beta_F"));
    const double fb = std::stod(report_value(b.out, "beta_F"));
    const double za = std::stod(report_value(a.out, "zero_mode_beta_F"));
    CHECK(fa - fb == doctest::Approx(0.5 * za).epsilon(1e-8));
  }
}

TEST_CASE("sweep command output is stable") {
  const auto cfg = write_temp("sweep.cfg",
                              "model = \"constant\", n = 2.0\n"
                              "d_over_a = 0.5\n"
                              "sweep_axis = temperature_t\n"
                              "sweep_values = 0.5, 1, 2\n");
  const Run first = run_cli("sweep --no-header --config " + cfg.string());
  const Run second = run_cli("sweep --no-header --config " + cfg.string());
  CHECK(first.code == 0);
  CHECK(first.out == second.out);
  CHECK(lines(first.out).size() == 4);

  const Run with_header = run_cli("sweep --config " + cfg.string());
  CHECK(with_header.out.rfind("# casimir sweep ", 0) == 0);
  CHECK(with_header.out.substr(with_header.out.find('\n') + 1) == first.out);

  const auto out_path = std::filesystem::temp_directory_path() / "casimir_test_out.csv";
  CHECK(run_cli("sweep --no-header --config " + cfg.string() + " --out " + out_path.string()).code == 0);
  std::ifstream in(out_path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  CHECK(buffer.str() == first.out);
}

TEST_CASE("single-point sweep matches compute") {
  const Run sweep = run_cli(
      "sweep --no-header --set n=2 --set d_over_a=0.3 --set sweep_axis=t --set sweep_values=0.7");
  const Run compute = run_cli("compute --csv --no-header --set n=2 --set d_over_a=0.3 --set t=0.7");
  CHECK(sweep.code == 0);
  CHECK(compute.code == 0);
  CHECK(sweep.out == compute.out);
}

TEST_CASE("truncation and threads flags") {
  const std::string base = "compute --csv --no-header --set n=2 --set d_over_a=0.3 --set t=0.7";
  const Run coarse = run_cli(base + " --truncation 1e-4");
  const Run fine = run_cli(base + " --threads 2");
  const Run plain = run_cli(base);
  CHECK(fields(lines(coarse.out)[1])[6] != fields(lines(plain.out)[1])[6]);
  CHECK(fine.out == plain.out);
}

TEST_CASE("verify and dump-debye") {
  const Run v = run_cli("verify");
  CHECK(v.code == 0);
  CHECK(v.out.find("[FAIL]") == std::string::npos);
  const Run d = run_cli("dump-debye --terms 2");
  CHECK(d.code == 0);
  CHECK(d.out.find("A[1] = 1/8*theta - 5/24*theta^3") != std::string::npos);
  CHECK(d.out.find("D[2] = ") != std::string::npos);
}
