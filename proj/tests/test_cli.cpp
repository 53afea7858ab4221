#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "casimir/app/commands.hpp"
#include "casimir/constants.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace casimir::app;

namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "casimir");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "casimir_cli_tests";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

std::vector<std::string> csv_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  return out;
}

double column(const std::string& csv, const std::string& name, std::size_t row = 0) {
  const auto lines = csv_lines(csv);
  const auto header = fields(lines.at(0));
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return std::stod(fields(lines.at(row + 1)).at(i));
  }
  FAIL("missing column " << name);
  return 0.0;
}

const std::string kVacuumMirrors =
    "[structure]\nregions = mirror, gap:vacuum:1e-6, plate:mirror, gap:vacuum:50e-6, mirror\n";

}  // namespace

TEST_CASE("force on the vacuum mirror benchmark") {
  const auto cfg = scratch("vacuum.ini", kVacuumMirrors);
  const Run r = cli({"force", "--config", cfg.string(), "--quiet"});
  CHECK(r.code == 0);
  CHECK(r.err.empty());
  const double f = column(r.out, "force_per_area[N/m^2]");
  CHECK(f == doctest::Approx(-1.3002e-3).epsilon(1e-4));
  CHECK(column(r.out, "rel_tol") == 1e-8);
  CHECK(r.out.find("e-03") != std::string::npos);
}

TEST_CASE("symmetric cavity gives zero force") {
  const auto cfg = scratch("symmetric.ini",
                           "[material.fluid]\nkind = constant\neps_static = 3\n[structure]\n"
                           "regions = vacuum:semi-infinite, gap:fluid:1e-6, plate:vacuum:1e-7, gap:fluid:1e-6, vacuum:semi-infinite\n");
  const Run r = cli({"force", "--config", cfg.string()});
  CHECK(r.code == 0);
  CHECK(std::abs(column(r.out, "force_per_area[N/m^2]")) <= column(r.out, "error_estimate[N/m^2]") + 1e-25);
}

TEST_CASE("config errors exit with 2 and a position") {
  const auto cfg = scratch("bad.ini", "[structure]\nregions = mirror, gap:water:1e-6, plate:mirror, gap:water:1e-6, mirror\n");
  const Run r = cli({"force", "--config", cfg.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 2, column 19") != std::string::npos);
  CHECK(cli({"force", "--config", "/nonexistent/file.ini"}).code == 2);
  CHECK(cli({"force"}).code == 2);
  CHECK(cli({"nonsense"}).code == 2);
  CHECK(cli({"force", "--config", cfg.string(), "--format", "xml"}).code == 2);
}

TEST_CASE("non-convergence exits with 3") {
  const auto cfg = scratch("vacuum.ini", kVacuumMirrors);
  const Run r = cli({"force", "--config", cfg.string(), "--temperature", "300", "--matsubara-terms", "5"});
  CHECK(r.code == 3);
  CHECK(r.err.find("not converged") != std::string::npos);
}

TEST_CASE("help exits with 0") {
  const Run r = cli({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("stress-profile") != std::string::npos);
}

TEST_CASE("stress profile") {
  const auto empty = scratch("empty.ini",
                             "[material.gold]\nkind = plasma\nplasma_freq = 1.37e16\n[structure]\n"
                             "regions = gold:semi-infinite, gap:vacuum:1e-6, vacuum:semi-infinite\n");
  const Run r = cli({"stress-profile", "--config", empty.string(), "--z-samples", "4"});
  CHECK(r.code == 0);
  CHECK(csv_lines(r.out).size() == 5);
  const double first = column(r.out, "T_zz[N/m^2]", 0);
  for (std::size_t k = 1; k < 4; ++k) {
    CHECK(column(r.out, "T_zz[N/m^2]", k) == doctest::Approx(first).epsilon(1e-7));
  }
  CHECK(column(r.out, "z[m]", 0) == doctest::Approx(0.2e-6));

  CHECK(cli({"stress-profile", "--config", empty.string(), "--z-samples", "1"}).code == 2);
  const auto cavity = scratch("vacuum.ini", kVacuumMirrors);
  CHECK(cli({"stress-profile", "--config", cavity.string()}).code == 2);
}

TEST_CASE("compare rows") {
  const Run r = cli({"compare", "--eps", "1,4,1e6", "--quiet"});
  CHECK(r.code == 0);
  CHECK(column(r.out, "ratio_minkowski_over_force", 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(column(r.out, "ratio_minkowski_over_force", 1) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(column(r.out, "ratio_minkowski_over_force", 2) == doctest::Approx(1.5).epsilon(1e-6));
  CHECK(cli({"compare", "--mu", "2"}).code == 2);
  const Run q = cli({"compare", "--eps", "2", "--quadrature", "--quiet"});
  CHECK(q.code == 0);
  CHECK(column(q.out, "force[N/m^2]") ==
        doctest::Approx(-0.5892556509887896 * 1.3001257732443655e-3).epsilon(1e-6));
}

TEST_CASE("sweep") {
  const auto cfg = scratch("vacuum.ini", kVacuumMirrors);
  const Run r = cli({"sweep", "--config", cfg.string(), "--param", "d", "--from", "0.5e-6", "--to", "5e-6",
                     "--points", "4", "--log"});
  CHECK(r.code == 0);
  CHECK(csv_lines(r.out).size() == 5);
  CHECK(r.err.find("slope") != std::string::npos);
  CHECK(cli({"sweep", "--config", cfg.string(), "--param", "d", "--from", "1e-6", "--to", "1e-6",
             "--points", "3"}).code == 2);
  CHECK(cli({"sweep", "--config", cfg.string(), "--param", "x", "--from", "0", "--to", "1",
             "--points", "3"}).code == 2);

  const Run eps = cli({"sweep", "--config", cfg.string(), "--param", "eps", "--from", "1", "--to", "9",
                       "--points", "3", "--quiet"});
  CHECK(eps.code == 0);
  const double f1 = std::abs(column(eps.out, "force_per_area[N/m^2]", 0));
  const double f2 = std::abs(column(eps.out, "force_per_area[N/m^2]", 1));
  const double f3 = std::abs(column(eps.out, "force_per_area[N/m^2]", 2));
  CHECK(f1 > f2);
  CHECK(f2 > f3);
}

TEST_CASE("limits") {
  const Run r = cli({"limits", "--eps", "4", "--quiet"});
  CHECK(r.code == 0);
  CHECK(column(r.out, "force_minkowski_closed_form[N/m^2]") ==
        doctest::Approx(-0.5 * 1.3001257732443655e-3).epsilon(1e-14));
  const Run ratio = cli({"limits", "--ratio-sweep", "--n-max", "3", "--points", "3", "--quiet"});
  CHECK(csv_lines(ratio.out).at(0) == "n,ratio_minkowski_over_force");
  CHECK(column(ratio.out, "ratio_minkowski_over_force", 1) == doctest::Approx(4.0 / 3.0));
  const Run magnetic = cli({"limits", "--mu", "2", "--quiet"});
  CHECK(magnetic.code == 0);
  CHECK(magnetic.out.find("unsupported") != std::string::npos);
}

TEST_CASE("JSON report re-ingested as config reproduces the result bit for bit") {
  const auto cfg = scratch("filled.ini",
                           "[material.gold]\nkind = drude_lorentz\nplasma_freq = 1.37e16\nresonance_freq = 0\ndamping = 5.3e13\n"
                           "[material.fluid]\nkind = constant\neps_static = 1.7777777777777777\n[structure]\n"
                           "regions = gold:semi-infinite, gap:fluid:0.7e-6, plate:gold:1.3e-7, gap:fluid:1.1e-6, mirror\n"
                           "[run]\ntemperature = 77\n[quadrature]\nzero_term_policy = drop\nrel_tol = 1e-6\n");
  const auto dir = fs::temp_directory_path() / "casimir_cli_tests";
  const std::string first = (dir / "first.json").string();
  const std::string second = (dir / "second.json").string();
  REQUIRE(cli({"force", "--config", cfg.string(), "--format", "json", "--out", first, "--quiet"}).code == 0);
  REQUIRE(cli({"force", "--config", first, "--format", "json", "--out", second, "--quiet"}).code == 0);
  std::ifstream a(first), b(second);
  const auto ja = nlohmann::json::parse(a);
  const auto jb = nlohmann::json::parse(b);
  CHECK(ja == jb);
  CHECK(ja["results"][0]["force_per_area[N/m^2]"].get<double>() ==
        jb["results"][0]["force_per_area[N/m^2]"].get<double>());
  CHECK(ja["config"]["temperature"] == 77.0);
}

TEST_CASE("output section writes files") {
  const auto dir = fs::temp_directory_path() / "casimir_cli_tests";
  const auto csv = (dir / "from_config.csv").string();
  fs::remove(csv);
  const auto cfg = scratch("with_output.ini", kVacuumMirrors + "[output]\ncsv = " + csv + "\n");
  const Run r = cli({"force", "--config", cfg.string(), "--quiet"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(fs::exists(csv));
}
