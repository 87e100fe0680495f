#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sheath/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = sheath::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path workdir() {
  fs::path dir = fs::temp_directory_path() / "sheath_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  fs::path p = workdir() / name;
  std::ofstream(p) << text;
  return p.string();
}

const std::string kAbsorbing =
    "electrons = boltzmann\nboundary.phi_b = 1\nfamily = absorbing\nfamily.u_inf = 2\nfamily.eps = 0.05\n"
    "solver.grid = 1000\n";

}  // namespace

TEST_CASE("check-bohm reports a strict scenario") {
  auto r = run({"check-bohm", "--scenario", write("abs.cfg", kAbsorbing)});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["classification"] == "STRICT");
  CHECK(j["supB"].get<std::string>().rfind("UNBOUNDED", 0) == 0);
}

TEST_CASE("solve writes a tagged CSV") {
  fs::path out = workdir() / "solve_out";
  auto r = run({"solve", "--scenario", write("abs.cfg", kAbsorbing), "--out", out.string()});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  std::ifstream csv(out / "profile.csv");
  std::string first, header;
  std::getline(csv, first);
  std::getline(csv, header);
  CHECK(first == "# scenario " + j["scenario"].get<std::string>());
  CHECK(header == "x,phi,dphi,rho,flux,n_e");
  std::size_t rows = 0;
  for (std::string line; std::getline(csv, line);) ++rows;
  CHECK(rows == 1000);
}

TEST_CASE("exit codes separate no-solution from bad input") {
  auto slow = run({"solve", "--scenario",
                   write("slow.cfg", "boundary.phi_b = 0.5\nf_inf.bump.1.center = -0.8, 0, 0\n"
                                     "f_inf.bump.1.width = 0.01\nsolver.grid = 200\n")});
  CHECK(slow.code == 2);
  CHECK(json::parse(slow.err)["error"] == "NO_SOLUTION_CRITERION");
  auto eps = run({"solve", "--scenario",
                  write("eps.cfg", "boundary.phi_b = 0.5\nfamily = absorbing\nfamily.u_inf = 0.8\n")});
  CHECK(eps.code == 3);
  CHECK(json::parse(eps.err)["error"] == "REJECT_EPS");
  auto bad = run({"solve", "--scenario", write("bad.cfg", "boundary.phi_b = 1\nnot_a_key = 3\n")});
  CHECK(bad.code == 3);
  CHECK(json::parse(bad.err)["error"] == "CONFIG");
  auto missing = run({"solve"});
  CHECK(missing.code == 3);
  auto far = run({"solve", "--scenario", write("abs.cfg", kAbsorbing), "--phi-max", "0.5"});
  CHECK(far.code == 2);
  CHECK(json::parse(far.err)["error"] == "PHI_B_OUT_OF_RANGE");
}

TEST_CASE("reduce-wall and validate") {
  std::string wall = write("wall.cfg",
                           "boundary.phi_b = 0\nboundary.v_e = 4\nf_inf.bump.1.mass = 1\n"
                           "f_inf.bump.1.center = 2, 0, 0\nf_inf.bump.1.width = 0.05\n");
  auto r = run({"reduce-wall", "--scenario", wall});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["phi0"].get<double>() == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  auto v = run({"validate", "--scenario", write("abs.cfg", kAbsorbing)});
  CHECK(v.code == 0);
  CHECK(json::parse(v.out)["valid"] == true);
}

TEST_CASE("shipped scenarios parse") {
  const char* dir = std::getenv("SHEATH_SCENARIOS");
  if (!dir) return;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".cfg") continue;
    auto r = run({"check-bohm", "--scenario", entry.path().string(), "--grid", "200"});
    CHECK_MESSAGE(r.code != 3, std::string(entry.path().string() + ": " + r.err));
  }
}
