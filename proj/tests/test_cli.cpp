#include <gtest/gtest.h>
#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const std::string kExe = HEISFLOW_EXE;
const std::string kData = HEISFLOW_DATA;

struct CliRun {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr discarded; captures stdout.
CliRun run(const std::string& args) {
  const std::string cmd = "'" + kExe + "' " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, p)) > 0;) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string spec(const std::string& name) { return "'" + kData + "/" + name + ".json'"; }

fs::path scratch(const std::string& name) {
  const fs::path d = fs::current_path() / "cli_scratch" / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count_lines(const std::string& s, const std::string& prefix) {
  std::size_t n = 0;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) n += l.rfind(prefix, 0) == 0;
  return n;
}

}  // namespace

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("bogus").code, 2);
  EXPECT_EQ(run("verify --suite nope").code, 2);
  EXPECT_EQ(run("mesh").code, 2);
  EXPECT_EQ(run("mesh --spec " + spec("t1x") + " --nu 1").code, 2);
  EXPECT_EQ(run("residual --spec " + spec("t1x") + " --nu 0").code, 2);
  EXPECT_EQ(run("residual --spec /nonexistent.json").code, 2);
  EXPECT_EQ(run("flow").code, 2);
  EXPECT_EQ(run("flow --grim --spec " + spec("t1x")).code, 2);
  EXPECT_EQ(run("flow --spec " + spec("t2z")).code, 2);
  EXPECT_EQ(run("flow --grim --dx 0.01 --dt 1").code, 2);
  EXPECT_EQ(run("geodesic --integrate --samples 7 --steps 100").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, InvalidSpecJsonIsUsageError) {
  const fs::path d = scratch("badspec");
  std::ofstream(d / "a.json") << R"({"family": "T1X", "A": 1, "uRange": [0.2, 1], "vRange": [-1, 1], "zeta": 3})";
  std::ofstream(d / "b.json") << "{ not json";
  EXPECT_EQ(run("residual --spec '" + (d / "a.json").string() + "'").code, 2);
  EXPECT_EQ(run("mesh --spec '" + (d / "b.json").string() + "'").code, 2);
}

TEST(Cli, VerifyPassingSuite) {
  const CliRun r = run("verify --suite core");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("suite"), "core");
  EXPECT_GT(j.at("checks").size(), 0u);
  for (const auto& [name, c] : j.at("checks").items()) EXPECT_EQ(c.at("status"), "pass") << name;
}

TEST(Cli, VerifyFailingSuiteExitsOne) {
  // The literal Marenich formula fails its geodesic checks.
  const fs::path d = scratch("verify");
  EXPECT_EQ(run("verify --suite geodesic --out '" + (d / "g.json").string() + "'").code, 1);
  const auto j = nlohmann::json::parse(slurp(d / "g.json"));
  EXPECT_EQ(j.at("checks").at("marenich_closed_form_residual").at("status"), "fail");
  EXPECT_EQ(j.at("checks").at("helix_geodesic_residual").at("status"), "pass");
  EXPECT_FALSE(j.at("allPass").get<bool>());
}

TEST(Cli, VerifyIsDeterministic) {
  const CliRun a = run("verify --suite thm2 --seed 11"), b = run("verify --suite thm2 --seed 11");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, MeshWritesOneFilePerTime) {
  const fs::path d = scratch("mesh");
  const CliRun r = run("mesh --spec " + spec("t2z") + " --t 0,0.5,1 --nu 5 --nv 4 --out '" + d.string() + "'");
  ASSERT_EQ(r.code, 0);
  for (const char* name : {"T2Z_t0.obj", "T2Z_t0.5.obj", "T2Z_t1.obj"}) {
    ASSERT_TRUE(fs::exists(d / name)) << name;
    const std::string obj = slurp(d / name);
    EXPECT_EQ(count_lines(obj, "v "), 20u);
    EXPECT_EQ(count_lines(obj, "f "), 2u * 4u * 3u);
  }
  EXPECT_EQ(count_lines(r.out, d.string()), 3u);
}

TEST(Cli, ResidualCsvAndSidecar) {
  const fs::path d = scratch("residual");
  const fs::path csv = d / "r.csv";
  const CliRun r = run("residual --spec " + spec("t1x") + " --t 0.5 --nu 9 --nv 5 --tol 1e-8 --out '" + csv.string() + "'");
  ASSERT_EQ(r.code, 0);
  const std::string text = slurp(csv);
  EXPECT_EQ(text.substr(0, text.find('\n')), "u,v,residual");
  EXPECT_EQ(count_lines(text, "0") + count_lines(text, "1"), 45u);
  const auto side = nlohmann::json::parse(slurp(d / "r.csv.json"));
  EXPECT_EQ(side.at("family"), "T1X");
  EXPECT_EQ(side.at("nu"), 9);
  EXPECT_LT(side.at("maxAbs").get<double>(), 1e-8);
  EXPECT_EQ(side.at("spec").size(), 11u);
}

TEST(Cli, ResidualToleranceFailureExitsOne) {
  // T2 solitons hold on the ruling v = v★ only.
  const fs::path d = scratch("residual_fail");
  EXPECT_EQ(run("residual --spec " + spec("t2z") + " --tol 1e-4 --out '" + (d / "r.csv").string() + "'").code, 1);
  EXPECT_EQ(run("residual --spec " + spec("t1y_grim") + " --tol 1e-8 --out '" + (d / "g.csv").string() + "'").code, 0);
}

TEST(Cli, DomainErrorExitsOne) {
  const fs::path d = scratch("domain");
  std::ofstream(d / "pole.json") << R"({"family": "T1R", "A": 1, "B": 1.2, "uRange": [0, 2], "vRange": [-1, 1]})";
  EXPECT_EQ(run("mesh --spec '" + (d / "pole.json").string() + "' --out '" + d.string() + "'").code, 1);
}

TEST(Cli, GeodesicHorizontalLine) {
  const CliRun r = run("geodesic --A 1 --B 2 --C 0 --len 2 --samples 3");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "u,x,y,z\n0,0,0,0\n1,1,2,0\n2,2,4,0\n");
}

TEST(Cli, GeodesicAdaptedMatchesIntegrator) {
  const CliRun r = run("geodesic --form adapted --A 0.8 --B 0.3 --C 1.1 --integrate --samples 11 --steps 5000");
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "u,x,y,z,x_rk4,y_rk4,z_rk4");
  double worst = 0.0;
  while (std::getline(in, line)) {
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double u, x, y, z, a, b, c;
    row >> u >> x >> y >> z >> a >> b >> c;
    worst = std::max({worst, std::abs(x - a), std::abs(y - b), std::abs(z - c)});
  }
  EXPECT_LT(worst, 1e-6);
}

TEST(Cli, FlowGrimReaper) {
  const fs::path d = scratch("flow");
  const CliRun r = run("flow --grim --dx 0.02 --T 0.1 --tol 5e-3 --out '" + (d / "f.csv").string() + "'");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("family"), "T1Y");
  EXPECT_EQ(j.at("boundary"), "dirichlet-from-oracle");
  EXPECT_LT(j.at("maxInteriorError").get<double>(), 5e-3);
  EXPECT_EQ(slurp(d / "f.csv").substr(0, 4), "u,f\n");
  // Evolve that output further with fixed boundaries.
  const CliRun again = run("flow --profile '" + (d / "f.csv").string() + "' --T 0.05");
  EXPECT_EQ(again.code, 0);
  EXPECT_EQ(nlohmann::json::parse(again.out).at("boundary"), "fixed");
}

TEST(Cli, FlowSpecT1X) {
  const CliRun r = run("flow --spec " + spec("t1x") + " --dx 0.01 --T 0.05 --tol 1e-3");
  EXPECT_EQ(r.code, 0);
}

TEST(Cli, ThreadCapDoesNotChangeOutput) {
  const fs::path d = scratch("threads");
  const std::string base = "residual --spec " + spec("t2x") + " --nu 17 --nv 9 --out ";
  run(base + "'" + (d / "a.csv").string() + "'");
  setenv("HEISFLOW_THREADS", "1", 1);
  run(base + "'" + (d / "b.csv").string() + "'");
  unsetenv("HEISFLOW_THREADS");
  EXPECT_EQ(slurp(d / "a.csv"), slurp(d / "b.csv"));
}
