#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mdnls/cli.hpp"
#include "mdnls/config.hpp"

using namespace mdnls;
namespace fs = std::filesystem;

namespace {

const char* kInflate = R"(# bounded acceptance configuration
[inflate]
symbol = arctan_step(h=1)
d = 1
sigma = 2
s = 0.25
h_list = exp(-2), exp(-3), exp(-4)
)";

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("mdnls_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write(const fs::path& dir, const std::string& name, const std::string& text) {
  std::ofstream(dir / name) << text;
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int cli(std::vector<std::string> args, std::string* err_text = nullptr) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  if (err_text) *err_text = err.str();
  return code;
}

}  // namespace

TEST_CASE("defaults are filled and the section is selected by subcommand") {
  const auto c = parse_config(std::string(kInflate) + "\n[singular]\nsigma = 1\n", "inflate");
  CHECK(c.real("lambda") == 1.0);
  CHECK(c.real("theta") == 0.05);
  CHECK(c.integer("n") == 256);
  CHECK(c.list("h_list").size() == 3);
  CHECK(c.list("h_list")[1] == std::exp(-3.0));
  CHECK(c.symbol().name() == "arctan_step(h=1)");
  CHECK(c.seed() == 0);
}

TEST_CASE("round trip through the resolved form") {
  for (auto [sub, text] : std::vector<std::pair<std::string, std::string>>{
           {"inflate", kInflate},
           {"simulate", "[simulate]\nsymbol = power_m(m=3, mu=0.5)\nT = 0.25\nd = 2\nn = 32\ndealias = true\n"},
           {"ode-approx", "[ode-approx]\nsymbol=laplacian\nd=2\nsigma=2\ns=0.25\nr=2\neps_list=0.1,0.03,0.01\n"},
           {"strichartz", "[strichartz]\nsymbol = wave\np = 8\nq = 4\nN_list = 8, 16\n"},
           {"singular", "[singular]\nsigma = 1.5\nt = 0.5\n"},
       }) {
    CAPTURE(sub);
    const auto a = parse_config(text, sub);
    const auto text2 = serialize(a);
    const auto b = parse_config(text2, sub);
    CHECK(a == b);
    CHECK(serialize(b) == text2);
  }
}

TEST_CASE("empty section lists every required key") {
  try {
    parse_config("[inflate]\n", "inflate");
    FAIL("expected an error");
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    for (auto key : {"symbol", "d", "sigma", "s", "h_list"}) CHECK(what.find(key) != std::string::npos);
    CHECK(e.line() == 1);
  }
}

TEST_CASE("syntax errors carry line numbers") {
  auto line_of = [](const std::string& text) {
    try {
      parse_config(text, "singular");
    } catch (const ConfigError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("[singular]\n# comment\nsigma 2\n") == 3);
  CHECK(line_of("sigma = 1\n") == 1);
  CHECK(line_of("[singular\n") == 1);
  CHECK(line_of("[nowhere]\n") == 1);
  CHECK(line_of("[singular]\nsigma = 1\nsigma = 2\n") == 3);
  CHECK(line_of("[singular]\nsigma = 1\nt = soon\n") == 3);
  CHECK(line_of("[singular]\nsigma = 1\nwidth = 2\n") == 3);
  CHECK_THROWS_WITH_AS(parse_config("[simulate]\nsymbol = laplacian\nT = 1\n", "singular"),
                       doctest::Contains("no [singular] section"), ConfigError);
}

TEST_CASE("hypothesis-violating inputs are rejected") {
  struct Case {
    std::string sub;
    std::string text;
    std::string message;
  };
  const std::string inflate_head = "[inflate]\nsymbol = arctan_step(h=1)\nd = 1\n";
  const std::vector<Case> table{
      {"inflate", "[inflate]\nsymbol=laplacian\nd=2\nsigma=2\ns=0.6\nh_list=0.1\n", "s < s0"},
      {"inflate", "[inflate]\nsymbol=laplacian\nd=1\nsigma=1\ns=0.1\nh_list=0.1\n", "s0 > 0"},
      {"inflate", inflate_head + "sigma = 2\ns = 0.6\nh_list = 0.1\n", "s < d/2 required"},
      {"inflate", inflate_head + "sigma = 2\ns = 0.25\nh_list = 0.5\n", "e^-1"},
      {"inflate", inflate_head + "sigma = 2\ns = 0.25\nh_list = 0.01, 0.1\n", "strictly decreasing"},
      {"inflate", inflate_head + "sigma = 2\ns = 0\nh_list = 0.1\n", "s > 0"},
      {"inflate", inflate_head + "sigma = 2\ns = 0.25\nh_list = 0.1\ntheta = 0\n", "theta"},
      {"inflate", "[inflate]\nsymbol=regularized_laplacian\nd=2\nsigma=0.6\ns=0.5\nh_list=0.1\n", "sigma must be"},
      {"strichartz", "[strichartz]\nsymbol = wave\np = 4\nq = 4\nN_list = 8, 16\n", "not admissible"},
      {"strichartz", "[strichartz]\nsymbol = wave\np = 8\nq = 4\nN_list = 16, 8\n", "strictly increasing"},
      {"ode-approx", "[ode-approx]\nsymbol=laplacian\nd=2\nsigma=2\ns=0.25\nr=1\neps_list=0.1\n", "r > d/2"},
      {"ode-approx", "[ode-approx]\nsymbol=arctan_step(h=1)\nd=1\nsigma=1.5\ns=0.25\nr=4\neps_list=0.1\n",
       "2 sigma"},
      {"ode-approx", "[ode-approx]\nsymbol=arctan_step(h=1)\nd=1\nsigma=2\ns=0.25\nr=1\neps_list=1.5\n", "(0, 1)"},
      {"singular", "[singular]\nsigma = 1\nd = 3\n", "d = 2 only"},
      {"singular", "[singular]\nsigma = 1\nrho_list = 0.6, 0.1, 0.01\n", "(0, 1/2)"},
      {"simulate", "[simulate]\nsymbol = laplacian\nT = 1\nn = 100\n", "power of two"},
      {"simulate", "[simulate]\nsymbol = odd_power_1d\nT = 1\nd = 2\n", "d = 1 only"},
      {"simulate", "[simulate]\nsymbol = schrodinger\nT = 1\n", "symbol"},
      {"simulate", "[simulate]\nsymbol = laplacian\nT = 1\nh_list = 0.1\n", "unknown key"},
  };
  for (const auto& c : table) {
    CAPTURE(c.text);
    CHECK_THROWS_WITH_AS(parse_config(c.text, c.sub), doctest::Contains(c.message.c_str()), ConfigError);
  }
  CHECK(table.size() >= 12);
}

TEST_CASE("CLI exit codes and outputs") {
  const fs::path dir = scratch("cli");
  std::string err;
  CHECK(cli({"inflate"}, &err) == exit_error);
  CHECK(err.find("--config") != std::string::npos);
  CHECK(cli({}) == exit_error);
  CHECK(cli({"inflate", "--config", (dir / "missing.cfg").string()}) == exit_error);
  CHECK(cli({"inflate", "--config", write(dir, "bad.cfg", "[inflate]\n").string(), "--out", (dir / "x").string()}) ==
        exit_error);

  const auto sim = write(dir, "sim.cfg", "[simulate]\nsymbol = laplacian\nT = 0\n");
  CHECK(cli({"simulate", "--config", sim.string(), "--out", (dir / "sim").string()}) == exit_pass);
  const std::string csv = slurp(dir / "sim" / "report.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  CHECK(slurp(dir / "sim" / "summary.txt").find("verdict: pass") != std::string::npos);
  CHECK(parse_config(slurp(dir / "sim" / "resolved.cfg"), "simulate") ==
        parse_config(slurp(sim), "simulate"));

  const auto lin = write(dir, "lin.cfg", std::string(kInflate) + "lambda = 0\n");
  CHECK(cli({"inflate", "--config", lin.string(), "--out", (dir / "lin").string()}) == exit_fail);
}

TEST_CASE("repeated runs give bit-identical CSV") {
  const fs::path dir = scratch("repeat");
  const auto cfg = write(dir, "ode.cfg",
                         "[ode-approx]\nsymbol=arctan_step(h=1)\nd=1\nsigma=2\ns=0.25\nr=1\neps_list=0.1,0.03\n");
  REQUIRE(cli({"ode-approx", "--config", cfg.string(), "--out", (dir / "a").string()}) == exit_pass);
  REQUIRE(cli({"ode-approx", "--config", (dir / "a" / "resolved.cfg").string(), "--out", (dir / "b").string()}) ==
          exit_pass);
  CHECK(slurp(dir / "a" / "report.csv") == slurp(dir / "b" / "report.csv"));
  CHECK(slurp(dir / "a" / "report.csv").size() > 100);
}
