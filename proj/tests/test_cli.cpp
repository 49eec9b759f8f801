#include "doctest.h"

#include "cli.hpp"
#include "report.hpp"

#include "dsamp/error.hpp"
#include "dsamp/formulations.hpp"
#include "dsamp/solver.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace dsamp;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = DSAMP_FIXTURES;

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string> &args) {
  std::ostringstream out, err;
  int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const char *name) { return (kFixtures / name).string(); }

fs::path scratch(const std::string &name) {
  fs::path dir = fs::temp_directory_path() / "dsamp_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path &p) {
  std::ifstream f(p);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

} // namespace

TEST_CASE("csv quoting round trip") {
  cli::Table t{{"a", "b,c", "d"}, {{"1", "say \"hi\"", ""}, {"x\ny", "", "-3"}}};
  std::ostringstream out;
  cli::write_csv(out, t);
  std::istringstream in(out.str());
  cli::Table back = cli::parse_csv(in);
  CHECK(back.header == t.header);
  CHECK(back.rows == t.rows);

  std::istringstream ragged("a,b\n1\n");
  CHECK_THROWS_AS(cli::parse_csv(ragged), ParseError);
  std::istringstream open("a\n\"x\n");
  CHECK_THROWS_AS(cli::parse_csv(open), ParseError);
  CHECK(cli::fixed(-0.0001, 2) == "0.00");
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"stats"}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({"stats", fixture("missing.txt")}).code == cli::kInputError);
  CHECK(run({"stats", fixture("k3.txt"), "--litho", "-1"}).code == cli::kInputError);
  CHECK(run({"stats", fixture("k3.txt")}).code == cli::kOk);
  // K3 with singletons needs three colors.
  CHECK(run({"solve", fixture("k3.txt"), "-k", "1", "-L", "2"}).code == cli::kInputError);
  auto capped = run({"export-lp", fixture("k3.txt"), "--model", "general-path", "-o",
                     scratch("cap").string(), "--max-variables", "10"});
  CHECK(capped.code == cli::kSizeCap);
  CHECK_FALSE(capped.err.empty());
}

TEST_CASE("stats csv") {
  auto r = run({"stats", fixture("two_k3.txt"), "--format", "csv"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  auto t = cli::parse_csv(in);
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rows[0][0] == "graph");
  CHECK(t.rows[0][1] == "6");
  CHECK(t.rows[1][0] == "c0");
}

TEST_CASE("solve report and solution file") {
  const fs::path sol = scratch("two_k3.sol");
  auto r = run({"solve", fixture("two_k3.txt"), "-k", "2", "--format", "csv", "-o", sol.string()});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  auto t = cli::parse_csv(in);
  REQUIRE(t.rows.size() >= 2);
  CHECK(t.rows[0][0] == "total");
  CHECK(t.rows[1][0] == "max");
  std::ifstream s(sol);
  CHECK(read_solution(s).num_colors == 2);

  auto truncated = run({"solve", fixture("c5.txt"), "-k", "1", "--node-limit", "1"});
  CHECK((truncated.code == cli::kOk || truncated.code == cli::kBudgetExhausted));
}

TEST_CASE("verify") {
  const fs::path sol = scratch("k3.sol");
  REQUIRE(run({"solve", fixture("k3.txt"), "-k", "2", "-o", sol.string()}).code == 0);
  auto ok = run({"verify", fixture("k3.txt"), "--model", "naive", "-k", "2", "-L", "3",
                 "--solution", sol.string()});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("valid") != std::string::npos);

  // Claimed objective off by one.
  TechRules r;
  r.k_max = 2;
  auto g = build_graph(load_layout(kFixtures / "k3.txt"), r);
  auto cat = enumerate_groups(g, r);
  ModelOptions mo;
  mo.colors = 3;
  IpModel m = build_pairing(g, mo);
  Assignment a = encode_solution(m, g, &cat, solve_exact(cat, g));
  const fs::path lp = scratch("k3_pairing.lp");
  export_lp(m, lp);
  std::ostringstream text;
  write_assignment(text, m, a);
  std::string body = text.str();
  auto pos = body.find("objective 2");
  REQUIRE(pos != std::string::npos);
  body.replace(pos, 11, "objective 3");
  const fs::path asg = scratch("k3_pairing.asg");
  std::ofstream(asg) << body;
  auto bad = run({"verify", "--lp", lp.string(), "--assignment", asg.string()});
  CHECK(bad.code == cli::kInputError);
  CHECK(bad.out.find("value mismatch: claimed 3, computed 2") != std::string::npos);

  CHECK(run({"verify", "--lp", lp.string()}).code == cli::kUsage);
}

TEST_CASE("export manifest") {
  const fs::path prefix = scratch("two");
  auto r = run({"export-lp", fixture("two_k3.txt"), "--model", "pairing", "-o", prefix.string()});
  REQUIRE(r.code == 0);
  std::istringstream in(slurp(prefix.string() + "_manifest.csv"));
  auto t = cli::parse_csv(in);
  CHECK(t.header.front() == "component");
  REQUIRE(t.rows.size() == 2);
  for (const auto &row : t.rows)
    CHECK(fs::exists(prefix.parent_path() / fs::path(row[1]).filename()));
}

TEST_CASE("render") {
  auto plain = run({"render", fixture("k3.txt")});
  REQUIRE(plain.code == 0);
  CHECK(plain.out.find("<svg") != std::string::npos);
  CHECK(plain.out.find("#b0b0b0") != std::string::npos);
  auto empty = run({"render", fixture("empty.txt")});
  CHECK(empty.code == 0);
  CHECK(empty.out.find("class=\"via\"") == std::string::npos);

  const fs::path sol = scratch("k3_render.sol");
  REQUIRE(run({"solve", fixture("k3.txt"), "-k", "1", "-o", sol.string()}).code == 0);
  auto colored = run({"render", fixture("k3.txt"), "--solution", sol.string()});
  CHECK(colored.code == 0);
  CHECK(colored.out.find("#b0b0b0") == std::string::npos);
}
