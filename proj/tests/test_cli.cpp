#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "doctest.h"
#include "gapbench/graph.hpp"
#include "oracle.hpp"

namespace fs = std::filesystem;
using gapbench::cli::run;

namespace {

struct Invocation {
  int code = 0;
  std::string out;
  std::string err;
};

Invocation invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "gapbench-cli-test";
  fs::create_directories(dir);
  return dir / name;
}

// Data rows of a CSV with '#' provenance lines and one header row.
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::string header_row(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') return line;
  }
  return {};
}

// Value of "key: value" in a text summary.
double summary_value(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + ": ", 0) == 0) return std::stod(line.substr(key.size() + 2));
  }
  FAIL("summary key missing: " << key);
  return 0.0;
}

}  // namespace

TEST_CASE("generate writes the worst-case edge list with provenance") {
  const fs::path path = scratch("g8.txt");
  const auto r = invoke({"generate", "worst-case", "--n", "8", "-o", path.string()});
  REQUIRE(r.code == 0);
  const std::string text = slurp(path);
  CHECK(text.rfind("# gapbench ", 0) == 0);
  CHECK(text.find("# n = 8\n") != std::string::npos);
  CHECK(text.find("# seed = 1\n") != std::string::npos);
  const auto graph = gapbench::load_edge_list(text);
  CHECK(graph == gapbench::worst_case_graph(8));
  CHECK(text.find("\nn 8\n") != std::string::npos);
}

TEST_CASE("generate is deterministic and validates sizes") {
  const auto a = invoke({"generate", "scale-free", "--n", "64", "--seed", "1"});
  const auto b = invoke({"generate", "scale-free", "--n", "64", "--seed", "1"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != invoke({"generate", "scale-free", "--n", "64", "--seed", "2"}).out);

  const auto bad = invoke({"generate", "worst-case", "--n", "1"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("n >= 2") != std::string::npos);
  CHECK(invoke({"generate", "ring", "--n", "4"}).code == 2);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("pagerank reports worst-case scores and the iteration bound") {
  const auto r = invoke({"pagerank", "--family", "worst-case", "--n", "4", "--alpha", "0.85"});
  REQUIRE(r.code == 0);
  CHECK(header_row(r.out) == "vertex,score");
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(std::abs(std::stod(rows[0][1]) - 0.4625) <= 1e-10);
  CHECK(std::abs(std::stod(rows[3][1]) - 0.4625) <= 1e-10);
  CHECK(std::abs(std::stod(rows[1][1]) - 0.0375) <= 1e-10);

  const fs::path path = scratch("pr.csv");
  const auto s = invoke({"pagerank", "--family", "scale-free", "--n", "200", "--epsilon", "1e-8",
                         "--alpha", "0.85", "-o", path.string()});
  REQUIRE(s.code == 0);
  CHECK(summary_value(s.out, "iteration_bound") == 116);
  CHECK(summary_value(s.out, "iterations") <= 116);
}

TEST_CASE("pagerank on a missing file is a usage error") {
  const auto r = invoke({"pagerank", "--graph", scratch("does-not-exist.txt").string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("does-not-exist.txt") != std::string::npos);
}

TEST_CASE("gap without damping is flat at one") {
  const auto r = invoke({"gap", "--alpha", "0", "--family", "uniform", "--n", "12"});
  REQUIRE(r.code == 0);
  CHECK(header_row(r.out) == "s,gap,stage");
  for (const auto& row : csv_rows(r.out)) CHECK(std::abs(std::stod(row[1]) - 1.0) <= 1e-9);
  CHECK(std::abs(summary_value(r.err, "delta") - 1.0) <= 1e-9);
}

TEST_CASE("gap on the worst case at n = 32 sits in the scaling band") {
  const fs::path svg = scratch("gap.svg");
  const auto r = invoke({"gap", "--n", "32", "--alpha", "0.85", "--plot", svg.string()});
  REQUIRE(r.code == 0);
  const double inv = summary_value(r.err, "delta_inverse");
  const double rescaled = inv * 0.15 * 0.15 / 32.0;
  CHECK(rescaled >= 0.35);
  CHECK(rescaled <= 0.65);
  CHECK(std::abs(inv - 1.0 / oracle::gap(oracle::google(oracle::transition(gapbench::worst_case_graph(32)), 0.85), 1.0)) <=
        1e-6 * inv);
  const std::string text = slurp(svg);
  CHECK(text.find("<svg") != std::string::npos);
  CHECK(text.find("command: gap") != std::string::npos);
}

TEST_CASE("gap refuses dense solves above the threshold") {
  const auto r = invoke({"gap", "--method", "dense", "--n", "4096"});
  CHECK(r.code == 2);
  CHECK(r.err.find("dense threshold") != std::string::npos);
}

TEST_CASE("scan fits the worst-case law and rejects an empty size list") {
  const fs::path svg = scratch("scan.svg");
  const auto r = invoke({"scan", "--alphas", "0.85", "--ns", "16", "32", "64", "128", "--plot", svg.string()});
  REQUIRE(r.code == 0);
  CHECK(header_row(r.out).rfind("alpha,n,delta,delta_inverse", 0) == 0);
  CHECK(csv_rows(r.out).size() == 4);
  const double beta = summary_value(r.err, "fits[0].exponent");
  CHECK(beta >= 0.9);
  CHECK(beta <= 1.1);
  CHECK(slurp(svg).find("(log)") != std::string::npos);

  CHECK(invoke({"scan", "--ns"}).code == 2);
  CHECK(invoke({"scan"}).code == 2);
}

TEST_CASE("scan of the scale-free family reports residuals") {
  const auto r = invoke({"scan", "--family", "scale-free", "--ns", "32", "64", "128", "--seeds", "2"});
  REQUIRE(r.code == 0);
  CHECK(csv_rows(r.out).size() == 6);
  CHECK(r.err.find("fits[0].exponent: ") != std::string::npos);
  CHECK(r.err.find("fits[0].log_residuals: ") != std::string::npos);
}

TEST_CASE("adversary enumerates n = 3 and marks the minimum") {
  const fs::path best = scratch("best.txt");
  const auto r = invoke({"adversary", "--n", "3", "--exhaustive", "--best", best.string()});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 27);
  double lowest = 1e300;
  for (const auto& row : rows) lowest = std::min(lowest, std::stod(row[2]));
  std::size_t marked = 0;
  for (const auto& row : rows) {
    const bool at_min = std::abs(std::stod(row[2]) - lowest) <= 1e-10;
    CHECK((row[3] == "1") == at_min);
    marked += row[3] == "1";
  }
  CHECK(marked >= 1);
  CHECK(gapbench::load_edge_list(slurp(best)).vertex_count() == 3);
}

TEST_CASE("adversary at n = 4 meets the worst-case gap and guards n = 6") {
  const auto r = invoke({"adversary", "--n", "4", "--exhaustive", "--alpha", "0.85"});
  REQUIRE(r.code == 0);
  const double wc = oracle::gap(oracle::google(oracle::transition(gapbench::worst_case_graph(4)), 0.85), 1.0);
  CHECK(std::abs(summary_value(r.err, "best_delta") - wc) <= 1e-10);
  CHECK(r.err.find("worst_case_equivalent: yes") != std::string::npos);

  const auto big = invoke({"adversary", "--n", "6", "--exhaustive"});
  CHECK(big.code == 2);
  CHECK(big.err.find("limited") != std::string::npos);
  CHECK(invoke({"adversary", "--n", "4", "--exhaustive", "--hill-climb"}).code == 2);
}

TEST_CASE("report follows the runtime arithmetic") {
  const auto r = invoke({"report", "--n", "128", "--alpha", "0.85", "--epsilon", "1e-8"});
  REQUIRE(r.code == 0);
  const double delta = summary_value(r.err, "delta");
  CHECK(summary_value(r.err, "classical_iterations") == 114);
  CHECK(std::abs(summary_value(r.err, "quantum_proxy") - std::log(1e8) / delta) <= 1e-9 / delta);

  const auto half = invoke({"report", "--n", "4", "--alpha", "0.5", "--epsilon", "0.5", "--delta", "0.25"});
  REQUIRE(half.code == 0);
  CHECK(summary_value(half.err, "classical_iterations") == 1);

  CHECK(invoke({"report", "--n", "4", "--delta", "0"}).code == 2);
}

TEST_CASE("json output carries provenance, summary and rows") {
  const auto r = invoke({"report", "--n", "100", "--delta", "0.01", "--format", "json"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\"provenance\"") != std::string::npos);
  CHECK(r.out.find("\"classical_iterations\": 114") != std::string::npos);
  CHECK(r.err.empty());
}

TEST_CASE("deterministic reruns are byte-identical across thread counts") {
  const std::vector<std::string> base{"scan", "--family", "scale-free", "--ns", "32", "48", "64",
                                      "--seeds", "2", "--deterministic", "-o"};
  auto with = [&](const std::string& file, const std::string& threads) {
    auto args = base;
    args.push_back(scratch(file).string());
    args.insert(args.end(), {"--threads", threads});
    REQUIRE(invoke(args).code == 0);
    return slurp(scratch(file));
  };
  const std::string a = with("det.csv", "1");
  const std::string b = with("det.csv", "1");
  CHECK(a == b);
  // Thread count and output path are echoed, so compare past the header.
  auto body = [](const std::string& text) { return text.substr(text.find("\nalpha,")); };
  CHECK(body(a) == body(with("det-c.csv", "3")));
}

TEST_CASE("options can come from a key=value config file") {
  const fs::path cfg = scratch("run.ini");
  std::ofstream(cfg) << "alpha=0.5\nseed=7\n";
  const auto r = invoke({"--config", cfg.string(), "pagerank", "--n", "4"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("# alpha = 0.5\n") != std::string::npos);
  CHECK(r.out.find("# seed = 7\n") != std::string::npos);
  const auto rows = csv_rows(r.out);
  CHECK(std::abs(std::stod(rows[0][1]) - 0.375) <= 1e-10);
}
