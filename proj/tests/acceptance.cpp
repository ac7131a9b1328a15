// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bigarray_model.hpp"
#include "gp2/bench.hpp"
#include "gp2/generators.hpp"
#include "gp2/interpreter.hpp"
#include "mutations.hpp"
#include "random_hosts.hpp"
#include "random_programs.hpp"
#include "support.hpp"

using namespace gp2;

namespace {

constexpr double kDiscreteStepRatioLow = 1.8, kDiscreteStepRatioHigh = 2.2;
constexpr double kDiscreteTimeRatioLow = 1.5, kDiscreteTimeRatioHigh = 3.0;
constexpr double kDiscreteMaxMs = 5000.0;
constexpr double kTreeStepRatioLow = 1.8, kTreeStepRatioHigh = 2.3;
constexpr double kRootedCostRatioMax = 1.5;
constexpr int kTimingRepeats = 9;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::string fmt(const char* format, double a, double b = 0, double c = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

struct Sample {
  std::uint64_t steps = 0;
  double ms = 0;
  ExecStatus status = ExecStatus::success;
  bool empty_after = false;
};

Sample measure(const Program& p, GeneratorKind kind, std::size_t size, int repeats,
               MatchMode mode = MatchMode::reflecting) {
  Sample best;
  best.ms = 1e300;
  for (int i = 0; i < repeats; ++i) {
    Graph g = generate(kind, size);
    const RunOutcome r = run_program(p, g, {mode, std::nullopt});
    best.steps = r.steps;
    best.status = r.status;
    best.empty_after = g.empty();
    best.ms = std::min(best.ms, r.ms);
  }
  return best;
}

// Doubling ratios of consecutive samples must lie in [low, high].
void check_ratios(Verdict& v, const std::vector<Sample>& s, double low, double high, bool time, std::string& report) {
  for (std::size_t i = 1; i < s.size(); ++i) {
    const double ratio = time ? s[i].ms / s[i - 1].ms : static_cast<double>(s[i].steps) / static_cast<double>(s[i - 1].steps);
    report += fmt(" %.3f", ratio);
    v.require(ratio >= low && ratio <= high, std::string(time ? "time" : "step") + fmt(" ratio %.3f out of range", ratio));
  }
}

Verdict criterion_1() {
  const Program p = test::load_program("is-discrete.gp2");
  Verdict v;
  const std::vector<std::size_t> sizes = {50000, 100000, 200000, 400000};
  std::vector<Sample> samples(sizes.size());
  for (auto& s : samples) s.ms = 1e300;
  // Round-robin over sizes so a transient slowdown hits every size alike.
  for (int r = 0; r < kTimingRepeats; ++r) {
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      const Sample one = measure(p, GeneratorKind::discrete, sizes[i], 1);
      samples[i].steps = one.steps;
      samples[i].status = one.status;
      samples[i].empty_after = one.empty_after;
      samples[i].ms = std::min(samples[i].ms, one.ms);
    }
  }
  for (const auto& s : samples) v.require(s.status == ExecStatus::success && s.empty_after, "did not accept");
  std::string steps = "step ratios", times = "time ratios";
  check_ratios(v, samples, kDiscreteStepRatioLow, kDiscreteStepRatioHigh, false, steps);
  check_ratios(v, samples, kDiscreteTimeRatioLow, kDiscreteTimeRatioHigh, true, times);
  v.require(samples.back().ms < kDiscreteMaxMs, "400k too slow");
  v.detail = (v.pass ? "" : v.detail + "; ") + steps + "; " + times + fmt("; 400k in %.1f ms", samples.back().ms);
  return v;
}

Verdict criterion_2() {
  const Program p = test::load_program("is-binary-dag.gp2");
  Verdict v;
  std::vector<Sample> samples;
  for (std::size_t depth = 12; depth <= 16; ++depth) {
    samples.push_back(measure(p, GeneratorKind::btree, depth, 1));
    v.require(samples.back().status == ExecStatus::success && samples.back().empty_after, "tree not accepted");
  }
  std::string steps = "step ratios";
  check_ratios(v, samples, kTreeStepRatioLow, kTreeStepRatioHigh, false, steps);

  for (const std::size_t n : {1u, 2u, 3u, 10u, 1000u}) {
    Graph g = generate(GeneratorKind::cycle, n);
    v.require(run_program(p, g).status == ExecStatus::fail, "cycle accepted");
  }
  Graph star = test::host_from("[ (c, empty) (a, empty) (b, empty) (d, empty) | (1, c, a, empty) (2, c, b, empty) (3, c, d, empty) ]");
  v.require(run_program(p, star).status == ExecStatus::fail, "outdegree 3 accepted");

  std::mt19937_64 rng(2);
  int agree = 0;
  for (int i = 0; i < 500; ++i) {
    const test::Digraph d = test::random_digraph(rng, 7, 0.2);
    Graph g = test::build(d);
    const bool accepted = run_program(p, g).status == ExecStatus::success;
    agree += accepted == test::is_binary_dag(d);
  }
  v.require(agree == 500, fmt("oracle agreement %.0f/500", agree));
  v.detail = (v.pass ? "" : v.detail + "; ") + steps + fmt("; oracle %.0f/500", agree);
  return v;
}

// is-tree's final Check matches non-root nodes against whatever is left,
// including the root, so it runs root-preserving.
Verdict criterion_3() {
  const Program p = test::load_program("is-tree.gp2");
  const ExecOptions preserving{MatchMode::preserving, std::nullopt};
  Verdict v;
  std::vector<Sample> samples;
  for (std::size_t depth = 15; depth <= 19; ++depth) {
    samples.push_back(measure(p, GeneratorKind::btree, depth, 1, MatchMode::preserving));
    v.require(samples.back().status == ExecStatus::success, "tree not accepted");
  }
  std::string steps = "step ratios";
  check_ratios(v, samples, kTreeStepRatioLow, kTreeStepRatioHigh, false, steps);

  std::mt19937_64 rng(3);
  int agree = 0, trees = 0;
  for (int i = 0; i < 500; ++i) {
    test::Digraph d;
    if (i % 2 == 0) {
      d.n = 1 + static_cast<int>(rng() % 8);
      for (int u = 1; u < d.n; ++u) d.edges.emplace_back(static_cast<int>(rng() % u), u);
      if (rng() % 4 == 0) d.edges.emplace_back(static_cast<int>(rng() % d.n), static_cast<int>(rng() % d.n));
    } else {
      d = test::random_digraph(rng, 8, 0.15);
    }
    // Shuffle node identities so trees are not always rooted at n0.
    std::vector<int> perm(d.n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (auto& [a, b] : d.edges) a = perm[a], b = perm[b];
    Graph g = test::build(d);
    const bool expected = test::is_rooted_tree(d);
    trees += expected;
    agree += (run_program(p, g, preserving).status == ExecStatus::success) == expected;
  }
  v.require(agree == 500, fmt("oracle agreement %.0f/500", agree));
  v.detail = (v.pass ? "" : v.detail + "; ") + steps + fmt("; oracle %.0f/500 (%.0f trees)", agree, trees);
  return v;
}

Verdict criterion_4() {
  const Program p = test::load_program("transitive-closure.gp2");
  Verdict v;
  std::mt19937_64 rng(4);
  int agree = 0;
  for (int i = 0; i < 1000; ++i) {
    const test::Digraph d = test::random_digraph(rng, 5, std::uniform_real_distribution<double>(0.05, 0.6)(rng));
    Graph g = test::build(d);
    const bool ok = run_program(p, g).status == ExecStatus::success;
    const auto reach = test::warshall(d);
    std::set<std::pair<int, int>> expected(d.edges.begin(), d.edges.end());
    for (int a = 0; a < d.n; ++a)
      for (int b = 0; b < d.n; ++b)
        if (reach[a][b] && a != b) expected.emplace(a, b);
    std::set<std::pair<int, int>> actual;
    for (const auto& [s, t] : test::edge_pairs(g)) actual.emplace(std::stoi(s.substr(1)), std::stoi(t.substr(1)));
    agree += ok && actual == expected;
  }
  v.require(agree == 1000, fmt("closure agreement %.0f/1000", agree));
  if (v.pass) v.detail = fmt("closure agreement %.0f/1000", agree);
  return v;
}

std::uint64_t up_cost(std::size_t depth) {
  const Program p = test::load_program("is-binary-dag.gp2");
  const Rule& up = p.rules[p.rule_index("up")];
  Graph g = generate(GeneratorKind::btree, depth);
  NodeHandle leaf;
  for (NodeHandle n : g.nodes()) {
    leaf = n;
    break;
  }
  g.set_root(leaf, true);
  const SearchPlan plan = build_search_plan(up, MatchMode::reflecting);
  g.reset_steps();
  const auto m = find_match(g, up, plan);
  if (!m) return 0;
  UndoLog log;
  apply(g, up, *m, log);
  return g.steps();
}

Verdict criterion_5() {
  Verdict v;
  const double small = static_cast<double>(up_cost(10));
  const double large = static_cast<double>(up_cost(20));
  v.require(small > 0 && large > 0, "up did not match");
  const double ratio = std::max(small, large) / std::min(small, large);
  v.require(ratio <= kRootedCostRatioMax, "cost ratio too high");
  v.detail = (v.pass ? "" : v.detail + "; ") + fmt("steps %.0f vs %.0f, ratio %.3f", small, large, ratio);
  return v;
}

Verdict criterion_6() {
  const Program p = test::load_program("make-root.gp2");
  const Rule& rule = p.rules[p.rule_index("make_root")];
  Verdict v;
  const Graph g = test::host_from("[ (1(R), empty) | ]");
  const bool preserving = find_match(g, rule, build_search_plan(rule, MatchMode::preserving)).has_value();
  const bool reflecting = find_match(g, rule, build_search_plan(rule, MatchMode::reflecting)).has_value();
  v.require(preserving, "no match in preserving mode");
  v.require(!reflecting, "match in reflecting mode");
  if (v.pass) v.detail = "preserving matches, reflecting does not";
  return v;
}

Verdict criterion_7() {
  Verdict v;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::string diff = test::compare_with_model(seed, 100000);
    v.require(diff.empty(), "seed " + std::to_string(seed) + ": " + diff);
  }
  for (const std::size_t n : {1u, 2u, 3u, 7u, 8u, 100000u}) {
    const std::size_t expected = static_cast<std::size_t>(std::bit_width(n));  // floor(log2 n) + 1
    v.require(test::segments_after(n) == expected, "segment count wrong for n=" + std::to_string(n));
  }
  if (v.pass) v.detail = "100 seeds x 1e5 ops agree; segment counts exact";
  return v;
}

Verdict criterion_8() {
  Verdict v;
  std::mt19937_64 rng(8);
  int unchanged = 0;
  for (int i = 0; i < 200; ++i) {
    Program p = test::random_program(rng);
    Graph g = test::build(test::random_digraph(rng, 20, 0.08));
    const GraphSnapshot before = snapshot(g);
    Interpreter interp(p, {MatchMode::reflecting, 10000000});
    UndoLog log;
    const Command probe = Command::if_then_else(p.main, Command::skip(), Command::skip());
    const bool ok = interp.exec(probe, g, log) == ExecStatus::success;
    unchanged += ok && snapshot(g) == before;
  }
  v.require(unchanged == 200, fmt("If transparency %.0f/200", unchanged));

  int restored = 0;
  for (int i = 0; i < 100; ++i) {
    Graph g = test::build(test::random_digraph(rng, 20, 0.1));
    const GraphSnapshot before = snapshot(g);
    UndoLog log;
    const UndoLog::Frame frame = log.open();
    test::random_mutations(g, log, rng, 1 + rng() % 1000);
    log.rollback(g, frame);
    restored += snapshot(g) == before;
  }
  v.require(restored == 100, fmt("rollback restored %.0f/100", restored));
  if (v.pass) v.detail = "If transparent on 200 programs; rollback exact on 100 runs";
  return v;
}

Verdict criterion_9() {
  Verdict v;
  std::mt19937_64 rng(9);
  int identical = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = i < 10 ? 10000 : 1 + rng() % 10000;
    const Graph g = test::random_labelled_graph(rng, n);
    const std::string text = serialize_graph(g);
    const auto back = parse_host_graph(text);
    identical += back.ok() && serialize_graph(*back.value) == text;
  }
  v.require(identical == 100, fmt("round trip %.0f/100", identical));
  const Graph big = generate(GeneratorKind::path, 1000000);
  const auto parsed = parse_host_graph(serialize_graph(big));
  v.require(parsed.ok() && parsed.value->node_count() == 1000000, "1e6-node graph did not parse");
  if (v.pass) v.detail = "100/100 round trips; 1e6 nodes parsed";
  return v;
}

}  // namespace

int main() {
  using Criterion = Verdict (*)();
  const Criterion criteria[] = {criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                                criterion_6, criterion_7, criterion_8, criterion_9};
  const char* const names[] = {"is-discrete linear",        "is-binary-dag linear and correct",
                               "is-tree linear and correct", "transitive closure correct",
                               "rooted matching constant",  "root-reflecting matching",
                               "BigArray model equivalence", "undo log soundness",
                               "parser round trip"};
  int failures = 0;
  for (int i = 0; i < 9; ++i) {
    Verdict v;
    try {
      v = criteria[i]();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    failures += !v.pass;
    std::printf("%s criterion %d: %s (%s)\n", v.pass ? "PASS" : "FAIL", i + 1, names[i], v.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
