// Acceptance runner: prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. Pass criterion numbers to run a subset.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support/helpers.hpp"
#include "vcwidth/io.hpp"
#include "vcwidth/oracle.hpp"
#include "vcwidth/pathwidth_cvc.hpp"
#include "vcwidth/pathwidth_vc.hpp"
#include "vcwidth/subset_convolution.hpp"
#include "vcwidth/treewidth_vc.hpp"
#include "vcwidth/treewidth_vc_fast.hpp"

using namespace vcw;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::uint64_t pow3(std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= 3;
  return r;
}

struct Result {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

// Shared bookkeeping for criteria 3, 4 and 7, which ride along the solver
// runs of criteria 1 and 2.
struct Ledger {
  std::uint64_t witnesses = 0, cross_checks = 0, triple_checks = 0;
  Result witness, cross, triples;
};

struct Instance {
  std::string label;
  const Graph* g;
};

void check_witness(Ledger& led, const Instance& in, const char* algo, const WidthResult& r) {
  ++led.witnesses;
  const auto rep = validate(*in.g, r.witness);
  if (!rep.ok())
    led.witness.fail(std::string(algo) + " witness invalid on " + in.label + ": " + rep.errors.front());
  else if (rep.width != r.width)
    led.witness.fail(std::string(algo) + " witness width " + std::to_string(rep.width) + " != " +
                     std::to_string(r.width) + " on " + in.label);
}

// Runs all three cover solvers against the oracles. Returns false on a width mismatch.
bool solve_and_compare(Ledger& led, const Instance& in, Result& res) {
  const Graph& g = *in.g;
  const int tw = oracle::treewidth_exact(g), pw = oracle::pathwidth_exact(g);
  const WidthResult p = pathwidth_vc(g), t4 = treewidth_vc_4k(g), t3 = treewidth_vc_3k(g);
  bool ok = true;
  auto cmp = [&](const char* algo, int got, int want) {
    if (got != want) {
      res.fail(std::string(algo) + " gave " + std::to_string(got) + ", oracle " + std::to_string(want) + " on " +
               in.label);
      ok = false;
    }
  };
  cmp("pathwidth_vc", p.width, pw);
  cmp("treewidth_vc_4k", t4.width, tw);
  cmp("treewidth_vc_3k", t3.width, tw);
  check_witness(led, in, "pathwidth_vc", p);
  check_witness(led, in, "treewidth_vc_4k", t4);
  check_witness(led, in, "treewidth_vc_3k", t3);
  ++led.cross_checks;
  if (t3.width != t4.width) led.cross.fail("3k/4k differ on " + in.label);
  for (const WidthResult* r : {&p, &t4, &t3}) {
    ++led.triple_checks;
    if (r->stats.valid_triples > pow3(r->stats.cover_size + 1))
      led.triples.fail("triple count " + std::to_string(r->stats.valid_triples) + " above 3^(k+1) on " + in.label);
  }
  return ok;
}

std::string edges_label(const Graph& g) {
  std::ostringstream s;
  s << "n=" << g.n() << " edges";
  for (auto [u, v] : g.edges()) s << ' ' << u << '-' << v;
  return s.str();
}

// Layered join values at d = |C| against the part-minimized 4^k join values.
bool per_join_key_match(const Graph& g, std::uint64_t& keys) {
  SolveOptions opt;
  const Augmented aug = detail::prepare(g, opt);
  const CoverSpace cs(aug);
  const TripleIndex index(cs);
  TreewidthLayers layers(cs, index);
  for (int d = 0; d < cs.size(); ++d) layers.step();
  const TreewidthTable4k full(cs, index);
  for (std::uint32_t id = 0; id < index.size(); ++id) {
    if (popcount(index.lower(id)) < 2) continue;
    ++keys;
    if (layers.join_lower()[id] != full.join_lower(id)) return false;
  }
  return true;
}

Result criterion1(Ledger& led) {
  Result res;
  std::uint64_t graphs = 0, keys = 0;
  const auto t0 = Clock::now();
  oracle::enumerate_small_graphs(6, [&](const Graph& g) {
    ++graphs;
    solve_and_compare(led, {edges_label(g), &g}, res);
  });
  // per-join-key comparison over the whole n <= 6 suite
  for (std::size_t n = 1; n <= 6; ++n)
    oracle::enumerate_small_graphs(n, [&](const Graph& g) {
      if (!per_join_key_match(g, keys)) led.cross.fail("join values differ on " + edges_label(g));
    });
  led.cross.detail += (led.cross.detail.empty() ? "" : "; ") + std::to_string(keys) + " join keys compared";
  res.detail = std::to_string(graphs) + " graphs on 6 vertices, " + std::to_string(seconds_since(t0)) + " s" +
               (res.pass ? "" : "; first failure: " + res.detail);
  return res;
}

Result criterion2(Ledger& led) {
  Result res;
  std::mt19937_64 rng(20240601);
  std::uint64_t graphs = 0, cvc = 0;
  const auto t0 = Clock::now();
  for (std::size_t n = 7; n <= 10; ++n)
    for (double p : {0.2, 0.5, 0.8})
      for (int rep = 0; rep < 500; ++rep) {
        const Graph g = test::random_graph(n, p, rng);
        ++graphs;
        const Instance in{"G(" + std::to_string(n) + "," + std::to_string(p) + ") #" + std::to_string(rep), &g};
        solve_and_compare(led, in, res);
        if (p == 0.8 && minimum_vertex_cover(complement(g)).k <= 8) {
          ++cvc;
          const WidthResult r = pathwidth_cvc(g);
          if (r.width != oracle::pathwidth_exact(g)) res.fail("pw-cvc mismatch on " + in.label);
          check_witness(led, in, "pathwidth_cvc", r);
        }
      }
  if (cvc == 0) res.fail("no dense instance reached pw-cvc");
  const std::string what = std::to_string(graphs) + " random graphs, " + std::to_string(cvc) +
                           " pw-cvc instances, " + std::to_string(seconds_since(t0)) + " s";
  res.detail = res.pass ? what : what + "; first failure: " + res.detail;
  return res;
}

Result criterion5() {
  Result res;
  std::mt19937_64 rng(55);
  std::uint64_t pairs = 0;
  for (int s = 1; s <= 12; ++s) {
    std::vector<std::int64_t> delta(std::size_t{1} << s, 0);
    delta[0] = 1;
    const SetFunction id(s, delta);
    for (int rep = 0; rep < 100; ++rep) {
      std::uniform_int_distribution<std::int64_t> dist(0, 1 << 20);
      std::vector<std::int64_t> a(std::size_t{1} << s), b(std::size_t{1} << s);
      for (auto& x : a) x = dist(rng);
      for (auto& x : b) x = dist(rng);
      const SetFunction f(s, a), g(s, b);
      const SetFunction h = convolve(f, g);
      ++pairs;
      if (h.values() != test::naive_convolution(a, b)) res.fail("naive mismatch at s=" + std::to_string(s));
      if (convolve(g, f) != h) res.fail("not commutative at s=" + std::to_string(s));
      if (convolve(f, id) != f || convolve(id, g) != g) res.fail("identity fails at s=" + std::to_string(s));
    }
  }
  if (res.pass) res.detail = std::to_string(pairs) + " pairs, s = 1..12";
  return res;
}

Result criterion6() {
  Result res;
  std::mt19937_64 rng(66);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + rep % 8;
    const Graph g = test::random_graph(n, std::uniform_real_distribution<double>(0.1, 0.9)(rng), rng);
    const Graph h = add_universal_vertex(g).first;
    if (oracle::treewidth_exact(h) != oracle::treewidth_exact(g) + 1)
      res.fail("treewidth shift fails on " + edges_label(g));
    if (oracle::pathwidth_exact(h) != oracle::pathwidth_exact(g) + 1)
      res.fail("pathwidth shift fails on " + edges_label(g));
  }
  if (res.pass) res.detail = "200 graphs, n <= 8";
  return res;
}

Result criterion7(Ledger& led) {
  Result res = led.triples;
  std::ostringstream out;
  if (res.pass) out << led.triple_checks << " triple counts within 3^(k+1); ";
  // cells of join layer 1 against sum_i C(c,i) 2^(c-i) = 3^c over the cover C of the augmented graph
  std::mt19937_64 rng(77);
  double lo = 1e300, hi = 0, op_lo = 1e300, op_hi = 0;
  for (std::size_t k : {8, 10, 12}) {
    for (int rep = 0; rep < 3; ++rep) {
      const Graph g = test::planted_cover_graph(2 * k + 4, k, 0.3, 0.1, rng);
      SolveOptions opt;
      opt.witness = false;
      const WidthResult r = treewidth_vc_3k(g, opt);
      if (r.stats.cover_size != k) res.fail("planted cover size not attained");
      const double shape = static_cast<double>(pow3(k + 1));
      const double ratio = static_cast<double>(r.stats.join_cells) / shape;
      const double op_ratio = static_cast<double>(r.stats.join_transform_ops) / shape;
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      op_lo = std::min(op_lo, op_ratio);
      op_hi = std::max(op_hi, op_ratio);
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "cells/3^(k+1) in [%.3f, %.3f], spread %.2f; transform ops/3^(k+1) in [%.1f, %.1f]",
                lo, hi, hi / lo, op_lo, op_hi);
  out << buf;
  if (hi / lo > 4) res.fail(buf);
  if (res.pass) res.detail = out.str();
  return res;
}

Result criterion8() {
  Result res;
  std::ostringstream out;
  std::mt19937_64 rng(88);
  {
    const Graph g = test::planted_cover_graph(40, 16, 0.3, 0.1, rng);
    const auto t0 = Clock::now();
    const WidthResult r = pathwidth_vc(g);
    const double s = seconds_since(t0);
    if (r.stats.cover_size != 16) res.fail("pathwidth instance has k=" + std::to_string(r.stats.cover_size));
    if (s > 300) res.fail("pathwidth_vc took " + std::to_string(s) + " s");
    out << "pathwidth_vc k=16 n=40 " << s << " s; ";
  }
  {
    const Graph g = test::planted_cover_graph(30, 12, 0.3, 0.1, rng);
    const auto t0 = Clock::now();
    const WidthResult r = treewidth_vc_3k(g);
    const double s = seconds_since(t0);
    if (r.stats.cover_size != 12) res.fail("treewidth instance has k=" + std::to_string(r.stats.cover_size));
    if (s > 600) res.fail("treewidth_vc_3k took " + std::to_string(s) + " s");
    out << "treewidth_vc_3k k=12 n=30 " << s << " s; ";
  }
  {
    // complement of G(24, 1/2), redrawn until its cover number is 18
    Graph g;
    for (;;) {
      const Graph c = test::random_graph(24, 0.5, rng);
      if (minimum_vertex_cover(c).k == 18) {
        g = complement(c);
        break;
      }
    }
    const auto t0 = Clock::now();
    const WidthResult r = pathwidth_cvc(g);
    const double s = seconds_since(t0);
    if (r.stats.cover_size != 18) res.fail("pw-cvc instance has k'=" + std::to_string(r.stats.cover_size));
    if (s > 300) res.fail("pathwidth_cvc took " + std::to_string(s) + " s");
    out << "pathwidth_cvc k'=18 n=24 " << s << " s";
  }
  if (res.pass) res.detail = out.str();
  return res;
}

// Random edits of valid documents plus raw noise.
std::string mutate(std::string text, std::mt19937_64& rng) {
  static const std::string alphabet = "0123456789 \n\tpbcstdw-+x\r";
  const int edits = 1 + static_cast<int>(rng() % 4);
  for (int e = 0; e < edits; ++e) {
    const std::size_t pos = text.empty() ? 0 : rng() % (text.size() + 1);
    switch (rng() % 7) {
      case 0:
        text.insert(pos, 1, alphabet[rng() % alphabet.size()]);
        break;
      case 1:
        if (pos < text.size()) text.erase(pos, 1 + rng() % 5);
        break;
      case 2:
        if (pos < text.size()) text[pos] = static_cast<char>(rng() % 256);
        break;
      case 3: {  // duplicate a line
        const auto start = text.rfind('\n', pos == 0 ? 0 : pos - 1);
        const auto end = text.find('\n', pos);
        const std::size_t a = start == std::string::npos ? 0 : start + 1;
        if (end != std::string::npos && a <= end) text.insert(end + 1, text.substr(a, end - a + 1));
        break;
      }
      case 4:
        text.insert(pos, std::to_string(rng() % 2 ? rng() : rng() % 20));
        break;
      case 5:
        text.resize(pos);
        break;
      default:
        text.insert(pos, "\n");
    }
  }
  return text;
}

Result criterion9() {
  Result res;
  std::mt19937_64 rng(99);
  std::uint64_t rejected = 0, accepted = 0;
  for (int i = 0; i < 10000; ++i) {
    const std::size_t n = 1 + rng() % 8;
    const Graph g = test::random_graph(n, 0.4, rng);
    std::string text;
    const int kind = i % 3;
    if (kind == 0) {
      text = mutate(emit_gr(g), rng);
    } else if (kind == 1) {
      const Decomposition d = (i % 2) ? test::path_from_layout(g, test::random_order(n, rng))
                                      : test::decomposition_from_order(g, test::random_order(n, rng));
      text = mutate(emit_td(d, n), rng);
    } else {
      const std::size_t len = rng() % 64;
      for (std::size_t j = 0; j < len; ++j) text.push_back(static_cast<char>(rng() % 256));
    }
    std::size_t lines = 1;
    for (char c : text) lines += c == '\n';
    try {
      if (kind == 0 || (kind == 2 && rng() % 2))
        parse_gr(text);
      else
        to_decomposition(parse_td(text));
      ++accepted;
    } catch (const ParseError& e) {
      ++rejected;
      if (e.line() < 1 || e.line() > lines)
        res.fail("diagnostic line " + std::to_string(e.line()) + " outside the input in case " + std::to_string(i));
    } catch (const std::exception& e) {
      res.fail(std::string("rejection without a line number in case ") + std::to_string(i) + ": " + e.what());
    }
  }
  if (res.pass)
    res.detail = "10000 cases, " + std::to_string(rejected) + " rejected with line numbers, " +
                 std::to_string(accepted) + " accepted";
  return res;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  auto wanted = [&](int c) { return only.empty() || only.count(c); };
  // criteria 3, 4 and 7 read what 1 and 2 recorded
  for (int c : {3, 4}) if (only.count(c)) only.insert({1, 2});

  Ledger led;
  std::vector<std::pair<int, Result>> results;
  auto report = [&](int id, const std::string& name, const Result& r) {
    std::cout << "criterion " << id << " [" << name << "]: " << (r.pass ? "PASS" : "FAIL") << " - " << r.detail
              << std::endl;
    results.emplace_back(id, r);
  };

  if (wanted(1)) report(1, "exhaustive oracle equivalence, n = 6", criterion1(led));
  if (wanted(2)) report(2, "randomized oracle equivalence, n = 7..10", criterion2(led));
  if (wanted(3)) {
    Result r = led.witness;
    if (r.pass) r.detail = std::to_string(led.witnesses) + " witnesses validated with matching width";
    report(3, "witness soundness", r);
  }
  if (wanted(4)) {
    Result r = led.cross;
    r.detail = std::to_string(led.cross_checks) + " instances with equal 3k/4k widths; " + r.detail;
    report(4, "cross-solver equality", r);
  }
  if (wanted(5)) report(5, "subset convolution", criterion5());
  if (wanted(6)) report(6, "universal-vertex shift", criterion6());
  if (wanted(7)) report(7, "structural bound", criterion7(led));
  if (wanted(8)) report(8, "scale", criterion8());
  if (wanted(9)) report(9, "parser robustness", criterion9());

  bool all = true;
  for (const auto& [id, r] : results) all = all && r.pass;
  return all ? 0 : 1;
}
