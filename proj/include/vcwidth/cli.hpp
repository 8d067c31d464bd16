#pragma once

#include <fstream>
#include <iostream>
#include <new>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "decomposition.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "oracle.hpp"
#include "pathwidth_cvc.hpp"
#include "pathwidth_vc.hpp"
#include "treewidth_vc.hpp"
#include "treewidth_vc_fast.hpp"
#include "vertex_cover.hpp"

namespace vcw::cli {

enum class Command { Pathwidth, Treewidth, Check, Oracle };

enum ExitCode : int { kOk = 0, kInputError = 2, kResourceError = 3, kInternalError = 4 };

struct RunConfig {
  Command command = Command::Treewidth;
  std::string algorithm;  // empty selects the default for the command
  std::string input;      // .gr path, empty for stdin
  std::string cover_file;
  std::string decomposition_file;  // check only
  bool emit_witness = false;
  bool stats = false;
  std::size_t max_k = 0;  // 0 selects the algorithm's default cap
  std::size_t max_n = oracle::kMaxOracleVertices;
};

// Canonical algorithm name for a command, accepting short aliases.
inline std::string canonical_algorithm(Command cmd, const std::string& name) {
  if (cmd == Command::Pathwidth) {
    if (name.empty() || name == "pw-vc" || name == "vc") return "pw-vc";
    if (name == "pw-cvc" || name == "cvc") return "pw-cvc";
    if (name == "oracle-pw" || name == "oracle") return "oracle-pw";
  } else if (cmd == Command::Treewidth) {
    if (name.empty() || name == "tw-vc-3k" || name == "3k") return "tw-vc-3k";
    if (name == "tw-vc-4k" || name == "4k") return "tw-vc-4k";
    if (name == "oracle-tw" || name == "oracle") return "oracle-tw";
  } else if (name.empty()) {
    return "";
  }
  throw InputError("unknown algorithm '" + name + "' for this command");
}

inline std::size_t default_cap(const std::string& algo) {
  if (algo == "pw-vc") return 20;
  if (algo == "tw-vc-3k") return 16;
  if (algo == "tw-vc-4k") return 14;
  return 26;
}

namespace detail {

inline std::string slurp(const std::string& path, std::istream& fallback) {
  std::ostringstream buf;
  if (path.empty() || path == "-") {
    buf << fallback.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    buf << in.rdbuf();
  }
  return buf.str();
}

inline void print_stats(std::ostream& out, const SolverStats& s, bool triples) {
  out << "c cover size: " << s.cover_size << '\n';
  if (triples) out << "c valid triples: " << s.valid_triples << '\n';
  out << "c states: " << s.states << '\n';
  out << "c peak table entries: " << s.peak_table_entries << '\n';
  if (s.join_layers) out << "c join layers: " << s.join_layers << '\n';
}

inline int check(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
  if (cfg.decomposition_file.empty()) throw InputError("check needs a decomposition file (--td)");
  const Graph g = parse_gr(slurp(cfg.input, in));
  const DecompositionDocument doc = parse_td(slurp(cfg.decomposition_file, in));
  if (doc.declared_n != g.n())
    throw InputError("decomposition declares " + std::to_string(doc.declared_n) + " vertices, graph has " +
                     std::to_string(g.n()));
  const auto rep = validate(g, to_decomposition(doc), 1);
  if (!rep.ok()) {
    for (const auto& e : rep.errors) err << "error: " << e << '\n';
    return kInputError;
  }
  out << "width: " << rep.width << '\n';
  return kOk;
}

inline int solve(const RunConfig& cfg, std::istream& in, std::ostream& out) {
  const Graph g = parse_gr(slurp(cfg.input, in));
  std::optional<VertexSet> cover;
  if (!cfg.cover_file.empty()) cover = parse_cover(slurp(cfg.cover_file, in), g.n());

  if (cfg.command == Command::Oracle) {
    out << "treewidth: " << oracle::treewidth_exact(g, cfg.max_n) << '\n';
    out << "pathwidth: " << oracle::pathwidth_exact(g, cfg.max_n) << '\n';
    return kOk;
  }

  std::string algo = canonical_algorithm(cfg.command, cfg.algorithm);
  const std::size_t cap = cfg.max_k ? cfg.max_k : default_cap(algo);
  if (cfg.command == Command::Treewidth && cfg.algorithm.empty() && !cover && g.n() <= 12 &&
      !minimum_vertex_cover(g, cap))
    algo = "oracle-tw";

  if (algo == "oracle-tw" || algo == "oracle-pw") {
    const int w = algo == "oracle-tw" ? oracle::treewidth_exact(g, cfg.max_n) : oracle::pathwidth_exact(g, cfg.max_n);
    out << "width: " << w << '\n';
    if (cfg.stats) out << "c algorithm: " << algo << '\n';
    if (cfg.emit_witness) out << "c no witness: " << algo << " computes the width only\n";
    return kOk;
  }

  WidthResult res;
  if (algo == "pw-cvc") {
    CvcOptions opt;
    opt.cover = cover;
    opt.max_cover = cap;
    opt.witness = cfg.emit_witness;
    res = pathwidth_cvc(g, opt);
  } else {
    SolveOptions opt;
    opt.cover = cover;
    opt.max_cover = cap;
    opt.witness = cfg.emit_witness;
    if (algo == "pw-vc")
      res = pathwidth_vc(g, opt);
    else if (algo == "tw-vc-4k")
      res = treewidth_vc_4k(g, opt);
    else
      res = treewidth_vc_3k(g, opt);
  }
  out << "width: " << res.width << '\n';
  if (cfg.stats) {
    out << "c algorithm: " << algo << '\n';
    print_stats(out, res.stats, algo != "pw-cvc");
  }
  if (cfg.emit_witness) out << emit_td(res.witness, g.n());
  return kOk;
}

}  // namespace detail

// Runs one command. Diagnostics go to err; the return value is the exit status.
inline int run(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.max_n == 0) throw InputError("--max-n must be positive");
    if (cfg.command == Command::Check) return detail::check(cfg, in, out, err);
    return detail::solve(cfg, in, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << '\n';
    return kResourceError;
  } catch (const std::bad_alloc&) {
    err << "resource limit: out of memory\n";
    return kResourceError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

}  // namespace vcw::cli
