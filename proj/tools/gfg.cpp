// gfg: command-line driver.
//
//   gfg check <n>
//   gfg scan <lo> <hi> [--workers K] [--checkpoint PATH] [--block B] [--out PATH]
//   gfg analyze <n> [--out DIR]
//   gfg paths [--hamiltonian-paths|--hamiltonian-cycles|--longest] --n N [--eac]
//   gfg draw --eac --n N [--seed S] [--budget I]
//   gfg twin --prime-limit P --max-n M
//
// Exit codes: 0 success, 1 usage, 2 resource, 3 I/O.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gfg/components.hpp"
#include "gfg/drawing.hpp"
#include "gfg/errors.hpp"
#include "gfg/graph.hpp"
#include "gfg/paths.hpp"
#include "gfg/primes.hpp"
#include "gfg/report.hpp"
#include "gfg/search.hpp"
#include "gfg/twin.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kResource = 2, kIo = 3 };

gfg::SpfTable table_for(std::uint64_t n) {
  gfg::require_goldbach_n(n);
  return gfg::SpfTable(std::max<std::uint64_t>(n - 2, 2), gfg::kDefaultSpfBudgetBytes);
}

void print_path(const std::vector<std::uint64_t>& p) {
  for (std::size_t i = 0; i < p.size(); ++i) std::cout << (i ? " " : "") << p[i];
  std::cout << '\n';
}

int cmd_check(std::uint64_t n) {
  const auto table = table_for(n);
  const auto r = gfg::has_eac(n, table);
  const auto& s = r.sets;
  if (r.has_eac) {
    std::cout << "EAC present, residual=" << s.residual.size()
              << ", eac_vertices=" << gfg::eac_vertex_count(n, table) << '\n';
  } else {
    std::cout << "no EAC, residual=0\n";
  }
  std::cout << "gamma=" << s.gamma.size() << " theta=" << s.theta.size() << " xi=" << s.xi.size()
            << '\n';
  return kOk;
}

struct ScanArgs {
  std::uint64_t lo = 0, hi = 0;
  std::optional<std::uint64_t> block;  // checkpoint value on resume, else 10000
  unsigned workers = 1;
  std::string checkpoint, out;
};

int cmd_scan(const ScanArgs& a) {
  gfg::ScanResult result;
  if (!a.checkpoint.empty() && std::filesystem::exists(a.checkpoint)) {
    const auto cp = gfg::read_checkpoint(a.checkpoint);
    if (cp.range_lo != a.lo || cp.range_hi != a.hi) {
      throw gfg::ConfigError("checkpoint " + a.checkpoint + " covers [" + std::to_string(cp.range_lo) +
                             ", " + std::to_string(cp.range_hi) + "], not the requested range");
    }
    std::cerr << "resuming from " << a.checkpoint << " at n=" << cp.next_block << '\n';
    result = gfg::resume_scan(a.checkpoint, a.workers, a.block);
  } else {
    gfg::ScanOptions opts;
    opts.workers = a.workers;
    opts.block_size = a.block.value_or(10000);
    opts.checkpoint_path = a.checkpoint;
    result = gfg::scan_range(a.lo, a.hi, opts);
  }
  const std::string text = gfg::format_hits_jsonl(result.hits);
  if (a.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(a.out, std::ios::binary);
    if (!f || !(f << text) || !f.flush()) throw gfg::IoError("cannot write " + a.out);
  }
  std::cerr << result.hits.size() << " hits in [" << a.lo << ", " << a.hi << "]\n";
  return kOk;
}

int cmd_analyze(std::uint64_t n, const std::string& out, const gfg::AnnealOptions& anneal) {
  const auto table = table_for(n);
  const auto dir = gfg::write_analysis(n, table, out, anneal);
  std::ifstream in(dir / "report.json");
  std::cout << in.rdbuf();
  std::cerr << "wrote " << dir.string() << '\n';
  return kOk;
}

struct PathsArgs {
  bool ham_paths = false, ham_cycles = false, longest = false, eac = false;
  std::uint64_t n = 0;
};

int cmd_paths(const PathsArgs& a) {
  if (a.ham_paths + a.ham_cycles + a.longest != 1) {
    throw gfg::DomainError("choose exactly one of --hamiltonian-paths, --hamiltonian-cycles, --longest");
  }
  const auto table = table_for(a.n);
  const auto g = gfg::build_gfg(a.n, table);
  const auto d = gfg::strongly_connected_components(g);
  const auto classes = gfg::classify_components(g, d);
  // Hamiltonian questions only make sense on the EAC.
  const bool on_eac = a.eac || !a.longest;
  if (on_eac && gfg::components_of_kind(classes, gfg::ComponentKind::Eac).empty()) {
    std::cout << "F_" << a.n << " has no EAC\n";
    return kOk;
  }
  if (a.longest && !a.eac) {
    const auto r = gfg::longest_path_gfg(g);
    std::cout << "length=" << r.length << '\n';
    print_path(r.witnesses.front());
    return kOk;
  }
  gfg::PathProblem p;
  p.graph = gfg::eac_subgraph(g, d, classes).digraph();
  if (a.longest) {
    p.mode = gfg::PathMode::Longest;
    const auto r = gfg::longest_path_general(p);
    std::cout << "length=" << r.length << '\n';
    print_path(r.witnesses.front());
    return kOk;
  }
  p.mode = a.ham_paths ? gfg::PathMode::HamiltonianPath : gfg::PathMode::HamiltonianCycle;
  p.witness_limit = 1000;
  const auto r = a.ham_paths ? gfg::hamiltonian_paths(p) : gfg::hamiltonian_cycles(p);
  std::cout << (a.ham_paths ? "paths=" : "cycles=") << r.count << '\n';
  for (const auto& w : r.witnesses) print_path(w);
  return kOk;
}

int cmd_draw(std::uint64_t n, const gfg::AnnealOptions& anneal) {
  const auto table = table_for(n);
  const auto g = gfg::build_gfg(n, table);
  const auto d = gfg::strongly_connected_components(g);
  const auto classes = gfg::classify_components(g, d);
  if (gfg::components_of_kind(classes, gfg::ComponentKind::Eac).empty()) {
    std::cout << "F_" << n << " has no EAC\n";
    return kOk;
  }
  const auto e = gfg::eac_subgraph(g, d, classes).digraph();
  std::cerr << "seed=" << anneal.seed << " budget=" << anneal.budget << '\n';
  const auto layout = gfg::crossing_upper_bound(e, anneal);
  std::cout << gfg::format_layout(layout, e);
  return kOk;
}

int cmd_twin(std::uint64_t prime_limit, std::uint64_t max_n) {
  const auto r = gfg::twin_search(prime_limit, max_n);
  for (const auto& s : r.solutions) {
    std::cout << s.a() << ' ' << s.b() << ' ' << s.x() << ' ' << s.y() << ' ' << s.n() << '\n';
  }
  if (r.truncated_pairs > 0) {
    std::cerr << r.truncated_pairs << " pairs hit 64-bit overflow before max-n; search incomplete\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Goldbach factorization graphs and exceptional autonomous components"};
  app.require_subcommand(1);

  std::uint64_t check_n = 0;
  auto* check = app.add_subcommand("check", "Decide whether F_n has an EAC");
  check->add_option("n", check_n, "even n >= 4")->required();

  ScanArgs scan_args;
  auto* scan = app.add_subcommand("scan", "Scan even n in [lo, hi] for EACs, JSONL hits");
  scan->add_option("lo", scan_args.lo)->required();
  scan->add_option("hi", scan_args.hi)->required();
  scan->add_option("--workers", scan_args.workers)->check(CLI::PositiveNumber);
  scan->add_option("--checkpoint", scan_args.checkpoint, "resume from / save to this file");
  scan->add_option("--block", scan_args.block);
  scan->add_option("--out", scan_args.out);

  gfg::AnnealOptions anneal;
  std::uint64_t analyze_n = 0;
  std::string analyze_out = "reports";
  auto* analyze = app.add_subcommand("analyze", "Table row, census and DOT files for F_n");
  analyze->add_option("n", analyze_n)->required();
  analyze->add_option("--out", analyze_out);
  analyze->add_option("--seed", anneal.seed);
  analyze->add_option("--budget", anneal.budget);

  PathsArgs paths_args;
  auto* paths = app.add_subcommand("paths", "Hamiltonian paths/cycles or longest path");
  auto* mode = paths->add_option_group("mode");
  mode->add_flag("--hamiltonian-paths", paths_args.ham_paths);
  mode->add_flag("--hamiltonian-cycles", paths_args.ham_cycles);
  mode->add_flag("--longest", paths_args.longest);
  mode->require_option(1);
  paths->add_flag("--eac", paths_args.eac, "restrict to the EAC");
  paths->add_option("--n", paths_args.n)->required();

  std::uint64_t draw_n = 0;
  bool draw_eac = false;
  auto* draw = app.add_subcommand("draw", "Grid layout of the EAC with few crossings");
  draw->add_flag("--eac", draw_eac)->required();
  draw->add_option("--n", draw_n)->required();
  draw->add_option("--seed", anneal.seed);
  draw->add_option("--budget", anneal.budget);

  std::uint64_t prime_limit = 0, max_n = 0;
  auto* twin = app.add_subcommand("twin", "Search a^x + b = b^y + a");
  twin->add_option("--prime-limit", prime_limit)->required();
  twin->add_option("--max-n", max_n)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*check) return cmd_check(check_n);
    if (*scan) return cmd_scan(scan_args);
    if (*analyze) return cmd_analyze(analyze_n, analyze_out, anneal);
    if (*paths) return cmd_paths(paths_args);
    if (*draw) return cmd_draw(draw_n, anneal);
    if (*twin) return cmd_twin(prime_limit, max_n);
  } catch (const gfg::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const gfg::RangeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const gfg::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const gfg::ResourceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kResource;
  } catch (const gfg::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return kResource;
  }
  return kUsage;
}
