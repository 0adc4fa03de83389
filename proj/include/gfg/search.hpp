#pragma once

// EAC existence checks and the parallel range scanner.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "gfg/components.hpp"
#include "gfg/errors.hpp"
#include "gfg/graph.hpp"
#include "gfg/primes.hpp"

namespace gfg {

/// Vertex sets (as primes, ascending) behind the EAC existence test.
struct EacCheckSets {
  std::vector<std::uint64_t> gamma;     // n - v is prime
  std::vector<std::uint64_t> theta;     // n - v = v^e, e >= 2
  std::vector<std::uint64_t> xi;        // reachable from gamma by at least one arc
  std::vector<std::uint64_t> residual;  // (V \ theta) \ (gamma u xi)
};

struct EacCheck {
  bool has_eac = false;
  EacCheckSets sets;
};

namespace detail {

inline void require_table(std::uint64_t n, const SpfTable& table) {
  require_goldbach_n(n);
  if (table.limit() < n - 2) {
    throw RangeError("SPF table limit " + std::to_string(table.limit()) +
                     " does not cover n - 2 = " + std::to_string(n - 2));
  }
}

// n - v == v^e with e >= 2, by repeated division.
inline bool is_trivial_vertex(std::uint64_t n, std::uint64_t v) {
  std::uint64_t x = n - v;
  if (x == v || x % v != 0) return false;
  while (x % v == 0) x /= v;
  return x == 1;
}

}  // namespace detail

/// Decides whether F_n has an EAC without building the SCC decomposition:
/// the residual (V \ theta) \ (gamma u xi) is nonempty exactly when it does.
inline EacCheck has_eac(std::uint64_t n, const SpfTable& table) {
  detail::require_table(n, table);
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p <= n - 2; ++p) {
    if (table.spf_unchecked(p) == p) primes.push_back(p);
  }
  const std::size_t vcount = primes.size();
  auto index_of = [&](std::uint64_t p) {
    return static_cast<Vertex>(std::lower_bound(primes.begin(), primes.end(), p) - primes.begin());
  };

  // Successor lists in CSR form, built from each vertex's predecessor
  // factorization.
  std::vector<std::uint32_t> offsets(vcount + 1, 0), targets;
  std::vector<std::pair<Vertex, Vertex>> arcs;
  std::vector<char> in_gamma(vcount, 0), in_theta(vcount, 0);
  std::size_t active = 0;
  for (Vertex t = 0; t < vcount; ++t) {
    const std::uint64_t x = n - primes[t];
    if (table.spf_unchecked(x) == x) in_gamma[t] = 1;
    if (detail::is_trivial_vertex(n, primes[t])) {
      in_theta[t] = 1;
    } else {
      ++active;
    }
    std::uint64_t rest = x;
    while (rest > 1) {
      const std::uint64_t b = table.spf_unchecked(rest);
      while (rest % b == 0) rest /= b;
      arcs.emplace_back(index_of(b), t);
      ++offsets[index_of(b) + 1];
    }
  }
  for (std::size_t i = 0; i < vcount; ++i) offsets[i + 1] += offsets[i];
  targets.resize(arcs.size());
  {
    std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
    for (const auto& [s, t] : arcs) targets[cursor[s]++] = t;
  }

  std::vector<char> in_xi(vcount, 0), marked(vcount, 0);
  std::vector<Vertex> queue;
  std::size_t marked_active = 0;
  for (Vertex v = 0; v < vcount; ++v) {
    if (in_gamma[v]) {
      marked[v] = 1;
      queue.push_back(v);
      if (!in_theta[v]) ++marked_active;
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex s = queue[head];
    for (std::uint32_t k = offsets[s]; k < offsets[s + 1]; ++k) {
      const Vertex t = targets[k];
      in_xi[t] = 1;
      if (!marked[t]) {
        marked[t] = 1;
        if (!in_theta[t]) ++marked_active;
        queue.push_back(t);
      }
    }
    // Every non-theta vertex already covered: the rest of xi cannot change the verdict.
    if (marked_active == active) {
      for (std::size_t rest = head + 1; rest < queue.size(); ++rest) {
        const Vertex r = queue[rest];
        for (std::uint32_t k = offsets[r]; k < offsets[r + 1]; ++k) in_xi[targets[k]] = 1;
      }
      break;
    }
  }

  EacCheck result;
  for (Vertex v = 0; v < vcount; ++v) {
    if (in_gamma[v]) result.sets.gamma.push_back(primes[v]);
    if (in_theta[v]) result.sets.theta.push_back(primes[v]);
    if (in_xi[v]) result.sets.xi.push_back(primes[v]);
    if (!in_theta[v] && !marked[v]) result.sets.residual.push_back(primes[v]);
  }
  result.has_eac = !result.sets.residual.empty();
  return result;
}

/// Straight port of the reference script: drop trivial vertices, seed with
/// Goldbach vertices, saturate successors, compare set difference. Returns
/// the size of the residual set.
inline std::size_t has_eac_reference_residual(std::uint64_t n, const SpfTable& table) {
  detail::require_table(n, table);
  std::vector<std::uint64_t> vertex_to_prime;
  for (std::uint64_t p = 2; p <= n - 2; ++p) {
    if (!table.is_prime(p)) continue;
    const auto fcs = factorize(n - p, table);
    const bool single_base = fcs.factors.size() == 1;
    const bool many_factors = single_base && fcs.factors[0].exponent > 1;
    if (many_factors && fcs.factors[0].base == p) continue;
    vertex_to_prime.push_back(p);
  }
  std::vector<std::size_t> prime_to_vertex(n, 0);
  std::set<std::size_t> gac_vertices;
  for (std::size_t v = 0; v < vertex_to_prime.size(); ++v) {
    const std::uint64_t p = vertex_to_prime[v];
    prime_to_vertex[p] = v;
    if (table.is_prime(n - p)) gac_vertices.insert(v);
  }
  std::vector<std::vector<std::size_t>> successors(vertex_to_prime.size());
  for (std::size_t v = 0; v < vertex_to_prime.size(); ++v) {
    for (const auto& f : factorize(n - vertex_to_prime[v], table).factors) {
      successors[prime_to_vertex[f.base]].push_back(v);
    }
  }
  std::set<std::size_t> gac_and_successors = gac_vertices;
  std::set<std::size_t> not_visited = gac_vertices;
  while (!not_visited.empty()) {
    std::set<std::size_t> next = not_visited;
    for (std::size_t v : not_visited) next.insert(successors[v].begin(), successors[v].end());
    not_visited.clear();
    for (std::size_t v : next) {
      if (!gac_and_successors.count(v)) not_visited.insert(v);
    }
    gac_and_successors.insert(not_visited.begin(), not_visited.end());
  }
  return vertex_to_prime.size() - gac_and_successors.size();
}

inline bool has_eac_reference(std::uint64_t n, const SpfTable& table) {
  return has_eac_reference_residual(n, table) > 0;
}

/// Scratch state for the scanner's EAC test. One per worker thread; sized
/// once for the largest n the table supports and reused for every n.
class EacScanner {
 public:
  EacScanner(const SpfTable& table, const std::vector<std::uint32_t>& primes)
      : table_(&table),
        primes_(&primes),
        stamp_(table.limit() + 2, 0),
        pending_(primes.size() + 1, 0) {
    // The smallest prime factor of a composite x <= limit is at most
    // sqrt(limit), so exact division needs inverses only that far.
    const auto root = static_cast<std::uint32_t>(std::sqrt(static_cast<double>(table.limit()))) + 2;
    inverse_.assign(root + 1, 0);
    for (std::uint32_t b = 3; b <= root; b += 2) {
      std::uint32_t inv = b;  // Newton iteration: correct to 3, 6, 12, 24, 48 bits
      for (int i = 0; i < 4; ++i) inv *= 2 - b * inv;
      inverse_[b] = inv;
    }
  }

  /// Residual size for F_n: the number of non-trivial vertices unreachable
  /// from any Goldbach vertex. Computed as a least fixed point: a vertex is
  /// reached when n - v is prime or some prime factor of n - v is reached.
  /// After the Goldbach vertices are stamped, one ascending sweep settles
  /// nearly every vertex; the leftovers are re-swept until nothing changes.
  std::size_t residual_size(std::uint32_t n) {
    next_epoch();
    const auto& primes = *primes_;
    const auto count = static_cast<std::size_t>(
        std::upper_bound(primes.begin(), primes.end(), n - 2) - primes.begin());
    std::size_t kept = 0;
    // Branch-free: whether n - v is prime is close to a coin flip.
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint32_t v = primes[i];
      const std::uint32_t x = n - v;
      const bool gamma = table_->spf_unchecked(x) == x;
      stamp_[v] = gamma ? epoch_ : stamp_[v];
      pending_[kept] = v;
      kept += !gamma;
    }
    bool changed = true;
    while (changed && kept > 0) {
      changed = false;
      std::size_t keep = 0;
      for (std::size_t i = 0; i < kept; ++i) {
        const std::uint32_t v = pending_[i];
        if (reached_by_factor(n - v)) {
          stamp_[v] = epoch_;
          changed = true;
        } else {
          pending_[keep++] = v;
        }
      }
      kept = keep;
    }
    // Whatever is left but trivial (n - v = v^e) never counts.
    std::size_t residual = 0;
    for (std::size_t i = 0; i < kept; ++i) {
      residual += !detail::is_trivial_vertex(n, pending_[i]);
    }
    return residual;
  }

 private:
  bool reached_by_factor(std::uint32_t x) const {
    for (;;) {
      const std::uint32_t b = table_->spf_unchecked(x);
      if (stamp_[b] == epoch_) return true;
      if (b == x) return false;
      x = b == 2 ? x >> 1 : x * inverse_[b];  // exact: b | x
    }
  }

  void next_epoch() {
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
  }

  const SpfTable* table_;
  const std::vector<std::uint32_t>* primes_;
  std::vector<std::uint16_t> stamp_;
  std::uint16_t epoch_ = 0;
  std::vector<std::uint32_t> pending_;
  std::vector<std::uint32_t> inverse_;
};

// ---------------------------------------------------------------------------
// Range scanner

struct ScanHit {
  std::uint64_t n = 0;
  std::size_t eac_vertex_count = 0;
  double wall_time_ms = 0;
};

struct ScanCheckpoint {
  std::uint64_t range_lo = 0;
  std::uint64_t range_hi = 0;
  std::uint64_t block_size = 0;
  std::uint64_t next_block = 0;  // first n not yet covered; range_hi + 2 when done
  std::vector<std::uint64_t> hits;
  double elapsed_s = 0;
  std::uint64_t config_digest = 0;

  bool complete() const { return next_block > range_hi; }
};

struct ScanOptions {
  unsigned workers = 1;
  std::uint64_t block_size = 10000;
  std::string checkpoint_path;  // empty: no checkpoint file
  std::uint64_t memory_budget = kDefaultSpfBudgetBytes;
  // Blocks starting at or beyond this n are not started (simulated interrupt).
  std::optional<std::uint64_t> stop_before;
};

struct ScanResult {
  std::vector<ScanHit> hits;
  ScanCheckpoint checkpoint;
};

/// FNV-1a over the parameters that determine the hit set.
inline std::uint64_t scan_config_digest(std::uint64_t lo, std::uint64_t hi,
                                        std::uint64_t block_size) {
  std::uint64_t h = 1469598103934665603ull;
  const std::string text = "gfg-scan/1 lo=" + std::to_string(lo) + " hi=" + std::to_string(hi) +
                           " block=" + std::to_string(block_size);
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string format_checkpoint(const ScanCheckpoint& cp) {
  std::ostringstream os;
  os << "range_lo=" << cp.range_lo << '\n'
     << "range_hi=" << cp.range_hi << '\n'
     << "block_size=" << cp.block_size << '\n'
     << "next_block=" << cp.next_block << '\n'
     << "hits=";
  for (std::size_t i = 0; i < cp.hits.size(); ++i) os << (i ? "," : "") << cp.hits[i];
  os << '\n' << "elapsed_s=" << cp.elapsed_s << '\n' << "config_digest=" << cp.config_digest << '\n';
  return os.str();
}

inline ScanCheckpoint parse_checkpoint(const std::string& text) {
  ScanCheckpoint cp;
  std::istringstream in(text);
  std::string line;
  unsigned seen = 0;
  auto parse_u64 = [](const std::string& key, const std::string& value) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      return static_cast<std::uint64_t>(v);
    } catch (const std::exception&) {
      throw ConfigError("checkpoint field " + key + " is not an integer: '" + value + "'");
    }
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("malformed checkpoint line: " + line);
    const std::string key = line.substr(0, eq), value = line.substr(eq + 1);
    if (key == "range_lo") {
      cp.range_lo = parse_u64(key, value), seen |= 1;
    } else if (key == "range_hi") {
      cp.range_hi = parse_u64(key, value), seen |= 2;
    } else if (key == "block_size") {
      cp.block_size = parse_u64(key, value), seen |= 4;
    } else if (key == "next_block") {
      cp.next_block = parse_u64(key, value), seen |= 8;
    } else if (key == "hits") {
      std::istringstream items(value);
      std::string item;
      while (std::getline(items, item, ',')) {
        if (!item.empty()) cp.hits.push_back(parse_u64(key, item));
      }
      seen |= 16;
    } else if (key == "elapsed_s") {
      cp.elapsed_s = std::stod(value), seen |= 32;
    } else if (key == "config_digest") {
      cp.config_digest = parse_u64(key, value), seen |= 64;
    } else {
      throw ConfigError("unknown checkpoint key: " + key);
    }
  }
  if (seen != 127) throw ConfigError("checkpoint is missing required keys");
  return cp;
}

/// Writes via a sibling temporary file and rename, so readers never see a
/// partial record.
inline void write_checkpoint(const std::string& path, const ScanCheckpoint& cp) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw IoError("cannot write checkpoint file " + tmp);
    out << format_checkpoint(cp);
    out.flush();
    if (!out) throw IoError("failed writing checkpoint file " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move checkpoint into place at " + path + ": " + ec.message());
}

inline ScanCheckpoint read_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read checkpoint file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_checkpoint(buf.str());
}

/// Size of the EAC in F_n for a hit (classification by SCCs).
inline std::size_t eac_vertex_count(std::uint64_t n, const SpfTable& table) {
  const auto g = build_gfg(n, table);
  const auto d = strongly_connected_components(g);
  return eac_vertices(g, d, classify_components(g, d)).size();
}

namespace detail {

inline std::uint64_t scan_memory_bytes(std::uint64_t hi, unsigned workers) {
  // SPF table, the shared prime list, and one stamp array per worker.
  const std::uint64_t limit = hi > 2 ? hi - 2 : 2;
  return SpfTable::bytes_required(limit) + 8 * (limit / 2 + 2) +
         std::uint64_t{workers} * sizeof(std::uint16_t) * (limit + 2);
}

inline ScanResult run_scan(ScanCheckpoint cp, const ScanOptions& opts) {
  const auto started = std::chrono::steady_clock::now();
  const std::uint64_t budget_need = scan_memory_bytes(cp.range_hi, opts.workers);
  if (budget_need > opts.memory_budget) {
    throw ResourceError("scan to " + std::to_string(cp.range_hi) + " with " +
                        std::to_string(opts.workers) + " workers needs " +
                        std::to_string(budget_need) + " bytes, over the memory budget of " +
                        std::to_string(opts.memory_budget) + " bytes");
  }
  if (!opts.checkpoint_path.empty()) write_checkpoint(opts.checkpoint_path, cp);

  const std::uint64_t limit = std::max<std::uint64_t>(cp.range_hi - 2, 2);
  const SpfTable table(limit, opts.memory_budget);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t p : sieve_primes(limit)) primes.push_back(static_cast<std::uint32_t>(p));

  std::vector<std::uint64_t> block_starts;
  for (std::uint64_t b = cp.next_block; b <= cp.range_hi; b += cp.block_size) {
    if (opts.stop_before && b >= *opts.stop_before) break;
    block_starts.push_back(b);
  }

  std::mutex mu;
  std::condition_variable done_cv;
  std::vector<char> done(block_starts.size(), 0);
  std::vector<std::vector<std::uint64_t>> block_hits(block_starts.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;

  auto worker = [&] {
    try {
      EacScanner scanner(table, primes);
      for (;;) {
        const std::size_t k = next.fetch_add(1);
        if (k >= block_starts.size()) return;
        const std::uint64_t first = block_starts[k];
        const std::uint64_t last = std::min(first + cp.block_size - 2, cp.range_hi);
        std::vector<std::uint64_t> found;
        for (std::uint64_t n = first; n <= last; n += 2) {
          if (scanner.residual_size(static_cast<std::uint32_t>(n)) > 0) found.push_back(n);
        }
        std::lock_guard lock(mu);
        block_hits[k] = std::move(found);
        done[k] = 1;
        done_cv.notify_all();
      }
    } catch (...) {
      std::lock_guard lock(mu);
      if (!failure) failure = std::current_exception();
      next.store(block_starts.size());
      done_cv.notify_all();
    }
  };

  const unsigned nworkers = std::max(1u, opts.workers);
  std::vector<std::thread> threads;
  for (unsigned i = 0; i < nworkers; ++i) threads.emplace_back(worker);

  // Coordinator: advance the completed prefix and checkpoint it.
  const double prior_elapsed = cp.elapsed_s;
  auto elapsed_now = [&] {
    return prior_elapsed +
           std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  };
  std::size_t prefix = 0;
  {
    std::unique_lock lock(mu);
    while (prefix < block_starts.size() && !failure) {
      done_cv.wait(lock, [&] { return done[prefix] || failure; });
      if (failure) break;
      while (prefix < block_starts.size() && done[prefix]) {
        cp.hits.insert(cp.hits.end(), block_hits[prefix].begin(), block_hits[prefix].end());
        ++prefix;
      }
      cp.next_block = prefix < block_starts.size()
                          ? block_starts[prefix]
                          : std::min(block_starts.back() + cp.block_size, cp.range_hi + 2);
      cp.elapsed_s = elapsed_now();
      if (!opts.checkpoint_path.empty()) {
        lock.unlock();
        write_checkpoint(opts.checkpoint_path, cp);
        lock.lock();
      }
    }
  }
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);

  cp.elapsed_s = elapsed_now();
  if (!opts.checkpoint_path.empty()) write_checkpoint(opts.checkpoint_path, cp);

  ScanResult result;
  for (std::uint64_t n : cp.hits) {
    const auto t0 = std::chrono::steady_clock::now();
    EacScanner scanner(table, primes);
    (void)scanner.residual_size(static_cast<std::uint32_t>(n));
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    result.hits.push_back({n, eac_vertex_count(n, table), ms});
  }
  result.checkpoint = std::move(cp);
  return result;
}

}  // namespace detail

/// Scans every even n in [lo, hi] for EACs. Blocks of `block_size`
/// consecutive integers are handed to workers through a shared counter;
/// the result does not depend on the worker count.
inline ScanResult scan_range(std::uint64_t lo, std::uint64_t hi, const ScanOptions& opts = {}) {
  if (lo % 2 != 0 || hi % 2 != 0) throw DomainError("scan bounds must be even");
  if (lo < 4) throw DomainError("scan lower bound must be at least 4");
  if (lo > hi) {
    throw DomainError("scan lower bound " + std::to_string(lo) + " exceeds upper bound " +
                      std::to_string(hi));
  }
  if (opts.block_size == 0 || opts.block_size % 2 != 0) {
    throw DomainError("block size must be a positive even integer");
  }
  ScanCheckpoint cp;
  cp.range_lo = lo;
  cp.range_hi = hi;
  cp.block_size = opts.block_size;
  cp.next_block = lo;
  cp.config_digest = scan_config_digest(lo, hi, opts.block_size);
  return detail::run_scan(std::move(cp), opts);
}

/// Continues a checkpointed scan. `block_size`, when given, must match the
/// original configuration.
inline ScanResult resume_scan(const std::string& checkpoint_path, unsigned workers,
                              std::optional<std::uint64_t> block_size = std::nullopt,
                              std::optional<std::uint64_t> stop_before = std::nullopt) {
  ScanCheckpoint cp = read_checkpoint(checkpoint_path);
  const std::uint64_t stored = scan_config_digest(cp.range_lo, cp.range_hi, cp.block_size);
  if (stored != cp.config_digest) {
    throw ConfigError("checkpoint digest " + std::to_string(cp.config_digest) +
                      " does not match its recorded configuration");
  }
  const std::uint64_t requested =
      scan_config_digest(cp.range_lo, cp.range_hi, block_size.value_or(cp.block_size));
  if (requested != cp.config_digest) {
    throw ConfigError("scan configuration differs from checkpoint (digest " +
                      std::to_string(requested) + " vs " + std::to_string(cp.config_digest) + ")");
  }
  for (std::uint64_t h : cp.hits) {
    if (h % 2 != 0 || h < cp.range_lo || h >= cp.next_block) {
      throw ConfigError("checkpoint hit " + std::to_string(h) + " lies outside the scanned prefix");
    }
  }
  ScanOptions opts;
  opts.workers = workers;
  opts.block_size = cp.block_size;
  opts.checkpoint_path = checkpoint_path;
  opts.stop_before = stop_before;
  return detail::run_scan(std::move(cp), opts);
}

/// One JSON object per line: {"n":..,"eac_vertex_count":..,"wall_time_ms":..}.
inline std::string format_hits_jsonl(const std::vector<ScanHit>& hits) {
  std::ostringstream os;
  for (const auto& h : hits) {
    os << "{\"n\":" << h.n << ",\"eac_vertex_count\":" << h.eac_vertex_count
       << ",\"wall_time_ms\":" << h.wall_time_ms << "}\n";
  }
  return os.str();
}

}  // namespace gfg
