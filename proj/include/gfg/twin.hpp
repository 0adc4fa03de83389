#pragma once

// Two-vertex EACs {a, b}: solutions of a^x + b = b^y + a with odd primes
// a != b and exponents x != y, both > 1. Such a solution makes {a, b} an
// EAC of F_n for n = a^x + b.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gfg/components.hpp"
#include "gfg/errors.hpp"
#include "gfg/graph.hpp"
#include "gfg/primes.hpp"

namespace gfg {

namespace detail {

inline std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(r, base, &r)) return std::nullopt;
  }
  return r;
}

inline bool is_prime_trial(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t d = 2; d * d <= x; ++d) {
    if (x % d == 0) return false;
  }
  return true;
}

}  // namespace detail

class TwinSolution {
 public:
  // Throws DomainError unless (a, b, x, y) satisfies every condition.
  TwinSolution(std::uint64_t a, std::uint64_t b, unsigned x, unsigned y) : a_(a), b_(b), x_(x), y_(y) {
    auto fail = [&](const std::string& why) {
      throw DomainError("(" + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(x) +
                        ", " + std::to_string(y) + ") is not a twin solution: " + why);
    };
    if (a <= 2 || b <= 2) fail("a and b must be odd primes");
    if (a == b) fail("a and b must differ");
    if (!detail::is_prime_trial(a) || !detail::is_prime_trial(b)) fail("a and b must be prime");
    if (x < 2 || y < 2) fail("exponents must exceed 1");
    if (x == y) fail("exponents must differ");
    const auto ax = detail::checked_pow(a, x), by = detail::checked_pow(b, y);
    std::uint64_t lhs = 0, rhs = 0;
    if (!ax || !by || __builtin_add_overflow(*ax, b, &lhs) || __builtin_add_overflow(*by, a, &rhs)) {
      fail("overflows 64 bits");
    }
    if (lhs != rhs) fail("a^x + b != b^y + a");
    n_ = lhs;
  }

  std::uint64_t a() const { return a_; }
  std::uint64_t b() const { return b_; }
  unsigned x() const { return x_; }
  unsigned y() const { return y_; }
  std::uint64_t n() const { return n_; }

  // With a and b (and x and y) exchanged; the same pair.
  TwinSolution swapped() const { return TwinSolution(b_, a_, y_, x_); }

  friend bool operator==(const TwinSolution&, const TwinSolution&) = default;

 private:
  std::uint64_t a_, b_;
  unsigned x_, y_;
  std::uint64_t n_ = 0;
};

struct TwinCheck {
  std::optional<TwinSolution> solution;
  // Some power overflowed 64 bits before passing max_n, so an absent
  // solution is only ruled out below the overflow point.
  bool truncated = false;
};

/// Smallest n <= max_n with a^x + b = b^y + a, by merging the increasing
/// sequences a^x + b and b^y + a (x, y >= 2).
inline TwinCheck twin_check(std::uint64_t a, std::uint64_t b, std::uint64_t max_n) {
  if (a == b) throw DomainError("twin_check needs a != b");
  TwinCheck r;
  if (a <= 2 || b <= 2) return r;
  auto term = [&](std::uint64_t base, unsigned e, std::uint64_t add) -> std::optional<std::uint64_t> {
    const auto p = detail::checked_pow(base, e);
    std::uint64_t v = 0;
    if (!p || __builtin_add_overflow(*p, add, &v)) return std::nullopt;
    return v;
  };
  unsigned x = 2, y = 2;
  auto lhs = term(a, x, b), rhs = term(b, y, a);
  while (true) {
    if (!lhs || !rhs) {
      // The overflowed side is past 2^64 > max_n unless max_n is huge.
      const bool other_past = (!lhs && rhs && *rhs > max_n) || (!rhs && lhs && *lhs > max_n);
      r.truncated = !other_past;
      return r;
    }
    if (*lhs > max_n || *rhs > max_n) return r;
    if (*lhs == *rhs) {
      if (x != y) {
        r.solution = TwinSolution(a, b, x, y);
        return r;
      }
      lhs = term(a, ++x, b);
    } else if (*lhs < *rhs) {
      lhs = term(a, ++x, b);
    } else {
      rhs = term(b, ++y, a);
    }
  }
}

struct TwinSearch {
  std::vector<TwinSolution> solutions;  // a > b, ordered by (n, a)
  std::size_t truncated_pairs = 0;
};

/// Every solution with a, b <= prime_limit and n <= max_n, one per
/// unordered pair, reported with a > b.
inline TwinSearch twin_search(std::uint64_t prime_limit, std::uint64_t max_n) {
  TwinSearch r;
  if (prime_limit < 3) return r;
  const auto primes = sieve_primes(prime_limit);
  for (std::size_t i = 1; i < primes.size(); ++i) {
    for (std::size_t j = 1; j < i; ++j) {
      const auto c = twin_check(primes[i], primes[j], max_n);
      if (c.truncated) ++r.truncated_pairs;
      if (c.solution) r.solutions.push_back(*c.solution);
    }
  }
  std::sort(r.solutions.begin(), r.solutions.end(), [](const TwinSolution& s, const TwinSolution& t) {
    return s.n() != t.n() ? s.n() < t.n() : s.a() < t.a();
  });
  return r;
}

/// Builds F_n and checks that {a, b} is an EAC with exactly two vertices.
inline bool verify_twin_is_eac(const TwinSolution& s, const SpfTable& table) {
  const auto g = build_gfg(s.n(), table);
  const auto d = strongly_connected_components(g);
  const auto classes = classify_components(g, d);
  const auto va = g.index_of(s.a()), vb = g.index_of(s.b());
  if (!va || !vb) return false;
  const SccId c = d.scc_of[*va];
  return d.scc_of[*vb] == c && d.members[c].size() == 2 && classes[c].kind == ComponentKind::Eac;
}

}  // namespace gfg
