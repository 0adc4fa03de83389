#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gfg/errors.hpp"

namespace gfg {

/// Default ceiling on the memory a smallest-prime-factor table may claim.
inline constexpr std::uint64_t kDefaultSpfBudgetBytes = std::uint64_t{2} << 30;

/// Ascending list of primes in [2, limit]. Empty for limit < 2.
inline std::vector<std::uint64_t> sieve_primes(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i * i <= limit; ++i) {
    if (composite[i]) continue;
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (!composite[i]) primes.push_back(i);
  }
  return primes;
}

struct PrimePower {
  std::uint64_t base = 0;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization with strictly ascending bases.
struct Factorization {
  std::vector<PrimePower> factors;

  std::uint64_t value() const {
    std::uint64_t v = 1;
    for (const auto& f : factors) {
      for (unsigned i = 0; i < f.exponent; ++i) v *= f.base;
    }
    return v;
  }
  std::size_t distinct() const { return factors.size(); }

  friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// Smallest-prime-factor table for every integer in [2, limit].
///
/// Entries are 32-bit, so one table costs 4 * (limit + 1) bytes and limits up
/// to 2^32 - 1 are representable. Immutable once built; concurrent reads are
/// safe.
class SpfTable {
 public:
  static constexpr std::uint64_t kBytesPerEntry = sizeof(std::uint32_t);
  static constexpr std::uint64_t kMaxLimit = 0xFFFFFFFFull - 1;

  static std::uint64_t bytes_required(std::uint64_t limit) {
    return kBytesPerEntry * (limit + 1);
  }

  explicit SpfTable(std::uint64_t limit,
                    std::uint64_t budget_bytes = kDefaultSpfBudgetBytes)
      : limit_(limit) {
    if (limit < 2) throw DomainError("SPF table limit must be at least 2");
    if (limit > kMaxLimit) {
      throw ResourceError("SPF table limit " + std::to_string(limit) +
                          " exceeds the 32-bit entry range");
    }
    if (bytes_required(limit) > budget_bytes) {
      throw ResourceError("SPF table for limit " + std::to_string(limit) +
                          " needs " + std::to_string(bytes_required(limit)) +
                          " bytes, over the memory budget of " +
                          std::to_string(budget_bytes) + " bytes");
    }
    spf_.assign(limit + 1, 0);
    for (std::uint64_t i = 2; i * i <= limit; ++i) {
      if (spf_[i] != 0) continue;
      for (std::uint64_t j = i * i; j <= limit; j += i) {
        if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
      }
    }
    for (std::uint64_t i = 2; i <= limit; ++i) {
      if (spf_[i] == 0) spf_[i] = static_cast<std::uint32_t>(i);
    }
  }

  std::uint64_t limit() const { return limit_; }

  std::uint64_t spf(std::uint64_t x) const {
    check(x);
    return spf_[x];
  }

  bool is_prime(std::uint64_t x) const {
    check(x);
    return spf_[x] == x;
  }

  // Unchecked access for hot loops; caller guarantees 2 <= x <= limit.
  std::uint32_t spf_unchecked(std::uint64_t x) const { return spf_[x]; }

 private:
  void check(std::uint64_t x) const {
    if (x < 2 || x > limit_) {
      throw RangeError(std::to_string(x) + " is outside the SPF table range [2, " +
                       std::to_string(limit_) + "]");
    }
  }

  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
};

inline SpfTable build_spf_table(std::uint64_t limit,
                                std::uint64_t budget_bytes = kDefaultSpfBudgetBytes) {
  return SpfTable(limit, budget_bytes);
}

inline Factorization factorize(std::uint64_t x, const SpfTable& table) {
  Factorization result;
  (void)table.spf(x);  // range check
  while (x > 1) {
    const std::uint64_t p = table.spf_unchecked(x);
    unsigned e = 0;
    while (x % p == 0) {
      x /= p;
      ++e;
    }
    result.factors.push_back({p, e});
  }
  return result;
}

/// The exponent e with x == p^e, if x is an exact power of p.
inline std::optional<unsigned> prime_power_exponent(std::uint64_t x, std::uint64_t p) {
  if (x < 2 || p < 2) return std::nullopt;
  unsigned e = 0;
  while (x % p == 0) {
    x /= p;
    ++e;
  }
  if (x != 1) return std::nullopt;
  return e;
}

}  // namespace gfg
