#include "skg/combinatorics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "skg/errors.hpp"

namespace skg {

std::string ToString(UInt128 x) {
  if (x == 0) return "0";
  std::string s;
  while (x > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(x % 10)));
    x /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

double ToDouble(UInt128 x) { return static_cast<double>(x); }

std::optional<UInt128> CheckedMul(UInt128 a, UInt128 b) {
  UInt128 out;
  if (__builtin_mul_overflow(a, b, &out)) return std::nullopt;
  return out;
}

std::optional<UInt128> CheckedAdd(UInt128 a, UInt128 b) {
  UInt128 out;
  if (__builtin_add_overflow(a, b, &out)) return std::nullopt;
  return out;
}

UInt128 Binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  UInt128 out = 1;
  for (int i = 1; i <= r; ++i) {
    // out * (n - r + i) / i is exact at every step; divide by the gcd first so
    // the intermediate product stays within range when the result does.
    UInt128 num = static_cast<UInt128>(n - r + i);
    UInt128 den = static_cast<UInt128>(i);
    const auto g1 = std::gcd(static_cast<std::uint64_t>(num), static_cast<std::uint64_t>(den));
    num /= g1;
    den /= g1;
    // den now divides out
    UInt128 reduced = out / den;
    auto prod = CheckedMul(reduced, num);
    if (!prod) throw OverflowError("binomial coefficient exceeds 128 bits");
    out = *prod;
  }
  return out;
}

UInt128 Multinomial(std::span<const int> counts) {
  UInt128 out = 1;
  int running = 0;
  for (int c : counts) {
    if (c < 0) throw DomainError("negative count in multinomial");
    running += c;
    auto prod = CheckedMul(out, Binomial(running, c));
    if (!prod) throw OverflowError("multinomial coefficient exceeds 128 bits");
    out = *prod;
  }
  return out;
}

BigInt MultinomialBig(std::span<const int> counts) {
  BigInt out = 1;
  int running = 0;
  for (int c : counts) {
    if (c < 0) throw DomainError("negative count in multinomial");
    for (int i = 1; i <= c; ++i) {
      out *= running + i;
      out /= i;
    }
    running += c;
  }
  return out;
}

std::uint64_t CompositionCount(int total, int parts) {
  if (parts <= 0) return total == 0 ? 1 : 0;
  try {
    const UInt128 n = Binomial(total + parts - 1, parts - 1);
    if (n > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(n);
  } catch (const OverflowError&) {
    return std::numeric_limits<std::uint64_t>::max();
  }
}

std::vector<int> FirstComposition(int total, int parts) {
  std::vector<int> counts(parts, 0);
  if (parts > 0) counts.back() = total;
  return counts;
}

bool NextComposition(std::vector<int>& counts) {
  const int parts = static_cast<int>(counts.size());
  if (parts <= 1) return false;
  // Find the rightmost position i < parts-1 that can grow: it needs some mass
  // to its right. Increment it and pile the rest of the suffix at the end.
  int suffix = counts[parts - 1];
  for (int i = parts - 2; i >= 0; --i) {
    if (suffix > 0) {
      counts[i] += 1;
      const int rest = suffix - 1;
      std::fill(counts.begin() + i + 1, counts.end(), 0);
      counts[parts - 1] = rest;
      return true;
    }
    suffix += counts[i];
  }
  return false;
}

}  // namespace skg
