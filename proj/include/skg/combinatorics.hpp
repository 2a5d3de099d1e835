#ifndef SKG_COMBINATORICS_HPP_
#define SKG_COMBINATORICS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace skg {

using UInt128 = unsigned __int128;
using BigInt = boost::multiprecision::cpp_int;

std::string ToString(UInt128 x);
double ToDouble(UInt128 x);

// Overflow-checked 128-bit arithmetic; nullopt on overflow.
std::optional<UInt128> CheckedMul(UInt128 a, UInt128 b);
std::optional<UInt128> CheckedAdd(UInt128 a, UInt128 b);

// Multinomial (sum counts)! / prod counts!. Throws OverflowError if the value
// does not fit in 128 bits.
UInt128 Multinomial(std::span<const int> counts);
// Same quantity without a width limit.
BigInt MultinomialBig(std::span<const int> counts);

// C(n, r) in 128 bits, throwing OverflowError past that.
UInt128 Binomial(int n, int r);

// Number of compositions of `total` into `parts` nonnegative parts,
// C(total + parts - 1, parts - 1), saturating at UINT64_MAX.
std::uint64_t CompositionCount(int total, int parts);

// Steps `counts` to the next composition of the same total in lexicographic
// order. The first composition is (0,...,0,total) and the last (total,0,...,0).
// Returns false after the last one.
bool NextComposition(std::vector<int>& counts);

std::vector<int> FirstComposition(int total, int parts);

}  // namespace skg

#endif  // SKG_COMBINATORICS_HPP_
