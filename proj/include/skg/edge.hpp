#ifndef SKG_EDGE_HPP_
#define SKG_EDGE_HPP_

#include <compare>
#include <cstdint>

namespace skg {

// Undirected edge stored with u < v.
struct Edge {
  std::uint64_t u = 0;
  std::uint64_t v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

}  // namespace skg

#endif  // SKG_EDGE_HPP_
