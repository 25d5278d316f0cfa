#pragma once

// Exhaustive enumeration of codomain representations for a fixed sphere
// product, reporting those with obstruction parity 1.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "obstructor/obstruction.hpp"
#include "obstructor/repcore.hpp"

namespace obstructor {

class SearchLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchOptions {
  SphereDims dims;
  /// Characters to draw summands from. Empty means every nonzero character.
  std::vector<Character> alphabet;
  /// Keep one multiset per orbit under the coordinate permutations that fix dims.
  bool up_to_symmetry = false;
  unsigned jobs = 1;
  std::uint64_t max_total = 12;
  std::uint64_t max_multisets = 5'000'000;
};

struct SearchResult {
  /// Multisets with parity 1, each sorted, in lexicographic order.
  std::vector<Representation> hits;
  std::uint64_t enumerated = 0;
  std::uint64_t evaluated = 0;
};

/// Number of multisets of size `size` drawn from `kinds` kinds, saturating at
/// UINT64_MAX.
std::uint64_t multiset_count(std::uint64_t kinds, std::uint64_t size);

/// Throws SearchLimitExceeded when dims.total() exceeds max_total or the
/// multiset count exceeds max_multisets. Output does not depend on jobs.
SearchResult search(const SearchOptions& options, ObstructionEngine& engine);

}  // namespace obstructor
