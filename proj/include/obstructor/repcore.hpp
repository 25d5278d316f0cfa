#pragma once

// Characters of (Z/2)^k, direct sums of the associated one-dimensional
// representations, and sphere-product dimension vectors.
//
// Factor indices are 0-based throughout the C++ API: coordinate j of a
// Character is the pairing <alpha, e_{j+1}> in the usual 1-based notation.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "obstructor/errors.hpp"

namespace obstructor {

/// Largest supported group rank. Characters are packed into 16-bit masks.
inline constexpr std::size_t kMaxRank = 16;

void check_rank(std::size_t rank);

/// An element alpha of (Z/2)^k.
///
/// Stored as a bit mask in which coordinate 0 occupies the most significant
/// of the `rank` low bits. With this layout, integer order on masks of equal
/// rank coincides with lexicographic order on the rendered bit strings.
class Character {
 public:
  Character() = default;

  static Character zero(std::size_t rank);
  /// The generator e_j, i.e. the character that pairs to 1 with factor j only.
  static Character unit(std::size_t rank, std::size_t j);
  static Character from_mask(std::size_t rank, std::uint32_t mask);

  std::size_t rank() const noexcept { return rank_; }
  std::uint16_t mask() const noexcept { return mask_; }
  bool is_zero() const noexcept { return mask_ == 0; }
  /// Hamming weight |alpha|.
  unsigned weight() const noexcept;

  /// <alpha, e_j>. Throws std::out_of_range for j >= rank.
  bool pairing(std::size_t j) const;

  /// Deletes coordinate i (forgets the action of e_i). Throws std::out_of_range.
  Character forget(std::size_t i) const;

  std::string to_string() const;

  friend bool operator==(const Character&, const Character&) = default;
  friend std::strong_ordering operator<=>(const Character& a, const Character& b) {
    if (auto c = a.rank_ <=> b.rank_; c != 0) return c;
    return a.mask_ <=> b.mask_;
  }

 private:
  Character(std::uint8_t rank, std::uint16_t mask) : rank_(rank), mask_(mask) {}

  std::uint8_t rank_ = 0;
  std::uint16_t mask_ = 0;
};

/// Parses a bit string of exactly `rank` symbols; symbol 0 is coordinate 0.
Character parse_character(std::string_view text, std::size_t rank);

/// Parses a comma separated list of characters. Each item may carry a
/// multiplicity suffix, so "110^3,011" expands to four summands. An empty
/// string yields an empty list.
std::vector<Character> parse_character_list(std::string_view text, std::size_t rank);

/// The tuple (n_1, ..., n_k) of sphere dimensions.
class SphereDims {
 public:
  SphereDims() = default;
  explicit SphereDims(std::vector<std::uint32_t> dims);
  SphereDims(std::initializer_list<std::uint32_t> dims);

  std::size_t rank() const noexcept { return dims_.size(); }
  std::uint32_t operator[](std::size_t i) const { return dims_.at(i); }
  const std::vector<std::uint32_t>& values() const noexcept { return dims_; }
  /// Sum of all n_i, the dimension of the sphere product.
  std::uint64_t total() const noexcept;

  SphereDims decremented(std::size_t j) const;
  SphereDims without(std::size_t i) const;

  std::string to_string() const;

  friend bool operator==(const SphereDims&, const SphereDims&) = default;
  friend auto operator<=>(const SphereDims&, const SphereDims&) = default;

 private:
  std::vector<std::uint32_t> dims_;
};

/// Parses "2,1,0". An empty string is the rank-0 tuple.
SphereDims parse_dims(std::string_view text);

/// A direct sum of one-dimensional representations V_alpha, kept in the
/// order the caller supplied.
class Representation {
 public:
  Representation() = default;
  explicit Representation(std::size_t rank);
  Representation(std::size_t rank, std::vector<Character> summands);

  std::size_t rank() const noexcept { return rank_; }
  std::size_t dimension() const noexcept { return summands_.size(); }
  bool empty() const noexcept { return summands_.empty(); }
  const std::vector<Character>& summands() const noexcept { return summands_; }
  const Character& operator[](std::size_t i) const { return summands_.at(i); }

  void add(const Character& alpha, std::size_t copies = 1);
  Representation without(std::size_t position) const;
  Representation forget(std::size_t i) const;
  Representation direct_sum(const Representation& other) const;

  /// True when both hold the same multiset of characters.
  bool same_multiset(const Representation& other) const;

  /// Comma separated bit strings, in stored order.
  std::string to_string() const;
  /// Like to_string, but runs of equal adjacent summands use the "^m" suffix.
  std::string to_compact_string() const;
  std::vector<std::string> to_strings() const;

  friend bool operator==(const Representation&, const Representation&) = default;

 private:
  std::size_t rank_ = 0;
  std::vector<Character> summands_;
};

/// The sum of V_alpha over all alpha of weight 2, ordered lexicographically
/// by the index pair (i, j), i < j. It has k(k-1)/2 summands.
Representation gram_representation(std::size_t k);

/// Memoization key: the dims vector together with the sorted summand masks.
struct CanonicalKey {
  std::uint8_t rank = 0;
  std::vector<std::uint32_t> dims;
  std::vector<std::uint16_t> masks;

  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
};

CanonicalKey canonical_key(const SphereDims& dims, const Representation& rep);

struct CanonicalKeyHash {
  std::size_t operator()(const CanonicalKey& key) const noexcept;
};

}  // namespace obstructor
