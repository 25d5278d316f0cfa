#pragma once

// The parity obstruction r(n_1, ..., n_k; V) and the machinery to evaluate it:
// zero-factor reduction, single peel steps, derivation certificates and a
// concurrent memo table with an optional on-disk cache.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "obstructor/repcore.hpp"

namespace obstructor {

enum class Rule { kBase, kReduceZeroFactor, kPeel, kFastpathEq2 };

std::string to_string(Rule rule);

/// One step of a derivation. The parity of a PEEL or FASTPATH node is the XOR
/// of its children; a REDUCE node carries its only child's parity.
struct DerivationNode {
  SphereDims dims;
  Representation rep;
  Rule rule = Rule::kBase;
  /// Position of the peeled summand inside `rep` (PEEL and FASTPATH only).
  std::optional<std::size_t> peeled;
  /// For PEEL/FASTPATH, the factor decremented to reach each child.
  std::vector<std::size_t> branch_factors;
  std::vector<DerivationNode> children;
  int parity = 0;

  std::size_t size() const;
};

struct ObstructionResult {
  int parity = 0;
  std::optional<DerivationNode> certificate;
};

/// A subproblem produced by peeling: the factor j that was decremented and the
/// resulting instance. The weight bit <alpha, e_j> is 1 by construction.
struct Subproblem {
  std::size_t factor = 0;
  SphereDims dims;
  Representation rep;
};

/// Throws DimensionMismatch unless rep.rank() == dims.rank() and the number of
/// summands equals dims.total().
void check_balance(const SphereDims& dims, const Representation& rep);

/// Deletes every factor with n_i = 0, forgetting that coordinate in every
/// summand. The result has all dims >= 1 or rank 0.
std::pair<SphereDims, Representation> reduce_zero_factors(const SphereDims& dims, const Representation& rep);

/// One application of the recursion: remove summand `index` and branch over
/// each factor j with <alpha_index, e_j> = 1. Requires all dims >= 1; a
/// violation is an engine bug and throws std::logic_error.
std::vector<Subproblem> peel(const SphereDims& dims, const Representation& rep, std::size_t index);

/// Position of a summand of minimal weight, lowest position on ties.
/// Throws InvalidArgument on an empty representation.
std::size_t choose_peel(const Representation& rep);

enum class PeelPolicy { kMinWeight, kFirst, kLast, kRandom };

std::string to_string(PeelPolicy policy);

/// Concurrent map from canonical problem keys to parities.
class MemoTable {
 public:
  std::optional<int> find(const CanonicalKey& key) const;
  void insert(const CanonicalKey& key, int parity);
  std::size_t size() const;
  void clear();

  /// All entries in ascending key order.
  std::vector<std::pair<CanonicalKey, int>> entries() const;

  /// Writes the "obstructor-cache v1" text format.
  void save(std::ostream& out) const;
  /// Reads the cache format, validating every record first. On any malformed
  /// record a ParseError is thrown and the table is left unchanged.
  void load(std::istream& in);

  void save_file(const std::string& path) const;
  void load_file(const std::string& path);

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<CanonicalKey, std::uint8_t, CanonicalKeyHash> table_;
};

inline constexpr const char* kCacheHeader = "obstructor-cache v1";

/// Formats one cache record "k;n1,...,nk;alpha1,...,alphaN;parity".
std::string format_cache_record(const CanonicalKey& key, int parity);
/// Parses and validates one cache record.
std::pair<CanonicalKey, int> parse_cache_record(const std::string& line);

struct EngineOptions {
  PeelPolicy policy = PeelPolicy::kMinWeight;
  bool memoize = true;
  std::uint64_t seed = 0;
};

/// Evaluates r(dims; rep).
///
/// With memoization on (the default) the engine works on sorted canonical
/// states and caches every reduced subproblem; the peel policy then refers to
/// positions in canonical order. With memoization off it evaluates on the
/// caller's summand order with no caching, which is what the peel-order
/// cross-checks use. Certificates always come from the ordered evaluator.
///
/// compute() may be called from several threads at once; the memo table is
/// the only shared state. The random policy draws from a per-call generator
/// seeded from the options, so results do not depend on scheduling.
class ObstructionEngine {
 public:
  explicit ObstructionEngine(EngineOptions options = {});

  ObstructionResult compute(const SphereDims& dims, const Representation& rep, bool want_certificate = false);
  int parity(const SphereDims& dims, const Representation& rep) { return compute(dims, rep).parity; }

  const EngineOptions& options() const noexcept { return options_; }
  MemoTable& memo() noexcept { return memo_; }
  const MemoTable& memo() const noexcept { return memo_; }

 private:
  EngineOptions options_;
  MemoTable memo_;
};

/// Process-wide memoized engine used by the free functions below.
ObstructionEngine& default_engine();

ObstructionResult compute_r(const SphereDims& dims, const Representation& rep, bool want_certificate = false);

/// Recomputes every node's parity from its children and checks each rule's
/// structural contract. Returns an empty string when the tree is valid,
/// otherwise a description of the first defect found.
std::string verify_certificate(const DerivationNode& root);

}  // namespace obstructor
