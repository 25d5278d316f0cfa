#pragma once

// Verification routes that do not go through the memoized engine: Lucas
// parity, the explicit Gram witness map, peel-order cross-checks and the
// closed-form families.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "obstructor/obstruction.hpp"
#include "obstructor/repcore.hpp"

namespace obstructor {

/// Parity of C(a, b) by the disjoint-binary-digits criterion: C(a, b) is odd
/// iff b and a - b share no 1 bit. Returns 0 for b < 0 or b > a.
int binom_parity(std::int64_t a, std::int64_t b);

/// r(n1, n2; V_{e1+e2}^{n1+n2}) in closed form.
int diagonal_r_k2(std::uint64_t n1, std::uint64_t n2);

struct ZeroCount {
  std::uint64_t total = 0;
  std::uint64_t per_fundamental_domain = 0;

  friend bool operator==(const ZeroCount&, const ZeroCount&) = default;
};

/// Zeros of (x_1, ..., x_k) -> (<x_i, x_j>)_{i<j} on S^{k-1} x ... x S^1 x S^0,
/// where S^d is the unit sphere of span(e_1, ..., e_{d+1}). The zero set is
/// enumerated exactly: each factor's admissible vectors are the unit vectors of
/// the orthogonal complement of the vectors already fixed, computed by integer
/// elimination. Throws InvalidArgument for k < 2 and std::logic_error if a
/// complement is ever not a line (the zero set would not be finite).
ZeroCount count_gram_zeros(std::size_t k);

struct PolicyOutcome {
  std::string policy;
  int parity = 0;
};

struct CrosscheckReport {
  std::vector<PolicyOutcome> outcomes;
  /// Bit p set iff some sequence of peel choices yields parity p. Only
  /// meaningful when exhaustive_complete is true.
  unsigned reachable_parities = 0;
  bool exhaustive_complete = false;
  /// True when the exhaustive enumeration ran out of budget; the report then
  /// covers only the named policies.
  bool partial = false;
  bool agree = false;
  int parity = 0;
};

/// Evaluates the instance under several peel policies (first, last, min-weight,
/// randomized, memoized canonical) and, within `budget` state expansions, under
/// every possible sequence of peel choices.
CrosscheckReport crosscheck_peel_orders(const SphereDims& dims, const Representation& rep,
                                        std::uint64_t budget = 1'000'000);

// Families with a closed-form or theorem-backed parity.
struct ClassicalBu {
  SphereDims dims;
};
struct ReductionFamily {
  std::size_t k = 0;
};
struct ManiFamily {
  std::uint32_t t = 0;
};
struct DiagonalK2 {
  std::uint32_t n1 = 0;
  std::uint32_t n2 = 0;
};

using FamilyQuery = std::variant<ClassicalBu, ReductionFamily, ManiFamily, DiagonalK2>;

std::string family_name(const FamilyQuery& query);
/// Human readable parameter list, e.g. "n1=2,n2=1".
std::string family_params(const FamilyQuery& query);

/// The parity the family is known to have.
int family_value(const FamilyQuery& query);

/// The (dims, representation) instance the family describes, for evaluation
/// by the engine.
std::pair<SphereDims, Representation> family_instance(const FamilyQuery& query);

/// Throws InvalidArgument for names other than classical_bu, reduction, mani
/// and diagonal_k2.
void check_family_name(std::string_view name);

}  // namespace obstructor
