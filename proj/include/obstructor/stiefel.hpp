#pragma once

// Borsuk-Ulam checks for maps out of Stiefel manifolds V_{n,k} and out of the
// orthogonality variety inside a filtered product of spheres.

#include <cstdint>
#include <string>

#include "obstructor/repcore.hpp"

namespace obstructor {

enum class Conclusion { kZeroGuaranteed, kInconclusive };
enum class TheoremBacking { kThmMain2, kCorMain, kGeneralizedUnproven };

std::string to_string(Conclusion c);
std::string to_string(TheoremBacking b);

struct StiefelVerdict {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  /// Dimension of the codomain representation.
  std::uint64_t m = 0;
  int condition_parity = 0;
  Conclusion conclusion = Conclusion::kInconclusive;
  TheoremBacking theorem_backing = TheoremBacking::kThmMain2;
};

/// k(n-1) - k(k-1)/2, the dimension of V_{n,k}.
std::uint64_t stiefel_dimension(std::uint32_t n, std::uint32_t k);

/// e_1^{n-1} + e_2^{n-2} + ... + e_k^{n-k}. Requires 1 <= k <= n.
Representation theorem_main_target(std::uint32_t n, std::uint32_t k);

/// (e_1 + ... + e_k)^{n-k}, listed block by block. Requires 1 <= k <= n.
Representation fadell_husseini_target(std::uint32_t n, std::uint32_t k);

/// Evaluates r(n-1, ..., n-1; rep + gram(k)). Parity 1 rules out an
/// equivariant map V_{n,k} -> S(rep). Throws DimensionMismatch (expected m)
/// when rep does not have dimension k(n-1) - C(k,2).
StiefelVerdict theorem_main2_check(std::uint32_t n, std::uint32_t k, const Representation& rep);

/// Evaluates r(m_vec; rep + gram(k)) for the orthogonality variety of the
/// filtered sphere product with dimensions m_vec. The verdict is tagged
/// COR_MAIN for m_vec = (n-k, ..., n-1) with the Fadell-Husseini target,
/// THM_MAIN2 for constant m_vec, and GENERALIZED_UNPROVEN otherwise.
///
/// Requires the variety to be nonempty: the i-th smallest entry of m_vec is at
/// least i-1 (0-based: at least i). Throws InvalidArgument on that and
/// DimensionMismatch on dimension balance.
StiefelVerdict variety_check(const SphereDims& m_vec, const Representation& rep);

}  // namespace obstructor
