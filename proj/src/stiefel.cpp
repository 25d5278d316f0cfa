#include "obstructor/stiefel.hpp"

#include <algorithm>

#include "obstructor/obstruction.hpp"

namespace obstructor {

std::string to_string(Conclusion c) {
  return c == Conclusion::kZeroGuaranteed ? "ZERO_GUARANTEED" : "INCONCLUSIVE";
}

std::string to_string(TheoremBacking b) {
  switch (b) {
    case TheoremBacking::kThmMain2: return "THM_MAIN2";
    case TheoremBacking::kCorMain: return "COR_MAIN";
    case TheoremBacking::kGeneralizedUnproven: return "GENERALIZED_UNPROVEN";
  }
  return "?";
}

namespace {

void check_nk(std::uint32_t n, std::uint32_t k) {
  if (k < 1 || k > n) {
    throw InvalidArgument("Stiefel parameters require 1 <= k <= n (got n=" + std::to_string(n) +
                          ", k=" + std::to_string(k) + ")");
  }
  check_rank(k);
}

std::uint64_t gram_dimension(std::uint64_t k) { return k * (k - 1) / 2; }

StiefelVerdict finish(StiefelVerdict v) {
  v.conclusion = v.condition_parity == 1 ? Conclusion::kZeroGuaranteed : Conclusion::kInconclusive;
  return v;
}

}  // namespace

std::uint64_t stiefel_dimension(std::uint32_t n, std::uint32_t k) {
  return std::uint64_t{k} * (n - 1) - gram_dimension(k);
}

Representation theorem_main_target(std::uint32_t n, std::uint32_t k) {
  check_nk(n, k);
  Representation rep(k);
  for (std::uint32_t j = 0; j < k; ++j) rep.add(Character::unit(k, j), n - (j + 1));
  return rep;
}

Representation fadell_husseini_target(std::uint32_t n, std::uint32_t k) {
  check_nk(n, k);
  Representation rep(k);
  for (std::uint32_t c = 0; c < n - k; ++c) {
    for (std::uint32_t j = 0; j < k; ++j) rep.add(Character::unit(k, j));
  }
  return rep;
}

StiefelVerdict theorem_main2_check(std::uint32_t n, std::uint32_t k, const Representation& rep) {
  check_nk(n, k);
  const std::uint64_t m = stiefel_dimension(n, k);
  if (rep.rank() != k) throw DimensionMismatch("representation rank differs from k", k, rep.rank());
  if (rep.dimension() != m) {
    throw DimensionMismatch("codomain must have dimension m = k(n-1) - C(k,2) = " + std::to_string(m) + ", got " +
                                std::to_string(rep.dimension()),
                            static_cast<std::size_t>(m), rep.dimension());
  }
  const SphereDims dims(std::vector<std::uint32_t>(k, n - 1));
  StiefelVerdict v;
  v.n = n;
  v.k = k;
  v.m = m;
  v.condition_parity = compute_r(dims, rep.direct_sum(gram_representation(k))).parity;
  v.theorem_backing = TheoremBacking::kThmMain2;
  return finish(v);
}

StiefelVerdict variety_check(const SphereDims& m_vec, const Representation& rep) {
  const std::size_t k = m_vec.rank();
  if (k < 1) throw InvalidArgument("variety_check requires at least one factor");
  if (rep.rank() != k) throw DimensionMismatch("representation rank differs from number of factors", k, rep.rank());

  auto sorted = m_vec.values();
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < k; ++i) {
    if (sorted[i] < i) {
      throw InvalidArgument("orthogonality variety is empty: the " + std::to_string(i + 1) +
                            "-th smallest sphere dimension must be at least " + std::to_string(i));
    }
  }
  const std::uint64_t gram = gram_dimension(k);
  const std::uint64_t expected = m_vec.total() - gram;
  if (rep.dimension() != expected) {
    throw DimensionMismatch("codomain must have dimension sum(m) - C(k,2) = " + std::to_string(expected) + ", got " +
                                std::to_string(rep.dimension()),
                            static_cast<std::size_t>(expected), rep.dimension());
  }

  StiefelVerdict v;
  v.k = static_cast<std::uint32_t>(k);
  v.n = sorted.back() + 1;
  v.m = rep.dimension();
  v.condition_parity = compute_r(m_vec, rep.direct_sum(gram_representation(k))).parity;

  bool filtered = true;
  for (std::size_t i = 0; i < k; ++i) filtered = filtered && m_vec[i] == v.n - k + i;
  const bool constant = std::all_of(m_vec.values().begin(), m_vec.values().end(),
                                    [&](std::uint32_t x) { return x == m_vec[0]; });
  if (filtered && rep.same_multiset(fadell_husseini_target(v.n, v.k))) {
    v.theorem_backing = TheoremBacking::kCorMain;
  } else if (constant) {
    v.theorem_backing = TheoremBacking::kThmMain2;
  } else {
    v.theorem_backing = TheoremBacking::kGeneralizedUnproven;
  }
  return finish(v);
}

}  // namespace obstructor
