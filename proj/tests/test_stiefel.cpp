#include <doctest.h>

#include "obstructor/oracles.hpp"
#include "obstructor/stiefel.hpp"
#include "reference_oracle.hpp"

using namespace obstructor;

namespace {
Representation rep_of(const std::string& text, std::size_t k) { return Representation(k, parse_character_list(text, k)); }
}  // namespace

TEST_CASE("theorem_main_target") {
  CHECK(theorem_main_target(3, 2).to_string() == "10,10,01");
  const auto square = theorem_main_target(4, 4);
  CHECK(square.dimension() == 6);
  CHECK(square.same_multiset(rep_of("1000^3,0100^2,0010", 4)));
  CHECK(theorem_main_target(2, 1).to_string() == "1");
  CHECK_THROWS_AS(theorem_main_target(2, 3), InvalidArgument);
  CHECK_THROWS_AS(theorem_main_target(2, 0), InvalidArgument);
}

TEST_CASE("fadell_husseini_target") {
  CHECK(fadell_husseini_target(4, 2).same_multiset(rep_of("10^2,01^2", 2)));
  CHECK(fadell_husseini_target(3, 3).empty());
  CHECK(fadell_husseini_target(3, 1).to_string() == "1,1");
  CHECK_THROWS_AS(fadell_husseini_target(1, 2), InvalidArgument);
}

TEST_CASE("target builders satisfy the checkers' bookkeeping") {
  for (std::uint32_t n = 1; n <= 9; ++n) {
    for (std::uint32_t k = 1; k <= n; ++k) {
      CHECK(theorem_main_target(n, k).dimension() == stiefel_dimension(n, k));
      CHECK(fadell_husseini_target(n, k).dimension() == std::uint64_t{k} * (n - k));
    }
  }
}

TEST_CASE("theorem_main2_check") {
  auto v = theorem_main2_check(3, 2, theorem_main_target(3, 2));
  CHECK(v.condition_parity == 1);
  CHECK(v.conclusion == Conclusion::kZeroGuaranteed);
  CHECK(v.theorem_backing == TheoremBacking::kThmMain2);
  CHECK(v.m == 3);

  v = theorem_main2_check(3, 2, rep_of("11^3", 2));
  CHECK(v.condition_parity == 0);  // C(4,2) = 6
  CHECK(v.conclusion == Conclusion::kInconclusive);

  // The condition is r(4,4; (e1+e2)^8), i.e. C(8,4) = 70 mod 2.
  v = theorem_main2_check(5, 2, rep_of("11^7", 2));
  CHECK(v.m == 7);
  CHECK(v.condition_parity == static_cast<int>(reference::binomial(8, 4) % 2));
  CHECK(v.condition_parity == 0);

  v = theorem_main2_check(4, 4, theorem_main_target(4, 4));
  CHECK(v.m == 6);
  CHECK(v.condition_parity == 1);

  try {
    theorem_main2_check(5, 2, rep_of("11^6", 2));
    FAIL("expected DimensionMismatch");
  } catch (const DimensionMismatch& e) {
    CHECK(e.expected() == 7);
    CHECK(e.actual() == 6);
  }
  CHECK_THROWS_AS(theorem_main2_check(5, 2, rep_of("111^7", 3)), DimensionMismatch);
}

TEST_CASE("classical Borsuk-Ulam through theorem_main2_check") {
  for (std::uint32_t n = 1; n <= 20; ++n) {
    Representation rep(1);
    rep.add(Character::unit(1, 0), n - 1);
    CHECK(theorem_main2_check(n, 1, rep).condition_parity == 1);
  }
}

TEST_CASE("variety_check") {
  auto v = variety_check({2, 3, 4}, fadell_husseini_target(5, 3));
  CHECK(v.condition_parity == 1);
  CHECK(v.theorem_backing == TheoremBacking::kCorMain);
  CHECK(v.n == 5);
  CHECK(v.k == 3);

  v = variety_check({4, 3}, rep_of("11^6", 2));
  CHECK(v.condition_parity == 1);  // C(7,4) = 35
  CHECK(v.theorem_backing == TheoremBacking::kGeneralizedUnproven);

  v = variety_check({1, 0}, Representation(2));
  CHECK(v.condition_parity == 1);
  CHECK(v.theorem_backing == TheoremBacking::kGeneralizedUnproven);

  v = variety_check({2, 2}, theorem_main_target(3, 2));
  CHECK(v.theorem_backing == TheoremBacking::kThmMain2);
  CHECK(v.condition_parity == 1);

  // Same dims as a Corollary configuration but a different codomain.
  v = variety_check({2, 3, 4}, rep_of("111^6", 3));
  CHECK(v.theorem_backing == TheoremBacking::kGeneralizedUnproven);

  CHECK_THROWS_AS(variety_check({0, 0}, Representation(2)), InvalidArgument);  // empty variety
  CHECK_THROWS_AS(variety_check({4, 3}, rep_of("11^5", 2)), DimensionMismatch);
  CHECK_THROWS_AS(variety_check({}, Representation(0)), InvalidArgument);
}

TEST_CASE("Theorem-main and Corollary conditions hold on the whole grid") {
  for (std::uint32_t n = 2; n <= 8; ++n) {
    for (std::uint32_t k = 2; k <= n; ++k) {
      CHECK(theorem_main2_check(n, k, theorem_main_target(n, k)).condition_parity == 1);
      std::vector<std::uint32_t> m;
      for (std::uint32_t i = 0; i < k; ++i) m.push_back(n - k + i);
      const auto v = variety_check(SphereDims(m), fadell_husseini_target(n, k));
      CHECK(v.condition_parity == 1);
      CHECK(v.theorem_backing == TheoremBacking::kCorMain);
    }
  }
}
