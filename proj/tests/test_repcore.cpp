#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "obstructor/repcore.hpp"

using namespace obstructor;

TEST_CASE("parse_character reads coordinates left to right") {
  const auto alpha = parse_character("110", 3);
  CHECK(alpha.pairing(0));
  CHECK(alpha.pairing(1));
  CHECK_FALSE(alpha.pairing(2));
  CHECK(alpha.weight() == 2);

  const auto zero = parse_character("0", 1);
  CHECK(zero.is_zero());
  CHECK(zero == Character::zero(1));
}

TEST_CASE("parse_character rejects bad input") {
  CHECK_THROWS_AS(parse_character("10", 3), ParseError);
  CHECK_THROWS_AS(parse_character("1a0", 3), ParseError);
  CHECK_THROWS_AS(parse_character("", 1), ParseError);
  CHECK_THROWS_AS(parse_character(std::string(17, '1'), 17), InvalidArgument);
}

TEST_CASE("multiplicity suffix expands to copies") {
  const auto list = parse_character_list("110^3,011", 3);
  REQUIRE(list.size() == 4);
  CHECK(list[0].to_string() == "110");
  CHECK(list[2].to_string() == "110");
  CHECK(list[3].to_string() == "011");
  CHECK(parse_character_list("11^0", 2).empty());
  CHECK(parse_character_list("", 2).empty());
  CHECK_THROWS_AS(parse_character_list("11^", 2), ParseError);
  CHECK_THROWS_AS(parse_character_list("11^x", 2), ParseError);
  CHECK_THROWS_AS(parse_character_list("11,,10", 2), ParseError);
}

TEST_CASE("pairing") {
  const auto alpha = parse_character("110", 3);
  CHECK(alpha.pairing(0) == 1);
  CHECK(alpha.pairing(2) == 0);
  const auto zero = parse_character("000", 3);
  for (std::size_t j = 0; j < 3; ++j) CHECK(zero.pairing(j) == 0);
  CHECK_THROWS_AS(alpha.pairing(3), std::out_of_range);
}

TEST_CASE("forget deletes one coordinate") {
  CHECK(parse_character("11", 2).forget(1).to_string() == "1");
  CHECK(parse_character("01", 2).forget(1).to_string() == "0");
  CHECK(parse_character("101", 3).forget(1).to_string() == "11");
  CHECK(parse_character("101", 3).forget(0).to_string() == "01");
  CHECK(parse_character("1", 1).forget(0).rank() == 0);
  CHECK_THROWS_AS(parse_character("11", 2).forget(2), std::out_of_range);
}

TEST_CASE("gram_representation") {
  CHECK(gram_representation(2).to_string() == "11");
  CHECK(gram_representation(3).to_string() == "110,101,011");
  CHECK(gram_representation(1).empty());
  CHECK(gram_representation(0).empty());

  for (std::size_t k = 0; k <= 8; ++k) {
    const auto g = gram_representation(k);
    CHECK(g.dimension() == k * (k - (k > 0)) / 2);
    std::set<std::string> seen;
    for (const auto& alpha : g.summands()) {
      CHECK(alpha.weight() == 2);
      seen.insert(alpha.to_string());
    }
    CHECK(seen.size() == g.dimension());
  }
}

TEST_CASE("canonical_key erases order but keeps multiplicity") {
  const SphereDims d{1, 1};
  CHECK(canonical_key(d, Representation(2, parse_character_list("10,01", 2))) ==
        canonical_key(d, Representation(2, parse_character_list("01,10", 2))));
  CHECK_FALSE(canonical_key(d, Representation(2, parse_character_list("11,11", 2))) ==
              canonical_key(d, Representation(2, parse_character_list("11", 2))));
  const Representation three(2, parse_character_list("11^3", 2));
  CHECK(canonical_key({2, 1}, three) == canonical_key({2, 1}, three));
  CHECK_FALSE(canonical_key({2, 1}, three) == canonical_key({1, 2}, three));
}

TEST_CASE("canonical_key is invariant under shuffling (property)") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 1 + rng() % 5;
    Representation rep(k);
    const std::size_t n = rng() % 9;
    for (std::size_t i = 0; i < n; ++i) rep.add(Character::from_mask(k, static_cast<std::uint32_t>(rng() % (1u << k))));
    auto shuffled = rep.summands();
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const SphereDims dims(std::vector<std::uint32_t>(k, 1));
    const Representation other(k, shuffled);
    CHECK(canonical_key(dims, rep) == canonical_key(dims, other));
    CHECK(CanonicalKeyHash{}(canonical_key(dims, rep)) == CanonicalKeyHash{}(canonical_key(dims, other)));
    CHECK(rep.same_multiset(other));
  }
}

TEST_CASE("render then parse is the identity (property)") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t k = 1 + rng() % kMaxRank;
    std::string text;
    for (std::size_t j = 0; j < k; ++j) text += (rng() & 1) ? '1' : '0';
    CHECK(parse_character(text, k).to_string() == text);
  }
}

TEST_CASE("mask order matches lexicographic string order") {
  std::vector<Character> all;
  for (std::uint32_t m = 0; m < 16; ++m) all.push_back(Character::from_mask(4, m));
  auto by_string = all;
  std::sort(by_string.begin(), by_string.end(),
            [](const Character& a, const Character& b) { return a.to_string() < b.to_string(); });
  CHECK(by_string == all);
}

TEST_CASE("SphereDims parsing and edits") {
  const auto d = parse_dims("2,1,0");
  CHECK(d.rank() == 3);
  CHECK(d.total() == 3);
  CHECK(d.decremented(0) == SphereDims{1, 1, 0});
  CHECK(d.without(2) == SphereDims{2, 1});
  CHECK(parse_dims("").rank() == 0);
  CHECK_THROWS_AS(parse_dims("2,-1"), ParseError);
  CHECK_THROWS_AS(parse_dims("2,,1"), ParseError);
  CHECK_THROWS_AS(d.decremented(2), std::logic_error);
}

TEST_CASE("Representation rejects mixed ranks") {
  Representation rep(2);
  CHECK_THROWS_AS(rep.add(parse_character("1", 1)), InvalidArgument);
  CHECK_THROWS_AS(Representation(3, parse_character_list("11", 2)), InvalidArgument);
}

TEST_CASE("compact rendering re-parses to the same summands") {
  const Representation rep(3, parse_character_list("110^3,011,110,000^2", 3));
  CHECK(rep.to_compact_string() == "110^3,011,110,000^2");
  CHECK(Representation(3, parse_character_list(rep.to_compact_string(), 3)) == rep);
  CHECK(Representation(2).to_compact_string().empty());
}
