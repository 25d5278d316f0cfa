#include <doctest.h>

#include <sstream>
#include <thread>

#include "obstructor/obstruction.hpp"
#include "reference_oracle.hpp"

using namespace obstructor;

namespace {

Representation rep_of(const std::string& text, std::size_t k) { return Representation(k, parse_character_list(text, k)); }

int r_of(const std::string& dims, const std::string& alphas) {
  const auto d = parse_dims(dims);
  return compute_r(d, rep_of(alphas, d.rank())).parity;
}

}  // namespace

TEST_CASE("compute_r on the documented instances") {
  CHECK(r_of("1", "1") == 1);            // intermediate value theorem
  CHECK(r_of("3", "1,1,1") == 1);        // classical Borsuk-Ulam
  CHECK(r_of("1", "0") == 0);            // trivial summand
  CHECK(r_of("1,1", "11,11") == 0);      // C(2,1) = 2
  CHECK(r_of("2,1", "11,11,11") == 1);   // C(3,1) = 3
  CHECK(r_of("2,1,0", "110,101,011") == 1);
  CHECK(r_of("", "") == 1);
  CHECK(r_of("0,0", "") == 1);
}

TEST_CASE("compute_r agrees with independent Lucas arithmetic on small diagonal cases") {
  for (unsigned n1 = 0; n1 <= 8; ++n1) {
    for (unsigned n2 = 0; n2 <= 8; ++n2) {
      const SphereDims d{n1, n2};
      Representation rep(2);
      rep.add(parse_character("11", 2), n1 + n2);
      CHECK(compute_r(d, rep).parity == static_cast<int>(reference::binomial(n1 + n2, n1) % 2));
    }
  }
}

TEST_CASE("compute_r rejects unbalanced input") {
  CHECK_THROWS_AS(compute_r({2, 1}, rep_of("11,11", 2)), DimensionMismatch);
  CHECK_THROWS_AS(compute_r({2, 1}, rep_of("111^3", 3)), DimensionMismatch);
  try {
    compute_r({2, 1}, rep_of("11", 2));
  } catch (const DimensionMismatch& e) {
    CHECK(e.expected() == 3);
    CHECK(e.actual() == 1);
  }
}

TEST_CASE("reduce_zero_factors") {
  auto [d1, r1] = reduce_zero_factors({1, 0}, rep_of("11", 2));
  CHECK(d1 == SphereDims{1});
  CHECK(r1.to_string() == "1");

  auto [d2, r2] = reduce_zero_factors({1, 0}, rep_of("01", 2));
  CHECK(d2 == SphereDims{1});
  CHECK(r2.to_string() == "0");

  auto [d3, r3] = reduce_zero_factors({2, 1}, rep_of("11^3", 2));
  CHECK(d3 == SphereDims{2, 1});
  CHECK(r3 == rep_of("11^3", 2));

  auto [d4, r4] = reduce_zero_factors({0, 2, 0}, rep_of("111,010", 3));
  CHECK(d4 == SphereDims{2});
  CHECK(r4.to_string() == "1,1");

  auto [d5, r5] = reduce_zero_factors({0}, Representation(1));
  CHECK(d5.rank() == 0);
  CHECK(r5.rank() == 0);
}

TEST_CASE("peel") {
  // Peeling the second summand (0-based 1) of ((1,1); 10,01).
  auto subs = peel({1, 1}, rep_of("10,01", 2), 1);
  REQUIRE(subs.size() == 1);
  CHECK(subs[0].factor == 1);
  CHECK(subs[0].dims == SphereDims{1, 0});
  CHECK(subs[0].rep.to_string() == "10");

  subs = peel({2, 1}, rep_of("11^3", 2), 2);
  REQUIRE(subs.size() == 2);
  CHECK(subs[0].dims == SphereDims{1, 1});
  CHECK(subs[1].dims == SphereDims{2, 0});
  CHECK(subs[0].rep.to_string() == "11,11");

  CHECK(peel({1}, rep_of("0", 1), 0).empty());

  CHECK_THROWS_AS(peel({1, 0}, rep_of("11", 2), 0), std::logic_error);
  CHECK_THROWS_AS(peel({1}, rep_of("1", 1), 1), std::logic_error);
}

TEST_CASE("choose_peel") {
  CHECK(choose_peel(rep_of("11,10", 2)) == 1);
  CHECK(choose_peel(rep_of("11,11", 2)) == 0);
  CHECK(choose_peel(rep_of("0,1", 1)) == 0);
  CHECK(choose_peel(rep_of("00,11", 2)) == 0);
  CHECK_THROWS_AS(choose_peel(Representation(2)), InvalidArgument);
}

TEST_CASE("certificates are well formed") {
  auto result = compute_r({2, 1, 0}, rep_of("110,101,011", 3), true);
  REQUIRE(result.certificate);
  const auto& root = *result.certificate;
  CHECK(root.parity == 1);
  CHECK(root.dims == SphereDims{2, 1, 0});
  CHECK(root.rep.to_string() == "110,101,011");
  CHECK(root.rule == Rule::kReduceZeroFactor);
  CHECK(verify_certificate(root).empty());

  auto base = compute_r({}, Representation(0), true);
  REQUIRE(base.certificate);
  CHECK(base.certificate->rule == Rule::kBase);
  CHECK(base.certificate->parity == 1);

  auto fast = compute_r({1}, rep_of("1", 1), true);
  CHECK(fast.certificate->rule == Rule::kFastpathEq2);
  CHECK(fast.certificate->children.size() == 1);

  auto zero = compute_r({1}, rep_of("0", 1), true);
  CHECK(zero.certificate->rule == Rule::kPeel);
  CHECK(zero.certificate->children.empty());
  CHECK(zero.parity == 0);
}

TEST_CASE("verify_certificate detects tampering") {
  auto result = compute_r({2, 1}, rep_of("11^3", 2), true);
  REQUIRE(result.certificate);
  auto tampered = *result.certificate;
  tampered.parity ^= 1;
  CHECK_FALSE(verify_certificate(tampered).empty());

  tampered = *result.certificate;
  tampered.children.front().dims = SphereDims{2, 0};
  CHECK_FALSE(verify_certificate(tampered).empty());

  tampered = *result.certificate;
  tampered.rule = Rule::kFastpathEq2;
  CHECK_FALSE(verify_certificate(tampered).empty());
}

TEST_CASE("every policy, memoized or not, matches the reference recursion") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 150; ++trial) {
    const auto inst = reference::random_instance(rng, 4, 9);
    const int expected = reference::r(inst.dims, inst.rep);
    for (auto policy : {PeelPolicy::kMinWeight, PeelPolicy::kFirst, PeelPolicy::kLast, PeelPolicy::kRandom}) {
      for (bool memoize : {true, false}) {
        ObstructionEngine engine({policy, memoize, static_cast<std::uint64_t>(trial)});
        CHECK(engine.parity(inst.dims, inst.rep) == expected);
      }
    }
    auto cert = compute_r(inst.dims, inst.rep, true);
    CHECK(cert.parity == expected);
    CHECK(verify_certificate(*cert.certificate).empty());
  }
}

TEST_CASE("memo table caches reduced subproblems") {
  ObstructionEngine engine;
  CHECK(engine.memo().size() == 0);
  CHECK(engine.parity({2, 1}, rep_of("11^3", 2)) == 1);
  CHECK(engine.memo().size() > 0);
  const auto entries = engine.memo().entries();
  for (const auto& [key, parity] : entries) {
    for (auto d : key.dims) CHECK(d >= 1);
    CHECK(std::is_sorted(key.masks.begin(), key.masks.end()));
  }
}

TEST_CASE("cache file round trip") {
  ObstructionEngine engine;
  engine.parity({3, 2, 1}, rep_of("110^2,101^2,011^2", 3));
  std::stringstream buffer;
  engine.memo().save(buffer);
  const std::string text = buffer.str();
  CHECK(text.rfind("obstructor-cache v1\n", 0) == 0);

  MemoTable loaded;
  loaded.load(buffer);
  CHECK(loaded.entries() == engine.memo().entries());

  std::stringstream again;
  loaded.save(again);
  CHECK(again.str() == text);
}

TEST_CASE("cache records") {
  CanonicalKey key{2, {2, 1}, {3, 3, 3}};
  CHECK(format_cache_record(key, 1) == "2;2,1;11,11,11;1");
  auto [parsed, parity] = parse_cache_record("2;2,1;11,11,11;1");
  CHECK(parsed == key);
  CHECK(parity == 1);

  auto [empty, p0] = parse_cache_record("0;;;1");
  CHECK(empty.rank == 0);
  CHECK(p0 == 1);

  CHECK_THROWS_AS(parse_cache_record("2;2,1;11,11;1"), ParseError);       // unbalanced
  CHECK_THROWS_AS(parse_cache_record("2;2,1;11,11,11;2"), ParseError);    // parity
  CHECK_THROWS_AS(parse_cache_record("2;2;11,11;1"), ParseError);         // dims count
  CHECK_THROWS_AS(parse_cache_record("2;1,1;11,01;0"), ParseError);       // unsorted
  CHECK_THROWS_AS(parse_cache_record("2;1,1;01,10"), ParseError);         // fields
  CHECK_THROWS_AS(parse_cache_record("17;;;1"), ParseError);              // rank
  CHECK_THROWS_AS(parse_cache_record("2;1,1;011,10;0"), ParseError);      // width
}

TEST_CASE("malformed cache aborts loading and leaves the table untouched") {
  MemoTable table;
  table.insert(CanonicalKey{1, {1}, {1}}, 1);

  std::stringstream bad_header("obstructor-cache v2\n1;1;1;1\n");
  CHECK_THROWS_AS(table.load(bad_header), ParseError);

  std::stringstream bad_record("obstructor-cache v1\n2;1,1;01,10;1\n2;1,1;01;1\n");
  CHECK_THROWS_AS(table.load(bad_record), ParseError);
  CHECK(table.size() == 1);

  std::stringstream empty("");
  CHECK_THROWS_AS(table.load(empty), ParseError);
}

TEST_CASE("shared engine is deterministic under concurrent use") {
  std::mt19937_64 rng(99);
  std::vector<reference::Instance> instances;
  for (int i = 0; i < 64; ++i) instances.push_back(reference::random_instance(rng, 4, 10));

  ObstructionEngine engine;
  std::vector<int> results(instances.size(), -1);
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < 8; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < instances.size(); i += 8) results[i] = engine.parity(instances[i].dims, instances[i].rep);
      });
    }
  }
  for (std::size_t i = 0; i < instances.size(); ++i) CHECK(results[i] == reference::r(instances[i].dims, instances[i].rep));
}
