#include "obstructor/search.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <set>
#include <thread>

namespace obstructor {

std::uint64_t multiset_count(std::uint64_t kinds, std::uint64_t size) {
  if (kinds == 0) return size == 0 ? 1 : 0;
  // C(kinds + size - 1, size), computed incrementally; each prefix is itself a
  // binomial coefficient so the division is exact.
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= size; ++i) {
    const std::uint64_t factor = kinds - 1 + i;
    if (result > kMax / factor) return kMax;
    result = result * factor / i;
  }
  return result;
}

namespace {

using Masks = std::vector<std::uint16_t>;

std::uint16_t permute_mask(std::uint16_t mask, std::size_t rank, const std::vector<std::size_t>& perm) {
  std::uint16_t out = 0;
  for (std::size_t j = 0; j < rank; ++j) {
    if ((mask >> (rank - 1 - j)) & 1u) out = static_cast<std::uint16_t>(out | (1u << (rank - 1 - perm[j])));
  }
  return out;
}

// Coordinate permutations that preserve the dims vector, excluding the identity.
std::vector<std::vector<std::size_t>> stabilizer(const SphereDims& dims) {
  const std::size_t k = dims.rank();
  std::vector<std::size_t> order(k);
  for (std::size_t i = 0; i < k; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return dims[a] < dims[b]; });

  // Blocks of equal dimension in `order`.
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  std::uint64_t group_size = 1;
  for (std::size_t s = 0; s < k;) {
    std::size_t e = s;
    while (e < k && dims[order[e]] == dims[order[s]]) ++e;
    blocks.emplace_back(s, e);
    for (std::size_t f = 2; f <= e - s; ++f) group_size *= f;
    if (group_size > 40320) throw SearchLimitExceeded("symmetry group too large for --up-to-symmetry");
    s = e;
  }

  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> images = order;
  auto recurse = [&](auto&& self, std::size_t block) -> void {
    if (block == blocks.size()) {
      std::vector<std::size_t> perm(k);
      bool identity = true;
      for (std::size_t i = 0; i < k; ++i) {
        perm[order[i]] = images[i];
        identity = identity && order[i] == images[i];
      }
      if (!identity) perms.push_back(std::move(perm));
      return;
    }
    auto [s, e] = blocks[block];
    std::sort(images.begin() + static_cast<std::ptrdiff_t>(s), images.begin() + static_cast<std::ptrdiff_t>(e));
    do {
      self(self, block + 1);
    } while (std::next_permutation(images.begin() + static_cast<std::ptrdiff_t>(s),
                                   images.begin() + static_cast<std::ptrdiff_t>(e)));
  };
  recurse(recurse, 0);
  return perms;
}

}  // namespace

SearchResult search(const SearchOptions& options, ObstructionEngine& engine) {
  const std::size_t k = options.dims.rank();
  const std::uint64_t total = options.dims.total();
  if (total > options.max_total) {
    throw SearchLimitExceeded("sum of sphere dimensions " + std::to_string(total) + " exceeds the limit " +
                              std::to_string(options.max_total));
  }

  Masks alphabet;
  if (options.alphabet.empty()) {
    for (std::uint32_t m = 1; m < (1u << k); ++m) alphabet.push_back(static_cast<std::uint16_t>(m));
  } else {
    for (const auto& alpha : options.alphabet) {
      if (alpha.rank() != k) throw DimensionMismatch("alphabet character rank differs from number of factors", k, alpha.rank());
      alphabet.push_back(alpha.mask());
    }
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  }

  const std::uint64_t count = multiset_count(alphabet.size(), total);
  if (count > options.max_multisets) {
    throw SearchLimitExceeded(std::to_string(count) + " multisets exceed the limit " +
                              std::to_string(options.max_multisets));
  }

  // Nondecreasing index sequences enumerate sorted multisets in lexicographic order.
  std::vector<Masks> candidates;
  SearchResult result;
  if (!alphabet.empty() || total == 0) {
    std::vector<std::size_t> idx(total, 0);
    while (true) {
      Masks m(total);
      for (std::size_t i = 0; i < total; ++i) m[i] = alphabet[idx[i]];
      candidates.push_back(std::move(m));
      std::size_t pos = total;
      while (pos > 0 && idx[pos - 1] + 1 == alphabet.size()) --pos;
      if (pos == 0) break;
      const std::size_t next = idx[pos - 1] + 1;
      for (std::size_t i = pos - 1; i < total; ++i) idx[i] = next;
    }
  }
  result.enumerated = candidates.size();

  if (options.up_to_symmetry) {
    const auto perms = stabilizer(options.dims);
    const std::set<std::uint16_t> allowed(alphabet.begin(), alphabet.end());
    std::vector<Masks> kept;
    for (auto& m : candidates) {
      bool minimal = true;
      for (const auto& perm : perms) {
        Masks image(m.size());
        bool inside = true;
        for (std::size_t i = 0; i < m.size(); ++i) {
          image[i] = permute_mask(m[i], k, perm);
          inside = inside && allowed.count(image[i]);
        }
        if (!inside) continue;
        std::sort(image.begin(), image.end());
        if (image < m) {
          minimal = false;
          break;
        }
      }
      if (minimal) kept.push_back(std::move(m));
    }
    candidates = std::move(kept);
  }
  result.evaluated = candidates.size();

  std::vector<std::uint8_t> parities(candidates.size(), 0);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      for (std::size_t i = next++; i < candidates.size(); i = next++) {
        std::vector<Character> chars;
        chars.reserve(candidates[i].size());
        for (auto m : candidates[i]) chars.push_back(Character::from_mask(k, m));
        parities[i] = static_cast<std::uint8_t>(engine.parity(options.dims, Representation(k, std::move(chars))));
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = candidates.size();
    }
  };
  const unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!parities[i]) continue;
    std::vector<Character> chars;
    for (auto m : candidates[i]) chars.push_back(Character::from_mask(k, m));
    result.hits.emplace_back(k, std::move(chars));
  }
  return result;
}

}  // namespace obstructor
