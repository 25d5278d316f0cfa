#include "obstructor/obstruction.hpp"

#include <algorithm>
#include <bit>
#include <filesystem>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace obstructor {

std::string to_string(Rule rule) {
  switch (rule) {
    case Rule::kBase: return "BASE";
    case Rule::kReduceZeroFactor: return "REDUCE_ZERO_FACTOR";
    case Rule::kPeel: return "PEEL";
    case Rule::kFastpathEq2: return "FASTPATH_EQ2";
  }
  return "?";
}

std::string to_string(PeelPolicy policy) {
  switch (policy) {
    case PeelPolicy::kMinWeight: return "min-weight";
    case PeelPolicy::kFirst: return "first";
    case PeelPolicy::kLast: return "last";
    case PeelPolicy::kRandom: return "random";
  }
  return "?";
}

std::size_t DerivationNode::size() const {
  std::size_t n = 1;
  for (const auto& child : children) n += child.size();
  return n;
}

void check_balance(const SphereDims& dims, const Representation& rep) {
  if (rep.rank() != dims.rank()) {
    throw DimensionMismatch("representation rank " + std::to_string(rep.rank()) + " differs from number of factors " +
                                std::to_string(dims.rank()),
                            dims.rank(), rep.rank());
  }
  if (rep.dimension() != dims.total()) {
    throw DimensionMismatch("representation has " + std::to_string(rep.dimension()) +
                                " summands but the sphere product has dimension " + std::to_string(dims.total()),
                            static_cast<std::size_t>(dims.total()), rep.dimension());
  }
}

std::pair<SphereDims, Representation> reduce_zero_factors(const SphereDims& dims, const Representation& rep) {
  if (rep.rank() != dims.rank()) {
    throw DimensionMismatch("representation rank differs from number of factors", dims.rank(), rep.rank());
  }
  SphereDims d = dims;
  Representation r = rep;
  for (std::size_t i = d.rank(); i-- > 0;) {
    if (d[i] == 0) {
      d = d.without(i);
      r = r.forget(i);
    }
  }
  return {std::move(d), std::move(r)};
}

std::vector<Subproblem> peel(const SphereDims& dims, const Representation& rep, std::size_t index) {
  if (rep.rank() != dims.rank()) throw std::logic_error("peel: rank mismatch");
  if (index >= rep.dimension()) throw std::logic_error("peel: summand position out of range");
  for (auto n : dims.values()) {
    if (n == 0) throw std::logic_error("peel: zero sphere dimension must be reduced first");
  }
  const Character& alpha = rep[index];
  const Representation rest = rep.without(index);
  std::vector<Subproblem> out;
  for (std::size_t j = 0; j < dims.rank(); ++j) {
    if (alpha.pairing(j)) out.push_back({j, dims.decremented(j), rest});
  }
  return out;
}

std::size_t choose_peel(const Representation& rep) {
  if (rep.empty()) throw InvalidArgument("choose_peel: empty representation");
  std::size_t best = 0;
  for (std::size_t i = 1; i < rep.dimension(); ++i) {
    if (rep[i].weight() < rep[best].weight()) best = i;
  }
  return best;
}

// ---------------------------------------------------------------------------
// MemoTable

std::optional<int> MemoTable::find(const CanonicalKey& key) const {
  std::shared_lock lock(mutex_);
  auto it = table_.find(key);
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

void MemoTable::insert(const CanonicalKey& key, int parity) {
  std::unique_lock lock(mutex_);
  table_.emplace(key, static_cast<std::uint8_t>(parity));
}

std::size_t MemoTable::size() const {
  std::shared_lock lock(mutex_);
  return table_.size();
}

void MemoTable::clear() {
  std::unique_lock lock(mutex_);
  table_.clear();
}

std::vector<std::pair<CanonicalKey, int>> MemoTable::entries() const {
  std::vector<std::pair<CanonicalKey, int>> out;
  {
    std::shared_lock lock(mutex_);
    out.reserve(table_.size());
    for (const auto& [key, parity] : table_) out.emplace_back(key, parity);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string format_cache_record(const CanonicalKey& key, int parity) {
  std::string line = std::to_string(key.rank) + ';';
  for (std::size_t i = 0; i < key.dims.size(); ++i) {
    if (i) line += ',';
    line += std::to_string(key.dims[i]);
  }
  line += ';';
  for (std::size_t i = 0; i < key.masks.size(); ++i) {
    if (i) line += ',';
    line += Character::from_mask(key.rank, key.masks[i]).to_string();
  }
  line += ';';
  line += std::to_string(parity);
  return line;
}

std::pair<CanonicalKey, int> parse_cache_record(const std::string& line) {
  std::vector<std::string> fields;
  {
    std::size_t start = 0;
    while (true) {
      auto pos = line.find(';', start);
      fields.push_back(line.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
  }
  if (fields.size() != 4) throw ParseError("cache record must have 4 fields: '" + line + "'");

  const auto rank_list = parse_dims(fields[0]);
  if (rank_list.rank() != 1 || rank_list[0] > kMaxRank) throw ParseError("bad rank in cache record: '" + line + "'");
  const std::size_t rank = rank_list[0];

  const SphereDims dims = parse_dims(fields[1]);
  if (dims.rank() != rank) throw ParseError("dims count differs from rank in cache record: '" + line + "'");

  CanonicalKey key;
  key.rank = static_cast<std::uint8_t>(rank);
  key.dims = dims.values();
  for (const auto& alpha : parse_character_list(fields[2], rank)) key.masks.push_back(alpha.mask());
  if (key.masks.size() != dims.total()) throw ParseError("unbalanced cache record: '" + line + "'");
  if (!std::is_sorted(key.masks.begin(), key.masks.end())) {
    throw ParseError("cache record summands not in canonical order: '" + line + "'");
  }
  if (fields[3] != "0" && fields[3] != "1") throw ParseError("bad parity in cache record: '" + line + "'");
  return {std::move(key), fields[3] == "1" ? 1 : 0};
}

void MemoTable::save(std::ostream& out) const {
  out << kCacheHeader << '\n';
  for (const auto& [key, parity] : entries()) out << format_cache_record(key, parity) << '\n';
}

void MemoTable::load(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCacheHeader) throw ParseError("missing or unsupported cache header");
  std::vector<std::pair<CanonicalKey, int>> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    records.push_back(parse_cache_record(line));
  }
  std::unique_lock lock(mutex_);
  for (auto& [key, parity] : records) table_.emplace(std::move(key), static_cast<std::uint8_t>(parity));
}

void MemoTable::save_file(const std::string& path) const {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache file '" + tmp + "'");
    save(out);
    if (!out) throw std::runtime_error("error writing cache file '" + tmp + "'");
  }
  std::filesystem::rename(tmp, path);
}

void MemoTable::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open cache file '" + path + "'");
  load(in);
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

// Sorted state used by the memoized evaluator; it doubles as the memo key.
void reduce_canonical(CanonicalKey& state) {
  for (std::size_t i = state.dims.size(); i-- > 0;) {
    if (state.dims[i] != 0) continue;
    const unsigned low_bits = static_cast<unsigned>(state.rank - 1 - i);
    const std::uint32_t low_mask = (1u << low_bits) - 1u;
    for (auto& m : state.masks) {
      m = static_cast<std::uint16_t>(((m >> (low_bits + 1)) << low_bits) | (m & low_mask));
    }
    state.dims.erase(state.dims.begin() + static_cast<std::ptrdiff_t>(i));
    --state.rank;
  }
  std::sort(state.masks.begin(), state.masks.end());
}

std::size_t pick(PeelPolicy policy, std::size_t count, std::mt19937_64& rng, auto&& weight_of) {
  switch (policy) {
    case PeelPolicy::kFirst: return 0;
    case PeelPolicy::kLast: return count - 1;
    case PeelPolicy::kRandom: return std::uniform_int_distribution<std::size_t>(0, count - 1)(rng);
    case PeelPolicy::kMinWeight: break;
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < count; ++i) {
    if (weight_of(i) < weight_of(best)) best = i;
  }
  return best;
}

class CanonicalEvaluator {
 public:
  CanonicalEvaluator(MemoTable& memo, PeelPolicy policy, std::uint64_t seed)
      : memo_(memo), policy_(policy), rng_(seed) {}

  int evaluate(CanonicalKey state) {
    reduce_canonical(state);
    if (state.rank == 0) return 1;
    if (auto hit = memo_.find(state)) return *hit;

    const std::size_t index = pick(policy_, state.masks.size(), rng_,
                                   [&](std::size_t i) { return std::popcount(state.masks[i]); });
    const std::uint16_t alpha = state.masks[index];
    CanonicalKey child;
    child.rank = state.rank;
    child.masks = state.masks;
    child.masks.erase(child.masks.begin() + static_cast<std::ptrdiff_t>(index));
    int parity = 0;
    for (std::size_t j = 0; j < state.rank; ++j) {
      if ((alpha >> (state.rank - 1 - j)) & 1u) {
        child.dims = state.dims;
        --child.dims[j];
        parity ^= evaluate(child);
      }
    }
    memo_.insert(state, parity);
    return parity;
  }

 private:
  MemoTable& memo_;
  PeelPolicy policy_;
  std::mt19937_64 rng_;
};

class OrderedEvaluator {
 public:
  OrderedEvaluator(PeelPolicy policy, std::uint64_t seed) : policy_(policy), rng_(seed) {}

  int evaluate(const SphereDims& dims, const Representation& rep) {
    for (auto n : dims.values()) {
      if (n == 0) {
        auto [d, r] = reduce_zero_factors(dims, rep);
        return evaluate(d, r);
      }
    }
    if (dims.rank() == 0) return 1;
    int parity = 0;
    for (const auto& sub : peel(dims, rep, choose(rep))) parity ^= evaluate(sub.dims, sub.rep);
    return parity;
  }

  DerivationNode derive(const SphereDims& dims, const Representation& rep) {
    DerivationNode node;
    node.dims = dims;
    node.rep = rep;
    for (auto n : dims.values()) {
      if (n == 0) {
        auto [d, r] = reduce_zero_factors(dims, rep);
        node.rule = Rule::kReduceZeroFactor;
        node.children.push_back(derive(d, r));
        node.parity = node.children.front().parity;
        return node;
      }
    }
    if (dims.rank() == 0) {
      node.rule = Rule::kBase;
      node.parity = 1;
      return node;
    }
    const std::size_t index = choose(rep);
    node.peeled = index;
    node.rule = rep[index].weight() == 1 ? Rule::kFastpathEq2 : Rule::kPeel;
    for (const auto& sub : peel(dims, rep, index)) {
      node.branch_factors.push_back(sub.factor);
      node.children.push_back(derive(sub.dims, sub.rep));
      node.parity ^= node.children.back().parity;
    }
    return node;
  }

 private:
  std::size_t choose(const Representation& rep) {
    if (policy_ == PeelPolicy::kMinWeight) return choose_peel(rep);
    return pick(policy_, rep.dimension(), rng_, [&](std::size_t i) { return rep[i].weight(); });
  }

  PeelPolicy policy_;
  std::mt19937_64 rng_;
};

}  // namespace

ObstructionEngine::ObstructionEngine(EngineOptions options) : options_(options) {}

ObstructionResult ObstructionEngine::compute(const SphereDims& dims, const Representation& rep,
                                             bool want_certificate) {
  check_balance(dims, rep);
  ObstructionResult result;
  if (want_certificate) {
    OrderedEvaluator ordered(options_.policy, options_.seed);
    result.certificate = ordered.derive(dims, rep);
    result.parity = result.certificate->parity;
  } else if (options_.memoize) {
    CanonicalEvaluator canonical(memo_, options_.policy, options_.seed);
    result.parity = canonical.evaluate(canonical_key(dims, rep));
  } else {
    OrderedEvaluator ordered(options_.policy, options_.seed);
    result.parity = ordered.evaluate(dims, rep);
  }
  return result;
}

ObstructionEngine& default_engine() {
  static ObstructionEngine engine;
  return engine;
}

ObstructionResult compute_r(const SphereDims& dims, const Representation& rep, bool want_certificate) {
  return default_engine().compute(dims, rep, want_certificate);
}

std::string verify_certificate(const DerivationNode& node) {
  auto where = [&node] { return " at (" + node.dims.to_string() + "; " + node.rep.to_string() + ")"; };
  if (node.rep.rank() != node.dims.rank() || node.rep.dimension() != node.dims.total()) {
    return "unbalanced node" + where();
  }
  if (node.parity != 0 && node.parity != 1) return "parity outside {0,1}" + where();

  const bool has_zero = std::find(node.dims.values().begin(), node.dims.values().end(), 0u) !=
                        node.dims.values().end();
  switch (node.rule) {
    case Rule::kBase:
      if (node.dims.rank() != 0 || !node.rep.empty() || !node.children.empty() || node.parity != 1) {
        return "invalid BASE node" + where();
      }
      return {};
    case Rule::kReduceZeroFactor: {
      if (!has_zero || node.children.size() != 1) return "invalid REDUCE_ZERO_FACTOR node" + where();
      const auto [d, r] = reduce_zero_factors(node.dims, node.rep);
      const auto& child = node.children.front();
      if (child.dims != d || child.rep != r) return "REDUCE_ZERO_FACTOR child is not the reduced problem" + where();
      if (node.parity != child.parity) return "REDUCE_ZERO_FACTOR parity differs from child" + where();
      return verify_certificate(child);
    }
    case Rule::kPeel:
    case Rule::kFastpathEq2: {
      if (has_zero || node.dims.rank() == 0 || !node.peeled || *node.peeled >= node.rep.dimension()) {
        return "invalid peel node" + where();
      }
      const bool weight_one = node.rep[*node.peeled].weight() == 1;
      if (weight_one != (node.rule == Rule::kFastpathEq2)) return "FASTPATH_EQ2 must peel exactly weight-1 summands" + where();
      const auto subs = peel(node.dims, node.rep, *node.peeled);
      if (subs.size() != node.children.size() || subs.size() != node.branch_factors.size()) {
        return "peel node has wrong number of children" + where();
      }
      int parity = 0;
      for (std::size_t i = 0; i < subs.size(); ++i) {
        const auto& child = node.children[i];
        if (node.branch_factors[i] != subs[i].factor || child.dims != subs[i].dims || child.rep != subs[i].rep) {
          return "peel child does not match the recursion" + where();
        }
        if (auto err = verify_certificate(child); !err.empty()) return err;
        parity ^= child.parity;
      }
      if (parity != node.parity) return "peel parity is not the XOR of its children" + where();
      return {};
    }
  }
  return "unknown rule" + where();
}

}  // namespace obstructor
