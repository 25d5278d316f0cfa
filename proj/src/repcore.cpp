#include "obstructor/repcore.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <limits>
#include <stdexcept>

namespace obstructor {

namespace {

std::uint16_t coordinate_bit(std::size_t rank, std::size_t j) {
  return static_cast<std::uint16_t>(1u << (rank - 1 - j));
}

std::uint64_t parse_unsigned(std::string_view text, std::string_view what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

void check_rank(std::size_t rank) {
  if (rank > kMaxRank) {
    throw InvalidArgument("group rank " + std::to_string(rank) + " exceeds the supported maximum " +
                          std::to_string(kMaxRank));
  }
}

Character Character::zero(std::size_t rank) {
  check_rank(rank);
  return Character(static_cast<std::uint8_t>(rank), 0);
}

Character Character::unit(std::size_t rank, std::size_t j) {
  check_rank(rank);
  if (j >= rank) throw std::out_of_range("factor index out of range");
  return Character(static_cast<std::uint8_t>(rank), coordinate_bit(rank, j));
}

Character Character::from_mask(std::size_t rank, std::uint32_t mask) {
  check_rank(rank);
  if (rank < 32 && (mask >> rank) != 0) throw InvalidArgument("mask has bits beyond the rank");
  return Character(static_cast<std::uint8_t>(rank), static_cast<std::uint16_t>(mask));
}

unsigned Character::weight() const noexcept { return static_cast<unsigned>(std::popcount(mask_)); }

bool Character::pairing(std::size_t j) const {
  if (j >= rank_) throw std::out_of_range("factor index out of range");
  return (mask_ & coordinate_bit(rank_, j)) != 0;
}

Character Character::forget(std::size_t i) const {
  if (i >= rank_) throw std::out_of_range("factor index out of range");
  // Bits above coordinate i's bit are the coordinates before it.
  const unsigned low_bits = static_cast<unsigned>(rank_ - 1 - i);
  const std::uint32_t low = mask_ & ((1u << low_bits) - 1u);
  const std::uint32_t high = mask_ >> (low_bits + 1);
  return Character(static_cast<std::uint8_t>(rank_ - 1),
                   static_cast<std::uint16_t>((high << low_bits) | low));
}

std::string Character::to_string() const {
  std::string out(rank_, '0');
  for (std::size_t j = 0; j < rank_; ++j) {
    if (mask_ & coordinate_bit(rank_, j)) out[j] = '1';
  }
  return out;
}

Character parse_character(std::string_view text, std::size_t rank) {
  check_rank(rank);
  if (text.size() != rank) {
    throw ParseError("character '" + std::string(text) + "' has length " + std::to_string(text.size()) +
                     ", expected " + std::to_string(rank));
  }
  std::uint32_t mask = 0;
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw ParseError("character '" + std::string(text) + "' contains symbol other than 0/1");
    }
    mask = (mask << 1) | static_cast<std::uint32_t>(c == '1');
  }
  return Character::from_mask(rank, mask);
}

std::vector<Character> parse_character_list(std::string_view text, std::size_t rank) {
  std::vector<Character> out;
  if (text.empty()) return out;
  for (auto item : split(text, ',')) {
    std::size_t copies = 1;
    if (auto caret = item.find('^'); caret != std::string_view::npos) {
      copies = parse_unsigned(item.substr(caret + 1), "multiplicity");
      item = item.substr(0, caret);
    }
    const Character alpha = parse_character(item, rank);
    out.insert(out.end(), copies, alpha);
  }
  return out;
}

SphereDims::SphereDims(std::vector<std::uint32_t> dims) : dims_(std::move(dims)) { check_rank(dims_.size()); }

SphereDims::SphereDims(std::initializer_list<std::uint32_t> dims) : SphereDims(std::vector<std::uint32_t>(dims)) {}

std::uint64_t SphereDims::total() const noexcept {
  std::uint64_t sum = 0;
  for (auto n : dims_) sum += n;
  return sum;
}

SphereDims SphereDims::decremented(std::size_t j) const {
  if (j >= dims_.size()) throw std::out_of_range("factor index out of range");
  if (dims_[j] == 0) throw std::logic_error("cannot decrement a zero sphere dimension");
  auto copy = dims_;
  --copy[j];
  return SphereDims(std::move(copy));
}

SphereDims SphereDims::without(std::size_t i) const {
  if (i >= dims_.size()) throw std::out_of_range("factor index out of range");
  auto copy = dims_;
  copy.erase(copy.begin() + static_cast<std::ptrdiff_t>(i));
  return SphereDims(std::move(copy));
}

std::string SphereDims::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(dims_[i]);
  }
  return out;
}

SphereDims parse_dims(std::string_view text) {
  std::vector<std::uint32_t> dims;
  if (text.empty()) return SphereDims{};
  for (auto item : split(text, ',')) {
    const auto value = parse_unsigned(item, "sphere dimension");
    if (value > std::numeric_limits<std::uint32_t>::max()) throw ParseError("sphere dimension too large");
    dims.push_back(static_cast<std::uint32_t>(value));
  }
  if (dims.size() > kMaxRank) throw ParseError("too many factors (maximum " + std::to_string(kMaxRank) + ")");
  return SphereDims(std::move(dims));
}

Representation::Representation(std::size_t rank) : rank_(rank) { check_rank(rank); }

Representation::Representation(std::size_t rank, std::vector<Character> summands)
    : rank_(rank), summands_(std::move(summands)) {
  check_rank(rank);
  for (const auto& alpha : summands_) {
    if (alpha.rank() != rank_) throw InvalidArgument("summand rank differs from representation rank");
  }
}

void Representation::add(const Character& alpha, std::size_t copies) {
  if (alpha.rank() != rank_) throw InvalidArgument("summand rank differs from representation rank");
  summands_.insert(summands_.end(), copies, alpha);
}

Representation Representation::without(std::size_t position) const {
  if (position >= summands_.size()) throw std::out_of_range("summand position out of range");
  Representation out(rank_);
  out.summands_.reserve(summands_.size() - 1);
  for (std::size_t i = 0; i < summands_.size(); ++i) {
    if (i != position) out.summands_.push_back(summands_[i]);
  }
  return out;
}

Representation Representation::forget(std::size_t i) const {
  if (i >= rank_) throw std::out_of_range("factor index out of range");
  Representation out(rank_ - 1);
  out.summands_.reserve(summands_.size());
  for (const auto& alpha : summands_) out.summands_.push_back(alpha.forget(i));
  return out;
}

Representation Representation::direct_sum(const Representation& other) const {
  if (other.rank_ != rank_) throw InvalidArgument("direct sum of representations of different rank");
  Representation out = *this;
  out.summands_.insert(out.summands_.end(), other.summands_.begin(), other.summands_.end());
  return out;
}

bool Representation::same_multiset(const Representation& other) const {
  if (rank_ != other.rank_ || summands_.size() != other.summands_.size()) return false;
  auto a = summands_;
  auto b = other.summands_;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

std::string Representation::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < summands_.size(); ++i) {
    if (i) out += ',';
    out += summands_[i].to_string();
  }
  return out;
}

std::string Representation::to_compact_string() const {
  std::string out;
  for (std::size_t i = 0; i < summands_.size();) {
    std::size_t run = 1;
    while (i + run < summands_.size() && summands_[i + run] == summands_[i]) ++run;
    if (!out.empty()) out += ',';
    out += summands_[i].to_string();
    if (run > 1) out += '^' + std::to_string(run);
    i += run;
  }
  return out;
}

std::vector<std::string> Representation::to_strings() const {
  std::vector<std::string> out;
  out.reserve(summands_.size());
  for (const auto& alpha : summands_) out.push_back(alpha.to_string());
  return out;
}

Representation gram_representation(std::size_t k) {
  Representation out(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      out.add(Character::from_mask(k, Character::unit(k, i).mask() | Character::unit(k, j).mask()));
    }
  }
  return out;
}

CanonicalKey canonical_key(const SphereDims& dims, const Representation& rep) {
  CanonicalKey key;
  key.rank = static_cast<std::uint8_t>(rep.rank());
  key.dims = dims.values();
  key.masks.reserve(rep.dimension());
  for (const auto& alpha : rep.summands()) key.masks.push_back(alpha.mask());
  std::sort(key.masks.begin(), key.masks.end());
  return key;
}

std::size_t CanonicalKeyHash::operator()(const CanonicalKey& key) const noexcept {
  // FNV-1a over rank, dims and masks.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(key.rank);
  mix(key.dims.size());
  for (auto d : key.dims) mix(d);
  mix(0xffffffffull);
  for (auto m : key.masks) mix(m);
  return static_cast<std::size_t>(h);
}

}  // namespace obstructor
