#include "obstructor/oracles.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace obstructor {

int binom_parity(std::int64_t a, std::int64_t b) {
  if (a < 0 || b < 0 || b > a) return 0;
  return ((a - b) & b) == 0 ? 1 : 0;
}

int diagonal_r_k2(std::uint64_t n1, std::uint64_t n2) {
  return binom_parity(static_cast<std::int64_t>(n1 + n2), static_cast<std::int64_t>(n1));
}

// ---------------------------------------------------------------------------
// Gram witness

namespace {

struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Fraction() = default;
  Fraction(std::int64_t n, std::int64_t d = 1) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const auto g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  bool is_zero() const { return num == 0; }
  friend Fraction operator-(Fraction a, Fraction b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
  friend Fraction operator*(Fraction a, Fraction b) { return {a.num * b.num, a.den * b.den}; }
  friend Fraction operator/(Fraction a, Fraction b) { return {a.num * b.den, a.den * b.num}; }
};

using IntVector = std::vector<std::int64_t>;

// Basis of the rational null space of `rows` (each of length `cols`), scaled
// to integer vectors.
std::vector<IntVector> null_space(const std::vector<IntVector>& rows, std::size_t cols) {
  std::vector<std::vector<Fraction>> m;
  for (const auto& row : rows) m.emplace_back(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(cols));

  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    const Fraction lead = m[r][c];
    for (auto& x : m[r]) x = x / lead;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      const Fraction f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
    }
    pivot_cols.push_back(c);
    ++r;
  }

  std::vector<IntVector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), free) != pivot_cols.end()) continue;
    std::vector<Fraction> v(cols, Fraction(0));
    v[free] = Fraction(1);
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = Fraction(0) - m[i][free];
    std::int64_t lcm = 1;
    for (const auto& x : v) lcm = std::lcm(lcm, x.den);
    IntVector out(cols);
    for (std::size_t j = 0; j < cols; ++j) out[j] = v[j].num * (lcm / v[j].den);
    basis.push_back(std::move(out));
  }
  return basis;
}

std::int64_t dot(const IntVector& a, const IntVector& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct GramEnumerator {
  std::size_t k;
  std::vector<IntVector> chosen;  // directions of already fixed factors, in R^k
  ZeroCount count;

  // Factors are fixed from the last (S^0) to the first (S^{k-1}).
  void fix(std::size_t remaining, bool in_domain) {
    if (remaining == 0) {
      for (std::size_t a = 0; a < chosen.size(); ++a) {
        for (std::size_t b = a + 1; b < chosen.size(); ++b) {
          if (dot(chosen[a], chosen[b]) != 0) throw std::logic_error("gram witness: non-orthogonal solution");
        }
      }
      ++count.total;
      if (in_domain) ++count.per_fundamental_domain;
      return;
    }
    const std::size_t factor = remaining - 1;
    const std::size_t ambient = k - factor;  // S^{k-1-factor} lives in R^{k-factor}
    const auto complement = null_space(chosen, ambient);
    if (complement.size() != 1) {
      throw std::logic_error("gram witness: orthogonal complement of dimension " + std::to_string(complement.size()));
    }
    IntVector direction = complement.front();
    direction.resize(k, 0);
    const std::int64_t top = direction[ambient - 1];
    if (top == 0) throw std::logic_error("gram witness: zero on the boundary of the fundamental domain");
    for (int sign : {1, -1}) {
      IntVector x = direction;
      for (auto& c : x) c *= sign;
      chosen.push_back(x);
      fix(remaining - 1, in_domain && x[ambient - 1] > 0);
      chosen.pop_back();
    }
  }
};

}  // namespace

ZeroCount count_gram_zeros(std::size_t k) {
  if (k < 2) throw InvalidArgument("count_gram_zeros requires k >= 2");
  check_rank(k);
  GramEnumerator e{k, {}, {}};
  e.fix(k, true);
  if (e.count.total != (std::uint64_t{1} << k) * e.count.per_fundamental_domain) {
    throw std::logic_error("gram witness: sign action on the zero set is not free");
  }
  return e.count;
}

// ---------------------------------------------------------------------------
// Peel-order cross-check

namespace {

class BudgetExhausted {};

class ExhaustiveParities {
 public:
  explicit ExhaustiveParities(std::uint64_t budget) : budget_(budget) {}

  // Bit p of the result is set iff some sequence of choices reaches parity p.
  unsigned reachable(CanonicalKey state) {
    reduce(state);
    if (state.rank == 0) return 0b10;
    if (auto it = memo_.find(state); it != memo_.end()) return it->second;
    if (expansions_++ >= budget_) throw BudgetExhausted{};

    unsigned result = 0;
    for (std::size_t index = 0; index < state.masks.size(); ++index) {
      if (index > 0 && state.masks[index] == state.masks[index - 1]) continue;
      const std::uint16_t alpha = state.masks[index];
      CanonicalKey child;
      child.rank = state.rank;
      child.masks = state.masks;
      child.masks.erase(child.masks.begin() + static_cast<std::ptrdiff_t>(index));
      unsigned sums = 0b01;
      for (std::size_t j = 0; j < state.rank; ++j) {
        if (!((alpha >> (state.rank - 1 - j)) & 1u)) continue;
        child.dims = state.dims;
        --child.dims[j];
        const unsigned s = reachable(child);
        unsigned next = 0;
        for (unsigned a = 0; a < 2; ++a) {
          for (unsigned b = 0; b < 2; ++b) {
            if ((sums >> a & 1u) && (s >> b & 1u)) next |= 1u << (a ^ b);
          }
        }
        sums = next;
      }
      result |= sums;
    }
    memo_.emplace(state, result);
    return result;
  }

 private:
  static void reduce(CanonicalKey& state) {
    for (std::size_t i = state.dims.size(); i-- > 0;) {
      if (state.dims[i] != 0) continue;
      auto [d, r] = reduce_zero_factors(
          SphereDims(state.dims),
          Representation(state.rank, [&] {
            std::vector<Character> cs;
            for (auto m : state.masks) cs.push_back(Character::from_mask(state.rank, m));
            return cs;
          }()));
      state = canonical_key(d, r);
      return;
    }
  }

  std::uint64_t budget_;
  std::uint64_t expansions_ = 0;
  std::map<CanonicalKey, unsigned> memo_;
};

}  // namespace

CrosscheckReport crosscheck_peel_orders(const SphereDims& dims, const Representation& rep, std::uint64_t budget) {
  check_balance(dims, rep);
  CrosscheckReport report;

  auto run = [&](const std::string& name, EngineOptions options) {
    ObstructionEngine engine(options);
    report.outcomes.push_back({name, engine.parity(dims, rep)});
  };
  run("first", {PeelPolicy::kFirst, false, 0});
  run("last", {PeelPolicy::kLast, false, 0});
  run("min-weight", {PeelPolicy::kMinWeight, false, 0});
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    run("random#" + std::to_string(seed), {PeelPolicy::kRandom, false, seed});
  }
  run("memoized", {PeelPolicy::kMinWeight, true, 0});

  try {
    ExhaustiveParities exhaustive(budget);
    report.reachable_parities = exhaustive.reachable(canonical_key(dims, rep));
    report.exhaustive_complete = true;
  } catch (const BudgetExhausted&) {
    report.partial = true;
  }

  report.parity = report.outcomes.front().parity;
  report.agree = std::all_of(report.outcomes.begin(), report.outcomes.end(),
                             [&](const PolicyOutcome& o) { return o.parity == report.parity; });
  if (report.exhaustive_complete) report.agree = report.agree && report.reachable_parities == (1u << report.parity);
  return report;
}

// ---------------------------------------------------------------------------
// Families

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::string family_name(const FamilyQuery& query) {
  return std::visit(Overloaded{
                        [](const ClassicalBu&) { return std::string("classical_bu"); },
                        [](const ReductionFamily&) { return std::string("reduction"); },
                        [](const ManiFamily&) { return std::string("mani"); },
                        [](const DiagonalK2&) { return std::string("diagonal_k2"); },
                    },
                    query);
}

std::string family_params(const FamilyQuery& query) {
  return std::visit(Overloaded{
                        [](const ClassicalBu& q) { return "dims=" + q.dims.to_string(); },
                        [](const ReductionFamily& q) { return "k=" + std::to_string(q.k); },
                        [](const ManiFamily& q) { return "t=" + std::to_string(q.t); },
                        [](const DiagonalK2& q) {
                          return "n1=" + std::to_string(q.n1) + ",n2=" + std::to_string(q.n2);
                        },
                    },
                    query);
}

int family_value(const FamilyQuery& query) {
  if (const auto* q = std::get_if<DiagonalK2>(&query)) return diagonal_r_k2(q->n1, q->n2);
  return 1;
}

std::pair<SphereDims, Representation> family_instance(const FamilyQuery& query) {
  return std::visit(
      Overloaded{
          [](const ClassicalBu& q) {
            Representation rep(q.dims.rank());
            for (std::size_t j = 0; j < q.dims.rank(); ++j) rep.add(Character::unit(q.dims.rank(), j), q.dims[j]);
            return std::pair{q.dims, rep};
          },
          [](const ReductionFamily& q) {
            if (q.k < 1) throw InvalidArgument("reduction family requires k >= 1");
            check_rank(q.k);
            std::vector<std::uint32_t> dims;
            for (std::size_t i = q.k; i-- > 0;) dims.push_back(static_cast<std::uint32_t>(i));
            return std::pair{SphereDims(std::move(dims)), gram_representation(q.k)};
          },
          [](const ManiFamily& q) {
            if (q.t > 24) throw InvalidArgument("mani family parameter t too large");
            const std::uint32_t p = 1u << q.t;
            Representation rep(2);
            for (std::uint32_t c = 0; c < 2 * p - 1; ++c) {
              rep.add(Character::unit(2, 0));
              rep.add(Character::unit(2, 1));
              rep.add(Character::from_mask(2, 0b11));
            }
            return std::pair{SphereDims{3 * p - 1, 3 * p - 2}, rep};
          },
          [](const DiagonalK2& q) {
            Representation rep(2);
            rep.add(Character::from_mask(2, 0b11), static_cast<std::size_t>(q.n1) + q.n2);
            return std::pair{SphereDims{q.n1, q.n2}, rep};
          },
      },
      query);
}

void check_family_name(std::string_view name) {
  if (name != "classical_bu" && name != "reduction" && name != "mani" && name != "diagonal_k2") {
    throw InvalidArgument("unknown family '" + std::string(name) + "'");
  }
}

}  // namespace obstructor
