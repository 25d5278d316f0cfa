#include "obstructor/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "obstructor/oracles.hpp"
#include "obstructor/search.hpp"
#include "obstructor/stiefel.hpp"

namespace obstructor::cli {

namespace {

using nlohmann::ordered_json;

constexpr const char* kZeroMessage = "every equivariant map has a zero";
constexpr const char* kInconclusiveMessage = "inconclusive";

struct Options {
  bool json = false;
  std::string cache;

  // r / variety / search
  std::string dims;
  std::string alphas;
  bool certificate = false;
  bool crosscheck = false;
  std::uint64_t budget = 1'000'000;

  // stiefel / variety
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  std::string target;

  // search
  std::string alphabet;
  bool up_to_symmetry = false;
  unsigned jobs = 1;
  std::uint64_t max_total = 12;
  std::uint64_t max_multisets = 5'000'000;

  // table
  std::string family;
  std::uint32_t max = 0;
};

ordered_json dims_json(const SphereDims& dims) { return dims.values(); }

ordered_json certificate_json(const DerivationNode& node) {
  ordered_json j;
  j["rule"] = to_string(node.rule);
  j["dims"] = dims_json(node.dims);
  j["alphas"] = node.rep.to_strings();
  if (node.peeled) {
    j["peeled"] = *node.peeled;
    j["branch_factors"] = node.branch_factors;
  }
  j["parity"] = node.parity;
  ordered_json children = ordered_json::array();
  for (const auto& child : node.children) children.push_back(certificate_json(child));
  j["children"] = std::move(children);
  return j;
}

void render_into(const DerivationNode& node, std::size_t depth, std::string& out) {
  out.append(2 * depth, ' ');
  out += to_string(node.rule) + " r(" + node.dims.to_string() + "; " + node.rep.to_compact_string() +
         ") = " + std::to_string(node.parity);
  if (node.peeled) {
    out += " [peel #" + std::to_string(*node.peeled) + " = " + node.rep[*node.peeled].to_string() + "]";
  }
  out += '\n';
  for (const auto& child : node.children) render_into(child, depth + 1, out);
}

std::string conclusion_text(int parity) { return parity == 1 ? kZeroMessage : kInconclusiveMessage; }

std::string conclusion_tag(int parity) {
  return to_string(parity == 1 ? Conclusion::kZeroGuaranteed : Conclusion::kInconclusive);
}

ordered_json verdict_json(const std::string& command, const SphereDims& dims, const Representation& rep,
                          const StiefelVerdict& v) {
  ordered_json j;
  j["command"] = command;
  j["dims"] = dims_json(dims);
  j["alphas"] = rep.to_strings();
  j["n"] = v.n;
  j["k"] = v.k;
  j["m"] = v.m;
  j["parity"] = v.condition_parity;
  j["conclusion"] = to_string(v.conclusion);
  j["theorem_backing"] = to_string(v.theorem_backing);
  j["version"] = kVersion;
  return j;
}

void print_verdict(std::ostream& out, const SphereDims& dims, const Representation& rep, const StiefelVerdict& v) {
  out << "n=" << v.n << " k=" << v.k << " m=" << v.m << '\n';
  out << "condition r(" << dims.to_string() << "; " << rep.to_compact_string() << " + gram(" << v.k
      << ")) = " << v.condition_parity << '\n';
  out << "conclusion " << to_string(v.conclusion) << '\n';
  out << "backing " << to_string(v.theorem_backing) << '\n';
}

Representation parse_rep(const std::string& text, std::size_t rank) {
  return Representation(rank, parse_character_list(text, rank));
}

int cmd_r(const Options& o, std::ostream& out) {
  const SphereDims dims = parse_dims(o.dims);
  const Representation rep = parse_rep(o.alphas, dims.rank());
  const ObstructionResult result = compute_r(dims, rep, o.certificate);
  std::optional<CrosscheckReport> cross;
  if (o.crosscheck) cross = crosscheck_peel_orders(dims, rep, o.budget);

  if (o.json) {
    ordered_json j;
    j["command"] = "r";
    j["dims"] = dims_json(dims);
    j["alphas"] = rep.to_strings();
    j["parity"] = result.parity;
    j["conclusion"] = conclusion_tag(result.parity);
    if (result.certificate) j["certificate"] = certificate_json(*result.certificate);
    if (cross) {
      ordered_json c;
      c["agree"] = cross->agree;
      c["partial"] = cross->partial;
      c["exhaustive_complete"] = cross->exhaustive_complete;
      for (const auto& o2 : cross->outcomes) c["policies"][o2.policy] = o2.parity;
      j["crosscheck"] = std::move(c);
    }
    j["version"] = kVersion;
    out << j.dump(2) << '\n';
    return kExitOk;
  }

  out << "r(" << dims.to_string() << "; " << rep.to_compact_string() << ") = " << result.parity << '\n';
  out << conclusion_text(result.parity) << '\n';
  if (result.certificate) out << "certificate:\n" << render_certificate(*result.certificate);
  if (cross) {
    out << "crosscheck: " << (cross->agree ? "agree" : "DISAGREE");
    if (cross->partial) out << " (partial: exhaustive budget exhausted)";
    out << '\n';
    for (const auto& p : cross->outcomes) out << "  " << p.policy << " = " << p.parity << '\n';
    if (cross->exhaustive_complete) {
      out << "  all orders = {";
      if (cross->reachable_parities & 1u) out << (cross->reachable_parities == 3u ? "0," : "0");
      if (cross->reachable_parities & 2u) out << "1";
      out << "}\n";
    }
  }
  return kExitOk;
}

int cmd_stiefel(const Options& o, std::ostream& out) {
  if (!o.alphas.empty() && !o.target.empty()) throw ParseError("use either --target or --alphas, not both");
  Representation rep;
  if (!o.alphas.empty()) {
    rep = parse_rep(o.alphas, o.k);
  } else if (o.target.empty() || o.target == "main") {
    rep = theorem_main_target(o.n, o.k);
  } else if (o.target == "fh") {
    rep = fadell_husseini_target(o.n, o.k);
  } else {
    throw ParseError("unknown target '" + o.target + "' (expected main or fh)");
  }
  const StiefelVerdict v = theorem_main2_check(o.n, o.k, rep);
  const SphereDims dims(std::vector<std::uint32_t>(o.k, o.n - 1));
  if (o.json) {
    out << verdict_json("stiefel", dims, rep, v).dump(2) << '\n';
  } else {
    print_verdict(out, dims, rep, v);
  }
  return kExitOk;
}

int cmd_variety(const Options& o, std::ostream& out) {
  if (!o.alphas.empty() && !o.target.empty()) throw ParseError("use either --target or --alphas, not both");
  const SphereDims dims = parse_dims(o.dims);
  Representation rep;
  if (o.target == "fh") {
    if (dims.rank() == 0) throw ParseError("--dims must list at least one factor");
    const auto n = *std::max_element(dims.values().begin(), dims.values().end()) + 1;
    rep = fadell_husseini_target(n, static_cast<std::uint32_t>(dims.rank()));
  } else if (o.target.empty()) {
    rep = parse_rep(o.alphas, dims.rank());
  } else {
    throw ParseError("unknown target '" + o.target + "' (expected fh)");
  }
  const StiefelVerdict v = variety_check(dims, rep);
  if (o.json) {
    out << verdict_json("variety", dims, rep, v).dump(2) << '\n';
  } else {
    print_verdict(out, dims, rep, v);
  }
  return kExitOk;
}

int cmd_search(const Options& o, std::ostream& out) {
  SearchOptions so;
  so.dims = parse_dims(o.dims);
  so.alphabet = parse_character_list(o.alphabet, so.dims.rank());
  so.up_to_symmetry = o.up_to_symmetry;
  so.jobs = o.jobs;
  so.max_total = o.max_total;
  so.max_multisets = o.max_multisets;
  const SearchResult result = search(so, default_engine());

  std::vector<std::string> alphabet;
  if (so.alphabet.empty()) {
    for (std::uint32_t m = 1; m < (1u << so.dims.rank()); ++m) {
      alphabet.push_back(Character::from_mask(so.dims.rank(), m).to_string());
    }
  } else {
    Representation a(so.dims.rank(), so.alphabet);
    alphabet = a.to_strings();
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  }

  if (o.json) {
    ordered_json j;
    j["command"] = "search";
    j["dims"] = dims_json(so.dims);
    j["alphas"] = alphabet;
    j["up_to_symmetry"] = so.up_to_symmetry;
    j["enumerated"] = result.enumerated;
    j["evaluated"] = result.evaluated;
    ordered_json hits = ordered_json::array();
    for (const auto& rep : result.hits) hits.push_back(rep.to_strings());
    j["hits"] = std::move(hits);
    j["version"] = kVersion;
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << "search dims=" << so.dims.to_string() << " alphabet=";
  for (std::size_t i = 0; i < alphabet.size(); ++i) out << (i ? "," : "") << alphabet[i];
  out << (so.up_to_symmetry ? " up-to-symmetry" : "") << " enumerated=" << result.enumerated
      << " evaluated=" << result.evaluated << " hits=" << result.hits.size() << '\n';
  for (const auto& rep : result.hits) out << rep.to_string() << '\n';
  return kExitOk;
}

int cmd_witness(const Options& o, std::ostream& out) {
  const ZeroCount count = count_gram_zeros(o.k);
  const auto [dims, rep] = family_instance(ReductionFamily{o.k});
  const int r = compute_r(dims, rep).parity;
  const int witness_parity = static_cast<int>(count.per_fundamental_domain % 2);
  if (o.json) {
    ordered_json j;
    j["command"] = "witness";
    j["k"] = o.k;
    j["dims"] = dims_json(dims);
    j["alphas"] = rep.to_strings();
    j["zeros_total"] = count.total;
    j["zeros_per_fundamental_domain"] = count.per_fundamental_domain;
    j["witness_parity"] = witness_parity;
    j["parity"] = r;
    j["agree"] = witness_parity == r;
    j["version"] = kVersion;
    out << j.dump(2) << '\n';
  } else {
    out << "gram witness k=" << o.k << ": zeros=" << count.total
        << " per_fundamental_domain=" << count.per_fundamental_domain << '\n';
    out << "r(" << dims.to_string() << "; gram(" << o.k << ")) = " << r << ' '
        << (witness_parity == r ? "(agrees with witness)" : "(DISAGREES with witness)") << '\n';
  }
  return witness_parity == r ? kExitOk : kExitTableMismatch;
}

std::vector<FamilyQuery> family_rows(const Options& o) {
  check_family_name(o.family);
  std::vector<FamilyQuery> rows;
  if (o.family == "diagonal_k2") {
    for (std::uint32_t s = 0; s <= o.max; ++s) {
      for (std::uint32_t n1 = 0; n1 <= s; ++n1) rows.push_back(DiagonalK2{n1, s - n1});
    }
  } else if (o.family == "reduction") {
    for (std::uint32_t k = 2; k <= o.max; ++k) rows.push_back(ReductionFamily{k});
  } else if (o.family == "mani") {
    for (std::uint32_t t = 0; t <= o.max; ++t) rows.push_back(ManiFamily{t});
  } else {
    const std::uint32_t k = std::max(1u, o.k);
    check_rank(k);
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
      count *= o.max + 1;
      if (count > 100'000) throw SearchLimitExceeded("classical_bu table too large");
    }
    std::vector<std::uint32_t> dims(k, 0);
    while (true) {
      if (std::any_of(dims.begin(), dims.end(), [](auto d) { return d != 0; })) rows.push_back(ClassicalBu{SphereDims(dims)});
      std::size_t i = k;
      while (i > 0 && dims[i - 1] == o.max) dims[--i] = 0;
      if (i == 0) break;
      ++dims[i - 1];
    }
  }
  return rows;
}

int cmd_table(const Options& o, std::ostream& out) {
  const auto rows = family_rows(o);
  std::vector<int> computed(rows.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      const auto [dims, rep] = family_instance(rows[i]);
      computed[i] = compute_r(dims, rep).parity;
    }
  };
  if (o.jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < o.jobs; ++t) pool.emplace_back(worker);
  }

  bool all_match = true;
  if (o.json) {
    ordered_json j;
    j["command"] = "table";
    j["family"] = o.family;
    ordered_json table = ordered_json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const int oracle = family_value(rows[i]);
      all_match = all_match && oracle == computed[i];
      table.push_back({{"params", family_params(rows[i])}, {"computed", computed[i]}, {"oracle", oracle},
                       {"match", oracle == computed[i]}});
    }
    j["rows"] = std::move(table);
    j["all_match"] = all_match;
    j["version"] = kVersion;
    out << j.dump(2) << '\n';
  } else {
    out << "family " << o.family << '\n';
    out << std::left << std::setw(24) << "params" << std::setw(10) << "computed" << std::setw(8) << "oracle"
        << "match\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const int oracle = family_value(rows[i]);
      const bool match = oracle == computed[i];
      all_match = all_match && match;
      out << std::left << std::setw(24) << family_params(rows[i]) << std::setw(10) << computed[i] << std::setw(8)
          << oracle << (match ? "yes" : "NO") << '\n';
    }
    if (o.family == "diagonal_k2") {
      // Row s lists r(n1, s - n1) for n1 = 0..s.
      out << "grid (row n1+n2, column n1):\n";
      std::size_t i = 0;
      for (std::uint32_t s = 0; s <= o.max; ++s) {
        std::string line;
        for (std::uint32_t n1 = 0; n1 <= s; ++n1) line += computed[i++] ? '#' : '.';
        out << line << '\n';
      }
    }
  }
  return all_match ? kExitOk : kExitTableMismatch;
}

std::string cache_path(const Options& o) {
  if (!o.cache.empty()) return o.cache;
  if (const char* env = std::getenv(kCacheEnvVar)) return env;
  return {};
}

}  // namespace

std::string render_certificate(const DerivationNode& node) {
  std::string out;
  render_into(node, 0, out);
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Mod-2 Borsuk-Ulam obstruction calculator for (Z/2)^k-equivariant maps", "obstructor"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  auto common = [&o](CLI::App* sub) {
    sub->add_flag("--json", o.json, "Emit JSON");
    sub->add_option("--cache", o.cache, "Memo cache file (default: $OBSTRUCTOR_CACHE)");
  };

  auto* r = app.add_subcommand("r", "Compute r(n_1,...,n_k; V)");
  r->add_option("--dims", o.dims, "Sphere dimensions, e.g. 2,1,0")->required();
  r->add_option("--alphas", o.alphas, "Summand characters, e.g. 110,101,011 or 11^3");
  r->add_flag("--certificate", o.certificate, "Print the derivation tree");
  r->add_flag("--crosscheck", o.crosscheck, "Compare peel orders");
  r->add_option("--budget", o.budget, "State budget for the exhaustive peel-order check");
  common(r);

  auto* stiefel = app.add_subcommand("stiefel", "Check maps V_{n,k} -> S(V)");
  stiefel->add_option("--n", o.n, "Ambient dimension n")->required();
  stiefel->add_option("--k", o.k, "Number of frame vectors k")->required();
  stiefel->add_option("--target", o.target, "Built-in codomain: main (default) or fh");
  stiefel->add_option("--alphas", o.alphas, "Explicit codomain characters");
  common(stiefel);

  auto* variety = app.add_subcommand("variety", "Check maps from the orthogonality variety");
  variety->add_option("--dims", o.dims, "Sphere dimensions m_1,...,m_k")->required();
  variety->add_option("--alphas", o.alphas, "Codomain characters");
  variety->add_option("--target", o.target, "Built-in codomain: fh");
  common(variety);

  auto* search_cmd = app.add_subcommand("search", "Enumerate codomains with parity 1");
  search_cmd->add_option("--dims", o.dims, "Sphere dimensions")->required();
  search_cmd->add_option("--alphabet", o.alphabet, "Allowed characters (default: all nonzero)");
  search_cmd->add_flag("--up-to-symmetry", o.up_to_symmetry, "One multiset per coordinate-permutation orbit");
  search_cmd->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  search_cmd->add_option("--max-total", o.max_total, "Largest allowed sum of sphere dimensions");
  search_cmd->add_option("--max-multisets", o.max_multisets, "Largest allowed number of multisets");
  common(search_cmd);

  auto* witness = app.add_subcommand("witness", "Count zeros of the Gram witness map");
  witness->add_option("--k", o.k, "Group rank k >= 2")->required();
  witness->add_flag("--json", o.json, "Emit JSON");

  auto* table = app.add_subcommand("table", "Compare a family against its known parity");
  table->add_option("--family", o.family, "diagonal_k2, reduction, mani or classical_bu")->required();
  table->add_option("--max", o.max, "Range bound (n1+n2, k, t or n)")->required();
  table->add_option("--k", o.k, "Rank for classical_bu (default 1)");
  table->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  common(table);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParseError;
  }

  const std::string cache = cache_path(o);
  bool cache_usable = !cache.empty();
  if (cache_usable && std::filesystem::exists(cache)) {
    try {
      default_engine().memo().load_file(cache);
    } catch (const std::exception& e) {
      err << "warning: not using cache '" << cache << "': " << e.what() << '\n';
      cache_usable = false;
    }
  }

  int code = kExitOk;
  try {
    if (app.got_subcommand(r)) code = cmd_r(o, out);
    else if (app.got_subcommand(stiefel)) code = cmd_stiefel(o, out);
    else if (app.got_subcommand(variety)) code = cmd_variety(o, out);
    else if (app.got_subcommand(search_cmd)) code = cmd_search(o, out);
    else if (app.got_subcommand(witness)) code = cmd_witness(o, out);
    else if (app.got_subcommand(table)) code = cmd_table(o, out);
  } catch (const DimensionMismatch& e) {
    err << "error: dimension mismatch: " << e.what() << '\n';
    return kExitDimensionMismatch;
  } catch (const SearchLimitExceeded& e) {
    err << "error: limit exceeded: " << e.what() << '\n';
    return kExitLimitExceeded;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParseError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitParseError;
  }

  if (cache_usable) {
    try {
      default_engine().memo().save_file(cache);
    } catch (const std::exception& e) {
      err << "warning: could not save cache: " << e.what() << '\n';
    }
  }
  return code;
}

}  // namespace obstructor::cli
