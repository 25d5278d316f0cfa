#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "obstructor/cli.hpp"
#include "obstructor/obstruction.hpp"
#include "obstructor/oracles.hpp"
#include "obstructor/search.hpp"
#include "obstructor/stiefel.hpp"

namespace py = pybind11;
using namespace obstructor;

namespace {

// Characters may be given in CLI syntax ("11^3,10") or as a list of bit strings.
using Alphas = std::variant<std::string, std::vector<std::string>>;

Representation to_rep(const Alphas& alphas, std::size_t rank) {
  if (const auto* text = std::get_if<std::string>(&alphas)) return Representation(rank, parse_character_list(*text, rank));
  Representation rep(rank);
  for (const auto& item : std::get<std::vector<std::string>>(alphas)) {
    for (const auto& alpha : parse_character_list(item, rank)) rep.add(alpha);
  }
  return rep;
}

py::dict certificate_dict(const DerivationNode& node) {
  py::dict d;
  d["rule"] = to_string(node.rule);
  d["dims"] = node.dims.values();
  d["alphas"] = node.rep.to_strings();
  d["peeled"] = node.peeled ? py::cast(*node.peeled) : py::none();
  d["branch_factors"] = node.branch_factors;
  d["parity"] = node.parity;
  py::list children;
  for (const auto& child : node.children) children.append(certificate_dict(child));
  d["children"] = children;
  return d;
}

py::dict verdict_dict(const StiefelVerdict& v) {
  py::dict d;
  d["n"] = v.n;
  d["k"] = v.k;
  d["m"] = v.m;
  d["parity"] = v.condition_parity;
  d["conclusion"] = to_string(v.conclusion);
  d["theorem_backing"] = to_string(v.theorem_backing);
  return d;
}

}  // namespace

PYBIND11_MODULE(_obstructor, m) {
  m.doc() = R"doc(
    Exact mod-2 Borsuk-Ulam obstruction r(n_1, ..., n_k; V) for (Z/2)^k-equivariant
    maps out of products of spheres, with Stiefel-manifold checks and oracles.

    Characters are bit strings whose first symbol is coordinate 1. Wherever a
    list of characters is expected, the CLI syntax "110^3,011" is accepted too.
  )doc";
  m.attr("__version__") = cli::kVersion;

  auto parse_error = py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", PyExc_ValueError);
  py::register_exception<SearchLimitExceeded>(m, "SearchLimitExceeded", PyExc_RuntimeError);
  (void)parse_error;

  m.def(
      "r",
      [](const std::vector<std::uint32_t>& dims, const Alphas& alphas) {
        const SphereDims d(dims);
        py::gil_scoped_release release;
        return compute_r(d, to_rep(alphas, d.rank())).parity;
      },
      py::arg("dims"), py::arg("alphas"), "Parity r(dims; alphas) as 0 or 1.");

  m.def(
      "compute_r",
      [](const std::vector<std::uint32_t>& dims, const Alphas& alphas, bool certificate) {
        const SphereDims d(dims);
        const auto result = compute_r(d, to_rep(alphas, d.rank()), certificate);
        py::dict out;
        out["parity"] = result.parity;
        out["conclusion"] = to_string(result.parity ? Conclusion::kZeroGuaranteed : Conclusion::kInconclusive);
        if (result.certificate) out["certificate"] = certificate_dict(*result.certificate);
        return out;
      },
      py::arg("dims"), py::arg("alphas"), py::arg("certificate") = false,
      "Parity with conclusion tag and, on request, the derivation tree as nested dicts.");

  m.def("binom_parity", &binom_parity, py::arg("a"), py::arg("b"));
  m.def("diagonal_r_k2", &diagonal_r_k2, py::arg("n1"), py::arg("n2"));

  m.def(
      "count_gram_zeros",
      [](std::size_t k) {
        const auto c = count_gram_zeros(k);
        return std::pair{c.total, c.per_fundamental_domain};
      },
      py::arg("k"), "(total zeros, zeros per fundamental domain) of the Gram witness map.");

  m.def("gram_representation", [](std::size_t k) { return gram_representation(k).to_strings(); }, py::arg("k"));
  m.def(
      "theorem_main_target", [](std::uint32_t n, std::uint32_t k) { return theorem_main_target(n, k).to_strings(); },
      py::arg("n"), py::arg("k"));
  m.def(
      "fadell_husseini_target",
      [](std::uint32_t n, std::uint32_t k) { return fadell_husseini_target(n, k).to_strings(); }, py::arg("n"),
      py::arg("k"));

  m.def(
      "theorem_main2_check",
      [](std::uint32_t n, std::uint32_t k, const Alphas& alphas) {
        return verdict_dict(theorem_main2_check(n, k, to_rep(alphas, k)));
      },
      py::arg("n"), py::arg("k"), py::arg("alphas"));

  m.def(
      "variety_check",
      [](const std::vector<std::uint32_t>& m_vec, const Alphas& alphas) {
        const SphereDims d(m_vec);
        return verdict_dict(variety_check(d, to_rep(alphas, d.rank())));
      },
      py::arg("m_vec"), py::arg("alphas"));

  m.def(
      "crosscheck_peel_orders",
      [](const std::vector<std::uint32_t>& dims, const Alphas& alphas, std::uint64_t budget) {
        const SphereDims d(dims);
        const auto report = crosscheck_peel_orders(d, to_rep(alphas, d.rank()), budget);
        py::dict out;
        py::dict policies;
        for (const auto& o : report.outcomes) policies[py::str(o.policy)] = o.parity;
        out["policies"] = policies;
        out["agree"] = report.agree;
        out["parity"] = report.parity;
        out["partial"] = report.partial;
        out["exhaustive_complete"] = report.exhaustive_complete;
        return out;
      },
      py::arg("dims"), py::arg("alphas"), py::arg("budget") = 1'000'000);

  m.def(
      "search",
      [](const std::vector<std::uint32_t>& dims, std::optional<Alphas> alphabet, bool up_to_symmetry, unsigned jobs,
         std::uint64_t max_total) {
        SearchOptions options;
        options.dims = SphereDims(dims);
        if (alphabet) options.alphabet = to_rep(*alphabet, options.dims.rank()).summands();
        options.up_to_symmetry = up_to_symmetry;
        options.jobs = jobs;
        options.max_total = max_total;
        SearchResult result;
        {
          py::gil_scoped_release release;
          result = search(options, default_engine());
        }
        std::vector<std::vector<std::string>> hits;
        for (const auto& rep : result.hits) hits.push_back(rep.to_strings());
        return hits;
      },
      py::arg("dims"), py::arg("alphabet") = py::none(), py::arg("up_to_symmetry") = false, py::arg("jobs") = 1,
      py::arg("max_total") = 12, "Sorted multisets with parity 1, in lexicographic order.");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return std::tuple{code, out.str(), err.str()};
      },
      py::arg("args"), "Runs the command line front end in-process; returns (exit code, stdout, stderr).");
}
