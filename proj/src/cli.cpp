#include "kzm/cli.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <regex>

#include <CLI11.hpp>
#include <json.hpp>

#include "kzm/error.hpp"
#include "kzm/irrep.hpp"
#include "kzm/kz.hpp"
#include "kzm/selftest.hpp"
#include "kzm/sugawara.hpp"
#include "kzm/symbols.hpp"
#include "kzm/verlinde.hpp"

namespace kzm::cli {

using nlohmann::json;

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  if (text.empty()) return out;
  static const std::regex integer(R"(\s*-?\d{1,9}\s*)");
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!std::regex_match(item, integer)) throw UsageError("malformed integer list '" + text + "'");
    out.push_back(std::stoi(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<Weight> parse_weights(const std::string& text, std::size_t rank) {
  std::vector<Weight> out;
  if (text.find(';') == std::string::npos && rank == 1) {
    for (int a : parse_int_list(text)) out.push_back({a});
  } else {
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t semi = text.find(';', start);
      out.push_back(parse_int_list(text.substr(start, semi == std::string::npos ? std::string::npos : semi - start)));
      if (semi == std::string::npos) break;
      start = semi + 1;
    }
  }
  for (const auto& w : out) {
    if (w.size() != rank) throw UsageError("weight '" + to_string(w) + "' needs " + std::to_string(rank) + " coordinates");
    for (int a : w)
      if (a < 0) throw DomainError("weight " + to_string(w) + " is not dominant");
  }
  return out;
}

std::complex<double> parse_complex(const std::string& text) {
  static const std::regex real(R"([+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?|[+-]?\d+/\d+)");
  auto value = [&](const std::string& s) {
    if (!std::regex_match(s, real)) throw UsageError("malformed complex number '" + text + "'");
    return s.find('/') == std::string::npos ? std::stod(s) : to_double(parse_rational(s[0] == '+' ? s.substr(1) : s));
  };
  if (text.empty()) throw UsageError("empty complex number");
  if (text.back() != 'i') return {value(text), 0.0};
  const std::string body = text.substr(0, text.size() - 1);
  // The imaginary part starts at the last sign that is not an exponent sign.
  std::size_t split = 0;
  for (std::size_t k = body.size(); k-- > 1;)
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  const std::string re = body.substr(0, split), im = body.substr(split);
  const double imag = (im.empty() || im == "+") ? 1.0 : im == "-" ? -1.0 : value(im);
  return {re.empty() ? 0.0 : value(re), imag};
}

namespace {

json weight_json(const Weight& w) { return json(w); }

json rational_matrix_json(const RationalMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

json complex_matrix_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

json level_warnings(const LieAlgebraData& alg, const std::vector<Weight>& weights, std::optional<int> level) {
  json out = json::array();
  if (!level) return out;
  for (const auto& w : weights) {
    const Rational p = alg.weight_pairing(w, alg.highest_root);
    if (p > *level)
      out.push_back("weight " + to_string(w) + " has kappa(lambda, theta) = " + to_string(p) + " > level " + std::to_string(*level));
  }
  return out;
}

void write_file(const std::string& path, const json& doc) {
  std::ofstream f(path);
  if (!f) throw ConfigurationError("cannot write '" + path + "'");
  f << doc.dump(2) << '\n';
}

void check_tol(double tol) {
  if (!(tol > 0.0 && tol <= 1e-2)) throw DomainError("tolerance must lie in (0, 1e-2]");
}

AlgebraPtr algebra_for(const std::string& series, int rank) {
  if (series.size() != 1) throw ConfigurationError("unknown series '" + series + "'");
  if (rank < 1) throw DomainError("rank must be at least 1");
  return build_algebra(series[0], static_cast<std::size_t>(rank));
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Knizhnik-Zamolodchikov systems, Sugawara operators and fusion ranks", "kzm"};
  app.require_subcommand(1);
  app.fallthrough();  // lets --pretty follow the subcommand
  bool pretty = false;
  app.add_flag("--pretty", pretty, "Indented JSON");

  std::string series = "A", weights_text, weight_text, kappa_text, braid = "A12", emit, pairs_text;
  int rank = 1, level = 1, depth = 4, scan_levels = 10, weight_m = 0;
  std::optional<int> level_opt, check_level;
  double tol = 1e-8;
  bool exact = false, json_flag = false;
  std::uint64_t seed = 0;
  std::size_t trials = 100;

  auto* algebra_cmd = app.add_subcommand("algebra", "Root data and level weights");
  auto* algebra_info = algebra_cmd->add_subcommand("info", "Print algebra data");
  algebra_cmd->require_subcommand(1);
  algebra_info->add_option("--series", series)->capture_default_str();
  algebra_info->add_option("--rank", rank)->required();
  algebra_info->add_option("--level", level_opt);

  auto* rep_cmd = app.add_subcommand("rep", "Irreducible representations");
  auto* rep_build = rep_cmd->add_subcommand("build", "Build V_lambda");
  rep_cmd->require_subcommand(1);
  rep_build->add_option("--rank", rank)->required();
  rep_build->add_option("--weight", weight_text)->required();
  rep_build->add_option("--emit", emit, "Write generator matrices to this file");

  auto* inv_cmd = app.add_subcommand("invariants", "Invariant subspace of a tensor product");
  inv_cmd->add_option("--rank", rank)->required();
  inv_cmd->add_option("--weights", weights_text)->required();
  inv_cmd->add_flag("--json", json_flag, "JSON output (the default)");
  inv_cmd->add_option("--check-level", check_level, "Warn about weights above this level");

  auto* kz_cmd = app.add_subcommand("kz", "KZ connection");
  kz_cmd->require_subcommand(1);
  auto* kz_flat = kz_cmd->add_subcommand("flatness", "Infinitesimal pure-braid relations");
  kz_flat->add_option("--rank", rank)->required();
  kz_flat->add_option("--weights", weights_text)->required();
  kz_flat->add_flag("--exact", exact, "Exact rational arithmetic");
  kz_flat->add_option("--check-level", check_level);
  auto* kz_mono = kz_cmd->add_subcommand("monodromy", "Pure-braid generator monodromy");
  kz_mono->add_option("--rank", rank)->required();
  kz_mono->add_option("--weights", weights_text)->required();
  kz_mono->add_option("--kappa", kappa_text)->required();
  kz_mono->add_option("--braid", braid)->capture_default_str();
  kz_mono->add_option("--tol", tol)->capture_default_str();
  kz_mono->add_option("--emit", emit, "Also write the matrix JSON to this file");
  kz_mono->add_option("--check-level", check_level);

  auto* sug_cmd = app.add_subcommand("sugawara", "Sugawara construction on integrable modules");
  sug_cmd->require_subcommand(1);
  auto* sug_check = sug_cmd->add_subcommand("check", "Affine and Virasoro relations");
  sug_check->add_option("--level", level)->required();
  sug_check->add_option("--weight", weight_m)->required();
  sug_check->add_option("--depth", depth)->capture_default_str();
  sug_check->add_option("--pairs", pairs_text, "Virasoro index pairs, e.g. \"1,-1;2,-2\"");

  auto* sym_cmd = app.add_subcommand("symbols", "Symbol pairing against residues");
  sym_cmd->require_subcommand(1);
  auto* sym_check = sym_cmd->add_subcommand("check", "Seeded random trials");
  sym_check->add_option("--rank", rank)->capture_default_str();
  sym_check->add_option("--trials", trials)->capture_default_str();
  sym_check->add_option("--seed", seed)->required();

  auto* ver_cmd = app.add_subcommand("verlinde", "Genus-0 fusion ranks");
  ver_cmd->add_option("--level", level)->required();
  ver_cmd->add_option("--weights", weights_text)->required();
  ver_cmd->add_option("--scan-levels", scan_levels)->capture_default_str();

  auto* self_cmd = app.add_subcommand("selftest", "Run the full property suite");
  self_cmd->add_option("--seed", seed)->required();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "kzm: " << e.what() << "\n" << app.help();
    return exit_usage;
  }

  json result;
  int code = exit_ok;
  try {
    if (algebra_info->parsed()) {
      const auto alg = algebra_for(series, rank);
      result = {{"series", std::string(1, alg->series)}, {"rank", alg->rank}, {"dim", alg->dim},
                {"dual_coxeter", alg->dual_coxeter}, {"highest_root", weight_json(alg->highest_root)},
                {"weyl_vector", weight_json(alg->weyl_vector)}, {"cartan_matrix", alg->cartan_matrix}};
      if (level_opt) {
        if (*level_opt < 0) throw DomainError("level must be nonnegative");
        result["level"] = *level_opt;
        result["level_weights"] = level_weights(*alg, *level_opt);
      }
    } else if (rep_build->parsed()) {
      const auto alg = algebra_for(series, rank);
      const auto w = parse_weights(weight_text, static_cast<std::size_t>(rank));
      if (w.size() != 1) throw UsageError("--weight takes exactly one weight");
      const Irrep rep = irrep(alg, w[0]);
      result = {{"highest_weight", weight_json(rep.highest_weight)}, {"dim", rep.dim}, {"weights", rep.weights},
                {"casimir", to_string(casimir_value(*alg, w[0]))}, {"weyl_dimension", weyl_dimension(*alg, w[0]).get_str()}};
      if (!emit.empty()) {
        json mats;
        for (std::size_t k = 0; k < alg->dim; ++k) mats[alg->basis[k].label] = rational_matrix_json(rep.basis_matrices[k]);
        write_file(emit, {{"highest_weight", weight_json(rep.highest_weight)}, {"dim", rep.dim}, {"matrices", mats}});
        result["emitted"] = emit;
      }
    } else if (inv_cmd->parsed()) {
      const auto alg = algebra_for(series, rank);
      const auto ws = parse_weights(weights_text, static_cast<std::size_t>(rank));
      const auto sys = tensor_system(alg, ws);
      const auto inv = invariant_basis(sys);
      // sum_{i<j} Omega_ij acts on invariants by -1/2 sum_i c_i.
      Rational omega_sum = 0;
      for (const auto& w : ws) omega_sum -= casimir_value(*alg, w) / 2;
      result = {{"ambient_dim", sys->dim}, {"dim_invariants", inv.dim()}, {"omega_sum", to_string(omega_sum)},
                {"level_warnings", level_warnings(*alg, ws, check_level)}};
    } else if (kz_flat->parsed()) {
      const auto alg = algebra_for(series, rank);
      const auto ws = parse_weights(weights_text, static_cast<std::size_t>(rank));
      const KZSystem sys = kz_system(alg, ws, Rational(1), exact ? ArithmeticMode::exact : ArithmeticMode::floating);
      const auto rep = flatness_residual(sys);
      result = {{"mode", exact ? "exact" : "float"}, {"dim_invariants", sys.dim()}, {"relations", rep.relations},
                {"level_warnings", level_warnings(*alg, ws, check_level)}};
      if (exact)
        result["residual"] = to_string(rep.exact_residual);
      else
        result["residual"] = rep.residual;
    } else if (kz_mono->parsed()) {
      check_tol(tol);
      const auto alg = algebra_for(series, rank);
      const auto ws = parse_weights(weights_text, static_cast<std::size_t>(rank));
      const auto kappa = parse_complex(kappa_text);
      if (kappa == std::complex<double>(0.0, 0.0)) throw DomainError("kappa must be nonzero");
      std::optional<Rational> exact_kappa;
      if (kappa.imag() == 0.0 && kappa_text.find_first_of("eE.") == std::string::npos) {
        try {
          exact_kappa = parse_rational(kappa_text);
        } catch (const DomainError&) {
        }
      }
      const KZSystem sys = exact_kappa ? kz_system(alg, ws, *exact_kappa) : kz_system(alg, ws, Complex(kappa));
      const auto [i, j] = parse_braid_label(braid, ws.size());
      const auto h = braid_monodromy(sys, i, j, default_basepoint(ws.size()), tol);
      result = {{"mode", "float"},
                {"braid", braid},
                {"kappa", {kappa.real(), kappa.imag()}},
                {"dim_invariants", sys.dim()},
                {"matrix", complex_matrix_json(h.matrix)},
                {"estimated_error", h.estimated_error},
                {"steps_taken", h.steps_taken},
                {"tol", tol},
                {"level_warnings", level_warnings(*alg, ws, check_level)}};
      if (!emit.empty()) {
        write_file(emit, result);
        result["emitted"] = emit;
      }
    } else if (sug_check->parsed()) {
      const auto mod = truncated_module(level, weight_m, depth);
      std::vector<std::pair<int, int>> pairs;
      if (pairs_text.empty()) {
        const int r = std::min(2, depth);
        for (int p = -r; p <= r; ++p)
          for (int q = -r; q <= r; ++q)
            if (std::abs(p + q) <= depth) pairs.emplace_back(p, q);
      } else {
        std::size_t start = 0;
        while (true) {
          const std::size_t semi = pairs_text.find(';', start);
          const auto pq = parse_int_list(pairs_text.substr(start, semi == std::string::npos ? std::string::npos : semi - start));
          if (pq.size() != 2) throw UsageError("each --pairs entry needs two indices");
          pairs.emplace_back(pq[0], pq[1]);
          if (semi == std::string::npos) break;
          start = semi + 1;
        }
      }
      json vir = json::array();
      bool ok = true;
      for (const auto& [p, q] : pairs) {
        const auto c = virasoro_bracket_check(mod, p, q);
        ok = ok && c.residual == 0;
        vir.push_back({{"p", p}, {"q", q}, {"residual", to_string(c.residual)}});
      }
      const auto aff = affine_relations_check(mod);
      const auto l0 = l0_grading_check(mod);
      ok = ok && aff.residual == 0 && l0.residual == 0;
      result = {{"level", level},
                {"weight", weight_m},
                {"depth", depth},
                {"graded_dims", mod.graded_dims},
                {"central_charge", to_string(central_charge(mod))},
                {"conformal_weight", to_string(conformal_weight(mod))},
                {"affine_residual", to_string(aff.residual)},
                {"l0_residual", to_string(l0.residual)},
                {"virasoro", vir},
                {"passed", ok}};
    } else if (sym_check->parsed()) {
      if (rank < 1) throw DomainError("rank must be at least 1");
      const auto rep = symbol_trials(static_cast<std::size_t>(rank), trials, seed);
      result = {{"rank", rank},
                {"seed", seed},
                {"trials", rep.trials},
                {"passed", rep.passed()},
                {"exact_mismatches", rep.exact_mismatches},
                {"cocycle_mismatches", rep.cocycle_mismatches},
                {"basis_mismatches", rep.basis_mismatches},
                {"max_float_deviation", {{"float", rep.max_float_deviation}}}};
    } else if (ver_cmd->parsed()) {
      const auto labels = parse_int_list(weights_text);
      const auto rep = compare_invariants(level, labels, scan_levels);
      json ranks = json::array();
      for (const auto& [l, r] : rep.ranks_by_level) ranks.push_back({l, r});
      result = {{"level", level},
                {"rank", rep.rank},
                {"dim_invariants", rep.dim_invariants},
                {"equal", rep.equal},
                {"stabilization_level", rep.stabilization_level ? json(*rep.stabilization_level) : json(nullptr)},
                {"ranks_by_level", ranks},
                {"s_matrix_rank", {{"float", s_matrix_rank(level, labels)}}}};
    } else if (self_cmd->parsed()) {
      const auto rep = selftest(seed);
      result = rep.to_json();
      if (!rep.passed()) code = exit_failed;
    }
  } catch (const UsageError& e) {
    err << "kzm: " << e.what() << "\n";
    return exit_usage;
  } catch (const Error& e) {
    result = {{"error", {{"kind", e.kind()}, {"message", e.what()}}}};
    code = exit_domain;
  }
  out << (pretty ? result.dump(2) : result.dump()) << '\n';
  return code;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  return run(std::move(args), out, err);
}

}  // namespace kzm::cli
