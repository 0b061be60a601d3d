#include "cli.hpp"

#include "freeconv/classify.hpp"
#include "freeconv/convolution.hpp"
#include "freeconv/error.hpp"
#include "freeconv/spec_json.hpp"
#include "freeconv/transforms.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <ostream>

namespace freeconv {

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitCompute = 3;

std::size_t default_order() {
  const char* env = std::getenv("FREECONV_ORDER");
  if (!env || !*env) return kDefaultOrder;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1) throw Error(ErrorCode::SpecValidation, "FREECONV_ORDER must be a positive integer");
  return static_cast<std::size_t>(v);
}

void print_table(std::ostream& out, const std::string& format, const Json& header, const MomentSeq& m,
                 const CumulantSeq& k) {
  if (format == "csv") {
    out << "n,moment,free_cumulant\n";
    for (std::size_t n = 1; n <= m.order(); ++n) {
      const auto fmt = [](const Scalar& s) { return s.is_exact() ? s.to_string() : display_double(s.to_double()).dump(); };
      out << n << ',' << fmt(m.at(n)) << ',' << fmt(k.at(n)) << '\n';
    }
    return;
  }
  Json j = header;
  j["order"] = m.order();
  Json moments = Json::array(), cumulants = Json::array();
  for (const auto& v : m.values()) moments.push_back(display_scalar(v));
  for (const auto& v : k.values()) cumulants.push_back(display_scalar(v));
  j["moments"] = moments;
  j["free_cumulants"] = cumulants;
  out << j.dump(2) << '\n';
}

void print_law(std::ostream& out, const std::string& format, Json header, const DistSpec& d, std::size_t order) {
  const auto m = moments_of(d, order);
  print_table(out, format, header, m, free_cumulants_from_moments(m));
}

struct GridSpec {
  double lo = 0, hi = 0;
  std::size_t steps = 0;
};

GridSpec parse_grid(const std::string& text) {
  const auto first = text.find(':');
  const auto second = text.find(':', first == std::string::npos ? first : first + 1);
  if (first == std::string::npos || second == std::string::npos)
    throw Error(ErrorCode::SpecValidation, "grid must be a:b:steps");
  GridSpec g;
  g.lo = Scalar::parse(text.substr(0, first)).to_double();
  g.hi = Scalar::parse(text.substr(first + 1, second - first - 1)).to_double();
  const auto steps = Scalar::parse(text.substr(second + 1));
  if (!steps.is_exact() || steps.rational().get_den() != 1 || steps.sign() <= 0)
    throw Error(ErrorCode::SpecValidation, "grid steps must be a positive integer");
  g.steps = static_cast<std::size_t>(steps.to_double());
  if (!(g.lo <= g.hi)) throw Error(ErrorCode::SpecValidation, "grid needs a <= b");
  return g;
}

Verdict run_test(const std::string& test, const DistSpec& d, std::size_t order) {
  if (test == "freeid") return free_id_test(d, order);
  if (test == "regular") return free_regular_test(d, order);
  if (test == "box2div") return box2div_test(d, order);
  if (test == "typew") return type_w_test(d, order);
  if (test == "typeas") return type_as_test(d, order);
  return wigner_mixture_test(d, order);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::size_t order;
  try {
    order = default_order();
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitInput;
  }

  CLI::App app{"Free probability calculator: moments, cumulants, free convolutions and classification tests"};
  app.require_subcommand(1);

  std::string spec_text, format = "json";
  auto add_order = [&](CLI::App* cmd) {
    cmd->add_option("--order", order, "truncation order (default FREECONV_ORDER or 16)")->check(CLI::PositiveNumber);
  };
  auto add_format = [&](CLI::App* cmd) {
    return cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* show = app.add_subcommand("show", "moments and free cumulants of a distribution");
  show->add_option("spec", spec_text, "distribution (shorthand, JSON, or @file.json)")->required();
  add_order(show);
  add_format(show);

  std::string test;
  auto* classify = app.add_subcommand("classify", "run a classification test");
  classify->add_option("test", test, "freeid|regular|box2div|typew|typeas|wignermix")
      ->required()
      ->check(CLI::IsMember({"freeid", "regular", "box2div", "typew", "typeas", "wignermix"}));
  classify->add_option("spec", spec_text, "distribution")->required();
  add_order(classify);

  std::string grid_text;
  auto* density = app.add_subcommand("density", "density of a catalog law on a grid");
  density->add_option("spec", spec_text, "catalog distribution")->required();
  density->add_option("--grid", grid_text, "a:b:steps")->required();
  auto* density_format = add_format(density);

  std::string model, spec_b;
  std::size_t dim = kDefaultDimension, trials = kDefaultTrials, orders = kDefaultMcOrders;
  std::uint64_t seed = 1;
  double threshold = 4.0;
  auto* mc = app.add_subcommand("mc", "random matrix Monte Carlo against series predictions");
  mc->add_option("model", model, "boxtimes|boxplus")->required()->check(CLI::IsMember({"boxtimes", "boxplus"}));
  mc->add_option("spec_a", spec_text, "first distribution")->required();
  mc->add_option("spec_b", spec_b, "second distribution")->required();
  mc->add_option("--dim", dim, "matrix dimension");
  mc->add_option("--trials", trials, "number of trials");
  mc->add_option("--seed", seed, "random seed");
  mc->add_option("--orders", orders, "highest moment order compared (<= 8)");
  mc->add_option("--threshold", threshold, "|z| threshold");

  auto* convert = app.add_subcommand("convert", "normalize a distribution spec to JSON");
  convert->add_option("spec", spec_text, "distribution")->required();

  auto* bp = app.add_subcommand("bp", "Bercovici-Pata image of a classical law");
  bp->add_option("spec", spec_text, "distribution")->required();
  add_order(bp);
  add_format(bp);

  auto* symmetrize = app.add_subcommand("symmetrize", "symmetric law with κ_2n = κ_n of a free regular law");
  symmetrize->add_option("spec", spec_text, "free regular distribution")->required();
  add_order(symmetrize);
  add_format(symmetrize);

  auto* desymmetrize = app.add_subcommand("desymmetrize", "free regular law with κ_n = κ_2n of a symmetric law");
  desymmetrize->add_option("spec", spec_text, "symmetric distribution")->required();
  add_order(desymmetrize);
  add_format(desymmetrize);

  std::vector<std::string> argv_storage{"freeconv"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitInput;
  }

  try {
    const SpecExpr expr = parse_spec_argument(spec_text);
    const Json spec_json = spec_to_json(expr);

    if (show->parsed()) {
      print_law(out, format, Json{{"spec", spec_json}}, evaluate(expr, order), order);
      return kExitPass;
    }
    if (classify->parsed()) {
      const auto verdict = run_test(test, evaluate(expr, order), order);
      Json j = verdict_to_json(verdict);
      j["test"] = test;
      j["spec"] = spec_json;
      out << j.dump(2) << '\n';
      return verdict.rejected() ? kExitFail : kExitPass;
    }
    if (density->parsed()) {
      const DistSpec d = evaluate(expr, 1);
      const auto* e = d.get_if<CatalogEntry>();
      if (!e) throw Error(ErrorCode::NoDensity, "density needs a catalog law");
      const auto grid = parse_grid(grid_text);
      const Scalar atom = atom_at_zero(*e);
      std::vector<std::pair<double, double>> rows;
      for (std::size_t i = 0; i < grid.steps; ++i) {
        const double x = grid.steps == 1 ? grid.lo
                                         : grid.lo + (grid.hi - grid.lo) * static_cast<double>(i) /
                                                         static_cast<double>(grid.steps - 1);
        rows.emplace_back(x, catalog_density(*e, x));
      }
      if (density_format->count() > 0 && format == "json") {
        Json points = Json::array();
        for (const auto& [x, y] : rows) points.push_back({display_double(x), display_double(y)});
        out << Json{{"spec", spec_json}, {"atom_at_zero", display_scalar(atom)}, {"points", points}}.dump(2) << '\n';
      } else {
        if (!atom.is_zero()) out << "# atom at 0: " << atom.to_string() << '\n';
        out << "x,density\n";
        for (const auto& [x, y] : rows) out << display_double(x).dump() << ',' << display_double(y).dump() << '\n';
      }
      return kExitPass;
    }
    if (mc->parsed()) {
      const SpecExpr other = parse_spec_argument(spec_b);
      const std::size_t k = std::max<std::size_t>(orders, 1);
      const DistSpec a = evaluate(expr, k), b = evaluate(other, k);
      const MCReport report = model == "boxtimes" ? mc_boxtimes(a, b, dim, trials, seed, orders)
                                                  : mc_boxplus(a, b, dim, trials, seed, orders);
      out << report_to_json(report, threshold).dump(2) << '\n';
      return report.max_abs_z() > threshold ? kExitFail : kExitPass;
    }
    if (convert->parsed()) {
      out << spec_json.dump(2) << '\n';
      return kExitPass;
    }
    if (bp->parsed()) {
      print_law(out, format, Json{{"spec", spec_json}}, bp_lambda(evaluate(expr, order), order), order);
      return kExitPass;
    }
    if (symmetrize->parsed()) {
      const DistSpec sigma = evaluate(expr, order);
      const DistSpec mu = main1_pos_to_sym(sigma, order);
      Json header{{"spec", spec_json}, {"result", dist_to_json(mu)}};
      if (const auto* t = sigma.get_if<TripletSpec>();
          t && t->flavor == LevyFlavor::Free && std::holds_alternative<FiniteMeasure>(t->triplet.nu))
        header["triplet"] = dist_to_json(DistSpec::triplet(main1_triplet_pos_to_sym(t->triplet)));
      print_law(out, format, header, mu, order);
      return kExitPass;
    }
    if (desymmetrize->parsed()) {
      const DistSpec mu = evaluate(expr, order);
      const DistSpec sigma = main1_sym_to_pos(mu, order);
      Json header{{"spec", spec_json}, {"result", dist_to_json(sigma)}};
      if (const auto* t = mu.get_if<TripletSpec>();
          t && t->flavor == LevyFlavor::Free && std::holds_alternative<FiniteMeasure>(t->triplet.nu))
        header["triplet"] = dist_to_json(DistSpec::triplet(main1_triplet_sym_to_pos(t->triplet)));
      print_law(out, format, header, sigma, order);
      return kExitPass;
    }
  } catch (const Error& e) {
    err << e.what() << '\n';
    return is_input_error(e.code()) ? kExitInput : kExitCompute;
  } catch (const std::exception& e) {
    err << "computation failed: " << e.what() << '\n';
    return kExitCompute;
  }
  return kExitInput;
}

}  // namespace freeconv
