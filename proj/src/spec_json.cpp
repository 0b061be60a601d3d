#include "freeconv/spec_json.hpp"

#include "freeconv/convolution.hpp"
#include "freeconv/error.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace freeconv {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::SpecValidation, what); }

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) invalid(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::vector<Scalar> scalar_list(const Json& j, const char* what) {
  if (!j.is_array()) invalid(std::string(what) + " must be an array");
  std::vector<Scalar> out;
  for (const auto& v : j) out.push_back(scalar_from_json(v));
  return out;
}

unsigned even_power(const Scalar& p) {
  if (!p.is_exact() || p.rational().get_den() != 1 || p.sign() <= 0 || !p.rational().get_num().fits_uint_p() ||
      p.rational().get_num().get_ui() % 2 != 0)
    invalid("push_power needs a positive even integer p");
  return static_cast<unsigned>(p.rational().get_num().get_ui());
}

bool is_symmetric_leaf(const DistSpec& d, std::size_t order) {
  return d.get_if<SymmetricCarrierSpec>() != nullptr || is_symmetric_spec(d, order);
}

DistSpec normalize_moments(std::vector<Scalar> values) {
  bool odd_zero = values.size() >= 2;
  for (std::size_t i = 0; odd_zero && i < values.size(); i += 2)
    odd_zero = values[i].is_exact() && values[i].is_zero();
  if (!odd_zero) return DistSpec::moments(std::move(values));
  std::vector<Scalar> carrier;
  for (std::size_t i = 1; i < values.size(); i += 2) carrier.push_back(values[i]);
  return DistSpec::symmetric(DistSpec::moments(std::move(carrier)));
}

CatalogEntry catalog_from_json(const Json& j) {
  const auto& name = require(j, "name");
  if (!name.is_string()) invalid("catalog name must be a string");
  std::vector<Scalar> params;
  if (j.contains("params")) params = scalar_list(j.at("params"), "params");
  auto e = CatalogEntry::make(name.get<std::string>(), std::move(params));
  if (j.contains("reflect")) {
    if (!j.at("reflect").is_boolean()) invalid("reflect must be a boolean");
    if (j.at("reflect").get<bool>()) e = e.reflect();
  }
  return e;
}

Json catalog_to_json(const CatalogEntry& e) {
  Json params = Json::array();
  for (const auto& p : e.params()) params.push_back(scalar_to_json(p));
  return Json{{"kind", "catalog"}, {"name", std::string(e.name())}, {"params", params}, {"reflect", e.reflected()}};
}

LevyTriplet triplet_from_json(const Json& j) {
  LevyTriplet t;
  if (j.contains("a")) t.a = scalar_from_json(j.at("a"));
  if (j.contains("b")) t.b = scalar_from_json(j.at("b"));
  if (j.contains("levy")) {
    const auto& levy = j.at("levy");
    if (levy.contains("atoms")) {
      const auto& atoms = levy.at("atoms");
      if (!atoms.is_array()) invalid("atoms must be an array of [x, w] pairs");
      std::vector<Atom> list;
      for (const auto& a : atoms) {
        if (!a.is_array() || a.size() != 2) invalid("atoms must be an array of [x, w] pairs");
        list.push_back({scalar_from_json(a.at(0)), scalar_from_json(a.at(1))});
      }
      t.nu = FiniteMeasure(std::move(list));
    } else if (levy.contains("catalog")) {
      t.nu = ScaledCatalogMeasure{scalar_from_json(require(levy, "mass")), catalog_from_json(levy.at("catalog"))};
    } else {
      invalid("levy needs \"atoms\" or \"catalog\"");
    }
  }
  return t;
}

Json triplet_to_json(const TripletSpec& t) {
  Json levy;
  if (const auto* fm = std::get_if<FiniteMeasure>(&t.triplet.nu)) {
    Json atoms = Json::array();
    for (const auto& a : fm->atoms()) atoms.push_back(Json::array({scalar_to_json(a.location), scalar_to_json(a.weight)}));
    levy = Json{{"atoms", atoms}};
  } else {
    const auto& scm = std::get<ScaledCatalogMeasure>(t.triplet.nu);
    levy = Json{{"catalog", catalog_to_json(scm.law)}, {"mass", scalar_to_json(scm.mass)}};
  }
  return Json{{"kind", "triplet"},
              {"flavor", t.flavor == LevyFlavor::Free ? "free" : "classical"},
              {"a", scalar_to_json(t.triplet.a)},
              {"b", scalar_to_json(t.triplet.b)},
              {"levy", levy}};
}

SpecExpr make_op(SpecExpr::Op op, std::vector<SpecExpr> args, Scalar param = Scalar(0)) {
  SpecExpr e;
  e.op = op;
  e.args = std::move(args);
  e.param = std::move(param);
  return e;
}

SpecExpr symmetric_of(SpecExpr carrier) {
  if (carrier.op == SpecExpr::Op::Leaf) return SpecExpr::of(DistSpec::symmetric(carrier.leaf.front()));
  return make_op(SpecExpr::Op::Symmetric, {std::move(carrier)});
}

std::vector<SpecExpr> spec_list(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) invalid(std::string(what) + " needs a non-empty array of specs");
  std::vector<SpecExpr> out;
  for (const auto& item : j) out.push_back(spec_from_json(item));
  return out;
}

SpecExpr ops_from_json(const Json& j) {
  if (j.contains("boxplus")) return make_op(SpecExpr::Op::Boxplus, spec_list(j.at("boxplus"), "boxplus"));
  if (j.contains("boxtimes")) return make_op(SpecExpr::Op::Boxtimes, spec_list(j.at("boxtimes"), "boxtimes"));
  if (j.contains("reflect")) return make_op(SpecExpr::Op::Reflect, {spec_from_json(j.at("reflect"))});
  if (j.contains("push_power")) {
    const auto& body = j.at("push_power");
    Scalar p = body.contains("p") ? scalar_from_json(body.at("p")) : Scalar(2);
    even_power(p);
    return make_op(SpecExpr::Op::PushPower, {spec_from_json(require(body, "of"))}, p);
  }
  if (j.contains("compound_poisson")) {
    const auto& body = j.at("compound_poisson");
    return make_op(SpecExpr::Op::CompoundPoisson, {spec_from_json(require(body, "jump"))},
                   scalar_from_json(require(body, "c")));
  }
  if (j.contains("boxplus_power")) {
    const auto& body = j.at("boxplus_power");
    return make_op(SpecExpr::Op::BoxplusPower, {spec_from_json(require(body, "of"))},
                   scalar_from_json(require(body, "c")));
  }
  invalid("unknown ops expression");
}

// Shorthand parser.
class Shorthand {
 public:
  explicit Shorthand(std::string_view text) : text_(text) {}

  SpecExpr parse() {
    SpecExpr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    invalid("cannot parse \"" + std::string(text_) + "\" at position " + std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string identifier() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    if (start == pos_ || std::isdigit(static_cast<unsigned char>(text_[start]))) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  Scalar scalar() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ')' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (start == pos_) fail("expected a number");
    try {
      return Scalar::parse(text_.substr(start, pos_ - start));
    } catch (const std::exception&) {
      pos_ = start;
      fail("expected a number");
    }
  }

  std::vector<Scalar> scalar_args() {
    std::vector<Scalar> out;
    if (accept('(')) {
      if (accept(')')) return out;
      do out.push_back(scalar());
      while (accept(','));
      expect(')');
    }
    return out;
  }

  std::vector<SpecExpr> expr_args() {
    std::vector<SpecExpr> out;
    expect('(');
    do out.push_back(expr());
    while (accept(','));
    expect(')');
    return out;
  }

  SpecExpr expr() {
    const std::string name = identifier();
    if (name == "boxplus" || name == "boxtimes") {
      auto args = expr_args();
      return make_op(name == "boxplus" ? SpecExpr::Op::Boxplus : SpecExpr::Op::Boxtimes, std::move(args));
    }
    if (name == "reflect" || name == "symmetric") {
      expect('(');
      SpecExpr inner = expr();
      expect(')');
      return name == "reflect" ? make_op(SpecExpr::Op::Reflect, {std::move(inner)}) : symmetric_of(std::move(inner));
    }
    if (name == "push_power" || name == "boxplus_power") {
      expect('(');
      SpecExpr inner = expr();
      Scalar param = name == "push_power" ? Scalar(2) : Scalar(1);
      if (accept(',')) param = scalar();
      else if (name == "boxplus_power") fail("boxplus_power needs an exponent");
      expect(')');
      if (name == "push_power") even_power(param);
      return make_op(name == "push_power" ? SpecExpr::Op::PushPower : SpecExpr::Op::BoxplusPower, {std::move(inner)},
                     param);
    }
    if (name == "compound_poisson") {
      expect('(');
      Scalar c = scalar();
      expect(',');
      SpecExpr jump = expr();
      expect(')');
      return make_op(SpecExpr::Op::CompoundPoisson, {std::move(jump)}, c);
    }
    if (name == "moments") return SpecExpr::of(normalize_moments(scalar_args()));
    auto params = scalar_args();
    if (name == "gue") {
      if (!params.empty()) fail("gue takes no parameters");
      return SpecExpr::of(DistSpec(CatalogEntry::wigner(0, 1)));
    }
    if (name == "wishart") return SpecExpr::of(DistSpec(CatalogEntry::make("marchenko_pastur", std::move(params))));
    return SpecExpr::of(DistSpec(CatalogEntry::make(name, std::move(params))));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

Json display_list(std::span<const Scalar> values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(display_scalar(v));
  return out;
}

}  // namespace

SpecExpr SpecExpr::of(DistSpec d) {
  SpecExpr e;
  e.leaf.push_back(std::move(d));
  return e;
}

DistSpec evaluate(const SpecExpr& e, std::size_t order) {
  switch (e.op) {
    case SpecExpr::Op::Leaf:
      return e.leaf.front();
    case SpecExpr::Op::Symmetric:
      return DistSpec::symmetric(evaluate(e.args.front(), order));
    case SpecExpr::Op::Boxplus: {
      DistSpec acc = evaluate(e.args.front(), order);
      for (std::size_t i = 1; i < e.args.size(); ++i) acc = boxplus(acc, evaluate(e.args[i], order), order);
      return acc;
    }
    case SpecExpr::Op::Boxtimes: {
      DistSpec acc = evaluate(e.args.front(), order);
      for (std::size_t i = 1; i < e.args.size(); ++i) {
        DistSpec next = evaluate(e.args[i], order);
        const bool acc_sym = is_symmetric_leaf(acc, order), next_sym = is_symmetric_leaf(next, order);
        if (acc_sym && next_sym)
          throw Error(ErrorCode::DoubleHalfPower, "⊠ of two symmetric laws is not supported");
        if (next_sym) acc = boxtimes_sym(acc, next, order);
        else if (acc_sym) acc = boxtimes_sym(next, acc, order);
        else acc = boxtimes_pos(acc, next, order);
      }
      return acc;
    }
    case SpecExpr::Op::Reflect:
      return reflect(evaluate(e.args.front(), order));
    case SpecExpr::Op::PushPower: {
      const unsigned p = even_power(e.param);
      return push_power(evaluate(e.args.front(), p * order), p, order);
    }
    case SpecExpr::Op::CompoundPoisson:
      return compound_poisson(e.param, evaluate(e.args.front(), order), order);
    case SpecExpr::Op::BoxplusPower:
      return boxplus_power(evaluate(e.args.front(), order), e.param, order);
  }
  invalid("unknown expression");
}

Json scalar_to_json(const Scalar& s) { return s.serialize(); }

Scalar scalar_from_json(const Json& j) {
  try {
    if (j.is_string()) return Scalar::parse(j.get<std::string>());
    if (j.is_number()) return Scalar::parse(j.dump());
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
  }
  invalid("expected a number or numeric string, got " + j.dump());
}

SpecExpr spec_from_json(const Json& j) {
  if (j.is_string()) return parse_shorthand(j.get<std::string>());
  const auto& kind_field = require(j, "kind");
  if (!kind_field.is_string()) invalid("kind must be a string");
  const auto kind = kind_field.get<std::string>();
  if (kind == "catalog") return SpecExpr::of(DistSpec(catalog_from_json(j)));
  if (kind == "moments") return SpecExpr::of(normalize_moments(scalar_list(require(j, "values"), "values")));
  if (kind == "symmetric_carrier") return symmetric_of(spec_from_json(require(j, "carrier")));
  if (kind == "triplet") {
    LevyFlavor flavor = LevyFlavor::Free;
    if (j.contains("flavor")) {
      const auto f = j.at("flavor").get<std::string>();
      if (f == "classical") flavor = LevyFlavor::Classical;
      else if (f != "free") invalid("flavor must be \"free\" or \"classical\"");
    }
    return SpecExpr::of(DistSpec::triplet(triplet_from_json(j), flavor));
  }
  if (kind == "ops") return ops_from_json(j);
  invalid("unknown kind \"" + kind + "\"");
}

Json dist_to_json(const DistSpec& d) {
  return std::visit(
      [](const auto& n) -> Json {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, MomentsSpec>) {
          Json values = Json::array();
          for (const auto& v : n.moments.values()) values.push_back(scalar_to_json(v));
          return Json{{"kind", "moments"}, {"values", values}};
        } else if constexpr (std::is_same_v<T, CatalogEntry>) {
          return catalog_to_json(n);
        } else if constexpr (std::is_same_v<T, SymmetricCarrierSpec>) {
          return Json{{"kind", "symmetric_carrier"}, {"carrier", dist_to_json(*n.carrier)}};
        } else {
          return triplet_to_json(n);
        }
      },
      d.node());
}

Json spec_to_json(const SpecExpr& e) {
  auto list = [&] {
    Json out = Json::array();
    for (const auto& a : e.args) out.push_back(spec_to_json(a));
    return out;
  };
  switch (e.op) {
    case SpecExpr::Op::Leaf:
      return dist_to_json(e.leaf.front());
    case SpecExpr::Op::Symmetric:
      return Json{{"kind", "symmetric_carrier"}, {"carrier", spec_to_json(e.args.front())}};
    case SpecExpr::Op::Boxplus:
      return Json{{"kind", "ops"}, {"boxplus", list()}};
    case SpecExpr::Op::Boxtimes:
      return Json{{"kind", "ops"}, {"boxtimes", list()}};
    case SpecExpr::Op::Reflect:
      return Json{{"kind", "ops"}, {"reflect", spec_to_json(e.args.front())}};
    case SpecExpr::Op::PushPower:
      return Json{{"kind", "ops"},
                  {"push_power", {{"of", spec_to_json(e.args.front())}, {"p", scalar_to_json(e.param)}}}};
    case SpecExpr::Op::CompoundPoisson:
      return Json{{"kind", "ops"},
                  {"compound_poisson", {{"c", scalar_to_json(e.param)}, {"jump", spec_to_json(e.args.front())}}}};
    case SpecExpr::Op::BoxplusPower:
      return Json{{"kind", "ops"},
                  {"boxplus_power", {{"of", spec_to_json(e.args.front())}, {"c", scalar_to_json(e.param)}}}};
  }
  invalid("unknown expression");
}

SpecExpr parse_shorthand(std::string_view text) { return Shorthand(text).parse(); }

SpecExpr parse_spec_argument(std::string_view text) {
  std::size_t start = 0;
  while (start < text.size() && std::isspace(static_cast<unsigned char>(text[start]))) ++start;
  text.remove_prefix(start);
  if (!text.empty() && text.front() == '@') {
    const std::string path(text.substr(1));
    std::ifstream in(path);
    if (!in) invalid("cannot read " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_spec_argument(buffer.str());
  }
  if (!text.empty() && text.front() == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::parse_error& e) {
      invalid(std::string("malformed JSON: ") + e.what());
    }
    return spec_from_json(j);
  }
  return parse_shorthand(text);
}

Json display_double(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

Json display_scalar(const Scalar& s) {
  if (s.is_exact()) return s.to_string();
  return display_double(s.to_double());
}

Json verdict_to_json(const Verdict& v) {
  Json j{{"outcome", outcome_name(v.outcome)}, {"witness", v.witness}, {"tested_order", v.tested_order}};
  Json failures = Json::array();
  for (const auto& f : v.failures)
    failures.push_back({{"matrix", f.kind == HankelKind::Hamburger ? "hamburger" : "shifted"},
                        {"size", f.size},
                        {"determinant", display_scalar(f.determinant)}});
  j["failures"] = failures;
  if (v.grid_point) j["grid_point"] = display_double(*v.grid_point);
  if (v.candidate_s) j["candidate_s"] = display_list(v.candidate_s->coeffs());
  if (v.candidate_moments) j["candidate_moments"] = display_list(v.candidate_moments->values());
  return j;
}

Json report_to_json(const MCReport& r, double threshold) {
  Json orders = Json::array();
  for (std::size_t k = 0; k < r.empirical.size(); ++k)
    orders.push_back({{"order", k + 1},
                      {"empirical", display_double(r.empirical[k])},
                      {"predicted", display_double(r.predicted[k])},
                      {"stderr", display_double(r.standard_error[k])},
                      {"z", display_double(r.z_scores[k])}});
  return Json{{"model", r.model},
              {"dimension", r.dimension},
              {"trials", r.trials},
              {"seed", r.seed},
              {"threshold", display_double(threshold)},
              {"orders", orders},
              {"max_abs_z", display_double(r.max_abs_z())},
              {"pass", r.max_abs_z() <= threshold},
              {"warnings", r.warnings}};
}

}  // namespace freeconv
