#include "deltaring/commands.hpp"

#include <functional>
#include <map>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "deltaring/delta.hpp"
#include "deltaring/descriptor.hpp"
#include "deltaring/finite_ring.hpp"
#include "deltaring/serialize.hpp"
#include "deltaring/units.hpp"

namespace deltaring {

namespace {

struct Options {
  std::string ring;
  std::string group;
  std::string element;
  std::string output = "json";
  std::uint64_t prime = 0;
  int precision = 0;
  int depth = 1;
  std::int64_t bound = 2;
  std::int64_t order_bound = 0;
  std::uint64_t prime_bound = 13;
  std::uint64_t seed = 0;
  std::size_t samples = 1000;
  std::int64_t order = 0;
  std::int64_t k = 0;
  std::int64_t m = 0;
  unsigned jobs = 1;
};

bool is_integer_ring(const std::string& text) {
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  }
  return compact == "Z";
}

WittRing ring_from(const Options& o) {
  if (o.ring.empty()) fail(ErrorKind::ValidationError, "--ring is required");
  WittRing ring = build_ring(parse_ring_descriptor(o.ring));
  if (o.precision > 0) ring = ring.at_precision(o.precision);
  return ring;
}

FgAbelianGroup group_from(const Options& o) {
  if (o.group.empty()) return FgAbelianGroup::trivial();
  return build_group(parse_group_descriptor(o.group));
}

std::uint64_t prime_for(const Options& o, const WittRing& ring) {
  if (o.prime != 0 && o.prime != ring.prime()) {
    fail(ErrorKind::PrimeMismatch, "--prime " + std::to_string(o.prime) + " differs from the ring prime " +
                                       std::to_string(ring.prime()));
  }
  return ring.prime();
}

std::uint64_t integer_prime(const Options& o) {
  if (o.prime == 0) fail(ErrorKind::ValidationError, "--prime is required over Z");
  if (!is_prime(o.prime)) fail(ErrorKind::ValidationError, std::to_string(o.prime) + " is not prime");
  return o.prime;
}

Json parse_element_flag(const Options& o) {
  if (o.element.empty()) fail(ErrorKind::ValidationError, "--element is required");
  try {
    return Json::parse(o.element);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::ValidationError, std::string("--element is not valid JSON: ") + e.what());
  }
}

Json precision_json(std::optional<int> r) { return r ? Json(*r) : Json(nullptr); }

/// p^e as a JSON number when it fits, otherwise as a decimal string.
Json power_json(std::uint64_t p, std::uint64_t e) {
  BigInt v = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(e));
  if (v <= std::numeric_limits<std::int64_t>::max()) return Json(static_cast<std::int64_t>(v));
  return Json(v.str());
}

Json bigint_json(const BigInt& v) {
  if (v <= std::numeric_limits<std::int64_t>::max() && v >= std::numeric_limits<std::int64_t>::min()) {
    return Json(static_cast<std::int64_t>(v));
  }
  return Json(v.str());
}

std::string polynomial_text(std::uint64_t /*p*/, const Vector& lower) {
  const std::size_t k = lower.size();
  std::string out = k == 1 ? "x" : "x^" + std::to_string(k);
  for (std::size_t d = k; d-- > 0;) {
    if (lower[d] == 0) continue;
    std::string c = lower[d] == 1 && d > 0 ? "" : std::to_string(lower[d]);
    std::string x = d == 0 ? "" : d == 1 ? "x" : "x^" + std::to_string(d);
    out += "+" + c + x;
  }
  return out;
}

Json group_json(const FgAbelianGroup& g, std::optional<std::uint64_t> p) {
  Json out{{"descriptor", g.descriptor()}, {"invariant_factors", g.invariant_factors()}, {"free_rank", g.free_rank()}};
  out["order"] = g.order() ? Json(*g.order()) : Json(nullptr);
  if (p) out["p_power_torsion"] = g.is_p_power_torsion(*p);
  return out;
}

template <class Ctx>
std::vector<std::string> formatted(const Ctx& ctx, const std::vector<typename Ctx::Element>& xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(ctx.format(x));
  return out;
}

// ---- subcommands ----

Json cmd_ring_info(const Options& o) {
  if (is_integer_ring(o.ring)) {
    Json out{{"command", "ring-info"}, {"ring", "Z"}, {"precision", nullptr}, {"frobenius", "identity"}};
    if (!o.group.empty()) out["group"] = group_json(group_from(o), std::nullopt);
    return out;
  }
  const WittRing ring = ring_from(o);
  Json components = Json::array();
  for (std::size_t i = 0; i < ring.component_count(); ++i) {
    components.push_back(Json{{"degree", ring.component_degree(i)},
                              {"residue_polynomial", polynomial_text(ring.prime(), ring.residue_field(i).polynomial)},
                              {"lifted_modulus", polynomial_text(ring.prime(), ring.lifted_modulus(i))},
                              {"frobenius_image", ring.format_component(ring.frobenius_image(i), i)}});
  }
  Json out{{"command", "ring-info"},
           {"ring", ring.descriptor()},
           {"prime", ring.prime()},
           {"precision", ring.digits()},
           {"dimension", ring.dimension()},
           {"size", power_json(ring.prime(), ring.log_size())},
           {"component_count", ring.component_count()},
           {"components", components}};
  if (!o.group.empty()) out["group"] = group_json(group_from(o), ring.prime());
  return out;
}

Json cmd_delta_eval(const Options& o) {
  const Json input = parse_element_flag(o);
  Json out{{"command", "delta-eval"}};
  auto fill = [&](const auto& ctx, const auto& x, std::uint64_t p) {
    auto d = delta_p(ctx, x, p);
    const auto phi = ctx.frobenius(x, p);
    const auto ps = psi(ctx, x, p);
    out["ring"] = ctx.coefficients().descriptor();
    out["group"] = ctx.group().descriptor();
    out["prime"] = p;
    out["input"] = element_to_json(ctx, x);
    out["precision_in"] = precision_json(ctx.precision());
    out["delta"] = element_to_json(d.context, d.value);
    out["precision_out"] = precision_json(d.precision());
    out["frobenius"] = element_to_json(ctx, phi);
    out["psi"] = element_to_json(ctx, ps);
    out["psi_equals_frobenius"] = ps == phi;
  };
  if (is_integer_ring(o.ring)) {
    IntegerGroupRing ctx(IntegerRing{}, group_from(o));
    fill(ctx, element_from_json(ctx, input), integer_prime(o));
  } else {
    const WittRing ring = ring_from(o);
    WittGroupRing ctx(ring, group_from(o));
    fill(ctx, element_from_json(ctx, input), prime_for(o, ring));
  }
  return out;
}

Json cmd_rank1_enumerate(const Options& o) {
  const WittRing ring = ring_from(o);
  const std::uint64_t p = prime_for(o, ring);
  WittGroupRing ctx(ring, group_from(o));
  const auto units = enumerate_rank_one_reduced(ctx, p, o.depth, o.jobs);
  const auto taut = tautological_units(ctx);
  Json chains = Json::array();
  for (std::size_t i = 0; i < units.units.size(); ++i) {
    Json chain = Json::array();
    WittGroupRing level = ctx;
    for (const auto& x : units.lift_chains[i]) {
      level = level.at_precision(level.digits() + 1);
      chain.push_back(level.format(x));
    }
    chains.push_back(chain);
  }
  return Json{{"command", "rank1-enumerate"},
              {"ring", ring.descriptor()},
              {"group", ctx.group().descriptor()},
              {"mode", to_string(units.mode)},
              {"prime", p},
              {"precision", ring.digits()},
              {"depth", o.depth},
              {"p_power_torsion", units.p_power_torsion},
              {"units", formatted(ctx, units.units)},
              {"lift_chains", chains},
              {"counts",
               {{"candidates", units.candidates},
                {"delta_zero_at_top", units.delta_zero_at_top},
                {"survivors", units.units.size()},
                {"tautological", taut.units.size()}}},
              {"matches_tautological", units.units == taut.units}};
}

Json cmd_artin_schreier(const Options& o) {
  if (!o.group.empty()) fail(ErrorKind::UnsupportedContext, "Artin-Schreier kernels are computed on coefficient rings");
  const WittRing ring = ring_from(o);
  const auto kernel = artin_schreier_kernel(ring);
  Json basis = Json::array();
  for (const auto& b : kernel.basis) basis.push_back(coefficient_to_json(ring, b));
  return Json{{"command", "artin-schreier"},
              {"ring", ring.descriptor()},
              {"prime", ring.prime()},
              {"precision", ring.digits()},
              {"component_count", kernel.component_count},
              {"kernel_log_p", kernel.log_size},
              {"kernel_size", power_json(ring.prime(), static_cast<std::uint64_t>(kernel.log_size))},
              {"basis", basis}};
}

Json cmd_tangent_fixed(const Options& o) {
  const WittRing ring = ring_from(o);
  const FgAbelianGroup group = group_from(o);
  const auto fixed = tangent_fixed_points(ring, group);
  const std::uint64_t c = ring.component_count();
  const std::uint64_t m = *group.order();
  BigInt functions = boost::multiprecision::pow(BigInt(m), static_cast<unsigned>(c));
  const BigInt fixed_order = fixed.group.order() ? BigInt(*fixed.group.order()) : BigInt(0);
  const std::int64_t fixed_exponent = *fixed.group.exponent();
  const std::int64_t functions_exponent = *group.exponent();
  return Json{{"command", "tangent-fixed"},
              {"ring", ring.descriptor()},
              {"group", group.descriptor()},
              {"fixed_points",
               {{"group", fixed.group.descriptor()},
                {"order", bigint_json(fixed_order)},
                {"exponent", fixed_exponent},
                {"generators", fixed.generators.size()}}},
              {"locally_constant_functions",
               {{"component_count", c}, {"count", bigint_json(functions)}, {"exponent", functions_exponent}}},
              {"isomorphic", fixed_order == functions && fixed_exponent == functions_exponent}};
}

Json cmd_bass_unit(const Options& o) {
  BassUnitSpec spec{o.order, o.k, o.m > 0 ? std::optional<std::int64_t>(o.m) : std::nullopt};
  const BassUnit b = bass_cyclic_unit(spec);
  Json coeffs = Json::array();
  for (const auto& c : b.coefficients) coeffs.push_back(bigint_json(c));
  const BigInt det = regular_rep_det(b.context, b.unit);
  return Json{{"command", "bass-unit"},
              {"order", b.order},
              {"k", b.k},
              {"m", b.m},
              {"coefficients", coeffs},
              {"element", element_to_json(b.context, b.unit)},
              {"augmentation", bigint_json(b.context.augmentation(b.unit))},
              {"determinant", bigint_json(det)},
              {"is_unit", det == 1 || det == -1}};
}

Json cmd_higman_check(const Options& o) {
  const FgAbelianGroup group = group_from(o);
  if (!group.is_finite()) fail(ErrorKind::GroupNotFinite, "torsion unit search needs a finite group");
  const std::int64_t order_bound = o.order_bound > 0 ? o.order_bound : 2 * static_cast<std::int64_t>(*group.order());
  const auto report = higman_torsion_check(group, o.bound, order_bound);
  return Json{{"command", "higman-check"},
              {"group", group.descriptor()},
              {"bound", o.bound},
              {"order_bound", order_bound},
              {"candidates", report.candidates},
              {"torsion_units", formatted(report.context, report.torsion_units)},
              {"orders", report.orders},
              {"only_trivial", report.only_trivial}};
}

Json cmd_classify_integral(const Options& o) {
  if (!o.ring.empty() && !is_integer_ring(o.ring)) {
    fail(ErrorKind::UnsupportedContext, "integral classification works over Z");
  }
  IntegerGroupRing ctx(IntegerRing{}, group_from(o));
  const auto u = element_from_json(ctx, parse_element_flag(o));
  const auto verdict = integral_delta_unit_classify(ctx, u, o.prime_bound);
  Json out{{"command", "classify-integral"},
           {"group", ctx.group().descriptor()},
           {"element", element_to_json(ctx, u)},
           {"prime_bound", o.prime_bound},
           {"verdict", to_string(verdict.outcome)}};
  out["group_element"] = verdict.element ? group_element_to_json(*verdict.element) : Json(nullptr);
  out["prime"] = verdict.prime ? Json(*verdict.prime) : Json(nullptr);
  out["witness"] = verdict.witness.empty() ? Json(nullptr) : Json(verdict.witness);
  out["primes_queried"] = verdict.primes_queried;
  return out;
}

Json cmd_idempotents(const Options& o) {
  const WittRing ring = ring_from(o);
  Json out{{"command", "idempotents"}, {"ring", ring.descriptor()}};
  if (o.group.empty()) {
    const auto d = idempotent_decomposition(ring);
    out["count"] = d.size();
    out["idempotents"] = formatted(ring, d.idempotents);
  } else {
    WittGroupRing ctx(ring, group_from(o));
    const auto d = idempotent_decomposition(ctx);
    out["group"] = ctx.group().descriptor();
    out["count"] = d.size();
    out["idempotents"] = formatted(ctx, d.idempotents);
  }
  return out;
}

template <class Ctx>
Json axiom_report(const Ctx& ctx, std::uint64_t p, const std::string& mode,
                  const std::vector<std::pair<typename Ctx::Element, typename Ctx::Element>>& pairs) {
  const auto report = verify_delta_axioms(ctx, p, pairs);
  Json out{{"command", "verify-axioms"},
           {"ring", ctx.coefficients().descriptor()},
           {"group", ctx.group().descriptor()},
           {"prime", p},
           {"mode", mode},
           {"pairs_checked", report.pairs_checked},
           {"passed", report.passed}};
  if (report.counterexample) {
    const auto& c = *report.counterexample;
    out["counterexample"] = Json{{"identity", c.identity}, {"x", c.x}, {"y", c.y}, {"lhs", c.lhs}, {"rhs", c.rhs}};
  } else {
    out["counterexample"] = nullptr;
  }
  return out;
}

Json cmd_verify_axioms(const Options& o) {
  std::mt19937_64 rng(o.seed);
  if (is_integer_ring(o.ring)) {
    IntegerGroupRing ctx(IntegerRing{}, group_from(o));
    if (!ctx.group().is_finite()) fail(ErrorKind::GroupNotFinite, "random sampling needs a finite group");
    const auto elements = ctx.group().enumerate();
    std::uniform_int_distribution<std::int64_t> coeff(-o.bound, o.bound);
    auto sample = [&] {
      IntegerGroupRing::Element x;
      for (const auto& m : elements) ctx.add_into(x, ctx.basis(m, BigInt(coeff(rng))));
      return x;
    };
    std::vector<std::pair<IntegerGroupRing::Element, IntegerGroupRing::Element>> pairs;
    for (std::size_t i = 0; i < o.samples; ++i) {
      auto x = sample();
      pairs.emplace_back(std::move(x), sample());
    }
    return axiom_report(ctx, integer_prime(o), "random", pairs);
  }
  const WittRing ring = ring_from(o);
  WittGroupRing ctx(ring, group_from(o));
  const std::uint64_t p = prime_for(o, ring);
  std::vector<std::pair<WittGroupRing::Element, WittGroupRing::Element>> pairs;
  const double log2_pairs = 2.0 * log2_power(p, ctx.dimension() * static_cast<std::size_t>(ctx.digits()));
  if (log2_pairs <= 16.0) {
    std::vector<WittGroupRing::Element> all;
    for_each_element(ctx, [&](const WittGroupRing::Element& x) { all.push_back(x); });
    for (const auto& x : all) {
      for (const auto& y : all) pairs.emplace_back(x, y);
    }
    return axiom_report(ctx, p, "exhaustive", pairs);
  }
  std::uniform_int_distribution<std::uint64_t> digit(0, ctx.modulus().value() - 1);
  auto sample = [&] {
    Vector v(ctx.dimension());
    for (auto& c : v) c = digit(rng);
    return ctx.from_coords(v);
  };
  for (std::size_t i = 0; i < o.samples; ++i) {
    auto x = sample();
    pairs.emplace_back(std::move(x), sample());
  }
  return axiom_report(ctx, p, "random", pairs);
}

std::string render_table(const Json& j) {
  std::ostringstream out;
  for (const auto& [key, value] : j.items()) {
    out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  }
  return out.str();
}

Json error_json(const std::string& kind, const std::string& detail) {
  return Json{{"error", {{"kind", kind}, {"detail", detail}}}};
}

}  // namespace

CommandResult run_command(const std::vector<std::string>& args) {
  Options o;
  CLI::App app{"Exact delta-ring arithmetic over truncated Witt rings and group rings", "deltaring"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  using Handler = std::function<Json(const Options&)>;
  std::map<CLI::App*, Handler> handlers;
  auto sub = [&](const char* name, const char* help, Handler h) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("--output", o.output, "json or table")->check(CLI::IsMember({"json", "table"}));
    handlers.emplace(s, std::move(h));
    return s;
  };
  auto ring_opt = [&](CLI::App* s) { s->add_option("--ring", o.ring, "ring descriptor, e.g. Zp(2,3) or W(2,2,2); Z for the integers"); };
  auto group_opt = [&](CLI::App* s) { s->add_option("--group", o.group, "group descriptor, e.g. C4+Z^1"); };
  auto prime_opt = [&](CLI::App* s) { s->add_option("--prime", o.prime, "the prime p"); };
  auto precision_opt = [&](CLI::App* s) {
    s->add_option("--precision", o.precision, "override the ring precision")->check(CLI::Range(1, 64));
  };

  CLI::App* s = sub("ring-info", "Describe a ring and optional group", cmd_ring_info);
  ring_opt(s), group_opt(s), precision_opt(s);
  s = sub("delta-eval", "Evaluate delta_p, psi and the Frobenius lift on an element", cmd_delta_eval);
  ring_opt(s), group_opt(s), prime_opt(s), precision_opt(s);
  s->add_option("--element", o.element, "element as JSON");
  s = sub("rank1-enumerate", "Enumerate reduced rank-one units to a lifting depth", cmd_rank1_enumerate);
  ring_opt(s), group_opt(s), prime_opt(s), precision_opt(s);
  s->add_option("--depth", o.depth, "number of delta-Hensel lifts")->check(CLI::Range(0, 16));
  s->add_option("--jobs", o.jobs, "worker threads")->check(CLI::Range(1, 256));
  s = sub("artin-schreier", "Kernel of phi - 1 on a coefficient ring", cmd_artin_schreier);
  ring_opt(s), group_opt(s), precision_opt(s);
  s = sub("tangent-fixed", "Fixed points of phi (x) id on A (x) M", cmd_tangent_fixed);
  ring_opt(s), group_opt(s), precision_opt(s);
  s = sub("bass-unit", "Bass cyclic unit of Z[C_n]", cmd_bass_unit);
  s->add_option("--order", o.order, "cyclic order n")->required();
  s->add_option("--k", o.k, "exponent k prime to n")->required();
  s->add_option("--m", o.m, "power m with k^m = 1 mod n (default: the order of k)");
  s = sub("higman-check", "Torsion units of Z[M] with bounded coefficients", cmd_higman_check);
  group_opt(s);
  s->add_option("--bound", o.bound, "coefficient bound B")->check(CLI::Range(0, 64));
  s->add_option("--order-bound", o.order_bound, "largest order N tested");
  s = sub("classify-integral", "Classify a unit of Z[M] as tautological or reject it by a prime", cmd_classify_integral);
  ring_opt(s), group_opt(s);
  s->add_option("--element", o.element, "element as JSON");
  s->add_option("--prime-bound", o.prime_bound, "largest prime queried");
  s = sub("idempotents", "Primitive idempotents of a finite ring or group ring", cmd_idempotents);
  ring_opt(s), group_opt(s), precision_opt(s);
  s = sub("verify-axioms", "Check the delta-ring identities on all or sampled pairs", cmd_verify_axioms);
  ring_opt(s), group_opt(s), prime_opt(s), precision_opt(s);
  s->add_option("--seed", o.seed, "random seed");
  s->add_option("--samples", o.samples, "number of sampled pairs");
  s->add_option("--bound", o.bound, "coefficient bound for integer samples");

  CommandResult result;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    return {0, app.help()};
  } catch (const CLI::CallForAllHelp&) {
    return {0, app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError& e) {
    return {2, error_json("UsageError", e.what()).dump(2) + "\n"};
  }

  for (const auto& [cmd, handler] : handlers) {
    if (!cmd->parsed()) continue;
    try {
      const Json j = handler(o);
      result.output = o.output == "table" ? render_table(j) : j.dump(2) + "\n";
      result.exit_code = 0;
    } catch (const Error& e) {
      result.exit_code = is_resource_limit(e.kind()) ? 3 : 2;
      result.output = error_json(std::string(to_string(e.kind())), e.detail()).dump(2) + "\n";
    } catch (const std::exception& e) {
      result.exit_code = 1;
      result.output = error_json("InternalError", e.what()).dump(2) + "\n";
    }
    return result;
  }
  return {2, error_json("UsageError", "no subcommand given").dump(2) + "\n"};
}

}  // namespace deltaring
