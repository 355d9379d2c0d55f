#include "deltaring/serialize.hpp"

#include "deltaring/descriptor.hpp"

namespace deltaring {

namespace {

const Json& terms_of(const Json& j, const std::string& ring, const std::string& group) {
  if (j.is_array()) return j;
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array()) {
    fail(ErrorKind::ValidationError, "element must be an object with a \"terms\" array");
  }
  auto canonical_ring = [](const Json& d) {
    if (!d.is_string()) fail(ErrorKind::ValidationError, "ring descriptor must be a string");
    const auto text = d.get<std::string>();
    return text == "Z" ? text : build_ring(parse_ring_descriptor(text)).descriptor();
  };
  auto canonical_group = [](const Json& d) {
    if (!d.is_string()) fail(ErrorKind::ValidationError, "group descriptor must be a string");
    return build_group(parse_group_descriptor(d.get<std::string>())).descriptor();
  };
  if (j.contains("ring") && canonical_ring(j["ring"]) != ring) {
    fail(ErrorKind::ContextMismatch, "element ring " + j["ring"].dump() + " differs from " + ring);
  }
  if (j.contains("group") && canonical_group(j["group"]) != group) {
    fail(ErrorKind::ContextMismatch, "element group " + j["group"].dump() + " differs from " + group);
  }
  return j["terms"];
}

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return j.dump();
  fail(ErrorKind::ValidationError, "coefficient must be a string or an integer");
}

template <class Ctx, class ParseCoeff>
typename Ctx::Element parse_terms(const Ctx& ctx, const Json& terms, ParseCoeff parse_coeff) {
  typename Ctx::Element out;
  for (const auto& term : terms) {
    if (!term.is_object() || !term.contains("elt") || !term.contains("coeff")) {
      fail(ErrorKind::ValidationError, "each term needs \"elt\" and \"coeff\"");
    }
    const GroupElement m = group_element_from_json(ctx.group(), term["elt"]);
    ctx.add_into(out, ctx.basis(m, parse_coeff(term["coeff"])));
  }
  return out;
}

}  // namespace

Json group_element_to_json(const GroupElement& m) {
  Json out = Json::array();
  for (auto c : m.coords) out.push_back(c);
  return out;
}

GroupElement group_element_from_json(const FgAbelianGroup& group, const Json& j) {
  if (!j.is_array()) fail(ErrorKind::ValidationError, "group element must be an array of integers");
  std::vector<std::int64_t> coords;
  for (const auto& c : j) {
    if (!c.is_number_integer()) fail(ErrorKind::ValidationError, "group coordinates must be integers");
    coords.push_back(c.get<std::int64_t>());
  }
  if (coords.size() != group.rank()) {
    fail(ErrorKind::GroupMismatch, "group element has " + std::to_string(coords.size()) + " coordinates, expected " +
                                       std::to_string(group.rank()));
  }
  return group.make(std::move(coords));
}

Json coefficient_to_json(const WittRing& ring, const WittRing::Element& a) {
  if (ring.component_count() == 1) return ring.format_component(a, 0);
  Json out = Json::array();
  for (std::size_t i = 0; i < ring.component_count(); ++i) out.push_back(ring.format_component(a, i));
  return out;
}

WittRing::Element coefficient_from_json(const WittRing& ring, const Json& j) {
  if (ring.component_count() == 1) return ring.parse_component(scalar_text(j), 0);
  if (!j.is_array() || j.size() != ring.component_count()) {
    fail(ErrorKind::ValidationError,
         "product coefficient must be an array of " + std::to_string(ring.component_count()) + " entries");
  }
  WittRing::Element out = ring.zero();
  for (std::size_t i = 0; i < ring.component_count(); ++i) ring.add_into(out, ring.parse_component(scalar_text(j[i]), i));
  return out;
}

Json element_to_json(const WittGroupRing& ctx, const WittGroupRing::Element& x) {
  Json terms = Json::array();
  for (const auto& [m, a] : x) {
    terms.push_back(Json{{"elt", group_element_to_json(m)}, {"coeff", coefficient_to_json(ctx.coefficients(), a)}});
  }
  return Json{{"group", ctx.group().descriptor()}, {"ring", ctx.coefficients().descriptor()}, {"terms", terms}};
}

Json element_to_json(const IntegerGroupRing& ctx, const IntegerGroupRing::Element& x) {
  Json terms = Json::array();
  for (const auto& [m, a] : x) terms.push_back(Json{{"elt", group_element_to_json(m)}, {"coeff", a.str()}});
  return Json{{"group", ctx.group().descriptor()}, {"ring", "Z"}, {"terms", terms}};
}

WittGroupRing::Element element_from_json(const WittGroupRing& ctx, const Json& j) {
  const Json& terms = terms_of(j, ctx.coefficients().descriptor(), ctx.group().descriptor());
  return parse_terms(ctx, terms, [&](const Json& c) { return coefficient_from_json(ctx.coefficients(), c); });
}

IntegerGroupRing::Element element_from_json(const IntegerGroupRing& ctx, const Json& j) {
  const Json& terms = terms_of(j, "Z", ctx.group().descriptor());
  return parse_terms(ctx, terms, [&](const Json& c) { return ctx.coefficients().parse(scalar_text(c)); });
}

}  // namespace deltaring
