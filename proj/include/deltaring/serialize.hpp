#pragma once

// JSON encoding of group-ring elements:
//   {"group": G, "ring": R, "terms": [{"elt": [coords], "coeff": c}, ...]}
// with terms in canonical group order. A coefficient is a string for
// single-factor rings and an array of strings (one per factor) for products.

#include <json.hpp>

#include "deltaring/group_ring.hpp"

namespace deltaring {

using Json = nlohmann::ordered_json;

Json group_element_to_json(const GroupElement& m);
GroupElement group_element_from_json(const FgAbelianGroup& group, const Json& j);

Json coefficient_to_json(const WittRing& ring, const WittRing::Element& a);
WittRing::Element coefficient_from_json(const WittRing& ring, const Json& j);

Json element_to_json(const WittGroupRing& ctx, const WittGroupRing::Element& x);
Json element_to_json(const IntegerGroupRing& ctx, const IntegerGroupRing::Element& x);

/// Accepts the object form above, or a bare array of terms. Declared ring and
/// group descriptors, when present, must match the context.
WittGroupRing::Element element_from_json(const WittGroupRing& ctx, const Json& j);
IntegerGroupRing::Element element_from_json(const IntegerGroupRing& ctx, const Json& j);

}  // namespace deltaring
