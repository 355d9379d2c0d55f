#pragma once

// Text descriptors for rings and groups.
//
//   RING  := ATOM ("x" ATOM)*
//   ATOM  := "Zp(" INT "," INT ")" | "W(" INT "," INT "," INT ")"
//   GROUP := GATOM ("+" GATOM)*
//   GATOM := "Z^" INT | "C" INT
//
// Whitespace is insignificant.

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "deltaring/abelian_group.hpp"
#include "deltaring/witt_ring.hpp"

namespace deltaring {

struct RingAtom {
  enum class Kind { padic, witt };
  Kind kind = Kind::padic;
  std::uint64_t p = 0;
  int k = 1;
  int r = 1;

  bool operator==(const RingAtom&) const = default;
};

struct RingDescriptor {
  std::vector<RingAtom> atoms;

  bool operator==(const RingDescriptor&) const = default;
};

struct GroupAtom {
  enum class Kind { free, cyclic };
  Kind kind = Kind::cyclic;
  std::int64_t value = 0;

  bool operator==(const GroupAtom&) const = default;
};

struct GroupDescriptor {
  std::vector<GroupAtom> atoms;

  bool operator==(const GroupDescriptor&) const = default;
};

RingDescriptor parse_ring_descriptor(std::string_view text);
GroupDescriptor parse_group_descriptor(std::string_view text);

/// Dispatches on the leading token: "Zp(" and "W(" start rings.
std::variant<RingDescriptor, GroupDescriptor> parse_descriptor(std::string_view text);

std::string render(const RingDescriptor& d);
std::string render(const GroupDescriptor& d);

WittRing build_ring(const RingDescriptor& d);
FgAbelianGroup build_group(const GroupDescriptor& d);

}  // namespace deltaring
