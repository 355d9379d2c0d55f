#include "deltaring/descriptor.hpp"

#include <cctype>
#include <limits>

namespace deltaring {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_space();
    return pos_ == text_.size();
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) throw SyntaxError(pos_, std::string("'") + c + "'");
  }

  std::int64_t integer() {
    skip_space();
    const std::size_t start = pos_;
    std::uint64_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const std::uint64_t digit = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (value > (static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()) - digit) / 10) {
        fail(ErrorKind::ValidationError, "integer at offset " + std::to_string(start) + " is too large");
      }
      value = value * 10 + digit;
      ++pos_;
    }
    if (pos_ == start) throw SyntaxError(start, "integer");
    return static_cast<std::int64_t>(value);
  }

  std::size_t offset() {
    skip_space();
    return pos_;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

int small_int(std::int64_t v, const char* what) {
  if (v < 1 || v > 64) fail(ErrorKind::ValidationError, std::string(what) + " must lie in [1, 64]");
  return static_cast<int>(v);
}

RingAtom ring_atom(Parser& in) {
  RingAtom atom;
  const std::size_t at = in.offset();
  if (in.accept('Z')) {
    in.expect('p');
    in.expect('(');
    atom.kind = RingAtom::Kind::padic;
    atom.p = static_cast<std::uint64_t>(in.integer());
    in.expect(',');
    atom.r = small_int(in.integer(), "precision");
    in.expect(')');
  } else if (in.accept('W')) {
    in.expect('(');
    atom.kind = RingAtom::Kind::witt;
    atom.p = static_cast<std::uint64_t>(in.integer());
    in.expect(',');
    atom.k = small_int(in.integer(), "residue degree");
    in.expect(',');
    atom.r = small_int(in.integer(), "precision");
    in.expect(')');
  } else {
    throw SyntaxError(at, "'Zp(' or 'W('");
  }
  if (!is_prime(atom.p)) fail(ErrorKind::ValidationError, std::to_string(atom.p) + " is not prime");
  return atom;
}

GroupAtom group_atom(Parser& in) {
  GroupAtom atom;
  const std::size_t at = in.offset();
  if (in.accept('Z')) {
    in.expect('^');
    atom.kind = GroupAtom::Kind::free;
    atom.value = in.integer();
  } else if (in.accept('C')) {
    atom.kind = GroupAtom::Kind::cyclic;
    atom.value = in.integer();
    if (atom.value < 2) fail(ErrorKind::ValidationError, "cyclic order must be at least 2");
  } else {
    throw SyntaxError(at, "'Z^' or 'C'");
  }
  return atom;
}

}  // namespace

RingDescriptor parse_ring_descriptor(std::string_view text) {
  Parser in(text);
  RingDescriptor d;
  d.atoms.push_back(ring_atom(in));
  while (in.accept('x')) d.atoms.push_back(ring_atom(in));
  if (!in.at_end()) throw SyntaxError(in.offset(), "'x' or end of input");
  for (const auto& a : d.atoms) {
    if (a.p != d.atoms.front().p) fail(ErrorKind::ValidationError, "ring factors use different primes");
  }
  return d;
}

GroupDescriptor parse_group_descriptor(std::string_view text) {
  Parser in(text);
  GroupDescriptor d;
  d.atoms.push_back(group_atom(in));
  while (in.accept('+')) d.atoms.push_back(group_atom(in));
  if (!in.at_end()) throw SyntaxError(in.offset(), "'+' or end of input");
  return d;
}

std::variant<RingDescriptor, GroupDescriptor> parse_descriptor(std::string_view text) {
  Parser in(text);
  const char c = in.peek();
  if (c == 'W') return parse_ring_descriptor(text);
  if (c == 'Z') {
    std::size_t i = in.offset() + 1;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i < text.size() && text[i] == 'p') return parse_ring_descriptor(text);
  }
  return parse_group_descriptor(text);
}

std::string render(const RingDescriptor& d) {
  std::string out;
  for (const auto& a : d.atoms) {
    if (!out.empty()) out += "x";
    if (a.kind == RingAtom::Kind::padic) {
      out += "Zp(" + std::to_string(a.p) + "," + std::to_string(a.r) + ")";
    } else {
      out += "W(" + std::to_string(a.p) + "," + std::to_string(a.k) + "," + std::to_string(a.r) + ")";
    }
  }
  return out;
}

std::string render(const GroupDescriptor& d) {
  std::string out;
  for (const auto& a : d.atoms) {
    if (!out.empty()) out += "+";
    out += a.kind == GroupAtom::Kind::free ? "Z^" + std::to_string(a.value) : "C" + std::to_string(a.value);
  }
  return out;
}

WittRing build_ring(const RingDescriptor& d) {
  if (d.atoms.empty()) fail(ErrorKind::ValidationError, "empty ring descriptor");
  std::vector<WittRing> factors;
  for (const auto& a : d.atoms) {
    if (a.r != d.atoms.front().r) fail(ErrorKind::ValidationError, "ring factors use different precisions");
    factors.push_back(a.kind == RingAtom::Kind::padic ? WittRing::padic(a.p, a.r) : WittRing::witt(a.p, a.k, a.r));
  }
  return factors.size() == 1 ? factors.front() : WittRing::product(factors);
}

FgAbelianGroup build_group(const GroupDescriptor& d) {
  std::vector<std::int64_t> orders;
  for (const auto& a : d.atoms) {
    if (a.kind == GroupAtom::Kind::cyclic) {
      orders.push_back(a.value);
    } else {
      if (a.value > 64) fail(ErrorKind::ValidationError, "free rank too large");
      orders.insert(orders.end(), static_cast<std::size_t>(a.value), 0);
    }
  }
  return canonicalize_cyclic_sum(orders).target();
}

}  // namespace deltaring
