// Python extension: the command dispatcher plus direct entry points for the
// main operations. Integers cross the boundary as Python ints, so exact
// integral coefficients are never truncated.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "deltaring/commands.hpp"
#include "deltaring/delta.hpp"
#include "deltaring/descriptor.hpp"
#include "deltaring/units.hpp"

namespace py = pybind11;
using namespace deltaring;

namespace {

py::object error_type;

py::int_ to_py(const BigInt& n) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(n.str().c_str(), nullptr, 10));
}

BigInt to_big(const py::handle& n) { return BigInt(py::str(py::int_(py::reinterpret_borrow<py::object>(n))).cast<std::string>()); }

WittRing ring_from(const std::string& text) { return build_ring(parse_ring_descriptor(text)); }

// Coordinates are reduced mod p^r on the Python side of the boundary, so
// negative inputs are accepted.
WittRing::Element coords_in(const WittRing& ring, const py::iterable& coords) {
  const py::int_ q(ring.modulus().value());
  Vector v;
  for (const auto& c : coords) v.push_back(py::reinterpret_borrow<py::object>(c).attr("__mod__")(q).cast<std::uint64_t>());
  return ring.from_coords(v);
}

std::vector<std::uint64_t> coords_out(const WittRing& ring, const WittRing::Element& x) { return ring.to_coords(x); }

IntegerGroupRing cyclic_integral(std::int64_t n) { return IntegerGroupRing(IntegerRing{}, FgAbelianGroup::cyclic(n)); }

// Coefficient of g^i at position i.
IntegerGroupRing::Element cyclic_in(const IntegerGroupRing& ctx, const py::sequence& coeffs) {
  const auto n = ctx.group().order().value();
  if (coeffs.size() != n) throw py::value_error("expected " + std::to_string(n) + " coefficients");
  IntegerGroupRing::Element x;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    ctx.add_into(x, ctx.basis(ctx.group().make({static_cast<std::int64_t>(i)}), to_big(coeffs[i])));
  }
  return x;
}

py::list cyclic_out(const IntegerGroupRing& ctx, const IntegerGroupRing::Element& x) {
  py::list out;
  for (const auto& m : ctx.group().enumerate()) {
    const auto it = x.find(m);
    out.append(it == x.end() ? py::int_(0) : to_py(it->second));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "delta-ring arithmetic on truncated Witt rings and group rings";

  error_type = py::exception<Error>(m, "DeltaRingError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      // args = (kind, detail)
      PyErr_SetObject(error_type.ptr(), py::make_tuple(std::string(to_string(e.kind())), e.detail()).ptr());
    }
  });

  m.def(
      "run_command",
      [](const std::vector<std::string>& args) {
        CommandResult r;
        {
          py::gil_scoped_release release;
          r = run_command(args);
        }
        return py::make_tuple(r.exit_code, r.output);
      },
      py::arg("args"), "Run a subcommand; returns (exit_code, output).");

  m.def(
      "delta",
      [](const std::string& ring, const py::iterable& coords, std::optional<std::uint64_t> p) {
        const WittRing a = ring_from(ring);
        const auto d = delta_p(a, coords_in(a, coords), p.value_or(a.prime()));
        return coords_out(d.context, d.value);
      },
      py::arg("ring"), py::arg("coords"), py::arg("p") = py::none(),
      "delta_p of an element of a truncated Witt ring; the result has one digit less.");

  m.def(
      "frobenius",
      [](const std::string& ring, const py::iterable& coords) {
        const WittRing a = ring_from(ring);
        return coords_out(a, a.frobenius(coords_in(a, coords)));
      },
      py::arg("ring"), py::arg("coords"));

  m.def(
      "artin_schreier_kernel_size",
      [](const std::string& ring) {
        const WittRing a = ring_from(ring);
        return py::int_(a.prime()).attr("__pow__")(artin_schreier_kernel(a).log_size);
      },
      py::arg("ring"), "Number of x with phi(x) = x.");

  m.def(
      "rank_one_units",
      [](const std::string& ring, const std::string& group, int depth, unsigned jobs) {
        const WittGroupRing ctx(ring_from(ring), build_group(parse_group_descriptor(group)));
        std::vector<std::string> out;
        {
          py::gil_scoped_release release;
          const auto set = enumerate_rank_one_reduced(ctx, ctx.prime(), depth, jobs);
          for (const auto& u : set.units) out.push_back(ctx.format(u));
        }
        return out;
      },
      py::arg("ring"), py::arg("group"), py::arg("depth") = 1, py::arg("jobs") = 1,
      "Reduced units with delta = 0 that lift through the given depth.");

  m.def(
      "bass_unit",
      [](std::int64_t order, std::int64_t k, std::optional<std::int64_t> exponent) {
        const auto b = bass_cyclic_unit({order, k, exponent});
        return cyclic_out(b.context, b.unit);
      },
      py::arg("order"), py::arg("k"), py::arg("m") = py::none(), "Bass cyclic unit in Z[C_n] as a coefficient list.");

  m.def(
      "integral_delta",
      [](const py::sequence& coeffs, std::uint64_t p) {
        const auto ctx = cyclic_integral(static_cast<std::int64_t>(coeffs.size()));
        return cyclic_out(ctx, delta_p(ctx, cyclic_in(ctx, coeffs), p).value);
      },
      py::arg("coeffs"), py::arg("p"), "delta_p in Z[C_n], n = len(coeffs).");

  m.def(
      "classify_integral",
      [](const py::sequence& coeffs, std::uint64_t prime_bound) {
        const auto ctx = cyclic_integral(static_cast<std::int64_t>(coeffs.size()));
        const auto v = integral_delta_unit_classify(ctx, cyclic_in(ctx, coeffs), prime_bound);
        py::dict out;
        out["verdict"] = to_string(v.outcome);
        out["prime"] = v.prime ? py::object(py::int_(*v.prime)) : py::object(py::none());
        out["witness"] = v.witness;
        out["primes_queried"] = v.primes_queried;
        return out;
      },
      py::arg("coeffs"), py::arg("prime_bound") = 13);

  m.def(
      "higman_only_trivial",
      [](std::int64_t n, std::int64_t bound, std::int64_t order_bound) {
        return higman_torsion_check(FgAbelianGroup::cyclic(n), bound, order_bound).only_trivial;
      },
      py::arg("n"), py::arg("bound"), py::arg("order_bound"),
      "Whether the torsion units of Z[C_n] in the coefficient box are exactly the group elements.");
}
