#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "foelkit/arc_basis.hpp"
#include "foelkit/chain.hpp"
#include "foelkit/chain_io.hpp"
#include "foelkit/dense_ed.hpp"
#include "foelkit/errors.hpp"
#include "foelkit/pf_compare.hpp"
#include "foelkit/spectra.hpp"
#include "foelkit/tl_engine.hpp"

namespace py = pybind11;
using namespace foel;

namespace {

HalfInteger to_half_integer(const py::object& obj) {
  if (py::isinstance<HalfInteger>(obj)) return obj.cast<HalfInteger>();
  if (py::isinstance<py::str>(obj)) return HalfInteger::parse(obj.cast<std::string>());
  if (py::isinstance<py::int_>(obj)) return HalfInteger::from_int(obj.cast<int64_t>());
  throw py::type_error("expected a spin as HalfInteger, string like '3/2', or int");
}

SpinChainSpec make_chain(const py::sequence& spins, const std::vector<double>& couplings,
                         const std::string& model, double t) {
  std::vector<HalfInteger> parsed;
  for (const auto& s : spins) parsed.push_back(to_half_integer(py::reinterpret_borrow<py::object>(s)));
  Model m = Model::heisenberg();
  if (model == "bilinear-biquadratic") {
    m = Model::bilinear_biquadratic(t);
  } else if (model != "heisenberg") {
    throw py::value_error("model must be 'heisenberg' or 'bilinear-biquadratic'");
  }
  return SpinChainSpec(std::move(parsed), couplings, m);
}

SpectraOptions options_from(const std::string& method) {
  SpectraOptions options;
  if (method == "dense") {
    options.method = MethodChoice::Dense;
  } else if (method == "sector") {
    options.method = MethodChoice::Sector;
  } else if (method != "auto") {
    throw py::value_error("method must be 'auto', 'dense' or 'sector'");
  }
  return options;
}

py::dict table_to_dicts(const EnergyTable& table) {
  py::dict out;
  py::list rows;
  for (const auto& e : table.entries) {
    py::dict row;
    row["S"] = e.S.str();
    row["S_doubled"] = e.S.doubled();
    row["dim"] = e.dimension;
    row["energy"] = e.energy;
    row["method"] = to_string(e.method);
    rows.append(row);
  }
  out["entries"] = rows;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Total-spin sector spectra and ordering checks for ferromagnetic spin chains";

  py::register_exception<NotAdmissible>(m, "NotAdmissibleError");
  py::register_exception<DimensionTooLarge>(m, "DimensionTooLargeError");

  py::class_<HalfInteger>(m, "HalfInteger")
      .def(py::init([](const py::object& o) { return to_half_integer(o); }))
      .def_static("from_doubled", &HalfInteger::from_doubled)
      .def_property_readonly("doubled", &HalfInteger::doubled)
      .def_property_readonly("value", &HalfInteger::value)
      .def("__str__", &HalfInteger::str)
      .def("__repr__", [](const HalfInteger& h) { return "HalfInteger('" + h.str() + "')"; })
      .def("__eq__", [](const HalfInteger& a, const HalfInteger& b) { return a == b; })
      .def("__lt__", [](const HalfInteger& a, const HalfInteger& b) { return a < b; })
      .def("__hash__", [](const HalfInteger& h) { return h.doubled(); });

  py::class_<SpinChainSpec>(m, "SpinChain")
      .def(py::init(&make_chain), py::arg("spins"), py::arg("couplings"),
           py::arg("model") = "heisenberg", py::arg("t") = 0.0)
      .def_property_readonly("length", &SpinChainSpec::length)
      .def_property_readonly("hilbert_dim", &SpinChainSpec::hilbert_dim)
      .def_property_readonly("spins",
                             [](const SpinChainSpec& c) {
                               std::vector<std::string> out;
                               for (HalfInteger s : c.spins()) out.push_back(s.str());
                               return out;
                             })
      .def_property_readonly("couplings",
                             [](const SpinChainSpec& c) { return c.couplings(); })
      .def("__repr__", [](const SpinChainSpec& c) {
        std::ostringstream os;
        os << "SpinChain([";
        for (int64_t x = 0; x < c.length(); ++x) {
          if (x) os << ", ";
          os << "'" << c.spin(x).str() << "'";
        }
        os << "])";
        return os.str();
      });

  py::class_<ArcDiagram>(m, "ArcDiagram")
      .def_readonly("strand_count", &ArcDiagram::strand_count)
      .def_readonly("arcs", &ArcDiagram::arcs)
      .def_property_readonly("total_spin",
                             [](const ArcDiagram& d) { return d.total_spin().str(); })
      .def("__str__", &ArcDiagram::str)
      .def("__repr__", &ArcDiagram::str);

  m.def("max_total_spin",
        [](const SpinChainSpec& chain) { return max_total_spin(chain).str(); });
  m.def("multiplicity", [](const SpinChainSpec& chain, const py::object& S) {
    return multiplicity(chain, to_half_integer(S));
  });
  m.def("admissible_spins", [](const SpinChainSpec& chain) {
    std::vector<std::string> out;
    for (HalfInteger s : admissible_spins(chain)) out.push_back(s.str());
    return out;
  });

  m.def("enumerate_hw_basis", [](const SpinChainSpec& chain, const py::object& S) {
    return enumerate_hw_basis(chain, to_half_integer(S));
  });

  m.def(
      "sector_hamiltonian",
      [](const SpinChainSpec& chain, const py::object& S) {
        const SparseSectorMatrix m = sector_hamiltonian(chain, to_half_integer(S));
        std::vector<int64_t> rows, cols;
        std::vector<double> values;
        for (const auto& t : m.triplets) {
          rows.push_back(t.row);
          cols.push_back(t.col);
          values.push_back(t.value);
        }
        py::dict out;
        out["dim"] = m.dim;
        out["rows"] = rows;
        out["cols"] = cols;
        out["values"] = values;
        return out;
      },
      py::arg("chain"), py::arg("S"),
      "Sector matrix as triplet arrays (dim, rows, cols, values)");

  m.def(
      "min_energy_sector",
      [](const SpinChainSpec& chain, const py::object& S, const std::string& method) {
        const SectorEnergy e = min_energy_sector(chain, to_half_integer(S),
                                                 options_from(method));
        return py::make_tuple(e.energy, e.dimension);
      },
      py::arg("chain"), py::arg("S"), py::arg("method") = "auto");

  m.def(
      "energy_table",
      [](const SpinChainSpec& chain, const std::string& method) {
        return table_to_dicts(energy_table(chain, options_from(method)));
      },
      py::arg("chain"), py::arg("method") = "auto");

  m.def(
      "foel_check",
      [](const SpinChainSpec& chain, const std::string& method) {
        const FoelReport report = foel_check(chain, options_from(method));
        py::dict out = table_to_dicts(report.table);
        out["status"] = to_string(report.status);
        return out;
      },
      py::arg("chain"), py::arg("method") = "auto");

  m.def(
      "spectral_gap",
      [](const SpinChainSpec& chain, const std::string& method) {
        return spectral_gap(chain, options_from(method));
      },
      py::arg("chain"), py::arg("method") = "auto");

  m.def(
      "eigenvalues_below",
      [](const SpinChainSpec& chain, double e_max, const std::string& method) {
        py::list out;
        for (const auto& [s, e] : eigenvalues_below(chain, e_max, options_from(method))) {
          out.append(py::make_tuple(s.str(), e));
        }
        return out;
      },
      py::arg("chain"), py::arg("e_max"), py::arg("method") = "auto");

  m.def("biquadratic_sweep", [](int64_t L, const std::vector<double>& ts) {
    py::list out;
    for (const auto& [t, report] : biquadratic_sweep(L, ts)) {
      py::dict row = table_to_dicts(report.table);
      row["t"] = t;
      row["status"] = to_string(report.status);
      out.append(row);
    }
    return out;
  });

  m.def("version", [] { return std::string(kToolVersion); });
}
