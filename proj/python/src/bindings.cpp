#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gradflow/bifurcation.hpp"
#include "gradflow/canon.hpp"
#include "gradflow/diagram.hpp"
#include "gradflow/enumerator.hpp"
#include "gradflow/normal_forms.hpp"
#include "gradflow/render.hpp"
#include "gradflow/sdg_io.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace gf = gradflow;
namespace nf = gradflow::nf;

namespace {

gf::Surface surface_arg(const std::string& s) {
  const auto v = gf::parse_surface(s);
  if (!v) throw py::value_error("unknown surface '" + s + "'");
  return *v;
}

nf::FamilyId family_arg(const std::string& s) {
  const auto v = nf::parse_family(s);
  if (!v) throw py::value_error("unknown family '" + s + "'");
  return *v;
}

py::dict sn_counts(const gf::SnCounts& c) {
  py::dict d;
  for (int k = 0; k < gf::kNumSnKinds; ++k) {
    d[gf::to_string(static_cast<gf::SnKind>(k))] = c[k];
  }
  return d;
}

py::dict row_dict(const gf::ReconcileRow& r) {
  auto opt = [](const std::optional<int>& v) -> py::object {
    return v ? py::object(py::int_(*v)) : py::object(py::none());
  };
  return py::dict("surface"_a = gf::to_string(r.surface), "n_before"_a = r.n_before, "kind"_a = r.kind,
                  "computed"_a = r.computed, "per_diagram_sum"_a = opt(r.per_diagram_sum),
                  "theorem_value"_a = opt(r.theorem_value), "table_value"_a = opt(r.table_value),
                  "status"_a = gf::to_string(r.status), "note"_a = r.note);
}

py::dict zero_dict(const nf::ZeroRecord& z) {
  return py::dict("x"_a = z.x, "y"_a = z.y, "on_boundary"_a = z.on_boundary, "degenerate"_a = z.degenerate,
                  "type"_a = nf::to_string(z.type), "index"_a = z.index, "residual"_a = z.residual);
}

}  // namespace

PYBIND11_MODULE(_gradflow, m) {
  m.doc() = "Separatrix diagrams of gradient flows on the disk, annulus and pants";

  py::register_exception<gf::DiagramError>(m, "DiagramError", PyExc_ValueError);
  py::register_exception<gf::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<gf::MapError>(m, "MapError", PyExc_ValueError);
  py::register_exception<gf::CapExceeded>(m, "CapExceeded", PyExc_ValueError);

  py::class_<gf::SeparatrixDiagram>(m, "Diagram")
      .def_static("from_sdg", [](const std::string& text) { return gf::parse_sdg(text); }, "text"_a)
      .def_static("from_code", [](const std::string& hex) {
        const auto code = gf::CanonicalCode::from_hex(hex);
        if (!code) throw py::value_error("not a hex string");
        return gf::decode_code(*code);
      }, "hex"_a)
      .def_property_readonly("num_vertices", &gf::SeparatrixDiagram::num_vertices)
      .def_property_readonly("num_edges", &gf::SeparatrixDiagram::num_edges)
      .def_property_readonly("num_holes", &gf::SeparatrixDiagram::num_holes)
      .def_property_readonly("codim", &gf::SeparatrixDiagram::codim)
      .def_property_readonly("surface", [](const gf::SeparatrixDiagram& d) { return gf::to_string(gf::surface_of(d)); })
      .def_property_readonly("vertex_types", [](const gf::SeparatrixDiagram& d) {
        std::vector<std::string> out;
        for (gf::VertexType t : d.vertex_types()) out.emplace_back(gf::to_string(t));
        return out;
      })
      .def_property_readonly("code", [](const gf::SeparatrixDiagram& d) { return gf::canonical_code(d).hex(); })
      .def("validate", [](const gf::SeparatrixDiagram& d) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& v : gf::validate(d).violations) out.emplace_back(v.rule, v.location);
        return out;
      }, "Violated rules as (rule, location) pairs; empty when valid.")
      .def("index_sum", &gf::doubled_index_sum)
      .def("reverse_flow", &gf::reverse_flow)
      .def("mirror", &gf::mirror)
      .def("is_isomorphic", [](const gf::SeparatrixDiagram& a, const gf::SeparatrixDiagram& b) {
        return gf::are_isomorphic(a, b).has_value();
      }, "other"_a)
      .def("saddle_node_sites", [](const gf::SeparatrixDiagram& d) {
        std::vector<std::pair<int, std::string>> out;
        for (const auto& s : gf::saddle_node_sites(d)) out.emplace_back(s.edge, gf::to_string(s.kind));
        return out;
      })
      .def("contract", [](const gf::SeparatrixDiagram& d, int edge) { return gf::contract(d, edge); }, "edge"_a)
      .def("connection_class", [](const gf::SeparatrixDiagram& d) {
        return gf::to_string(gf::classify_connection(d));
      })
      .def("to_sdg", [](const gf::SeparatrixDiagram& d) { return gf::to_sdg(d); })
      .def("to_dot", [](const gf::SeparatrixDiagram& d) { return gf::to_dot(d); })
      .def("to_svg", &gf::to_svg)
      .def("__eq__", [](const gf::SeparatrixDiagram& a, const gf::SeparatrixDiagram& b) { return a == b; })
      .def("__repr__", [](const gf::SeparatrixDiagram& d) {
        return "<Diagram " + std::to_string(d.num_vertices()) + " points, codim " + std::to_string(d.codim()) + ">";
      });

  m.def("read_sdg", [](const std::string& path) { return gf::read_sdg_file(path); }, "path"_a);

  m.def("enumerate", [](const std::string& surface, int points, int codim, int threads) {
    gf::EnumerateOptions opts;
    opts.cap = gf::point_cap_from_env();
    opts.threads = threads;
    std::vector<gf::SeparatrixDiagram> out;
    {
      py::gil_scoped_release release;
      for (auto& c : gf::enumerate_diagrams(surface_arg(surface), points, codim, opts)) out.push_back(std::move(c.diagram));
    }
    return out;
  }, "surface"_a, "points"_a, "codim"_a = 0, "threads"_a = 0,
     "One canonical diagram per equivalence class, sorted by code.");

  m.def("sn_census", [](const std::string& surface, int n_before) {
    const auto c = gf::sn_census(surface_arg(surface), n_before);
    return sn_counts(c.totals);
  }, "surface"_a, "n_before"_a);

  m.def("connection_census", [](const std::string& surface, int points) {
    const auto c = gf::connection_census(surface_arg(surface), points);
    py::dict d;
    for (int k = 0; k < gf::kNumConnectionClasses; ++k) {
      d[gf::to_string(static_cast<gf::ConnectionClass>(k))] = c.totals[k];
    }
    return d;
  }, "surface"_a, "points"_a);

  m.def("reconcile", [] {
    gf::ReconciliationReport rep;
    {
      py::gil_scoped_release release;
      rep = gf::reconcile();
    }
    py::list rows;
    for (const auto& r : rep.rows) rows.append(row_dict(r));
    return rows;
  }, "Computed census rows next to the published values.");

  m.def("families", [] {
    std::vector<std::string> out;
    for (nf::FamilyId id : nf::kAllFamilies) out.emplace_back(nf::to_string(id));
    return out;
  });

  m.def("zeros", [](const std::string& family, double a) {
    py::list out;
    for (const auto& z : nf::zeros(nf::make_family(family_arg(family)), a)) out.append(zero_dict(z));
    return out;
  }, "family"_a, "a"_a);

  m.def("verify_family", [](const std::string& family) {
    const auto rep = nf::verify_family(family_arg(family));
    return py::make_tuple(rep.ok, rep.to_text());
  }, "family"_a, "Returns (ok, report text).");
}
