#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cantorv/algebra_spec.hpp"
#include "cantorv/cantor_terms.hpp"
#include "cantorv/centralizer.hpp"
#include "cantorv/cones.hpp"
#include "cantorv/elements.hpp"
#include "cantorv/error.hpp"
#include "cantorv/serialize.hpp"
#include "cantorv/stein.hpp"

namespace py = pybind11;
using namespace cantorv;

namespace {

using PySpec = std::shared_ptr<AlgebraSpec>;

PySpec unconst(SpecPtr const& s) { return std::const_pointer_cast<AlgebraSpec>(s); }

py::dict complex_summary(SimplicialComplex const& k, bool rational) {
  auto h = homology(k, rational);
  py::dict out;
  out["vertices"] = k.vertex_count;
  out["f_vector"] = k.f_vector();
  out["euler"] = k.euler_characteristic();
  out["betti_gf2"] = h.betti_gf2;
  if (h.betti_q) {
    out["betti_q"] = *h.betti_q;
  }
  out["empty"] = h.empty;
  return out;
}

}  // namespace

PYBIND11_MODULE(_cantorv, m) {
  m.doc() = "Cantor algebras, their bases and the groups acting on them";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<SpecError>(m, "SpecError", error.ptr());
  py::register_exception<InvalidArgument>(m, "InvalidArgument", error.ptr());
  py::register_exception<SpecMismatch>(m, "SpecMismatch", error.ptr());
  py::register_exception<NotAdmissible>(m, "NotAdmissible", error.ptr());
  py::register_exception<NotComparable>(m, "NotComparable", error.ptr());
  py::register_exception<NotBounded>(m, "NotBounded", error.ptr());
  auto cap = py::register_exception<CapExceeded>(m, "CapExceeded", error.ptr());
  py::register_exception<IterationCapExceeded>(m, "IterationCapExceeded", cap.ptr());
  py::register_exception<ParseError>(m, "ParseError", error.ptr());

  py::class_<AlgebraSpec, PySpec>(m, "Spec")
      .def(py::init([](std::string const& text) { return unconst(parse_spec_ptr(text)); }),
           py::arg("text"))
      .def_property_readonly("roots", &AlgebraSpec::roots)
      .def_property_readonly("d", &AlgebraSpec::d)
      .def_property_readonly("block_count", &AlgebraSpec::block_count)
      .def_property_readonly("color_count", &AlgebraSpec::color_count)
      .def("arity", &AlgebraSpec::arity, py::arg("color"))
      .def("block_of", [](AlgebraSpec const& s, int c) { return s.color(c).block; })
      .def("with_roots", [](AlgebraSpec const& s, int r) {
        return std::make_shared<AlgebraSpec>(s.with_roots(r));
      })
      .def("is_complete", [](AlgebraSpec const& s) { return is_complete(s); })
      .def("render", &AlgebraSpec::render)
      .def("__str__", &AlgebraSpec::render)
      .def("__repr__", [](AlgebraSpec const& s) { return "Spec('" + s.render() + "')"; })
      .def("__eq__", [](AlgebraSpec const& a, AlgebraSpec const& b) { return a == b; });

  py::class_<Leaf>(m, "Leaf")
      .def(py::init([](PySpec const& spec, std::string const& text) {
             return parse_leaf(*spec, text);
           }),
           py::arg("spec"), py::arg("text"))
      .def_readonly("root", &Leaf::root)
      .def_property_readonly("coords",
                             [](Leaf const& l) {
                               std::vector<std::pair<std::int64_t, std::int64_t>> out;
                               for (auto const& iv : l.coords) {
                                 out.emplace_back(iv.index, iv.den);
                               }
                               return out;
                             })
      .def("contains", [](Leaf const& a, Leaf const& b) { return contains(a, b); })
      .def("overlaps", [](Leaf const& a, Leaf const& b) { return overlaps(a, b); })
      .def("__str__", &render_leaf)
      .def("__repr__", [](Leaf const& l) { return "Leaf('" + render_leaf(l) + "')"; })
      .def("__eq__", [](Leaf const& a, Leaf const& b) { return a == b; })
      .def("__lt__", [](Leaf const& a, Leaf const& b) { return a < b; })
      .def("__hash__", [](Leaf const& l) { return LeafHash{}(l); });

  m.def("split_leaf", [](PySpec const& s, Leaf const& l, int c) { return split_leaf(*s, l, c); });

  py::class_<Basis>(m, "Basis")
      .def_static("root", [](PySpec const& s) { return Basis::root(s); })
      .def_static("from_leaves",
                  [](PySpec const& s, std::vector<Leaf> leaves) {
                    return Basis::from_leaves(s, std::move(leaves));
                  })
      .def_static("parse",
                  [](std::string const& text, PySpec const& fallback) {
                    return read_basis(text, fallback);
                  },
                  py::arg("text"), py::arg("spec") = nullptr)
      .def_property_readonly("spec", [](Basis const& b) { return unconst(b.spec_ptr()); })
      .def_property_readonly("leaves", &Basis::leaves)
      .def("__len__", &Basis::size)
      .def("expand", py::overload_cast<Basis const&, std::size_t, int>(&expand),
           py::arg("leaf"), py::arg("color"))
      .def("contract", &contract, py::arg("family"), py::arg("color"))
      .def("script", [](Basis const& b) { return render_script(script_of(b)); })
      .def("__le__", [](Basis const& a, Basis const& b) { return leq(a, b); })
      .def("__eq__", [](Basis const& a, Basis const& b) { return a == b; })
      .def("__str__", &render_basis)
      .def("__repr__", [](Basis const& b) { return "<Basis of " + std::to_string(b.size()) + " leaves>"; });

  m.def("is_admissible", [](PySpec const& s, std::vector<Leaf> leaves) {
    return is_admissible(*s, std::move(leaves)).admissible;
  });
  m.def("leq", &leq);
  m.def("lub", &lub);
  m.def("glb", &glb);
  m.def("elementary_leq", &elementary_leq);
  m.def("very_elementary_leq", &very_elementary_leq);
  m.def("max_elementary", &max_elementary);
  m.def("elementary_core", &elementary_core);
  m.def("enumerate_bases",
        [](PySpec const& s, std::size_t max_size) {
          return enumerate_bases(s, max_size, default_enumeration_cap());
        },
        py::arg("spec"), py::arg("max_size"));

  py::class_<Element>(m, "Element")
      .def(py::init([](Basis d, Basis r, std::vector<std::size_t> p) {
             return Element(std::move(d), std::move(r), std::move(p));
           }),
           py::arg("domain"), py::arg("range"), py::arg("perm"))
      .def_static("identity", [](PySpec const& s) { return Element::identity(s); })
      .def_static("parse",
                  [](std::string const& text, PySpec const& fallback) {
                    return read_element(text, fallback);
                  },
                  py::arg("text"), py::arg("spec") = nullptr)
      .def_static("random",
                  [](PySpec const& s, std::size_t size, std::uint64_t seed) {
                    return random_element(s, size, seed);
                  },
                  py::arg("spec"), py::arg("size"), py::arg("seed"))
      .def_static("permutation", &permutation_element, py::arg("basis"), py::arg("perm"))
      .def_property_readonly("domain", &Element::domain)
      .def_property_readonly("range", &Element::range)
      .def_property_readonly("perm", &Element::perm)
      .def_property_readonly("spec", [](Element const& g) { return unconst(g.spec_ptr()); })
      // g * h applies h first
      .def("__mul__", &compose)
      .def("inverse", &invert)
      .def("__pow__", &power)
      .def("reduce", &reduce)
      .def("is_identity", &is_identity)
      .def("commutes", &commutes)
      .def("order", &order_of, py::arg("cap") = 64)
      .def("apply", &apply, py::arg("leaf"))
      .def("__eq__", &equals)
      .def("__str__", [](Element const& g) { return render_element(g); });

  py::class_<Cone>(m, "Cone")
      .def_static("empty", [](PySpec const& s) { return Cone::empty(s); })
      .def_static("full", [](PySpec const& s) { return Cone::full(s); })
      .def_static("from_leaves",
                  [](PySpec const& s, std::vector<Leaf> leaves) {
                    return Cone::from_leaves(s, std::move(leaves));
                  })
      .def_static("parse",
                  [](std::string const& text, PySpec const& fallback) {
                    return read_cone(text, fallback);
                  },
                  py::arg("text"), py::arg("spec") = nullptr)
      .def_property_readonly("support", &Cone::support)
      .def("is_empty", &Cone::is_empty)
      .def("norm", &cone_norm)
      .def("disjoint", &cone_disjoint)
      .def("__and__", &cone_intersection)
      .def("__or__", &cone_union)
      .def("__eq__", &cone_equals)
      .def("__str__", &render_cone);

  m.def("act", py::overload_cast<Element const&, Cone const&>(&act));
  m.def("act_tuple", py::overload_cast<Element const&, ConeTuple const&>(&act));
  m.def("read_cone_tuple",
        [](std::string const& text, PySpec const& fallback) { return read_cone_tuple(text, fallback); },
        py::arg("text"), py::arg("spec") = nullptr);
  m.def("is_covering", &is_covering);
  m.def("is_disjoint", &is_disjoint);
  m.def("tuple_equals", &tuple_equals);
  m.def("tuple_classify", &tuple_classify);
  m.def("tuple_witness", &tuple_witness);
  m.def("stabilizer_shape", [](ConeTuple const& t) { return tuple_stabilizer_shape(t).render(); });
  m.def("disjointify", &disjointify);

  m.def("read_group",
        [](std::string const& text, PySpec const& fallback) { return read_group(text, fallback); },
        py::arg("text"), py::arg("spec") = nullptr);
  m.def("group_order",
        [](std::vector<Element> const& gens, std::size_t cap) {
          if (gens.empty()) {
            throw InvalidArgument("empty generator list");
          }
          return close_subgroup(gens.front().spec_ptr(), gens, cap).order();
        },
        py::arg("gens"), py::arg("cap") = 64);
  m.def("centralizer_report",
        [](std::vector<Element> const& gens, std::size_t cap) {
          if (gens.empty()) {
            throw InvalidArgument("empty generator list");
          }
          auto c = centralizer_structure(close_subgroup(gens.front().spec_ptr(), gens, cap));
          py::dict out;
          out["statement"] = c.statement();
          out["report"] = c.render();
          std::vector<std::string> types;
          for (auto const& f : c.factors) {
            types.push_back(c.report.types[f.type].id);
          }
          out["factor_types"] = types;
          return out;
        },
        py::arg("gens"), py::arg("cap") = 64);
  m.def("weyl_order",
        [](std::vector<Element> const& gens, std::size_t cap) {
          if (gens.empty()) {
            throw InvalidArgument("empty generator list");
          }
          return normalizer_analysis(close_subgroup(gens.front().spec_ptr(), gens, cap))
              .weyl_order();
        },
        py::arg("gens"), py::arg("cap") = 64);

  m.def("descending_link",
        [](Basis const& a, bool very, bool rational) {
          auto link = very ? very_elementary_link(a) : descending_link(a);
          return complex_summary(link.complex, rational);
        },
        py::arg("basis"), py::arg("very") = false, py::arg("rational") = false);
  m.def("geometric_kn",
        [](Basis const& a, bool rational) { return complex_summary(geometric_Kn(a), rational); },
        py::arg("basis"), py::arg("rational") = false);
  m.def("stein_complex",
        [](PySpec const& s, std::size_t max_size, bool rational) {
          return complex_summary(build_stein(s, max_size).complex, rational);
        },
        py::arg("spec"), py::arg("max_size"), py::arg("rational") = false);
}
