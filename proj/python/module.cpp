#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "shapecalc/json_io.hpp"

namespace py = pybind11;
namespace sc = shapecalc;

namespace {

// python-facing handle; the core works with shared_ptr<const Poset>
struct PyPoset {
  sc::PosetPtr ptr;
};

py::object to_py(const sc::json& doc) {
  return py::module_::import("json").attr("loads")(doc.dump());
}

sc::MonotoneMap map_from_dict(const PyPoset& dom, const PyPoset& cod,
                              const std::map<std::string, std::string>& assign) {
  std::vector<std::pair<std::string, std::string>> pairs(assign.begin(), assign.end());
  return sc::MonotoneMap::from_labels(dom.ptr, cod.ptr, pairs);
}

}  // namespace

PYBIND11_MODULE(shapecalc, m) {
  m.doc() = "Shapes of finite posets: validation, contractibility, direct/indirect "
            "certificates, and the certified Taylor graph.";

  py::register_exception<sc::error>(m, "ShapeError");

  py::class_<PyPoset>(m, "Poset")
      .def_static("build",
                  [](const std::vector<std::string>& labels,
                     const std::vector<std::pair<std::string, std::string>>& relations) {
                    return PyPoset{sc::Poset::build(labels, relations)};
                  },
                  py::arg("labels"), py::arg("relations"))
      .def("__len__", [](const PyPoset& p) { return p.ptr->size(); })
      .def_property_readonly("labels", [](const PyPoset& p) { return p.ptr->labels(); })
      .def("leq",
           [](const PyPoset& p, const std::string& a, const std::string& b) {
             return p.ptr->leq(p.ptr->index_of(a), p.ptr->index_of(b));
           })
      .def_property_readonly("initial",
                             [](const PyPoset& p) -> std::optional<std::string> {
                               auto i = p.ptr->initial();
                               if (!i) return std::nullopt;
                               return p.ptr->label(*i);
                             })
      .def_property_readonly("terminal",
                             [](const PyPoset& p) -> std::optional<std::string> {
                               auto i = p.ptr->terminal();
                               if (!i) return std::nullopt;
                               return p.ptr->label(*i);
                             })
      .def("has_all_joins", [](const PyPoset& p) { return p.ptr->has_all_joins(); })
      .def("canonical_key", [](const PyPoset& p) { return p.ptr->canonical_key(); })
      .def("to_json", [](const PyPoset& p) { return to_py(sc::poset_to_json(p.ptr)); })
      .def("__repr__", [](const PyPoset& p) {
        return "Poset(" + std::to_string(p.ptr->size()) + " elements)";
      });

  m.def(
      "induced_subposet",
      [](const PyPoset& p, const std::vector<std::string>& keep) {
        return PyPoset{sc::induced_subposet_labels(p.ptr, keep)};
      },
      py::arg("poset"), py::arg("keep"));
  m.def(
      "product",
      [](const PyPoset& a, const PyPoset& b) { return PyPoset{sc::product(a.ptr, b.ptr)}; },
      py::arg("left"), py::arg("right"));
  m.def(
      "join_of",
      [](const PyPoset& p, const std::vector<std::string>& members) -> std::optional<std::string> {
        std::vector<int> idx;
        for (const auto& l : members) idx.push_back(p.ptr->index_of(l));
        auto j = p.ptr->join(idx);
        if (!j) return std::nullopt;
        return p.ptr->label(*j);
      },
      py::arg("poset"), py::arg("members"));
  m.def(
      "down_closure",
      [](const PyPoset& p, const std::vector<std::string>& members) {
        std::vector<int> idx;
        for (const auto& l : members) idx.push_back(p.ptr->index_of(l));
        std::vector<std::string> out;
        for (int i : p.ptr->down_closure(idx)) out.push_back(p.ptr->label(i));
        return out;
      },
      py::arg("poset"), py::arg("members"));
  m.def(
      "find_isomorphism",
      [](const PyPoset& p, const PyPoset& q) -> std::optional<std::map<std::string, std::string>> {
        auto iso = sc::find_isomorphism(p.ptr, q.ptr);
        if (!iso) return std::nullopt;
        std::map<std::string, std::string> out;
        for (int i = 0; i < p.ptr->size(); ++i)
          out[p.ptr->label(i)] = q.ptr->label((*iso)[static_cast<size_t>(i)]);
        return out;
      },
      py::arg("p"), py::arg("q"));

  py::class_<sc::MonotoneMap>(m, "MonotoneMap")
      .def(py::init(&map_from_dict), py::arg("dom"), py::arg("cod"), py::arg("assign"))
      .def_property_readonly("dom", [](const sc::MonotoneMap& f) { return PyPoset{f.dom()}; })
      .def_property_readonly("cod", [](const sc::MonotoneMap& f) { return PyPoset{f.cod()}; })
      .def("__call__",
           [](const sc::MonotoneMap& f, const std::string& x) {
             return f.cod()->label(f(f.dom()->index_of(x)));
           })
      .def("predicates", [](const sc::MonotoneMap& f) {
        auto p = sc::map_predicates(f);
        py::dict out;
        out["monotone"] = p.monotone;
        out["full"] = p.full;
        out["injective"] = p.injective;
        out["preserves_initial"] = p.preserves_initial;
        if (p.preserves_joins) out["preserves_joins"] = *p.preserves_joins;
        return out;
      });

  m.def(
      "comma",
      [](const sc::MonotoneMap& f, const sc::MonotoneMap& g) {
        auto c = sc::comma(f, g);
        return py::make_tuple(PyPoset{c.poset}, c.proj_left, c.proj_right);
      },
      py::arg("f"), py::arg("g"));

  py::class_<sc::Preshape>(m, "Preshape")
      .def_property_readonly("full", [](const sc::Preshape& p) { return p.full; })
      .def_property_readonly("reduced", [](const sc::Preshape& p) { return p.reduced; })
      .def_property_readonly("domain", [](const sc::Preshape& p) { return PyPoset{p.domain()}; })
      .def_property_readonly("codomain",
                             [](const sc::Preshape& p) { return PyPoset{p.codomain()}; })
      .def_property_readonly("sigma", [](const sc::Preshape& p) { return p.sigma; })
      .def("to_json", [](const sc::Preshape& p) { return to_py(sc::preshape_to_json(p)); });

  m.def("validate_preshape", [](const sc::MonotoneMap& f) { return sc::Preshape::validate(f); });
  m.def(
      "cube_family",
      [](int n) {
        auto fam = sc::cube_family(n);
        return py::make_tuple(PyPoset{fam.star}, PyPoset{fam.cube}, fam.inclusion);
      },
      py::arg("n"));

  m.def("contractibility", [](const PyPoset& p) {
    return to_py(sc::contractibility_to_json(sc::contractibility(p.ptr)));
  });
  m.def("is_shape",
        [](const sc::Preshape& p) { return to_py(sc::shape_verdict_to_json(sc::is_shape(p))); });
  m.def("easy_shape_check", &sc::easy_shape_check);
  m.def("cubical_shape_check", &sc::cubical_shape_check);
  m.def("free_shape", [](const PyPoset& base) { return sc::free_shape(base.ptr).eta; });
  m.def("image_preshape", [](const sc::Preshape& p) { return sc::image_preshape(p).image; });
  m.def("v_sigma",
        [](const sc::Preshape& p) { return sc::Preshape::validate(sc::generator_image(p).v); });
  m.def("is_inane", [](const sc::Preshape& p) {
    auto r = sc::is_inane(p);
    py::dict out;
    out["inane"] = r.inane;
    if (r.witness) out["witness"] = *r.witness;
    return out;
  });
  m.def("e_map_valid", [](const sc::Preshape& p) { return sc::e_map(p, false).valid; });
  m.def("retract_check", &sc::retract_check);
  m.def(
      "min_cover",
      [](const std::vector<std::string>& universe,
         const std::vector<std::vector<std::string>>& family) -> py::object {
        auto mc = sc::min_cover_labels(universe, family);
        if (!mc.finite) return py::none();
        py::dict out;
        out["value"] = mc.value;
        out["witness"] = mc.witness;
        return out;
      },
      py::arg("universe"), py::arg("family"));
  m.def("n_sigma", [](const sc::Preshape& p) { return to_py(sc::nsigma_to_json(sc::n_sigma(p))); });

  m.def(
      "validate_map",
      [](const sc::Preshape& src, const sc::Preshape& dst, const sc::MonotoneMap& f,
         const sc::MonotoneMap& fhat) { return sc::validate_map(src, dst, f, fhat); },
      py::arg("src"), py::arg("dst"), py::arg("f"), py::arg("fhat"));
  py::class_<sc::PreshapeMap>(m, "PreshapeMap")
      .def_property_readonly("src", [](const sc::PreshapeMap& m_) { return m_.src; })
      .def_property_readonly("dst", [](const sc::PreshapeMap& m_) { return m_.dst; });
  m.def("is_direct",
        [](const sc::PreshapeMap& pm) { return to_py(sc::direction_to_json(sc::is_direct(pm))); });
  m.def("is_indirect", [](const sc::PreshapeMap& pm) {
    return to_py(sc::direction_to_json(sc::is_indirect(pm)));
  });
  m.def("cube_inclusion_map", &sc::cube_inclusion_map, py::arg("n"), py::arg("m"));

  m.def(
      "enumerate_posets",
      [](int max_n) {
        std::vector<PyPoset> out;
        for (auto& p : sc::enumerate_posets(max_n)) out.push_back(PyPoset{p});
        return out;
      },
      py::arg("max_n"));
  m.def(
      "classify",
      [](int gen_bound, int target_bound, int cube_bound) {
        auto inv = sc::enumerate_shapes(gen_bound, target_bound, cube_bound);
        auto graph = sc::build_taylor_graph(inv);
        auto report = sc::classify(graph);
        sc::json doc = sc::classify_report_to_json(graph, report);
        doc["inventory"] = sc::inventory_to_json(inv);
        doc["dot"] = sc::to_dot(graph);
        return to_py(doc);
      },
      py::arg("gen_bound") = 3, py::arg("target_bound") = 8, py::arg("cube_bound") = 3);
}
