#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <variant>

#include "transrep/fields.hpp"
#include "transrep/io.hpp"
#include "transrep/merge.hpp"
#include "transrep/setsystem.hpp"
#include "transrep/transversal.hpp"
#include "transrep/verify.hpp"

namespace py = pybind11;
using namespace transrep;

namespace {

template <class Fn>
py::object with_field(const std::string& spec, Fn&& fn) {
    if (spec == "Q" || spec == "q") return fn(RationalField{});
    if (spec.rfind("gf:", 0) == 0) return fn(PrimeField(std::stoull(spec.substr(3))));
    throw py::value_error("field must be 'Q' or 'gf:<p>'");
}

std::vector<std::size_t> resolve_subset(const SetSystem& sys,
                                        const std::optional<std::vector<std::string>>& names) {
    std::vector<std::size_t> subset;
    if (!names) {
        for (std::size_t j = 0; j < sys.ground_size(); ++j) subset.push_back(j);
        return subset;
    }
    for (const std::string& name : *names) {
        auto idx = sys.element_index(name);
        if (!idx) throw py::value_error("unknown element '" + name + "'");
        subset.push_back(*idx);
    }
    return subset;
}

template <class F>
py::list entries_as_strings(const F& f, const Matrix<F>& m) {
    py::list rows;
    for (std::size_t i = 0; i < m.rows; ++i) {
        py::list row;
        for (std::size_t j = 0; j < m.cols; ++j) row.append(f.str(m.at(i, j)));
        rows.append(std::move(row));
    }
    return rows;
}

template <class F>
py::dict representation_to_dict(const F& f, const Representation<F>& rep) {
    py::dict d;
    d["field"] = rep.field_name;
    d["row_labels"] = rep.row_labels;
    d["labels"] = rep.col_labels;
    d["entries"] = entries_as_strings(f, rep.matrix);
    py::list assignments;
    for (const auto& [tag, value] : rep.assignments) {
        py::dict a;
        a["label"] = indeterminate_label(tag);
        a["row"] = tag.set + 1;
        a["col"] = tag.element + 1;
        a["value"] = f.str(value);
        assignments.append(std::move(a));
    }
    d["assignments"] = std::move(assignments);
    d["dropped_sets"] = rep.dropped_sets;
    return d;
}

template <class F>
Matrix<F> matrix_from_entries(const F& f, const py::sequence& entries, std::size_t expected_cols) {
    std::vector<std::vector<std::string>> raw;
    for (const auto& row : entries) {
        std::vector<std::string> cells;
        for (const auto& cell : py::cast<py::sequence>(row))
            cells.push_back(py::str(cell).cast<std::string>());
        raw.push_back(std::move(cells));
    }
    Matrix<F> m(raw.size(), expected_cols, f.zero());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i].size() != expected_cols)
            throw py::value_error("matrix row " + std::to_string(i) + " has " +
                                  std::to_string(raw[i].size()) + " entries, expected " +
                                  std::to_string(expected_cols));
        for (std::size_t j = 0; j < expected_cols; ++j) m.at(i, j) = f.parse(raw[i][j]);
    }
    return m;
}

py::dict verdict_to_dict(const Verdict& v, const SetSystem& sys) {
    py::dict d;
    d["status"] = v.pass ? "pass" : "fail";
    if (v.witness) {
        py::list names;
        for (std::size_t j : *v.witness) names.append(sys.elements[j]);
        d["witness"] = std::move(names);
    }
    d["subsets_checked"] = v.subsets_checked;
    if (v.warning) d["warning"] = *v.warning;
    return d;
}

SetSystem system_from_python(const std::vector<std::string>& elements, const py::object& sets) {
    std::vector<std::pair<std::string, std::vector<std::string>>> named;
    if (py::isinstance<py::dict>(sets)) {
        for (const auto& item : py::cast<py::dict>(sets))
            named.emplace_back(py::str(item.first).cast<std::string>(),
                               py::cast<std::vector<std::string>>(item.second));
    } else {
        for (const auto& item : py::cast<py::sequence>(sets)) {
            auto pair = py::cast<py::sequence>(item);
            named.emplace_back(py::str(pair[0]).cast<std::string>(),
                               py::cast<std::vector<std::string>>(pair[1]));
        }
    }
    return SetSystem::make(elements, named);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Matrix representations of transversal matroids over exact fields";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    static py::exception<FieldExhausted> exhausted(m, "FieldExhausted");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const FieldExhausted& e) {
            py::set_error(exhausted, e.what());
        }
    });

    py::class_<SetSystem>(m, "SetSystem")
        .def(py::init(&system_from_python), py::arg("elements"), py::arg("sets"),
             "Build from element names and sets given as a dict or a list of (name, members).")
        .def_readonly("elements", &SetSystem::elements)
        .def_property_readonly("sets",
                               [](const SetSystem& sys) {
                                   py::list out;
                                   for (const NamedSet& s : sys.sets) {
                                       py::list members;
                                       for (std::size_t j : s.members)
                                           members.append(sys.elements[j]);
                                       out.append(py::make_tuple(s.name, std::move(members)));
                                   }
                                   return out;
                               })
        .def_static("parse", &parse_set_system, py::arg("text"),
                    "Parse the JSON document format or the dense 0/1 text format.")
        .def("to_json", &to_json_text)
        .def("to_dense", &to_dense_text)
        .def("__eq__", [](const SetSystem& a, const SetSystem& b) { return a == b; })
        .def("__repr__", [](const SetSystem& sys) {
            return "SetSystem(" + std::to_string(sys.ground_size()) + " elements, " +
                   std::to_string(sys.set_count()) + " sets)";
        });

    m.def(
        "represent",
        [](const SetSystem& sys, const std::string& field, bool prune) {
            MergeOptions opts;
            opts.prune_duplicates = prune;
            return with_field(field, [&](const auto& f) -> py::object {
                return representation_to_dict(f, represent(f, sys, opts));
            });
        },
        py::arg("system"), py::arg("field") = "Q", py::arg("prune") = true,
        "Run the merge and return the final matrix with its assignment log.");

    m.def(
        "trace",
        [](const SetSystem& sys, const std::string& field, bool prune) {
            MergeOptions opts;
            opts.prune_duplicates = prune;
            const SetSystem norm = normalize(sys).system;
            return with_field(field, [&](const auto& f) -> py::object {
                auto tr = trace(f, sys, opts);
                py::list iterations;
                for (const auto& rec : tr.iterations) {
                    auto j = iteration_to_json(f, rec, norm);
                    iterations.append(py::module_::import("json").attr("loads")(j.dump()));
                }
                py::dict d;
                d["iterations"] = std::move(iterations);
                d["representation"] = representation_to_dict(f, tr.representation);
                return d;
            });
        },
        py::arg("system"), py::arg("field") = "Q", py::arg("prune") = true,
        "As represent, but with one record per merge iteration.");

    m.def(
        "verify",
        [](const SetSystem& sys, const py::sequence& entries, const std::string& field,
           std::optional<std::size_t> samples, std::uint64_t seed) {
            return with_field(field, [&](const auto& f) -> py::object {
                auto matrix = matrix_from_entries(f, entries, sys.ground_size());
                Verdict v = samples ? check_representation_sampled(f, matrix, sys, *samples, seed)
                                    : check_representation(f, matrix, sys);
                return verdict_to_dict(v, sys);
            });
        },
        py::arg("system"), py::arg("entries"), py::arg("field") = "Q",
        py::arg("samples") = py::none(), py::arg("seed") = 0,
        "Compare linear rank with matroid rank on every (or sampled) column subsets.");

    m.def(
        "rank",
        [](const SetSystem& sys, const std::optional<std::vector<std::string>>& subset) {
            return matroid_rank(sys, resolve_subset(sys, subset));
        },
        py::arg("system"), py::arg("subset") = py::none());

    m.def(
        "matching",
        [](const SetSystem& sys, const std::optional<std::vector<std::string>>& subset) {
            Matching matching = max_matching(sys, resolve_subset(sys, subset));
            py::list out;
            for (const auto& [element, set] : matching.pairs)
                out.append(py::make_tuple(sys.elements[element], sys.sets[set].name));
            return out;
        },
        py::arg("system"), py::arg("subset") = py::none(),
        "A maximum matching as (element, set) name pairs.");

    m.def(
        "max_independent_sets",
        [](const SetSystem& sys, std::size_t bound) {
            py::list out;
            for (const auto& subset : enumerate_max_independent(sys, bound)) {
                py::list names;
                for (std::size_t j : subset) names.append(sys.elements[j]);
                out.append(std::move(names));
            }
            return out;
        },
        py::arg("system"), py::arg("bound") = 20);

    m.def("uniform_system", &uniform_system, py::arg("k"), py::arg("n"));

    m.def(
        "represent_uniform",
        [](std::size_t k, std::size_t n) {
            IntegerMatrix im = represent_uniform(k, n);
            py::object to_int = py::module_::import("builtins").attr("int");
            py::list rows;
            for (std::size_t i = 0; i < im.rows; ++i) {
                py::list row;
                for (std::size_t j = 0; j < im.cols; ++j) row.append(to_int(im.at(i, j).str()));
                rows.append(std::move(row));
            }
            return rows;
        },
        py::arg("k"), py::arg("n"),
        "Integer matrix representing the uniform matroid U_{k,n}.");

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "dev";
#endif
}
