#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <Python.h>

#include "plateau/constructions.hpp"
#include "plateau/differential.hpp"
#include "plateau/distribution.hpp"
#include "plateau/dsl.hpp"
#include "plateau/io.hpp"
#include "plateau/parallel.hpp"
#include "plateau/plateaued.hpp"
#include "plateau/random.hpp"
#include "plateau/report.hpp"

namespace py = pybind11;
using namespace plateau;

namespace {

py::int_ to_py(i128 v) {
  const std::string s = to_string(v);
  return py::reinterpret_steal<py::int_>(PyLong_FromString(s.c_str(), nullptr, 10));
}

py::object json_to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

py::dict verdict_dict(const Verdict& v) {
  py::dict d;
  d["tag"] = v.tag;
  d["status"] = std::string(to_string(v.status));
  d["details"] = v.details;
  return d;
}

py::object cyc_to_py(const CycInt& c) {
  if (auto v = c.as_integer(); v && c.p() == 2) return py::int_(*v);
  return py::cast(std::vector<i64>(c.coeffs().begin(), c.coeffs().end()));
}

AnalysisOptions options(bool all, bool zero_column_only, bool ddt, bool assume_plateaued, unsigned max_profile_log) {
  AnalysisOptions o;
  o.all = all;
  o.zero_column_only = zero_column_only;
  o.ddt = ddt;
  o.assume_plateaued = assume_plateaued;
  o.max_profile_log = max_profile_log;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact value-distribution, Walsh and differential analysis of functions F_p^n -> F_p^m";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<HypothesisError>(m, "HypothesisError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);

  py::class_<FuncTable>(m, "FuncTable")
      .def(py::init([](std::uint32_t p, std::uint32_t n, std::uint32_t m_, std::vector<std::uint32_t> values) {
             return FuncTable(DomainParams(p, n, m_), std::move(values));
           }),
           py::arg("p"), py::arg("n"), py::arg("m"), py::arg("values"))
      .def_property_readonly("p", &FuncTable::p)
      .def_property_readonly("n", &FuncTable::n)
      .def_property_readonly("m", &FuncTable::m)
      .def_property_readonly("values", [](const FuncTable& f) {
        return std::vector<std::uint32_t>(f.values().begin(), f.values().end());
      })
      .def("__len__", &FuncTable::size)
      .def("__getitem__", [](const FuncTable& f, u64 x) {
        if (x >= f.size()) throw py::index_error();
        return f[x];
      })
      .def("__eq__", [](const FuncTable& a, const FuncTable& b) { return a == b; })
      .def("__repr__", [](const FuncTable& f) {
        return "FuncTable(p=" + std::to_string(f.p()) + ", n=" + std::to_string(f.n()) + ", m=" + std::to_string(f.m()) + ")";
      });

  m.def("read_function", &parse_function_file, py::arg("path"));
  m.def("parse_function", [](const std::string& text) { return parse_function_text(text); }, py::arg("text"));
  m.def("write_function", &write_function_file, py::arg("path"), py::arg("f"), py::arg("binary") = false);
  m.def("emit_text", &emit_text, py::arg("f"));
  m.def("random_function",
        [](std::uint32_t p, std::uint32_t n, std::uint32_t m_, u64 seed) { return random_function({p, n, m_}, seed); },
        py::arg("p"), py::arg("n"), py::arg("m"), py::arg("seed") = 0);
  m.def("set_threads", &set_worker_count, py::arg("workers"), "0 restores the default");

  m.def("construct", [](const std::string& spec, bool force) {
    const Construction c = build_construction(spec, force);
    return py::make_tuple(c.table, c.description);
  }, py::arg("spec"), py::arg("force") = false, "Returns (table, description)");

  m.def("preimage_histogram", [](const FuncTable& f) { return preimage_distribution(f).histogram(); });
  m.def("image_size", [](const FuncTable& f) { return preimage_distribution(f).image_size; });
  m.def("imbalance", [](const FuncTable& f) { return to_py(imbalance(f)); });
  m.def("xi_defect", [](const FuncTable& f) {
    const XiDefect xi = xi_defect(f);
    return py::make_tuple(to_py(xi.radicand), xi.denominator);
  }, "(radicand, denominator) with Xi = sqrt(radicand) / denominator");
  m.def("classify_almost_balanced", [](const FuncTable& f) {
    const ABClass ab = classify_almost_balanced(f);
    py::dict d;
    d["type"] = std::string(to_string(ab.kind));
    d["witness"] = ab.witness ? py::object(py::int_(*ab.witness)) : py::object(py::none());
    d["surjective"] = ab.surjective;
    d["rider_holds"] = ab.rider_holds;
    return d;
  });
  m.def("image_lower_bound", py::overload_cast<const FuncTable&>(&image_lower_bound));
  m.def("surjectivity_certificate", [](const FuncTable& f) {
    const auto c = surjectivity_certificate(f);
    return py::make_tuple(c.guaranteed, c.surjective);
  }, "(guaranteed, surjective)");
  m.def("find_balancing_shift", [](const FuncTable& f, const std::string& goal, u64 trials, u64 seed) {
    if (goal != "imbalance" && goal != "surjective") throw py::value_error("goal must be 'imbalance' or 'surjective'");
    const BalancingShift s = find_balancing_shift(f, goal == "imbalance" ? ShiftGoal::Imbalance : ShiftGoal::Surjective,
                                                  trials, seed);
    py::dict d;
    d["found"] = s.found;
    d["trial"] = s.trial;
    d["matrix"] = s.map ? py::cast(s.map->to_rows()) : py::object(py::none());
    d["imbalance"] = to_py(s.imbalance);
    d["surjective"] = s.surjective;
    return d;
  }, py::arg("f"), py::arg("goal") = "imbalance", py::arg("trials") = 0, py::arg("seed") = 1);

  m.def("walsh_point", [](const FuncTable& f, u64 b, u64 a) { return cyc_to_py(walsh_point(f, b, a)); });
  m.def("walsh_row", [](const FuncTable& f, u64 b) {
    const WalshRow row = walsh_row(f, b);
    py::list out;
    for (u64 a = 0; a < row.size(); ++a) out.append(cyc_to_py(row.at(a)));
    return out;
  }, "Integers for p = 2, canonical Z[zeta_p] coordinates otherwise");
  m.def("zero_column", [](const FuncTable& f) {
    const ZeroColumn col = zero_column(f);
    py::list out;
    for (u64 b = 0; b < col.size(); ++b) out.append(cyc_to_py(col.at(b)));
    return out;
  });

  m.def("ddt", [](const FuncTable& f) {
    const DDT t = ddt(f);
    std::vector<std::vector<std::uint32_t>> rows(t.rows());
    for (u64 a = 1; a <= t.rows(); ++a) rows[a - 1].assign(t.counts.begin() + (a - 1) * t.cols(), t.counts.begin() + a * t.cols());
    return rows;
  }, "Rows a = 1 .. p^n - 1");
  m.def("diff_summary", [](const FuncTable& f) {
    const DiffSummary s = diff_summary(f);
    py::dict d;
    d["delta"] = s.delta;
    d["two_valued_at"] = s.two_valued_at ? py::object(py::int_(*s.two_valued_at)) : py::object(py::none());
    d["apn"] = s.apn ? py::object(py::bool_(*s.apn)) : py::object(py::none());
    return d;
  });
  m.def("fourth_moment", [](const FuncTable& f, bool walsh_check) { return to_py(fourth_moment(f, walsh_check).value); },
        py::arg("f"), py::arg("walsh_check") = false);

  m.def("component_profile", [](const FuncTable& f) {
    const AmplitudeProfile prof = component_profile(f);
    py::dict d;
    py::list t;
    for (const auto& c : prof.components) t.append(c.t ? py::object(py::int_(*c.t)) : py::object(py::none()));
    d["plateau_index"] = t;
    d["bent_count"] = prof.bent_count;
    d["balanced_count"] = prof.balanced_count;
    d["linearity_sq"] = to_py(prof.linearity_sq);
    return d;
  }, "plateau_index[b - 1] for b = 1 .. p^m - 1");
  m.def("dto1_check", [](const FuncTable& f, bool assume) { return verdict_dict(dto1_check(f, assume).verdict); },
        py::arg("f"), py::arg("assume_plateaued") = false);

  m.def("analyze", [](const FuncTable& f, bool all, bool zero_column_only, bool ddt, bool assume_plateaued,
                      unsigned max_profile_log) {
    return json_to_py(run_analysis(f, options(all, zero_column_only, ddt, assume_plateaued, max_profile_log)).json);
  }, py::arg("f"), py::arg("all") = false, py::arg("zero_column_only") = false, py::arg("ddt") = false,
        py::arg("assume_plateaued") = false, py::arg("max_profile_log") = 28);
  m.def("check_theorem", [](const std::string& tag, const FuncTable& f, bool assume_plateaued) {
    return json_to_py(check_theorem(tag, f, options(false, false, false, assume_plateaued, 28)).to_json());
  }, py::arg("tag"), py::arg("f"), py::arg("assume_plateaued") = false);
  m.def("check_construction", [](const std::string& tag, const std::string& spec) {
    return json_to_py(check_construction(tag, build_construction(spec, true), AnalysisOptions{}).to_json());
  }, py::arg("tag"), py::arg("spec"));
}
