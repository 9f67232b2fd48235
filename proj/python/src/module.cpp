#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <utility>
#include <vector>

#include "subcrit/analytic.hpp"
#include "subcrit/blocks.hpp"
#include "subcrit/composition.hpp"
#include "subcrit/graph_oracle.hpp"
#include "subcrit/series_json.hpp"
#include "subcrit/tables.hpp"
#include "subcrit/trees.hpp"

namespace py = pybind11;
using namespace subcrit;

namespace {

py::int_ to_py(const BigInt& v) { return py::int_(py::str(v.get_str())); }

SmallGraph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 0 || n > kMaxOracleVertices) throw std::invalid_argument("graphs have at most 8 vertices");
    SmallGraph g(n);
    for (const auto& [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n || u == v) throw std::invalid_argument("bad edge");
        g.add_edge(u, v);
    }
    return g;
}

std::vector<std::string> fractions(const TruncatedEGF& a) {
    std::vector<std::string> out;
    for (const auto& c : a.coeffs()) out.push_back(to_fraction_string(c));
    return out;
}

std::vector<std::vector<std::string>> fractions(const BivariateEGF& a) {
    std::vector<std::vector<std::string>> out;
    for (const auto& p : a.coeffs()) {
        std::vector<std::string> row;
        for (const auto& c : p.coeffs()) row.push_back(to_fraction_string(c));
        out.push_back(std::move(row));
    }
    return out;
}

py::object series(const std::string& name, std::size_t order, unsigned k) {
    if (name == "T") return py::cast(fractions(rooted_trees_closed_form(order)));
    if (name == "t") return py::cast(fractions(unrooted_trees_closed_form(order)));
    if (name == "f") return py::cast(fractions(leaf_forests_at(Rational(1), order)));
    if (name == "T_biv") return py::cast(fractions(build_tree_bundle(order, order).T_biv));
    if (name == "t_biv") return py::cast(fractions(build_tree_bundle(order, order).t_biv));
    if (name == "f_biv") return py::cast(fractions(build_tree_bundle(order, order).f_biv));
    if (name == "Uk") return py::cast(fractions(upper_series(k, order)));
    if (name == "Lk") return py::cast(fractions(lower_series(k, order)));
    if (name == "Lk_corr") return py::cast(fractions(lower_correction_series(k, order)));
    throw std::invalid_argument("unknown series name: " + name);
}

py::dict census_dict(int n, int k, unsigned jobs) {
    py::gil_scoped_release release;
    const CensusRow r = census(n, k, jobs);
    py::gil_scoped_acquire acquire;
    py::dict d;
    d["n"] = r.n;
    d["k"] = r.k;
    d["count_A"] = to_py(r.count_A);
    d["count_Z"] = to_py(r.count_Z);
    d["count_B"] = to_py(r.count_B);
    d["count_Gk_connected"] = to_py(r.count_Gk_connected);
    d["count_Gk"] = to_py(r.count_Gk);
    return d;
}

py::dict certify(unsigned k, std::size_t order, int n_oracle, const std::string& tail, double tol, double drift_tol,
                 unsigned jobs) {
    if (tail != "upper" && tail != "continuity") throw std::invalid_argument("tail must be 'upper' or 'continuity'");
    SolveOptions opt;
    opt.tol = tol;
    opt.drift_tol = drift_tol;
    SubcriticalityCertificate c;
    {
        py::gil_scoped_release release;
        c = certify_gk(k, order, n_oracle, tail == "upper" ? TailChoice::upper_bound : TailChoice::continuity, opt, jobs);
    }
    py::dict d;
    d["k"] = c.k;
    d["eta"] = c.eta;
    d["tau"] = c.tau;
    d["rho"] = c.rho;
    d["cdot_at_rho"] = c.cdot_at_rho;
    d["margin"] = c.margin;
    d["relative_gap"] = c.relative_gap;
    d["valid"] = c.valid;
    d["orders"] = c.orders;
    d["tau_drift"] = c.tau_drift;
    d["residual"] = c.residual;
    d["monotone"] = c.monotone;
    d["diagnostic"] = c.diagnostic;
    return d;
}

}  // namespace

PYBIND11_MODULE(_subcrit, m) {
    m.doc() = "Exact series, graph oracle and subcriticality certificate for apex-forest block classes";

    m.def("series", &series, py::arg("name"), py::arg("order"), py::arg("k") = 1,
          "Coefficients of T, t, f, T_biv, t_biv, f_biv, Uk, Lk or Lk_corr as 'p/q' strings");
    m.def("substitution_identity_check", &substitution_identity_check, py::arg("r"), py::arg("order"));
    m.def("tree_function", &tree_function_eval, py::arg("x"), py::arg("tol") = 1e-14);

    m.def("eta", &eta, py::arg("k"));
    m.def("eta_via_tree_function", &eta_via_tree_function, py::arg("k"));
    m.def("upper_series_singular_constant", &upper_series_singular_constant, py::arg("k"));
    m.def("asymp_upper_count", &asymp_upper_count, py::arg("n"), py::arg("k"));
    m.def("km_constants", [](unsigned k) {
        const KMConstants c = km_constants(k);
        return py::dict(py::arg("k") = c.k, py::arg("zeta") = c.zeta, py::arg("c") = c.c);
    }, py::arg("k"));
    m.def("two_connected_prob_rate", &two_connected_prob_rate, py::arg("k"));
    m.def("planar_negligibility_check", &planar_negligibility_check, py::arg("k"));
    m.attr("PLANAR_ALPHA") = PlanarConstants::alpha;
    m.attr("PLANAR_BETA") = PlanarConstants::beta;

    m.def("census", &census_dict, py::arg("n"), py::arg("k"), py::arg("jobs") = 1);
    m.def("gk_class_counts", [](int k, int n_oracle, unsigned jobs) {
        std::vector<ClassCountRow> rows;
        {
            py::gil_scoped_release release;
            rows = gk_class_counts(k, n_oracle, jobs);
        }
        py::list out;
        for (const auto& r : rows)
            out.append(py::dict(py::arg("n") = r.n, py::arg("grammar_connected") = to_py(r.grammar_connected),
                                py::arg("oracle_connected") = to_py(r.oracle_connected),
                                py::arg("grammar_all") = to_py(r.grammar_all), py::arg("oracle_all") = to_py(r.oracle_all),
                                py::arg("match") = r.match()));
        return out;
    }, py::arg("k"), py::arg("n_oracle"), py::arg("jobs") = 1);
    m.def("sandwich", [](unsigned k, int n_max, int oracle_max) {
        py::list out;
        for (const auto& r : sandwich_rows(k, n_max, oracle_max))
            out.append(py::dict(py::arg("n") = r.n, py::arg("lower") = to_py(r.lower), py::arg("upper") = to_py(r.upper),
                                py::arg("oracle") = r.oracle ? py::object(to_py(*r.oracle)) : py::object(py::none())));
        return out;
    }, py::arg("k"), py::arg("n_max"), py::arg("oracle_max"));
    m.def("trees_fixed_vertex_degree", [](int n, int d) { return to_py(trees_fixed_vertex_degree(n, d)); },
          py::arg("n"), py::arg("d"));

    m.def("is_planar", [](int n, const std::vector<std::pair<int, int>>& e) { return is_planar(graph_from_edges(n, e)); },
          py::arg("n"), py::arg("edges"));
    m.def("is_2connected", [](int n, const std::vector<std::pair<int, int>>& e) { return is_2connected(graph_from_edges(n, e)); },
          py::arg("n"), py::arg("edges"));
    m.def("is_k_apex_forest", [](int n, const std::vector<std::pair<int, int>>& e, int k) {
        return is_k_apex_forest(graph_from_edges(n, e), k);
    }, py::arg("n"), py::arg("edges"), py::arg("k"));
    m.def("is_in_Gk", [](int n, const std::vector<std::pair<int, int>>& e, int k) { return is_in_Gk(graph_from_edges(n, e), k); },
          py::arg("n"), py::arg("edges"), py::arg("k"));

    m.def("certify", &certify, py::arg("k"), py::arg("order") = 200, py::arg("n_oracle") = 6, py::arg("tail") = "upper",
          py::arg("tol") = 1e-10, py::arg("drift_tol") = 1e-6, py::arg("jobs") = 1);
}
