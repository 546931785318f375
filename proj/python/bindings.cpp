// Python bindings for the mwbound core: lattice validation, spectra,
// measure optimization, Bravais classification, bound assembly and
// short-vector enumeration, plus the full per-record pipeline.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mwbound/bounds.hpp"
#include "mwbound/datum.hpp"
#include "mwbound/enumeration.hpp"
#include "mwbound/errors.hpp"
#include "mwbound/report.hpp"

namespace py = pybind11;
using namespace mwbound;

namespace {

using Rows = std::vector<std::vector<double>>;
using IntRows = std::vector<std::vector<long long>>;

Mat mat_from(const Rows& rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r ? static_cast<int>(rows[0].size()) : 0;
    Mat m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c)
            fail(Errc::DimensionMismatch, "ragged matrix rows");
        for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IMat imat_from(const IntRows& rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r ? static_cast<int>(rows[0].size()) : 0;
    IMat m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c)
            fail(Errc::DimensionMismatch, "ragged matrix rows");
        for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Rows rows_from(const Mat& m) {
    Rows out(m.rows, std::vector<double>(m.cols));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) out[i][j] = m(i, j);
    return out;
}

IntRows rows_from(const IMat& m) {
    IntRows out(m.rows, std::vector<long long>(m.cols));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) out[i][j] = m(i, j);
    return out;
}

py::dict bravais_dict(const BravaisType& b) {
    py::dict d;
    d["kind"] = bravais_name(b.kind);
    d["order"] = b.order;
    d["cosine"] = b.cosine;
    py::dict m;
    m["square"] = b.margins.square;
    m["rectangular"] = b.margins.rectangular;
    m["hexagonal"] = b.margins.hexagonal;
    m["oblique"] = b.margins.oblique;
    d["margins"] = m;
    d["centered_rectangular_hint"] = b.centered_rectangular_hint;
    return d;
}

std::vector<IsometryAction> actions_from(const QuadraticLattice& lat,
                                         const std::vector<std::pair<std::string, IntRows>>& specs,
                                         double iso_tol) {
    std::vector<IsometryAction> acts;
    for (const auto& [name, rows] : specs)
        acts.push_back(check_isometry(lat, name, imat_from(rows), iso_tol));
    return acts;
}

ProbabilityMeasure measure_from(const std::vector<std::pair<std::string, double>>& weights) {
    ProbabilityMeasure mu;
    mu.weights = weights;
    mu.validate();
    return mu;
}

} // namespace

PYBIND11_MODULE(_mwbound, m) {
    m.doc() = "Effective Néron-Tate height bounds from Mordell-Weil lattice data";

    py::register_exception<Error>(m, "MwboundError");

    py::class_<QuadraticLattice>(m, "QuadraticLattice")
        .def_property_readonly("rank", [](const QuadraticLattice& l) { return l.rank; })
        .def_property_readonly("gram", [](const QuadraticLattice& l) { return rows_from(l.gram); })
        .def_property_readonly("asymmetry_residual",
                               [](const QuadraticLattice& l) { return l.asymmetry_residual; })
        .def_property_readonly("cholesky_pivots",
                               [](const QuadraticLattice& l) { return l.cholesky_pivots(); });

    m.def(
        "validate_lattice",
        [](const Rows& gram, double pd_tol, double sym_tol) {
            return validate_lattice(mat_from(gram), pd_tol, sym_tol);
        },
        py::arg("gram"), py::arg("pd_tol") = defaults::pd_tol,
        py::arg("sym_tol") = defaults::sym_tol);

    m.def(
        "pair",
        [](const QuadraticLattice& lat, const IVec& u, const IVec& v) { return pair(lat, u, v); },
        py::arg("lattice"), py::arg("u"), py::arg("v"));

    m.def(
        "adjoint",
        [](const QuadraticLattice& lat, const Rows& a) { return rows_from(adjoint(lat, mat_from(a))); },
        py::arg("lattice"), py::arg("matrix"));

    m.def(
        "check_isometry",
        [](const QuadraticLattice& lat, const std::string& name, const IntRows& a, double tol) {
            const auto act = check_isometry(lat, name, imat_from(a), tol);
            py::dict d;
            d["name"] = act.name;
            d["is_identity_matrix"] = act.is_identity;
            d["residual"] = act.residual;
            d["det"] = act.determinant;
            return d;
        },
        py::arg("lattice"), py::arg("name"), py::arg("matrix"),
        py::arg("iso_tol") = defaults::iso_tol);

    m.def(
        "lagrange_reduce",
        [](const QuadraticLattice& lat) {
            const auto red = lagrange_reduce(lat);
            py::dict d;
            d["gram"] = rows_from(red.lattice.gram);
            d["basis_change"] = rows_from(red.basis_change);
            return d;
        },
        py::arg("lattice"));

    m.def(
        "classify",
        [](const Rows& reduced_gram, double rel_tol) {
            return bravais_dict(classify(mat_from(reduced_gram), rel_tol));
        },
        py::arg("reduced_gram"), py::arg("rel_tol") = defaults::bravais_tol);

    m.def(
        "spectrum_of_action",
        [](const QuadraticLattice& lat, const std::string& name, const IntRows& a, double tol) {
            const auto s = symmetrize(lat, check_isometry(lat, name, imat_from(a), tol));
            py::dict d;
            d["name"] = s.label;
            d["spectrum"] = s.spectrum;
            d["lambda_min"] = s.lambda_min;
            d["operator"] = rows_from(s.op);
            return d;
        },
        py::arg("lattice"), py::arg("name"), py::arg("matrix"),
        py::arg("iso_tol") = defaults::iso_tol);

    m.def(
        "alpha_H",
        [](const QuadraticLattice& lat, const std::vector<std::pair<std::string, IntRows>>& specs,
           double iso_tol) {
            const auto best = alpha_H(lat, actions_from(lat, specs, iso_tol));
            return std::make_pair(best.alpha, best.label);
        },
        py::arg("lattice"), py::arg("actions"), py::arg("iso_tol") = defaults::iso_tol);

    m.def(
        "optimize_mu",
        [](const QuadraticLattice& lat, const std::vector<std::pair<std::string, IntRows>>& specs,
           int budget, int restarts, std::uint64_t seed, double iso_tol) {
            OptimizeOptions opt;
            opt.budget = budget;
            opt.restarts = restarts;
            opt.seed = seed;
            const auto r = optimize_mu(lat, actions_from(lat, specs, iso_tol), opt);
            py::dict d;
            d["mu_star"] = r.mu_star.weights;
            d["beta_star"] = r.beta_star;
            d["iterations"] = r.iterations;
            return d;
        },
        py::arg("lattice"), py::arg("actions"), py::arg("budget") = 2000,
        py::arg("restarts") = 0, py::arg("seed") = 0,
        py::arg("iso_tol") = defaults::iso_tol);

    m.def(
        "optimize_operators",
        [](const QuadraticLattice& lat, const std::vector<std::pair<std::string, Rows>>& specs,
           int budget) {
            std::vector<SymmetrizedOperator> ops;
            for (const auto& [name, rows] : specs)
                ops.push_back(make_operator(lat, name, mat_from(rows)));
            OptimizeOptions opt;
            opt.budget = budget;
            const auto r = optimize_operators(lat, ops, opt);
            py::dict d;
            d["mu_star"] = r.mu_star.weights;
            d["beta_star"] = r.beta_star;
            d["iterations"] = r.iterations;
            return d;
        },
        py::arg("lattice"), py::arg("operators"), py::arg("budget") = 2000);

    m.def(
        "certify",
        [](const QuadraticLattice& lat, const std::vector<std::pair<std::string, IntRows>>& specs,
           const std::vector<std::pair<std::string, double>>& weights, double iso_tol) {
            return certify(lat, actions_from(lat, specs, iso_tol), measure_from(weights));
        },
        py::arg("lattice"), py::arg("actions"), py::arg("mu"),
        py::arg("iso_tol") = defaults::iso_tol);

    m.def(
        "compute_mx",
        [](int genus, int field_degree, double delta_sum,
           const std::vector<std::pair<double, double>>& bad_primes) {
            MXComponents c;
            c.genus = genus;
            c.field_degree = field_degree;
            c.delta_sum = delta_sum;
            for (const auto& [phi, log_norm] : bad_primes) c.bad_primes.push_back({phi, log_norm});
            return compute_mx(c);
        },
        py::arg("genus"), py::arg("field_degree"), py::arg("delta_sum") = 0.0,
        py::arg("bad_primes") = std::vector<std::pair<double, double>>{});

    m.def("bound_kernel", &bound_kernel, py::arg("mx"), py::arg("genus"));

    m.def(
        "bound_spectral",
        [](double mx, int genus, double beta) -> py::object {
            const auto b = bound_spectral(mx, genus, beta);
            return b ? py::cast(*b) : py::none();
        },
        py::arg("mx"), py::arg("genus"), py::arg("beta"));

    m.def(
        "verify_gap",
        [](const QuadraticLattice& lat, int genus, double mx, const IVec& p, const IVec& q) {
            const auto g = verify_gap(lat, genus, mx, p, q);
            return std::make_pair(g.lhs, g.holds);
        },
        py::arg("lattice"), py::arg("genus"), py::arg("mx"), py::arg("p"), py::arg("q"));

    m.def(
        "short_vectors",
        [](const QuadraticLattice& lat, double bound, bool include_zero, double cap) {
            const auto set = short_vectors(lat, bound, include_zero, cap);
            py::dict d;
            d["bound"] = set.bound;
            d["count_up_to_sign"] = set.count_up_to_sign;
            d["count_total"] = set.count_total;
            std::vector<std::pair<IVec, double>> vecs;
            for (const auto& v : set.vectors) vecs.emplace_back(v.coords, v.norm);
            d["vectors"] = vecs;
            return d;
        },
        py::arg("lattice"), py::arg("bound"), py::arg("include_zero") = false,
        py::arg("cap") = defaults::enum_cap);

    m.def(
        "report_from_file",
        [](const std::string& path) {
            const auto datum = parse_datum_file(path);
            const auto rep = best_bound(datum);
            ToleranceSet tol;
            auto doc = bound_report_json(rep, tol);
            if (rep.bound) {
                const auto set = short_vectors(rep.lattice, *rep.bound, false);
                doc["enumeration"] = enumeration_json(set);
            }
            py::module_ json = py::module_::import("json");
            return json.attr("loads")(doc.dump());
        },
        py::arg("path"), "Runs the full pipeline on a record file; returns a dict.");
}
