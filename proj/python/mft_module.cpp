#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>

#include "mft/cubic.hpp"
#include "mft/json_io.hpp"
#include "mft/moyal4.hpp"
#include "mft/multirational.hpp"

namespace py = pybind11;

namespace {

// structured results cross the boundary as JSON text; the python wrapper
// decodes them
std::string free_energy_json(int genus, const std::string& route) {
    if (route == "both") return mft::to_json(mft::free_energy_checked(genus)).dump();
    auto r = route == "laplacian" ? mft::FreeEnergyRoute::laplacian
                                  : mft::FreeEnergyRoute::annihilate;
    return mft::to_json(mft::free_energy(genus, r)).dump();
}

std::string intersection_numbers_json(int genus) {
    return mft::to_json(mft::intersection_numbers(genus)).dump();
}

std::string correlation_json(int genus, int boundaries) {
    mft::CorrelationFn f = mft::correlation(genus, boundaries);
    if (f.unstable_b2)
        return mft::json{{"genus", 0},
                         {"vars", f.vars},
                         {"closed_form", "(2 lambda)^2 / (z1 z2 (z1+z2)^2)"}}
            .dump();
    mft::json j;
    j["genus"] = f.genus;
    j["vars"] = f.vars;
    j["body"] = mft::to_json(f.body);
    return j.dump();
}

bool loop_equation_zero(int genus, int boundaries) {
    return mft::loop_equation_residual(genus, boundaries).is_zero();
}

std::string virasoro_json(int n, int order) {
    mft::TruncatedZ z = mft::truncated_z(order);
    mft::VirasoroReport rep = mft::virasoro_apply(n, z);
    mft::json j;
    j["n"] = rep.n;
    j["determined_orders"] = rep.determined_orders;
    j["excluded_orders"] = rep.excluded_orders;
    j["all_zero"] = rep.all_zero;
    return j.dump();
}

std::size_t catalan_count(int k) { return mft::enumerate_tables(k).size(); }

std::string expand_planar_json(int n) {
    mft::json arr = mft::json::array();
    for (const auto& m : mft::expand_planar(n)) arr.push_back(mft::to_json(m));
    return arr.dump();
}

bool catalan_verify(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(1, 400), den(1, 9);
    std::vector<mft::Rational> e;
    while (static_cast<int>(e.size()) < n) {
        mft::Rational cand = mft::rat(num(rng), den(rng));
        bool dup = false;
        for (const auto& v : e) dup = dup || v == cand;
        if (!dup) e.push_back(cand);
    }
    std::map<std::pair<int, int>, mft::Rational> g2;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g2[{i, j}] = mft::rat(num(rng), den(rng));
    mft::Rational lambda = mft::rat(3, 7);
    return mft::naive_recursion_eval(n, e, g2, lambda) ==
           mft::eval_expansion(mft::expand_planar(n), n, e, g2, lambda);
}

mft::MoyalMeasure measure_of(int dim, int renorm_dim) {
    mft::MoyalMeasure m;
    m.dim = dim;
    m.renorm_dim = renorm_dim > 0 ? renorm_dim : dim;
    return m;
}

std::map<std::string, double> quartic_two_point(std::vector<double> eigenvalues,
                                                std::vector<double> multiplicities, double V,
                                                double lambda, double z, double w) {
    mft::Spectrum s;
    s.eigenvalues = std::move(eigenvalues);
    s.multiplicities = std::move(multiplicities);
    s.V = V;
    s.lambda = lambda;
    mft::RationalR r = mft::build_r(s);
    return {{"two_point", mft::two_point(r, z, w)},
            {"two_point_rfe", mft::two_point_rfe(r, z, w)},
            {"jzz_residual", mft::identity_jzz_residual(r, z)},
            {"sde_residual", mft::sde_residual(r, z, w)}};
}

std::map<std::string, double> moyal4_summary(double lambda) {
    mft::Moyal4Params p = mft::moyal4_params(lambda);
    return {{"alpha", p.alpha},
            {"mu2", p.mu2},
            {"c_lambda", p.c_lambda},
            {"dimension", mft::effective_dimension_formula(lambda)}};
}

} // namespace

PYBIND11_MODULE(_mft, m) {
    m.doc() = "matrix field theory toolkit: exact cubic-model algebra, Catalan "
              "expansions, finite quartic solutions and the 4d Moyal measure";

    py::register_exception<mft::DomainError>(m, "DomainError");
    py::register_exception<mft::BudgetError>(m, "BudgetError");
    py::register_exception<mft::ToleranceError>(m, "ToleranceError");
    py::register_exception<mft::ConsistencyError>(m, "ConsistencyError");

    m.def("free_energy_json", &free_energy_json, py::arg("genus"),
          py::arg("route") = "both");
    m.def("intersection_numbers_json", &intersection_numbers_json, py::arg("genus"));
    m.def("correlation_json", &correlation_json, py::arg("genus"), py::arg("boundaries"));
    m.def("loop_equation_zero", &loop_equation_zero, py::arg("genus"),
          py::arg("boundaries"));
    m.def("virasoro_json", &virasoro_json, py::arg("n"), py::arg("order") = 3);

    m.def("catalan_count", &catalan_count, py::arg("k"));
    m.def("expand_planar_json", &expand_planar_json, py::arg("n"));
    m.def("catalan_verify", &catalan_verify, py::arg("n"), py::arg("seed") = 0);

    m.def(
        "cubic_solve_c",
        [](int dim, int renorm_dim, double lambda) {
            return mft::solve_c(measure_of(dim, renorm_dim), lambda);
        },
        py::arg("dim"), py::arg("renorm_dim"), py::arg("lambda"));
    m.def(
        "cubic_c_series",
        [](int dim, int renorm_dim, int order) {
            return mft::c_series(measure_of(dim, renorm_dim), order);
        },
        py::arg("dim"), py::arg("renorm_dim"), py::arg("order") = 3);
    m.def(
        "cubic_lambda_critical",
        [](int dim, int renorm_dim) {
            return mft::lambda_critical(measure_of(dim, renorm_dim));
        },
        py::arg("dim"), py::arg("renorm_dim"));
    m.def(
        "cubic_one_point",
        [](int dim, int renorm_dim, double lambda, double x) {
            return mft::solve_cubic(measure_of(dim, renorm_dim), lambda).one_point(x);
        },
        py::arg("dim"), py::arg("renorm_dim"), py::arg("lambda"), py::arg("x"));
    m.def("n_point_from_w", &mft::n_point_from_w, py::arg("fw"), py::arg("lambda"));

    m.def("quartic_two_point", &quartic_two_point, py::arg("eigenvalues"),
          py::arg("multiplicities"), py::arg("V"), py::arg("lambda"), py::arg("z"),
          py::arg("w"));

    m.def("moyal4_summary", &moyal4_summary, py::arg("lambda"));
    m.def(
        "moyal4_measure",
        [](double lambda, double x) { return mft::rho_lambda(mft::moyal4_params(lambda), x); },
        py::arg("lambda"), py::arg("x"));
    m.def(
        "moyal4_fredholm_residual",
        [](double lambda, double x) {
            return mft::fredholm_residual(mft::moyal4_params(lambda), x);
        },
        py::arg("lambda"), py::arg("x"));
    m.def(
        "moyal4_g2",
        [](double a, double b, double lambda) { return mft::g2_perturbative(a, b, lambda, 2); },
        py::arg("a"), py::arg("b"), py::arg("lambda"));

    m.def("dilog", &mft::dilog, py::arg("x"));
    m.def("hyp2f1", &mft::hyp2f1, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("x"));
}
