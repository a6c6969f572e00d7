#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <random>

#include "mft/cubic.hpp"
#include "mft/json_io.hpp"
#include "mft/moyal4.hpp"
#include "mft/multirational.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

// exit-code contract: 0 ok, 2 domain error, 3 tolerance failure, 64 usage
constexpr int kOk = 0;
constexpr int kDomain = 2;
constexpr int kTolerance = 3;

mft::json envelope(long seed) {
    mft::json j;
    j["tool_version"] = kVersion;
    j["seed"] = seed;
    j["tolerances"] = {{"rel", 1e-10}, {"abs", 1e-13}};
    const char* threads = std::getenv("MFT_THREADS");
    j["threads"] = threads ? std::atoi(threads) : 1;
    return j;
}

void emit(const mft::json& j) { std::cout << j.dump(2) << "\n"; }

struct Options {
    long seed = 0;
    // kontsevich
    int genus = 2;
    int boundaries = 1;
    std::string route = "both";
    int vira_n = 0;
    int vira_order = 3;
    std::string convention = "np";
    // cubic
    int dim = 2;
    int renorm_dim = 0;
    double lambda = 0.0;
    double x = -1.0;
    int series = -1;
    bool c_only = false;
    // catalan
    int k = 1;
    int n = 4;
    std::string format = "json";
    std::string count_format = "text";
    // quartic
    std::string spectrum_path;
    bool lambda_set = false;
    std::vector<double> two_point_args;
    bool check_identities = false;
    bool rfe = false;
    // moyal4
    double measure_x = -1.0;
    bool fredholm = false;
    bool dimension = false;
    std::vector<double> g2_args;
};

int run_kontsevich_free_energy(const Options& o) {
    mft::json out = envelope(o.seed);
    if (o.route == "both") {
        mft::FreeEnergy f = mft::free_energy_checked(o.genus);
        out["result"] = mft::to_json(f);
        out["result"]["routes_agree"] = true;
    } else {
        auto route = o.route == "laplacian" ? mft::FreeEnergyRoute::laplacian
                                            : mft::FreeEnergyRoute::annihilate;
        out["result"] = mft::to_json(mft::free_energy(o.genus, route));
    }
    emit(out);
    return kOk;
}

int run_kontsevich_intersections(const Options& o) {
    mft::json out = envelope(o.seed);
    out["result"] = mft::to_json(mft::intersection_numbers(o.genus));
    emit(out);
    return kOk;
}

int run_kontsevich_correlation(const Options& o) {
    mft::json out = envelope(o.seed);
    mft::CorrelationFn f = mft::correlation(o.genus, o.boundaries);
    mft::json r;
    r["genus"] = f.genus;
    r["vars"] = f.vars;
    if (f.unstable_b2) {
        r["closed_form"] = "(2 lambda)^2 / (z1 z2 (z1+z2)^2)";
    } else {
        r["body"] = mft::to_json(f.body);
    }
    out["result"] = r;
    emit(out);
    return kOk;
}

int run_kontsevich_virasoro(const Options& o) {
    mft::json out = envelope(o.seed);
    mft::TruncatedZ z = mft::truncated_z(o.vira_order);
    z.stable_convention = (o.convention == "stable");
    mft::VirasoroReport rep = mft::virasoro_apply(o.vira_n, z);
    mft::json r;
    r["n"] = rep.n;
    r["convention"] = o.convention;
    r["prefactor"] = z.stable_convention ? "none" : "rho0^(-1/24)";
    r["determined_orders"] = rep.determined_orders;
    r["excluded_orders"] = rep.excluded_orders;
    mft::json res = mft::json::array();
    for (const auto& p : rep.residuals) res.push_back(mft::to_json(p));
    r["residuals"] = res;
    r["all_zero"] = rep.all_zero;
    out["result"] = r;
    emit(out);
    return rep.all_zero ? kOk : kTolerance;
}

int run_cubic(const Options& o) {
    mft::MoyalMeasure m;
    m.dim = o.dim;
    m.renorm_dim = o.renorm_dim > 0 ? o.renorm_dim : o.dim;
    mft::json out = envelope(o.seed);
    mft::json r;
    r["dim"] = m.dim;
    r["renorm_dim"] = m.renorm_dim;
    r["lambda"] = o.lambda;
    r["c"] = mft::solve_c(m, o.lambda);
    r["lambda_c_estimate"] = mft::lambda_critical(m);
    if (!o.c_only) {
        mft::json values;
        if (o.series >= 0) {
            values["c_series_lambda2"] = mft::c_series(m, o.series);
        }
        if (o.x >= 0.0) {
            mft::CubicSolution sol = mft::solve_cubic(m, o.lambda);
            values["x"] = o.x;
            values["G0"] = sol.one_point(o.x);
            double u = 1.0 + 2.0 * o.x;
            values["W"] = sol.wtilde(u * u);
        }
        r["values"] = values;
    }
    out["result"] = r;
    emit(out);
    return kOk;
}

int run_catalan_count(const Options& o) {
    auto tables = mft::enumerate_tables(o.k);
    std::size_t h = 0;
    for (const auto& t : tables)
        if (t.pockets[0].len() == 0) ++h;
    if (o.count_format == "json") {
        mft::json out = envelope(o.seed);
        out["result"] = {{"k", o.k},
                         {"count", tables.size()},
                         {"count_first_pocket_trivial", h}};
        emit(out);
    } else {
        std::cout << tables.size() << "\n";
    }
    return kOk;
}

int run_catalan_expand(const Options& o) {
    if (o.format == "dot") {
        for (const auto& t : mft::enumerate_tables(o.n / 2))
            std::cout << mft::render_chords(t, o.n);
        return kOk;
    }
    mft::json out = envelope(o.seed);
    mft::json monos = mft::json::array();
    for (const auto& m : mft::expand_planar(o.n)) monos.push_back(mft::to_json(m));
    out["result"] = {{"n", o.n}, {"monomials", monos}};
    emit(out);
    return kOk;
}

int run_catalan_verify(const Options& o) {
    std::mt19937 rng(static_cast<unsigned>(o.seed));
    int n = o.n;
    std::vector<mft::Rational> e;
    std::uniform_int_distribution<int> num(1, 400), den(1, 9);
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
    mft::Rational lhs = mft::naive_recursion_eval(n, e, g2, lambda);
    mft::Rational rhs = mft::eval_expansion(mft::expand_planar(n), n, e, g2, lambda);
    mft::json out = envelope(o.seed);
    out["result"] = {{"n", n},
                     {"terms", mft::expand_planar(n).size()},
                     {"naive", mft::rat_to_string(lhs)},
                     {"expansion", mft::rat_to_string(rhs)},
                     {"equal", lhs == rhs}};
    emit(out);
    return lhs == rhs ? kOk : kTolerance;
}

int run_quartic(const Options& o) {
    mft::Spectrum s = mft::load_spectrum(o.spectrum_path);
    if (o.lambda_set) s.lambda = o.lambda;
    mft::RationalR r = mft::build_r(s);
    mft::json out = envelope(o.seed);
    mft::json res;
    res["lambda"] = s.lambda;
    res["deformed"] = {{"eps", r.deformed().eps},
                       {"rho", r.deformed().rho},
                       {"iterations", r.deformed().iterations},
                       {"residual", r.deformed().residual}};
    if (o.two_point_args.size() == 2) {
        double z = o.two_point_args[0], w = o.two_point_args[1];
        res["two_point"] = {{"z", z},
                            {"w", w},
                            {"value", o.rfe ? mft::two_point_rfe(r, z, w)
                                            : mft::two_point(r, z, w)},
                            {"route", o.rfe ? "rfe" : "product"}};
    }
    if (o.check_identities) {
        double worst_jzz = 0, worst_sde = 0, worst_sym = 0;
        std::vector<double> grid{0.31, 0.7, 1.3, 2.6};
        for (double z : grid) {
            worst_jzz = std::max(worst_jzz, mft::identity_jzz_residual(r, z));
            for (double w : grid) {
                worst_sde = std::max(worst_sde, mft::sde_residual(r, z, w));
                worst_sym = std::max(worst_sym, std::fabs(mft::two_point(r, z, w) -
                                                          mft::two_point(r, w, z)));
            }
        }
        res["identities"] = {{"jzz_max_residual", worst_jzz},
                             {"sde_max_residual", worst_sde},
                             {"symmetry_max_gap", worst_sym}};
        out["result"] = res;
        emit(out);
        return (worst_jzz < 1e-9 && worst_sde < 1e-8) ? kOk : kTolerance;
    }
    out["result"] = res;
    emit(out);
    return kOk;
}

int run_moyal4(const Options& o) {
    mft::Moyal4Params p = mft::moyal4_params(o.lambda);
    mft::json out = envelope(o.seed);
    mft::json res;
    res["lambda"] = p.lambda;
    res["alpha"] = p.alpha;
    res["mu2"] = p.mu2;
    res["c_lambda"] = p.c_lambda;
    int code = kOk;
    if (o.measure_x >= 0.0) {
        auto sb = mft::sandwich_bounds(p, o.measure_x);
        res["measure"] = {{"x", o.measure_x},
                          {"rho_lambda", mft::rho_lambda(p, o.measure_x)},
                          {"bound_lower", sb.lower * o.measure_x},
                          {"bound_upper", sb.upper * o.measure_x},
                          {"bounds_hold", sb.holds}};
    }
    if (o.fredholm) {
        mft::json arr = mft::json::array();
        double worst = 0;
        for (double x : {0.1, 1.0, 10.0, 100.0}) {
            double rres = mft::fredholm_residual(p, x);
            worst = std::max(worst, rres);
            arr.push_back({{"x", x}, {"residual", rres}});
        }
        res["fredholm"] = arr;
        auto bi = mft::boundary_integral(p);
        res["boundary_integral"] = {{"quadrature", bi.quadrature},
                                    {"limit_route", bi.limit_route}};
        if (worst > 1e-8) code = kTolerance;
    }
    if (o.dimension) {
        double formula = mft::effective_dimension_formula(p.lambda);
        double estimate = mft::effective_dimension_estimate(p);
        res["dimension"] = {{"formula", formula}, {"log_slope_estimate", estimate}};
        if (std::fabs(formula - estimate) > 0.05) code = kTolerance;
    }
    if (o.g2_args.size() == 2) {
        res["g2"] = {{"a", o.g2_args[0]},
                     {"b", o.g2_args[1]},
                     {"order2", mft::g2_perturbative(o.g2_args[0], o.g2_args[1], p.lambda, 2)}};
    }
    out["result"] = res;
    emit(out);
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"matrix field theory toolkit: exact cubic-model algebra, Catalan "
                 "expansions, finite quartic solutions and the 4d Moyal measure"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--seed", o.seed, "seed recorded in every output");

    auto* kon = app.add_subcommand("kontsevich", "cubic-model symbolic sector");
    kon->require_subcommand(1);
    auto* kfe = kon->add_subcommand("free-energy", "exact F_g");
    kfe->add_option("--genus", o.genus, "genus >= 1")->required();
    kfe->add_option("--route", o.route, "annihilate|laplacian|both")
        ->check(CLI::IsMember({"annihilate", "laplacian", "both"}));
    auto* kin = kon->add_subcommand("intersections", "psi-class intersection numbers");
    kin->add_option("--genus", o.genus, "genus >= 2")->required();
    auto* kco = kon->add_subcommand("correlation", "G_g(z1..zb)");
    kco->add_option("--genus", o.genus)->required();
    kco->add_option("--boundaries", o.boundaries)->required();
    auto* kvi = kon->add_subcommand("virasoro", "constraint residuals on the truncation");
    kvi->add_option("--n", o.vira_n)->required();
    kvi->add_option("--order", o.vira_order, "truncation genus");
    kvi->add_option("--convention", o.convention)
        ->check(CLI::IsMember({"np", "stable"}));

    auto* cub = app.add_subcommand("cubic", "planar cubic model on Moyal measures");
    cub->add_option("--dim", o.dim, "physical dimension")->check(CLI::IsMember({2, 4, 6}));
    cub->add_option("--renorm-dim", o.renorm_dim, "renormalisation dimension")
        ->check(CLI::IsMember({2, 4, 6}));
    cub->add_option("--lambda", o.lambda)->required();
    cub->add_option("--x", o.x, "evaluate G0 at x");
    cub->add_option("--series", o.series, "Taylor coefficients of c in lambda^2");
    cub->add_flag("--c-only", o.c_only);

    auto* cat = app.add_subcommand("catalan", "planar quartic expansion combinatorics");
    cat->require_subcommand(1);
    auto* cct = cat->add_subcommand("count", "number of tables of length k");
    cct->add_option("--k", o.k)->required();
    cct->add_option("--format", o.count_format)
        ->check(CLI::IsMember({"json", "text"}));
    auto* cex = cat->add_subcommand("expand", "monomials of the N-point expansion");
    cex->add_option("--n", o.n, "even N")->required();
    cex->add_option("--format", o.format)->check(CLI::IsMember({"json", "dot"}));
    auto* cve = cat->add_subcommand("verify", "expansion against the recursion");
    cve->add_option("--n", o.n, "even N")->required();
    cve->add_option("--seed", o.seed, "randomisation seed");

    auto* qua = app.add_subcommand("quartic-finite", "finite-matrix quartic planar sector");
    qua->add_option("--spectrum", o.spectrum_path, "spectrum JSON file")->required();
    auto* lam = qua->add_option("--lambda", o.lambda, "override the file's coupling");
    qua->add_option("--two-point", o.two_point_args, "evaluate G(z,w)")->expected(2);
    qua->add_flag("--check-identities", o.check_identities);
    qua->add_flag("--rfe", o.rfe, "use the pole expansion route");

    auto* moy = app.add_subcommand("moyal4", "4d Moyal quartic specialisation");
    moy->add_option("--lambda", o.lambda)->required();
    moy->add_option("--measure", o.measure_x, "evaluate the deformed measure at x");
    moy->add_flag("--fredholm", o.fredholm);
    moy->add_flag("--dimension", o.dimension);
    moy->add_option("--g2", o.g2_args, "perturbative 2-point at (a,b)")->expected(2);

    try {
        app.parse(argc, argv);
        o.lambda_set = lam->count() > 0;
        if (kfe->parsed()) return run_kontsevich_free_energy(o);
        if (kin->parsed()) return run_kontsevich_intersections(o);
        if (kco->parsed()) return run_kontsevich_correlation(o);
        if (kvi->parsed()) return run_kontsevich_virasoro(o);
        if (cub->parsed()) return run_cubic(o);
        if (cct->parsed()) return run_catalan_count(o);
        if (cex->parsed()) return run_catalan_expand(o);
        if (cve->parsed()) return run_catalan_verify(o);
        if (qua->parsed()) return run_quartic(o);
        if (moy->parsed()) return run_moyal4(o);
        std::cerr << "no subcommand\n";
        return 64;
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 64;
    } catch (const mft::ToleranceError& e) {
        std::cerr << "tolerance failure: " << e.what() << "\n";
        return kTolerance;
    } catch (const mft::DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kDomain;
    } catch (const mft::BudgetError& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return kDomain;
    } catch (const mft::ConsistencyError& e) {
        std::cerr << "internal consistency error: " << e.what() << "\n";
        return kDomain;
    }
}
