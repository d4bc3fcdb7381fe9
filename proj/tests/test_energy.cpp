#include <catch2/catch_amalgamated.hpp>

#include "delaywave/boundary_scheme.hpp"
#include "delaywave/energy.hpp"
#include "delaywave/experiment.hpp"
#include "delaywave/internal_scheme.hpp"

#include "test_support.hpp"

#include <cmath>

using namespace delaywave;
using Catch::Approx;

namespace {

using Vec = std::vector<double>;

SimParams tiny_boundary()
{
    SimParams p;
    p.case_kind = Case::boundary;
    p.ell = 1.0;
    p.n_cells = 2;
    p.dx = 0.5;
    p.dt = 0.5;
    p.cfl = p.cfl_requested = 1.0;
    p.s = 1.0;
    return p;
}

// straight transcription of the three displayed sums, kept apart from the library
double reference_total(const Vec& un, const Vec& un1, const SimParams& p)
{
    const std::size_t n = p.n_cells;
    double kin = 0.0, pot = 0.0;
    const std::size_t lo = p.case_kind == Case::internal ? 1 : 0;
    for (std::size_t j = lo; j < n; ++j) kin += std::pow((un1[j] - un[j]) / p.dt, 2);
    kin *= 0.5;
    if (p.case_kind == Case::boundary) kin += 0.25 * std::pow((un1[n] - un[n]) / p.dt, 2);
    for (std::size_t j = 0; j < n; ++j) pot += (un[j + 1] - un[j]) * (un1[j + 1] - un1[j]) / (p.dx * p.dx);
    return kin + 0.5 * pot;
}

EnergyTrace synthetic(const std::function<double(double)>& e, double t_end, std::size_t samples)
{
    EnergyTrace tr;
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = t_end * static_cast<double>(i) / static_cast<double>(samples - 1);
        const double v = e(t);
        tr.append(EnergyRecord{i, t, v, 0.0, v});
    }
    return tr;
}

}  // namespace

TEST_CASE("boundary energy on a two-cell pair", "[energy]")
{
    const auto p = tiny_boundary();
    const auto e = energy_boundary(Vec{0, 0, 0}, Vec{0, 1, 0}, p);
    CHECK(e.kinetic == 2.0);
    CHECK(e.potential == 0.0);
    CHECK(e.total == 2.0);
}

TEST_CASE("internal energy of a single bump", "[energy]")
{
    const auto p = build_params(Case::internal, 1.0, 10, 1.0, 1, 0.0, DampingInterval{2, 8});
    Vec un(11, 0.0), un1(11, 0.0);
    un1[4] = 1.0;
    const auto e = energy_internal(un, un1, p);
    CHECK(e.kinetic == Approx(50.0));
    CHECK(e.potential == 0.0);
}

TEST_CASE("pointwise potential with the Dirichlet ghost", "[energy]")
{
    const auto p = build_params(Case::pointwise, 1.0, 4, 1.0, 1, 0.0);
    const FvMesh mesh(1.0, 4);
    const Vec u{1, 0, 0, 0};
    const auto e = energy_pointwise(u, u, mesh, p);
    CHECK(e.potential == 6.0);
    CHECK(e.kinetic == 0.0);
}

TEST_CASE("energy totals agree with an independent evaluation", "[energy][property]")
{
    std::mt19937_64 rng(19);
    const auto pb = build_params(Case::boundary, 1.0, 12, 0.8, 1, 0.0);
    const auto pi = build_params(Case::internal, 1.0, 12, 0.8, 1, 0.0, DampingInterval{3, 9});
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = testing::random_vector(rng, 13), b = testing::random_vector(rng, 13);
        const double eb = energy_boundary(a, b, pb).total;
        REQUIRE(eb == Approx(reference_total(a, b, pb)).epsilon(1e-12));
        const double ei = energy_internal(a, b, pi).total;
        REQUIRE(ei == Approx(reference_total(a, b, pi)).epsilon(1e-12));
        const auto parts = energy_boundary(a, b, pb);
        REQUIRE(parts.total == parts.kinetic + parts.potential);
    }
}

TEST_CASE("energy functionals are quadratic", "[energy][property]")
{
    std::mt19937_64 rng(21);
    const auto pb = build_params(Case::boundary, 1.0, 10, 1.0, 1, 0.0);
    const auto pp = build_params(Case::pointwise, 1.0, 10, 1.0, 1, 0.0);
    const FvMesh mesh(1.0, 10);
    for (double a : {-3.0, 0.5, 7.0}) {
        const auto u = testing::random_vector(rng, 11), w = testing::random_vector(rng, 11);
        Vec au(11), aw(11);
        for (std::size_t i = 0; i < 11; ++i) {
            au[i] = a * u[i];
            aw[i] = a * w[i];
        }
        const double e = energy_boundary(u, w, pb).total;
        CHECK(energy_boundary(au, aw, pb).total == Approx(a * a * e).epsilon(1e-12));
        const Vec cu(u.begin(), u.begin() + 10), cw(w.begin(), w.begin() + 10);
        Vec cau(au.begin(), au.begin() + 10), caw(aw.begin(), aw.begin() + 10);
        const double ep = energy_pointwise(cu, cw, mesh, pp).total;
        CHECK(energy_pointwise(cau, caw, mesh, pp).total == Approx(a * a * ep).epsilon(1e-12));
    }
}

TEST_CASE("product potential can be negative, the implicit variant cannot", "[energy][property]")
{
    const auto p = build_params(Case::boundary, 1.0, 8, 1.0, 1, 0.0);
    Vec un(9), un1(9);
    for (std::size_t j = 0; j <= 8; ++j) {
        un[j] = static_cast<double>(j);
        un1[j] = -static_cast<double>(j);
    }
    CHECK(energy_boundary(un, un1, p).potential < 0.0);
    CHECK(energy_implicit_variant(un, un1, p).potential > 0.0);

    std::mt19937_64 rng(29);
    const auto pi = build_params(Case::internal, 1.0, 8, 1.0, 1, 0.0, DampingInterval{2, 6});
    for (int trial = 0; trial < 500; ++trial) {
        const auto a = testing::random_vector(rng, 9), b = testing::random_vector(rng, 9);
        REQUIRE(energy_implicit_variant(a, b, p).total >= 0.0);
        REQUIRE(energy_implicit_variant(a, b, pi).total >= 0.0);
    }
    CHECK(energy_implicit_variant(Vec(9, 0.0), Vec(9, 0.0), p).total == 0.0);
    const auto pp = build_params(Case::pointwise, 1.0, 8, 1.0, 1, 0.0);
    CHECK_THROWS_AS(energy_implicit_variant(Vec(8, 0.0), Vec(8, 0.0), pp), std::invalid_argument);
}

TEST_CASE("implicit free run at CFL 2 has non-increasing variant energy", "[energy][implicit]")
{
    const auto p = build_params(Case::boundary, 1.0, 100, 2.0, 5, 0.0);
    auto s = BoundaryScheme::from_profiles(p, [](double x) { return x * x - 2 * x; },
                                           [](double x) { return -(x * x - 2 * x); }, Stepper::implicit_averaged);
    double prev = energy_implicit_variant(s.state(), p).total;
    const double e0 = prev;
    for (int i = 0; i < 200; ++i) {
        s.step();
        const double e = energy_implicit_variant(s.state(), p).total;
        REQUIRE(e >= 0.0);
        REQUIRE(e <= prev + 1e-13 * e0);
        prev = e;
    }
}

TEST_CASE("decay fit on synthetic exponentials", "[energy][fit]")
{
    const auto decay = synthetic([](double t) { return std::exp(-2.0 * t); }, 10.0, 101);
    const auto f = fit_decay_rate(decay, {0.0, 10.0});
    CHECK(f.omega == Approx(2.0).epsilon(1e-12));
    CHECK(f.residual < 1e-12);
    CHECK(f.samples == 101);

    const auto growth = synthetic([](double t) { return 5.0 * std::exp(0.3 * t); }, 40.0, 57);
    const auto g = fit_decay_rate(growth, {0.0, 40.0});
    CHECK(g.omega == Approx(-0.3).epsilon(1e-12));
    CHECK(g.intercept == Approx(-std::log(5.0)).epsilon(1e-12));
    CHECK(g.residual < 1e-12);

    const auto w = fit_decay_rate(decay, {2.0, 5.0});
    CHECK(w.window.t_lo == Approx(2.0));
    CHECK(w.window.t_hi == Approx(5.0));
    CHECK(w.samples == 31);
}

TEST_CASE("decay fit errors", "[energy][fit]")
{
    auto tr = synthetic([](double t) { return 1.0 - t; }, 2.0, 5);
    CHECK_THROWS_AS(fit_decay_rate(tr, {0.0, 2.0}), EnergyNotPositive);
    CHECK_THROWS_WITH(fit_decay_rate(tr, {0.0, 2.0}), Catch::Matchers::ContainsSubstring("energy not positive"));
    CHECK_NOTHROW(fit_decay_rate(tr, {0.0, 0.5}));
    CHECK_THROWS_AS(fit_decay_rate(tr, {0.1, 0.2}), std::invalid_argument);
    CHECK_THROWS_AS(tr.neg_log(), EnergyNotPositive);
}

TEST_CASE("trace records and derived series", "[energy]")
{
    EnergyTrace tr;
    tr.append(0, 0.0, EnergyParts{1.0, 1.0, 2.0});
    tr.append(1, 0.5, EnergyParts{1.0, 0.5, 1.5});
    CHECK_THROWS_AS(tr.append(1, 1.0, EnergyParts{}), std::invalid_argument);
    CHECK(tr.neg_log()[1] == Approx(-std::log(1.5)));
    REQUIRE(tr.rate().size() == 1);
    CHECK(tr.rate()[0] == Approx(-std::log(1.5) / 0.5));
    CHECK(tr.max_relative_drift(10.0) == Approx(0.25));
    CHECK(tr.max_step_drift(10.0) == Approx(0.25));
    CHECK(tr.max_relative_drift(0.1) == 0.0);
}

TEST_CASE("boundary run near the optimal gain decays", "[energy][fit]")
{
    RunConfig cfg;
    cfg.case_kind = Case::boundary;
    cfg.mu = 0.17;
    const auto r = simulate(cfg);
    REQUIRE(r.fit.has_value());
    CHECK(r.fit->omega > 0.0);
}

TEST_CASE("periodicity check", "[energy]")
{
    const Vec p{0.5, -1.0, 2.0};
    const Vec m{-0.5, 1.0, -2.0};
    CHECK(periodicity_check(p, p, 1.0) == 0.0);
    CHECK(periodicity_check(p, m, -1.0) == 0.0);
    CHECK(periodicity_check(p, m, 1.0) == Approx(2.0));
    CHECK_THROWS_AS(periodicity_check(p, Vec{1.0}, 1.0), std::invalid_argument);
}
