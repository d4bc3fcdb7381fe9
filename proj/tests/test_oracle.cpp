#include <catch2/catch_amalgamated.hpp>

#include "delaywave/oracle.hpp"
#include "delaywave/validate.hpp"

using namespace delaywave;
using Catch::Approx;

namespace {

OracleSetup boundary_setup(double mu, Stepper st = Stepper::explicit_leapfrog)
{
    const double cfl = st == Stepper::implicit_averaged ? 2.0 : 1.0;
    return {build_params(Case::boundary, 1.0, 8, cfl, 20, mu), st, {}, PointSourceSign::negative};
}

}  // namespace

TEST_CASE("mu = 0 delayed matrix equals the free one in the state block", "[oracle]")
{
    for (Case c : {Case::boundary, Case::internal, Case::pointwise}) {
        OracleSetup o{build_params(c, 1.0, 8, 1.0, 20, 0.0, c == Case::internal ? std::optional{DampingInterval{2, 6}}
                                                                              : std::nullopt),
                      Stepper::explicit_leapfrog,
                      std::vector<double>(5, 1.0),
                      PointSourceSign::negative};
        const auto free = build_recurrence(o, OraclePhase::free);
        const auto delayed = build_recurrence(o, OraclePhase::delayed);
        const auto d = static_cast<Eigen::Index>(2 * free.dof);
        CHECK(free.matrix.topRows(d) == delayed.matrix.topRows(d));
    }
}

TEST_CASE("boundary matrix rows", "[oracle]")
{
    const auto o = boundary_setup(0.5);
    const auto& p = o.params;
    const auto r = build_recurrence(o, OraclePhase::delayed);
    const std::size_t n = p.n_cells;
    CHECK(r.matrix(r.u_index(n), r.history_index(p.k_delay - 1)) == Approx(2 * p.s * p.dx * p.mu));
    for (std::size_t j = 1; j < n; ++j) {
        CHECK(r.matrix(j, r.u_index(j - 1)) == p.s);
        CHECK(r.matrix(j, r.u_index(j)) == 2 * (1 - p.s));
        CHECK(r.matrix(j, r.u_index(j + 1)) == p.s);
        CHECK(r.matrix(j, r.prev_index(j)) == -1.0);
        CHECK(r.matrix.row(static_cast<Eigen::Index>(j)).cwiseAbs().sum() == Approx(2 * p.s + 2 * std::abs(1 - p.s) + 1));
    }
    CHECK(r.matrix.row(0).isZero());
    CHECK(r.history == p.k_delay);
    CHECK(r.dimension() == 2 * (n + 1) + p.k_delay);
}

TEST_CASE("zero initial vector gives a zero trajectory", "[oracle]")
{
    const auto rec = build_recurrence(boundary_setup(0.5), OraclePhase::delayed);
    const auto traj = oracle_run(rec, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(rec.dimension())), 30);
    REQUIRE(traj.size() == 31);
    for (const auto& z : traj) REQUIRE(z.isZero(0.0));
}

TEST_CASE("oracle phases", "[oracle]")
{
    const auto pb = build_params(Case::boundary, 1.0, 8, 1.0, 20, 1.0);
    CHECK(oracle_phase_at(pb, 1) == OraclePhase::free);
    CHECK(oracle_phase_at(pb, pb.k_delay - 1) == OraclePhase::free);
    CHECK(oracle_phase_at(pb, pb.k_delay) == OraclePhase::delayed);
    const auto pp = build_params(Case::pointwise, 1.0, 8, 1.0, 20, 1.0);
    CHECK(oracle_phase_at(pp, pp.k_delay) == OraclePhase::delayed_entry);
    CHECK(oracle_phase_at(pp, pp.k_delay + 1) == OraclePhase::delayed);
}

TEST_CASE("oracle refuses large meshes", "[oracle]")
{
    OracleSetup o{build_params(Case::boundary, 1.0, 40, 1.0, 2, 0.0), Stepper::explicit_leapfrog, {}, {}};
    CHECK_THROWS_AS(build_recurrence(o, OraclePhase::free), OracleTooLarge);
}

TEST_CASE("explicit schemes match the oracle over both phases", "[oracle][equivalence]")
{
    struct Run {
        Case c;
        double mu;
        PointSourceSign sign;
    };
    for (const Run& run : {Run{Case::boundary, 0.5, PointSourceSign::negative},
                           Run{Case::internal, 1.3, PointSourceSign::negative},
                           Run{Case::pointwise, 2.0, PointSourceSign::negative},
                           Run{Case::pointwise, 1.0, PointSourceSign::positive}}) {
        for (std::uint64_t seed : {1u, 2u, 3u}) {
            const auto cmp = compare_with_oracle(run.c, Stepper::explicit_leapfrog, 8, run.mu, 200, seed, run.sign);
            INFO(to_string(run.c) << " seed " << seed << " diff " << cmp.max_abs << " scale " << cmp.max_ref);
            CHECK(cmp.steps == 200);
            // the displayed sign anti-damps, so that run grows by orders of magnitude
            const double scale = run.sign == PointSourceSign::positive ? std::max(1.0, cmp.max_ref) : 1.0;
            CHECK(cmp.max_abs <= 1e-12 * scale);
        }
    }
}

TEST_CASE("implicit schemes match the oracle", "[oracle][equivalence]")
{
    for (Case c : {Case::boundary, Case::internal}) {
        const auto cmp = compare_with_oracle(c, Stepper::implicit_averaged, 8, 0.5, 200, 9);
        INFO(to_string(c) << " diff " << cmp.max_abs << " scale " << cmp.max_ref);
        CHECK(cmp.max_abs <= 1e-12 * std::max(1.0, cmp.max_ref));
    }
}
