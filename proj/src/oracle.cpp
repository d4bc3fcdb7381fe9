#include "delaywave/oracle.hpp"

#include <map>
#include <string>

namespace delaywave {

namespace {

using Eigen::MatrixXd;
using Eigen::RowVectorXd;

void shift_history(DenseRecurrence& r)
{
    for (std::size_t k = 1; k < r.history; ++k)
        for (std::size_t i = 0; i < r.sample_dof; ++i)
            r.matrix(r.history_index(k, i), r.history_index(k - 1, i)) = 1.0;
    for (std::size_t j = 0; j < r.dof; ++j) r.matrix(r.prev_index(j), r.u_index(j)) = 1.0;
}

// Rows of u^{n+1} for the unknown nodes of an averaged-operator step:
// A^{-1} times the right-hand side rows, with A assembled densely.
void implicit_rows(DenseRecurrence& r, const MatrixXd& rhs, std::size_t first, std::size_t unknowns, double s,
                   bool neumann_end)
{
    MatrixXd a = MatrixXd::Zero(static_cast<Eigen::Index>(unknowns), static_cast<Eigen::Index>(unknowns));
    for (std::size_t k = 0; k < unknowns; ++k) {
        a(k, k) = 1.0 + s;
        if (k > 0) a(k, k - 1) = -0.5 * s;
        if (k + 1 < unknowns) a(k, k + 1) = -0.5 * s;
    }
    if (neumann_end) a(unknowns - 1, unknowns - 2) = -s;
    const MatrixXd rows = a.partialPivLu().solve(rhs);
    for (std::size_t k = 0; k < unknowns; ++k) r.matrix.row(first + k) = rows.row(k);
}

DenseRecurrence boundary(const OracleSetup& o, OraclePhase phase)
{
    const auto& p = o.params;
    const std::size_t n = p.n_cells;
    DenseRecurrence r;
    r.dof = n + 1;
    r.sample_dof = 1;
    r.history = p.k_delay;
    r.phase = phase;
    const auto dim = static_cast<Eigen::Index>(r.dimension());
    r.matrix = MatrixXd::Zero(dim, dim);
    const double s = p.s;
    const bool delayed = phase != OraclePhase::free;
    const std::size_t vk = r.history_index(p.k_delay - 1);  // v^{n-K}

    if (o.stepper == Stepper::explicit_leapfrog) {
        for (std::size_t j = 1; j < n; ++j) {
            r.matrix(j, r.u_index(j - 1)) = s;
            r.matrix(j, r.u_index(j)) = 2.0 * (1.0 - s);
            r.matrix(j, r.u_index(j + 1)) = s;
            r.matrix(j, r.prev_index(j)) = -1.0;
        }
        r.matrix(n, r.u_index(n)) = 2.0 * (1.0 - s);
        r.matrix(n, r.u_index(n - 1)) = 2.0 * s;
        r.matrix(n, r.prev_index(n)) = -1.0;
        if (delayed) r.matrix(n, vk) = 2.0 * s * p.dx * p.mu;
    } else {
        // 2 u^n - u^{n-1} + (s/2) D2 u^{n-1} (+ delayed Neumann term), nodes 1..N
        MatrixXd rhs = MatrixXd::Zero(static_cast<Eigen::Index>(n), dim);
        for (std::size_t j = 1; j <= n; ++j) {
            const auto k = static_cast<Eigen::Index>(j - 1);
            rhs(k, r.u_index(j)) = 2.0;
            rhs(k, r.prev_index(j)) = -1.0 - s;
            if (j > 1) rhs(k, r.prev_index(j - 1)) = 0.5 * s;
            if (j < n) rhs(k, r.prev_index(j + 1)) = 0.5 * s;
        }
        rhs(n - 1, r.prev_index(n - 1)) = s;
        if (delayed) rhs(n - 1, vk) = 2.0 * s * p.dx * p.mu;
        implicit_rows(r, rhs, 1, n, s, true);
    }
    // v^n = (u^{n+1}_N - u^{n-1}_N) / (2 dt), with the u^{n+1}_N row substituted
    RowVectorXd v = r.matrix.row(n);
    v(r.prev_index(n)) -= 1.0;
    r.matrix.row(r.history_index(0)) = v / (2.0 * p.dt);
    shift_history(r);
    return r;
}

DenseRecurrence internal(const OracleSetup& o, OraclePhase phase)
{
    const auto& p = o.params;
    const std::size_t n = p.n_cells;
    const std::size_t m = p.i1 - p.i0 + 1;
    if (o.damping.size() != m) throw std::invalid_argument("oracle: damping size does not match the interval");
    DenseRecurrence r;
    r.dof = n + 1;
    r.sample_dof = m;
    r.history = p.k_delay;
    r.phase = phase;
    const auto dim = static_cast<Eigen::Index>(r.dimension());
    r.matrix = MatrixXd::Zero(dim, dim);
    const double s = p.s;
    const bool delayed = phase != OraclePhase::free;
    const double c = p.mu * p.dt * p.dt;

    if (o.stepper == Stepper::explicit_leapfrog) {
        for (std::size_t j = 1; j < n; ++j) {
            r.matrix(j, r.u_index(j - 1)) = s;
            r.matrix(j, r.u_index(j)) = 2.0 * (1.0 - s);
            r.matrix(j, r.u_index(j + 1)) = s;
            r.matrix(j, r.prev_index(j)) = -1.0;
        }
        if (delayed)
            for (std::size_t j = p.i0; j <= p.i1; ++j) r.matrix(j, r.history_index(p.k_delay - 1, j - p.i0)) = -c;
    } else {
        MatrixXd rhs = MatrixXd::Zero(static_cast<Eigen::Index>(n - 1), dim);
        for (std::size_t j = 1; j < n; ++j) {
            const auto k = static_cast<Eigen::Index>(j - 1);
            rhs(k, r.u_index(j)) = 2.0;
            rhs(k, r.prev_index(j)) = -1.0 - s;
            if (j > 1) rhs(k, r.prev_index(j - 1)) = 0.5 * s;
            if (j + 1 < n) rhs(k, r.prev_index(j + 1)) = 0.5 * s;
        }
        if (delayed)
            for (std::size_t j = p.i0; j <= p.i1; ++j)
                rhs(static_cast<Eigen::Index>(j - 1), r.history_index(p.k_delay - 1, j - p.i0)) = -c;
        implicit_rows(r, rhs, 1, n - 1, s, false);
    }
    for (std::size_t j = p.i0; j <= p.i1; ++j) {
        RowVectorXd v = r.matrix.row(j);
        v(r.prev_index(j)) -= 1.0;
        r.matrix.row(r.history_index(0, j - p.i0)) = o.damping[j - p.i0] * v / (2.0 * p.dt);
    }
    shift_history(r);
    return r;
}

DenseRecurrence pointwise(const OracleSetup& o, OraclePhase phase)
{
    const auto& p = o.params;
    if (o.stepper != Stepper::explicit_leapfrog)
        throw std::invalid_argument("oracle: the pointwise scheme has no implicit variant");
    const std::size_t n = p.n_cells;
    const std::size_t j0 = p.j0;
    const std::size_t k = p.k_delay;
    DenseRecurrence r;
    r.dof = n;
    r.sample_dof = 1;
    r.history = k + 1;
    r.phase = phase;
    const auto dim = static_cast<Eigen::Index>(r.dimension());
    r.matrix = MatrixXd::Zero(dim, dim);
    const bool delayed = phase != OraclePhase::free;
    const double sigma = o.sign == PointSourceSign::positive ? 1.0 : -1.0;
    const double dx = p.ell / static_cast<double>(n);

    // face x_{f+1/2}, f = 0..N, as a row over z; cell f is column f - 1
    auto face = [&](std::size_t f) {
        RowVectorXd row = RowVectorXd::Zero(dim);
        if (f == n) return row;
        const double a = f == 0 ? 2.0 / dx : 1.0 / dx;
        row(r.u_index(f)) -= a;
        if (f > 0) row(r.u_index(f - 1)) += a;
        return row;
    };
    RowVectorXd minus = face(j0), plus = face(j0);
    if (delayed) {
        minus(r.history_index(k - 1)) += 0.5 * sigma * p.mu;
        plus(r.history_index(k - 1)) -= 0.5 * sigma * p.mu;
    }
    const double dt2 = p.dt * p.dt;
    for (std::size_t j = 1; j <= n; ++j) {
        const RowVectorXd right = j == j0 ? minus : face(j);
        const RowVectorXd left = j == j0 + 1 ? plus : face(j - 1);
        RowVectorXd row = -(dt2 / dx) * (right - left);
        row(r.u_index(j - 1)) += 2.0;
        row(r.prev_index(j - 1)) -= 1.0;
        r.matrix.row(j - 1) = row;
    }
    RowVectorXd v = 0.5 * (r.matrix.row(j0 - 1) + r.matrix.row(j0));
    v(r.prev_index(j0 - 1)) -= 0.5;
    v(r.prev_index(j0)) -= 0.5;
    if (delayed) {
        const double c = -sigma * 0.25 * dx * p.mu;
        v(r.history_index(k - 2)) += c;  // v^{n+1-K}
        if (phase == OraclePhase::delayed_entry) {
            // v^{-1} = 2 v^0 - v^1, i.e. 2 h_{K-1} - h_{K-2}
            v(r.history_index(k - 1)) -= 2.0 * c;
            v(r.history_index(k - 2)) += c;
        } else {
            v(r.history_index(k)) -= c;
        }
    }
    r.matrix.row(r.history_index(0)) = v / (2.0 * p.dt);
    shift_history(r);
    return r;
}

}  // namespace

DenseRecurrence build_recurrence(const OracleSetup& setup, OraclePhase phase)
{
    if (setup.params.n_cells > oracle_max_cells)
        throw OracleTooLarge("oracle supports N <= " + std::to_string(oracle_max_cells));
    switch (setup.params.case_kind) {
        case Case::boundary: return boundary(setup, phase);
        case Case::internal: return internal(setup, phase);
        case Case::pointwise: return pointwise(setup, phase);
    }
    throw std::invalid_argument("oracle: unknown case");
}

std::vector<Eigen::VectorXd> oracle_run(const DenseRecurrence& rec, const Eigen::VectorXd& initial, std::size_t steps)
{
    if (initial.size() != static_cast<Eigen::Index>(rec.dimension()))
        throw std::invalid_argument("oracle: initial vector has the wrong dimension");
    std::vector<Eigen::VectorXd> out;
    out.reserve(steps + 1);
    out.push_back(initial);
    for (std::size_t i = 0; i < steps; ++i) out.push_back(rec.matrix * out.back());
    return out;
}

OraclePhase oracle_phase_at(const SimParams& p, std::size_t n)
{
    if (n < p.k_delay) return OraclePhase::free;
    if (n == p.k_delay && p.case_kind == Case::pointwise) return OraclePhase::delayed_entry;
    return OraclePhase::delayed;
}

std::vector<Eigen::VectorXd> oracle_trajectory(const OracleSetup& setup, const Eigen::VectorXd& initial,
                                               std::size_t n_first, std::size_t steps)
{
    std::map<OraclePhase, DenseRecurrence> cache;
    std::vector<Eigen::VectorXd> out;
    out.reserve(steps + 1);
    out.push_back(initial);
    for (std::size_t i = 0; i < steps; ++i) {
        const OraclePhase ph = oracle_phase_at(setup.params, n_first + i);
        auto it = cache.find(ph);
        if (it == cache.end()) it = cache.emplace(ph, build_recurrence(setup, ph)).first;
        out.push_back(it->second.matrix * out.back());
    }
    return out;
}

}  // namespace delaywave
