#include "delaywave/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace delaywave {

namespace {

void check_sizes(std::span<const double> a, std::span<const double> b, std::size_t expected)
{
    if (a.size() != expected || b.size() != expected) throw std::invalid_argument("energy: level size mismatch");
}

// 1/2 sum_{j=0}^{N-1} D+u^n_j D+u^{n+1}_j on nodes 0..N
double product_potential(std::span<const double> un, std::span<const double> un1, double dx)
{
    double sum = 0.0;
    for (std::size_t j = 0; j + 1 < un.size(); ++j)
        sum += ((un[j + 1] - un[j]) / dx) * ((un1[j + 1] - un1[j]) / dx);
    return 0.5 * sum;
}

EnergyParts finish(double kinetic, double potential) { return {kinetic, potential, kinetic + potential}; }

}  // namespace

EnergyParts energy_boundary(std::span<const double> un, std::span<const double> un1, const SimParams& p)
{
    const std::size_t n = p.n_cells;
    check_sizes(un, un1, n + 1);
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double d = (un1[j] - un[j]) / p.dt;
        sum += d * d;
    }
    const double dn = (un1[n] - un[n]) / p.dt;
    return finish(0.5 * sum + 0.25 * dn * dn, product_potential(un, un1, p.dx));
}

EnergyParts energy_internal(std::span<const double> un, std::span<const double> un1, const SimParams& p)
{
    const std::size_t n = p.n_cells;
    check_sizes(un, un1, n + 1);
    double sum = 0.0;
    for (std::size_t j = 1; j < n; ++j) {
        const double d = (un1[j] - un[j]) / p.dt;
        sum += d * d;
    }
    return finish(0.5 * sum, product_potential(un, un1, p.dx));
}

EnergyParts energy_pointwise(std::span<const double> un, std::span<const double> un1, const FvMesh& mesh,
                             const SimParams& p)
{
    const std::size_t n = mesh.n_cells;
    check_sizes(un, un1, n);
    double kin = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        const double d = (un1[c] - un[c]) / p.dt;
        kin += mesh.h[c] * d * d;
    }
    // i = N carries alpha = 0; the i = 0 term sees the Dirichlet ghost u_0 = 0
    double pot = mesh.alpha[0] * un1[0] * un[0];
    for (std::size_t i = 1; i < n; ++i) pot += mesh.alpha[i] * (un1[i] - un1[i - 1]) * (un[i] - un[i - 1]);
    return finish(0.5 * kin, 0.5 * pot);
}

EnergyParts energy_boundary(const WaveState& st, const SimParams& p)
{
    return energy_boundary(st.u_curr, st.u_next, p);
}

EnergyParts energy_internal(const WaveState& st, const SimParams& p)
{
    return energy_internal(st.u_curr, st.u_next, p);
}

EnergyParts energy_pointwise(const WaveState& st, const FvMesh& mesh, const SimParams& p)
{
    return energy_pointwise(st.u_curr, st.u_next, mesh, p);
}

EnergyParts energy_implicit_variant(std::span<const double> un, std::span<const double> un1, const SimParams& p)
{
    if (p.case_kind == Case::pointwise)
        throw std::invalid_argument("implicit-variant energy is unsupported for the pointwise scheme");
    const EnergyParts e = p.case_kind == Case::boundary ? energy_boundary(un, un1, p) : energy_internal(un, un1, p);
    double sum = 0.0;
    for (std::size_t j = 0; j + 1 < un.size(); ++j) {
        const double a = (un[j + 1] - un[j]) / p.dx;
        const double b = (un1[j + 1] - un1[j]) / p.dx;
        sum += a * a + b * b;
    }
    return finish(e.kinetic, 0.25 * sum);
}

EnergyParts energy_implicit_variant(const WaveState& st, const SimParams& p)
{
    return energy_implicit_variant(st.u_curr, st.u_next, p);
}

void EnergyTrace::append(const EnergyRecord& r)
{
    if (!m_records.empty() && r.step <= m_records.back().step)
        throw std::invalid_argument("energy records must be strictly increasing in n");
    m_records.push_back(r);
}

void EnergyTrace::append(std::size_t step, double t, const EnergyParts& e)
{
    append(EnergyRecord{step, t, e.kinetic, e.potential, e.total});
}

std::vector<double> EnergyTrace::neg_log() const
{
    std::vector<double> out;
    out.reserve(m_records.size());
    for (const auto& r : m_records) {
        if (!(r.total > 0.0))
            throw EnergyNotPositive("energy not positive; cannot take logarithm (step " + std::to_string(r.step) + ")");
        out.push_back(-std::log(r.total));
    }
    return out;
}

std::vector<double> EnergyTrace::rate() const
{
    const auto nl = neg_log();
    std::vector<double> out;
    for (std::size_t i = 0; i < m_records.size(); ++i)
        if (m_records[i].t > 0.0) out.push_back(nl[i] / m_records[i].t);
    return out;
}

double EnergyTrace::max_relative_drift(double t_hi) const
{
    if (m_records.empty()) return 0.0;
    const double e0 = m_records.front().total;
    double worst = 0.0;
    for (const auto& r : m_records) {
        if (r.t > t_hi) break;
        worst = std::max(worst, std::abs(r.total - e0) / e0);
    }
    return worst;
}

double EnergyTrace::max_step_drift(double t_hi) const
{
    if (m_records.empty()) return 0.0;
    const double scale = std::max(m_records.front().total, 1.0);
    double worst = 0.0;
    for (std::size_t i = 1; i < m_records.size() && m_records[i].t <= t_hi; ++i)
        worst = std::max(worst, std::abs(m_records[i].total - m_records[i - 1].total) / scale);
    return worst;
}

FitWindow default_fit_window(const SimParams& p) { return {p.delay, p.final_time()}; }

DecayFit fit_decay_rate(const EnergyTrace& trace, FitWindow window)
{
    // a tiny slack keeps samples sitting exactly on the window ends
    const double slack = 1e-9 * std::max(1.0, std::abs(window.t_hi));
    std::vector<double> ts, ys;
    for (const auto& r : trace.records()) {
        if (r.t < window.t_lo - slack || r.t > window.t_hi + slack) continue;
        if (!(r.total > 0.0))
            throw EnergyNotPositive("energy not positive; cannot take logarithm (step " + std::to_string(r.step) + ")");
        ts.push_back(r.t);
        ys.push_back(-std::log(r.total));
    }
    if (ts.size() < 2) throw std::invalid_argument("decay fit needs at least two samples in the window");

    const double m = static_cast<double>(ts.size());
    double tbar = 0.0, ybar = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        tbar += ts[i];
        ybar += ys[i];
    }
    tbar /= m;
    ybar /= m;
    double stt = 0.0, sty = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        stt += (ts[i] - tbar) * (ts[i] - tbar);
        sty += (ts[i] - tbar) * (ys[i] - ybar);
    }
    DecayFit fit;
    fit.omega = sty / stt;
    fit.intercept = ybar - fit.omega * tbar;
    fit.window = {ts.front(), ts.back()};
    fit.samples = ts.size();
    double ss = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double e = ys[i] - (fit.omega * ts[i] + fit.intercept);
        ss += e * e;
    }
    fit.residual = std::sqrt(ss / m);
    return fit;
}

double periodicity_check(std::span<const double> a, std::span<const double> b, double sign)
{
    if (a.size() != b.size()) throw std::invalid_argument("periodicity check: profile length mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num = std::max(num, std::abs(a[i] - sign * b[i]));
        den = std::max(den, std::abs(b[i]));
    }
    return num / std::max(den, std::numeric_limits<double>::min());
}

}  // namespace delaywave
