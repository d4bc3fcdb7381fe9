#include "delaywave/fv_mesh.hpp"
#include "delaywave/tridiagonal.hpp"
#include "delaywave/wave_state.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace delaywave {

WaveState combine(double a, const WaveState& x, double b, const WaveState& y)
{
    if (x.size() != y.size() || x.step != y.step) throw std::invalid_argument("cannot combine mismatched states");
    WaveState out(x.size());
    out.step = x.step;
    for (std::size_t i = 0; i < x.size(); ++i) {
        out.u_prev[i] = a * x.u_prev[i] + b * y.u_prev[i];
        out.u_curr[i] = a * x.u_curr[i] + b * y.u_curr[i];
        out.u_next[i] = a * x.u_next[i] + b * y.u_next[i];
    }
    return out;
}

std::vector<double> sample(const Profile& f, std::span<const double> positions)
{
    std::vector<double> out;
    out.reserve(positions.size());
    for (double x : positions) out.push_back(f(x));
    return out;
}

FvMesh::FvMesh(double ell, std::size_t n) : n_cells(n), dx(ell / static_cast<double>(n))
{
    interfaces.resize(n + 1);
    alpha.resize(n + 1);
    centers.resize(n);
    h.assign(n, dx);
    for (std::size_t j = 0; j <= n; ++j) interfaces[j] = static_cast<double>(j) * dx;
    interfaces[n] = ell;
    for (std::size_t j = 1; j <= n; ++j) centers[j - 1] = (static_cast<double>(j) - 0.5) * dx;
    alpha[0] = 2.0 / dx;
    for (std::size_t j = 1; j < n; ++j) alpha[j] = 1.0 / dx;
    alpha[n] = 0.0;
}

std::vector<double> solve(const Tridiagonal& a, std::span<const double> rhs)
{
    const std::size_t n = a.size();
    if (rhs.size() != n) throw std::invalid_argument("rhs size does not match the system");
    std::vector<double> c(n), x(rhs.begin(), rhs.end());
    auto check = [](double pivot) {
        if (std::abs(pivot) < std::numeric_limits<double>::min() * 1e4) throw SingularSystem("singular tridiagonal system");
    };
    check(a.diag[0]);
    c[0] = n > 1 ? a.upper[0] / a.diag[0] : 0.0;
    x[0] /= a.diag[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double pivot = a.diag[i] - a.lower[i] * c[i - 1];
        check(pivot);
        c[i] = i + 1 < n ? a.upper[i] / pivot : 0.0;
        x[i] = (x[i] - a.lower[i] * x[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
    return x;
}

}  // namespace delaywave
