#pragma once

// Pieces shared by the two finite-difference schemes.

#include "delaywave/params.hpp"
#include "delaywave/scheme_common.hpp"
#include "delaywave/tridiagonal.hpp"

#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace delaywave::fd {

/// Leapfrog update of nodes lo..hi (inclusive).
inline void leapfrog(std::span<const double> prev, std::span<const double> curr, std::span<double> next, double s,
                     std::size_t lo, std::size_t hi)
{
    for (std::size_t j = lo; j <= hi; ++j)
        next[j] = s * (curr[j + 1] + curr[j - 1]) + 2.0 * (1.0 - s) * curr[j] - prev[j];
}

/// Second difference of u at node j (no 1/dx^2 factor). Deliberately naive.
inline double second_difference(std::span<const double> u, std::size_t j)
{
    return u[j + 1] - 2.0 * u[j] + u[j - 1];
}

/// I - (s/2) D2 restricted to the unknown nodes. For `neumann_end` the last
/// unknown is the node N with ghost elimination, D2 row (2, -2).
inline Tridiagonal averaged_operator(std::size_t unknowns, double s, bool neumann_end)
{
    Tridiagonal a(unknowns);
    for (std::size_t r = 0; r < unknowns; ++r) {
        a.diag[r] = 1.0 + s;
        if (r > 0) a.lower[r] = -0.5 * s;
        if (r + 1 < unknowns) a.upper[r] = -0.5 * s;
    }
    if (neumann_end) a.lower[unknowns - 1] = -s;
    return a;
}

inline void check_window(const SimParams& p, std::size_t n, Phase expected)
{
    if (n >= p.m_total)
        throw PhaseError("phase error: step " + std::to_string(n) + " is past the final time index " +
                         std::to_string(p.m_total));
    if (p.phase_at(n) != expected)
        throw PhaseError(std::string("phase error: step ") + std::to_string(n) + " is in the " +
                         (p.phase_at(n) == Phase::free ? "free" : "delayed") + " phase");
}

inline void require_dirichlet(double value, double scale, const char* where)
{
    if (std::abs(value) > 1e-12 * std::max(1.0, scale))
        throw IncompatibleData(std::string("incompatible initial datum: u0 must vanish at ") + where);
}

inline double sup_norm(std::span<const double> u)
{
    double m = 0.0;
    for (double x : u) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace delaywave::fd
