#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace delaywave {

/// Three consecutive time levels of the discrete solution.
///
/// After the stencil at time index `step` = n has been applied the state
/// holds u^{n-1}, u^n and u^{n+1}. Right after initialization n = 0 and
/// `u_prev` holds the ghost level u^{-1} = u^1 - 2 dt u_1.
struct WaveState {
    std::vector<double> u_prev;
    std::vector<double> u_curr;
    std::vector<double> u_next;
    std::size_t step = 0;

    WaveState() = default;
    explicit WaveState(std::size_t size) : u_prev(size, 0.0), u_curr(size, 0.0), u_next(size, 0.0) {}

    [[nodiscard]] std::size_t size() const { return u_curr.size(); }

    /// prev <- curr <- next, step + 1. `u_next` keeps stale data until the
    /// caller overwrites it.
    void rotate()
    {
        std::swap(u_prev, u_curr);
        std::swap(u_curr, u_next);
        ++step;
    }
};

/// a * x + b * y for states with identical shape and step.
WaveState combine(double a, const WaveState& x, double b, const WaveState& y);

using Profile = std::function<double(double)>;

std::vector<double> sample(const Profile& f, std::span<const double> positions);

}  // namespace delaywave
