#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace delaywave {

/// Tridiagonal system stored by diagonals; lower[0] and upper[n-1] are unused.
struct Tridiagonal {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;

    explicit Tridiagonal(std::size_t n) : lower(n, 0.0), diag(n, 0.0), upper(n, 0.0) {}
    [[nodiscard]] std::size_t size() const { return diag.size(); }
};

class SingularSystem : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thomas algorithm without pivoting. Throws SingularSystem on a vanishing pivot.
std::vector<double> solve(const Tridiagonal& a, std::span<const double> rhs);

}  // namespace delaywave
