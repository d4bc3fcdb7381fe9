#pragma once

#include <cstddef>
#include <vector>

namespace delaywave {

/// Uniform finite-volume mesh of (0, ell) with N cells K_j = (x_{j-1/2}, x_{j+1/2}).
///
/// Vectors are 0-based: `interfaces[j]` is x_{j+1/2} (j = 0..N), `centers[j-1]`
/// is x_j, `h[j-1]` is h_j, and `alpha[j]` is the transmissivity of face
/// x_{j+1/2}. The Dirichlet face carries alpha = 2/dx (half-cell distance to
/// the boundary), interior faces 1/dx, and the Neumann face 0.
struct FvMesh {
    std::size_t n_cells = 0;
    double dx = 0.0;
    std::vector<double> interfaces;
    std::vector<double> centers;
    std::vector<double> h;
    std::vector<double> alpha;

    FvMesh() = default;
    FvMesh(double ell, std::size_t n_cells);
};

}  // namespace delaywave
