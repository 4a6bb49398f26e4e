#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace svir {

/// Nodal values on a Grid1D.
using Field = std::vector<double>;

/// Uniform grid on [0, 1] with nodes x_k = k h, k = 0..N, h = 1/N.
class Grid1D {
public:
    /// Throws ConfigError for N < 2.
    explicit Grid1D(std::size_t n_cells);

    std::size_t cells() const noexcept { return n_cells_; }
    std::size_t nodes() const noexcept { return n_cells_ + 1; }
    double spacing() const noexcept { return 1.0 / static_cast<double>(n_cells_); }
    double node(std::size_t k) const noexcept;

private:
    std::size_t n_cells_;
};

/// Second-order Neumann Laplacian with ghost-node reflection (u_{-1} = u_1, u_{N+1} = u_{N-1}).
void laplacian_neumann(std::span<const double> u, const Grid1D& g, std::span<double> out);
Field laplacian_neumann(std::span<const double> u, const Grid1D& g);

/// Composite trapezoid rule over [0, 1].
double integrate_field(std::span<const double> u, const Grid1D& g);

} // namespace svir
