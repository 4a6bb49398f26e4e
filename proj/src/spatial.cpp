#include "svir/spatial.hpp"

#include "svir/errors.hpp"

#include <string>

namespace svir {

namespace {

void require_conforming(std::size_t size, const Grid1D& g)
{
    if (size != g.nodes()) {
        throw SizeMismatch("field has " + std::to_string(size) + " values, grid has " +
                           std::to_string(g.nodes()) + " nodes");
    }
}

} // namespace

Grid1D::Grid1D(std::size_t n_cells) : n_cells_(n_cells)
{
    if (n_cells < 2) {
        throw ConfigError("grid needs N >= 2 cells, got " + std::to_string(n_cells));
    }
}

double Grid1D::node(std::size_t k) const noexcept
{
    return k == n_cells_ ? 1.0 : static_cast<double>(k) / static_cast<double>(n_cells_);
}

void laplacian_neumann(std::span<const double> u, const Grid1D& g, std::span<double> out)
{
    require_conforming(u.size(), g);
    require_conforming(out.size(), g);
    const std::size_t n = g.cells();
    const double inv_h2 = static_cast<double>(n) * static_cast<double>(n);
    out[0] = 2.0 * (u[1] - u[0]) * inv_h2;
    for (std::size_t k = 1; k < n; ++k) {
        out[k] = (u[k + 1] - 2.0 * u[k] + u[k - 1]) * inv_h2;
    }
    out[n] = 2.0 * (u[n - 1] - u[n]) * inv_h2;
}

Field laplacian_neumann(std::span<const double> u, const Grid1D& g)
{
    Field out(u.size());
    laplacian_neumann(u, g, out);
    return out;
}

double integrate_field(std::span<const double> u, const Grid1D& g)
{
    require_conforming(u.size(), g);
    const std::size_t n = g.cells();
    double sum = 0.5 * (u[0] + u[n]);
    for (std::size_t k = 1; k < n; ++k) {
        sum += u[k];
    }
    return sum * g.spacing();
}

} // namespace svir
