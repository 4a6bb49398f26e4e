#include "svir/kernel.hpp"

#include "svir/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace svir {

namespace {

double trapezoid_mass(const std::vector<double>& x, const std::vector<double>& y)
{
    double mass = 0.0;
    for (std::size_t j = 1; j < x.size(); ++j) {
        mass += 0.5 * (x[j] - x[j - 1]) * (y[j] + y[j - 1]);
    }
    return mass;
}

} // namespace

std::string_view to_string(KernelFamily family)
{
    switch (family) {
    case KernelFamily::dirac:
        return "dirac";
    case KernelFamily::uniform:
        return "uniform";
    case KernelFamily::table:
        return "table";
    }
    return "unknown";
}

KernelFamily parse_kernel_family(std::string_view name)
{
    for (auto family : {KernelFamily::dirac, KernelFamily::uniform, KernelFamily::table}) {
        if (name == to_string(family)) {
            return family;
        }
    }
    throw ConfigError("unknown kernel family '" + std::string(name) + "' (expected dirac, uniform, table)");
}

DelayKernel DelayKernel::dirac(double tau0, double k)
{
    if (!std::isfinite(tau0) || !std::isfinite(k) || tau0 < 0.0 || tau0 > k) {
        throw ConfigError("dirac kernel needs 0 <= tau0 <= k, got tau0 = " + std::to_string(tau0) +
                          ", k = " + std::to_string(k));
    }
    DelayKernel g;
    g.family_ = KernelFamily::dirac;
    g.k_ = k;
    g.tau0_ = tau0;
    return g;
}

DelayKernel DelayKernel::uniform(double k)
{
    if (!std::isfinite(k) || k < 0.0) {
        throw ConfigError("uniform kernel needs k >= 0, got " + std::to_string(k));
    }
    DelayKernel g;
    g.family_ = KernelFamily::uniform;
    g.k_ = k;
    return g;
}

DelayKernel DelayKernel::table(std::vector<double> nodes, std::vector<double> densities)
{
    if (nodes.size() < 2 || nodes.size() != densities.size()) {
        throw ConfigError("table kernel needs at least two nodes and one density per node");
    }
    if (nodes.front() != 0.0) {
        throw ConfigError("table kernel nodes must start at tau = 0");
    }
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (!std::isfinite(nodes[j]) || !std::isfinite(densities[j]) || densities[j] < 0.0) {
            throw ConfigError("table kernel entries must be finite with nonnegative densities");
        }
        if (j > 0 && !(nodes[j] > nodes[j - 1])) {
            throw ConfigError("table kernel nodes must be strictly increasing");
        }
    }
    const double mass = trapezoid_mass(nodes, densities);
    if (!(mass > 0.0)) {
        throw ConfigError("table kernel has zero mass");
    }
    for (double& d : densities) {
        d /= mass;
    }
    DelayKernel g;
    g.family_ = KernelFamily::table;
    g.k_ = nodes.back();
    g.nodes_ = std::move(nodes);
    g.densities_ = std::move(densities);
    return g;
}

double DelayKernel::density(double tau) const
{
    if (tau < 0.0 || tau > k_) {
        return 0.0;
    }
    switch (family_) {
    case KernelFamily::dirac:
        return 0.0;
    case KernelFamily::uniform:
        return k_ > 0.0 ? 1.0 / k_ : 0.0;
    case KernelFamily::table: {
        auto it = std::upper_bound(nodes_.begin(), nodes_.end(), tau);
        if (it == nodes_.end()) {
            return densities_.back();
        }
        const auto j = static_cast<std::size_t>(it - nodes_.begin());
        const double w = (tau - nodes_[j - 1]) / (nodes_[j] - nodes_[j - 1]);
        return (1.0 - w) * densities_[j - 1] + w * densities_[j];
    }
    }
    return 0.0;
}

double kernel_mass(const DelayKernel& g)
{
    switch (g.family()) {
    case KernelFamily::dirac:
        return 1.0;
    case KernelFamily::uniform:
        // density 1/k over length k; k = 0 is the point-mass limit
        return 1.0;
    case KernelFamily::table:
        return trapezoid_mass(g.table_nodes(), g.table_densities());
    }
    return 0.0;
}

} // namespace svir
