#pragma once

#include <string_view>
#include <vector>

namespace svir {

enum class KernelFamily { dirac, uniform, table };

std::string_view to_string(KernelFamily family);
KernelFamily parse_kernel_family(std::string_view name);

/// Delay density g on [0, k] with unit mass.
///
/// Table kernels are piecewise linear between (tau_j, g_j); the first node
/// must be 0 and the last node defines k. Densities are rescaled at
/// construction so the trapezoid mass of the table is exactly one.
class DelayKernel {
public:
    static DelayKernel dirac(double tau0, double k);
    static DelayKernel dirac(double tau0) { return dirac(tau0, tau0); }
    static DelayKernel uniform(double k);
    static DelayKernel table(std::vector<double> nodes, std::vector<double> densities);

    KernelFamily family() const noexcept { return family_; }
    double horizon() const noexcept { return k_; }
    double dirac_location() const noexcept { return tau0_; }

    /// Density at tau; zero outside [0, k]. Undefined (returns 0) for dirac.
    double density(double tau) const;

    const std::vector<double>& table_nodes() const noexcept { return nodes_; }
    const std::vector<double>& table_densities() const noexcept { return densities_; }

private:
    DelayKernel() = default;

    KernelFamily family_ = KernelFamily::dirac;
    double k_ = 0.0;
    double tau0_ = 0.0;
    std::vector<double> nodes_;
    std::vector<double> densities_;
};

/// Total mass of the kernel over [0, k]; one within 1e-12 for every constructible kernel.
double kernel_mass(const DelayKernel& g);

} // namespace svir
