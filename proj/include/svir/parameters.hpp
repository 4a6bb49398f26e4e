#pragma once

namespace svir {

/// Scalar constants of the diffusive SVIR model.
struct Parameters {
    double Lambda = 0.0; ///< recruitment of susceptibles
    double mu = 0.0;     ///< natural death rate
    double alpha = 0.0;  ///< vaccination rate
    double gamma1 = 0.0; ///< vaccinated -> removed rate
    double gamma = 0.0;  ///< infected recovery rate
    double c = 0.0;      ///< disease-induced death rate
    double dS = 0.0;
    double dV = 0.0;
    double dI = 0.0;
    double dR = 0.0;
    double k = 0.0; ///< maximum delay

    /// Throws ConfigError unless mu > 0 and every other entry is finite and nonnegative.
    void validate() const;

    /// Total exit rate of the infected class, gamma + mu + c.
    double infected_exit_rate() const noexcept { return gamma + mu + c; }
    double max_diffusion() const noexcept;
};

} // namespace svir
