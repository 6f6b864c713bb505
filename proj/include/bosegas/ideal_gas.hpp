#ifndef BOSEGAS_IDEAL_GAS_HPP
#define BOSEGAS_IDEAL_GAS_HPP

#include <optional>
#include <utility>
#include <vector>

namespace bosegas {

/// Riemann zeta on s > 1 via Euler-Maclaurin tail correction, ~1e-14 accurate.
double riemann_zeta(double s);

/// Polylogarithm Li_s(z) for 0 <= z <= 1 by direct series; z = 1 gives zeta(s).
double polylog(double s, double z);

struct ThermoPoint {
    double rho = 0.0;
    double beta = 0.0;
    double mu = 0.0;      // <= 0; exactly 0 at and above the critical density
    double rho_c = 0.0;
    double f0 = 0.0;      // ideal-gas free energy per volume
    bool below_critical = false; // rho < rho_c
};

/// rho_c = (4 pi beta)^(-3/2) zeta(3/2).
double critical_density(double beta);
/// Same value through the density integral; series cross-check lives in tests.
double critical_density_quadrature(double beta, double rel_tol = 1e-11);

/// Density of the ideal gas at chemical potential mu <= 0 (radial quadrature).
double density_integral(double mu, double beta, double rel_tol = 1e-12);
/// Series route: (4 pi beta)^(-3/2) Li_{3/2}(e^{beta mu}).
double density_series(double mu, double beta);

/// mu(rho, beta): 0 at or above rho_c, otherwise the unique negative root of
/// the density relation, found by bisection on mu = -exp(t).
double chemical_potential(double rho, double beta);

/// Ideal-gas free energy per volume (quadrature route).
double free_energy_density(double rho, double beta);
/// Series route via Li_{5/2}.
double free_energy_density_series(double rho, double beta);

ThermoPoint thermo_point(double rho, double beta);

/// beta(rho) = c rho^{-2/3} with optional tabulated overrides (log-log
/// interpolation between table points).
struct TemperatureSchedule {
    double c = 1.0;
    std::vector<std::pair<double, double>> table; // (rho, beta), sorted by rho

    double beta(double rho) const;
};

/// R[beta] = (4 pi)^{-3/2} zeta(3/2) c^{-3/2} for the power-law schedule.
double ratio_R(const TemperatureSchedule& schedule);

/// 4 pi a (2 rho^2 - [rho - rho_c]_+^2), the leading free-energy shift.
double delta_f_leading(double a, double rho, double rho_c);

/// Truncated ("revised Bose") per-mode statistics on a finite mode set.
/// cap < 0 means no truncation; beta*E <= 0 without a cap is a domain error.
struct LatticeModeSum {
    double free_energy = 0.0;        // -beta^{-1} sum log Z_k + mu * mean_total
    double mean_total = 0.0;
    std::vector<double> mean_occupation;
};

LatticeModeSum lattice_ideal_sums(const std::vector<double>& energies, double beta, double mu,
                                  const std::vector<long>& caps);

/// Mean occupation of a single truncated mode, exact finite geometric sums.
double truncated_mean_occupation(double beta_e, long cap);
/// log of the truncated partition function sum_{n=0}^{cap} e^{-beta_e n}.
double truncated_log_z(double beta_e, long cap);

} // namespace bosegas

#endif
