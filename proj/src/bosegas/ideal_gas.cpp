#include "bosegas/ideal_gas.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bosegas/quadrature.hpp"

namespace bosegas {

double riemann_zeta(double s) {
    if (s <= 1.0) throw std::domain_error("riemann_zeta: s must exceed 1");
    const int n = 64;
    double sum = 0.0;
    for (int k = 1; k <= n; ++k) sum += std::pow(k, -s);
    // Euler-Maclaurin tail: Int_n^inf + 1/2 n^-s + s/12 n^{-s-1} - s(s+1)(s+2)/720 n^{-s-3}
    const double ns = std::pow(n, -s);
    sum += std::pow(n, 1.0 - s) / (s - 1.0) - 0.5 * ns + s / 12.0 * ns / n -
           s * (s + 1.0) * (s + 2.0) / 720.0 * ns / (static_cast<double>(n) * n * n);
    return sum;
}

double polylog(double s, double z) {
    if (z < 0.0 || z > 1.0) throw std::domain_error("polylog: z must be in [0,1]");
    if (z == 1.0) return riemann_zeta(s);
    if (z == 0.0) return 0.0;
    double sum = 0.0, term = 0.0;
    double zk = 1.0;
    for (long k = 1; k <= 100000000L; ++k) {
        zk *= z;
        term = zk * std::pow(static_cast<double>(k), -s);
        sum += term;
        if (term < 1e-17 * sum && k > 8) return sum;
    }
    throw std::runtime_error("polylog: series did not converge (z too close to 1)");
}

double critical_density(double beta) {
    if (beta <= 0.0) throw std::domain_error("critical_density: beta must be positive");
    return std::pow(4.0 * M_PI * beta, -1.5) * riemann_zeta(1.5);
}

double density_integral(double mu, double beta, double rel_tol) {
    if (beta <= 0.0) throw std::domain_error("density_integral: beta must be positive");
    if (mu > 0.0) throw std::domain_error("density_integral: mu must be <= 0");
    const double r_hi = std::sqrt((80.0 - beta * mu) / beta);
    auto f = [&](double r) {
        const double x = beta * (r * r - mu);
        return r * r / std::expm1(x);
    };
    const double val = integrate(f, 0.0, r_hi, rel_tol * 0.1, 1e-300);
    return val * 4.0 * M_PI / std::pow(2.0 * M_PI, 3);
}

double density_series(double mu, double beta) {
    return std::pow(4.0 * M_PI * beta, -1.5) * polylog(1.5, std::exp(beta * mu));
}

double critical_density_quadrature(double beta, double rel_tol) {
    return density_integral(0.0, beta, rel_tol);
}

double chemical_potential(double rho, double beta) {
    if (rho <= 0.0 || beta <= 0.0) throw std::domain_error("chemical_potential: rho, beta > 0 required");
    const double rc = critical_density(beta);
    if (rho >= rc) return 0.0;
    // bisection on mu = -exp(t); density is decreasing in t
    auto density_of_t = [&](double t) { return density_integral(-std::exp(std::min(t, 690.0)), beta); };
    double t_lo = -690.0, t_hi = 5.0;
    // expand until the density falls below rho; e^{beta mu} decay guarantees it
    while (density_of_t(t_hi) > rho && t_hi < 690.0) t_hi = std::min(690.0, t_hi + 8.0);
    for (int it = 0; it < 200; ++it) {
        const double t = 0.5 * (t_lo + t_hi);
        const double d = density_of_t(t);
        if (d > rho)
            t_lo = t;
        else
            t_hi = t;
        if (std::abs(d - rho) < 1e-12 * rho && it > 20) break;
        if (t_hi - t_lo < 1e-14) break;
    }
    return -std::exp(0.5 * (t_lo + t_hi));
}

namespace {

// log(1 - e^{-x}) with full relative accuracy on both branches
double log_one_minus_exp(double x) {
    if (x > M_LN2) return std::log1p(-std::exp(-x));
    return std::log(-std::expm1(-x));
}

double pressure_integral(double mu, double beta) {
    // (2 pi)^{-3} Int ln(1 - e^{-beta (p^2 - mu)}) d^3 p
    const double r_hi = std::sqrt((80.0 - beta * mu) / beta);
    auto f = [&](double r) {
        const double x = beta * (r * r - mu);
        return r * r * log_one_minus_exp(x);
    };
    const double val = integrate(f, 1e-12, r_hi, 1e-12, 1e-300);
    return val * 4.0 * M_PI / std::pow(2.0 * M_PI, 3);
}

} // namespace

double free_energy_density(double rho, double beta) {
    if (rho <= 0.0 || beta <= 0.0) throw std::domain_error("free_energy_density: rho, beta > 0 required");
    const double rc = critical_density(beta);
    if (rho >= rc) return pressure_integral(0.0, beta) / beta;
    const double mu = chemical_potential(rho, beta);
    return rho * mu + pressure_integral(mu, beta) / beta;
}

double free_energy_density_series(double rho, double beta) {
    if (rho <= 0.0 || beta <= 0.0) throw std::domain_error("free_energy_density_series: rho, beta > 0");
    const double rc = critical_density(beta);
    const double pref = std::pow(4.0 * M_PI * beta, -1.5) / beta;
    if (rho >= rc) return -pref * riemann_zeta(2.5);
    const double mu = chemical_potential(rho, beta);
    return rho * mu - pref * polylog(2.5, std::exp(beta * mu));
}

ThermoPoint thermo_point(double rho, double beta) {
    ThermoPoint tp;
    tp.rho = rho;
    tp.beta = beta;
    tp.rho_c = critical_density(beta);
    tp.below_critical = rho < tp.rho_c;
    tp.mu = chemical_potential(rho, beta);
    tp.f0 = free_energy_density(rho, beta);
    return tp;
}

double TemperatureSchedule::beta(double rho) const {
    if (rho <= 0.0) throw std::domain_error("TemperatureSchedule: rho must be positive");
    if (!table.empty()) {
        if (rho <= table.front().first) return table.front().second;
        if (rho >= table.back().first) return table.back().second;
        for (std::size_t i = 0; i + 1 < table.size(); ++i) {
            if (rho >= table[i].first && rho <= table[i + 1].first) {
                const double lr = std::log(rho / table[i].first) /
                                  std::log(table[i + 1].first / table[i].first);
                return table[i].second * std::pow(table[i + 1].second / table[i].second, lr);
            }
        }
    }
    return c * std::pow(rho, -2.0 / 3.0);
}

double ratio_R(const TemperatureSchedule& schedule) {
    if (schedule.c <= 0.0) throw std::domain_error("ratio_R: schedule coefficient must be positive");
    return std::pow(4.0 * M_PI, -1.5) * riemann_zeta(1.5) * std::pow(schedule.c, -1.5);
}

double delta_f_leading(double a, double rho, double rho_c) {
    if (a < 0.0 || rho <= 0.0 || rho_c < 0.0) throw std::domain_error("delta_f_leading: bad arguments");
    const double pos = std::max(rho - rho_c, 0.0);
    return 4.0 * M_PI * a * (2.0 * rho * rho - pos * pos);
}

namespace {
double log_one_minus_exp_pos(double x) {
    if (x > M_LN2) return std::log1p(-std::exp(-x));
    return std::log(-std::expm1(-x));
}
} // namespace

double truncated_log_z(double beta_e, long cap) {
    if (cap < 0) {
        if (beta_e <= 0.0) throw std::domain_error("truncated_log_z: divergent untruncated mode");
        return -log_one_minus_exp_pos(beta_e); // log 1/(1 - e^{-x})
    }
    // log sum_{n=0}^{cap} e^{-x n} = log((1 - e^{-x (cap+1)})/(1 - e^{-x}))
    if (beta_e == 0.0) return std::log(static_cast<double>(cap) + 1.0);
    return log_one_minus_exp_pos(beta_e * (cap + 1.0)) - log_one_minus_exp_pos(beta_e);
}

double truncated_mean_occupation(double beta_e, long cap) {
    if (cap < 0) {
        if (beta_e <= 0.0) throw std::domain_error("truncated_mean_occupation: divergent mode");
        return 1.0 / std::expm1(beta_e);
    }
    if (beta_e == 0.0) return 0.5 * cap;
    return 1.0 / std::expm1(beta_e) - (cap + 1.0) / std::expm1(beta_e * (cap + 1.0));
}

LatticeModeSum lattice_ideal_sums(const std::vector<double>& energies, double beta, double mu,
                                  const std::vector<long>& caps) {
    if (!caps.empty() && caps.size() != energies.size())
        throw std::invalid_argument("lattice_ideal_sums: caps size mismatch");
    LatticeModeSum out;
    double log_z = 0.0;
    for (std::size_t i = 0; i < energies.size(); ++i) {
        const long cap = caps.empty() ? -1 : caps[i];
        const double be = beta * (energies[i] - mu);
        if (be <= 0.0 && cap < 0)
            throw std::domain_error("lattice_ideal_sums: mode with beta E <= 0 and no cutoff");
        log_z += truncated_log_z(be, cap);
        const double n = truncated_mean_occupation(be, cap);
        out.mean_occupation.push_back(n);
        out.mean_total += n;
    }
    out.free_energy = -log_z / beta + mu * out.mean_total;
    return out;
}

} // namespace bosegas
