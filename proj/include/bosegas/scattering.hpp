#ifndef BOSEGAS_SCATTERING_HPP
#define BOSEGAS_SCATTERING_HPP

#include <vector>

#include "bosegas/radial_potential.hpp"

namespace bosegas {

/// Zero-energy scattering data for a finite-range radial potential.
///
/// u solves u'' = (1/2) V u with u(0) = 0, normalized so u(r) = r - a outside
/// the range; w = 1 - u/r is the scattering profile with exterior tail a/r.
class ScatteringSolution {
public:
    double a = 0.0;                 // scattering length
    double r_max = 0.0;
    double step = 0.0;
    std::vector<double> r;          // grid, r[0] = 0
    std::vector<double> u;          // normalized radial solution
    std::vector<double> du;         // u'
    std::vector<double> w;          // 1 - u/r (w[0] by limit)
    double ode_defect = 0.0;        // max integral-form residual on the grid
    const RadialPotential* potential = nullptr;

    double w_at(double rr) const;   // linear interpolation, a/rr beyond grid
};

struct WNorms {
    double grad_w_sq = 0.0;   // ||grad w||_2^2
    double half_v_w = 0.0;    // ||(1/2) V w||_1
    double half_v_w_sq = 0.0; // ||(1/2) V w^2||_1
    double half_vhat0 = 0.0;  // (1/2) V_hat(0)
};

/// Integrate the zero-energy equation with a classic 4th-order Runge-Kutta
/// scheme, grid aligned with the potential breakpoints.  Throws
/// invalid_argument when preconditions fail and runtime_error when u crosses
/// zero (the 0 <= w < 1 requirement would be violated).
ScatteringSolution solve_zero_energy(const RadialPotential& v, double r_max, double step);

/// a from the integral definition (1/4pi) Int (1/2) V (1 - w); cross-check of
/// the asymptote-derived value stored in the solution.
double scattering_length_integral(const ScatteringSolution& sol, const RadialPotential& v);

/// g_hat(p) with g = (1/2) V (1 - w), compactly supported.
double g_hat(const ScatteringSolution& sol, const RadialPotential& v, double p);

/// w_p = g_hat(p) / p^2; domain error at p = 0.
double w_fourier(const ScatteringSolution& sol, const RadialPotential& v, double p);

WNorms w_norms(const ScatteringSolution& sol, const RadialPotential& v);

} // namespace bosegas

#endif
