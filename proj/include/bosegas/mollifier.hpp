#ifndef BOSEGAS_MOLLIFIER_HPP
#define BOSEGAS_MOLLIFIER_HPP

#include "bosegas/radial_potential.hpp"

namespace bosegas {

/// Canonical smooth radial bump: constant plateau g(x) = g(0) for |x| <= 1.5,
/// C-infinity falloff to 0 at |x| = 2, unit L1 norm in 3D.  The scaled family
/// is g_m(x) = m^3 g(m x).
class Mollifier {
public:
    Mollifier();

    double operator()(double r) const;            // base profile g
    double scaled(double r, int m) const;          // g_m
    double plateau() const { return g0_; }         // g(0)
    /// 4 pi Int r^2 g_m(r) dr, computed by quadrature (== 1 up to tolerance).
    double l1_norm(int m) const;

private:
    double g0_ = 0.0;
};

struct MollifierSpec {
    int base_scale = 1;      // m
    double plateau_value = 0; // g(0)
};

struct MajorantResult {
    RadialPotential majorant;  // F, sampled to a piecewise-linear potential
    double l1_distance = 0.0;  // ||F - f||_1 in 3D
    double sup_defect = 0.0;   // ||f_n * g_m - f_n||_inf used in the lift
};

/// Smooth majorant of a potential supported in the unit ball:
///   F = f_n * g_m + ||f_n * g_m - f_n||_inf g / g(0),
/// where f_n is a Lipschitz upper envelope of f supported in the 1.5-ball.
/// F >= f pointwise on the verification grid and supp F is in the 2-ball.
MajorantResult mollified_majorant(const RadialPotential& f, int n, int m);

} // namespace bosegas

#endif
