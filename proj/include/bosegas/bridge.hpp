#ifndef BOSEGAS_BRIDGE_HPP
#define BOSEGAS_BRIDGE_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace bosegas {

/// Cosine cutoff profile q on [-ell, L+ell]: rises from 0 to 1 across
/// [-ell, ell], is 1 on [ell, L-ell], falls back to 0 across [L-ell, L+ell].
/// The tensor product h = q x q x q maps L-periodic functions isometrically
/// to Dirichlet functions on the enlarged box.
struct BridgeProfile {
    double L = 0.0;
    double ell = 0.0;

    BridgeProfile(double box, double margin);
    double q(double x) const;
    double dq(double x) const;
    /// indicator of the ell-boundary region [-ell, ell] u [L-ell, L+ell]
    bool chi(double x) const;
};

/// Trigonometric polynomial with period L: sum c_n e^{i 2 pi n x / L}.
struct TrigPoly {
    double L = 0.0;
    std::vector<std::complex<double>> coeffs; // n = -deg .. deg
    int degree = 0;

    TrigPoly(double period, std::vector<std::complex<double>> c);
    std::complex<double> value(double x) const;
    std::complex<double> derivative(double x) const;
    double norm_sq() const; // Int_0^L |phi|^2, exact from the coefficients
    double grad_norm_sq() const;
};

struct IsometryCheck {
    double norm_in = 0.0;  // Int_0^L |phi|^2
    double norm_out = 0.0; // Int_{-ell}^{L+ell} |q phi|^2
    double defect = 0.0;
};

/// 1D slice of the isometry identity; separable products cover the 3D case.
IsometryCheck isometry_check(const BridgeProfile& profile, const TrigPoly& phi);

struct KineticPenalty {
    double lhs = 0.0;           // Int |(q phi)'|^2
    double grad_in = 0.0;       // Int_0^L |phi'|^2
    double boundary_mass = 0.0; // Int chi |phi|^2 over the enlarged box
    double ell = 0.0;
    double required_c = 0.0;    // (lhs - grad_in) ell^2 / boundary_mass

    /// rhs - lhs of the penalty inequality at a given constant
    double margin_at(double c) const { return grad_in + c / (ell * ell) * boundary_mass - lhs; }
};

KineticPenalty kinetic_penalty(const BridgeProfile& profile, const TrigPoly& phi);

struct BoxRescale {
    double volume_in = 0.0, rho_in = 0.0;
    double volume_out = 0.0, rho_out = 0.0;
    double conservation_defect = 0.0; // |rho V - rho* V*| / (rho V)
};

/// |Lambda*| = |Lambda| (1 + 2 rho^{41/120})^3, rho* = rho (1 + ...)^{-3};
/// rho |Lambda| is conserved to extended precision.
BoxRescale box_rescale(double box_side, double rho);

/// Spectrum-preservation of the discretized bridge map on a 1D periodic grid:
/// entropy of the mixture before and after applying the map statewise.
struct TransferCheck {
    double entropy_before = 0.0;
    double entropy_after = 0.0;
    double spectrum_defect = 0.0; // max |eigenvalue difference|
};

TransferCheck entropy_transfer_check(const BridgeProfile& profile,
                                     const std::vector<double>& weights,
                                     const Eigen::MatrixXcd& states, int grid_points);

struct ShiftScan {
    double best_u = 0.0;
    double best_mass = 0.0;
    double mean_mass = 0.0;
};

/// Scan boundary mass Int chi(x+u) |phi|^2 over shifts u in [0, L); there is
/// always a u at or below the mean.
ShiftScan shift_scan(const BridgeProfile& profile, const TrigPoly& phi, int n_shifts);

} // namespace bosegas

#endif
