#ifndef BOSEGAS_RADIAL_POTENTIAL_HPP
#define BOSEGAS_RADIAL_POTENTIAL_HPP

#include <string>
#include <utility>
#include <vector>

namespace bosegas {

/// Spherically symmetric, nonnegative, bounded pair potential with finite
/// range.  Represented as a piecewise polynomial in r so that quadrature can
/// honor the breakpoints exactly.
class RadialPotential {
public:
    struct Piece {
        double r_lo = 0.0;
        double r_hi = 0.0;
        std::vector<double> coeffs; // value = sum_j coeffs[j] * r^j
    };

    RadialPotential() = default;
    explicit RadialPotential(std::vector<Piece> pieces);

    static RadialPotential zero() { return RadialPotential(); }
    static RadialPotential square_barrier(double v0, double r0);
    /// V(r) = v0 * (1 - r/r0) on [0, r0].
    static RadialPotential ramp(double v0, double r0);
    /// Piecewise-linear interpolation of (r, value) samples; first r must be 0.
    static RadialPotential from_table(const std::vector<std::pair<double, double>>& samples);

    /// Piecewise evaluation; 0 beyond the range, domain error for r < 0.
    double operator()(double r) const;

    double range() const { return range_; }
    double sup_norm() const { return sup_norm_; }
    bool is_zero() const { return pieces_.empty() || sup_norm_ == 0.0; }
    const std::vector<Piece>& pieces() const { return pieces_; }
    /// Sorted interval endpoints including 0 and range.
    std::vector<double> breakpoints() const;

private:
    std::vector<Piece> pieces_;
    double range_ = 0.0;
    double sup_norm_ = 0.0;
};

/// V_hat(p) = 4 pi Int_0^R0 r^2 V(r) sinc(p r) dr, the radial Fourier
/// transform of V; V_hat(0) = Int V.
double fourier_hat(const RadialPotential& v, double p, double rel_tol = 1e-10);

} // namespace bosegas

#endif
