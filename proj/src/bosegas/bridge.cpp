#include "bosegas/bridge.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "bosegas/quadrature.hpp"

namespace bosegas {

BridgeProfile::BridgeProfile(double box, double margin) : L(box), ell(margin) {
    if (box <= 0.0 || margin <= 0.0 || 2.0 * margin >= box)
        throw std::invalid_argument("BridgeProfile: need 0 < 2 ell < L");
}

double BridgeProfile::q(double x) const {
    if (x < -ell || x > L + ell) return 0.0;
    const double k = M_PI / (4.0 * ell);
    if (std::abs(x) <= ell) return std::cos((x - ell) * k);
    if (std::abs(x - L) <= ell) return std::cos((x - (L - ell)) * k);
    return 1.0;
}

double BridgeProfile::dq(double x) const {
    if (x < -ell || x > L + ell) return 0.0;
    const double k = M_PI / (4.0 * ell);
    if (std::abs(x) <= ell) return -k * std::sin((x - ell) * k);
    if (std::abs(x - L) <= ell) return -k * std::sin((x - (L - ell)) * k);
    return 0.0;
}

bool BridgeProfile::chi(double x) const {
    return (x >= -ell && x <= ell) || (x >= L - ell && x <= L + ell);
}

TrigPoly::TrigPoly(double period, std::vector<std::complex<double>> c)
    : L(period), coeffs(std::move(c)) {
    if (coeffs.empty() || coeffs.size() % 2 == 0)
        throw std::invalid_argument("TrigPoly: coefficient list must have odd length (-deg..deg)");
    degree = static_cast<int>(coeffs.size() / 2);
}

std::complex<double> TrigPoly::value(double x) const {
    std::complex<double> acc{0.0, 0.0};
    for (int n = -degree; n <= degree; ++n) {
        const double phase = 2.0 * M_PI * n * x / L;
        acc += coeffs[static_cast<std::size_t>(n + degree)] *
               std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return acc;
}

std::complex<double> TrigPoly::derivative(double x) const {
    std::complex<double> acc{0.0, 0.0};
    for (int n = -degree; n <= degree; ++n) {
        const double k = 2.0 * M_PI * n / L;
        const double phase = k * x;
        acc += coeffs[static_cast<std::size_t>(n + degree)] * std::complex<double>(0.0, k) *
               std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return acc;
}

double TrigPoly::norm_sq() const {
    double s = 0.0;
    for (const auto& c : coeffs) s += std::norm(c);
    return s * L;
}

double TrigPoly::grad_norm_sq() const {
    double s = 0.0;
    for (int n = -degree; n <= degree; ++n) {
        const double k = 2.0 * M_PI * n / L;
        s += k * k * std::norm(coeffs[static_cast<std::size_t>(n + degree)]);
    }
    return s * L;
}

namespace {

double integrate_pieces(const std::function<double(double)>& f, const std::vector<double>& cuts) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        total += integrate(f, cuts[i], cuts[i + 1], 1e-13, 1e-15);
    return total;
}

} // namespace

IsometryCheck isometry_check(const BridgeProfile& profile, const TrigPoly& phi) {
    if (std::abs(phi.L - profile.L) > 1e-12)
        throw std::domain_error("isometry_check: phi period differs from the box side");
    IsometryCheck out;
    out.norm_in = phi.norm_sq();
    const double l = profile.ell, L = profile.L;
    out.norm_out = integrate_pieces(
        [&](double x) {
            const double qq = profile.q(x);
            return qq * qq * std::norm(phi.value(x));
        },
        {-l, l, L - l, L + l});
    out.defect = std::abs(out.norm_out - out.norm_in);
    return out;
}

KineticPenalty kinetic_penalty(const BridgeProfile& profile, const TrigPoly& phi) {
    if (std::abs(phi.L - profile.L) > 1e-12)
        throw std::domain_error("kinetic_penalty: phi period differs from the box side");
    KineticPenalty out;
    out.ell = profile.ell;
    out.grad_in = phi.grad_norm_sq();
    const double l = profile.ell, L = profile.L;
    out.lhs = integrate_pieces(
        [&](double x) {
            const std::complex<double> v =
                profile.dq(x) * phi.value(x) + profile.q(x) * phi.derivative(x);
            return std::norm(v);
        },
        {-l, l, L - l, L + l});
    out.boundary_mass =
        integrate_pieces([&](double x) { return std::norm(phi.value(x)); }, {-l, l}) +
        integrate_pieces([&](double x) { return std::norm(phi.value(x)); }, {L - l, L + l});
    out.required_c = (out.lhs - out.grad_in) * l * l / out.boundary_mass;
    return out;
}

BoxRescale box_rescale(double box_side, double rho) {
    if (box_side <= 0.0 || rho <= 0.0) throw std::domain_error("box_rescale: positive inputs required");
    BoxRescale out;
    const long double v = static_cast<long double>(box_side) * box_side * box_side;
    const long double factor =
        powl(1.0L + 2.0L * powl(static_cast<long double>(rho), 41.0L / 120.0L), 3.0L);
    const long double v_out = v * factor;
    const long double rho_out = static_cast<long double>(rho) / factor;
    out.volume_in = static_cast<double>(v);
    out.rho_in = rho;
    out.volume_out = static_cast<double>(v_out);
    out.rho_out = static_cast<double>(rho_out);
    out.conservation_defect =
        static_cast<double>(fabsl(rho_out * v_out - static_cast<long double>(rho) * v) /
                            (static_cast<long double>(rho) * v));
    return out;
}

TransferCheck entropy_transfer_check(const BridgeProfile& profile,
                                     const std::vector<double>& weights,
                                     const Eigen::MatrixXcd& states, int grid_points) {
    const int n = static_cast<int>(weights.size());
    if (states.cols() != n) throw std::invalid_argument("entropy_transfer_check: size mismatch");
    if (states.rows() != grid_points)
        throw std::invalid_argument("entropy_transfer_check: states must live on the base grid");
    const double L = profile.L, l = profile.ell;
    const double dx = L / grid_points;
    const int pad = static_cast<int>(std::lround(l / dx));
    if (std::abs(pad * dx - l) > 1e-12 * L)
        throw std::invalid_argument("entropy_transfer_check: ell must be a multiple of the grid step");

    Eigen::MatrixXcd base = states;
    for (int c = 0; c < n; ++c) base.col(c) /= base.col(c).norm();

    // discrete bridge map on x_j = -ell + j dx: q-weighted periodic extension;
    // the cosine pairing q(x)^2 + q(x + L)^2 = 1 makes it an exact isometry
    const int m = grid_points + 2 * pad;
    Eigen::MatrixXcd img(m, n);
    for (int c = 0; c < n; ++c) {
        for (int j = 0; j < m; ++j) {
            const double x = -l + j * dx;
            int bidx = static_cast<int>(std::lround(x / dx)) % grid_points;
            if (bidx < 0) bidx += grid_points;
            img(j, c) = profile.q(x) * base(bidx, c);
        }
    }

    auto spectrum_of = [&](const Eigen::MatrixXcd& vecs) {
        Eigen::MatrixXcd overlap = vecs.adjoint() * vecs;
        Eigen::MatrixXd k(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                k(i, j) = std::sqrt(weights[static_cast<std::size_t>(i)] *
                                    weights[static_cast<std::size_t>(j)]) *
                          overlap(i, j).real();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k);
        return Eigen::VectorXd(es.eigenvalues());
    };

    const Eigen::VectorXd before = spectrum_of(base);
    const Eigen::VectorXd after = spectrum_of(img);
    TransferCheck out;
    for (int i = 0; i < n; ++i) {
        out.spectrum_defect = std::max(out.spectrum_defect, std::abs(before[i] - after[i]));
        if (before[i] > 1e-300) out.entropy_before -= before[i] * std::log(before[i]);
        if (after[i] > 1e-300) out.entropy_after -= after[i] * std::log(after[i]);
    }
    return out;
}

ShiftScan shift_scan(const BridgeProfile& profile, const TrigPoly& phi, int n_shifts) {
    if (n_shifts < 1) throw std::invalid_argument("shift_scan: need at least one shift");
    ShiftScan out;
    out.best_mass = 1e300;
    const double L = profile.L;
    const double period = L + 2.0 * profile.ell;
    for (int i = 0; i < n_shifts; ++i) {
        const double u = L * i / n_shifts;
        const double mass = integrate(
            [&](double x) {
                double y = x + u;
                y -= std::floor((y + profile.ell) / period) * period; // wrap to [-ell, L+ell)
                return profile.chi(y) ? std::norm(phi.value(x)) : 0.0;
            },
            0.0, L, 1e-9, 1e-12);
        out.mean_mass += mass / n_shifts;
        if (mass < out.best_mass) {
            out.best_mass = mass;
            out.best_u = u;
        }
    }
    return out;
}

} // namespace bosegas
