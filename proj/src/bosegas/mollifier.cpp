#include "bosegas/mollifier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "bosegas/quadrature.hpp"

namespace bosegas {

namespace {

// C-infinity step: 1 at u<=0, 0 at u>=1.
double smooth_step(double u) {
    if (u <= 0.0) return 1.0;
    if (u >= 1.0) return 0.0;
    const double ha = std::exp(-1.0 / (1.0 - u));
    const double hb = std::exp(-1.0 / u);
    return ha / (ha + hb);
}

double shape(double r) {
    if (r <= 1.5) return 1.0;
    if (r >= 2.0) return 0.0;
    return smooth_step((r - 1.5) * 2.0);
}

} // namespace

Mollifier::Mollifier() {
    const double mass = 4.0 * M_PI * integrate([](double r) { return r * r * shape(r); }, 0.0, 2.0, 1e-13);
    g0_ = 1.0 / mass;
}

double Mollifier::operator()(double r) const { return g0_ * shape(r); }

double Mollifier::scaled(double r, int m) const {
    const double m3 = static_cast<double>(m) * m * m;
    return m3 * (*this)(m * r);
}

double Mollifier::l1_norm(int m) const {
    const double hi = 2.0 / m;
    return 4.0 * M_PI * integrate([&](double r) { return r * r * scaled(r, m); }, 0.0, hi, 1e-12);
}

MajorantResult mollified_majorant(const RadialPotential& f, int n, int m) {
    if (n < 1 || m < 1) throw std::domain_error("mollified_majorant: n, m >= 1 required");
    if (f.range() > 1.0 + 1e-12) throw std::domain_error("mollified_majorant: f not supported in unit ball");

    const Mollifier g;
    const double grid_h = 5e-4;
    const int npts = static_cast<int>(std::lround(2.0 / grid_h)) + 1; // r in [0, 2]

    // Lipschitz upper envelope of f with slope K_n; supported within the
    // 1.5-ball for every n >= 1 since the extension is sup_norm / K_n <= 1/(2n).
    const double K = 2.0 * n * std::max(f.sup_norm(), 1.0);
    std::vector<double> env(npts, 0.0);
    for (int i = 0; i < npts; ++i) env[i] = f(i * grid_h);
    for (int i = 1; i < npts; ++i) env[i] = std::max(env[i], env[i - 1] - K * grid_h);
    for (int i = npts - 2; i >= 0; --i) env[i] = std::max(env[i], env[i + 1] - K * grid_h);

    if (f.is_zero()) {
        MajorantResult res;
        res.majorant = RadialPotential::zero();
        return res;
    }

    // T(x) = Int_0^x t g_m(t) dt on a fine grid over the support of g_m.
    const double gm_hi = 2.0 / m;
    const int nt = 40000;
    const double ht = gm_hi / nt;
    std::vector<double> tcum(nt + 1, 0.0);
    for (int i = 0; i < nt; ++i) {
        const double lo = i * ht;
        tcum[i + 1] = tcum[i] + integrate([&](double t) { return t * g.scaled(t, m); }, lo, lo + ht, 1e-11);
    }
    const double t_total = tcum[nt];
    auto T = [&](double x) -> double {
        if (x <= 0.0) return 0.0;
        if (x >= gm_hi) return t_total;
        const double s = x / ht;
        const int i = std::min(nt - 1, static_cast<int>(s));
        const double frac = s - i;
        return tcum[i] + frac * (tcum[i + 1] - tcum[i]);
    };

    auto env_at = [&](double s) -> double {
        if (s <= 0.0 || s >= 2.0) return 0.0;
        const double x = s / grid_h;
        const int i = std::min(npts - 2, static_cast<int>(x));
        const double frac = x - i;
        return env[i] + frac * (env[i + 1] - env[i]);
    };

    // 3D radial convolution (env * g_m)(r) via the shell formula.
    const double env_hi = 1.5;
    auto conv_at = [&](double r) -> double {
        if (r < 1e-9) {
            return 4.0 * M_PI *
                   integrate([&](double s) { return s * s * env_at(s) * g.scaled(s, m); }, 0.0,
                             std::min(env_hi, gm_hi), 1e-10, 1e-14);
        }
        const double lo = std::max(0.0, r - gm_hi);
        const double hi = std::min(env_hi, r + gm_hi);
        if (hi <= lo) return 0.0;
        const double val = integrate(
            [&](double s) { return s * env_at(s) * (T(r + s) - T(std::abs(r - s))); }, lo, hi, 1e-10, 1e-14);
        return 2.0 * M_PI / r * val;
    };

    // Output grid at 1e-3 spacing (the verification grid of the majorant
    // property); the construction grid is twice as fine so env is exact there.
    const double out_h = 1e-3;
    const int nout = static_cast<int>(std::lround(2.0 / out_h)) + 1;
    std::vector<double> conv(nout);
    double sup_defect = 0.0;
    for (int i = 0; i < nout; ++i) {
        const double r = i * out_h;
        conv[i] = std::max(0.0, conv_at(r));
        sup_defect = std::max(sup_defect, std::abs(conv[i] - env[2 * i]));
    }

    std::vector<std::pair<double, double>> samples(nout);
    for (int i = 0; i < nout; ++i) {
        const double r = i * out_h;
        samples[i] = {r, conv[i] + sup_defect / g.plateau() * g(r)};
    }
    MajorantResult res;
    res.majorant = RadialPotential::from_table(samples);
    res.sup_defect = sup_defect;

    double l1 = 0.0;
    for (int i = 0; i + 1 < nout; ++i) {
        const double r0 = i * out_h, r1 = (i + 1) * out_h;
        const double d0 = std::abs(samples[i].second - f(r0)) * r0 * r0;
        const double d1 = std::abs(samples[i + 1].second - f(r1)) * r1 * r1;
        l1 += 0.5 * (d0 + d1) * (r1 - r0);
    }
    res.l1_distance = 4.0 * M_PI * l1;
    return res;
}

} // namespace bosegas
