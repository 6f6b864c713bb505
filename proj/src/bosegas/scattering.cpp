#include "bosegas/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bosegas/quadrature.hpp"

namespace bosegas {

namespace {

// cubic Hermite value/derivative on one interval
double hermite(double r0, double r1, double y0, double y1, double d0, double d1, double r, bool deriv) {
    const double h = r1 - r0;
    const double t = (r - r0) / h;
    const double t2 = t * t, t3 = t2 * t;
    if (!deriv) {
        return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * d0 + (-2 * t3 + 3 * t2) * y1 +
               (t3 - t2) * h * d1;
    }
    return ((6 * t2 - 6 * t) * y0 + (3 * t2 - 4 * t + 1) * h * d0 + (-6 * t2 + 6 * t) * y1 +
            (3 * t2 - 2 * t) * h * d1) /
           h;
}

struct Interp {
    const ScatteringSolution* s;
    double operator()(double r, bool deriv = false) const {
        const auto& rs = s->r;
        if (r <= rs.front()) return deriv ? s->du.front() : s->u.front();
        if (r >= rs.back()) return deriv ? 1.0 : r - s->a;
        const auto it = std::upper_bound(rs.begin(), rs.end(), r);
        const std::size_t i = static_cast<std::size_t>(it - rs.begin()) - 1;
        return hermite(rs[i], rs[i + 1], s->u[i], s->u[i + 1], s->du[i], s->du[i + 1], r, deriv);
    }
};

} // namespace

double ScatteringSolution::w_at(double rr) const {
    if (rr < 0.0) throw std::domain_error("w_at: r < 0");
    if (rr == 0.0) return 1.0 - du.front();
    if (rr >= r.back()) return a / rr;
    Interp ip{this};
    return 1.0 - ip(rr) / rr;
}

ScatteringSolution solve_zero_energy(const RadialPotential& v, double r_max, double step) {
    const double r0 = v.range();
    if (r_max <= r0) throw std::invalid_argument("solve_zero_energy: r_max must exceed the potential range");
    if (step <= 0.0) throw std::invalid_argument("solve_zero_energy: step must be positive");
    if (r0 > 0.0 && step > r0 / 200.0)
        throw std::invalid_argument("solve_zero_energy: need at least 200 steps across the range");

    ScatteringSolution sol;
    sol.r_max = r_max;
    sol.step = step;
    sol.potential = &v;

    if (v.is_zero()) {
        const int n = std::max(2, static_cast<int>(std::ceil(r_max / step)));
        for (int i = 0; i <= n; ++i) {
            const double r = r_max * i / n;
            sol.r.push_back(r);
            sol.u.push_back(r);
            sol.du.push_back(1.0);
            sol.w.push_back(0.0);
        }
        sol.a = 0.0;
        sol.ode_defect = 0.0;
        return sol;
    }

    // segment endpoints: potential breakpoints up to r0
    std::vector<double> seg = v.breakpoints();
    seg.erase(std::remove_if(seg.begin(), seg.end(), [&](double x) { return x > r0 + 1e-15; }), seg.end());
    if (seg.back() < r0) seg.push_back(r0);

    sol.r.push_back(0.0);
    sol.u.push_back(0.0);
    sol.du.push_back(1.0);

    double defect = 0.0;
    double r_cur = 0.0, u_cur = 0.0, du_cur = 1.0;
    bool first_step = true;
    for (std::size_t si = 0; si + 1 < seg.size(); ++si) {
        const double s_lo = seg[si], s_hi = seg[si + 1];
        const int nsteps = std::max(1, static_cast<int>(std::ceil((s_hi - s_lo) / step)));
        const double h = (s_hi - s_lo) / nsteps;
        // evaluate V strictly inside the segment so discontinuities at the
        // endpoints do not leak across
        auto vf = [&](double r) { return v(std::clamp(r, s_lo + 1e-14, s_hi - 1e-14)); };
        for (int k = 0; k < nsteps; ++k) {
            const double ra = s_lo + k * h;
            if (first_step) {
                // series start u = r (1 + V(0) r^2 / 12) for the first step
                const double v0 = vf(0.0);
                u_cur = h * (1.0 + v0 * h * h / 12.0);
                du_cur = 1.0 + v0 * h * h / 4.0;
                r_cur = h;
                first_step = false;
                sol.r.push_back(r_cur);
                sol.u.push_back(u_cur);
                sol.du.push_back(du_cur);
                continue;
            }
            // two RK4 half-steps; midpoint retained for the defect estimate
            double um = u_cur, dm = du_cur, rr = ra;
            double u_mid = 0.0;
            for (int half = 0; half < 2; ++half) {
                const double hh = 0.5 * h;
                const double k1u = dm, k1d = 0.5 * vf(rr) * um;
                const double k2u = dm + 0.5 * hh * k1d, k2d = 0.5 * vf(rr + 0.5 * hh) * (um + 0.5 * hh * k1u);
                const double k3u = dm + 0.5 * hh * k2d, k3d = 0.5 * vf(rr + 0.5 * hh) * (um + 0.5 * hh * k2u);
                const double k4u = dm + hh * k3d, k4d = 0.5 * vf(rr + hh) * (um + hh * k3u);
                um += hh / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
                dm += hh / 6.0 * (k1d + 2 * k2d + 2 * k3d + k4d);
                rr += hh;
                if (half == 0) u_mid = um;
            }
            // Simpson residual of u'(b) - u'(a) = Int (1/2) V u
            const double rhs = h / 6.0 *
                               (vf(ra) * u_cur + 4.0 * vf(ra + 0.5 * h) * u_mid + vf(ra + h) * um) * 0.5;
            defect = std::max(defect, std::abs(dm - du_cur - rhs));
            u_cur = um;
            du_cur = dm;
            r_cur = rr;
            sol.r.push_back(r_cur);
            sol.u.push_back(u_cur);
            sol.du.push_back(du_cur);
        }
    }

    const double slope = du_cur;
    if (slope <= 0.0 || u_cur <= 0.0)
        throw std::runtime_error("solve_zero_energy: invalid potential, u crosses zero inside the range");
    sol.a = r_cur - u_cur / slope;

    // normalize so u(r) = r - a outside the range
    for (auto& x : sol.u) x /= slope;
    for (auto& x : sol.du) x /= slope;
    defect /= slope;

    for (std::size_t i = 1; i < sol.r.size(); ++i) {
        if (sol.u[i] <= 0.0)
            throw std::runtime_error("solve_zero_energy: invalid potential, u crosses zero inside the range");
    }

    // extend to r_max with the exact exterior form
    const int next = std::max(1, static_cast<int>(std::ceil((r_max - r_cur) / step)));
    const double he = (r_max - r_cur) / next;
    for (int i = 1; i <= next; ++i) {
        const double r = r_cur + he * i;
        sol.r.push_back(r);
        sol.u.push_back(r - sol.a);
        sol.du.push_back(1.0);
    }

    sol.w.resize(sol.r.size());
    sol.w[0] = 1.0 - sol.du[0];
    for (std::size_t i = 1; i < sol.r.size(); ++i) sol.w[i] = 1.0 - sol.u[i] / sol.r[i];
    sol.ode_defect = defect;
    return sol;
}

double scattering_length_integral(const ScatteringSolution& sol, const RadialPotential& v) {
    if (sol.potential != &v && sol.r_max <= v.range())
        throw std::invalid_argument("scattering_length_integral: solution does not cover the potential");
    if (v.is_zero()) return 0.0;
    Interp ip{&sol};
    const auto bp = v.breakpoints();
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
        total += integrate([&](double r) { return 0.5 * v(r) * r * ip(r); }, bp[i], bp[i + 1], 1e-12,
                           1e-16);
    }
    return total; // (1/4pi) * 4pi * Int (1/2) V (1-w) r^2 dr
}

double g_hat(const ScatteringSolution& sol, const RadialPotential& v, double p) {
    if (p < 0.0) throw std::domain_error("g_hat: p < 0");
    if (v.is_zero()) return 0.0;
    Interp ip{&sol};
    const auto bp = v.breakpoints();
    const double osc = (p > 1.0) ? M_PI / p : v.range();
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
        const double a = bp[i], b = bp[i + 1];
        const int chunks = std::max(1, static_cast<int>(std::ceil((b - a) / osc)));
        const double h = (b - a) / chunks;
        for (int c = 0; c < chunks; ++c) {
            const double lo = a + c * h, hi = (c + 1 == chunks) ? b : a + (c + 1) * h;
            total += integrate([&](double r) { return 0.5 * v(r) * r * ip(r) * sinc(p * r); }, lo, hi,
                               1e-12, 1e-16);
        }
    }
    return 4.0 * M_PI * total;
}

double w_fourier(const ScatteringSolution& sol, const RadialPotential& v, double p) {
    if (p == 0.0) throw std::domain_error("w_fourier: w_0 is undefined");
    return g_hat(sol, v, std::abs(p)) / (p * p);
}

WNorms w_norms(const ScatteringSolution& sol, const RadialPotential& v) {
    WNorms n;
    if (v.is_zero()) return n;
    Interp ip{&sol};
    const double r_end = v.range();
    auto wf = [&](double r) { return 1.0 - ip(r) / r; };
    auto dwf = [&](double r) { return (ip(r) / r - ip(r, true)) / r; };
    const auto bp = v.breakpoints();
    double grad = 0.0, vw = 0.0, vw2 = 0.0;
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
        const double lo = std::max(bp[i], 1e-9);
        const double hi = bp[i + 1];
        if (hi <= lo) continue;
        grad += integrate([&](double r) { const double d = dwf(r); return d * d * r * r; }, lo, hi, 1e-11, 1e-16);
        vw += integrate([&](double r) { return 0.5 * v(r) * wf(r) * r * r; }, lo, hi, 1e-12, 1e-16);
        vw2 += integrate([&](double r) { const double w = wf(r); return 0.5 * v(r) * w * w * r * r; }, lo, hi,
                         1e-12, 1e-16);
    }
    grad += sol.a * sol.a / r_end; // exact exterior tail of |w'|^2 r^2
    n.grad_w_sq = 4.0 * M_PI * grad;
    n.half_v_w = 4.0 * M_PI * vw;
    n.half_v_w_sq = 4.0 * M_PI * vw2;
    n.half_vhat0 = 0.5 * fourier_hat(v, 0.0, 1e-12);
    return n;
}

} // namespace bosegas
