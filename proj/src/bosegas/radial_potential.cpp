#include "bosegas/radial_potential.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bosegas/quadrature.hpp"

namespace bosegas {

namespace {

double eval_poly(const std::vector<double>& c, double r) {
    double v = 0.0;
    for (std::size_t j = c.size(); j-- > 0;) v = v * r + c[j];
    return v;
}

} // namespace

RadialPotential::RadialPotential(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
    std::sort(pieces_.begin(), pieces_.end(),
              [](const Piece& a, const Piece& b) { return a.r_lo < b.r_lo; });
    for (const auto& p : pieces_) {
        if (p.r_hi <= p.r_lo) throw std::invalid_argument("RadialPotential: empty piece");
        if (p.r_lo < 0.0) throw std::invalid_argument("RadialPotential: negative radius");
        range_ = std::max(range_, p.r_hi);
        // sup over samples; breakpoint values are included exactly
        for (int i = 0; i <= 64; ++i) {
            const double r = p.r_lo + (p.r_hi - p.r_lo) * i / 64.0;
            const double v = eval_poly(p.coeffs, r);
            if (v < -1e-12) throw std::invalid_argument("RadialPotential: negative value");
            sup_norm_ = std::max(sup_norm_, v);
        }
    }
}

RadialPotential RadialPotential::square_barrier(double v0, double r0) {
    if (v0 < 0.0 || r0 <= 0.0) throw std::invalid_argument("square_barrier: bad parameters");
    if (v0 == 0.0) return zero();
    return RadialPotential({Piece{0.0, r0, {v0}}});
}

RadialPotential RadialPotential::ramp(double v0, double r0) {
    if (v0 < 0.0 || r0 <= 0.0) throw std::invalid_argument("ramp: bad parameters");
    if (v0 == 0.0) return zero();
    return RadialPotential({Piece{0.0, r0, {v0, -v0 / r0}}});
}

RadialPotential RadialPotential::from_table(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 2) throw std::invalid_argument("from_table: need at least 2 samples");
    std::vector<Piece> pieces;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        const auto [r0, v0] = samples[i];
        const auto [r1, v1] = samples[i + 1];
        if (r1 <= r0) throw std::invalid_argument("from_table: radii not increasing");
        const double slope = (v1 - v0) / (r1 - r0);
        pieces.push_back(Piece{r0, r1, {v0 - slope * r0, slope}});
    }
    return RadialPotential(std::move(pieces));
}

double RadialPotential::operator()(double r) const {
    if (r < 0.0) throw std::domain_error("RadialPotential: r < 0");
    if (r > range_) return 0.0;
    for (const auto& p : pieces_) {
        if (r >= p.r_lo && r <= p.r_hi) return std::max(0.0, eval_poly(p.coeffs, r));
    }
    return 0.0;
}

std::vector<double> RadialPotential::breakpoints() const {
    std::vector<double> bp{0.0};
    for (const auto& p : pieces_) {
        bp.push_back(p.r_lo);
        bp.push_back(p.r_hi);
    }
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    return bp;
}

double fourier_hat(const RadialPotential& v, double p, double rel_tol) {
    if (p < 0.0) throw std::domain_error("fourier_hat: p < 0");
    if (v.is_zero()) return 0.0;
    const auto bp = v.breakpoints();
    // split each smooth piece into sub-intervals shorter than one oscillation
    const double osc = (p > 1.0) ? M_PI / p : v.range();
    double total = 0.0;
    const double scale = v.sup_norm() * v.range() * v.range() * v.range();
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
        double a = bp[i];
        const double b = bp[i + 1];
        const int chunks = std::max(1, static_cast<int>(std::ceil((b - a) / osc)));
        const double h = (b - a) / chunks;
        for (int c = 0; c < chunks; ++c) {
            const double lo = a + c * h;
            const double hi = (c + 1 == chunks) ? b : lo + h;
            total += integrate([&](double r) { return r * r * v(r) * sinc(p * r); }, lo, hi,
                               rel_tol * 1e-2, rel_tol * scale * 1e-3);
        }
    }
    return 4.0 * M_PI * total;
}

} // namespace bosegas
