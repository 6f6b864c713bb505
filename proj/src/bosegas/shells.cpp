#include "bosegas/shells.hpp"

#include <cmath>
#include <stdexcept>

namespace bosegas {

namespace {

// |n|^2 band from a momentum band [p_lo, p_hi] on the lattice with spacing 2pi/L
std::pair<long, long> band_from_momenta(const MomentumLattice& lat, double p_lo, double p_hi,
                                        bool lo_strict) {
    const double k = 2.0 * M_PI / lat.L();
    const double lo = p_lo / k, hi = p_hi / k;
    long n2_lo = static_cast<long>(std::ceil(lo * lo));
    if (lo_strict && std::floor(lo * lo) == lo * lo) n2_lo = static_cast<long>(lo * lo) + 1;
    const long n2_hi = static_cast<long>(std::floor(hi * hi));
    return {std::max(1L, n2_lo), n2_hi};
}

} // namespace

ShellPartition::ShellPartition(const MomentumLattice& lat, double rho, const ShellOverrides& ov)
    : lat_(&lat), rho_(rho) {
    if (rho <= 0.0) throw std::domain_error("ShellPartition: rho must be positive");
    eta_ = ov.eta.value_or(1.0 / 200.0);
    const double rho_eta = std::pow(rho, eta_);
    eps_l_ = rho_eta;
    eta_l_ = rho_eta;
    eps_h_ = rho_eta;
    eta_h_ = rho_eta;
    m_c_ = ov.m_c.value_or(static_cast<long>(std::ceil(std::pow(rho, -3.0 * eta_))));
    if (m_c_ < 1) throw std::domain_error("ShellPartition: m_c must be >= 1");

    const bool use_lists = ov.pi_list || ov.pl_list || ov.ph_list;
    shell_.assign(static_cast<std::size_t>(lat.size()), Shell::None);
    shell_[static_cast<std::size_t>(lat.zero_mode())] = Shell::P0;

    if (use_lists) {
        auto place = [&](const std::optional<std::vector<Mode>>& list, Shell s, std::vector<int>& out) {
            if (!list) return;
            for (const Mode& m : *list) {
                const int id = lat.index_of(m);
                if (id < 0) throw std::domain_error("ShellPartition: listed mode outside the lattice");
                if (m.is_zero()) throw std::domain_error("ShellPartition: zero mode belongs to P_0");
                if (shell_[static_cast<std::size_t>(id)] != Shell::None)
                    throw std::domain_error("ShellPartition: overlapping shell lists");
                if (std::find(list->begin(), list->end(), -m) == list->end())
                    throw std::domain_error("ShellPartition: shell list not closed under negation");
                shell_[static_cast<std::size_t>(id)] = s;
                out.push_back(id);
            }
            std::sort(out.begin(), out.end());
        };
        place(ov.pi_list, Shell::PI, pi_);
        place(ov.pl_list, Shell::PL, pl_);
        place(ov.ph_list, Shell::PH, ph_);
        return;
    }

    const double r13 = std::pow(rho, 1.0 / 3.0);
    const std::pair<long, long> pi_band =
        ov.pi_band.value_or(band_from_momenta(lat, 0.0, eps_l_ * r13, false));
    const std::pair<long, long> pl_band =
        ov.pl_band.value_or(band_from_momenta(lat, eps_l_ * r13, r13 / eta_l_, false));
    const std::pair<long, long> ph_band =
        ov.ph_band.value_or(band_from_momenta(lat, eps_h_, 1.0 / eta_h_, false));

    auto nonempty = [](const std::pair<long, long>& b) { return b.second >= b.first && b.second >= 1; };
    // disjointness and ordering among the populated bands
    long prev_hi = 0;
    for (const auto* b : {&pi_band, &pl_band, &ph_band}) {
        if (!nonempty(*b)) continue;
        if (b->first <= prev_hi)
            throw std::domain_error("ShellPartition: overlapping or misordered shell bands");
        prev_hi = b->second;
    }

    for (int id = 0; id < lat.size(); ++id) {
        const long n2 = lat.mode(id).norm2();
        if (n2 == 0) continue;
        if (nonempty(pi_band) && n2 >= pi_band.first && n2 <= pi_band.second) {
            shell_[static_cast<std::size_t>(id)] = Shell::PI;
            pi_.push_back(id);
        } else if (nonempty(pl_band) && n2 >= pl_band.first && n2 <= pl_band.second) {
            shell_[static_cast<std::size_t>(id)] = Shell::PL;
            pl_.push_back(id);
        } else if (nonempty(ph_band) && n2 >= ph_band.first && n2 <= ph_band.second) {
            shell_[static_cast<std::size_t>(id)] = Shell::PH;
            ph_.push_back(id);
        }
    }
}

ShellPartition build_shells(const MomentumLattice& lat, double rho, const ShellOverrides& ov) {
    return ShellPartition(lat, rho, ov);
}

bool is_nontrivial(const std::vector<Mode>& subset) {
    const std::size_t n = subset.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if ((subset[i] + subset[j]).is_zero()) return false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                if (subset[i] + subset[j] == subset[k]) return false;
            }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                for (std::size_t l = k + 1; l < n; ++l) {
                    if (l == i || l == j) continue;
                    if (subset[i] + subset[j] == subset[k] + subset[l]) return false;
                }
            }
    return true;
}

} // namespace bosegas
