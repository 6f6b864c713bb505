#include "bosegas/desk.hpp"

#include <cmath>

namespace bosegas {

namespace {

std::vector<double> build_w(const MomentumLattice& lat, const ScatteringSolution& sol,
                            const RadialPotential& v) {
    if (v.is_zero()) return std::vector<double>(static_cast<std::size_t>(lat.size()), 0.0);
    return w_mode_table(lat, [&](double p) { return w_fourier(sol, v, p); });
}

} // namespace

DeskInstance::DeskInstance(MomentumLattice lat, RadialPotential v, double r_max, double step,
                           const ShellOverrides& ov, BoxCover bx, int n)
    : lattice(std::move(lat)),
      potential(std::move(v)),
      scattering(solve_zero_energy(potential, r_max, step)),
      shells(lattice, n / (lattice.volume()), ov),
      boxes(bx),
      w_modes(build_w(lattice, scattering, potential)),
      vhat(lattice, [this](double p) { return fourier_hat(potential, p); }),
      norms(w_norms(scattering, potential)),
      n_particles(n),
      rho(n / lattice.volume()) {}

OccupationState DeskInstance::occupation(const std::vector<std::pair<Mode, int>>& spec) const {
    std::vector<std::pair<int, int>> occ;
    for (const auto& [m, c] : spec) {
        const int id = lattice.index_of(m);
        if (id < 0) throw std::invalid_argument("occupation: mode outside the lattice");
        occ.emplace_back(id, c);
    }
    return OccupationState(std::move(occ));
}

ExcitationFamily DeskInstance::family(const OccupationState& alpha, FamilyOptions opts) const {
    return generate_family(shells, boxes, alpha, w_modes, opts);
}

std::unique_ptr<DeskInstance> make_desk_axis(double v0, int n) {
    ShellOverrides ov;
    ov.pl_list = std::vector<Mode>{{1, 0, 0}, {-1, 0, 0}};
    ov.ph_list = std::vector<Mode>{{2, 0, 0}, {-2, 0, 0}, {3, 0, 0}, {-3, 0, 0}, {0, 2, 0}, {0, -2, 0}};
    ov.m_c = 3;
    return std::make_unique<DeskInstance>(MomentumLattice(2.0 * M_PI, 3),
                                          RadialPotential::square_barrier(v0, 1.0), 2.0, 1e-3, ov,
                                          BoxCover{}, n);
}

std::unique_ptr<DeskInstance> make_desk_planar(double v0, int n) {
    ShellOverrides ov;
    ov.pl_list = std::vector<Mode>{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}};
    ov.ph_list = std::vector<Mode>{{2, 0, 0}, {-2, 0, 0}, {1, -1, 0}, {-1, 1, 0}};
    ov.m_c = 3;
    return std::make_unique<DeskInstance>(MomentumLattice(2.0 * M_PI, 2),
                                          RadialPotential::square_barrier(v0, 1.0), 2.0, 1e-3, ov,
                                          BoxCover{}, n);
}

std::unique_ptr<DeskInstance> make_desk_census(double v0, int n) {
    ShellOverrides ov;
    ov.pl_list = std::vector<Mode>{{1, 0, 0}, {-1, 0, 0}};
    ov.ph_list = std::vector<Mode>{{0, 2, 0},  {0, -2, 0}, {3, 0, 0},  {-3, 0, 0}, {2, 0, 0},
                                   {-2, 0, 0}, {1, 2, 0},  {-1, -2, 0}};
    ov.m_c = 3;
    return std::make_unique<DeskInstance>(MomentumLattice(2.0 * M_PI, 3),
                                          RadialPotential::square_barrier(v0, 1.0), 2.0, 1e-3, ov,
                                          BoxCover{}, n);
}

std::unique_ptr<DeskInstance> make_desk_improvement(double v0, int n) {
    // spacing 1/2 and P_H reaching from |p| = 1/2 out to 6 so the mode sums
    // capture most of the w-weighted integrals at weak coupling
    ShellOverrides ov;
    ov.ph_band = std::make_pair(1L, 144L);
    ov.m_c = 1;
    return std::make_unique<DeskInstance>(MomentumLattice(4.0 * M_PI, 12),
                                          RadialPotential::square_barrier(v0, 1.0), 2.0, 1e-3, ov,
                                          BoxCover{}, n);
}

std::unique_ptr<DeskInstance> make_desk_ensemble(double v0, int n) {
    ShellOverrides ov;
    ov.pi_list = std::vector<Mode>{{1, 0, 0}, {-1, 0, 0}};
    ov.pl_list = std::vector<Mode>{{0, 1, 0}, {0, -1, 0}};
    ov.ph_list = std::vector<Mode>{{0, 2, 0}, {0, -2, 0}, {0, 0, 2}, {0, 0, -2}};
    ov.m_c = 2;
    return std::make_unique<DeskInstance>(MomentumLattice(2.0 * M_PI, 2),
                                          RadialPotential::square_barrier(v0, 1.0), 2.0, 1e-3, ov,
                                          BoxCover{}, n);
}

} // namespace bosegas
