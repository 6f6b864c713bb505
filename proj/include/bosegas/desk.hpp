#ifndef BOSEGAS_DESK_HPP
#define BOSEGAS_DESK_HPP

#include <memory>
#include <vector>

#include "bosegas/excitation.hpp"
#include "bosegas/fock.hpp"
#include "bosegas/lattice.hpp"
#include "bosegas/radial_potential.hpp"
#include "bosegas/scattering.hpp"
#include "bosegas/shells.hpp"

namespace bosegas {

/// A fully wired desk-scale instance: lattice, potential, scattering data,
/// shells, boxes, and the w/V_hat tables.  Heap-allocated so internal
/// references stay stable.
struct DeskInstance {
    MomentumLattice lattice;
    RadialPotential potential;
    ScatteringSolution scattering;
    ShellPartition shells;
    BoxCover boxes;
    std::vector<double> w_modes;
    VhatTable vhat;
    WNorms norms;
    int n_particles = 0;
    double rho = 0.0;

    DeskInstance(MomentumLattice lat, RadialPotential v, double r_max, double step,
                 const ShellOverrides& ov, BoxCover bx, int n);

    OccupationState occupation(const std::vector<std::pair<Mode, int>>& spec) const;
    ExcitationFamily family(const OccupationState& alpha, FamilyOptions opts = {}) const;
};

/// Nine active modes (P_L = {+-e1}, P_H = {+-2e1, +-3e1, +-2e2}), square
/// barrier; exercises condensate and single-leg mixed excitations.
std::unique_ptr<DeskInstance> make_desk_axis(double v0 = 2.0, int n = 4);

/// Nine active modes with P_L = {+-e1, +-e2} and P_H = {+-(2,0,0), +-(1,-1,0)};
/// exercises double-leg mixed excitations.
std::unique_ptr<DeskInstance> make_desk_planar(double v0 = 2.0, int n = 4);

/// Thirteen active modes with an extra P_H orbit so that pairs of excitations
/// through different routes collide; used for the error-pair census.
std::unique_ptr<DeskInstance> make_desk_census(double v0 = 2.0, int n = 4);

/// Wide P_H band 1 <= |n|^2 <= 36 at weak coupling, pure condensate; the
/// energy-improvement instance (all |w_k| <= 0.2 on P_H).
std::unique_ptr<DeskInstance> make_desk_improvement(double v0 = 0.1, int n = 2);

/// Instance with a populated P_I = {+-e1} and P_L = {+-e2}, P_H = {+-2e2,
/// +-2e3}; used for the truncated-ensemble and variational checks.
std::unique_ptr<DeskInstance> make_desk_ensemble(double v0 = 2.0, int n = 4);

} // namespace bosegas

#endif
