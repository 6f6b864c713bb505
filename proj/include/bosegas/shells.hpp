#ifndef BOSEGAS_SHELLS_HPP
#define BOSEGAS_SHELLS_HPP

#include <optional>
#include <vector>

#include "bosegas/lattice.hpp"

namespace bosegas {

enum class Shell { None, P0, PI, PL, PH };

/// Desk-scale overrides: inclusive |n|^2 bands per shell (integer, exact), or
/// explicit mode lists, plus an explicit occupation cap.  Without overrides
/// the rho-power defaults are used, which degenerate on tiny lattices.
/// Explicit lists take precedence over bands and must be negation-closed.
struct ShellOverrides {
    std::optional<std::pair<long, long>> pi_band;
    std::optional<std::pair<long, long>> pl_band;
    std::optional<std::pair<long, long>> ph_band;
    std::optional<std::vector<Mode>> pi_list;
    std::optional<std::vector<Mode>> pl_list;
    std::optional<std::vector<Mode>> ph_list;
    std::optional<long> m_c;
    std::optional<double> eta;
};

/// The four momentum regions P_0, P_I, P_L, P_H plus the cap m_c.
class ShellPartition {
public:
    ShellPartition(const MomentumLattice& lat, double rho, const ShellOverrides& ov = {});

    Shell shell_of(int mode_id) const { return shell_[static_cast<std::size_t>(mode_id)]; }
    bool in_low_tilde(int mode_id) const {
        const Shell s = shell_of(mode_id);
        return s == Shell::P0 || s == Shell::PL;
    }
    const std::vector<int>& p_i() const { return pi_; }
    const std::vector<int>& p_l() const { return pl_; }
    const std::vector<int>& p_h() const { return ph_; }
    const MomentumLattice& lattice() const { return *lat_; }

    double rho() const { return rho_; }
    double eta() const { return eta_; }
    long m_c() const { return m_c_; }
    double eps_l() const { return eps_l_; }
    double eta_l() const { return eta_l_; }
    double eps_h() const { return eps_h_; }
    double eta_h() const { return eta_h_; }

private:
    const MomentumLattice* lat_;
    double rho_;
    double eta_;
    long m_c_;
    double eps_l_, eta_l_, eps_h_, eta_h_;
    std::vector<Shell> shell_;
    std::vector<int> pi_, pl_, ph_;
};

ShellPartition build_shells(const MomentumLattice& lat, double rho, const ShellOverrides& ov = {});

/// A subset of P_L is nontrivial when no two distinct elements sum to zero,
/// no two distinct elements sum to a third, and no two disjoint pairs of
/// distinct elements have equal sums.
bool is_nontrivial(const std::vector<Mode>& subset);

/// Axis-aligned cubic boxes over P_L and P_H in integer mode coordinates.
struct BoxCover {
    int side_l = 1;
    int side_h = 1;
    double kappa_l = 0.0; // recorded exponents, informational at desk scale
    double kappa_h = 0.0;

    static int floor_div(int a, int b) { return (a >= 0) ? a / b : -((-a + b - 1) / b); }
    Mode box_of(const Mode& m, int side) const {
        return Mode{floor_div(m.x, side), floor_div(m.y, side), floor_div(m.z, side)};
    }
    bool same_box_l(const Mode& a, const Mode& b) const {
        return box_of(a, side_l) == box_of(b, side_l);
    }
    bool same_box_h(const Mode& a, const Mode& b) const {
        return box_of(a, side_h) == box_of(b, side_h);
    }
};

} // namespace bosegas

#endif
