#ifndef BOSEGAS_EXCITATION_HPP
#define BOSEGAS_EXCITATION_HPP

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <map>
#include <unordered_map>
#include <vector>

#include "bosegas/fock.hpp"
#include "bosegas/lattice.hpp"
#include "bosegas/shells.hpp"

namespace bosegas {

/// Coefficient relative to f(alpha), stored as log-magnitude plus an integer
/// power of i from the sqrt(-w) convention; never materialized absolutely.
struct PhasedCoeff {
    double log_mag = 0.0;
    int i_pow = 0; // mod 4
    bool zero = false;

    std::complex<double> unit_phase() const {
        switch (((i_pow % 4) + 4) % 4) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
};

/// Pair excitation: annihilate (u1, u2) in P_0 u P_L, create (p, q) in P_H
/// with u1 + u2 = p + q (all mode ids).
struct PairOp {
    int u1 = -1, u2 = -1;
    int p = -1, q = -1;
};

struct FamilyOptions {
    std::size_t max_members = 500000;
};

/// The closure M_alpha with coefficients f_alpha(beta): the trial pure state
/// Psi_alpha = sum f_alpha(beta) |beta>.
class ExcitationFamily {
public:
    struct Member {
        OccupationState occ;
        PhasedCoeff rel;
        double prob = 0.0; // |f|^2, normalized
    };

    const MomentumLattice& lattice() const { return *lat_; }
    const ShellPartition& shells() const { return *shells_; }
    const BoxCover& boxes() const { return boxes_; }
    const OccupationState& alpha() const { return alpha_; }

    std::size_t size() const { return members_.size(); }
    const Member& member(std::size_t i) const { return members_[i]; }
    int index_of(const OccupationState& s) const;
    double prob(std::size_t i) const { return members_[i].prob; }
    /// Normalized coefficient with the i-power phase resolved.
    std::complex<double> coeff(std::size_t i) const;
    bool all_real() const;

    double w_of(int mode_id) const { return w_[static_cast<std::size_t>(mode_id)]; }
    const std::vector<double>& w_table() const { return w_; }
    double n_alpha() const { return n_alpha_; }

    /// Modes occupied by at least one member (sorted ids).
    const std::vector<int>& support() const { return support_; }

    /// |Psi_alpha> as a dense vector in an enumerated basis (throws unless
    /// every member phase is real).
    Eigen::VectorXd dense_vector(const Basis& basis) const;

private:
    friend ExcitationFamily generate_family(const ShellPartition&, const BoxCover&,
                                            const OccupationState&, const std::vector<double>&,
                                            const FamilyOptions&);
    const MomentumLattice* lat_ = nullptr;
    const ShellPartition* shells_ = nullptr;
    BoxCover boxes_;
    OccupationState alpha_;
    std::vector<Member> members_;
    std::unordered_map<OccupationState, int, OccupationHash> index_;
    std::vector<double> w_;
    double log_norm_ = 0.0; // log C scale: |f_i|^2 = exp(2 (log_mag_i - log_norm))
    double n_alpha_ = 0.0;
    std::vector<int> support_;
};

/// N_alpha = alpha(0)^2 + sum over ordered pairs u != +-v in P_L u P_0 of
/// 2 alpha(u) alpha(v).
double n_alpha(const ShellPartition& shells, const OccupationState& alpha);

/// w values per lattice mode from a callable w(|p|) (0 at the zero mode).
std::vector<double> w_mode_table(const MomentumLattice& lat,
                                 const std::function<double(double)>& w_of_p);

/// Breadth-first closure under the gated pair-excitation rules, coefficients
/// from the closed form.  alpha must be supported on P_0 u P_I u P_L with
/// alpha(u) <= m_c on P_L.
ExcitationFamily generate_family(const ShellPartition& shells, const BoxCover& boxes,
                                 const OccupationState& alpha, const std::vector<double>& w_by_mode,
                                 const FamilyOptions& opts = {});

/// f(op applied to member) / f(member); zero when the image leaves the family.
std::complex<double> coefficient_ratio(const ExcitationFamily& fam, const OccupationState& beta,
                                       const PairOp& op);

/// Q_alpha(u_1..u_s) = sum_beta prod beta(u_i) |f(beta)|^2.
double q_expectation(const ExcitationFamily& fam, const std::vector<int>& modes);
/// Probability mass of members with beta(u) != alpha(u).
double complement_mass(const ExcitationFamily& fam, int mode);

/// <Psi| a+_{c1} a+_{c2} a_{a1} a_{a2} |Psi> via the unique-image pairing.
std::complex<double> pairing_expectation(const ExcitationFamily& fam, int c1, int c2, int a1, int a2);

/// Kinetic expectation sum_u p^2 Q(u).
double kinetic_expectation(const ExcitationFamily& fam);

/// Expectation of the diagonal (abab) interaction in a product state.
double abab_product_expectation(const MomentumLattice& lat, const VhatTable& vhat,
                                const OccupationState& state);

struct QuarticExpectations {
    std::complex<double> diagonal{0.0, 0.0};
    std::complex<double> low_low{0.0, 0.0};
    std::complex<double> low_high{0.0, 0.0};
    std::complex<double> high_high{0.0, 0.0};
    std::complex<double> rest{0.0, 0.0};

    std::complex<double> total() const { return diagonal + low_low + low_high + high_high + rest; }
};

/// All quartic expectation values on Psi_alpha grouped by shell pattern,
/// evaluated by member adjacency (no basis enumeration).
QuarticExpectations quartic_expectations(const ExcitationFamily& fam, const VhatTable& vhat);

/// <Psi_alpha| H |Psi_alpha>, kinetic plus every quartic term.
double full_energy_expectation(const ExcitationFamily& fam, const VhatTable& vhat);

struct ComponentPart {
    double psi = 0.0;      // expectation in Psi_alpha
    double in_alpha = 0.0; // expectation in |alpha>
    double main_term = 0.0;
    double residual = 0.0; // psi - in_alpha - main_term
};

struct ComponentReport {
    ComponentPart kinetic, abab, low_low, low_high, high_high;
    double rest_magnitude = 0.0; // |<rest>| on Psi, zero in exact arithmetic
    double psi_total = 0.0;
    double alpha_total = 0.0;
    double main_total = 0.0; // sum of the kinetic + low_high + high_high main terms
    double n_alpha = 0.0;
};

/// Per-part energy accounting against the predicted main terms
/// +||grad w||^2 N/V, -||V w||_1 N/V, +||(1/2) V w^2||_1 N/V.
ComponentReport energy_components(const ExcitationFamily& fam, const VhatTable& vhat,
                                  double grad_w_sq, double half_v_w, double half_v_w_sq);

struct ACoefficient {
    std::complex<double> value{0.0, 0.0};
    double main_term = 0.0; // alpha(u1) alpha(u2) F^2 w_{k1} w_{k3} / V^2
    long pair_count = 0;
};

/// Restricted pair sum over common-ancestor pairs for the quadruple
/// (k1,k2,k3,k4) with annihilation legs (u1,u2).
ACoefficient a_coefficient(const ExcitationFamily& fam, int u1, int u2, int k1, int k2, int k3,
                           int k4);

struct CensusPair {
    int beta_idx = 0, gamma_idx = 0;
    int s = 0, t = 0; // minimal-(s+t) labels
};

struct Census {
    long main_pairs = 0;
    std::vector<CensusPair> error_pairs;
    std::map<std::pair<int, int>, long> error_by_st;

    /// t! t^{3t/4} V^{(s+t)/4 + 1} rho^{-eta (s+t)} with the desk parameters.
    static double bound(int s, int t, double volume, double rho, double eta);
};

/// Classify every (beta, gamma) with <beta| a+k1 a+k2 ak3 ak4 |gamma> != 0 into
/// common-ancestor (main) pairs and error pairs with minimal (s,t) labels.
Census error_pair_census(const ExcitationFamily& fam, int k1, int k2, int k3, int k4);

/// <Psi_A|Psi_B> over shared members.
std::complex<double> family_overlap(const ExcitationFamily& a, const ExcitationFamily& b);

} // namespace bosegas

#endif
