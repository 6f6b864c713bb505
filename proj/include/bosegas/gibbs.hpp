#ifndef BOSEGAS_GIBBS_HPP
#define BOSEGAS_GIBBS_HPP

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "bosegas/excitation.hpp"
#include "bosegas/fock.hpp"
#include "bosegas/lattice.hpp"
#include "bosegas/shells.hpp"

namespace bosegas {

/// Per-mode truncated ("revised Bose") statistics: occupation of mode k is
/// capped at C_k, weight e^{-beta E_{k,mu} n}.
struct TruncatedMode {
    int mode_id = -1;
    double energy = 0.0; // E_{k,mu} = p^2 - mu
    long cap = -1;       // < 0: untruncated
};

struct TruncatedModeEnsemble {
    std::vector<TruncatedMode> modes;
    double beta = 0.0;
    double mu = 0.0;
};

/// Caps per Eq.-style rule: ceil(m_c^{1/3} / (beta E)) on P_I, m_c on P_L.
TruncatedModeEnsemble make_truncated_ensemble(const ShellPartition& shells, double beta, double mu);

struct EnsembleStats {
    double free_energy = 0.0;
    double mean_total = 0.0;
    double sum_cap_sq = 0.0; // sum C_k^2 (Hoeffding denominator)
    std::vector<double> mean_occupation;
};

EnsembleStats ensemble_stats(const TruncatedModeEnsemble& ens);

/// Two-sided Hoeffding bound 2 exp(-2 t^2 / sum C_k^2).
double hoeffding_tail(const TruncatedModeEnsemble& ens, double t);

/// One draw of the total occupation (independent truncated geometrics).
long sample_total_occupation(const TruncatedModeEnsemble& ens, std::mt19937_64& rng);

/// Convex mixture of product states |alpha> or excited states Psi_alpha.
struct MixtureState {
    std::vector<double> weights;
    std::vector<OccupationState> alphas;
    std::vector<std::shared_ptr<const ExcitationFamily>> families; // empty: product mixture

    bool excited() const { return !families.empty(); }
};

struct Gamma0Options {
    std::size_t exact_mode_limit = 8;
    std::uint64_t seed = 1;
    std::size_t sample_count = 200000;
};

struct Gamma0Result {
    MixtureState mixture;
    long m0 = 0;           // particles carried by the ensemble component
    double m0_weight = 0.0; // probability of that component in the ensemble
    bool sampled = false;
};

/// Fix the total-occupation component m0 (maximum ensemble weight, ties toward
/// min(rho, rho_c)|Lambda|), pad each configuration with N - m0 condensate
/// particles, renormalize.  Exact enumeration up to exact_mode_limit modes,
/// seeded conditional sampling beyond.
Gamma0Result build_gamma0(const MomentumLattice& lat, const ShellPartition& shells,
                          const TruncatedModeEnsemble& ens, int n_total, double rho_c,
                          const Gamma0Options& opts = {});

struct EntropyBound {
    double s_gamma0 = 0.0; // -sum g ln g
    double a_row = 1.0;    // row-sum bound on ||sum |Psi><Psi| ||
    double s_lower = 0.0;  // s_gamma0 - ln a_row
};

EntropyBound entropy_bound(const MixtureState& mixture);

/// Exact S(Gamma) through the Gram matrix of the pure states.
double mixture_entropy_exact(const MixtureState& mixture);

struct VariationalReport {
    double energy = 0.0;      // Tr H Gamma
    double s_exact = 0.0;
    double s_gamma0 = 0.0;
    double a_row = 1.0;
    double s_lower = 0.0;
    double f_var = 0.0;       // energy - s_exact / beta
    double f_var_lower = 0.0; // energy - s_lower / beta (weaker upper bound)
    double f_exact = 0.0;     // from dense diagonalization
    double slack = 0.0;       // f_var - f_exact (must be >= -1e-10)
};

/// Evaluate the variational inequality for the mixture against the exact
/// spectrum of H on the given basis.
VariationalReport variational_report(const MixtureState& mixture, const OperatorMatrix& h,
                                     const SpectrumResult& spectrum);

/// Gibbs mixture of exact eigenstates (saturates the variational principle).
double gibbs_variational_value(const SpectrumResult& spectrum);

} // namespace bosegas

#endif
