#ifndef BOSEGAS_FOCK_HPP
#define BOSEGAS_FOCK_HPP

#include <Eigen/Dense>
#include <functional>
#include <map>
#include <memory>
#include <unordered_map>
#include <vector>

#include "bosegas/lattice.hpp"
#include "bosegas/shells.hpp"

namespace bosegas {

/// V_hat evaluated at lattice momentum differences, cached by |n|^2.
class VhatTable {
public:
    VhatTable(const MomentumLattice& lat, std::function<double(double)> vhat_of_p)
        : lat_(&lat), f_(std::move(vhat_of_p)) {}

    double at(const Mode& delta) const;
    double at_mode(int id) const;

private:
    const MomentumLattice* lat_;
    std::function<double(double)> f_;
    mutable std::unordered_map<long, double> cache_;
};

/// Fixed-N occupation basis on a subset of lattice modes, deterministic
/// lexicographic enumeration order.
class Basis {
public:
    const MomentumLattice* lattice = nullptr;
    std::vector<int> mode_subset; // sorted mode ids
    int n_total = 0;
    std::vector<OccupationState> states;
    std::vector<Mode> momenta; // total momentum per state

    int dim() const { return static_cast<int>(states.size()); }
    int index_of(const OccupationState& s) const;

private:
    friend Basis enumerate_basis(const MomentumLattice&, int, std::vector<int>);
    std::unordered_map<OccupationState, int, OccupationHash> index_;
};

/// All occupation maps with total N on the subset.  Guards: at most 12 modes
/// and at most 2e6 states; violation raises length_error with the computed
/// dimension in the message.
Basis enumerate_basis(const MomentumLattice& lat, int n_total, std::vector<int> mode_subset);

/// Sparse operator in a fixed basis.
class OperatorMatrix {
public:
    OperatorMatrix() = default;
    explicit OperatorMatrix(const Basis& basis) : basis_(&basis), rows_(basis.states.size()) {}

    const Basis& basis() const { return *basis_; }
    int dim() const { return static_cast<int>(rows_.size()); }
    void add(int row, int col, double value);
    void freeze(); // sort row entries; idempotent

    const std::vector<std::pair<int, double>>& row(int i) const { return rows_[i]; }
    Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
    double expectation(const Eigen::VectorXd& v) const;
    Eigen::MatrixXd dense() const;
    double hermiticity_defect() const; // max |H_ij - H_ji|
    /// largest |entry| connecting different total-momentum sectors
    double momentum_block_defect() const;
    OperatorMatrix& operator+=(const OperatorMatrix& other);

private:
    const Basis* basis_ = nullptr;
    std::vector<std::vector<std::pair<int, double>>> rows_;
    bool frozen_ = false;
};

/// <bra| (V_u / 2|Lambda|) a+_p a+_q a_{p-u} a_{q+u} |ket>, exact bosonic factors.
double quartic_element(const MomentumLattice& lat, const VhatTable& vhat, const OccupationState& bra,
                       const OccupationState& ket, const Mode& p, const Mode& q, const Mode& u);

/// a+_p a+_q a_r a_s applied to |ket>; returns the bosonic amplitude and the
/// resulting state (0 when an annihilated mode is empty).
double apply_quartic(const OccupationState& ket, int p, int q, int r, int s, OccupationState& out);

/// Shell pattern of a quartic term with created modes (p, q) and annihilated
/// modes (r, s).
enum class TermClass { Diagonal, LowLow, LowHigh, HighHigh, Rest };
TermClass classify_term(const ShellPartition& sh, int p, int q, int r, int s);

/// Kinetic diagonal sum_p p^2 n_p.
OperatorMatrix kinetic_operator(const Basis& basis);

/// Full Hamiltonian: kinetic plus every momentum-conserving quartic term.
OperatorMatrix build_hamiltonian(const Basis& basis, const VhatTable& vhat);

/// Term groups of the interaction by shell pattern.  "diagonal" annihilates
/// and recreates the same pair (the abab part); "rest" collects terms outside
/// the four named groups (zero expectation on pair-excited states).
struct InteractionParts {
    OperatorMatrix kinetic;
    OperatorMatrix diagonal;
    OperatorMatrix low_low;
    OperatorMatrix low_high;
    OperatorMatrix high_high;
    OperatorMatrix rest;
};

InteractionParts decompose_interaction(const Basis& basis, const VhatTable& vhat,
                                       const ShellPartition& shells);

/// a+_p a_q within a fixed-N basis (p = q gives the number operator).
OperatorMatrix hop_operator(const Basis& basis, int mode_p, int mode_q);

struct SpectrumResult {
    double free_energy = 0.0;          // -log(Tr e^{-beta H}) / beta
    double beta = 0.0;
    std::vector<double> eigenvalues;   // ascending, all sectors merged
    // per momentum sector: basis indices, eigenvalues, eigenvector columns
    std::vector<std::vector<int>> sector_states;
    std::vector<std::vector<double>> sector_eigs;
    std::vector<Eigen::MatrixXd> sector_vectors;

    /// Gibbs weights aligned with `eigenvalues`.
    std::vector<double> gibbs_weights() const;
};

/// Dense diagonalization per total-momentum block; dimension guard 4000.
SpectrumResult exact_free_energy(const OperatorMatrix& h, double beta);

/// von Neumann entropy of sum_i w_i |psi_i><psi_i| from the overlap matrix
/// S_ij = <psi_i|psi_j>; pure states need not be orthogonal.
double entropy_from_gram(const std::vector<double>& weights, const Eigen::MatrixXd& overlap);

/// Convenience: entropy of a mixture of explicit vectors (columns).
double mixture_entropy(const std::vector<double>& weights, const Eigen::MatrixXd& vectors);

} // namespace bosegas

#endif
