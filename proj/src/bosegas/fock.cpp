#include "bosegas/fock.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bosegas {

double VhatTable::at(const Mode& delta) const {
    const long n2 = delta.norm2();
    const auto it = cache_.find(n2);
    if (it != cache_.end()) return it->second;
    const double v = f_(lat_->p_norm(delta));
    cache_[n2] = v;
    return v;
}

double VhatTable::at_mode(int id) const { return at(lat_->mode(id)); }

int Basis::index_of(const OccupationState& s) const {
    const auto it = index_.find(s);
    return it == index_.end() ? -1 : it->second;
}

namespace {

double binomial_dim(int n, int m) {
    // C(n + m - 1, n), states of n bosons on m modes
    double v = 1.0;
    for (int i = 1; i <= n; ++i) v *= static_cast<double>(m - 1 + i) / i;
    return v;
}

void enumerate_rec(const std::vector<int>& modes, std::size_t pos, int remaining,
                   std::vector<std::pair<int, int>>& cur, std::vector<OccupationState>& out) {
    if (pos + 1 == modes.size()) {
        auto full = cur;
        if (remaining > 0) full.emplace_back(modes[pos], remaining);
        out.emplace_back(std::move(full));
        return;
    }
    for (int n = remaining; n >= 0; --n) {
        if (n > 0) cur.emplace_back(modes[pos], n);
        enumerate_rec(modes, pos + 1, remaining - n, cur, out);
        if (n > 0) cur.pop_back();
    }
}

} // namespace

Basis enumerate_basis(const MomentumLattice& lat, int n_total, std::vector<int> mode_subset) {
    if (n_total < 0) throw std::invalid_argument("enumerate_basis: negative particle number");
    std::sort(mode_subset.begin(), mode_subset.end());
    mode_subset.erase(std::unique(mode_subset.begin(), mode_subset.end()), mode_subset.end());
    if (mode_subset.empty()) throw std::invalid_argument("enumerate_basis: empty mode subset");
    if (mode_subset.size() > 12)
        throw std::length_error("enumerate_basis: more than 12 modes (" +
                                std::to_string(mode_subset.size()) + ")");
    const double dim = binomial_dim(n_total, static_cast<int>(mode_subset.size()));
    if (dim > 2e6)
        throw std::length_error("enumerate_basis: dimension " + std::to_string(dim) +
                                " exceeds the 2e6 guard");

    Basis b;
    b.lattice = &lat;
    b.mode_subset = mode_subset;
    b.n_total = n_total;
    std::vector<std::pair<int, int>> cur;
    enumerate_rec(mode_subset, 0, n_total, cur, b.states);
    b.momenta.reserve(b.states.size());
    for (int i = 0; i < b.dim(); ++i) {
        b.index_[b.states[static_cast<std::size_t>(i)]] = i;
        b.momenta.push_back(total_momentum(lat, b.states[static_cast<std::size_t>(i)]));
    }
    return b;
}

void OperatorMatrix::add(int row, int col, double value) {
    if (value == 0.0) return;
    auto& r = rows_[static_cast<std::size_t>(row)];
    for (auto& [c, v] : r) {
        if (c == col) {
            v += value;
            return;
        }
    }
    r.emplace_back(col, value);
    frozen_ = false;
}

void OperatorMatrix::freeze() {
    for (auto& r : rows_) std::sort(r.begin(), r.end());
    frozen_ = true;
}

Eigen::VectorXd OperatorMatrix::apply(const Eigen::VectorXd& v) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(dim());
    for (int i = 0; i < dim(); ++i)
        for (const auto& [j, val] : rows_[static_cast<std::size_t>(i)])
            out[i] += val * v[j];
    return out;
}

double OperatorMatrix::expectation(const Eigen::VectorXd& v) const { return v.dot(apply(v)); }

Eigen::MatrixXd OperatorMatrix::dense() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim(), dim());
    for (int i = 0; i < dim(); ++i)
        for (const auto& [j, val] : rows_[static_cast<std::size_t>(i)]) m(i, j) += val;
    return m;
}

double OperatorMatrix::hermiticity_defect() const {
    const Eigen::MatrixXd m = dense();
    return (m - m.transpose()).cwiseAbs().maxCoeff();
}

double OperatorMatrix::momentum_block_defect() const {
    double defect = 0.0;
    for (int i = 0; i < dim(); ++i)
        for (const auto& [j, val] : rows_[static_cast<std::size_t>(i)])
            if (!(basis_->momenta[static_cast<std::size_t>(i)] ==
                  basis_->momenta[static_cast<std::size_t>(j)]))
                defect = std::max(defect, std::abs(val));
    return defect;
}

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& other) {
    if (other.basis_ != basis_) throw std::invalid_argument("OperatorMatrix: basis mismatch");
    for (int i = 0; i < dim(); ++i)
        for (const auto& [j, val] : other.rows_[static_cast<std::size_t>(i)]) add(i, j, val);
    return *this;
}

double apply_quartic(const OccupationState& ket, int p, int q, int r, int s, OccupationState& out) {
    const int ns = ket.count(s);
    if (ns == 0) return 0.0;
    double amp = std::sqrt(static_cast<double>(ns));
    OccupationState cur = ket.with_delta(s, -1);
    const int nr = cur.count(r);
    if (nr == 0) return 0.0;
    amp *= std::sqrt(static_cast<double>(nr));
    cur = cur.with_delta(r, -1);
    amp *= std::sqrt(static_cast<double>(cur.count(q) + 1));
    cur = cur.with_delta(q, 1);
    amp *= std::sqrt(static_cast<double>(cur.count(p) + 1));
    cur = cur.with_delta(p, 1);
    out = std::move(cur);
    return amp;
}

TermClass classify_term(const ShellPartition& sh, int p, int q, int r, int s) {
    const bool same = (p == r && q == s) || (p == s && q == r);
    if (same) return TermClass::Diagonal;
    int low = 0, high = 0;
    for (int m : {p, q, r, s}) {
        const Shell c = sh.shell_of(m);
        if (c == Shell::P0 || c == Shell::PL)
            ++low;
        else if (c == Shell::PH)
            ++high;
    }
    if (low == 4) return TermClass::LowLow;
    if (high == 4) return TermClass::HighHigh;
    if (low == 2 && high == 2) {
        // both created low / both annihilated high, the reverse, or one of each side
        const bool p_low = sh.in_low_tilde(p), q_low = sh.in_low_tilde(q);
        const bool r_low = sh.in_low_tilde(r), s_low = sh.in_low_tilde(s);
        const int created_low = p_low + q_low, annih_low = r_low + s_low;
        if ((created_low == 2 && annih_low == 0) || (created_low == 0 && annih_low == 2) ||
            (created_low == 1 && annih_low == 1))
            return TermClass::LowHigh;
    }
    return TermClass::Rest;
}

namespace {

template <class Sink>
void assemble_quartic(const Basis& basis, const VhatTable& vhat, Sink&& sink) {
    const auto& lat = *basis.lattice;
    const double inv2v = 0.5 / lat.volume();
    const auto& sub = basis.mode_subset;
    OccupationState out;
    for (int ket = 0; ket < basis.dim(); ++ket) {
        const auto& st = basis.states[static_cast<std::size_t>(ket)];
        for (int s : sub) {
            if (st.count(s) == 0) continue;
            for (int r : sub) {
                if (st.count(r) - (r == s ? 1 : 0) <= 0) continue;
                const Mode sum = lat.mode(r) + lat.mode(s);
                for (int p : sub) {
                    const int q = lat.index_of(sum - lat.mode(p));
                    if (q < 0) continue;
                    if (!std::binary_search(sub.begin(), sub.end(), q)) continue;
                    const double amp = apply_quartic(st, p, q, r, s, out);
                    if (amp == 0.0) continue;
                    const int bra = basis.index_of(out);
                    if (bra < 0) continue;
                    const double coeff = inv2v * vhat.at(lat.mode(p) - lat.mode(r));
                    sink(bra, ket, coeff * amp, p, q, r, s);
                }
            }
        }
    }
}

} // namespace

double quartic_element(const MomentumLattice& lat, const VhatTable& vhat, const OccupationState& bra,
                       const OccupationState& ket, const Mode& p, const Mode& q, const Mode& u) {
    const int ip = lat.index_of(p), iq = lat.index_of(q);
    const int ir = lat.index_of(p - u), is = lat.index_of(q + u);
    if (ip < 0 || iq < 0 || ir < 0 || is < 0) return 0.0;
    OccupationState out;
    const double amp = apply_quartic(ket, ip, iq, ir, is, out);
    if (amp == 0.0 || !(out == bra)) return 0.0;
    return 0.5 / lat.volume() * vhat.at(u) * amp;
}

OperatorMatrix kinetic_operator(const Basis& basis) {
    OperatorMatrix k(basis);
    for (int i = 0; i < basis.dim(); ++i) {
        double e = 0.0;
        for (const auto& [m, c] : basis.states[static_cast<std::size_t>(i)].entries())
            e += basis.lattice->p2(m) * c;
        k.add(i, i, e);
    }
    k.freeze();
    return k;
}

OperatorMatrix build_hamiltonian(const Basis& basis, const VhatTable& vhat) {
    OperatorMatrix h = kinetic_operator(basis);
    assemble_quartic(basis, vhat,
                     [&](int bra, int ket, double v, int, int, int, int) { h.add(bra, ket, v); });
    h.freeze();
    return h;
}

InteractionParts decompose_interaction(const Basis& basis, const VhatTable& vhat,
                                       const ShellPartition& shells) {
    if (&shells.lattice() != basis.lattice)
        throw std::domain_error("decompose_interaction: shells built on a different lattice");
    InteractionParts parts{OperatorMatrix(basis), OperatorMatrix(basis), OperatorMatrix(basis),
                           OperatorMatrix(basis), OperatorMatrix(basis), OperatorMatrix(basis)};
    parts.kinetic = kinetic_operator(basis);
    assemble_quartic(basis, vhat, [&](int bra, int ket, double v, int p, int q, int r, int s) {
        switch (classify_term(shells, p, q, r, s)) {
            case TermClass::Diagonal: parts.diagonal.add(bra, ket, v); break;
            case TermClass::LowLow: parts.low_low.add(bra, ket, v); break;
            case TermClass::LowHigh: parts.low_high.add(bra, ket, v); break;
            case TermClass::HighHigh: parts.high_high.add(bra, ket, v); break;
            case TermClass::Rest: parts.rest.add(bra, ket, v); break;
        }
    });
    parts.diagonal.freeze();
    parts.low_low.freeze();
    parts.low_high.freeze();
    parts.high_high.freeze();
    parts.rest.freeze();
    return parts;
}

OperatorMatrix hop_operator(const Basis& basis, int mode_p, int mode_q) {
    OperatorMatrix m(basis);
    for (int ket = 0; ket < basis.dim(); ++ket) {
        const auto& st = basis.states[static_cast<std::size_t>(ket)];
        const int nq = st.count(mode_q);
        if (nq == 0) continue;
        double amp = std::sqrt(static_cast<double>(nq));
        OccupationState cur = st.with_delta(mode_q, -1);
        amp *= std::sqrt(static_cast<double>(cur.count(mode_p) + 1));
        cur = cur.with_delta(mode_p, 1);
        const int bra = basis.index_of(cur);
        if (bra >= 0) m.add(bra, ket, amp);
    }
    m.freeze();
    return m;
}

SpectrumResult exact_free_energy(const OperatorMatrix& h, double beta) {
    if (beta <= 0.0) throw std::domain_error("exact_free_energy: beta must be positive");
    const Basis& basis = h.basis();
    if (basis.dim() > 4000)
        throw std::length_error("exact_free_energy: dimension " + std::to_string(basis.dim()) +
                                " exceeds the dense guard of 4000");
    // group basis states by total momentum
    std::map<std::tuple<int, int, int>, std::vector<int>> sectors;
    for (int i = 0; i < basis.dim(); ++i) {
        const Mode& m = basis.momenta[static_cast<std::size_t>(i)];
        sectors[{m.x, m.y, m.z}].push_back(i);
    }
    SpectrumResult out;
    out.beta = beta;
    for (const auto& [key, idx] : sectors) {
        const int n = static_cast<int>(idx.size());
        Eigen::MatrixXd block = Eigen::MatrixXd::Zero(n, n);
        std::vector<int> pos(static_cast<std::size_t>(basis.dim()), -1);
        for (int a = 0; a < n; ++a) pos[static_cast<std::size_t>(idx[static_cast<std::size_t>(a)])] = a;
        for (int a = 0; a < n; ++a) {
            const int i = idx[static_cast<std::size_t>(a)];
            for (const auto& [j, v] : h.row(i)) {
                const int b = pos[static_cast<std::size_t>(j)];
                if (b >= 0) block(a, b) += v;
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block);
        out.sector_states.push_back(idx);
        out.sector_eigs.emplace_back(es.eigenvalues().data(), es.eigenvalues().data() + n);
        out.sector_vectors.push_back(es.eigenvectors());
        for (int a = 0; a < n; ++a) out.eigenvalues.push_back(es.eigenvalues()[a]);
    }
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
    const double e0 = out.eigenvalues.front();
    double z = 0.0;
    for (double e : out.eigenvalues) z += std::exp(-beta * (e - e0));
    out.free_energy = e0 - std::log(z) / beta;
    return out;
}

std::vector<double> SpectrumResult::gibbs_weights() const {
    const double e0 = eigenvalues.front();
    double z = 0.0;
    std::vector<double> w;
    w.reserve(eigenvalues.size());
    for (double e : eigenvalues) {
        w.push_back(std::exp(-beta * (e - e0)));
        z += w.back();
    }
    for (double& x : w) x /= z;
    return w;
}

double entropy_from_gram(const std::vector<double>& weights, const Eigen::MatrixXd& overlap) {
    const int n = static_cast<int>(weights.size());
    if (overlap.rows() != n || overlap.cols() != n)
        throw std::invalid_argument("entropy_from_gram: size mismatch");
    double wsum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw std::domain_error("entropy_from_gram: negative weight");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > 1e-9)
        throw std::domain_error("entropy_from_gram: weights sum to " + std::to_string(wsum));
    Eigen::MatrixXd k(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            k(i, j) = std::sqrt(weights[static_cast<std::size_t>(i)] *
                                weights[static_cast<std::size_t>(j)]) *
                      overlap(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k);
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        const double lam = es.eigenvalues()[i];
        if (lam > 1e-300) s -= lam * std::log(lam);
    }
    return s;
}

double mixture_entropy(const std::vector<double>& weights, const Eigen::MatrixXd& vectors) {
    Eigen::MatrixXd overlap = vectors.transpose() * vectors;
    return entropy_from_gram(weights, overlap);
}

} // namespace bosegas
