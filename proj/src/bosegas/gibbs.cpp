#include "bosegas/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "bosegas/ideal_gas.hpp"

namespace bosegas {

TruncatedModeEnsemble make_truncated_ensemble(const ShellPartition& shells, double beta, double mu) {
    if (mu > 0.0) throw std::domain_error("make_truncated_ensemble: mu must be <= 0");
    if (beta <= 0.0) throw std::domain_error("make_truncated_ensemble: beta must be positive");
    const auto& lat = shells.lattice();
    TruncatedModeEnsemble ens;
    ens.beta = beta;
    ens.mu = mu;
    const double mc13 = std::cbrt(static_cast<double>(shells.m_c()));
    for (int k : shells.p_i()) {
        const double e = lat.p2(k) - mu;
        if (beta * e <= 0.0)
            throw std::domain_error("make_truncated_ensemble: beta E vanishes on P_I");
        ens.modes.push_back({k, e, static_cast<long>(std::ceil(mc13 / (beta * e)))});
    }
    for (int k : shells.p_l()) ens.modes.push_back({k, lat.p2(k) - mu, shells.m_c()});
    return ens;
}

EnsembleStats ensemble_stats(const TruncatedModeEnsemble& ens) {
    std::vector<double> energies;
    std::vector<long> caps;
    for (const auto& m : ens.modes) {
        energies.push_back(m.energy);
        caps.push_back(m.cap);
    }
    // energies already carry the -mu shift, so pass mu through explicitly
    const auto sums = lattice_ideal_sums(energies, ens.beta, 0.0, caps);
    EnsembleStats out;
    out.mean_total = sums.mean_total;
    out.mean_occupation = sums.mean_occupation;
    out.free_energy = sums.free_energy + ens.mu * sums.mean_total;
    for (const auto& m : ens.modes) {
        if (m.cap < 0) throw std::domain_error("ensemble_stats: untruncated mode in the ensemble");
        out.sum_cap_sq += static_cast<double>(m.cap) * static_cast<double>(m.cap);
    }
    return out;
}

double hoeffding_tail(const TruncatedModeEnsemble& ens, double t) {
    if (t < 0.0) throw std::domain_error("hoeffding_tail: t must be nonnegative");
    double denom = 0.0;
    for (const auto& m : ens.modes) {
        if (m.cap < 0) throw std::domain_error("hoeffding_tail: untruncated mode");
        denom += static_cast<double>(m.cap) * static_cast<double>(m.cap);
    }
    if (denom == 0.0) return t == 0.0 ? 2.0 : 0.0;
    return 2.0 * std::exp(-2.0 * t * t / denom);
}

long sample_total_occupation(const TruncatedModeEnsemble& ens, std::mt19937_64& rng) {
    long total = 0;
    for (const auto& m : ens.modes) {
        const double x = m.energy * ens.beta;
        // inverse CDF of the truncated geometric with ratio e^{-x}
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const double q = std::exp(-x);
        const double z = (1.0 - std::pow(q, static_cast<double>(m.cap) + 1.0)) / (1.0 - q);
        double cum = 0.0;
        long n = 0;
        double w = 1.0 / z;
        for (; n <= m.cap; ++n) {
            cum += w;
            if (u <= cum) break;
            w *= q;
        }
        total += std::min(n, m.cap);
    }
    return total;
}

Gamma0Result build_gamma0(const MomentumLattice& lat, const ShellPartition& shells,
                          const TruncatedModeEnsemble& ens, int n_total, double rho_c,
                          const Gamma0Options& opts) {
    // sector weights by dynamic programming over modes: coeff[m] = total
    // Boltzmann weight of configurations with m particles
    std::vector<double> coeff{1.0};
    for (const auto& m : ens.modes) {
        const long cap = std::min<long>(m.cap, n_total);
        std::vector<double> next(std::min<std::size_t>(coeff.size() + cap, n_total + 1), 0.0);
        for (std::size_t i = 0; i < coeff.size(); ++i) {
            double w = 1.0;
            for (long n = 0; n <= cap && i + n < next.size(); ++n) {
                next[i + n] += coeff[i] * w;
                w *= std::exp(-ens.beta * m.energy);
            }
        }
        coeff = std::move(next);
    }
    double zsum = 0.0;
    for (double c : coeff) zsum += c;

    long m0 = -1;
    double best = -1.0;
    const double target = std::min(static_cast<double>(n_total), rho_c * lat.volume());
    for (long m = 0; m < static_cast<long>(coeff.size()); ++m) {
        const double w = coeff[static_cast<std::size_t>(m)];
        if (w <= 0.0) continue;
        const bool better =
            w > best * (1.0 + 1e-12) ||
            (std::abs(w - best) <= best * 1e-12 &&
             std::abs(m - target) < std::abs(m0 - target));
        if (better) {
            best = w;
            m0 = m;
        }
    }
    if (m0 < 0) throw std::runtime_error("build_gamma0: no admissible component");

    Gamma0Result out;
    out.m0 = m0;
    out.m0_weight = best / zsum;

    const int zero = lat.zero_mode();
    std::map<OccupationState, double> weights;

    if (ens.modes.size() <= opts.exact_mode_limit) {
        // exact enumeration of the m0 sector
        std::vector<std::pair<int, int>> cur;
        double logw = 0.0;
        std::function<void(std::size_t, long)> rec = [&](std::size_t pos, long remaining) {
            if (pos == ens.modes.size()) {
                if (remaining != 0) return;
                auto occ = cur;
                occ.emplace_back(zero, n_total - static_cast<int>(m0));
                weights[OccupationState(std::move(occ))] += std::exp(logw);
                return;
            }
            const auto& m = ens.modes[pos];
            const long cap = std::min(m.cap, remaining);
            for (long n = 0; n <= cap; ++n) {
                if (n > 0) cur.emplace_back(m.mode_id, static_cast<int>(n));
                logw -= ens.beta * m.energy * n;
                rec(pos + 1, remaining - n);
                logw += ens.beta * m.energy * n;
                if (n > 0) cur.pop_back();
            }
        };
        rec(0, m0);
    } else {
        // conditional sampling with a recorded seed
        out.sampled = true;
        std::mt19937_64 rng(opts.seed);
        std::size_t accepted = 0;
        for (std::size_t it = 0; it < opts.sample_count; ++it) {
            std::vector<std::pair<int, int>> cur;
            long total = 0;
            for (const auto& m : ens.modes) {
                const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
                const double q = std::exp(-ens.beta * m.energy);
                const double z =
                    (1.0 - std::pow(q, static_cast<double>(m.cap) + 1.0)) / (1.0 - q);
                double cum = 0.0, w = 1.0 / z;
                long n = 0;
                for (; n <= m.cap; ++n) {
                    cum += w;
                    if (u <= cum) break;
                    w *= q;
                }
                n = std::min(n, m.cap);
                if (n > 0) cur.emplace_back(m.mode_id, static_cast<int>(n));
                total += n;
            }
            if (total != m0) continue;
            cur.emplace_back(zero, n_total - static_cast<int>(m0));
            weights[OccupationState(std::move(cur))] += 1.0;
            ++accepted;
        }
        if (accepted == 0) throw std::runtime_error("build_gamma0: sampling found no m0 component");
    }

    double wsum = 0.0;
    for (const auto& [occ, w] : weights) wsum += w;
    for (const auto& [occ, w] : weights) {
        out.mixture.alphas.push_back(occ);
        out.mixture.weights.push_back(w / wsum);
    }
    // every emitted alpha is in M: support and caps are inherited from the
    // ensemble; assert the P_L cap as a construction invariant
    for (const auto& a : out.mixture.alphas)
        for (const auto& [id, c] : a.entries())
            if (shells.shell_of(id) == Shell::PL && c > shells.m_c())
                throw std::runtime_error("build_gamma0: emitted state violates m_c");
    return out;
}

EntropyBound entropy_bound(const MixtureState& mixture) {
    EntropyBound out;
    for (double g : mixture.weights)
        if (g > 0.0) out.s_gamma0 -= g * std::log(g);
    if (!mixture.excited()) {
        out.a_row = 1.0;
        out.s_lower = out.s_gamma0;
        return out;
    }
    // row-sum bound: max_beta sum_alpha |<beta|Psi_alpha>| x max_alpha sum_gamma |<gamma|Psi_alpha>|
    std::unordered_map<OccupationState, double, OccupationHash> column;
    double max_l1 = 0.0;
    for (const auto& fam : mixture.families) {
        double l1 = 0.0;
        for (std::size_t i = 0; i < fam->size(); ++i) {
            const double a = std::abs(fam->coeff(i));
            column[fam->member(i).occ] += a;
            l1 += a;
        }
        max_l1 = std::max(max_l1, l1);
    }
    double max_col = 0.0;
    for (const auto& [occ, v] : column) max_col = std::max(max_col, v);
    out.a_row = max_col * max_l1;
    out.s_lower = out.s_gamma0 - std::log(out.a_row);
    return out;
}

double mixture_entropy_exact(const MixtureState& mixture) {
    const int n = static_cast<int>(mixture.weights.size());
    Eigen::MatrixXd overlap = Eigen::MatrixXd::Identity(n, n);
    if (mixture.excited()) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const auto ov = family_overlap(*mixture.families[static_cast<std::size_t>(i)],
                                               *mixture.families[static_cast<std::size_t>(j)]);
                if (std::abs(ov.imag()) > 1e-12)
                    throw std::runtime_error("mixture_entropy_exact: complex overlap");
                overlap(i, j) = overlap(j, i) = ov.real();
            }
    }
    return entropy_from_gram(mixture.weights, overlap);
}

namespace {

double state_energy(const OccupationState& occ, const OperatorMatrix& h) {
    const int idx = h.basis().index_of(occ);
    if (idx < 0) throw std::invalid_argument("variational_report: state outside the basis");
    Eigen::VectorXd v = Eigen::VectorXd::Zero(h.dim());
    v[idx] = 1.0;
    return h.expectation(v);
}

} // namespace

VariationalReport variational_report(const MixtureState& mixture, const OperatorMatrix& h,
                                     const SpectrumResult& spectrum) {
    VariationalReport rep;
    for (std::size_t i = 0; i < mixture.weights.size(); ++i) {
        double e;
        if (mixture.excited())
            e = h.expectation(mixture.families[i]->dense_vector(h.basis()));
        else
            e = state_energy(mixture.alphas[i], h);
        rep.energy += mixture.weights[i] * e;
    }
    const auto bound = entropy_bound(mixture);
    rep.s_gamma0 = bound.s_gamma0;
    rep.a_row = bound.a_row;
    rep.s_lower = bound.s_lower;
    rep.s_exact = mixture_entropy_exact(mixture);
    rep.f_exact = spectrum.free_energy;
    rep.f_var = rep.energy - rep.s_exact / spectrum.beta;
    rep.f_var_lower = rep.energy - rep.s_lower / spectrum.beta;
    rep.slack = rep.f_var - rep.f_exact;
    return rep;
}

double gibbs_variational_value(const SpectrumResult& spectrum) {
    const auto w = spectrum.gibbs_weights();
    double energy = 0.0, entropy = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        energy += w[i] * spectrum.eigenvalues[i];
        if (w[i] > 0.0) entropy -= w[i] * std::log(w[i]);
    }
    return energy - entropy / spectrum.beta;
}

} // namespace bosegas
