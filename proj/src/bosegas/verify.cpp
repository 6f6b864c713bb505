#include "bosegas/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include "bosegas/bridge.hpp"
#include "bosegas/desk.hpp"
#include "bosegas/gibbs.hpp"
#include "bosegas/ideal_gas.hpp"

namespace bosegas {

namespace {

std::string fmt(double x) {
    std::ostringstream ss;
    ss.precision(3);
    ss << std::scientific << x;
    return ss.str();
}

// dense-basis brute force for <Psi| a+_{c1} a+_{c2} a_{a1} a_{a2} |Psi>
double op_expectation_dense(const Basis& basis, const Eigen::VectorXd& v, int c1, int c2, int a1,
                            int a2) {
    double acc = 0.0;
    OccupationState out;
    for (int i = 0; i < basis.dim(); ++i) {
        if (v[i] == 0.0) continue;
        const double amp = apply_quartic(basis.states[static_cast<std::size_t>(i)], c1, c2, a1, a2, out);
        if (amp == 0.0) continue;
        const int j = basis.index_of(out);
        if (j < 0) continue;
        acc += v[j] * v[i] * amp;
    }
    return acc;
}

Basis family_basis(const DeskInstance& desk, const ExcitationFamily& fam) {
    std::vector<int> modes = fam.support();
    for (const auto& [id, c] : fam.alpha().entries())
        if (c > 0) modes.push_back(id);
    return enumerate_basis(desk.lattice, desk.n_particles, modes);
}

CheckResult criterion_scattering(const Tolerances& tol) {
    CheckResult res{"criterion-1 scattering closed form", false, 0.0, ""};
    const auto v = RadialPotential::square_barrier(2.0, 1.0);
    const auto sol = solve_zero_energy(v, 2.0, 1e-3);
    const double exact = 1.0 - std::tanh(1.0);
    const double r1 = std::abs(sol.a - exact) / exact;
    const double r2 = std::abs(scattering_length_integral(sol, v) - exact) / exact;
    res.residual = std::max(r1, r2);
    res.pass = res.residual < tol.scattering_rel;
    res.detail = "ode " + fmt(r1) + ", integral " + fmt(r2);
    return res;
}

CheckResult criterion_fourier_bound(const Tolerances&) {
    CheckResult res{"criterion-2 Fourier bound |w_p| <= 4 pi a / p^2", false, 0.0, ""};
    double worst = -1e300;
    for (double v0 : {2.0, 0.5}) {
        const auto v = RadialPotential::square_barrier(v0, 1.0);
        const auto sol = solve_zero_energy(v, 2.0, 1e-3);
        for (int n2 = 1; n2 <= 108; ++n2) {
            const double p = std::sqrt(static_cast<double>(n2));
            const double excess = std::abs(w_fourier(sol, v, p)) - 4.0 * M_PI * sol.a / (p * p);
            worst = std::max(worst, excess);
        }
    }
    {
        const auto v = RadialPotential::ramp(1.0, 1.0);
        const auto sol = solve_zero_energy(v, 2.0, 1e-3);
        for (int n2 = 1; n2 <= 108; ++n2) {
            const double p = std::sqrt(static_cast<double>(n2));
            const double excess = std::abs(w_fourier(sol, v, p)) - 4.0 * M_PI * sol.a / (p * p);
            worst = std::max(worst, excess);
        }
    }
    res.residual = worst;
    res.pass = worst <= 1e-12;
    res.detail = "max excess " + fmt(worst);
    return res;
}

CheckResult criterion_thermo_cross(const Tolerances& tol) {
    CheckResult res{"criterion-3 ideal-gas cross-oracle and scaling", false, 0.0, ""};
    double worst = 0.0;
    const double betas[4] = {0.5, 1.0, 2.0, 4.0};
    const double fracs[5] = {0.2, 0.6, 0.9, 1.3, 2.0};
    for (double beta : betas) {
        const double rc = critical_density(beta);
        const double rcq = critical_density_quadrature(beta);
        worst = std::max(worst, std::abs(rcq - rc) / rc);
        for (double frac : fracs) {
            const double rho = frac * rc;
            const double mu = chemical_potential(rho, beta);
            if (rho < rc) {
                worst = std::max(worst, std::abs(density_integral(mu, beta) - rho) / rho);
                worst = std::max(worst, std::abs(density_series(mu, beta) - rho) / rho);
            }
            const double f_quad = free_energy_density(rho, beta);
            const double f_ser = free_energy_density_series(rho, beta);
            worst = std::max(worst, std::abs(f_quad - f_ser) / std::abs(f_ser));
            const double scaled =
                std::pow(rho, 5.0 / 3.0) * free_energy_density(1.0, std::pow(rho, 2.0 / 3.0) * beta);
            worst = std::max(worst, std::abs(f_quad - scaled) / std::abs(f_quad));
        }
    }
    res.residual = worst;
    res.pass = worst < tol.thermo_cross_rel;
    res.detail = "worst relative deviation " + fmt(worst);
    return res;
}

CheckResult criterion_delta_f(const Tolerances&) {
    CheckResult res{"criterion-4 leading free-energy shift formula", false, 0.0, ""};
    const double a = 0.238406;
    double worst = 0.0;
    // positive-part branches, exact
    worst = std::max(worst, std::abs(delta_f_leading(a, 0.01, 0.02) - 8.0 * M_PI * a * 1e-4));
    worst = std::max(worst, std::abs(delta_f_leading(a, 0.01, 0.01) - 8.0 * M_PI * a * 1e-4));
    worst = std::max(worst, std::abs(delta_f_leading(a, 0.01, 0.0) - 4.0 * M_PI * a * 1e-4));
    res.pass = worst == 0.0;
    // continuity across rho = rho_c on a straddling grid
    const double rc = 0.013;
    double cont = 0.0;
    for (double eps : {1e-6, 1e-8, 1e-10, 1e-12}) {
        const double below = delta_f_leading(a, rc * (1.0 - eps), rc);
        const double above = delta_f_leading(a, rc * (1.0 + eps), rc);
        cont = std::max(cont, std::abs(above - below) / std::abs(below) / std::max(eps, 1e-12));
    }
    // the jump is O(eps), so the normalized slope must stay bounded (~4)
    res.residual = std::max(worst, cont > 8.0 ? cont : 0.0);
    res.pass = res.pass && cont < 8.0;
    res.detail = "branch defect " + fmt(worst) + ", continuity slope " + fmt(cont);
    return res;
}

CheckResult criterion_cancellation(const Tolerances& tol) {
    CheckResult res{"criterion-5 cancellation identities of w", false, 0.0, ""};
    double worst = 0.0;
    for (int which = 0; which < 3; ++which) {
        const RadialPotential v = which == 0   ? RadialPotential::square_barrier(2.0, 1.0)
                                  : which == 1 ? RadialPotential::ramp(1.0, 1.0)
                                               : RadialPotential::square_barrier(0.5, 1.0);
        const auto sol = solve_zero_energy(v, 2.0, 1e-3);
        const auto n = w_norms(sol, v);
        const double scale = std::max({n.grad_w_sq, n.half_v_w, n.half_v_w_sq});
        worst = std::max(worst, std::abs(n.grad_w_sq - n.half_v_w + n.half_v_w_sq) / scale);
        worst = std::max(worst,
                         std::abs(n.half_vhat0 - n.half_v_w - 4.0 * M_PI * sol.a) / n.half_vhat0);
    }
    res.residual = worst;
    res.pass = worst < tol.cancellation_rel;
    res.detail = "worst relative defect " + fmt(worst);
    return res;
}

struct FamilyOracleStats {
    double norm_defect = 0.0;
    double ratio_defect = 0.0;
    double pairing_defect = 0.0;
    double q_defect = 0.0;
    double energy_defect = 0.0;
    int families = 0;
};

void family_oracle_scan(const DeskInstance& desk, const OccupationState& alpha,
                        FamilyOracleStats& st) {
    const auto fam = desk.family(alpha);
    const auto basis = family_basis(desk, fam);
    const auto v = fam.dense_vector(basis);
    st.families += 1;

    // normalization
    double psum = 0.0;
    for (std::size_t i = 0; i < fam.size(); ++i) psum += fam.prob(i);
    st.norm_defect = std::max(st.norm_defect, std::abs(psum - 1.0));
    st.norm_defect = std::max(st.norm_defect, std::abs(v.squaredNorm() - 1.0));

    const auto& lat = desk.lattice;
    const auto& sh = desk.shells;
    const int z = lat.zero_mode();
    const double vol = lat.volume();

    // ratio identities along every admissible transition from every member
    for (std::size_t i = 0; i < fam.size(); ++i) {
        const auto& beta = fam.member(i).occ;
        std::vector<std::pair<int, int>> legs;
        if (beta.count(z) >= 2) legs.emplace_back(z, z);
        for (int u : sh.p_l()) {
            if (beta.count(u) >= 1) {
                if (beta.count(z) >= 1) legs.emplace_back(z, u);
                for (int u2 : sh.p_l())
                    if (u2 > u && beta.count(u2) >= 1) legs.emplace_back(u, u2);
            }
        }
        for (const auto& [u1, u2] : legs) {
            const Mode sum = lat.mode(u1) + lat.mode(u2);
            for (int p : sh.p_h()) {
                const int q = lat.index_of(sum - lat.mode(p));
                if (q <= p || sh.shell_of(q) != Shell::PH) continue;
                const PairOp op{u1, u2, p, q};
                const std::complex<double> ratio = coefficient_ratio(fam, beta, op);
                // forbidden legs: equal or opposite P_L modes, or same box
                const bool both_low = (u1 != z && u2 != z);
                if (both_low && (lat.negation_of(u1) == u2 ||
                                 desk.boxes.same_box_l(lat.mode(u1), lat.mode(u2)))) {
                    st.ratio_defect = std::max(st.ratio_defect, std::abs(ratio));
                    continue;
                }
                if (std::abs(ratio) == 0.0) continue;
                const auto sqw = [&](int k) {
                    const double w = fam.w_of(k);
                    return w > 0 ? std::complex<double>(0.0, std::sqrt(w))
                                 : std::complex<double>(std::sqrt(-w), 0.0);
                };
                if (u1 == z && u2 == z) {
                    const double b0 = beta.count(z);
                    const std::complex<double> expect =
                        -fam.w_of(p) * std::sqrt(b0 * (b0 - 1.0)) / vol;
                    st.ratio_defect = std::max(st.ratio_defect, std::abs(ratio - expect));
                } else if (beta.count(lat.negation_of(p)) == 0 &&
                           beta.count(lat.negation_of(q)) == 0) {
                    const std::complex<double> expect =
                        2.0 * sqw(p) * sqw(q) *
                        std::sqrt(static_cast<double>(beta.count(u1)) * beta.count(u2)) / vol;
                    st.ratio_defect = std::max(st.ratio_defect, std::abs(ratio - expect));
                } else {
                    const double bound = std::sqrt(std::abs(fam.w_of(p)) * std::abs(fam.w_of(q)) *
                                                   beta.count(u1) * beta.count(u2)) /
                                         vol;
                    if (std::abs(ratio) > bound + 1e-12)
                        st.ratio_defect = std::max(st.ratio_defect, std::abs(ratio) - bound);
                }
            }
        }
    }

    // pairing vs dense brute force on conserving quadruples over the support
    const auto& supp = fam.support();
    int done = 0;
    for (int c1 : supp)
        for (int c2 : supp) {
            if (c2 < c1) continue;
            for (int a1 : supp)
                for (int a2 : supp) {
                    if (a2 < a1) continue;
                    if (!(lat.mode(c1) + lat.mode(c2) == lat.mode(a1) + lat.mode(a2))) continue;
                    const auto structured = pairing_expectation(fam, c1, c2, a1, a2);
                    const double dense = op_expectation_dense(basis, v, c1, c2, a1, a2);
                    st.pairing_defect =
                        std::max(st.pairing_defect, std::abs(structured.real() - dense));
                    st.pairing_defect = std::max(st.pairing_defect, std::abs(structured.imag()));
                    ++done;
                }
        }
    (void)done;

    // occupation statistics vs brute force
    for (int u : supp) {
        double brute = 0.0;
        for (int i2 = 0; i2 < basis.dim(); ++i2)
            brute += v[i2] * v[i2] * basis.states[static_cast<std::size_t>(i2)].count(u);
        st.q_defect = std::max(st.q_defect, std::abs(q_expectation(fam, {u}) - brute));
    }

    // structured energy decomposition vs the dense Hamiltonian
    const auto h = build_hamiltonian(basis, desk.vhat);
    const double dense_e = h.expectation(v);
    const double structured_e = full_energy_expectation(fam, desk.vhat);
    st.energy_defect = std::max(st.energy_defect, std::abs(dense_e - structured_e));

    const auto parts = decompose_interaction(basis, desk.vhat, desk.shells);
    const double part_sum = parts.kinetic.expectation(v) + parts.diagonal.expectation(v) +
                            parts.low_low.expectation(v) + parts.low_high.expectation(v) +
                            parts.high_high.expectation(v);
    st.energy_defect = std::max(st.energy_defect, std::abs(part_sum - dense_e));
    st.energy_defect = std::max(st.energy_defect, std::abs(parts.rest.expectation(v)));
}

CheckResult criterion_trial_state(const Tolerances& tol) {
    CheckResult res{"criterion-6 trial-state oracle equivalence", false, 0.0, ""};
    FamilyOracleStats st;
    {
        const auto desk = make_desk_axis(2.0, 4);
        const Mode e1{1, 0, 0}, me1{-1, 0, 0};
        family_oracle_scan(*desk, desk->occupation({{Mode{0, 0, 0}, 4}}), st);
        family_oracle_scan(*desk, desk->occupation({{Mode{0, 0, 0}, 3}, {e1, 1}}), st);
        family_oracle_scan(*desk, desk->occupation({{Mode{0, 0, 0}, 2}, {e1, 1}, {me1, 1}}), st);
        family_oracle_scan(*desk, desk->occupation({{Mode{0, 0, 0}, 2}, {e1, 2}}), st);
        family_oracle_scan(*desk, desk->occupation({{Mode{0, 0, 0}, 1}, {e1, 2}, {me1, 1}}), st);
    }
    {
        const auto desk = make_desk_planar(2.0, 4);
        family_oracle_scan(*desk,
                           desk->occupation({{Mode{0, 0, 0}, 2}, {Mode{1, 0, 0}, 1}, {Mode{0, 1, 0}, 1}}),
                           st);
        family_oracle_scan(*desk, desk->occupation({{Mode{0, 0, 0}, 3}, {Mode{0, 1, 0}, 1}}), st);
    }
    const bool pass = st.norm_defect < tol.family_norm && st.ratio_defect < tol.ratio_identity &&
                      st.pairing_defect < tol.oracle_match && st.q_defect < tol.oracle_match &&
                      st.energy_defect < tol.oracle_match;
    res.pass = pass;
    res.residual = std::max({st.norm_defect, st.ratio_defect, st.pairing_defect, st.q_defect,
                             st.energy_defect});
    res.detail = std::to_string(st.families) + " families; norm " + fmt(st.norm_defect) + ", ratio " +
                 fmt(st.ratio_defect) + ", pairing " + fmt(st.pairing_defect) + ", Q " +
                 fmt(st.q_defect) + ", energy " + fmt(st.energy_defect);
    return res;
}

struct GammaSetup {
    std::unique_ptr<DeskInstance> desk;
    Basis basis;
    OperatorMatrix h;
    SpectrumResult spectrum;
    Gamma0Result gamma0;
    double beta = 1.0;
};

GammaSetup make_gamma_setup(double v0 = 2.0) {
    GammaSetup gs;
    gs.desk = make_desk_ensemble(v0, 4);
    const auto& desk = *gs.desk;
    std::vector<int> modes{desk.lattice.zero_mode()};
    for (int m : desk.shells.p_i()) modes.push_back(m);
    for (int m : desk.shells.p_l()) modes.push_back(m);
    for (int m : desk.shells.p_h()) modes.push_back(m);
    gs.basis = enumerate_basis(desk.lattice, desk.n_particles, modes);
    gs.h = build_hamiltonian(gs.basis, desk.vhat);
    gs.spectrum = exact_free_energy(gs.h, gs.beta);
    const double rho_tilde = desk.rho * (1.0 - 1.0 / std::sqrt(desk.lattice.L()));
    const double mu = chemical_potential(rho_tilde, gs.beta);
    const auto ens = make_truncated_ensemble(desk.shells, gs.beta, mu);
    gs.gamma0 = build_gamma0(desk.lattice, desk.shells, ens, desk.n_particles,
                             critical_density(gs.beta));
    return gs;
}

MixtureState excite(const DeskInstance& desk, const MixtureState& gamma0) {
    MixtureState out = gamma0;
    for (const auto& a : gamma0.alphas)
        out.families.push_back(std::make_shared<ExcitationFamily>(desk.family(a)));
    return out;
}

CheckResult criterion_variational(const Tolerances& tol) {
    CheckResult res{"criterion-7 variational inequality", false, 0.0, ""};
    auto gs = make_gamma_setup();
    double worst_slack = 1e300;
    const auto rep0 = variational_report(gs.gamma0.mixture, gs.h, gs.spectrum);
    worst_slack = std::min(worst_slack, rep0.slack);
    const auto excited = excite(*gs.desk, gs.gamma0.mixture);
    const auto rep1 = variational_report(excited, gs.h, gs.spectrum);
    worst_slack = std::min(worst_slack, rep1.slack);
    // the excited mixture must also respect the weaker entropy lower bound
    worst_slack = std::min(worst_slack, rep1.f_var_lower - rep1.f_exact);
    const double gibbs_gap = std::abs(gibbs_variational_value(gs.spectrum) - gs.spectrum.free_energy);
    res.pass = worst_slack >= -tol.variational_slack && gibbs_gap < 1e-10;
    res.residual = std::min(worst_slack, 0.0) == 0.0 ? gibbs_gap : worst_slack;
    res.detail = "min slack " + fmt(worst_slack) + " (Gamma0 " + fmt(rep0.slack) + ", Gamma " +
                 fmt(rep1.slack) + "), Gibbs saturation " + fmt(gibbs_gap);
    return res;
}

CheckResult criterion_improvement(const Tolerances&) {
    CheckResult res{"criterion-8 pair excitations lower the energy", false, 0.0, ""};
    const auto desk = make_desk_improvement(0.02, 2);
    double wmax = 0.0;
    for (int k : desk->shells.p_h()) wmax = std::max(wmax, std::abs(desk->w_modes[static_cast<std::size_t>(k)]));
    const auto alpha = desk->occupation({{Mode{0, 0, 0}, 2}});
    const auto fam = desk->family(alpha);
    const double e_alpha = abab_product_expectation(desk->lattice, desk->vhat, alpha);
    const double e_psi = full_energy_expectation(fam, desk->vhat);
    const double gap = e_alpha - e_psi;
    const double target = (desk->norms.half_vhat0 - 4.0 * M_PI * desk->scattering.a) *
                          fam.n_alpha() / desk->lattice.volume();
    const double ratio = gap / target;
    res.pass = wmax <= 0.2 && gap > 0.0 && ratio >= 0.5 && ratio <= 2.0;
    res.residual = ratio;
    res.detail = "gap/main = " + fmt(ratio) + ", max |w_k| = " + fmt(wmax) + ", members " +
                 std::to_string(fam.size());
    return res;
}

CheckResult criterion_entropy(const Tolerances&, std::uint64_t seed) {
    CheckResult res{"criterion-9 entropy lower bound", false, 0.0, ""};
    auto gs = make_gamma_setup();
    const auto& desk = *gs.desk;
    const auto& alphas = gs.gamma0.mixture.alphas;
    std::mt19937_64 rng(seed);
    double worst = 1e300;
    int trials = 0;
    std::vector<std::shared_ptr<const ExcitationFamily>> cache(alphas.size());
    for (std::size_t i = 0; i < alphas.size(); ++i)
        cache[i] = std::make_shared<ExcitationFamily>(desk.family(alphas[i]));
    while (trials < 50) {
        MixtureState mix;
        double wsum = 0.0;
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            if ((rng() & 1u) && mix.weights.size() + 1 < alphas.size()) continue;
            const double w = 0.05 + static_cast<double>(rng() >> 11) * 0x1.0p-53;
            mix.weights.push_back(w);
            mix.alphas.push_back(alphas[i]);
            mix.families.push_back(cache[i]);
            wsum += w;
        }
        if (mix.weights.empty()) continue;
        for (double& w : mix.weights) w /= wsum;
        const auto bound = entropy_bound(mix);
        const double s_exact = mixture_entropy_exact(mix);
        worst = std::min(worst, s_exact - bound.s_lower);
        ++trials;
    }
    // V = 0 equality: families collapse to the product states
    const auto desk_free = make_desk_ensemble(0.0, 4);
    const auto a0 = desk_free->occupation({{Mode{0, 0, 0}, 2}, {Mode{0, 1, 0}, 2}});
    const auto a1 = desk_free->occupation({{Mode{0, 0, 0}, 2}, {Mode{0, 1, 0}, 1}, {Mode{0, -1, 0}, 1}});
    MixtureState free_mix;
    free_mix.weights = {0.5, 0.5};
    free_mix.alphas = {a0, a1};
    free_mix.families.push_back(std::make_shared<ExcitationFamily>(desk_free->family(a0)));
    free_mix.families.push_back(std::make_shared<ExcitationFamily>(desk_free->family(a1)));
    const auto fb = entropy_bound(free_mix);
    const double fs = mixture_entropy_exact(free_mix);
    const double eq_defect = std::abs(fs - fb.s_lower);
    res.pass = worst >= -1e-10 && eq_defect < 1e-12;
    res.residual = worst;
    res.detail = "min (S - bound) over 50 mixtures " + fmt(worst) + ", V=0 equality defect " +
                 fmt(eq_defect);
    return res;
}

CheckResult criterion_census(const Tolerances&) {
    CheckResult res{"criterion-10 error-pair census", false, 0.0, ""};
    const auto desk = make_desk_census(2.0, 4);
    const auto& lat = desk->lattice;
    const auto fam = desk->family(desk->occupation({{Mode{0, 0, 0}, 3}, {Mode{1, 0, 0}, 1}}));
    long total_error = 0, total_main = 0;
    bool labels_ok = true, bound_ok = true;
    const auto& ph = desk->shells.p_h();
    for (int k1 : ph)
        for (int k2 : ph) {
            if (k2 <= k1) continue;
            for (int k3 : ph)
                for (int k4 : ph) {
                    if (k4 <= k3) continue;
                    if (k3 == k1 || k3 == k2 || k4 == k1 || k4 == k2) continue;
                    if (!(lat.mode(k1) + lat.mode(k2) == lat.mode(k3) + lat.mode(k4))) continue;
                    const auto census = error_pair_census(fam, k1, k2, k3, k4);
                    total_main += census.main_pairs;
                    for (const auto& ep : census.error_pairs) {
                        ++total_error;
                        if (ep.s + ep.t < 4 || ep.t < 1) labels_ok = false;
                    }
                    for (const auto& [st, count] : census.error_by_st) {
                        const double b = Census::bound(st.first, st.second, lat.volume(), desk->rho,
                                                       desk->shells.eta());
                        if (static_cast<double>(count) > b) bound_ok = false;
                    }
                }
        }
    // pure condensate: every pair is a main pair
    const auto fam0 = desk->family(desk->occupation({{Mode{0, 0, 0}, 4}}));
    long stray = 0;
    for (int k1 : ph)
        for (int k2 : ph) {
            if (k2 <= k1) continue;
            for (int k3 : ph)
                for (int k4 : ph) {
                    if (k4 <= k3) continue;
                    if (k3 == k1 || k3 == k2 || k4 == k1 || k4 == k2) continue;
                    if (!(lat.mode(k1) + lat.mode(k2) == lat.mode(k3) + lat.mode(k4))) continue;
                    stray += static_cast<long>(error_pair_census(fam0, k1, k2, k3, k4).error_pairs.size());
                }
        }
    res.pass = labels_ok && bound_ok && stray == 0 && total_error > 0;
    res.residual = static_cast<double>(total_error);
    res.detail = std::to_string(total_main) + " main / " + std::to_string(total_error) +
                 " error pairs, condensate strays " + std::to_string(stray);
    return res;
}

CheckResult criterion_bridge(const Tolerances& tol, std::uint64_t seed) {
    CheckResult res{"criterion-11 bridge isometry / penalty / rescale", false, 0.0, ""};
    const double L = 8.0, ell = 1.0;
    const BridgeProfile profile(L, ell);
    std::mt19937_64 rng(seed + 7);
    std::vector<TrigPoly> corpus;
    corpus.emplace_back(L, std::vector<std::complex<double>>{{1.0, 0.0}});
    {
        std::vector<std::complex<double>> c(3, {0.0, 0.0});
        c[2] = {1.0, 0.0}; // e^{i 2 pi x / L}
        corpus.emplace_back(L, c);
    }
    for (int t = 0; t < 4; ++t) {
        std::vector<std::complex<double>> c(11, {0.0, 0.0});
        for (auto& x : c)
            x = {static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5,
                 static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5};
        corpus.emplace_back(L, c);
    }
    double worst_iso = 0.0, reported_c = M_PI * M_PI / 8.0;
    for (const auto& phi : corpus) {
        const auto iso = isometry_check(profile, phi);
        worst_iso = std::max(worst_iso, iso.defect / iso.norm_in);
        const auto pen = kinetic_penalty(profile, phi);
        reported_c = std::max(reported_c, pen.required_c);
    }
    // one constant must serve the whole corpus
    double worst_margin = 1e300;
    for (const auto& phi : corpus)
        worst_margin = std::min(worst_margin, kinetic_penalty(profile, phi).margin_at(reported_c));
    // the constant-phi case passes with the closed-form constant pi^2/8
    const double margin_const_phi = kinetic_penalty(profile, corpus[0]).margin_at(M_PI * M_PI / 8.0);

    double worst_rescale = 0.0;
    for (double rho : {1e-2, 1e-4, 1e-6}) worst_rescale = std::max(worst_rescale, box_rescale(10.0, rho).conservation_defect);

    res.pass = worst_iso < tol.bridge_defect && worst_margin >= -1e-12 && margin_const_phi >= 0.0 &&
               worst_rescale < tol.rescale_defect;
    res.residual = std::max(worst_iso, worst_rescale);
    res.detail = "isometry " + fmt(worst_iso) + ", penalty C = " + fmt(reported_c) + ", rescale " +
                 fmt(worst_rescale);
    return res;
}

CheckResult criterion_hoeffding(const Tolerances&, std::uint64_t seed) {
    CheckResult res{"criterion-12 Hoeffding tail bound", false, 0.0, ""};
    const auto desk = make_desk_ensemble(2.0, 4);
    const double beta = 1.0;
    const double rho_tilde = desk->rho * (1.0 - 1.0 / std::sqrt(desk->lattice.L()));
    const double mu = chemical_potential(rho_tilde, beta);
    const auto ens = make_truncated_ensemble(desk->shells, beta, mu);
    const auto stats = ensemble_stats(ens);

    std::mt19937_64 rng(seed + 13);
    const int n_samples = 100000;
    std::vector<long> totals(n_samples);
    for (int i = 0; i < n_samples; ++i) totals[i] = sample_total_occupation(ens, rng);

    const double sigma = std::sqrt(stats.sum_cap_sq);
    bool ok = true;
    double worst = 0.0;
    for (double t : {0.35 * sigma, 0.6 * sigma, 1.0 * sigma}) {
        long count = 0;
        for (long x : totals)
            if (std::abs(static_cast<double>(x) - stats.mean_total) > t) ++count;
        const double freq = static_cast<double>(count) / n_samples;
        const double bound = hoeffding_tail(ens, t);
        if (freq > bound) ok = false;
        worst = std::max(worst, freq - bound);
    }
    ok = ok && hoeffding_tail(ens, 0.0) == 2.0;
    res.pass = ok;
    res.residual = worst;
    res.detail = "max (frequency - bound) " + fmt(worst);
    return res;
}

} // namespace

VerifyReport run_acceptance(bool quick, std::uint64_t seed, const Tolerances& tol) {
    VerifyReport report;
    report.checks.push_back(criterion_scattering(tol));
    report.checks.push_back(criterion_fourier_bound(tol));
    if (!quick) report.checks.push_back(criterion_thermo_cross(tol));
    report.checks.push_back(criterion_delta_f(tol));
    report.checks.push_back(criterion_cancellation(tol));
    if (!quick) {
        report.checks.push_back(criterion_trial_state(tol));
        report.checks.push_back(criterion_variational(tol));
        report.checks.push_back(criterion_improvement(tol));
        report.checks.push_back(criterion_entropy(tol, seed));
        report.checks.push_back(criterion_census(tol));
    }
    report.checks.push_back(criterion_bridge(tol, seed));
    if (!quick) report.checks.push_back(criterion_hoeffding(tol, seed));
    return report;
}

} // namespace bosegas
