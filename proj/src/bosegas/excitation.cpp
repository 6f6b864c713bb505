#include "bosegas/excitation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <stdexcept>

namespace bosegas {

namespace {

std::complex<double> phase_of(int i_pow) {
    switch (((i_pow % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

std::vector<int> ph_occupied(const ShellPartition& sh, const OccupationState& s) {
    std::vector<int> out;
    for (const auto& [m, c] : s.entries())
        if (sh.shell_of(m) == Shell::PH && c > 0) out.push_back(m);
    return out;
}

std::vector<int> pl_deficit(const ShellPartition& sh, const OccupationState& alpha,
                            const OccupationState& s) {
    std::vector<int> out;
    for (int u : sh.p_l())
        if (s.count(u) < alpha.count(u)) out.push_back(u);
    return out;
}

} // namespace

double n_alpha(const ShellPartition& shells, const OccupationState& alpha) {
    const auto& lat = shells.lattice();
    const int z = lat.zero_mode();
    std::vector<int> low{z};
    for (int u : shells.p_l()) low.push_back(u);
    double total = static_cast<double>(alpha.count(z)) * alpha.count(z);
    for (int u : low)
        for (int v : low) {
            if (u == v || lat.negation_of(u) == v) continue;
            total += 2.0 * alpha.count(u) * alpha.count(v);
        }
    return total;
}

std::vector<double> w_mode_table(const MomentumLattice& lat,
                                 const std::function<double(double)>& w_of_p) {
    std::vector<double> w(static_cast<std::size_t>(lat.size()), 0.0);
    std::unordered_map<long, double> cache;
    for (int id = 0; id < lat.size(); ++id) {
        const long n2 = lat.mode(id).norm2();
        if (n2 == 0) continue;
        auto it = cache.find(n2);
        if (it == cache.end()) it = cache.emplace(n2, w_of_p(lat.p_norm(id))).first;
        w[static_cast<std::size_t>(id)] = it->second;
    }
    return w;
}

int ExcitationFamily::index_of(const OccupationState& s) const {
    const auto it = index_.find(s);
    return it == index_.end() ? -1 : it->second;
}

std::complex<double> ExcitationFamily::coeff(std::size_t i) const {
    const auto& m = members_[i];
    if (m.rel.zero) return {0.0, 0.0};
    return phase_of(m.rel.i_pow) * std::exp(m.rel.log_mag - log_norm_);
}

bool ExcitationFamily::all_real() const {
    for (const auto& m : members_)
        if (!m.rel.zero && (m.rel.i_pow % 2) != 0) return false;
    return true;
}

Eigen::VectorXd ExcitationFamily::dense_vector(const Basis& basis) const {
    if (!all_real()) throw std::runtime_error("dense_vector: family carries imaginary phases");
    Eigen::VectorXd v = Eigen::VectorXd::Zero(basis.dim());
    for (std::size_t i = 0; i < members_.size(); ++i) {
        const int idx = basis.index_of(members_[i].occ);
        if (idx < 0) throw std::runtime_error("dense_vector: member outside the basis");
        v[idx] = coeff(i).real();
    }
    return v;
}

namespace {

struct FamilyBuilder {
    const ShellPartition& sh;
    const BoxCover& boxes;
    const MomentumLattice& lat;
    const OccupationState& alpha;
    const std::vector<double>& w;
    double log_v;

    PhasedCoeff closed_form(const OccupationState& beta) const {
        PhasedCoeff c;
        const int z = lat.zero_mode();
        const int a0 = alpha.count(z), b0 = beta.count(z);
        for (int j = b0 + 1; j <= a0; ++j) c.log_mag += 0.5 * std::log(static_cast<double>(j));
        c.log_mag -= 0.5 * static_cast<double>(a0 - b0) * log_v;
        for (const auto& [m, cnt] : beta.entries()) {
            if (sh.shell_of(m) != Shell::PH || cnt == 0) continue;
            const double wk = w[static_cast<std::size_t>(m)];
            if (wk == 0.0) {
                c.zero = true;
            } else {
                if (wk > 0.0) c.i_pow += 1; // sqrt(-w) = i sqrt(w) for w > 0
                c.log_mag += 0.5 * std::log(std::abs(wk));
            }
            if (beta.count(lat.negation_of(m)) < cnt) c.log_mag += 0.5 * M_LN2;
        }
        for (int u : sh.p_l()) {
            if (beta.count(u) < alpha.count(u))
                c.log_mag += 0.5 * (std::log(static_cast<double>(alpha.count(u))) - log_v);
        }
        c.i_pow = ((c.i_pow % 4) + 4) % 4;
        return c;
    }
};

} // namespace

ExcitationFamily generate_family(const ShellPartition& shells, const BoxCover& boxes,
                                 const OccupationState& alpha, const std::vector<double>& w_by_mode,
                                 const FamilyOptions& opts) {
    const MomentumLattice& lat = shells.lattice();
    if (w_by_mode.size() != static_cast<std::size_t>(lat.size()))
        throw std::invalid_argument("generate_family: w table size mismatch");
    for (const auto& [m, c] : alpha.entries()) {
        const Shell s = shells.shell_of(m);
        if (c > 0 && s != Shell::P0 && s != Shell::PI && s != Shell::PL)
            throw std::invalid_argument("generate_family: alpha occupies a mode outside P0 u PI u PL");
        if (s == Shell::PL && c > shells.m_c())
            throw std::invalid_argument("generate_family: alpha exceeds m_c on P_L");
    }

    ExcitationFamily fam;
    fam.lat_ = &lat;
    fam.shells_ = &shells;
    fam.boxes_ = boxes;
    fam.alpha_ = alpha;
    fam.w_ = w_by_mode;

    FamilyBuilder fb{shells, boxes, lat, alpha, w_by_mode, std::log(lat.volume())};
    const int z = lat.zero_mode();

    fam.members_.push_back({alpha, PhasedCoeff{}, 0.0});
    fam.index_[alpha] = 0;

    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        const std::size_t cur = queue.front();
        queue.pop_front();
        const OccupationState beta = fam.members_[cur].occ; // copy: members_ may reallocate

        const std::vector<int> ph_occ = ph_occupied(shells, beta);
        const std::vector<int> pl_changed = pl_deficit(shells, alpha, beta);

        // candidate annihilation legs (u1 <= u2 by id; zero mode sorts first)
        std::vector<std::pair<int, int>> legs;
        if (beta.count(z) >= 2) legs.emplace_back(z, z);
        for (int v : shells.p_l()) {
            if (alpha.count(v) >= 1 && beta.count(v) == alpha.count(v)) {
                if (beta.count(z) >= 1) legs.emplace_back(z, v);
                for (int v2 : shells.p_l()) {
                    if (v2 <= v) continue;
                    if (lat.negation_of(v) == v2) continue;
                    if (alpha.count(v2) < 1 || beta.count(v2) != alpha.count(v2)) continue;
                    if (boxes.same_box_l(lat.mode(v), lat.mode(v2))) continue;
                    legs.emplace_back(v, v2);
                }
            }
        }

        for (const auto& [u1, u2] : legs) {
            // box rule on the P_L legs: no other changed mode in their boxes
            bool leg_ok = true;
            std::vector<Mode> new_deficit;
            for (int uu : {u1, u2}) {
                if (uu == z) continue;
                new_deficit.push_back(lat.mode(uu));
                for (int x : pl_changed) {
                    if (x != uu && boxes.same_box_l(lat.mode(x), lat.mode(uu))) leg_ok = false;
                }
            }
            if (!leg_ok) continue;
            // nontriviality of the enlarged deficit set
            if (!new_deficit.empty()) {
                std::vector<Mode> def;
                for (int x : pl_changed) def.push_back(lat.mode(x));
                for (const Mode& m : new_deficit) def.push_back(m);
                if (!is_nontrivial(def)) continue;
            }

            const Mode sum = lat.mode(u1) + lat.mode(u2);
            for (int p : shells.p_h()) {
                const int q = lat.index_of(sum - lat.mode(p));
                if (q <= p) continue; // unordered pairs once; also excludes q == p
                if (q < 0 || shells.shell_of(q) != Shell::PH) continue;
                if (beta.count(p) != 0 || beta.count(q) != 0) continue;
                // gating rule: the negatives of both created modes must be empty
                if (beta.count(lat.negation_of(p)) != 0) continue;
                if (beta.count(lat.negation_of(q)) != 0) continue;
                // pruned: zero-coefficient excitations (w vanishes there)
                if (w_by_mode[static_cast<std::size_t>(p)] == 0.0 ||
                    w_by_mode[static_cast<std::size_t>(q)] == 0.0)
                    continue;
                // one changed mode per box
                if (boxes.same_box_h(lat.mode(p), lat.mode(q))) continue;
                bool box_ok = true;
                for (int m : ph_occ) {
                    if (boxes.same_box_h(lat.mode(m), lat.mode(p)) ||
                        boxes.same_box_h(lat.mode(m), lat.mode(q)))
                        box_ok = false;
                }
                if (!box_ok) continue;

                OccupationState gamma = beta.with_delta(u1, -1).with_delta(u2, -1);
                gamma = gamma.with_delta(p, 1).with_delta(q, 1);
                if (fam.index_.count(gamma)) continue;
                if (fam.members_.size() >= opts.max_members)
                    throw std::length_error("generate_family: member guard of " +
                                            std::to_string(opts.max_members) + " exceeded");
                const PhasedCoeff pc = fb.closed_form(gamma);
                fam.index_[gamma] = static_cast<int>(fam.members_.size());
                fam.members_.push_back({std::move(gamma), pc, 0.0});
                queue.push_back(fam.members_.size() - 1);
            }
        }
    }

    // normalize: log_norm = log sqrt(sum exp(2 log_mag))
    double max_lm = -1e300;
    for (const auto& m : fam.members_)
        if (!m.rel.zero) max_lm = std::max(max_lm, m.rel.log_mag);
    double acc = 0.0;
    for (const auto& m : fam.members_)
        if (!m.rel.zero) acc += std::exp(2.0 * (m.rel.log_mag - max_lm));
    fam.log_norm_ = max_lm + 0.5 * std::log(acc);
    for (auto& m : fam.members_)
        m.prob = m.rel.zero ? 0.0 : std::exp(2.0 * (m.rel.log_mag - fam.log_norm_));

    fam.n_alpha_ = n_alpha(shells, alpha);

    std::set<int> support;
    for (const auto& m : fam.members_)
        for (const auto& [id, c] : m.occ.entries())
            if (c > 0) support.insert(id);
    fam.support_.assign(support.begin(), support.end());
    return fam;
}

std::complex<double> coefficient_ratio(const ExcitationFamily& fam, const OccupationState& beta,
                                       const PairOp& op) {
    const int bi = fam.index_of(beta);
    if (bi < 0) throw std::invalid_argument("coefficient_ratio: beta is not in the family");
    // formal image; vanishing amplitude or leaving the family gives ratio 0
    if (beta.count(op.u1) < 1) return {0.0, 0.0};
    OccupationState img = beta.with_delta(op.u1, -1);
    if (img.count(op.u2) < 1) return {0.0, 0.0};
    img = img.with_delta(op.u2, -1).with_delta(op.p, 1).with_delta(op.q, 1);
    const int gi = fam.index_of(img);
    if (gi < 0) return {0.0, 0.0};
    const auto& b = fam.member(static_cast<std::size_t>(bi)).rel;
    const auto& g = fam.member(static_cast<std::size_t>(gi)).rel;
    if (b.zero || g.zero) return {0.0, 0.0};
    return phase_of(g.i_pow - b.i_pow) * std::exp(g.log_mag - b.log_mag);
}

double q_expectation(const ExcitationFamily& fam, const std::vector<int>& modes) {
    double total = 0.0;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        double prod = fam.prob(i);
        if (prod == 0.0) continue;
        for (int m : modes) prod *= fam.member(i).occ.count(m);
        total += prod;
    }
    return total;
}

double complement_mass(const ExcitationFamily& fam, int mode) {
    const int target = fam.alpha().count(mode);
    double total = 0.0;
    for (std::size_t i = 0; i < fam.size(); ++i)
        if (fam.member(i).occ.count(mode) != target) total += fam.prob(i);
    return total;
}

std::complex<double> pairing_expectation(const ExcitationFamily& fam, int c1, int c2, int a1,
                                         int a2) {
    std::complex<double> acc{0.0, 0.0};
    OccupationState out;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        if (fam.prob(i) == 0.0) continue;
        const double amp = apply_quartic(fam.member(i).occ, c1, c2, a1, a2, out);
        if (amp == 0.0) continue;
        const int j = fam.index_of(out);
        if (j < 0) continue;
        acc += std::conj(fam.coeff(static_cast<std::size_t>(j))) * fam.coeff(i) * amp;
    }
    return acc;
}

double kinetic_expectation(const ExcitationFamily& fam) {
    double total = 0.0;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        if (fam.prob(i) == 0.0) continue;
        double e = 0.0;
        for (const auto& [m, c] : fam.member(i).occ.entries()) e += fam.lattice().p2(m) * c;
        total += e * fam.prob(i);
    }
    return total;
}

double abab_product_expectation(const MomentumLattice& lat, const VhatTable& vhat,
                                const OccupationState& state) {
    const double n = state.total();
    double sum = vhat.at(Mode{0, 0, 0}) * (n * n - n);
    for (const auto& [u, cu] : state.entries())
        for (const auto& [v, cv] : state.entries()) {
            if (u == v) continue;
            sum += vhat.at(lat.mode(u) - lat.mode(v)) * cu * cv;
        }
    return sum / (2.0 * lat.volume());
}

QuarticExpectations quartic_expectations(const ExcitationFamily& fam, const VhatTable& vhat) {
    const auto& lat = fam.lattice();
    const auto& sh = fam.shells();
    const double inv2v = 0.5 / lat.volume();
    QuarticExpectations acc;
    OccupationState out;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        if (fam.prob(i) == 0.0) continue;
        const auto& st = fam.member(i).occ;
        const std::complex<double> fi = fam.coeff(i);
        for (const auto& [s, cs] : st.entries()) {
            (void)cs;
            for (const auto& [r, cr] : st.entries()) {
                if (st.count(r) - (r == s ? 1 : 0) <= 0 || cr == 0) continue;
                const Mode sum = lat.mode(r) + lat.mode(s);
                for (int p : fam.support()) {
                    const int q = lat.index_of(sum - lat.mode(p));
                    if (q < 0) continue;
                    const double amp = apply_quartic(st, p, q, r, s, out);
                    if (amp == 0.0) continue;
                    const int j = fam.index_of(out);
                    if (j < 0) continue;
                    const std::complex<double> term = std::conj(fam.coeff(static_cast<std::size_t>(j))) *
                                                      fi * amp * inv2v *
                                                      vhat.at(lat.mode(p) - lat.mode(r));
                    switch (classify_term(sh, p, q, r, s)) {
                        case TermClass::Diagonal: acc.diagonal += term; break;
                        case TermClass::LowLow: acc.low_low += term; break;
                        case TermClass::LowHigh: acc.low_high += term; break;
                        case TermClass::HighHigh: acc.high_high += term; break;
                        case TermClass::Rest: acc.rest += term; break;
                    }
                }
            }
        }
    }
    return acc;
}

double full_energy_expectation(const ExcitationFamily& fam, const VhatTable& vhat) {
    const auto q = quartic_expectations(fam, vhat);
    return kinetic_expectation(fam) + q.total().real();
}

ComponentReport energy_components(const ExcitationFamily& fam, const VhatTable& vhat,
                                  double grad_w_sq, double half_v_w, double half_v_w_sq) {
    const auto& lat = fam.lattice();
    const double vol = lat.volume();
    const double na = fam.n_alpha();

    ComponentReport rep;
    rep.n_alpha = na;

    const auto q = quartic_expectations(fam, vhat);
    rep.kinetic.psi = kinetic_expectation(fam);
    rep.abab.psi = q.diagonal.real();
    rep.low_low.psi = q.low_low.real();
    rep.low_high.psi = q.low_high.real();
    rep.high_high.psi = q.high_high.real();
    rep.rest_magnitude = std::abs(q.rest);

    double kin_alpha = 0.0;
    for (const auto& [m, c] : fam.alpha().entries()) kin_alpha += lat.p2(m) * c;
    rep.kinetic.in_alpha = kin_alpha;
    rep.abab.in_alpha = abab_product_expectation(lat, vhat, fam.alpha());

    rep.kinetic.main_term = grad_w_sq * na / vol;
    rep.low_high.main_term = -2.0 * half_v_w * na / vol; // ||V w||_1 = 2 ||(1/2) V w||_1
    rep.high_high.main_term = half_v_w_sq * na / vol;

    for (ComponentPart* part : {&rep.kinetic, &rep.abab, &rep.low_low, &rep.low_high, &rep.high_high})
        part->residual = part->psi - part->in_alpha - part->main_term;

    rep.psi_total = rep.kinetic.psi + q.total().real();
    rep.alpha_total = rep.kinetic.in_alpha + rep.abab.in_alpha;
    rep.main_total = rep.kinetic.main_term + rep.low_high.main_term + rep.high_high.main_term;
    return rep;
}

ACoefficient a_coefficient(const ExcitationFamily& fam, int u1, int u2, int k1, int k2, int k3,
                           int k4) {
    const auto& lat = fam.lattice();
    const Mode usum = lat.mode(u1) + lat.mode(u2);
    if (!(usum == lat.mode(k1) + lat.mode(k2)) || !(usum == lat.mode(k3) + lat.mode(k4)))
        throw std::invalid_argument("a_coefficient: momentum mismatch");

    ACoefficient out;
    const int z = lat.zero_mode();
    const double f_a = (u1 == z && u2 == z) ? 1.0 : 2.0;
    out.main_term = fam.alpha().count(u1) * fam.alpha().count(u2) * f_a * f_a * fam.w_of(k1) *
                    fam.w_of(k3) / (lat.volume() * lat.volume());

    OccupationState tmp;
    for (std::size_t t = 0; t < fam.size(); ++t) {
        const auto& anc = fam.member(t).occ;
        if (anc.count(u1) < 1) continue;
        OccupationState stripped = anc.with_delta(u1, -1);
        if (stripped.count(u2) < 1) continue;
        stripped = stripped.with_delta(u2, -1);
        const OccupationState beta = stripped.with_delta(k1, 1).with_delta(k2, 1);
        const int bi = fam.index_of(beta);
        if (bi < 0) continue;
        const OccupationState gamma = stripped.with_delta(k3, 1).with_delta(k4, 1);
        const int gi = fam.index_of(gamma);
        if (gi < 0) continue;
        const double amp = apply_quartic(gamma, k1, k2, k3, k4, tmp);
        if (amp == 0.0 || !(tmp == beta)) continue;
        out.value += std::conj(fam.coeff(static_cast<std::size_t>(bi))) *
                     fam.coeff(static_cast<std::size_t>(gi)) * amp;
        out.pair_count += 1;
    }
    return out;
}

namespace {

// perfect matching of the non-opposite created modes into pairs whose sums
// consume the leg multiset exactly
bool match_legs(const MomentumLattice& lat, std::vector<int>& rest, std::vector<int>& legs) {
    if (rest.empty()) return legs.empty();
    const int first = rest.front();
    for (std::size_t j = 1; j < rest.size(); ++j) {
        const int second = rest[j];
        const Mode sum = lat.mode(first) + lat.mode(second);
        std::vector<int> next;
        for (std::size_t k = 1; k < rest.size(); ++k)
            if (k != j) next.push_back(rest[k]);
        // one leg + one zero
        for (std::size_t a = 0; a < legs.size(); ++a) {
            if (lat.mode(legs[a]) == sum) {
                std::vector<int> nlegs;
                for (std::size_t b = 0; b < legs.size(); ++b)
                    if (b != a) nlegs.push_back(legs[b]);
                if (match_legs(lat, next, nlegs)) return true;
            }
        }
        // two legs
        for (std::size_t a = 0; a < legs.size(); ++a)
            for (std::size_t b = a + 1; b < legs.size(); ++b) {
                if (lat.mode(legs[a]) + lat.mode(legs[b]) == sum) {
                    std::vector<int> nlegs;
                    for (std::size_t c = 0; c < legs.size(); ++c)
                        if (c != a && c != b) nlegs.push_back(legs[c]);
                    if (match_legs(lat, next, nlegs)) return true;
                }
            }
    }
    return false;
}

// can `target` be produced from ancestor `anc` by ops using exactly the legs
// P_L(target) - P_L(anc) plus condensate zeros?
bool reachable_from(const ExcitationFamily& fam, const std::vector<int>& target_h,
                    const std::vector<int>& anc_h, const std::vector<int>& legs) {
    const auto& lat = fam.lattice();
    std::vector<int> delta;
    for (int m : target_h)
        if (!std::binary_search(anc_h.begin(), anc_h.end(), m)) delta.push_back(m);
    if ((delta.size() % 2) != 0) return false;
    if (delta.size() < legs.size()) return false;
    // opposite pairs are first-block condensate ops; the rest must avoid
    // opposites everywhere and their negations must be absent in the ancestor
    std::vector<int> rest;
    for (int m : delta) {
        const int neg = lat.negation_of(m);
        if (std::binary_search(delta.begin(), delta.end(), neg)) continue; // first block
        if (std::binary_search(anc_h.begin(), anc_h.end(), neg)) return false;
        rest.push_back(m);
    }
    if (rest.size() < legs.size()) return false;
    std::vector<int> legs_copy = legs;
    return match_legs(lat, rest, legs_copy);
}

} // namespace

double Census::bound(int s, int t, double volume, double rho, double eta) {
    double tfact = 1.0;
    for (int i = 2; i <= t; ++i) tfact *= i;
    const double tpow = (t > 0) ? std::pow(static_cast<double>(t), 0.75 * t) : 1.0;
    return tfact * tpow * std::pow(volume, 0.25 * (s + t) + 1.0) * std::pow(rho, -eta * (s + t));
}

Census error_pair_census(const ExcitationFamily& fam, int k1, int k2, int k3, int k4) {
    const auto& lat = fam.lattice();
    const auto& sh = fam.shells();
    for (int k : {k1, k2, k3, k4})
        if (sh.shell_of(k) != Shell::PH)
            throw std::invalid_argument("error_pair_census: momenta must lie in P_H");

    Census census;
    const Mode ksum = lat.mode(k1) + lat.mode(k2);
    const int z = lat.zero_mode();
    OccupationState out;

    // precompute sorted P_H support and P_L deficits per member
    std::vector<std::vector<int>> hsupp(fam.size()), pldef(fam.size());
    for (std::size_t i = 0; i < fam.size(); ++i) {
        hsupp[i] = ph_occupied(sh, fam.member(i).occ);
        pldef[i] = pl_deficit(sh, fam.alpha(), fam.member(i).occ);
    }

    for (std::size_t j = 0; j < fam.size(); ++j) {
        const auto& gamma = fam.member(j).occ;
        const double amp = apply_quartic(gamma, k1, k2, k3, k4, out);
        if (amp == 0.0) continue;
        const int bi = fam.index_of(out);
        if (bi < 0) continue;
        const std::size_t i = static_cast<std::size_t>(bi);

        // main pair: a shared single-op ancestor with legs (u1, u2)
        bool main = false;
        if (lat.mode(k3) + lat.mode(k4) == ksum) {
            OccupationState common = gamma.with_delta(k3, -1).with_delta(k4, -1);
            std::vector<std::pair<int, int>> cand;
            if (ksum.is_zero()) cand.emplace_back(z, z);
            for (int v : sh.p_l()) {
                if (lat.mode(v) == ksum) cand.emplace_back(z, v);
                for (int v2 : sh.p_l()) {
                    if (v2 < v) continue;
                    if (lat.mode(v) + lat.mode(v2) == ksum) cand.emplace_back(v, v2);
                }
            }
            for (const auto& [u1, u2] : cand) {
                const OccupationState anc = common.with_delta(u1, 1).with_delta(u2, 1);
                if (fam.index_of(anc) >= 0) {
                    main = true;
                    break;
                }
            }
        }
        if (main) {
            census.main_pairs += 1;
            continue;
        }

        // minimal (s+t) over feasible common ancestors; among those the label
        // with smallest t is recorded (worst case for the t >= 1 claim)
        int best_total = -1, best_s = 0, best_t = 0;
        for (std::size_t t_idx = 0; t_idx < fam.size(); ++t_idx) {
            const auto& anc_h = hsupp[t_idx];
            const auto& anc_pl = pldef[t_idx];
            if (anc_h.size() > hsupp[i].size()) continue;
            if (!std::includes(hsupp[i].begin(), hsupp[i].end(), anc_h.begin(), anc_h.end()))
                continue;
            if (!std::includes(hsupp[j].begin(), hsupp[j].end(), anc_h.begin(), anc_h.end()))
                continue;
            if (!std::includes(pldef[i].begin(), pldef[i].end(), anc_pl.begin(), anc_pl.end()))
                continue;
            std::vector<int> legs;
            for (int u : pldef[i])
                if (!std::binary_search(anc_pl.begin(), anc_pl.end(), u)) legs.push_back(u);
            const int total = static_cast<int>(hsupp[i].size() - anc_h.size());
            const int t_label = static_cast<int>(legs.size());
            const int s_label = total - t_label;
            if (s_label < 0) continue;
            if (best_total >= 0 && total > best_total) continue;
            if (!reachable_from(fam, hsupp[i], anc_h, legs)) continue;
            if (!reachable_from(fam, hsupp[j], anc_h, legs)) continue;
            if (best_total < 0 || total < best_total) {
                best_total = total;
                best_s = s_label;
                best_t = t_label;
            } else if (total == best_total && t_label < best_t) {
                best_s = s_label;
                best_t = t_label;
            }
        }
        CensusPair pair;
        pair.beta_idx = bi;
        pair.gamma_idx = static_cast<int>(j);
        pair.s = best_s;
        pair.t = best_t;
        census.error_pairs.push_back(pair);
        census.error_by_st[{best_s, best_t}] += 1;
    }
    return census;
}

std::complex<double> family_overlap(const ExcitationFamily& a, const ExcitationFamily& b) {
    const ExcitationFamily& small = (a.size() <= b.size()) ? a : b;
    const ExcitationFamily& big = (a.size() <= b.size()) ? b : a;
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 0; i < small.size(); ++i) {
        const int j = big.index_of(small.member(i).occ);
        if (j < 0) continue;
        // <Psi_a|Psi_b> = sum conj(f_a) f_b regardless of argument order
        if (&small == &a)
            acc += std::conj(small.coeff(i)) * big.coeff(static_cast<std::size_t>(j));
        else
            acc += std::conj(big.coeff(static_cast<std::size_t>(j))) * small.coeff(i);
    }
    return acc;
}

} // namespace bosegas
