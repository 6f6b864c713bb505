#include "bosegas/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bosegas {

std::string Mode::str() const {
    return "(" + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z) + ")";
}

MomentumLattice::MomentumLattice(double box_side, int cutoff) : L_(box_side), cutoff_(cutoff) {
    if (box_side <= 0.0) throw std::invalid_argument("MomentumLattice: box side must be positive");
    if (cutoff < 0) throw std::invalid_argument("MomentumLattice: cutoff must be nonnegative");
    for (int x = -cutoff; x <= cutoff; ++x)
        for (int y = -cutoff; y <= cutoff; ++y)
            for (int z = -cutoff; z <= cutoff; ++z) modes_.push_back(Mode{x, y, z});
    std::sort(modes_.begin(), modes_.end(), [](const Mode& a, const Mode& b) {
        if (a.norm2() != b.norm2()) return a.norm2() < b.norm2();
        return a < b;
    });
    for (int i = 0; i < static_cast<int>(modes_.size()); ++i) index_[modes_[i]] = i;
    neg_.resize(modes_.size());
    for (int i = 0; i < static_cast<int>(modes_.size()); ++i) neg_[i] = index_.at(-modes_[i]);
    zero_id_ = index_.at(Mode{0, 0, 0});
}

int MomentumLattice::index_of(const Mode& m) const {
    const auto it = index_.find(m);
    return it == index_.end() ? -1 : it->second;
}

double MomentumLattice::p2(int id) const {
    const double k = 2.0 * M_PI / L_;
    return k * k * static_cast<double>(mode(id).norm2());
}

double MomentumLattice::p_norm(int id) const { return std::sqrt(p2(id)); }

double MomentumLattice::p_norm(const Mode& m) const {
    return 2.0 * M_PI / L_ * std::sqrt(static_cast<double>(m.norm2()));
}

OccupationState::OccupationState(std::vector<std::pair<int, int>> occ) : occ_(std::move(occ)) {
    std::sort(occ_.begin(), occ_.end());
    std::vector<std::pair<int, int>> merged;
    for (const auto& [m, c] : occ_) {
        if (c < 0) throw std::invalid_argument("OccupationState: negative count");
        if (c == 0) continue;
        if (!merged.empty() && merged.back().first == m)
            merged.back().second += c;
        else
            merged.emplace_back(m, c);
    }
    occ_ = std::move(merged);
    total_ = 0;
    for (const auto& [m, c] : occ_) total_ += c;
}

int OccupationState::count(int mode_id) const {
    const auto it = std::lower_bound(occ_.begin(), occ_.end(), std::make_pair(mode_id, 0));
    if (it != occ_.end() && it->first == mode_id) return it->second;
    return 0;
}

OccupationState OccupationState::with_delta(int mode_id, int delta) const {
    OccupationState out = *this;
    auto it = std::lower_bound(out.occ_.begin(), out.occ_.end(), std::make_pair(mode_id, 0));
    if (it != out.occ_.end() && it->first == mode_id) {
        it->second += delta;
        if (it->second < 0) throw std::invalid_argument("with_delta: negative occupation");
        if (it->second == 0) out.occ_.erase(it);
    } else {
        if (delta < 0) throw std::invalid_argument("with_delta: negative occupation");
        if (delta > 0) out.occ_.insert(it, {mode_id, delta});
    }
    out.total_ = total_ + delta;
    return out;
}

std::string OccupationState::str() const {
    std::string s = "{";
    for (const auto& [m, c] : occ_) {
        if (s.size() > 1) s += ";";
        s += std::to_string(m) + ":" + std::to_string(c);
    }
    return s + "}";
}

Mode total_momentum(const MomentumLattice& lat, const OccupationState& s) {
    Mode p{0, 0, 0};
    for (const auto& [m, c] : s.entries()) {
        const Mode& n = lat.mode(m);
        p.x += n.x * c;
        p.y += n.y * c;
        p.z += n.z * c;
    }
    return p;
}

} // namespace bosegas
