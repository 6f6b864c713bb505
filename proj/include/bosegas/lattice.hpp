#ifndef BOSEGAS_LATTICE_HPP
#define BOSEGAS_LATTICE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

namespace bosegas {

/// Integer mode coordinates; physical momentum is (2 pi / L) n.
struct Mode {
    int x = 0, y = 0, z = 0;

    friend bool operator==(const Mode&, const Mode&) = default;
    friend auto operator<=>(const Mode&, const Mode&) = default;
    Mode operator+(const Mode& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Mode operator-(const Mode& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Mode operator-() const { return {-x, -y, -z}; }
    long norm2() const {
        return static_cast<long>(x) * x + static_cast<long>(y) * y + static_cast<long>(z) * z;
    }
    bool is_zero() const { return x == 0 && y == 0 && z == 0; }
    std::string str() const;
};

struct ModeHash {
    std::size_t operator()(const Mode& m) const {
        std::uint64_t h = 1469598103934665603ull;
        for (int v : {m.x, m.y, m.z}) {
            h ^= static_cast<std::uint32_t>(v);
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

/// Cubic momentum torus: all integer modes with |n_i| <= cutoff, in a fixed
/// deterministic order, closed under negation.
class MomentumLattice {
public:
    MomentumLattice(double box_side, int cutoff);

    double L() const { return L_; }
    double volume() const { return L_ * L_ * L_; }
    int cutoff() const { return cutoff_; }
    int size() const { return static_cast<int>(modes_.size()); }
    const std::vector<Mode>& modes() const { return modes_; }
    const Mode& mode(int id) const { return modes_[static_cast<std::size_t>(id)]; }
    /// -1 when the mode is outside the lattice.
    int index_of(const Mode& m) const;
    int negation_of(int id) const { return neg_[static_cast<std::size_t>(id)]; }
    int zero_mode() const { return zero_id_; }

    /// |p|^2 = (2 pi / L)^2 |n|^2.
    double p2(int id) const;
    double p_norm(int id) const;
    /// Momentum magnitude for arbitrary integer coordinates.
    double p_norm(const Mode& m) const;

private:
    double L_;
    int cutoff_;
    std::vector<Mode> modes_;
    std::vector<int> neg_;
    std::unordered_map<Mode, int, ModeHash> index_;
    int zero_id_ = -1;
};

/// Occupation map on lattice modes with a fixed total particle number.
/// Stored sparsely as sorted (mode id, count) pairs; equality and hashing are
/// by exact integer content.
class OccupationState {
public:
    OccupationState() = default;
    explicit OccupationState(std::vector<std::pair<int, int>> occ);

    int total() const { return total_; }
    int count(int mode_id) const;
    const std::vector<std::pair<int, int>>& entries() const { return occ_; }
    bool empty() const { return occ_.empty(); }

    /// New state with the count at mode_id shifted by delta (>= 0 result).
    OccupationState with_delta(int mode_id, int delta) const;

    friend bool operator==(const OccupationState&, const OccupationState&) = default;
    bool operator<(const OccupationState& o) const { return occ_ < o.occ_; }
    std::string str() const;

private:
    std::vector<std::pair<int, int>> occ_; // sorted by mode id, counts > 0
    int total_ = 0;
};

struct OccupationHash {
    std::size_t operator()(const OccupationState& s) const {
        std::uint64_t h = 1469598103934665603ull;
        for (const auto& [m, c] : s.entries()) {
            h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(m));
            h *= 1099511628211ull;
            h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(c));
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

/// Total momentum in integer coordinates.
Mode total_momentum(const MomentumLattice& lat, const OccupationState& s);

} // namespace bosegas

#endif
