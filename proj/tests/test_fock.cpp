#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "bosegas/fock.hpp"
#include "bosegas/lattice.hpp"
#include "bosegas/radial_potential.hpp"
#include "bosegas/shells.hpp"

using namespace bosegas;

namespace {

VhatTable make_vhat(const MomentumLattice& lat, RadialPotential v) {
    return VhatTable(lat, [v = std::move(v)](double p) { return fourier_hat(v, p); });
}

// rectangular annihilation matrix a_m : basis_n -> basis_(n-1)
Eigen::MatrixXd annihilation_matrix(const Basis& to, const Basis& from, int mode) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(to.dim(), from.dim());
    for (int j = 0; j < from.dim(); ++j) {
        const auto& st = from.states[static_cast<std::size_t>(j)];
        const int n = st.count(mode);
        if (n == 0) continue;
        const int i = to.index_of(st.with_delta(mode, -1));
        if (i >= 0) a(i, j) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

} // namespace

TEST_CASE("basis enumeration counts and guards") {
    MomentumLattice lat(2.0 * M_PI, 2);
    const int z = lat.zero_mode();
    const int e1 = lat.index_of({1, 0, 0});
    const int e2 = lat.index_of({0, 1, 0});
    const int e3 = lat.index_of({0, 0, 1});
    CHECK(enumerate_basis(lat, 3, {z}).dim() == 1);
    CHECK(enumerate_basis(lat, 2, {z, e1}).dim() == 3);
    CHECK(enumerate_basis(lat, 3, {z, e1, e2, e3}).dim() == 20);
    // guard: too many modes
    std::vector<int> many;
    for (int i = 0; i < 13; ++i) many.push_back(i);
    CHECK_THROWS_AS(enumerate_basis(lat, 2, many), std::length_error);
    // guard: dimension
    std::vector<int> twelve;
    for (int i = 0; i < 12; ++i) twelve.push_back(i);
    CHECK_THROWS_AS(enumerate_basis(lat, 40, twelve), std::length_error);
}

TEST_CASE("deterministic enumeration order") {
    MomentumLattice lat(2.0 * M_PI, 1);
    const int z = lat.zero_mode();
    const int e1 = lat.index_of({1, 0, 0});
    const auto b1 = enumerate_basis(lat, 2, {z, e1});
    const auto b2 = enumerate_basis(lat, 2, {e1, z}); // subset order should not matter
    REQUIRE(b1.dim() == b2.dim());
    for (int i = 0; i < b1.dim(); ++i)
        CHECK(b1.states[static_cast<std::size_t>(i)] == b2.states[static_cast<std::size_t>(i)]);
}

TEST_CASE("commutation relations on every tested sector") {
    MomentumLattice lat(2.0 * M_PI, 1);
    const int z = lat.zero_mode();
    const int e1 = lat.index_of({1, 0, 0});
    const int me1 = lat.index_of({-1, 0, 0});
    const std::vector<int> sub{z, e1, me1};
    for (int n = 1; n <= 3; ++n) {
        const auto bn = enumerate_basis(lat, n, sub);
        const auto bn1 = enumerate_basis(lat, n + 1, sub);
        const auto bm1 = enumerate_basis(lat, n - 1, sub);
        for (int p : sub)
            for (int q : sub) {
                // [a_p, a+_q] = a_p a+_q - a+_q a_p on the N-particle sector
                const Eigen::MatrixXd ap_up = annihilation_matrix(bn, bn1, p);
                const Eigen::MatrixXd aq_dag_up = annihilation_matrix(bn, bn1, q).transpose();
                const Eigen::MatrixXd aq_dag_dn = annihilation_matrix(bm1, bn, q).transpose();
                const Eigen::MatrixXd ap_dn = annihilation_matrix(bm1, bn, p);
                const Eigen::MatrixXd lhs = ap_up * aq_dag_up - aq_dag_dn * ap_dn;
                Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(bn.dim(), bn.dim());
                if (p == q) expect.setIdentity();
                CHECK((lhs - expect).cwiseAbs().maxCoeff() < 1e-12);
            }
    }
}

TEST_CASE("free Hamiltonian is the kinetic diagonal") {
    MomentumLattice lat(2.0 * M_PI, 1);
    const int z = lat.zero_mode();
    const int e1 = lat.index_of({1, 0, 0});
    const int me1 = lat.index_of({-1, 0, 0});
    const auto basis = enumerate_basis(lat, 2, {z, e1, me1});
    const auto vhat = make_vhat(lat, RadialPotential::zero());
    const auto h = build_hamiltonian(basis, vhat);
    const Eigen::MatrixXd dense = h.dense();
    for (int i = 0; i < basis.dim(); ++i) {
        double kin = 0.0;
        for (const auto& [m, c] : basis.states[static_cast<std::size_t>(i)].entries())
            kin += lat.p2(m) * c;
        for (int j = 0; j < basis.dim(); ++j)
            CHECK(dense(i, j) == doctest::Approx(i == j ? kin : 0.0).epsilon(1e-15));
    }
}

TEST_CASE("interacting Hamiltonian matches the hand-assembled two-body matrix") {
    MomentumLattice lat(2.0 * M_PI, 1);
    const auto v = RadialPotential::square_barrier(2.0, 1.0);
    const auto vhat = make_vhat(lat, v);
    const int z = lat.zero_mode();
    const int e1 = lat.index_of({1, 0, 0});
    const int me1 = lat.index_of({-1, 0, 0});
    const auto basis = enumerate_basis(lat, 2, {me1, z, e1});
    const auto h = build_hamiltonian(basis, vhat);
    CHECK(h.hermiticity_defect() < 1e-12);
    CHECK(h.momentum_block_defect() == 0.0);

    const double vol = lat.volume();
    const double v0 = vhat.at(Mode{0, 0, 0});
    const double v1 = vhat.at(Mode{1, 0, 0});
    const double v2 = vhat.at(Mode{2, 0, 0});

    auto idx = [&](int a, int b, int c) {
        std::vector<std::pair<int, int>> occ;
        if (a) occ.emplace_back(me1, a);
        if (b) occ.emplace_back(z, b);
        if (c) occ.emplace_back(e1, c);
        return basis.index_of(OccupationState(occ));
    };
    const Eigen::MatrixXd dense = h.dense();
    // diagonal entries: kinetic + (1/2V)(V0 (N^2-N) + sum_{u != v} V_{u-v} n_u n_v)
    CHECK(dense(idx(2, 0, 0), idx(2, 0, 0)) == doctest::Approx(2.0 + v0 / vol).epsilon(1e-13));
    CHECK(dense(idx(1, 1, 0), idx(1, 1, 0)) == doctest::Approx(1.0 + (v0 + v1) / vol).epsilon(1e-13));
    CHECK(dense(idx(1, 0, 1), idx(1, 0, 1)) == doctest::Approx(2.0 + (v0 + v2) / vol).epsilon(1e-13));
    CHECK(dense(idx(0, 2, 0), idx(0, 2, 0)) == doctest::Approx(v0 / vol).epsilon(1e-13));
    CHECK(dense(idx(0, 0, 2), idx(0, 0, 2)) == doctest::Approx(2.0 + v0 / vol).epsilon(1e-13));
    // the only off-diagonal coupling: (1,0,1) <-> (0,2,0) with sqrt(2) V_1 / V
    CHECK(dense(idx(1, 0, 1), idx(0, 2, 0)) == doctest::Approx(std::sqrt(2.0) * v1 / vol).epsilon(1e-13));
    CHECK(dense(idx(0, 2, 0), idx(1, 0, 1)) == doctest::Approx(std::sqrt(2.0) * v1 / vol).epsilon(1e-13));
    // everything else in the zero-momentum sector vanishes
    CHECK(dense(idx(2, 0, 0), idx(0, 2, 0)) == 0.0);

    // eigenvalues of the hand-assembled blocks
    const double d1 = 2.0 + (v0 + v2) / vol, d2 = v0 / vol, off = std::sqrt(2.0) * v1 / vol;
    const double mid = 0.5 * (d1 + d2), rad = std::sqrt(0.25 * (d1 - d2) * (d1 - d2) + off * off);
    const auto spec = exact_free_energy(h, 1.0);
    std::vector<double> expect{2.0 + v0 / vol,       1.0 + (v0 + v1) / vol, mid - rad,
                               mid + rad,            1.0 + (v0 + v1) / vol, 2.0 + v0 / vol};
    std::sort(expect.begin(), expect.end());
    REQUIRE(static_cast<int>(spec.eigenvalues.size()) == 6);
    for (std::size_t i = 0; i < expect.size(); ++i)
        CHECK(spec.eigenvalues[i] == doctest::Approx(expect[i]).epsilon(1e-12));
}

TEST_CASE("quartic element for two condensate particles") {
    MomentumLattice lat(2.0 * M_PI, 1);
    const auto v = RadialPotential::square_barrier(2.0, 1.0);
    const auto vhat = make_vhat(lat, v);
    const int z = lat.zero_mode();
    OccupationState two({{z, 2}});
    const double elem = quartic_element(lat, vhat, two, two, Mode{0, 0, 0}, Mode{0, 0, 0}, Mode{0, 0, 0});
    CHECK(elem == doctest::Approx(vhat.at(Mode{0, 0, 0}) / lat.volume()).epsilon(1e-14));
}

TEST_CASE("free energy from the spectrum and monotonicity in beta") {
    MomentumLattice lat(2.0 * M_PI, 1);
    const auto vhat = make_vhat(lat, RadialPotential::zero());
    const int z = lat.zero_mode();
    const int e1 = lat.index_of({1, 0, 0});
    const int me1 = lat.index_of({-1, 0, 0});
    const auto basis = enumerate_basis(lat, 2, {z, e1, me1});
    const auto h = build_hamiltonian(basis, vhat);
    const auto spec = exact_free_energy(h, 2.0);
    double zsum = 0.0;
    for (double e : spec.eigenvalues) zsum += std::exp(-2.0 * e);
    CHECK(spec.free_energy == doctest::Approx(-std::log(zsum) / 2.0).epsilon(1e-13));
    // F is nondecreasing in beta (dF/dbeta = S/beta^2 >= 0)
    double prev = -1e300;
    for (double beta : {0.3, 0.6, 1.2, 2.4, 5.0}) {
        const double f = exact_free_energy(h, beta).free_energy;
        CHECK(f >= prev - 1e-12);
        prev = f;
    }
}

TEST_CASE("entropy of mixtures") {
    // orthonormal states: S = -sum g ln g
    {
        Eigen::MatrixXd overlap = Eigen::MatrixXd::Identity(3, 3);
        const std::vector<double> g{0.5, 0.3, 0.2};
        double expect = 0.0;
        for (double x : g) expect -= x * std::log(x);
        CHECK(entropy_from_gram(g, overlap) == doctest::Approx(expect).epsilon(1e-13));
    }
    // single pure state
    {
        Eigen::MatrixXd overlap = Eigen::MatrixXd::Identity(1, 1);
        CHECK(entropy_from_gram({1.0}, overlap) == doctest::Approx(0.0).epsilon(1e-14));
    }
    // two non-orthogonal states, overlap s, equal weights: lambda = (1 +- |s|)/2
    {
        const double s = 0.37;
        Eigen::MatrixXd overlap(2, 2);
        overlap << 1.0, s, s, 1.0;
        const double lp = 0.5 * (1.0 + s), lm = 0.5 * (1.0 - s);
        const double expect = -lp * std::log(lp) - lm * std::log(lm);
        CHECK(entropy_from_gram({0.5, 0.5}, overlap) == doctest::Approx(expect).epsilon(1e-13));
    }
    // weight-sum guard
    {
        Eigen::MatrixXd overlap = Eigen::MatrixXd::Identity(2, 2);
        CHECK_THROWS_AS(entropy_from_gram({0.6, 0.6}, overlap), std::domain_error);
    }
}

TEST_CASE("interaction decomposition splits the Hamiltonian exactly") {
    MomentumLattice lat(2.0 * M_PI, 2);
    const auto v = RadialPotential::square_barrier(2.0, 1.0);
    const auto vhat = make_vhat(lat, v);
    ShellOverrides ov;
    ov.pl_list = std::vector<Mode>{{1, 0, 0}, {-1, 0, 0}};
    ov.ph_list = std::vector<Mode>{{2, 0, 0}, {-2, 0, 0}, {0, 2, 0}, {0, -2, 0}};
    ov.m_c = 3;
    const ShellPartition shells(lat, 0.01, ov);
    const int z = lat.zero_mode();
    std::vector<int> sub{z, lat.index_of({1, 0, 0}), lat.index_of({-1, 0, 0}),
                         lat.index_of({2, 0, 0}), lat.index_of({-2, 0, 0}), lat.index_of({0, 2, 0}),
                         lat.index_of({0, -2, 0})};
    const auto basis = enumerate_basis(lat, 3, sub);
    const auto h = build_hamiltonian(basis, vhat);
    const auto parts = decompose_interaction(basis, vhat, shells);
    Eigen::MatrixXd sum = parts.kinetic.dense() + parts.diagonal.dense() + parts.low_low.dense() +
                          parts.low_high.dense() + parts.high_high.dense() + parts.rest.dense();
    CHECK((sum - h.dense()).cwiseAbs().maxCoeff() < 1e-12);
    for (const OperatorMatrix* m : {&parts.diagonal, &parts.low_low, &parts.low_high, &parts.high_high})
        CHECK(m->hermiticity_defect() < 1e-12);
    CHECK(h.momentum_block_defect() == 0.0);
}
