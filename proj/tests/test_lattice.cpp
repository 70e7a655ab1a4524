#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "nlab/lattice.hpp"

using namespace nlab;
using hilbert::Complex;
using lattice::EprParams;
using lattice::LatticeConfig;
using lattice::LatticeState;

TEST_CASE("lattice geometry and index arithmetic") {
    const auto cfg = LatticeConfig::odd(0.5, 3);
    CHECK(cfg.n_points == 7);
    CHECK(cfg.origin == -3);
    CHECK(cfg.point(2) == doctest::Approx(1.0));
    CHECK(cfg.dual_point(1) == doctest::Approx(2.0 * std::numbers::pi / 3.5));
    CHECK(cfg.wrap(4) == -3);
    CHECK(cfg.wrap(-4) == 3);
    CHECK(cfg.index_of(-1.5) == -3);
    CHECK_THROWS_AS(cfg.index_of(0.3), OffLattice);
    CHECK_THROWS_AS(cfg.index_of(5.0), OffLattice);

    const auto even = LatticeConfig::even_count(1.0, 8);
    CHECK(even.origin == -4);
    CHECK(even.wrap(4) == -4);
    CHECK_THROWS_AS(LatticeConfig::even_count(1.0, 7), Error);
}

TEST_CASE("orthogonality sums collapse to the point mass") {
    const auto cfg = LatticeConfig::odd(1.0, 2);
    CHECK(std::abs(lattice::orthogonality_sum(cfg, 0.0) - 5.0) < 1e-12);
    CHECK(std::abs(lattice::orthogonality_sum(cfg, 1.0)) < 5e-9);
    CHECK(std::abs(lattice::dual_orthogonality_sum(cfg, 0.0) - 5.0) < 1e-12);
    CHECK_THROWS_AS(lattice::orthogonality_sum(cfg, 0.25), OffLattice);

    // Both relations at every point for half-widths up to 6.
    for (int m = 1; m <= 6; ++m) {
        const auto c = LatticeConfig::odd(0.7, m);
        const int n = c.n_points;
        for (int i = c.origin; i < c.origin + n; ++i) {
            const double expect = (i == 0) ? n : 0.0;
            CHECK(std::abs(lattice::orthogonality_sum(c, c.point(i)) - expect) < 5e-9 * n);
            CHECK(std::abs(lattice::dual_orthogonality_sum(c, c.dual_point(i)) - expect) <
                  5e-9 * n);
        }
    }
}

TEST_CASE("dft of a point mass is flat and plane waves are point masses") {
    const auto cfg = LatticeConfig::odd(1.0, 2);
    const int n = cfg.n_points;

    Eigen::VectorXcd delta = Eigen::VectorXcd::Zero(n);
    delta(-cfg.origin) = 1.0;  // x = 0
    const auto flat = lattice::dft(LatticeState(cfg, 1, delta));
    for (int i = 0; i < n; ++i)
        CHECK(std::abs(std::abs(flat.amplitudes()(i)) - 1.0 / std::sqrt(5.0)) < 1e-12);

    // exp(i x p0)/sqrt(N) concentrates on the dual index of p0.
    const int k0 = 1;
    Eigen::VectorXcd wave(n);
    for (int i = 0; i < n; ++i)
        wave(i) = std::polar(1.0 / std::sqrt(static_cast<double>(n)),
                             cfg.point(cfg.origin + i) * cfg.dual_point(k0));
    const auto hat = lattice::dft(LatticeState(cfg, 1, wave));
    for (int i = 0; i < n; ++i) {
        const double expect = (cfg.origin + i == k0) ? 1.0 : 0.0;
        CHECK(std::abs(std::abs(hat.amplitudes()(i)) - expect) < 1e-12);
    }

    SeededRng rng(3);
    for (int count : {5, 9, 13}) {
        const auto c = LatticeConfig::odd(0.3, (count - 1) / 2);
        Eigen::VectorXcd v(count);
        for (int i = 0; i < count; ++i) v(i) = Complex(rng.normal(), rng.normal());
        const LatticeState s(c, 1, v);
        const auto round = lattice::idft(lattice::dft(s));
        CHECK((round.amplitudes() - s.amplitudes()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(std::abs(lattice::dft(s).norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("position and momentum operators have proper eigenvectors") {
    const auto cfg = LatticeConfig::odd(0.5, 3);
    const int n = cfg.n_points;

    // Q on the point mass at x = 2h.
    const auto q = lattice::position_op(cfg, 0, 1);
    Eigen::VectorXcd delta = Eigen::VectorXcd::Zero(n);
    delta(2 - cfg.origin) = 1.0;
    const Eigen::VectorXcd q_applied = q.apply(delta);
    CHECK(std::abs(q_applied(2 - cfg.origin) - cfg.point(2)) == 0.0);
    for (int i = 0; i < n; ++i)
        if (i != 2 - cfg.origin) CHECK(std::abs(q_applied(i)) == 0.0);

    // P on plane waves: exp(+i x p1) carries +p1, exp(-i x p1) carries -p1.
    const auto p = lattice::momentum_op(cfg, 0, 1);
    const int k1 = 2;
    Eigen::VectorXcd plus(n), minus(n);
    for (int i = 0; i < n; ++i) {
        const double phase = cfg.point(cfg.origin + i) * cfg.dual_point(k1);
        plus(i) = std::polar(1.0, phase);
        minus(i) = std::polar(1.0, -phase);
    }
    CHECK((p.apply(plus) - cfg.dual_point(k1) * plus).norm() < 1e-10);
    CHECK((p.apply(minus) + cfg.dual_point(k1) * minus).norm() < 1e-10);

    // Different particle axes commute.
    const auto q1 = lattice::position_op(cfg, 0, 2);
    const auto q2 = lattice::position_op(cfg, 1, 2);
    const auto p1 = lattice::momentum_op(cfg, 0, 2);
    CHECK(hilbert::operator_norm(hilbert::commutator(q1, q2)) < 1e-12);
    CHECK(hilbert::operator_norm(hilbert::commutator(p1, q2)) < 1e-12);
}

TEST_CASE("the pair state is supported on the shifted diagonal") {
    const auto cfg = LatticeConfig::odd(1.0, 2);
    const int n = cfg.n_points;

    const auto state0 = lattice::build_epr_state(cfg, EprParams{0.0});
    const auto& amps0 = state0.amplitudes();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double mag = std::abs(amps0(i * n + j));
            if (i == j) {
                CHECK(std::abs(mag - 1.0 / std::sqrt(5.0)) < 1e-12);
            } else {
                CHECK(mag < 1e-14);
            }
        }

    // Offset by one site: support at x2 = x1 + h, wrapped around the box.
    const auto state1 = lattice::build_epr_state(cfg, EprParams{1.0});
    const auto& amps1 = state1.amplitudes();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int n1 = cfg.origin + i;
            const int n2 = cfg.origin + j;
            const double mag = std::abs(amps1(i * n + j));
            if (cfg.wrap(n1 + 1) == n2) {
                CHECK(std::abs(mag - 1.0 / std::sqrt(5.0)) < 1e-12);
            } else {
                CHECK(mag < 1e-14);
            }
        }

    CHECK_THROWS_AS(lattice::build_epr_state(cfg, EprParams{0.4}), OffLattice);
}

TEST_CASE("the three literal pair-state forms agree entrywise") {
    for (int m : {2, 3}) {
        const auto cfg = LatticeConfig::odd(1.0, m);
        for (double x0 : {0.0, 1.0, -2.0}) {
            const auto fa = lattice::epr_form_fourier_sum(cfg, EprParams{x0});
            const auto fb = lattice::epr_form_delta(cfg, EprParams{x0});
            const auto fc = lattice::epr_form_convolution(cfg, EprParams{x0});
            CHECK((fa - fb).cwiseAbs().maxCoeff() < 1e-10);
            CHECK((fb - fc).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("momentum representation concentrates on opposite momenta") {
    const auto cfg = LatticeConfig::odd(1.0, 2);
    const int n = cfg.n_points;
    const auto state = lattice::build_epr_state(cfg, EprParams{1.0});
    const auto hat = lattice::dft(state);
    const auto& amps = hat.amplitudes();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int k1 = cfg.origin + i;
            const int k2 = cfg.origin + j;
            const double mag = std::abs(amps(i * n + j));
            if (cfg.wrap(static_cast<long long>(k1) + k2) == 0) {
                CHECK(mag > 1.0 / std::sqrt(5.0) - 1e-12);
            } else {
                CHECK(mag < 1e-12);
            }
        }
}

TEST_CASE("sequential position measurements track the offset") {
    const auto cfg = LatticeConfig::odd(1.0, 3);
    SeededRng rng(5);

    const EprParams zero{0.0};
    const auto state0 = lattice::build_epr_state(cfg, zero);
    const auto rep0 = lattice::epr_position_correlation(state0, zero, rng, 1000, 0);
    CHECK(rep0.matches == 1000);

    const EprParams offset{1.0};
    const auto state1 = lattice::build_epr_state(cfg, offset);
    SeededRng rng1(7);
    const auto rep1 = lattice::epr_position_correlation(state1, offset, rng1, 1000, 0);
    CHECK(rep1.matches == 1000);

    // Reversed order: measuring the second particle first still matches.
    SeededRng rng2(9);
    const auto rev = lattice::epr_position_correlation(state1, offset, rng2, 1000, 1);
    CHECK(rev.matches == 1000);
}

TEST_CASE("sequential momentum measurements are opposite and uniform") {
    const auto cfg = LatticeConfig::odd(1.0, 3);
    const int n = cfg.n_points;
    const auto state = lattice::build_epr_state(cfg, EprParams{0.0});
    SeededRng rng(11);
    const long trials = 1000;
    const auto rep = lattice::epr_momentum_correlation(state, rng, trials, 0);
    CHECK(rep.matches == trials);

    // Flat Schmidt spectrum: the first outcome is uniform across the dual
    // lattice, within three binomial standard deviations.
    const double expected = static_cast<double>(trials) / n;
    const double sigma = std::sqrt(trials * (1.0 / n) * (1.0 - 1.0 / n));
    for (long c : rep.first_outcome_counts)
        CHECK(std::abs(static_cast<double>(c) - expected) <= 3.0 * sigma);

    // Reversed order by symmetry.
    SeededRng rng2(13);
    const auto rev = lattice::epr_momentum_correlation(state, rng2, 200, 1);
    CHECK(rev.matches == 200);
}

TEST_CASE("zero momentum outcome forces the partner to zero") {
    const auto cfg = LatticeConfig::odd(1.0, 3);
    const auto state = lattice::build_epr_state(cfg, EprParams{2.0});
    SeededRng rng(17);
    int seen = 0;
    for (long t = 0; t < 300; ++t) {
        SeededRng trial = rng.stream(static_cast<std::uint64_t>(t));
        const auto first = lattice::measure_momentum(state, 0, trial);
        if (first.index != 0) continue;
        const auto second = lattice::measure_momentum(first.post_state, 1, trial);
        CHECK(second.index == 0);
        ++seen;
    }
    CHECK(seen > 0);
}

TEST_CASE("four-particle product state is maximally entangled across the pair cut") {
    const auto cfg = LatticeConfig::odd(1.0, 1);
    const auto state = lattice::build_four_particle_state(cfg, EprParams{0.0});
    CHECK(state.is_product_form());
    CHECK(state.dense_amplitudes().size() == 81);

    const auto sv = lattice::four_particle_schmidt(state);
    REQUIRE(sv.size() == 9);
    for (int i = 0; i < 9; ++i) CHECK(std::abs(sv(i) - 1.0 / 3.0) < 1e-10);
}

TEST_CASE("pairwise correlations carry over to the four-particle state") {
    const auto cfg = LatticeConfig::odd(1.0, 2);
    const EprParams params{1.0};
    const auto state = lattice::build_four_particle_state(cfg, params);
    const int o0 = cfg.index_of(params.x0);
    SeededRng rng(19);
    for (long t = 0; t < 400; ++t) {
        SeededRng trial = rng.stream(static_cast<std::uint64_t>(t));
        // Measure particle 3 (axis 2), then particle 1 (axis 0).
        const auto m3 = lattice::measure_position(state, 2, trial);
        const auto m1 = lattice::measure_position(m3.post_state, 0, trial);
        CHECK(m1.index == cfg.wrap(static_cast<long long>(m3.index) - o0));
    }
}

TEST_CASE("partner functions of position and momentum correlate exactly") {
    const auto cfg = LatticeConfig::odd(1.0, 1);
    const auto state = lattice::build_four_particle_state(cfg, EprParams{0.0});
    const auto f = [](double v) { return std::cos(0.7 * v); };
    // cos(c Q1) against cos(c Q3): axes 0 and 2.
    CHECK(lattice::diagonal_partner_residual(state, f, 0, 2, false) < 1e-10);
    // Momentum support sits on p3 = -p1, and cosine is even.
    CHECK(lattice::diagonal_partner_residual(state, f, 0, 2, true) < 1e-10);
    // A deliberately wrong pairing does not vanish.
    CHECK(lattice::diagonal_partner_residual(state, f, 0, 1, false) > 1e-3);
}

TEST_CASE("dense materialization of large four-particle grids is refused") {
    const auto cfg = LatticeConfig::odd(1.0, 7);  // 15 points
    const auto state = lattice::build_four_particle_state(cfg, EprParams{0.0});
    CHECK_THROWS_AS(state.dense_amplitudes(), TooLarge);
    // Factorwise measurement still works on the product form.
    SeededRng rng(23);
    const auto m = lattice::measure_position(state, 3, rng);
    CHECK(m.post_state.is_product_form());
}
