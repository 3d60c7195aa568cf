#include <doctest.h>

#include <cmath>

#include "esn.hpp"
#include "rng.hpp"
#include "test_helpers.hpp"

using namespace oqrc;

namespace {

double state_distance(const EsnState& a, const EsnState& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("generate_esn_matrix") {
    SUBCASE("size 1") {
        const ComplexMatrix w = generate_esn_matrix({1, 0.37, 0.5, 5});
        CHECK(std::abs(std::abs(w(0, 0)) - 0.37) < 1e-12);
    }

    SUBCASE("spectral radius lands on the target") {
        const ComplexMatrix w = generate_esn_matrix({50, 0.9, 0.5, 7});
        CHECK(std::abs(spectral_radius(w) - 0.9) < 1e-8);
    }

    SUBCASE("seeded determinism") {
        const ComplexMatrix a = generate_esn_matrix({20, 0.8, 0.5, 123});
        const ComplexMatrix b = generate_esn_matrix({20, 0.8, 0.5, 123});
        CHECK(a.entries() == b.entries());
        const ComplexMatrix c = generate_esn_matrix({20, 0.8, 0.5, 124});
        CHECK(a.entries() != c.entries());
    }

    CHECK_THROWS_AS(generate_esn_matrix({0, 0.9, 0.5, 1}), std::invalid_argument);
    CHECK_THROWS_AS(generate_esn_matrix({5, 1.1, 0.5, 1}), std::invalid_argument);
}

TEST_CASE("generate_annulus_matrix") {
    SUBCASE("forced radius") {
        const ComplexMatrix w = generate_annulus_matrix({2, 0.45, 0.45}, 3);
        for (const auto& e : eig_general(w)) CHECK(std::abs(std::abs(e) - 0.45) < 1e-8);
    }

    SUBCASE("moduli stay inside the ring") {
        const ComplexMatrix w = generate_annulus_matrix({20, 0.3, 0.6}, 9);
        for (const auto& e : eig_general(w)) {
            CHECK(std::abs(e) >= 0.3 - 1e-8);
            CHECK(std::abs(e) <= 0.6 + 1e-8);
        }
        // The construction is real.
        for (const auto& v : w.entries()) CHECK(v.imag() == 0.0);
    }

    SUBCASE("degenerate ring collapses to the zero matrix") {
        const ComplexMatrix w = generate_annulus_matrix({4, 0.0, 0.0}, 11);
        CHECK(max_abs(w) < 1e-15);
    }

    SUBCASE("odd sizes get a real eigenvalue") {
        const ComplexMatrix w = generate_annulus_matrix({7, 0.2, 0.5}, 13);
        for (const auto& e : eig_general(w)) {
            CHECK(std::abs(e) >= 0.2 - 1e-8);
            CHECK(std::abs(e) <= 0.5 + 1e-8);
        }
    }

    CHECK_THROWS_AS(generate_annulus_matrix({5, 0.2, 1.0}, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_annulus_matrix({5, 0.5, 0.2}, 1), std::invalid_argument);
}

TEST_CASE("onion_esn_matrix") {
    SUBCASE("single block matches the annulus generator") {
        const AnnulusBlockConfig block{6, 0.3, 0.7};
        const ComplexMatrix onion = onion_esn_matrix({block}, 42);
        const ComplexMatrix direct = generate_annulus_matrix(block, derive_seed(42, 0));
        CHECK(onion.entries() == direct.entries());
    }

    SUBCASE("spectrum is the union of the block annuli") {
        const ComplexMatrix w = onion_esn_matrix({{10, 0.2, 0.4}, {10, 0.6, 0.8}}, 5);
        REQUIRE(w.rows() == 20);
        const ComplexVector eigs = eig_general(w);
        int inner = 0, outer = 0;
        for (const auto& e : eigs) {
            const double m = std::abs(e);
            if (m >= 0.2 - 1e-8 && m <= 0.4 + 1e-8) ++inner;
            else if (m >= 0.6 - 1e-8 && m <= 0.8 + 1e-8) ++outer;
        }
        CHECK(inner == 10);
        CHECK(outer == 10);
        CHECK(spectral_radius(w) <= 0.8 + 1e-8);
    }

    CHECK_THROWS_AS(onion_esn_matrix({}, 1), std::invalid_argument);
}

TEST_CASE("esn_step") {
    SUBCASE("zero weights give the zero state") {
        const ComplexMatrix w(3, 3), w_in(3, 4);
        const EsnState next = esn_step(w_in, w, EsnState(3, 0.5), 0.3, 0.4, 0.5);
        for (double v : next) CHECK(v == 0.0);
    }

    SUBCASE("bias-only drive saturates to tanh(1)") {
        const ComplexMatrix w(2, 2);
        ComplexMatrix w_in(2, 4);
        w_in(0, 0) = 1.0;  // unit weight on the constant slot of unit 0
        const EsnState next = esn_step(w_in, w, EsnState(2, 0.0), 0.9, 0.9, 0.9);
        CHECK(next[0] == doctest::Approx(std::tanh(1.0)).epsilon(1e-15));
        CHECK(next[1] == 0.0);
    }

    SUBCASE("outputs stay strictly inside (-1, 1)") {
        Rng rng(17);
        ComplexMatrix w(4, 4), w_in(4, 4);
        for (auto& e : w.entries()) e = rng.uniform(-3.0, 3.0);
        for (auto& e : w_in.entries()) e = rng.uniform(-3.0, 3.0);
        EsnState state(4, 0.0);
        for (int step = 0; step < 10; ++step) {
            state = esn_step(w_in, w, state, 5.0, -2.0, 7.0);
            for (double v : state) {
                CHECK(v > -1.0);
                CHECK(v < 1.0);
            }
        }
    }

    CHECK_THROWS_AS(esn_step(ComplexMatrix(3, 3), ComplexMatrix(3, 3), EsnState(3, 0.0), 0, 0, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(esn_step(ComplexMatrix(3, 4), ComplexMatrix(3, 3), EsnState(2, 0.0), 0, 0, 0),
                    std::invalid_argument);
}

TEST_CASE("echo-state washout") {
    const ComplexMatrix w = generate_esn_matrix({50, 0.9, 0.5, 71});
    const ComplexMatrix w_in = generate_input_matrix(50, 0.5, 72);
    Rng rng(73);
    EsnState a(50), b(50);
    for (auto& v : a) v = rng.uniform(-1.0, 1.0);
    for (auto& v : b) v = rng.uniform(-1.0, 1.0);
    const double initial = state_distance(a, b);
    REQUIRE(initial > 0.0);

    SUBCASE("driven trajectories converge hard over 100 steps") {
        EsnState x = a, y = b;
        Rng drive(74);
        for (int step = 0; step < 100; ++step) {
            const double p = drive.uniform(0.0, 1.0);
            const double h = drive.uniform(0.0, 1.0);
            const double t = drive.uniform(0.0, 1.0);
            x = esn_step(w_in, w, x, p, h, t);
            y = esn_step(w_in, w, y, p, h, t);
        }
        CHECK(state_distance(x, y) < 1e-6 * initial);
    }

    SUBCASE("zero-input contraction over 50 steps") {
        // Measured 7.98e-4 for this seed; the asymptotic rate is the
        // spectral radius, so the factor sits near 0.9^50 ~ 5e-3 and the
        // bound below is seed-specific.
        const ComplexMatrix w_in0(50, 4);
        EsnState x = a, y = b;
        for (int step = 0; step < 50; ++step) {
            x = esn_step(w_in0, w, x, 0.0, 0.0, 0.0);
            y = esn_step(w_in0, w, y, 0.0, 0.0, 0.0);
        }
        CHECK(state_distance(x, y) < 1e-3 * initial);
    }
}

TEST_CASE("teacher-forced rows and closed loop") {
    const ComplexMatrix w = generate_esn_matrix({8, 0.8, 0.5, 91});
    const ComplexMatrix w_in = generate_input_matrix(8, 0.5, 92);
    std::vector<double> pitting(14), humidity(14), temperature(14);
    for (int d = 0; d < 14; ++d) {
        pitting[static_cast<std::size_t>(d)] = 0.01 + 0.02 * d;
        humidity[static_cast<std::size_t>(d)] = 0.5 + 0.3 * std::sin(d);
        temperature[static_cast<std::size_t>(d)] = 0.5 + 0.3 * std::cos(d);
    }

    SUBCASE("14 days give 13 rows of [1,P,h,t,state]") {
        const EsnFeatureRows rows = esn_teacher_forced(w_in, w, pitting, humidity, temperature);
        REQUIRE(rows.features.size() == 13);
        REQUIRE(rows.targets.size() == 13);
        CHECK(rows.features.front().size() == 4 + 8);
        CHECK(rows.features.front()[0] == 1.0);
        CHECK(rows.features.front()[1] == pitting[0]);
        CHECK(rows.targets.back() == pitting[13]);
    }

    SUBCASE("3-day warm-up gives 10 predictions") {
        const auto constant_readout = [](std::span<const double>) { return 0.37; };
        const auto preds =
            esn_closed_loop(w_in, w, constant_readout, pitting, humidity, temperature, 3);
        REQUIRE(preds.size() == 10);
        for (double p : preds) CHECK(p == 0.37);
    }

    SUBCASE("readouts are clamped to [0, 1]") {
        const auto big = [](std::span<const double>) { return 7.0; };
        const auto preds = esn_closed_loop(w_in, w, big, pitting, humidity, temperature, 3);
        for (double p : preds) CHECK(p == 1.0);
    }

    SUBCASE("warm-up of length L-2 leaves exactly 1 prediction") {
        const auto constant_readout = [](std::span<const double>) { return 0.2; };
        const auto preds =
            esn_closed_loop(w_in, w, constant_readout, pitting, humidity, temperature, 12);
        CHECK(preds.size() == 1);
    }

    SUBCASE("horizon shorter than the warm-up is rejected") {
        const auto constant_readout = [](std::span<const double>) { return 0.2; };
        CHECK_THROWS_AS(esn_closed_loop(w_in, w, constant_readout, pitting, humidity, temperature, 13),
                        std::invalid_argument);
    }

    SUBCASE("too-short series is rejected") {
        const std::vector<double> one{0.5};
        CHECK_THROWS_AS(esn_teacher_forced(w_in, w, one, one, one), std::invalid_argument);
    }
}
