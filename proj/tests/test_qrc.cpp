#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qrc.hpp"
#include "ridge.hpp"
#include "rng.hpp"

using namespace oqrc;

TEST_CASE("geometric_b_ladder") {
    const auto three = geometric_b_ladder(3, 0.1);
    REQUIRE(three.size() == 3);
    CHECK(three[0] == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(three[1] == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(three[2] == doctest::Approx(0.2).epsilon(1e-15));

    CHECK(geometric_b_ladder(1, 0.1) == std::vector<double>{0.1});

    const auto five = geometric_b_ladder(5, 0.1);
    CHECK(five.front() == doctest::Approx(0.025).epsilon(1e-15));
    CHECK(five.back() == doctest::Approx(0.4).epsilon(1e-15));

    CHECK_THROWS_AS(geometric_b_ladder(0, 0.1), std::invalid_argument);
}

TEST_CASE("qrc_step") {
    SUBCASE("zero prefactors keep the register in |0...0>") {
        QrcLayerConfig config;
        config.n_qubits = 4;
        config.a = config.b = config.c_h = config.c_t = 0.0;
        const QrcStepOutput out =
            qrc_step(config, QrcLayerState::initial(4), 0.7, 0.3, 0.9);
        REQUIRE(out.features.size() == 4 + 6);
        for (double f : out.features) CHECK(f == doctest::Approx(1.0).epsilon(1e-14));
        for (double y : out.next_state.feedback) CHECK(y == doctest::Approx(0.0).epsilon(1e-7));
    }

    SUBCASE("features stay in [-1,1] and feedback in [0,pi]") {
        QrcLayerConfig config;
        config.n_qubits = 3;
        Rng rng(8);
        QrcLayerState state = QrcLayerState::initial(3);
        for (int step = 0; step < 20; ++step) {
            const QrcStepOutput out = qrc_step(config, state, rng.uniform(0.0, 1.0),
                                               rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0));
            for (double f : out.features) {
                CHECK(f >= -1.0);
                CHECK(f <= 1.0);
            }
            for (double y : out.next_state.feedback) {
                CHECK(y >= 0.0);
                CHECK(y <= M_PI);
            }
            state = out.next_state;
        }
    }

    SUBCASE("encoding-only variant reproduces the single-qubit analytic value") {
        QrcLayerConfig config;
        config.n_qubits = 2;
        config.n_blocks = 0;
        Rng rng(29);
        for (int trial = 0; trial < 20; ++trial) {
            const double x = rng.uniform(0.0, 1.0);
            const double h = rng.uniform(0.0, 1.0);
            const double t = rng.uniform(0.0, 1.0);
            const QrcStepOutput out = qrc_step(config, QrcLayerState::initial(2), x, h, t);
            const double angle = config.a * x + config.c_h * h + config.c_t * t;
            CHECK(out.features[0] == doctest::Approx(std::cos(angle)).epsilon(1e-12));
        }
    }

    QrcLayerConfig config;
    CHECK_THROWS_AS(qrc_step(config, QrcLayerState::initial(3), 0.1, 0.2, 0.3),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        qrc_step(config, QrcLayerState::initial(6), std::nan(""), 0.2, 0.3),
        std::invalid_argument);
}

TEST_CASE("onion_step") {
    QrcLayerConfig base;
    base.n_qubits = 3;

    SUBCASE("single layer equals qrc_step plus the constant") {
        OnionQrcConfig config;
        config.layers = {base};
        const auto states = config.initial_states();
        const OnionStepOutput onion = onion_step(config, states, 0.4, 0.5, 0.6);
        const QrcStepOutput layer = qrc_step(base, states[0], 0.4, 0.5, 0.6);
        REQUIRE(onion.features.size() == layer.features.size() + 1);
        for (std::size_t i = 0; i < layer.features.size(); ++i) {
            CHECK(onion.features[i] == layer.features[i]);
        }
        CHECK(onion.features.back() == 1.0);
    }

    SUBCASE("identical layers duplicate their feature blocks") {
        OnionQrcConfig config;
        config.layers = {base, base};
        const OnionStepOutput out = onion_step(config, config.initial_states(), 0.4, 0.5, 0.6);
        const std::size_t block = static_cast<std::size_t>(base.feature_count());
        REQUIRE(out.features.size() == 2 * block + 1);
        for (std::size_t i = 0; i < block; ++i) {
            CHECK(out.features[i] == out.features[block + i]);
        }
    }

    SUBCASE("3 layers of 4 qubits give 31 features") {
        QrcLayerConfig four = base;
        four.n_qubits = 4;
        const OnionQrcConfig config = make_onion_config(3, four);
        CHECK(config.feature_count() == 3 * (4 + 6) + 1);
        const OnionStepOutput out = onion_step(config, config.initial_states(), 0.1, 0.2, 0.3);
        CHECK(out.features.size() == 31);
    }

    OnionQrcConfig config;
    config.layers = {base};
    CHECK_THROWS_AS(onion_step(config, {}, 0.1, 0.2, 0.3), std::invalid_argument);
}

TEST_CASE("teacher forcing") {
    const OnionQrcConfig config = make_onion_config(1, QrcLayerConfig{});
    std::vector<double> pitting(14), humidity(14, 0.5), temperature(14, 0.5);
    for (int d = 0; d < 14; ++d) pitting[static_cast<std::size_t>(d)] = 0.01 + 0.01 * d;

    SUBCASE("14 days give 13 rows") {
        const QrcFeatureRows rows = qrc_teacher_forced(config, pitting, humidity, temperature);
        CHECK(rows.features.size() == 13);
        CHECK(rows.targets.size() == 13);
        CHECK(rows.features.front().size() == config.feature_count());
    }

    SUBCASE("length-2 series gives exactly one row") {
        const std::vector<double> two{0.1, 0.2};
        const QrcFeatureRows rows = qrc_teacher_forced(config, two, two, two);
        CHECK(rows.features.size() == 1);
        CHECK(rows.targets == std::vector<double>{0.2});
    }

    SUBCASE("zero prefactors give identical rows on a constant series") {
        QrcLayerConfig zero;
        zero.n_qubits = 3;
        zero.a = zero.b = zero.c_h = zero.c_t = 0.0;
        OnionQrcConfig zc;
        zc.layers = {zero};
        const std::vector<double> constant(6, 0.3);
        const QrcFeatureRows rows = qrc_teacher_forced(zc, constant, constant, constant);
        for (const auto& row : rows.features) CHECK(row == rows.features.front());
    }

    SUBCASE("determinism is bit-exact") {
        const QrcFeatureRows a = qrc_teacher_forced(config, pitting, humidity, temperature);
        const QrcFeatureRows b = qrc_teacher_forced(config, pitting, humidity, temperature);
        CHECK(a.features == b.features);
    }

    SUBCASE("too-short series is rejected") {
        const std::vector<double> one{0.1};
        CHECK_THROWS_AS(qrc_teacher_forced(config, one, one, one), std::invalid_argument);
    }
}

TEST_CASE("closed loop") {
    const OnionQrcConfig config = make_onion_config(1, QrcLayerConfig{});
    std::vector<double> pitting(14), humidity(14, 0.5), temperature(14, 0.5);
    for (int d = 0; d < 14; ++d) pitting[static_cast<std::size_t>(d)] = 0.01 + 0.01 * d;

    SUBCASE("constant readout echoes the constant") {
        const auto readout = [](std::span<const double>) { return 0.42; };
        const auto preds = qrc_closed_loop(config, readout, pitting, humidity, temperature, 3);
        REQUIRE(preds.size() == 10);
        for (double p : preds) CHECK(p == 0.42);
    }

    SUBCASE("warm-up of length L-2 leaves exactly one prediction") {
        const auto readout = [](std::span<const double>) { return 0.11; };
        const auto preds = qrc_closed_loop(config, readout, pitting, humidity, temperature, 12);
        CHECK(preds.size() == 1);
    }

    SUBCASE("horizon shorter than warm-up is rejected") {
        const auto readout = [](std::span<const double>) { return 0.11; };
        CHECK_THROWS_AS(qrc_closed_loop(config, readout, pitting, humidity, temperature, 13),
                        std::invalid_argument);
    }
}

TEST_CASE("layer permutation only permutes feature blocks") {
    QrcLayerConfig base;
    base.n_qubits = 3;
    OnionQrcConfig forward = make_onion_config(2, base);
    OnionQrcConfig reversed = forward;
    std::swap(reversed.layers[0], reversed.layers[1]);

    std::vector<double> pitting(10), humidity(10), temperature(10);
    Rng rng(55);
    for (std::size_t d = 0; d < 10; ++d) {
        pitting[d] = rng.uniform(0.0, 0.5);
        humidity[d] = rng.uniform(0.0, 1.0);
        temperature[d] = rng.uniform(0.0, 1.0);
    }
    const QrcFeatureRows a = qrc_teacher_forced(forward, pitting, humidity, temperature);
    const QrcFeatureRows b = qrc_teacher_forced(reversed, pitting, humidity, temperature);

    const std::size_t block = static_cast<std::size_t>(base.feature_count());
    for (std::size_t r = 0; r < a.features.size(); ++r) {
        for (std::size_t i = 0; i < block; ++i) {
            CHECK(a.features[r][i] == b.features[r][block + i]);
            CHECK(a.features[r][block + i] == b.features[r][i]);
        }
    }

    // Ridge on permuted columns gives identical fitted values.
    std::vector<std::vector<double>> ya(a.targets.size(), std::vector<double>(1));
    for (std::size_t i = 0; i < a.targets.size(); ++i) ya[i][0] = a.targets[i];
    const RidgeModel ma = ridge_fit(a.features, ya, 1e-6);
    const RidgeModel mb = ridge_fit(b.features, ya, 1e-6);
    for (std::size_t r = 0; r < a.features.size(); ++r) {
        CHECK(ma.predict(a.features[r])[0] ==
              doctest::Approx(mb.predict(b.features[r])[0]).epsilon(1e-9));
    }
}
