#include <doctest.h>

#include <cmath>

#include "spectrum.hpp"
#include "test_helpers.hpp"

using namespace oqrc;
using oqrc::test::eig_multiset_distance;

TEST_CASE("superop_of_unitary") {
    SUBCASE("identity") {
        const Superoperator s = superop_of_unitary(ComplexMatrix::identity(2));
        CHECK(max_abs(s.matrix - ComplexMatrix::identity(4)) == 0.0);
        for (const auto& e : eig_general(s.matrix)) CHECK(std::abs(e - cxd(1.0, 0.0)) < 1e-12);
    }

    SUBCASE("relative phase unitary") {
        const double phi = 0.9;
        const ComplexMatrix u = ComplexMatrix::diagonal({1.0, std::polar(1.0, phi)});
        const ComplexVector eigs = eig_general(superop_of_unitary(u).matrix);
        const ComplexVector expected{1.0, 1.0, std::polar(1.0, phi), std::polar(1.0, -phi)};
        CHECK(eig_multiset_distance(eigs, expected) < 1e-12);
    }

    SUBCASE("unit moduli for a generic circuit unitary") {
        const ComplexMatrix u = hea_step_unitary(3, hea_base_angles(3, 2, 5), 1.3, 2);
        for (const auto& e : eig_general(superop_of_unitary(u).matrix)) {
            CHECK(std::abs(std::abs(e) - 1.0) < 1e-9);
        }
    }

    SUBCASE("rejects non-unitary input naming the defect") {
        CHECK_THROWS_WITH_AS(superop_of_unitary(ComplexMatrix::diagonal({1.0, 2.0})),
                             doctest::Contains("not unitary"), std::invalid_argument);
    }
}

TEST_CASE("superop_of_channel") {
    SUBCASE("single-qubit measurement channel is diag(1,0,0,1)") {
        const Superoperator s = superop_of_channel(z_measurement_channel(1, {0}));
        CHECK(max_abs(s.matrix - ComplexMatrix::diagonal({1.0, 0.0, 0.0, 1.0})) == 0.0);
        const ComplexVector eigs = eig_general(s.matrix);
        CHECK(eig_multiset_distance(eigs, {1.0, 1.0, 0.0, 0.0}) < 1e-14);
    }

    SUBCASE("identity channel") {
        KrausChannel identity;
        identity.operators.push_back(ComplexMatrix::identity(2));
        CHECK(max_abs(superop_of_channel(identity).matrix - ComplexMatrix::identity(4)) == 0.0);
    }

    SUBCASE("incomplete channels are rejected") {
        KrausChannel bad;
        bad.operators.push_back(0.5 * ComplexMatrix::identity(2));
        CHECK_THROWS_AS(superop_of_channel(bad), std::invalid_argument);
    }
}

TEST_CASE("step_spectrum") {
    const std::vector<double> angles = hea_base_angles(2, 2, 3);

    SUBCASE("no measurements: all moduli are 1") {
        for (const auto& e : step_spectrum(2, angles, 1.0, 2, {})) {
            CHECK(std::abs(std::abs(e) - 1.0) < 1e-9);
        }
    }

    SUBCASE("zero prefactor matches the explicit 16x16 construction") {
        const std::vector<double> one_slice = hea_base_angles(2, 1, 3);
        const ComplexVector eigs = step_spectrum(2, one_slice, 0.0, 1, {0});
        const Superoperator su = superop_of_unitary(hea_step_unitary(2, one_slice, 0.0, 1));
        const Superoperator sc = superop_of_channel(z_measurement_channel(2, {0}));
        const ComplexVector expected = eig_general(matmul(sc.matrix, su.matrix));
        CHECK(eig_multiset_distance(eigs, expected) == 0.0);
    }

    SUBCASE("fixed point, contraction, and conjugation symmetry") {
        for (double prefactor : {0.5, 1.0, 2.0}) {
            const ComplexVector eigs = step_spectrum(2, angles, prefactor, 2, {0});
            double closest_to_one = 1e300;
            double radius = 0.0;
            for (const auto& e : eigs) {
                closest_to_one = std::min(closest_to_one, std::abs(e - cxd(1.0, 0.0)));
                radius = std::max(radius, std::abs(e));
            }
            CHECK(closest_to_one < 1e-9);
            CHECK(radius <= 1.0 + 1e-9);
            // The multiset is closed under conjugation.
            ComplexVector conj(eigs.size());
            for (std::size_t i = 0; i < eigs.size(); ++i) conj[i] = std::conj(eigs[i]);
            CHECK(eig_multiset_distance(eigs, conj) < 1e-8);
        }
    }

    CHECK_THROWS_AS(step_spectrum(1, std::vector<double>{0.1, 0.2}, 1.0, 2, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(step_spectrum(7, std::vector<double>(14, 0.1), 1.0, 2, {}),
                    std::invalid_argument);
}

TEST_CASE("mean_nontrivial_modulus drops exactly the fixed point") {
    // {1, 0.5, -0.5i} -> mean of |0.5| and |-0.5i|.
    CHECK(mean_nontrivial_modulus({cxd(1.0, 0.0), cxd(0.5, 0.0), cxd(0.0, -0.5)}) ==
          doctest::Approx(0.5).epsilon(1e-15));
    // With every modulus 1 the mean stays exactly 1.
    CHECK(mean_nontrivial_modulus({cxd(1.0, 0.0), cxd(0.0, 1.0), cxd(-1.0, 0.0)}) == 1.0);
}

TEST_CASE("sweeps") {
    SpectrumConfig base;
    base.n_qubits = 2;
    base.depth = 2;
    base.seed = 11;

    SUBCASE("prefactor sweep preserves parameter order and is deterministic") {
        const std::vector<double> prefactors{0.0, 1.0, 2.0};
        const SpectrumSweepResult a = sweep_prefactor(base, prefactors);
        const SpectrumSweepResult b = sweep_prefactor(base, prefactors);
        REQUIRE(a.points.size() == 3);
        CHECK(a.parameter_name == "prefactor");
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(a.points[i].parameter_value == prefactors[i]);
            CHECK(a.points[i].eigenvalues.size() == 16);  // 4^n per entry
            CHECK(a.points[i].eigenvalues == b.points[i].eigenvalues);
        }
    }

    SUBCASE("unmeasured sweep point has mean modulus 1 to solver precision") {
        const SpectrumSweepResult r = sweep_measurements(base, {{}});
        REQUIRE(r.points.size() == 1);
        CHECK(r.points[0].mean_nontrivial_modulus == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("more measurements mean smaller moduli") {
        const SpectrumSweepResult r = sweep_measurements(base, {{}, {0}, {0, 1}});
        REQUIRE(r.points.size() == 3);
        CHECK(r.points[0].mean_nontrivial_modulus >= r.points[1].mean_nontrivial_modulus);
        CHECK(r.points[1].mean_nontrivial_modulus >= r.points[2].mean_nontrivial_modulus);
    }

    CHECK_THROWS_AS(sweep_prefactor(base, {}), std::invalid_argument);
    CHECK_THROWS_AS(sweep_measurements(base, {}), std::invalid_argument);
}

TEST_CASE("first_qubits") {
    CHECK(first_qubits(0).empty());
    CHECK(first_qubits(3) == std::vector<int>{0, 1, 2});
}
