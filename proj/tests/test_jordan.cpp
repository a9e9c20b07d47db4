#include "doctest.h"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include "oscillnet/jordan.hpp"
#include "test_support.hpp"

using namespace oscillnet::jordan;
using Complex = std::complex<double>;

namespace {

double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("variant names round trip") {
    CHECK(std::string(variant_name(Variant::Direct)) == "direct");
    CHECK(std::string(variant_name(Variant::Unitary)) == "unitary");
    CHECK(parse_variant("direct") == Variant::Direct);
    CHECK(parse_variant("unitary") == Variant::Unitary);
    CHECK_THROWS_AS(parse_variant("fourier"), std::invalid_argument);
}

TEST_CASE("model validation") {
    CHECK_THROWS_AS(validate(JordanBlockModel{0.0, 0.0, 0}), std::invalid_argument);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(validate(JordanBlockModel{inf, 0.0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(validate(JordanBlockModel{0.0, std::nan(""), 1}),
                    std::invalid_argument);
    CHECK_NOTHROW(validate(JordanBlockModel{0.0, 0.0, 1}));
}

TEST_CASE("the three 2x2 generators have their textbook entries") {
    const auto s1 = pauli(1);
    CHECK(s1(0, 0) == Complex(0.0, 0.0));
    CHECK(s1(0, 1) == Complex(1.0, 0.0));
    CHECK(s1(1, 0) == Complex(1.0, 0.0));
    CHECK(s1(1, 1) == Complex(0.0, 0.0));
    const auto s2 = pauli(2);
    CHECK(s2(0, 1) == Complex(0.0, -1.0));
    CHECK(s2(1, 0) == Complex(0.0, 1.0));
    const auto s3 = pauli(3);
    CHECK(s3(0, 0) == Complex(1.0, 0.0));
    CHECK(s3(1, 1) == Complex(-1.0, 0.0));
    CHECK_THROWS_AS(pauli(0), std::invalid_argument);
    CHECK_THROWS_AS(pauli(4), std::invalid_argument);
}

TEST_CASE("operator triple splits the block") {
    const auto t = build_triple({1.0, 1.0, 3});
    Eigen::MatrixXd sum = t.omega0 + t.diag_part + t.nilpotent_part;
    Eigen::MatrixXd expected(3, 3);
    expected << 2.0, 1.0, 0.0,
                0.0, 2.0, 1.0,
                0.0, 0.0, 2.0;
    CHECK(sum == expected);
    const Eigen::MatrixXd n3 =
        t.nilpotent_part * t.nilpotent_part * t.nilpotent_part;
    CHECK(n3.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("doubling interleaves the two states of each mode") {
    const auto hat = pauli_extend(build_triple({3.0, 2.0, 2}));
    // omega part: diag(+3, -3) per mode.
    CHECK(hat.omega0(0, 0) == Complex(3.0, 0.0));
    CHECK(hat.omega0(1, 1) == Complex(-3.0, 0.0));
    CHECK(hat.omega0(2, 2) == Complex(3.0, 0.0));
    CHECK(hat.omega0(3, 3) == Complex(-3.0, 0.0));
    CHECK(hat.omega0.cwiseAbs().sum() == 12.0);
    // diagonal coupling: d on the swap positions of each mode.
    CHECK(hat.diag_part(0, 1) == Complex(2.0, 0.0));
    CHECK(hat.diag_part(1, 0) == Complex(2.0, 0.0));
    CHECK(hat.diag_part(2, 3) == Complex(2.0, 0.0));
    CHECK(hat.diag_part(3, 2) == Complex(2.0, 0.0));
    CHECK(hat.diag_part.cwiseAbs().sum() == 8.0);
    // nilpotent coupling: the mode-1 -> mode-2 block carries the
    // antisymmetric generator.
    CHECK(hat.nilpotent_part(0, 3) == Complex(0.0, -1.0));
    CHECK(hat.nilpotent_part(1, 2) == Complex(0.0, 1.0));
    CHECK(hat.nilpotent_part.cwiseAbs().sum() == 2.0);
}

TEST_CASE("anticommutators and the square identity vanish exactly on integers") {
    for (const auto& model :
         {JordanBlockModel{2.0, -1.0, 3}, JordanBlockModel{5.0, 2.0, 4},
          JordanBlockModel{0.0, 1.0, 1}, JordanBlockModel{-2.0, -2.0, 5}}) {
        const auto report = verify_square_identity(pauli_extend(build_triple(model)));
        CHECK(report.max_deviation() == 0.0);
    }
}

TEST_CASE("constant operator matches the frozen 6x6 at omega=0, d=1, m=3") {
    const auto op = build_direct_operator({0.0, 1.0, 3});
    REQUIRE(op.entries.rows() == 6);
    CHECK_FALSE(op.time_dependent);
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(6, 6);
    const Complex i(0.0, 1.0);
    expected(0, 1) = 1.0; expected(0, 3) = -i;
    expected(1, 0) = 1.0; expected(1, 2) = i;
    expected(2, 3) = 1.0; expected(2, 5) = -i;
    expected(3, 2) = 1.0; expected(3, 4) = i;
    expected(4, 5) = 1.0;
    expected(5, 4) = 1.0;
    CHECK(max_abs_diff(op.entries, expected) == 0.0);
}

TEST_CASE("rotating-frame operator reduces to the constant one when expected") {
    const JordanBlockModel model{1.3, 0.7, 2};
    const auto direct = build_direct_operator(model);
    const auto at_zero = build_unitary_operator(model, 0.0);
    CHECK(max_abs_diff(at_zero.entries, direct.entries) == 0.0);
    CHECK(at_zero.time_dependent);

    const JordanBlockModel still{0.0, 0.7, 2};
    const auto frozen = build_unitary_operator(still, 17.3);
    CHECK(max_abs_diff(frozen.entries, build_direct_operator(still).entries) == 0.0);
    CHECK_FALSE(frozen.time_dependent);
    CHECK(frozen.variant == Variant::Unitary);
}

TEST_CASE("rotating-frame phases carry the pinned sign convention") {
    // At omega=1, t=pi/2 the even-row factor is exp(-i pi) = -1.
    const auto op = build_unitary_operator({1.0, 0.7, 2}, std::acos(-1.0) / 2.0);
    CHECK(std::abs(op.entries(0, 1) - Complex(-0.7, 0.0)) < 1e-15);
    // Odd rows carry the conjugate factor exp(+i pi) = -1 as well; rows
    // differing by conjugation show up at a quarter period instead.
    const auto quarter = build_unitary_operator({1.0, 0.7, 2}, std::acos(-1.0) / 4.0);
    CHECK(std::abs(quarter.entries(0, 1) - Complex(0.0, -0.7)) < 1e-15);
    CHECK(std::abs(quarter.entries(1, 0) - Complex(0.0, 0.7)) < 1e-15);
}

TEST_CASE("constant operator is hermitian exactly when the block is simple") {
    const auto simple = build_direct_operator({2.0, 1.0, 1});
    CHECK(max_abs_diff(simple.entries, simple.entries.adjoint()) == 0.0);
    const auto chained = build_direct_operator({2.0, 1.0, 3});
    CHECK(max_abs_diff(chained.entries, chained.entries.adjoint()) > 0.5);
}

TEST_CASE("identity-proportional rotation leaves the block dynamics invariant") {
    const Eigen::VectorXcd psi0 = Eigen::VectorXcd::Ones(3);
    const auto report = verify_rotation_invariance({2.0, 1.0, 3}, psi0, 1.0);
    CHECK(report.commutator_dev == 0.0);
    CHECK(report.identity_at_zero);
    CHECK(report.inverse_dev < 1e-14);
    CHECK(report.conjugation_dev < 1e-14);
    CHECK(report.transformed_solution_dev < 1e-8);

    CHECK_THROWS_AS(verify_rotation_invariance({2.0, 1.0, 3}, psi0, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        verify_rotation_invariance({2.0, 1.0, 2}, psi0, 1.0),
        std::invalid_argument);
}

TEST_CASE("squaring the appended chain and permuting yields the 2-chain form") {
    const auto report = verify_square_permutation_identity({2.0, 3.0});
    CHECK(report.square_dev == 0.0);
    CHECK(report.permuted_dev == 0.0);
    REQUIRE(report.squared.rows() == 5);
    CHECK(report.squared(0, 2) == 1.0);
    CHECK(report.squared(3, 3) == 4.0);
    CHECK(report.squared(4, 4) == 9.0);
    CHECK(report.permuted(0, 1) == 1.0);
    CHECK(report.permuted(0, 2) == 0.0);
    CHECK(report.permuted(3, 3) == 4.0);
    CHECK(report.permuted(4, 4) == 9.0);

    CHECK_THROWS_AS(verify_square_permutation_identity({0.0}), std::invalid_argument);
    CHECK_THROWS_AS(verify_square_permutation_identity({2.0, 2.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(verify_square_permutation_identity({std::nan("")}),
                    std::invalid_argument);
}

TEST_CASE("characteristic polynomial of the constant operator factors by modes") {
    // omega=0, d=2, m=3: each mode contributes eigenvalues +-2, so the
    // polynomial is (x^2 - 4)^3 = x^6 - 12 x^4 + 48 x^2 - 64.
    const auto op = build_direct_operator({0.0, 2.0, 3});
    const auto coeffs = test_support::char_poly(op.entries);
    REQUIRE(coeffs.size() == 7);
    const double expected[] = {1.0, 0.0, -12.0, 0.0, 48.0, 0.0, -64.0};
    for (int k = 0; k < 7; ++k) {
        CHECK(std::abs(coeffs[static_cast<size_t>(k)] - expected[k]) < 1e-8);
    }
}
