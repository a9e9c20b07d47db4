#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace oscillnet::jordan {

// Which 2m-dimensional operator drives the dynamics: the constant matrix
// (direct) or its rotating-frame counterpart with phase factors
// exp(-+ i 2 w t) on the off-diagonal couplings (unitary). The two
// coincide for all t when omega = 0.
enum class Variant { Direct, Unitary };

const char* variant_name(Variant v);
Variant parse_variant(const std::string& name);  // throws std::invalid_argument

// Analytic model of one degenerate oscillation-mode block: base
// frequency omega, diagonal perturbation d (omega + d is the block's
// eigenfrequency), block size m.
struct JordanBlockModel {
    double omega = 0.0;
    double d = 0.0;
    int m = 1;
};

// Throws std::invalid_argument unless m >= 1 and the fields are finite.
void validate(const JordanBlockModel& model);

// Split of the m x m block: omega0 = omega*I, diag_part = d*I,
// nilpotent_part = superdiagonal ones. Their sum has omega + d on the
// diagonal and ones above it; nilpotent_part^m = 0 exactly.
struct OperatorTriple {
    Eigen::MatrixXd omega0;
    Eigen::MatrixXd diag_part;
    Eigen::MatrixXd nilpotent_part;
};

// The doubled 2m x 2m operators built by Kronecker products with the
// Pauli matrices (block factor first, Pauli factor second, so the basis
// interleaves the two states of each mode).
struct HatTriple {
    Eigen::MatrixXcd omega0;         // omega0 (x) sigma3
    Eigen::MatrixXcd diag_part;      // diag_part (x) sigma1
    Eigen::MatrixXcd nilpotent_part; // nilpotent_part (x) sigma2
};

struct ExtendedOperator {
    Eigen::MatrixXcd entries;  // 2m x 2m
    bool time_dependent = false;
    JordanBlockModel model;
    Variant variant = Variant::Direct;
};

// Deviations of the algebraic identities on a HatTriple. All checks are
// exact (deviation 0.0) when omega and d are integers, because every
// intermediate value is a small Gaussian integer.
struct AlgebraReport {
    double anticommutator_dev_0d = 0.0;  // omega0 vs diag_part
    double anticommutator_dev_0a = 0.0;  // omega0 vs nilpotent_part
    double anticommutator_dev_da = 0.0;  // diag_part vs nilpotent_part
    double square_identity_dev = 0.0;    // sum^2 vs sum of squares
    double max_deviation() const;
};

// Checks on the identity-proportional rotation Psi0(t) = exp(-i w t) I
// of the m x m block: it commutes with the block, conjugation leaves the
// block unchanged, Psi0(0) = I, Psi0(t) Psi0(-t) = I, and a solution of
// the block equation maps to a solution of the frequency-shifted
// equation under it.
struct RotationInvarianceReport {
    double commutator_dev = 0.0;        // exactly 0
    double conjugation_dev = 0.0;       // rounding of |exp(i w t)|^2 only
    bool identity_at_zero = false;      // Psi0(0) == I exactly
    double inverse_dev = 0.0;           // Psi0(t) Psi0(-t) vs I
    double transformed_solution_dev = 0.0;
};

// Result of squaring the block matrix [3x3 nilpotent at 0] + diag(w_i)
// and permuting rows/columns into Jordan form.
struct SquarePermutationReport {
    Eigen::MatrixXd squared;    // pre-permutation square
    Eigen::MatrixXd permuted;   // post-permutation square
    double square_dev = 0.0;    // vs expected single 1 above the diagonal + diag(w^2)
    double permuted_dev = 0.0;  // vs 2-chain at 0 (+) 0 (+) diag(w^2)
};

// The three standard 2x2 matrices; index in {1, 2, 3}.
Eigen::Matrix2cd pauli(int index);

OperatorTriple build_triple(const JordanBlockModel& model);
HatTriple pauli_extend(const OperatorTriple& triple);
AlgebraReport verify_square_identity(const HatTriple& hat);

// Constant operator: hat omega0 + hat diag + hat nilpotent.
ExtendedOperator build_direct_operator(const JordanBlockModel& model);

// Rotating-frame operator at time t: the diagonal keeps +-omega, the
// coupling entries in even rows (0-based) carry exp(-i 2 w t) and those
// in odd rows carry exp(+i 2 w t). Equals the direct operator at t = 0
// and for all t when omega = 0.
ExtendedOperator build_unitary_operator(const JordanBlockModel& model, double t);

RotationInvarianceReport verify_rotation_invariance(const JordanBlockModel& model,
                                                    const Eigen::VectorXcd& psi0,
                                                    double T);

SquarePermutationReport verify_square_permutation_identity(
    const std::vector<double>& omegas);

}  // namespace oscillnet::jordan
