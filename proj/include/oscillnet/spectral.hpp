#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace oscillnet::spectral {

// Group of numerically coincident eigenvalues.
struct EigenvalueCluster {
    std::complex<double> value;  // mean of the members
    int multiplicity = 0;
};

struct Spectrum {
    // Sorted by real part, then imaginary part. Column k of eigenvectors
    // pairs with eigenvalues[k].
    Eigen::VectorXcd eigenvalues;
    Eigen::MatrixXcd eigenvectors;
    std::vector<EigenvalueCluster> clusters;
    bool is_real = false;            // all |Im| below the tolerance
    bool is_diagonalizable = false;  // eigenvector matrix has full numeric rank
    double tol = 0.0;                // clustering tolerance used

    // Size of the cluster at 0, or 0 if none. Any Laplacian has at least
    // one: the constant vector is a null vector.
    int zero_multiplicity() const;
};

struct GerschgorinDisc {
    double center = 0.0;  // diagonal entry
    double radius = 0.0;  // sum of |off-diagonal| in the row
};

struct GerschgorinReport {
    std::vector<GerschgorinDisc> discs;
    bool all_nonnegative_real_part = false;  // every disc lies in Re >= 0
};

// Square root H of a positive semidefinite matrix, H*H = L.
struct SqrtOperator {
    Eigen::MatrixXcd entries;
    double reconstruction_error = 0.0;  // max-norm of H*H - L
};

// Dense eigendecomposition with eigenvalue clustering. Eigenvalues whose
// pairwise distance is below tol land in one cluster (transitive
// closure). Exactly symmetric input goes through the self-adjoint
// solver. Throws NumericalError if the solver fails to converge.
Spectrum eigendecompose(const Eigen::MatrixXd& L, double tol = 1e-8);

// Disc centered at L(i,i) with radius sum_{j!=i} |L(i,j)| per row, and
// whether all discs lie in the closed right half-plane. Rows of a
// Laplacian give center == radius, so the verdict is always true there.
GerschgorinReport gerschgorin_nonnegative_real_part(const Eigen::MatrixXd& L);

// H = P diag(sqrt(lambda)) P^-1 with the nonnegative branch of sqrt.
// Requires a real spectrum, diagonalizability, and eigenvalues >= -tol;
// throws std::invalid_argument otherwise. Eigenvalues in [-tol, 0) clamp
// to 0. The reconstruction error is measured and reported back.
SqrtOperator sqrt_psd(const Eigen::MatrixXd& L, double tol = 1e-8);

}  // namespace oscillnet::spectral
