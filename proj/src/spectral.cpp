#include "oscillnet/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "oscillnet/errors.hpp"

namespace oscillnet::spectral {

namespace {

// Sorts eigenpairs by (Re, Im) so downstream output is deterministic.
void sort_pairs(Eigen::VectorXcd& values, Eigen::MatrixXcd& vectors) {
    const int n = static_cast<int>(values.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (values[a].real() != values[b].real()) {
            return values[a].real() < values[b].real();
        }
        return values[a].imag() < values[b].imag();
    });
    Eigen::VectorXcd sv(n);
    Eigen::MatrixXcd svec(vectors.rows(), n);
    for (int k = 0; k < n; ++k) {
        sv[k] = values[order[k]];
        svec.col(k) = vectors.col(order[k]);
    }
    values = sv;
    vectors = svec;
}

// Transitive closure of the relation |a - b| < tol via union-find.
std::vector<EigenvalueCluster> cluster_eigenvalues(const Eigen::VectorXcd& values,
                                                   double tol) {
    const int n = static_cast<int>(values.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (std::abs(values[i] - values[j]) < tol) {
                parent[find(j)] = find(i);
            }
        }
    }
    std::vector<EigenvalueCluster> clusters;
    std::vector<int> root_to_cluster(n, -1);
    for (int i = 0; i < n; ++i) {  // values are sorted, so clusters are too
        const int r = find(i);
        if (root_to_cluster[r] < 0) {
            root_to_cluster[r] = static_cast<int>(clusters.size());
            clusters.push_back({0.0, 0});
        }
        auto& c = clusters[root_to_cluster[r]];
        c.value += values[i];
        c.multiplicity += 1;
    }
    for (auto& c : clusters) {
        c.value /= static_cast<double>(c.multiplicity);
    }
    return clusters;
}

bool full_rank(const Eigen::MatrixXcd& V) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(V);
    const auto& s = svd.singularValues();
    if (s.size() == 0) return true;
    // Relative rank threshold in the spirit of standard numeric rank.
    const double cutoff = s[0] * V.rows() * 1e-14;
    return s[s.size() - 1] > cutoff;
}

}  // namespace

int Spectrum::zero_multiplicity() const {
    for (const auto& c : clusters) {
        if (std::abs(c.value) < tol) return c.multiplicity;
    }
    // The zero cluster can sit slightly outside tol when rounding spreads
    // its members; count near-zero eigenvalues directly as a fallback.
    int count = 0;
    for (int i = 0; i < eigenvalues.size(); ++i) {
        if (std::abs(eigenvalues[i]) < tol) ++count;
    }
    return count;
}

Spectrum eigendecompose(const Eigen::MatrixXd& L, double tol) {
    if (L.rows() != L.cols() || L.rows() < 1) {
        throw std::invalid_argument("eigendecompose: matrix must be square, n >= 1");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("eigendecompose: tolerance must be positive");
    }
    Spectrum s;
    s.tol = tol;
    if (L == L.transpose()) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(L);
        if (solver.info() != Eigen::Success) {
            throw NumericalError("eigendecompose: self-adjoint solver did not converge");
        }
        s.eigenvalues = solver.eigenvalues().cast<std::complex<double>>();
        s.eigenvectors = solver.eigenvectors().cast<std::complex<double>>();
    } else {
        Eigen::EigenSolver<Eigen::MatrixXd> solver(L);
        if (solver.info() != Eigen::Success) {
            throw NumericalError("eigendecompose: eigensolver did not converge");
        }
        s.eigenvalues = solver.eigenvalues();
        s.eigenvectors = solver.eigenvectors();
    }
    sort_pairs(s.eigenvalues, s.eigenvectors);
    s.clusters = cluster_eigenvalues(s.eigenvalues, tol);
    s.is_real = true;
    for (int i = 0; i < s.eigenvalues.size(); ++i) {
        if (std::abs(s.eigenvalues[i].imag()) >= tol) s.is_real = false;
    }
    s.is_diagonalizable = full_rank(s.eigenvectors);
    return s;
}

GerschgorinReport gerschgorin_nonnegative_real_part(const Eigen::MatrixXd& L) {
    GerschgorinReport report;
    report.all_nonnegative_real_part = true;
    for (int i = 0; i < L.rows(); ++i) {
        GerschgorinDisc disc;
        disc.center = L(i, i);
        for (int j = 0; j < L.cols(); ++j) {
            if (j != i) disc.radius += std::abs(L(i, j));
        }
        if (disc.center - disc.radius < 0.0) {
            report.all_nonnegative_real_part = false;
        }
        report.discs.push_back(disc);
    }
    return report;
}

SqrtOperator sqrt_psd(const Eigen::MatrixXd& L, double tol) {
    const Spectrum s = eigendecompose(L, tol);
    if (!s.is_real) {
        throw std::invalid_argument("sqrt_psd: spectrum is not real within tolerance");
    }
    if (!s.is_diagonalizable) {
        throw std::invalid_argument(
            "sqrt_psd: matrix is numerically non-diagonalizable; "
            "use the analytic degenerate-block operators instead");
    }
    Eigen::VectorXcd roots(s.eigenvalues.size());
    for (int i = 0; i < s.eigenvalues.size(); ++i) {
        const double lambda = s.eigenvalues[i].real();
        if (lambda < -tol) {
            throw std::invalid_argument("sqrt_psd: negative eigenvalue beyond tolerance");
        }
        roots[i] = std::sqrt(std::max(lambda, 0.0));
    }
    SqrtOperator h;
    h.entries = s.eigenvectors * roots.asDiagonal() *
                s.eigenvectors.fullPivLu().solve(
                    Eigen::MatrixXcd::Identity(L.rows(), L.cols()));
    h.reconstruction_error =
        (h.entries * h.entries - L.cast<std::complex<double>>()).cwiseAbs().maxCoeff();
    return h;
}

}  // namespace oscillnet::spectral
