#include "oscillnet/jordan.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>
#include <stdexcept>

#include "oscillnet/rk4.hpp"

namespace oscillnet::jordan {

namespace {

using Complex = std::complex<double>;

Eigen::MatrixXcd kron(const Eigen::MatrixXd& A, const Eigen::Matrix2cd& B) {
    const int m = static_cast<int>(A.rows());
    Eigen::MatrixXcd out(2 * m, 2 * m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            out.block<2, 2>(2 * i, 2 * j) = A(i, j) * B;
        }
    }
    return out;
}

double max_abs(const Eigen::MatrixXcd& M) {
    return M.size() == 0 ? 0.0 : M.cwiseAbs().maxCoeff();
}

}  // namespace

const char* variant_name(Variant v) {
    return v == Variant::Direct ? "direct" : "unitary";
}

Variant parse_variant(const std::string& name) {
    if (name == "direct") return Variant::Direct;
    if (name == "unitary") return Variant::Unitary;
    throw std::invalid_argument("unknown variant '" + name +
                                "' (expected direct or unitary)");
}

void validate(const JordanBlockModel& model) {
    if (model.m < 1) {
        throw std::invalid_argument("model: block size m must be >= 1");
    }
    if (!std::isfinite(model.omega) || !std::isfinite(model.d)) {
        throw std::invalid_argument("model: omega and d must be finite");
    }
}

Eigen::Matrix2cd pauli(int index) {
    Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();
    switch (index) {
        case 1:
            s(0, 1) = 1.0;
            s(1, 0) = 1.0;
            break;
        case 2:
            s(0, 1) = Complex(0.0, -1.0);
            s(1, 0) = Complex(0.0, 1.0);
            break;
        case 3:
            s(0, 0) = 1.0;
            s(1, 1) = -1.0;
            break;
        default:
            throw std::invalid_argument("pauli: index must be 1, 2 or 3");
    }
    return s;
}

OperatorTriple build_triple(const JordanBlockModel& model) {
    validate(model);
    const int m = model.m;
    OperatorTriple t;
    t.omega0 = model.omega * Eigen::MatrixXd::Identity(m, m);
    t.diag_part = model.d * Eigen::MatrixXd::Identity(m, m);
    t.nilpotent_part = Eigen::MatrixXd::Zero(m, m);
    for (int k = 0; k + 1 < m; ++k) {
        t.nilpotent_part(k, k + 1) = 1.0;
    }
    return t;
}

HatTriple pauli_extend(const OperatorTriple& triple) {
    HatTriple hat;
    hat.omega0 = kron(triple.omega0, pauli(3));
    hat.diag_part = kron(triple.diag_part, pauli(1));
    hat.nilpotent_part = kron(triple.nilpotent_part, pauli(2));
    return hat;
}

double AlgebraReport::max_deviation() const {
    return std::max({anticommutator_dev_0d, anticommutator_dev_0a,
                     anticommutator_dev_da, square_identity_dev});
}

AlgebraReport verify_square_identity(const HatTriple& hat) {
    const Eigen::MatrixXcd& a = hat.omega0;
    const Eigen::MatrixXcd& b = hat.diag_part;
    const Eigen::MatrixXcd& c = hat.nilpotent_part;
    AlgebraReport report;
    report.anticommutator_dev_0d = max_abs(a * b + b * a);
    report.anticommutator_dev_0a = max_abs(a * c + c * a);
    report.anticommutator_dev_da = max_abs(b * c + c * b);
    const Eigen::MatrixXcd sum = a + b + c;
    report.square_identity_dev = max_abs(sum * sum - (a * a + b * b + c * c));
    return report;
}

ExtendedOperator build_direct_operator(const JordanBlockModel& model) {
    const HatTriple hat = pauli_extend(build_triple(model));
    ExtendedOperator op;
    op.entries = hat.omega0 + hat.diag_part + hat.nilpotent_part;
    op.time_dependent = false;
    op.model = model;
    op.variant = Variant::Direct;
    return op;
}

ExtendedOperator build_unitary_operator(const JordanBlockModel& model, double t) {
    validate(model);
    if (model.omega == 0.0) {
        // The phase factors are identically 1; reuse the constant matrix
        // so the two variants coincide bit for bit.
        ExtendedOperator op = build_direct_operator(model);
        op.variant = Variant::Unitary;
        return op;
    }
    const HatTriple hat = pauli_extend(build_triple(model));
    const Eigen::MatrixXcd coupling = hat.diag_part + hat.nilpotent_part;
    const Complex f = std::polar(1.0, -2.0 * model.omega * t);
    ExtendedOperator op;
    op.entries = hat.omega0;
    const int n = static_cast<int>(coupling.rows());
    for (int r = 0; r < n; ++r) {
        const Complex phase = (r % 2 == 0) ? f : std::conj(f);
        for (int c = 0; c < n; ++c) {
            op.entries(r, c) += phase * coupling(r, c);
        }
    }
    op.time_dependent = true;
    op.model = model;
    op.variant = Variant::Unitary;
    return op;
}

RotationInvarianceReport verify_rotation_invariance(const JordanBlockModel& model,
                                                    const Eigen::VectorXcd& psi0,
                                                    double T) {
    validate(model);
    if (psi0.size() != model.m) {
        throw std::invalid_argument("verify_rotation_invariance: psi0 must have m entries");
    }
    if (!(T > 0.0)) {
        throw std::invalid_argument("verify_rotation_invariance: T must be positive");
    }
    const OperatorTriple triple = build_triple(model);
    const Eigen::MatrixXcd block =
        (triple.omega0 + triple.diag_part + triple.nilpotent_part).cast<Complex>();
    const Complex z = std::polar(1.0, -model.omega * T);

    RotationInvarianceReport report;
    report.commutator_dev = max_abs(z * block - block * z);
    report.conjugation_dev = max_abs((z * block) * std::conj(z) - block);
    report.identity_at_zero = std::polar(1.0, -model.omega * 0.0) == Complex(1.0, 0.0);
    report.inverse_dev = std::abs(z * std::conj(z) - 1.0);

    // A solution psi of +i dpsi/dt = B psi maps under exp(-i w t) to a
    // solution of the (B + w I)-shifted equation; integrate both sides.
    const double dt = 1e-3;
    const Eigen::MatrixXcd shifted =
        block + model.omega * Eigen::MatrixXcd::Identity(model.m, model.m);
    auto rhs_of = [](const Eigen::MatrixXcd& M) {
        return [&M](const Eigen::VectorXcd& y, double) {
            return Eigen::VectorXcd(Complex(0.0, -1.0) * (M * y));
        };
    };
    Eigen::VectorXcd psi = psi0;
    Eigen::VectorXcd phi = psi0;
    const long steps = rk4_step_count(dt, T);
    auto f_block = rhs_of(block);
    auto f_shifted = rhs_of(shifted);
    for (long k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        psi = rk4_step(psi, t, dt, f_block);
        phi = rk4_step(phi, t, dt, f_shifted);
    }
    const double t_end = static_cast<double>(steps) * dt;
    report.transformed_solution_dev =
        (std::polar(1.0, -model.omega * t_end) * psi - phi).cwiseAbs().maxCoeff();
    return report;
}

SquarePermutationReport verify_square_permutation_identity(
    const std::vector<double>& omegas) {
    std::set<double> seen;
    for (double w : omegas) {
        if (w == 0.0 || !std::isfinite(w)) {
            throw std::invalid_argument(
                "verify_square_permutation_identity: frequencies must be nonzero");
        }
        if (!seen.insert(w).second) {
            throw std::invalid_argument(
                "verify_square_permutation_identity: frequencies must be distinct");
        }
    }
    const int n = 3 + static_cast<int>(omegas.size());
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    M(0, 1) = 1.0;
    M(1, 2) = 1.0;
    for (size_t i = 0; i < omegas.size(); ++i) {
        M(3 + static_cast<int>(i), 3 + static_cast<int>(i)) = omegas[i];
    }

    SquarePermutationReport report;
    report.squared = M * M;

    // The square shifts the 3-chain's superdiagonal up: a single 1 at
    // (0, 2), zeros elsewhere in the chain block, squared frequencies on
    // the diagonal tail.
    Eigen::MatrixXd expected_square = Eigen::MatrixXd::Zero(n, n);
    expected_square(0, 2) = 1.0;
    for (size_t i = 0; i < omegas.size(); ++i) {
        const int k = 3 + static_cast<int>(i);
        expected_square(k, k) = omegas[i] * omegas[i];
    }
    report.square_dev = (report.squared - expected_square).cwiseAbs().maxCoeff();

    // Swapping the second and third basis vectors moves the 1 at (0, 2)
    // to (0, 1): a 2-chain at 0, an isolated 0, then the diagonal tail.
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::swap(order[1], order[2]);
    report.permuted.resize(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            report.permuted(r, c) = report.squared(order[r], order[c]);
        }
    }
    Eigen::MatrixXd expected_jordan = Eigen::MatrixXd::Zero(n, n);
    expected_jordan(0, 1) = 1.0;
    for (size_t i = 0; i < omegas.size(); ++i) {
        const int k = 3 + static_cast<int>(i);
        expected_jordan(k, k) = omegas[i] * omegas[i];
    }
    report.permuted_dev = (report.permuted - expected_jordan).cwiseAbs().maxCoeff();
    return report;
}

}  // namespace oscillnet::jordan
