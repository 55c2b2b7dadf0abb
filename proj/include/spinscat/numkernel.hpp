#pragma once

// Dense complex matrix kernel. Everything here is a thin, contract-checked
// layer over Eigen so the rest of the library can speak in terms of
// residual bounds instead of solver internals.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinscat {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Matrix4c = Eigen::Matrix4cd;
using Matrix2c = Eigen::Matrix2cd;
using Spinor = Eigen::Vector4cd;

inline constexpr cplx I_unit{0.0, 1.0};

class dimension_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class singular_matrix_error : public std::runtime_error {
public:
    singular_matrix_error(const std::string& what, double condition)
        : std::runtime_error(what), condition_(condition) {}
    double condition() const noexcept { return condition_; }

private:
    double condition_;
};

class convergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Max-row-sum norm. All kernel tolerances are relative to this.
template <class Derived>
double norm_inf(const Eigen::MatrixBase<Derived>& a) {
    if (a.size() == 0) return 0.0;
    return a.cwiseAbs().rowwise().sum().maxCoeff();
}

/// Largest entrywise modulus.
template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& a) {
    if (a.size() == 0) return 0.0;
    return a.cwiseAbs().maxCoeff();
}

template <class A, class B>
auto matmul(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
    using Result = Eigen::Matrix<cplx, A::RowsAtCompileTime, B::ColsAtCompileTime>;
    if (a.cols() != b.rows())
        throw dimension_error("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                              " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    return Result(a * b);
}

template <class A>
auto dagger(const Eigen::MatrixBase<A>& a) {
    using Result = Eigen::Matrix<cplx, A::ColsAtCompileTime, A::RowsAtCompileTime>;
    return Result(a.adjoint());
}

namespace detail {
template <class A, class B>
void require_same_square(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b, const char* who) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw dimension_error(std::string(who) + ": operands must be square and of equal size");
}
}  // namespace detail

template <class A, class B>
auto anticommutator(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
    detail::require_same_square(a, b, "anticommutator");
    using Result = Eigen::Matrix<cplx, A::RowsAtCompileTime, A::ColsAtCompileTime>;
    return Result(a * b + b * a);
}

template <class A, class B>
auto commutator(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
    detail::require_same_square(a, b, "commutator");
    using Result = Eigen::Matrix<cplx, A::RowsAtCompileTime, A::ColsAtCompileTime>;
    return Result(a * b - b * a);
}

inline constexpr double kSingularCondition = 1e12;

/// Solves a*x = rhs with partial-pivot LU. Throws singular_matrix_error when
/// the reciprocal condition estimate puts cond(a) above 1e12.
template <class A, class B>
ComplexVector solve_linear(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& rhs) {
    if (a.rows() != a.cols()) throw dimension_error("solve_linear: matrix is not square");
    if (rhs.rows() != a.rows() || rhs.cols() != 1) throw dimension_error("solve_linear: rhs size mismatch");
    const ComplexMatrix m = a;
    if (!m.allFinite()) throw singular_matrix_error("solve_linear: non-finite matrix", INFINITY);
    Eigen::PartialPivLU<ComplexMatrix> lu(m);
    const double rc = lu.rcond();
    const bool zero_pivot = (lu.matrixLU().diagonal().array() == cplx(0.0)).any();
    const double cond = rc > 0.0 && !zero_pivot ? 1.0 / rc : INFINITY;
    if (!(cond < kSingularCondition))
        throw singular_matrix_error("solve_linear: matrix is singular (condition estimate " +
                                        std::to_string(cond) + ")",
                                    cond);
    ComplexVector x = lu.solve(ComplexVector(rhs));
    if (!x.allFinite()) throw singular_matrix_error("solve_linear: non-finite solution", cond);
    return x;
}

struct EigenPair {
    cplx value;
    ComplexVector vector;  // unit Euclidean norm
};

/// A cluster of eigenvalues equal within the degeneracy tolerance.
struct EigenCluster {
    cplx value;  // cluster mean
    std::size_t multiplicity;
};

inline constexpr double kDegeneracyTol = 1e-8;
inline constexpr std::size_t kMaxEigenDim = 8;

/// Complete eigenpair set of a square matrix of dimension <= 8, ordered by
/// (real part, imaginary part). Every pair satisfies
/// |A v - lambda v| <= 1e-10 |A|.
template <class A>
std::vector<EigenPair> eigen(const Eigen::MatrixBase<A>& a) {
    if (a.rows() != a.cols()) throw dimension_error("eigen: matrix is not square");
    if (static_cast<std::size_t>(a.rows()) > kMaxEigenDim) throw dimension_error("eigen: dimension above 8");
    const ComplexMatrix m = a;
    Eigen::ComplexEigenSolver<ComplexMatrix> es(m, true);
    if (es.info() != Eigen::Success) throw convergence_error("eigen: QR iteration did not converge");

    std::vector<EigenPair> out;
    out.reserve(m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        ComplexVector v = es.eigenvectors().col(i);
        const double nv = v.norm();
        if (nv > 0) v /= nv;
        out.push_back({es.eigenvalues()(i), std::move(v)});
    }
    std::sort(out.begin(), out.end(), [](const EigenPair& x, const EigenPair& y) {
        if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
        return x.value.imag() < y.value.imag();
    });
    return out;
}

/// Groups eigenvalues whose distance is within 1e-8 |A| (single linkage).
inline std::vector<EigenCluster> group_eigenvalues(const std::vector<EigenPair>& pairs, double matrix_norm) {
    std::vector<EigenCluster> clusters;
    std::vector<std::vector<cplx>> members;
    const double tol = kDegeneracyTol * std::max(matrix_norm, 1e-300);
    for (const auto& p : pairs) {
        bool placed = false;
        for (std::size_t c = 0; c < members.size() && !placed; ++c) {
            for (const auto& v : members[c]) {
                if (std::abs(v - p.value) <= tol) {
                    members[c].push_back(p.value);
                    placed = true;
                    break;
                }
            }
        }
        if (!placed) members.push_back({p.value});
    }
    for (const auto& m : members) {
        cplx sum = 0;
        for (const auto& v : m) sum += v;
        clusters.push_back({sum / static_cast<double>(m.size()), m.size()});
    }
    return clusters;
}

/// Singular values in descending order.
template <class A>
Eigen::VectorXd singular_values(const Eigen::MatrixBase<A>& a) {
    const ComplexMatrix m = a;
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues();
}

/// Orthonormal basis (as columns) of {x : |a x| <= tol |a|}. Empty (zero
/// columns) when the kernel is trivial. A zero matrix returns the identity.
template <class A>
ComplexMatrix nullspace(const Eigen::MatrixBase<A>& a, double tol) {
    if (!(tol > 0)) throw std::invalid_argument("nullspace: tol must be positive");
    const ComplexMatrix m = a;
    const Eigen::Index n = m.cols();
    const double scale = norm_inf(m);
    if (scale == 0.0) return ComplexMatrix::Identity(n, n);

    // Thin SVD of a wide matrix lacks the trailing right vectors; pad rows.
    ComplexMatrix padded = m;
    if (m.rows() < n) {
        padded = ComplexMatrix::Zero(n, n);
        padded.topRows(m.rows()) = m;
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(padded, Eigen::ComputeFullV);
    const Eigen::VectorXd& s = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > tol * scale) ++rank;
    return svd.matrixV().rightCols(n - rank);
}

/// Kronecker product a (x) b.
template <class A, class B>
ComplexMatrix kron(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

/// Stacks the linear system S*A_i - B_i*S = 0 on the column-major
/// vectorization of S: (A_i^T (x) I - I (x) B_i) vec(S) = 0.
inline ComplexMatrix intertwiner_system(const std::vector<std::pair<ComplexMatrix, ComplexMatrix>>& pairs) {
    if (pairs.empty()) throw std::invalid_argument("intertwiner_system: no constraint pairs");
    const Eigen::Index n = pairs.front().first.rows();
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    ComplexMatrix sys(static_cast<Eigen::Index>(pairs.size()) * n * n, n * n);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto& [a, b] = pairs[k];
        if (a.rows() != n || a.cols() != n || b.rows() != n || b.cols() != n)
            throw dimension_error("intertwiner_system: all matrices must share one square size");
        sys.middleRows(static_cast<Eigen::Index>(k) * n * n, n * n) =
            kron(ComplexMatrix(a.transpose()), id) - kron(id, b);
    }
    return sys;
}

/// Reshapes a column-major vec(S) back into an n x n matrix.
inline ComplexMatrix unvec(const ComplexVector& v, Eigen::Index n) {
    return Eigen::Map<const ComplexMatrix>(v.data(), n, n);
}

}  // namespace spinscat
