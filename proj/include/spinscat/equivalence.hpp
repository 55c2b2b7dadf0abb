#pragma once

// Similarity transformations between representation sets.
//
// find_intertwiner() solves S A_i = B_i S jointly on the 16 entries of S.
// When both matrix sets are closed under the adjoint (A_i^dagger paired with
// B_i^dagger), any invertible solution of the enlarged system has a unitary
// polar factor that is itself an intertwiner; that is how unitary
// equivalence is decided, independently of which solution the nullspace
// happens to return.

#include "spinscat/numkernel.hpp"
#include "spinscat/representations.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace spinscat {

inline constexpr double kIntertwinerTol = 1e-9;
inline constexpr double kUnitaryTol = 1e-9;

class metric_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct EquivalenceReport {
    bool exists = false;
    Matrix4c intertwiner = Matrix4c::Zero();
    bool unitary = false;
    double unitarity_residual = std::numeric_limits<double>::quiet_NaN();
    /// Induced inner-product metric on the target side, g = U^dagger U with
    /// U = S^-1 the map back to the source frame.
    Matrix4c metric = Matrix4c::Zero();
    double intertwining_residual = std::numeric_limits<double>::quiet_NaN();
    /// max over probes of |H^dagger g - g H|; NaN until a representation is attached.
    double pseudo_hermiticity_residual = std::numeric_limits<double>::quiet_NaN();
    std::size_t solution_dimension = 0;
};

using MatrixPairs = std::vector<std::pair<ComplexMatrix, ComplexMatrix>>;

namespace detail {

inline double conditioning(const ComplexMatrix& s) {
    const Eigen::VectorXd sv = singular_values(s);
    if (sv(0) == 0.0) return 0.0;
    return sv(sv.size() - 1) / sv(0);
}

/// Best-conditioned element of span(basis columns, reshaped n x n): the
/// projected identity, every basis element, plus a fixed pseudo-random family of combinations.
inline ComplexMatrix best_conditioned(const ComplexMatrix& basis, Eigen::Index n) {
    const Eigen::Index k = basis.cols();
    // Start from the projection of the identity so a set related to itself maps by S = I.
    ComplexVector id = ComplexVector::Zero(n * n);
    for (Eigen::Index i = 0; i < n; ++i) id(i * n + i) = 1.0;
    ComplexMatrix best = unvec(basis * (basis.adjoint() * id), n);
    double best_q = conditioning(best);
    auto consider = [&](const ComplexVector& v) {
        ComplexMatrix s = unvec(v, n);
        const double q = conditioning(s);
        if (q > best_q * (1.0 + 1e-12)) {
            best_q = q;
            best = std::move(s);
        }
    };
    for (Eigen::Index j = 0; j < k; ++j) consider(basis.col(j));
    if (k > 1) {
        std::mt19937_64 rng(0x5eed1234u);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int trial = 0; trial < 512; ++trial) {
            ComplexVector c(k);
            for (Eigen::Index j = 0; j < k; ++j) c(j) = cplx(u(rng), u(rng));
            consider(basis * c);
        }
    }
    return best;
}

inline ComplexMatrix normalize_det(const ComplexMatrix& s) {
    const cplx det = s.determinant();
    const double mod = std::abs(det);
    if (mod == 0.0) return s;
    return s / std::pow(mod, 1.0 / static_cast<double>(s.rows()));
}

inline double max_intertwining_residual(const ComplexMatrix& s, const MatrixPairs& pairs) {
    double r = 0.0;
    for (const auto& [a, b] : pairs) r = std::max(r, max_abs(s * a - b * s));
    return r;
}

}  // namespace detail

/// Scale-invariant unitarity defect: |S^dagger S / c - I|_max with c the
/// mean diagonal of S^dagger S.
inline double unitarity_residual(const ComplexMatrix& s) {
    const ComplexMatrix sts = s.adjoint() * s;
    const double c = sts.trace().real() / static_cast<double>(s.rows());
    if (!(c > 0)) return std::numeric_limits<double>::infinity();
    return max_abs(sts / c - ComplexMatrix::Identity(s.rows(), s.cols()));
}

inline EquivalenceReport find_intertwiner(const MatrixPairs& pairs) {
    if (pairs.empty()) throw std::invalid_argument("find_intertwiner: need at least one pair");
    for (const auto& [a, b] : pairs)
        if (a.rows() != 4 || a.cols() != 4 || b.rows() != 4 || b.cols() != 4)
            throw dimension_error("find_intertwiner: all matrices must be 4x4");
    constexpr Eigen::Index n = 4;

    EquivalenceReport rep;
    const ComplexMatrix basis = nullspace(intertwiner_system(pairs), kIntertwinerTol);
    rep.solution_dimension = static_cast<std::size_t>(basis.cols());
    if (basis.cols() == 0) return rep;

    MatrixPairs closed = pairs;
    for (const auto& [a, b] : pairs) closed.emplace_back(a.adjoint(), b.adjoint());
    const ComplexMatrix closed_basis = nullspace(intertwiner_system(closed), kIntertwinerTol);

    ComplexMatrix s;
    bool unitary_found = false;
    if (closed_basis.cols() > 0) {
        const ComplexMatrix cand = detail::best_conditioned(closed_basis, n);
        if (detail::conditioning(cand) > 1e-8) {
            Eigen::JacobiSVD<ComplexMatrix> svd(cand, Eigen::ComputeFullU | Eigen::ComputeFullV);
            s = svd.matrixU() * svd.matrixV().adjoint();
            unitary_found = true;
        }
    }
    if (!unitary_found) {
        s = detail::best_conditioned(basis, n);
        if (detail::conditioning(s) <= 1e-8) return rep;
    }
    s = detail::normalize_det(s);

    rep.exists = true;
    rep.intertwiner = s;
    rep.intertwining_residual = detail::max_intertwining_residual(s, pairs);
    rep.unitarity_residual = unitarity_residual(s);
    rep.unitary = rep.unitarity_residual <= kUnitaryTol;
    const Matrix4c u = rep.intertwiner.inverse();
    rep.metric = u.adjoint() * u;
    return rep;
}

/// Energy generator recovered from p u = (x1 E + x2 m) u for a Clifford pair:
/// E u = (x1 p - x1 x2 m) u. Evaluated at the on-shell momentum of (E, m).
inline Matrix4c energy_hamiltonian(const RepresentationSet& rep, double momentum, double m) {
    if (rep.algebra != AlgebraClass::clifford_pair)
        throw std::invalid_argument("energy_hamiltonian: requires a clifford_pair representation");
    return rep.x1 * momentum - rep.x1 * rep.x2 * m;
}

/// |H^dagger g - g H|_max for the energy generator at the on-shell momentum
/// sqrt(E^2 - m^2). g must be Hermitian positive-definite.
inline double pseudo_hermiticity_check(const RepresentationSet& rep, const Matrix4c& g, double E, double m) {
    if (!(m >= 0.0)) throw std::domain_error("pseudo_hermiticity_check: m must be >= 0");
    if (!(E * E >= m * m)) throw std::domain_error("pseudo_hermiticity_check: requires E^2 >= m^2");
    const double gscale = std::max(norm_inf(g), 1e-300);
    if (max_abs(g - g.adjoint()) > 1e-10 * gscale) throw metric_error("metric is not Hermitian");
    Eigen::LLT<Matrix4c> llt(g);
    if (llt.info() != Eigen::Success) throw metric_error("metric is not positive-definite");
    const double p = std::sqrt(E * E - m * m);
    const Matrix4c h = energy_hamiltonian(rep, p, m);
    return max_abs(h.adjoint() * g - g * h);
}

/// Largest imaginary part among the momentum eigenvalues of x1 E + x2 m.
inline double reality_check(const RepresentationSet& rep, double E, double m) {
    if (rep.kind == RepKind::relativistic && E * E < m * m)
        throw std::domain_error("reality_check: relativistic representations need E^2 >= m^2");
    const Matrix4c k = rep.x1 * E + rep.x2 * m;
    // At E^2 = m^2 the generator is nilpotent; its computed eigenvalues scatter
    // around zero at sqrt(eps), so read the spectrum off the squared generator.
    const Matrix4c k2 = k * k;
    double worst = 0.0;
    for (const auto& pair : eigen(k)) {
        cplx lam = pair.value;
        if (max_abs(k2) <= 1e-12 * std::max(1.0, norm_inf(k) * norm_inf(k))) lam = 0.0;
        worst = std::max(worst, std::abs(lam.imag()));
    }
    return worst;
}

/// Relates rep `from` to rep `to` through (x1, x1') and (x2, x2'), then probes
/// pseudo-Hermiticity of `to` against the induced metric.
inline EquivalenceReport compare_representations(const RepresentationSet& from, const RepresentationSet& to,
                                                 const std::vector<std::pair<double, double>>& probes = {{2.0, 1.0},
                                                                                                         {1.5, 1.0}}) {
    MatrixPairs pairs{{from.x1, to.x1}, {from.x2, to.x2}};
    auto rep = find_intertwiner(pairs);
    if (rep.exists && to.algebra == AlgebraClass::clifford_pair) {
        double worst = 0.0;
        for (const auto& [E, m] : probes) worst = std::max(worst, pseudo_hermiticity_check(to, rep.metric, E, m));
        rep.pseudo_hermiticity_residual = worst;
    }
    return rep;
}

}  // namespace spinscat
