#pragma once

// Plane-wave modes psi = u exp(i p z) of a representation at fixed energy.
//
// Each momentum root is doubly degenerate; the two spinors spanning its
// eigenspace are named up/down by one of two rules:
//
//   echelon            reduced row-echelon nullspace basis of (H - p I). The
//                      trailing coordinates not claimed by pivot columns are
//                      free; each basis vector carries a unit entry on one
//                      free coordinate. The vector whose unit sits on the
//                      last free coordinate is "up".
//   projected_sigma3   eigenvectors of P Sigma3 P restricted to the
//                      eigenspace, larger eigenvalue is "up".
//
// Direction of travel for propagating modes follows the chosen convention:
//   flux       sign of the group velocity dE/dp, the direction the packet
//              actually moves (equal to the flux sign whenever the current
//              kernel is definite on the eigenspace)
//   momentum   sign of Re p
// Evanescent modes are "rightward" when they decay for z -> +inf (Im p > 0).

#include "spinscat/numkernel.hpp"
#include "spinscat/representations.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spinscat {

struct Kinematics {
    double E = 0.0;
    double m = 0.0;
    double V = 0.0;
};

enum class Direction { rightward, leftward };
enum class Character { propagating, evanescent };
enum class SpinLabel { up, down };
enum class DirectionConvention { flux, momentum };
enum class SpinBasis { echelon, projected_sigma3 };

inline std::string_view to_string(Direction d) { return d == Direction::rightward ? "rightward" : "leftward"; }
inline std::string_view to_string(Character c) { return c == Character::propagating ? "propagating" : "evanescent"; }
inline std::string_view to_string(SpinLabel s) { return s == SpinLabel::up ? "up" : "down"; }
inline std::string_view to_string(DirectionConvention c) { return c == DirectionConvention::flux ? "flux" : "momentum"; }
inline std::string_view to_string(SpinBasis b) { return b == SpinBasis::echelon ? "echelon" : "sigma3"; }

struct ModeOptions {
    DirectionConvention convention = DirectionConvention::flux;
    SpinBasis basis = SpinBasis::echelon;
};

struct Mode {
    cplx momentum;
    /// Unit |flux| when propagating (if the flux is not null), unit norm otherwise.
    Spinor spinor;
    Direction direction = Direction::rightward;
    Character character = Character::propagating;
    SpinLabel spin_label = SpinLabel::up;
    double flux = 0.0;
};

class defective_modes_error : public std::runtime_error {
public:
    defective_modes_error(const std::string& what, std::size_t dimension)
        : std::runtime_error(what), dimension_(dimension) {}
    std::size_t nullspace_dimension() const noexcept { return dimension_; }

private:
    std::size_t dimension_;
};

inline constexpr double kOnShellTol = 1e-9;

inline void validate(const Kinematics& kin) {
    if (!std::isfinite(kin.E) || !std::isfinite(kin.m) || !std::isfinite(kin.V))
        throw std::invalid_argument("kinematics must be finite");
    if (kin.m < 0.0) throw std::invalid_argument("mass must be >= 0");
}

/// Squared momentum from the representation's dispersion relation.
inline double momentum_squared(const RepresentationSet& rep, const Kinematics& kin) {
    const double e = kin.E - kin.V;
    if (rep.kind == RepKind::relativistic) return e * e - kin.m * kin.m;
    return 2.0 * e * kin.m;
}

/// {+p, -p} with Im(+p) >= 0 (principal square root).
inline std::array<cplx, 2> dispersion(const RepresentationSet& rep, const Kinematics& kin) {
    validate(kin);
    const double q = momentum_squared(rep, kin);
    const cplx p = q >= 0.0 ? cplx(std::sqrt(q), 0.0) : cplx(0.0, std::sqrt(-q));
    return {p, -p};
}

inline Matrix4c momentum_generator(const RepresentationSet& rep, const Kinematics& kin) {
    return rep.x1 * (kin.E - kin.V) + rep.x2 * kin.m;
}

/// Signed probability current u^dagger J u.
inline double flux(const RepresentationSet& rep, const Spinor& u) {
    return (u.adjoint() * rep.current_op * u)(0, 0).real();
}

/// J-weighted Gram matrix of a set of spinors: G_ij = u_i^dagger J u_j.
inline Matrix2c flux_gram(const RepresentationSet& rep, const Spinor& a, const Spinor& b) {
    Eigen::Matrix<cplx, 4, 2> u;
    u.col(0) = a;
    u.col(1) = b;
    return u.adjoint() * rep.current_op * u;
}

namespace detail {

/// Free-coordinate pairs in the order a row-echelon reduction with greedy
/// leftmost pivots would leave them.
inline constexpr std::array<std::pair<int, int>, 6> kFreePairs{
    {{2, 3}, {1, 3}, {1, 2}, {0, 3}, {0, 2}, {0, 1}}};

inline std::pair<Spinor, Spinor> echelon_pair(const Eigen::Matrix<cplx, 4, 2>& q) {
    for (const auto& [a, b] : kFreePairs) {
        Matrix2c sub;
        sub.row(0) = q.row(a);
        sub.row(1) = q.row(b);
        const Eigen::VectorXd sv = singular_values(sub);
        if (sv(1) > 1e-6) {
            const Eigen::Matrix<cplx, 4, 2> c = q * sub.inverse();
            return {c.col(1), c.col(0)};  // unit on the later free coordinate is "up"
        }
    }
    throw defective_modes_error("echelon labeling: no admissible free coordinates", 2);
}

inline Spinor fix_phase(Spinor u) {
    for (int i = 0; i < 4; ++i) {
        if (std::abs(u(i)) > 1e-12 * u.norm()) {
            u *= std::conj(u(i)) / std::abs(u(i));
            break;
        }
    }
    return u;
}

inline std::pair<Spinor, Spinor> sigma3_pair(const RepresentationSet& rep, const Eigen::Matrix<cplx, 4, 2>& q) {
    const Matrix2c projected = q.adjoint() * rep.spin_op * q;
    Eigen::SelfAdjointEigenSolver<Matrix2c> es(Matrix2c(0.5 * (projected + projected.adjoint())));
    const auto& w = es.eigenvalues();
    if (std::abs(w(1) - w(0)) <= 1e-9) return echelon_pair(q);
    return {fix_phase(q * es.eigenvectors().col(1)), fix_phase(q * es.eigenvectors().col(0))};
}

}  // namespace detail

/// Orthonormal basis of the eigenspace of momentum root p. Throws when the
/// eigenspace is not exactly two-dimensional.
inline Eigen::Matrix<cplx, 4, 2> eigenspace(const RepresentationSet& rep, const Kinematics& kin, cplx p) {
    const Matrix4c a = momentum_generator(rep, kin) - p * identity4();
    const double scale = std::max({norm_inf(momentum_generator(rep, kin)), std::abs(p), 1e-300});
    Eigen::JacobiSVD<Matrix4c> svd(a, Eigen::ComputeFullV);
    const Eigen::Vector4d s = svd.singularValues();
    std::size_t dim = 0;
    for (int i = 0; i < 4; ++i)
        if (s(i) <= 1e-8 * scale) ++dim;
    if (dim != 2)
        throw defective_modes_error("momentum root " + std::to_string(p.real()) + "+" + std::to_string(p.imag()) +
                                        "i has a " + std::to_string(dim) + "-dimensional eigenspace (expected 2)",
                                    dim);
    return svd.matrixV().rightCols<2>();
}

/// The four plane-wave modes at kin: for each root (+p first), up then down.
inline std::vector<Mode> modes(const RepresentationSet& rep, const Kinematics& kin, const ModeOptions& opt = {}) {
    const auto roots = dispersion(rep, kin);
    if (std::abs(roots[0]) <= kOnShellTol * std::max({1.0, std::abs(kin.E), kin.m}))
        throw defective_modes_error("momentum roots coincide at threshold", 2);
    const double q = momentum_squared(rep, kin);
    const bool propagating = q > 0.0;
    const double group_sign = rep.kind == RepKind::relativistic ? (kin.E - kin.V) : kin.m;

    std::vector<Mode> out;
    out.reserve(4);
    for (const cplx p : roots) {
        const auto basis = eigenspace(rep, kin, p);
        const auto [up, down] =
            opt.basis == SpinBasis::echelon ? detail::echelon_pair(basis) : detail::sigma3_pair(rep, basis);
        for (const auto& [u0, label] : {std::pair{up, SpinLabel::up}, std::pair{down, SpinLabel::down}}) {
            Mode md;
            md.momentum = p;
            md.spin_label = label;
            md.character = propagating ? Character::propagating : Character::evanescent;
            Spinor u = u0;
            const double f = flux(rep, u);
            if (propagating && std::abs(f) > 1e-12 * u.squaredNorm())
                u /= std::sqrt(std::abs(f));
            else
                u /= u.norm();
            md.spinor = u;
            md.flux = flux(rep, u);
            if (!propagating) {
                md.direction = p.imag() > 0.0 ? Direction::rightward : Direction::leftward;
            } else if (opt.convention == DirectionConvention::momentum) {
                md.direction = p.real() > 0.0 ? Direction::rightward : Direction::leftward;
            } else {
                md.direction = p.real() * group_sign > 0.0 ? Direction::rightward : Direction::leftward;
            }
            out.push_back(std::move(md));
        }
    }
    return out;
}

/// Mode with the given direction and label; throws if absent.
inline const Mode& select_mode(const std::vector<Mode>& ms, Direction d, SpinLabel s) {
    for (const auto& m : ms)
        if (m.direction == d && m.spin_label == s) return m;
    throw defective_modes_error("no " + std::string(to_string(d)) + " " + std::string(to_string(s)) + " mode", 0);
}

/// |(x1 (E - V) + x2 m - p) u|
inline double on_shell_residual(const RepresentationSet& rep, const Kinematics& kin, const Mode& md) {
    return (momentum_generator(rep, kin) * md.spinor - md.momentum * md.spinor).norm();
}

}  // namespace spinscat
