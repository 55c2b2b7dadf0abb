#pragma once

// Step and finite-barrier scattering by spinor continuity.
//
// Probabilities are flux ratios measured with the representation's own
// current kernel J. For an outgoing wave sum_k c_k u_k the flux is
// c^dagger G c with G_kl = u_k^dagger J u_l, so per channel
//   T1 = |t_up|^2 G_00 / f_in,  T2 = |t_down|^2 G_11 / f_in,
//   T_int = 2 Re(conj(t_up) t_down G_01) / f_in,
// and T_tot = T1 + T2 + T_int exactly. T_up/T_down report the diagonal
// terms; the cross term is zero whenever the channel spinors are
// J-orthogonal (dirac, ajaib) and carries the interference otherwise (xi).

#include "spinscat/numkernel.hpp"
#include "spinscat/planewave.hpp"
#include "spinscat/representations.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace spinscat {

enum class Regime { transmitting, gap, klein };

inline std::string_view to_string(Regime r) {
    switch (r) {
        case Regime::transmitting: return "transmitting";
        case Regime::gap: return "gap";
        default: return "klein";
    }
}

struct StepProblem {
    std::string rep_name = "dirac";
    double E = 2.0;
    double m = 1.0;
    double V0 = 0.0;
    SpinLabel incident_spin = SpinLabel::up;
};

using ScatterOptions = ModeOptions;

struct ScatterResult {
    cplx t_up{}, t_down{}, r_up{}, r_down{};
    double T_up = 0, T_down = 0, R_up = 0, R_down = 0;
    double T1 = 0, T2 = 0, T_int = 0, R_int = 0;
    double T_tot = 0, R_tot = 0;
    double conservation_residual = 0;
    Regime regime = Regime::transmitting;
};

class threshold_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kThresholdGuard = 1e-9;

inline Regime classify(const RepresentationSet& rep, double E, double m, double V) {
    const double e = E - V;
    if (rep.kind == RepKind::nonrelativistic) return e > 0 ? Regime::transmitting : Regime::gap;
    if (e > m) return Regime::transmitting;
    if (e < -m) return Regime::klein;
    return Regime::gap;
}

namespace detail {

inline double energy_scale(double E, double m, double V) {
    return std::max({std::abs(E), m, std::abs(V), 1e-300});
}

/// Throws threshold_error when a region sits on a branch point of its
/// dispersion relation, within the relative guard.
inline void check_thresholds(const RepresentationSet& rep, double E, double m, double V0) {
    const double scale = energy_scale(E, m, V0);
    auto near = [&](double a, double b) { return std::abs(a - b) <= kThresholdGuard * scale; };
    if (rep.kind == RepKind::relativistic) {
        if (near(E, m)) throw threshold_error("incident energy at rest-mass threshold E = m");
        if (near(std::abs(E - V0), m))
            throw threshold_error("step threshold |E - V0| = m: region-II momenta coincide");
    } else {
        if (near(E, 0.0) || m <= 0.0) throw threshold_error("non-relativistic threshold E m = 0");
        if (near(E, V0)) throw threshold_error("step threshold E = V0: region-II momenta coincide");
    }
}

inline void check_incident(const RepresentationSet& rep, double E, double m) {
    const bool ok = rep.kind == RepKind::relativistic ? E > m : (E > 0 && m > 0);
    if (!ok) throw std::domain_error("incident particle must propagate (E > m)");
}

struct Channels {
    const Mode* incident;
    std::array<const Mode*, 2> reflected;    // up, down
    std::array<const Mode*, 2> transmitted;  // up, down
};

inline Channels pick_channels(const std::vector<Mode>& left, const std::vector<Mode>& right, SpinLabel spin) {
    Channels c{};
    c.incident = &select_mode(left, Direction::rightward, spin);
    c.reflected = {&select_mode(left, Direction::leftward, SpinLabel::up),
                   &select_mode(left, Direction::leftward, SpinLabel::down)};
    c.transmitted = {&select_mode(right, Direction::rightward, SpinLabel::up),
                     &select_mode(right, Direction::rightward, SpinLabel::down)};
    return c;
}

inline void fill_probabilities(const RepresentationSet& rep, const Channels& ch, const ComplexVector& r,
                               const ComplexVector& t, Regime regime, bool zero_evanescent_transmission,
                               ScatterResult& out) {
    const double f_in = flux(rep, ch.incident->spinor);
    if (!(std::abs(f_in) > 1e-12)) throw threshold_error("incident mode carries no flux");

    out.r_up = r(0);
    out.r_down = r(1);
    out.t_up = t(0);
    out.t_down = t(1);

    const Matrix2c gt = flux_gram(rep, ch.transmitted[0]->spinor, ch.transmitted[1]->spinor);
    const Matrix2c gr = flux_gram(rep, ch.reflected[0]->spinor, ch.reflected[1]->spinor);

    out.T1 = std::norm(t(0)) * gt(0, 0).real() / f_in;
    out.T2 = std::norm(t(1)) * gt(1, 1).real() / f_in;
    out.T_int = 2.0 * (std::conj(t(0)) * t(1) * gt(0, 1)).real() / f_in;
    out.R_up = -std::norm(r(0)) * gr(0, 0).real() / f_in;
    out.R_down = -std::norm(r(1)) * gr(1, 1).real() / f_in;
    out.R_int = -2.0 * (std::conj(r(0)) * r(1) * gr(0, 1)).real() / f_in;

    const double t_raw = out.T1 + out.T2 + out.T_int;
    out.R_tot = out.R_up + out.R_down + out.R_int;
    out.conservation_residual = std::abs(t_raw + out.R_tot - 1.0);
    if (zero_evanescent_transmission) {
        out.T1 = out.T2 = out.T_int = 0.0;
    }
    out.T_up = out.T1;
    out.T_down = out.T2;
    out.T_tot = out.T1 + out.T2 + out.T_int;
    out.regime = regime;
}

}  // namespace detail

inline ScatterResult solve_step(const RepresentationSet& rep, double E, double m, double V0, SpinLabel spin,
                                const ScatterOptions& opt = {}) {
    validate(Kinematics{E, m, V0});
    detail::check_incident(rep, E, m);
    detail::check_thresholds(rep, E, m, V0);

    const auto left = modes(rep, {E, m, 0.0}, opt);
    const auto right = modes(rep, {E, m, V0}, opt);
    const auto ch = detail::pick_channels(left, right, spin);

    Matrix4c a;
    a.col(0) = ch.reflected[0]->spinor;
    a.col(1) = ch.reflected[1]->spinor;
    a.col(2) = -ch.transmitted[0]->spinor;
    a.col(3) = -ch.transmitted[1]->spinor;
    ComplexVector x;
    try {
        x = solve_linear(a, Spinor(-ch.incident->spinor));
    } catch (const singular_matrix_error& e) {
        throw threshold_error(std::string("degenerate matching system: ") + e.what());
    }

    ScatterResult res;
    const Regime regime = classify(rep, E, m, V0);
    detail::fill_probabilities(rep, ch, x.head<2>(), x.tail<2>(), regime, regime == Regime::gap, res);
    return res;
}

inline ScatterResult solve_step(const StepProblem& p, const ScatterOptions& opt = {}) {
    return solve_step(registry_lookup(p.rep_name), p.E, p.m, p.V0, p.incident_spin, opt);
}

/// Square barrier of height V0 on 0 < z < width. Interior modes growing to
/// the right are referenced at z = width so no exponential ever exceeds 1.
inline ScatterResult solve_barrier(const RepresentationSet& rep, double E, double m, double V0, double width,
                                   SpinLabel spin, const ScatterOptions& opt = {}) {
    if (!(width > 0.0) || !std::isfinite(width)) throw std::invalid_argument("barrier width must be > 0");
    validate(Kinematics{E, m, V0});
    detail::check_incident(rep, E, m);
    detail::check_thresholds(rep, E, m, V0);

    const auto outer = modes(rep, {E, m, 0.0}, opt);
    const auto inner = modes(rep, {E, m, V0}, opt);
    const auto ch = detail::pick_channels(outer, outer, spin);

    // unknowns: r_up, r_down, c_0..c_3, t_up, t_down
    ComplexMatrix a = ComplexMatrix::Zero(8, 8);
    ComplexVector rhs = ComplexVector::Zero(8);
    a.block<4, 1>(0, 0) = ch.reflected[0]->spinor;
    a.block<4, 1>(0, 1) = ch.reflected[1]->spinor;
    for (int j = 0; j < 4; ++j) {
        const cplx p = inner[j].momentum;
        const double ref = p.imag() < 0.0 ? width : 0.0;
        const cplx at0 = std::exp(I_unit * p * (0.0 - ref));
        const cplx atw = std::exp(I_unit * p * (width - ref));
        a.block<4, 1>(0, 2 + j) = -at0 * inner[j].spinor;
        a.block<4, 1>(4, 2 + j) = atw * inner[j].spinor;
    }
    a.block<4, 1>(4, 6) = -ch.transmitted[0]->spinor;
    a.block<4, 1>(4, 7) = -ch.transmitted[1]->spinor;
    rhs.head<4>() = -ch.incident->spinor;

    ComplexVector x;
    try {
        x = solve_linear(a, rhs);
    } catch (const singular_matrix_error& e) {
        throw threshold_error(std::string("degenerate barrier matching system: ") + e.what());
    }

    ScatterResult res;
    detail::fill_probabilities(rep, ch, x.head<2>(), x.tail<2>(), classify(rep, E, m, V0), false, res);
    return res;
}

inline ScatterResult solve_barrier(const StepProblem& p, double width, const ScatterOptions& opt = {}) {
    return solve_barrier(registry_lookup(p.rep_name), p.E, p.m, p.V0, width, p.incident_spin, opt);
}

struct Decomposition {
    double T1 = 0, T2 = 0, T_int = 0;
};

inline Decomposition interference_decomposition(const ScatterResult& r) {
    if (r.regime == Regime::gap) throw std::domain_error("interference decomposition needs a propagating region II");
    return {r.T1, r.T2, r.T_int};
}

struct SweepRow {
    double E = 0;  // energy actually solved (perturbed off thresholds if needed)
    std::optional<ScatterResult> result;
    std::string flag;  // empty unless the point could not be solved
};

/// One result per grid energy, in grid order. Threshold points are nudged
/// by 2e-9 relative; points that still fail come back flagged.
inline std::vector<SweepRow> sweep(const RepresentationSet& rep, double m, double V0, const std::vector<double>& grid,
                                   SpinLabel spin, const ScatterOptions& opt = {}, unsigned threads = 1) {
    if (grid.empty()) throw std::invalid_argument("sweep: empty energy grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (rep.kind == RepKind::relativistic ? !(grid[i] > m) : !(grid[i] > 0))
            throw std::invalid_argument("sweep: every grid energy must exceed m");
        if (i > 0 && !(grid[i] > grid[i - 1])) throw std::invalid_argument("sweep: grid must be strictly increasing");
    }

    std::vector<SweepRow> rows(grid.size());
    auto work = [&](std::size_t i) {
        double E = grid[i];
        for (int attempt = 0; attempt < 2; ++attempt) {
            try {
                rows[i].E = E;
                rows[i].result = solve_step(rep, E, m, V0, spin, opt);
                rows[i].flag.clear();
                return;
            } catch (const threshold_error& e) {
                rows[i].flag = e.what();
            } catch (const defective_modes_error& e) {
                rows[i].flag = e.what();
            }
            E += 2.0 * kThresholdGuard * detail::energy_scale(E, m, V0);
        }
    };

    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(grid.size())));
    if (threads == 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) work(i);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < grid.size(); i += threads) work(i);
            });
        for (auto& th : pool) th.join();
    }
    return rows;
}

inline std::vector<SweepRow> sweep(const std::string& rep_name, double m, double V0, const std::vector<double>& grid,
                                   SpinLabel spin, const ScatterOptions& opt = {}, unsigned threads = 1) {
    return sweep(registry_lookup(rep_name), m, V0, grid, spin, opt, threads);
}

}  // namespace spinscat
