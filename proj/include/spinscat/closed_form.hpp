#pragma once

// Literal evaluation of the published closed-form step coefficients for the
// Ajaib representation, and audits comparing them against the numeric
// matcher. Nothing here feeds back into solve_step(); the formulas are
// evaluated exactly as printed, including the ones that fail the audit.
//
// With k^2 = E^2 - m^2, k'^2 = (E - V0)^2 - m^2 (k' >= 0):
//   Delta  = k^2 + k k' - E V0          DeltaTilde = k^2 - k k' + E V0
//   T_up   = DeltaTilde^2 / (E^2 V0^2)  R_up   = m^4 V0^2 / (E^2 Delta^2)
//   T_down = R_down = k^2 m^2 V0^2 / (E^2 Delta^2)
//   T      = 2 k^2 (E - V0) / (E Delta) R      = m^2 V0^2 / Delta^2
// and the V0 -> inf limits
//   T_inf  = 2 k^2 (k + E) / m^2        R_inf  = (k + E)^2 / m^2.
// The positive root k' is the momentum-sign branch, so comparisons in the
// Klein zone use DirectionConvention::momentum.

#include "spinscat/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinscat {

struct ClosedFormPoint {
    double E = 0, m = 0, V0 = 0;
    double Delta = 0, DeltaTilde = 0;
    double T_up_cf = 0, T_down_cf = 0, R_up_cf = 0, R_down_cf = 0, T_cf = 0, R_cf = 0;
};

inline ClosedFormPoint closed_form(double E, double m, double V0) {
    if (!(E > m) || !(m >= 0.0)) throw std::domain_error("closed_form: requires E > m >= 0");
    const double kp2 = (E - V0) * (E - V0) - m * m;
    if (!(kp2 > 0.0)) throw std::domain_error("closed_form: requires (E - V0)^2 > m^2");
    const double k2 = E * E - m * m;
    const double root = std::sqrt(k2 * kp2);

    ClosedFormPoint c;
    c.E = E;
    c.m = m;
    c.V0 = V0;
    c.Delta = k2 + root - E * V0;
    c.DeltaTilde = k2 - root + E * V0;
    const double e2 = E * E, v2 = V0 * V0, m2 = m * m, d2 = c.Delta * c.Delta;
    // 0/0 at V0 = 0 stays NaN: the printed T_up has no value there.
    c.T_up_cf = c.DeltaTilde * c.DeltaTilde / (e2 * v2);
    c.R_up_cf = m2 * m2 * v2 / (e2 * d2);
    c.T_down_cf = k2 * m2 * v2 / (e2 * d2);
    c.R_down_cf = c.T_down_cf;
    c.T_cf = 2.0 * k2 * (E - V0) / (E * c.Delta);
    c.R_cf = m2 * v2 / d2;
    return c;
}

inline constexpr double kSuspectThreshold = 1e-6;

struct AuditEntry {
    double E = 0, m = 0, V0 = 0;
    double closed = 0;
    double numeric = 0;
    double discrepancy = 0;  // NaN when the printed expression is indeterminate
};

struct AuditColumn {
    std::string formula;  // T_up, R_up, T_down, R_down, T_total, R_total, T_plus_R
    std::vector<AuditEntry> entries;
    double median_discrepancy = 0;
    bool suspect = false;
};

struct KleinReport {
    std::string rep_name;
    double E = 0, m = 0;
    DirectionConvention convention = DirectionConvention::momentum;
    std::vector<double> V0;
    std::vector<double> T;
    std::vector<double> R;
    double T_limit = 0, R_limit = 0;      // extrapolated numeric limits
    double T_literal = 0, R_literal = 0;  // printed V0 -> inf limits
    double T_closed_form_limit = 0;       // V0 -> inf of the printed finite-V0 T
    double T_literal_ratio = 0;           // T_literal / T_closed_form_limit
    bool R_matches = false;
    bool T_matches = false;
    bool reflection_exceeds_unity = false;
};

struct AuditReport {
    std::vector<AuditColumn> columns;
    std::optional<KleinReport> klein;
    std::vector<std::string> flags;  // "<formula>: SUSPECT-TYPO ..."
    bool flagged() const { return !flags.empty(); }
};

namespace detail {

inline double median(std::vector<double> v) {
    v.erase(std::remove_if(v.begin(), v.end(), [](double x) { return std::isnan(x); }), v.end());
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// Polynomial extrapolation to h = 0 through (h_i, f_i) (Neville).
inline double extrapolate_to_zero(const std::vector<double>& h, const std::vector<double>& f) {
    std::vector<double> p = f;
    const std::size_t n = h.size();
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = 0; i + level < n; ++i)
            p[i] = (h[i + level] * p[i] - h[i] * p[i + 1]) / (h[i + level] - h[i]);
    return p[0];
}

}  // namespace detail

inline constexpr double kKleinLimitTol = 1e-4;

/// Numeric T, R along an ascending V0 grid, extrapolated in 1/V0 through the
/// last three points, next to the printed limits.
inline KleinReport klein_probe(const RepresentationSet& rep, double E, double m, const std::vector<double>& grid,
                               DirectionConvention convention = DirectionConvention::momentum) {
    if (!(E > m)) throw std::domain_error("klein_probe: requires E > m");
    if (grid.size() < 3) throw std::invalid_argument("klein_probe: need at least three grid points");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("klein_probe: grid must be ascending");
    if (!(grid.back() > 10.0 * E)) throw std::invalid_argument("klein_probe: grid maximum must be far above E");

    KleinReport k;
    k.rep_name = rep.name;
    k.E = E;
    k.m = m;
    k.convention = convention;
    ScatterOptions opt;
    opt.convention = convention;
    for (double v : grid) {
        const auto r = solve_step(rep, E, m, v, SpinLabel::up, opt);
        k.V0.push_back(v);
        k.T.push_back(r.T_tot);
        k.R.push_back(r.R_tot);
    }
    const std::size_t n = grid.size();
    std::vector<double> h, t, rr;
    for (std::size_t i = n - 3; i < n; ++i) {
        h.push_back(1.0 / grid[i]);
        t.push_back(k.T[i]);
        rr.push_back(k.R[i]);
    }
    k.T_limit = detail::extrapolate_to_zero(h, t);
    k.R_limit = detail::extrapolate_to_zero(h, rr);

    const double kk = std::sqrt(E * E - m * m);
    k.T_literal = 2.0 * (E * E - m * m) * (kk + E) / (m * m);
    k.R_literal = (kk + E) * (kk + E) / (m * m);
    // 2 k^2 (E - V0) / (E Delta) with Delta ~ (k - E) V0
    k.T_closed_form_limit = -2.0 * kk * kk / (E * (kk - E));
    k.T_literal_ratio = k.T_literal / k.T_closed_form_limit;
    k.R_matches = std::abs(k.R_limit - k.R_literal) <= kKleinLimitTol;
    k.T_matches = std::abs(k.T_limit - k.T_literal) <= kKleinLimitTol;
    k.reflection_exceeds_unity = k.R_limit > 1.0;
    return k;
}

/// Geometric V0 grid from `lo` to `hi` with `n` points.
inline std::vector<double> geometric_grid(double lo, double hi, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(n - 1));
    return g;
}

/// Per printed formula, |closed form - numeric ajaib matcher| at each point,
/// plus the printed sum rule T + R = 1 checked on the closed forms alone.
/// A formula whose median discrepancy exceeds 1e-6 is flagged SUSPECT-TYPO.
inline AuditReport audit_closed_forms(const std::vector<std::array<double, 3>>& points,
                                      std::optional<std::pair<double, double>> klein_at = std::nullopt) {
    if (points.empty()) throw std::invalid_argument("audit: no points");
    const auto& rep = registry_lookup("ajaib");
    ScatterOptions opt;
    opt.convention = DirectionConvention::momentum;

    const char* names[] = {"T_up", "R_up", "T_down", "R_down", "T_total", "R_total", "T_plus_R"};
    AuditReport report;
    for (const char* nm : names) report.columns.push_back({nm, {}, 0.0, false});

    for (const auto& [E, m, V0] : points) {
        const auto cf = closed_form(E, m, V0);
        const auto num = solve_step(rep, E, m, V0, SpinLabel::up, opt);
        const double closed[] = {cf.T_up_cf, cf.R_up_cf, cf.T_down_cf, cf.R_down_cf, cf.T_cf, cf.R_cf, cf.T_cf + cf.R_cf};
        const double numeric[] = {num.T_up, num.R_up, num.T_down, num.R_down, num.T_tot, num.R_tot, 1.0};
        for (std::size_t c = 0; c < report.columns.size(); ++c) {
            AuditEntry e{E, m, V0, closed[c], numeric[c], std::abs(closed[c] - numeric[c])};
            report.columns[c].entries.push_back(e);
        }
    }
    for (auto& col : report.columns) {
        std::vector<double> d;
        for (const auto& e : col.entries) d.push_back(e.discrepancy);
        col.median_discrepancy = detail::median(d);
        col.suspect = !(col.median_discrepancy <= kSuspectThreshold) && !std::isnan(col.median_discrepancy);
        if (col.suspect)
            report.flags.push_back(col.formula + ": SUSPECT-TYPO (median discrepancy " +
                                   std::to_string(col.median_discrepancy) + ")");
    }

    if (klein_at) {
        const auto [E, m] = *klein_at;
        auto k = klein_probe(rep, E, m, geometric_grid(10.0 * std::max(E, m), 1e6 * std::max(m, 1.0), 25));
        if (!k.R_matches) report.flags.push_back("R_limit: SUSPECT-TYPO (numeric limit differs from printed limit)");
        if (!k.T_matches) report.flags.push_back("T_limit: SUSPECT-TYPO (numeric limit differs from printed limit)");
        report.klein = std::move(k);
    }
    return report;
}

}  // namespace spinscat
