#pragma once

// CSV and JSON serialization of scattering results and reports.
//
// CSV layout (consumed by external plotting scripts, keep it stable):
//   # rep=<name> m=<m> V0=<V0> spin=<s> units=<u> convention=<c>
//   E,T_up,T_down,R_up,R_down,T_tot,R_tot,T1,T2,T_int,conservation_residual,regime
// Numbers are plain decimals with 12 significant digits, lines end in LF.
// Rows that could not be solved carry "nan" in every numeric column after E
// and "flagged" as regime.

#include "spinscat/closed_form.hpp"
#include "spinscat/equivalence.hpp"
#include "spinscat/representations.hpp"
#include "spinscat/scattering.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinscat {

inline constexpr const char* kCsvHeader =
    "E,T_up,T_down,R_up,R_down,T_tot,R_tot,T1,T2,T_int,conservation_residual,regime";
inline constexpr double kElectronMassKeV = 511.0;

class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Units { natural, keV };

inline std::string_view to_string(Units u) { return u == Units::natural ? "natural" : "keV"; }

/// Energy unit in natural units (m_e = 1 in keV mode).
inline double unit_scale(Units u) { return u == Units::keV ? kElectronMassKeV : 1.0; }

/// x in fixed notation with exactly 12 significant digits.
inline std::string format_sig12(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) return "0.00000000000";
    int decimals = std::max(0, 11 - static_cast<int>(std::floor(std::log10(std::abs(x)))));
    char buf[512];
    for (int pass = 0; pass < 2; ++pass) {
        std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
        int digits = 0;
        bool leading = true;
        for (const char* c = buf; *c; ++c) {
            if (*c < '0' || *c > '9') continue;
            if (leading && *c == '0') continue;
            leading = false;
            ++digits;
        }
        // rounding can carry into a new leading digit (9.99.. -> 10.0..)
        if (digits <= 12 || decimals == 0) break;
        --decimals;
    }
    return buf;
}

struct CsvMetadata {
    std::string rep;
    double m = 1.0;   // in output units
    double V0 = 0.0;  // in output units
    SpinLabel spin = SpinLabel::up;
    Units units = Units::natural;
    DirectionConvention convention = DirectionConvention::flux;
};

/// Energies in rows are natural units; they are scaled by meta.units on output.
inline void write_csv(std::ostream& os, const std::vector<SweepRow>& rows, const CsvMetadata& meta) {
    if (rows.empty()) throw std::invalid_argument("emit_csv: no results");
    const double s = unit_scale(meta.units);
    os << "# rep=" << meta.rep << " m=" << format_sig12(meta.m) << " V0=" << format_sig12(meta.V0)
       << " spin=" << to_string(meta.spin) << " units=" << to_string(meta.units)
       << " convention=" << to_string(meta.convention) << '\n';
    os << kCsvHeader << '\n';
    for (const auto& row : rows) {
        os << format_sig12(row.E * s);
        if (!row.result) {
            for (int i = 0; i < 10; ++i) os << ",nan";
            os << ",flagged\n";
            continue;
        }
        const auto& r = *row.result;
        for (double v : {r.T_up, r.T_down, r.R_up, r.R_down, r.T_tot, r.R_tot, r.T1, r.T2, r.T_int,
                         r.conservation_residual})
            os << ',' << format_sig12(v);
        os << ',' << to_string(r.regime) << '\n';
    }
}

inline std::string csv_string(const std::vector<SweepRow>& rows, const CsvMetadata& meta) {
    std::ostringstream os;
    write_csv(os, rows, meta);
    return os.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw io_error("cannot open '" + path + "' for writing");
    f << text;
    f.flush();
    if (!f) throw io_error("write to '" + path + "' failed");
}

inline void emit_csv(const std::vector<SweepRow>& rows, const CsvMetadata& meta, const std::string& path) {
    write_text_file(path, csv_string(rows, meta));
}

// JSON. NaN is not representable, so it travels as null and comes back as NaN.

using json = nlohmann::ordered_json;

inline json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

inline double num_from(const json& j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

inline json cplx_json(cplx z) { return json::array({num(z.real()), num(z.imag())}); }

inline cplx cplx_from(const json& j) { return {num_from(j.at(0)), num_from(j.at(1))}; }

inline Regime regime_from(const std::string& s) {
    if (s == "transmitting") return Regime::transmitting;
    if (s == "gap") return Regime::gap;
    if (s == "klein") return Regime::klein;
    throw std::invalid_argument("unknown regime '" + s + "'");
}

inline json to_json(const ScatterResult& r) {
    return json{{"t_up", cplx_json(r.t_up)},
                {"t_down", cplx_json(r.t_down)},
                {"r_up", cplx_json(r.r_up)},
                {"r_down", cplx_json(r.r_down)},
                {"T_up", num(r.T_up)},
                {"T_down", num(r.T_down)},
                {"R_up", num(r.R_up)},
                {"R_down", num(r.R_down)},
                {"T1", num(r.T1)},
                {"T2", num(r.T2)},
                {"T_int", num(r.T_int)},
                {"R_int", num(r.R_int)},
                {"T_tot", num(r.T_tot)},
                {"R_tot", num(r.R_tot)},
                {"conservation_residual", num(r.conservation_residual)},
                {"regime", std::string(to_string(r.regime))}};
}

inline ScatterResult scatter_result_from_json(const json& j) {
    ScatterResult r;
    r.t_up = cplx_from(j.at("t_up"));
    r.t_down = cplx_from(j.at("t_down"));
    r.r_up = cplx_from(j.at("r_up"));
    r.r_down = cplx_from(j.at("r_down"));
    r.T_up = num_from(j.at("T_up"));
    r.T_down = num_from(j.at("T_down"));
    r.R_up = num_from(j.at("R_up"));
    r.R_down = num_from(j.at("R_down"));
    r.T1 = num_from(j.at("T1"));
    r.T2 = num_from(j.at("T2"));
    r.T_int = num_from(j.at("T_int"));
    r.R_int = num_from(j.at("R_int"));
    r.T_tot = num_from(j.at("T_tot"));
    r.R_tot = num_from(j.at("R_tot"));
    r.conservation_residual = num_from(j.at("conservation_residual"));
    r.regime = regime_from(j.at("regime").get<std::string>());
    return r;
}

inline json to_json(const std::vector<SweepRow>& rows, const CsvMetadata& meta) {
    const double s = unit_scale(meta.units);
    json out{{"rep", meta.rep},
             {"m", num(meta.m)},
             {"V0", num(meta.V0)},
             {"spin", std::string(to_string(meta.spin))},
             {"units", std::string(to_string(meta.units))},
             {"convention", std::string(to_string(meta.convention))},
             {"rows", json::array()}};
    for (const auto& row : rows) {
        json jr{{"E", num(row.E * s)}};
        if (row.result)
            jr["result"] = to_json(*row.result);
        else
            jr["flag"] = row.flag;
        out["rows"].push_back(std::move(jr));
    }
    return out;
}

inline json to_json(const AlgebraReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back({{"identity", c.name}, {"residual", num(c.residual)}, {"pass", c.pass}});
    return json{{"subject", r.subject}, {"ok", r.ok()}, {"max_residual", num(r.max_residual())}, {"checks", checks},
                {"notes", r.notes}};
}

inline json matrix_json(const Matrix4c& a) {
    json rows = json::array();
    for (int i = 0; i < 4; ++i) {
        json row = json::array();
        for (int j = 0; j < 4; ++j) row.push_back(cplx_json(a(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json to_json(const EquivalenceReport& r) {
    json j{{"exists", r.exists}, {"solution_dimension", r.solution_dimension}};
    if (r.exists) {
        j["unitary"] = r.unitary;
        j["unitarity_residual"] = num(r.unitarity_residual);
        j["intertwining_residual"] = num(r.intertwining_residual);
        j["pseudo_hermiticity_residual"] = num(r.pseudo_hermiticity_residual);
        j["intertwiner"] = matrix_json(r.intertwiner);
        j["metric"] = matrix_json(r.metric);
    }
    return j;
}

inline json to_json(const KleinReport& k) {
    json grid = json::array();
    for (std::size_t i = 0; i < k.V0.size(); ++i)
        grid.push_back({{"V0", num(k.V0[i])}, {"T_tot", num(k.T[i])}, {"R_tot", num(k.R[i])}});
    return json{{"rep", k.rep_name},
                {"E", num(k.E)},
                {"m", num(k.m)},
                {"convention", std::string(to_string(k.convention))},
                {"T_limit", num(k.T_limit)},
                {"R_limit", num(k.R_limit)},
                {"T_literal", num(k.T_literal)},
                {"R_literal", num(k.R_literal)},
                {"T_closed_form_limit", num(k.T_closed_form_limit)},
                {"T_literal_ratio", num(k.T_literal_ratio)},
                {"R_matches", k.R_matches},
                {"T_matches", k.T_matches},
                {"reflection_exceeds_unity", k.reflection_exceeds_unity},
                {"grid", grid}};
}

inline json to_json(const AuditReport& a) {
    json cols = json::array();
    for (const auto& c : a.columns) {
        json entries = json::array();
        for (const auto& e : c.entries)
            entries.push_back({{"E", num(e.E)},
                               {"m", num(e.m)},
                               {"V0", num(e.V0)},
                               {"closed_form", num(e.closed)},
                               {"numeric", num(e.numeric)},
                               {"discrepancy", num(e.discrepancy)}});
        cols.push_back({{"formula", c.formula},
                        {"median_discrepancy", num(c.median_discrepancy)},
                        {"suspect_typo", c.suspect},
                        {"entries", entries}});
    }
    json j{{"flagged", a.flagged()}, {"flags", a.flags}, {"columns", cols}};
    if (a.klein) j["klein"] = to_json(*a.klein);
    return j;
}

}  // namespace spinscat
