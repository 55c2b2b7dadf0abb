#pragma once

// Matrix representations of the 1D spin-1/2 kinetic/mass algebra.
//
// Every gamma product below uses the standard Dirac basis
//   gamma0 = diag(I2, -I2),  gammak = [[0, sigma_k], [-sigma_k, 0]],
//   gamma5 = i gamma0 gamma1 gamma2 gamma3 = [[0, I2], [I2, 0]].
// Subscripted gammas in the source formulas are read as these same matrices;
// the explicit sigma-block form of the Ajaib eta is only reproduced under that
// reading, and build_ajaib_eta() checks it.

#include "spinscat/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spinscat {

inline constexpr double kAlgebraTol = 1e-12;

struct Pauli {
    static Matrix2c s1() { Matrix2c m; m << 0, 1, 1, 0; return m; }
    static Matrix2c s2() { Matrix2c m; m << 0, -I_unit, I_unit, 0; return m; }
    static Matrix2c s3() { Matrix2c m; m << 1, 0, 0, -1; return m; }
    static Matrix2c id() { return Matrix2c::Identity(); }
};

inline Matrix4c block2x2(const Matrix2c& a, const Matrix2c& b, const Matrix2c& c, const Matrix2c& d) {
    Matrix4c m;
    m.block<2, 2>(0, 0) = a;
    m.block<2, 2>(0, 2) = b;
    m.block<2, 2>(2, 0) = c;
    m.block<2, 2>(2, 2) = d;
    return m;
}

struct IdentityCheck {
    std::string name;
    double residual = 0.0;
    bool pass = false;
};

/// Named identity residuals for one construction. ok() is false as soon as
/// one identity exceeds its tolerance.
struct AlgebraReport {
    std::string subject;
    std::vector<IdentityCheck> checks;
    std::vector<std::string> notes;

    void add(std::string name, double residual, double tol = kAlgebraTol) {
        checks.push_back({std::move(name), residual, residual <= tol});
    }
    bool ok() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    double max_residual() const {
        double r = 0;
        for (const auto& c : checks) r = std::max(r, c.residual);
        return r;
    }
    std::vector<std::string> violations() const {
        std::vector<std::string> v;
        for (const auto& c : checks)
            if (!c.pass) v.push_back(c.name);
        return v;
    }
};

class algebra_error : public std::runtime_error {
public:
    explicit algebra_error(AlgebraReport report)
        : std::runtime_error(describe(report)), report_(std::move(report)) {}
    const AlgebraReport& report() const noexcept { return report_; }

private:
    static std::string describe(const AlgebraReport& r) {
        std::ostringstream os;
        os << r.subject << ": algebra validation failed";
        for (const auto& c : r.checks)
            if (!c.pass) os << "; " << c.name << " residual " << c.residual;
        return os.str();
    }
    AlgebraReport report_;
};

class unknown_representation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct GammaBasis {
    Matrix4c gamma0, gamma1, gamma2, gamma3, gamma5;

    const Matrix4c& spatial(int k) const {
        switch (k) {
            case 1: return gamma1;
            case 2: return gamma2;
            default: return gamma3;
        }
    }
};

enum class RepKind { relativistic, nonrelativistic };
enum class AlgebraClass { clifford_pair, nilpotent_pair };

inline std::string_view to_string(RepKind k) {
    return k == RepKind::relativistic ? "relativistic" : "nonrelativistic";
}
inline std::string_view to_string(AlgebraClass a) {
    return a == AlgebraClass::clifford_pair ? "clifford_pair" : "nilpotent_pair";
}

/// Kinetic/mass matrix pair with its probability-current kernel and the
/// operator used to name spin channels. Plane waves satisfy
/// p u = (x1 E + x2 m) u.
struct RepresentationSet {
    std::string name;
    RepKind kind = RepKind::relativistic;
    Matrix4c x1;
    Matrix4c x2;
    Matrix4c current_op;
    Matrix4c spin_op;
    AlgebraClass algebra = AlgebraClass::clifford_pair;
};

inline const Matrix4c& identity4() {
    static const Matrix4c id = Matrix4c::Identity();
    return id;
}

inline Matrix4c sigma3_spin() {
    return block2x2(Pauli::s3(), Matrix2c::Zero(), Matrix2c::Zero(), Pauli::s3());
}

inline AlgebraReport check_gamma_basis(const GammaBasis& g) {
    AlgebraReport r;
    r.subject = "gamma basis";
    const Matrix4c& id = identity4();
    r.add("(gamma0)^2 = +I", max_abs(g.gamma0 * g.gamma0 - id));
    for (int k = 1; k <= 3; ++k) {
        const auto& gk = g.spatial(k);
        r.add("(gamma" + std::to_string(k) + ")^2 = -I", max_abs(gk * gk + id));
    }
    r.add("gamma5 = i gamma0 gamma1 gamma2 gamma3",
          max_abs(g.gamma5 - I_unit * g.gamma0 * g.gamma1 * g.gamma2 * g.gamma3));
    const Matrix4c ig5 = I_unit * g.gamma5;
    r.add("(i gamma5)^2 = -I", max_abs(ig5 * ig5 + id));
    const Matrix4c* all[] = {&g.gamma0, &g.gamma1, &g.gamma2, &g.gamma3, &g.gamma5};
    const char* names[] = {"gamma0", "gamma1", "gamma2", "gamma3", "gamma5"};
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b)
            r.add(std::string("{") + names[a] + ", " + names[b] + "} = 0", max_abs(anticommutator(*all[a], *all[b])));
    return r;
}

inline GammaBasis build_gamma_basis() {
    const Matrix2c z = Matrix2c::Zero();
    const Matrix2c id = Pauli::id();
    GammaBasis g;
    g.gamma0 = block2x2(id, z, z, -id);
    g.gamma1 = block2x2(z, Pauli::s1(), -Pauli::s1(), z);
    g.gamma2 = block2x2(z, Pauli::s2(), -Pauli::s2(), z);
    g.gamma3 = block2x2(z, Pauli::s3(), -Pauli::s3(), z);
    g.gamma5 = I_unit * g.gamma0 * g.gamma1 * g.gamma2 * g.gamma3;
    auto report = check_gamma_basis(g);
    if (!report.ok()) throw algebra_error(report);
    return g;
}

/// Identity suite of a representation set for its algebra class, plus
/// Hermiticity of the current kernel.
inline AlgebraReport validate_representation(const RepresentationSet& rep) {
    AlgebraReport r;
    r.subject = rep.name;
    const Matrix4c& id = identity4();
    const Matrix4c sq1 = rep.x1 * rep.x1;
    const Matrix4c sq2 = rep.x2 * rep.x2;
    const Matrix4c ac = anticommutator(rep.x1, rep.x2);
    if (rep.algebra == AlgebraClass::clifford_pair) {
        r.add("x1^2 = +I", max_abs(sq1 - id));
        r.add("x2^2 = -I", max_abs(sq2 + id));
        r.add("{x1, x2} = 0", max_abs(ac));
    } else {
        r.add("x1^2 = 0", max_abs(sq1));
        r.add("x2^2 = 0", max_abs(sq2));
        r.add("{x1, x2} = 2I", max_abs(ac - 2.0 * id));
    }
    r.add("current_op Hermitian", max_abs(rep.current_op - rep.current_op.adjoint()));
    return r;
}

inline RepresentationSet build_dirac_rep() {
    const auto g = build_gamma_basis();
    RepresentationSet rep;
    rep.name = "dirac";
    rep.kind = RepKind::relativistic;
    rep.algebra = AlgebraClass::clifford_pair;
    rep.x1 = g.gamma0;
    rep.x2 = I_unit * g.gamma5;
    rep.current_op = g.gamma0;
    rep.spin_op = sigma3_spin();
    auto report = validate_representation(rep);
    if (!report.ok()) throw algebra_error(report);
    return rep;
}

/// eta_D = (gamma0 + i gamma5)/sqrt(2), the nilpotent matrix behind the
/// standard non-relativistic reduction.
inline Matrix4c build_dirac_eta() {
    const auto g = build_gamma_basis();
    return (g.gamma0 + I_unit * g.gamma5) / std::sqrt(2.0);
}

struct EtaPair {
    Matrix4c eta;
    Matrix4c eta_dagger;
};

inline AlgebraReport check_nilpotent_pair(std::string subject, const Matrix4c& a, const Matrix4c& b,
                                          const std::string& na, const std::string& nb) {
    AlgebraReport r;
    r.subject = std::move(subject);
    const Matrix4c& id = identity4();
    r.add(na + "^2 = 0", max_abs(a * a));
    r.add(nb + "^2 = 0", max_abs(b * b));
    r.add("{" + na + ", " + nb + "} = 2I", max_abs(anticommutator(a, b) - 2.0 * id));
    return r;
}

/// Ajaib nilpotent eta from the gamma product, cross-checked against the
/// printed sigma-block form (-i/sqrt2) [[s1, s2], [-s2, s1]].
inline EtaPair build_ajaib_eta() {
    const auto g = build_gamma_basis();
    const double r2 = std::sqrt(2.0);
    const Matrix4c from_product = (-I_unit / r2) * (g.gamma0 * g.gamma1 * g.gamma5 + g.gamma2);
    const Matrix4c from_blocks = (-I_unit / r2) * block2x2(Pauli::s1(), Pauli::s2(), -Pauli::s2(), Pauli::s1());

    AlgebraReport r = check_nilpotent_pair("ajaib eta", from_product, from_product.adjoint(), "eta", "eta^dagger");
    r.add("gamma-product form = sigma-block form", max_abs(from_product - from_blocks));
    if (!r.ok()) throw algebra_error(r);
    return {from_product, from_product.adjoint()};
}

inline RepresentationSet build_ajaib_rep() {
    const auto g = build_gamma_basis();
    const auto [eta, eta_d] = build_ajaib_eta();
    const double r2 = std::sqrt(2.0);

    RepresentationSet rep;
    rep.name = "ajaib";
    rep.kind = RepKind::relativistic;
    rep.algebra = AlgebraClass::clifford_pair;
    rep.x1 = (eta + eta_d) / r2;
    rep.x2 = (eta - eta_d) / r2;
    rep.current_op = rep.x1;
    rep.spin_op = sigma3_spin();

    AlgebraReport r = validate_representation(rep);
    r.add("chi1 = -i gamma2", max_abs(rep.x1 - (-I_unit) * g.gamma2));
    r.add("chi2 = -i gamma0 gamma1 gamma5", max_abs(rep.x2 - (-I_unit) * g.gamma0 * g.gamma1 * g.gamma5));
    r.add("chi1^dagger = chi1", max_abs(rep.x1.adjoint() - rep.x1));
    r.add("chi2^dagger = -chi2", max_abs(rep.x2.adjoint() + rep.x2));
    if (!r.ok()) throw algebra_error(r);
    return rep;
}

struct Eta12 {
    Matrix4c eta1;
    Matrix4c eta2;
};

/// eta1 = (i/sqrt2) gamma0 (gamma5 + gamma2), eta2 = i sqrt2 (gamma2 + gamma0) gamma5,
/// exactly as written; a failed identity is reported, never patched.
inline Eta12 build_eta12() {
    const auto g = build_gamma_basis();
    const double r2 = std::sqrt(2.0);
    Eta12 e;
    e.eta1 = (I_unit / r2) * g.gamma0 * (g.gamma5 + g.gamma2);
    e.eta2 = (I_unit * r2) * (g.gamma2 + g.gamma0) * g.gamma5;
    auto r = check_nilpotent_pair("eta1/eta2", e.eta1, e.eta2, "eta1", "eta2");
    if (!r.ok()) throw algebra_error(r);
    return e;
}

/// i (gamma2 gamma3 + gamma2): current kernel shared by the eta1/eta2 and
/// xi representations.
inline Matrix4c xi_current_op() {
    const auto g = build_gamma_basis();
    return I_unit * (g.gamma2 * g.gamma3 + g.gamma2);
}

/// Non-relativistic set built on eta1/eta2: p^2 = 2 E m.
inline RepresentationSet build_eta12_rep() {
    const auto e = build_eta12();
    RepresentationSet rep;
    rep.name = "eta12";
    rep.kind = RepKind::nonrelativistic;
    rep.algebra = AlgebraClass::nilpotent_pair;
    rep.x1 = e.eta1;
    rep.x2 = e.eta2;
    rep.current_op = xi_current_op();
    rep.spin_op = sigma3_spin();
    auto r = validate_representation(rep);
    if (!r.ok()) throw algebra_error(r);
    return rep;
}

inline RepresentationSet build_xi_rep() {
    const auto e = build_eta12();
    const double r2 = std::sqrt(2.0);
    RepresentationSet rep;
    rep.name = "xi";
    rep.kind = RepKind::relativistic;
    rep.algebra = AlgebraClass::clifford_pair;
    rep.x1 = (e.eta1 + e.eta2) / r2;
    rep.x2 = (e.eta1 - e.eta2) / r2;
    rep.current_op = xi_current_op();
    rep.spin_op = sigma3_spin();
    auto r = validate_representation(rep);
    if (!r.ok()) throw algebra_error(r);
    return rep;
}

/// Levy-Leblond 2x2 nilpotent sqrt2 [[0, 0], [1, 0]]. Algebra checks only;
/// it is not a scattering representation.
inline Matrix2c build_levy_leblond_eta() {
    Matrix2c m = Matrix2c::Zero();
    m(1, 0) = std::sqrt(2.0);
    return m;
}

inline const std::vector<std::string>& registry_names() {
    static const std::vector<std::string> names{"dirac", "ajaib", "xi"};
    return names;
}

/// Validated scattering representations by name. Built once on first use.
inline const RepresentationSet& registry_lookup(std::string_view name) {
    static const std::map<std::string, RepresentationSet, std::less<>> registry{
        {"dirac", build_dirac_rep()},
        {"ajaib", build_ajaib_rep()},
        {"xi", build_xi_rep()},
    };
    if (auto it = registry.find(name); it != registry.end()) return it->second;
    std::string msg = "unknown representation '" + std::string(name) + "'; available:";
    for (const auto& n : registry_names()) msg += " " + n;
    throw unknown_representation(msg);
}

/// Every algebra identity the library relies on, in one list.
inline std::vector<AlgebraReport> full_algebra_report() {
    std::vector<AlgebraReport> out;
    const auto g = build_gamma_basis();
    out.push_back(check_gamma_basis(g));

    {
        const Matrix4c eta_d = build_dirac_eta();
        auto r = check_nilpotent_pair("dirac eta", eta_d, eta_d.adjoint(), "eta_D", "eta_D^dagger");
        out.push_back(std::move(r));
    }
    {
        const Matrix2c eta_l = build_levy_leblond_eta();
        AlgebraReport r;
        r.subject = "levy-leblond eta";
        r.add("eta_L^2 = 0", max_abs(eta_l * eta_l));
        r.add("{eta_L, eta_L^dagger} = 2I", max_abs(anticommutator(eta_l, Matrix2c(eta_l.adjoint())) -
                                                    2.0 * Matrix2c::Identity()));
        out.push_back(std::move(r));
    }
    {
        const auto [eta, eta_d] = build_ajaib_eta();
        auto r = check_nilpotent_pair("ajaib eta", eta, eta_d, "eta", "eta^dagger");
        out.push_back(std::move(r));
    }
    {
        const auto e = build_eta12();
        auto r = check_nilpotent_pair("eta1/eta2", e.eta1, e.eta2, "eta1", "eta2");
        r.notes.push_back(
            "momentum generator taken as eta1*E + eta2*m; the mass-free evolution form eta1*E + eta2 "
            "agrees only in units where m = 1");
        out.push_back(std::move(r));
    }
    for (const auto* name : {"dirac", "ajaib", "xi"}) {
        const auto& rep = registry_lookup(name);
        auto r = validate_representation(rep);
        if (rep.name == "dirac")
            r.add("current_op = x1", max_abs(rep.current_op - rep.x1));
        if (rep.name == "ajaib")
            r.add("x1 = -i gamma2", max_abs(rep.x1 + I_unit * g.gamma2));
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace spinscat
