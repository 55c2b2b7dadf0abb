#include "spinscat/planewave.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace spinscat;

namespace {

const RepresentationSet& rep(const char* n) { return registry_lookup(n); }

}  // namespace

TEST(Dispersion, DiracRoots) {
    const auto r = dispersion(rep("dirac"), {2.0, 1.0, 0.0});
    EXPECT_NEAR(r[0].real(), std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(r[1].real(), -std::sqrt(3.0), 1e-15);
    const auto gap = dispersion(rep("dirac"), {2.0, 1.0, 1.5});
    EXPECT_NEAR(gap[0].imag(), std::sqrt(0.75), 1e-15);
    EXPECT_EQ(gap[0].real(), 0.0);
    EXPECT_NEAR(gap[1].imag(), -std::sqrt(0.75), 1e-15);
}

TEST(Dispersion, NonRelativistic) {
    const auto r = dispersion(build_eta12_rep(), {2.0, 1.0, 0.0});
    EXPECT_NEAR(r[0].real(), 2.0, 1e-15);
    EXPECT_NEAR(r[1].real(), -2.0, 1e-15);
}

TEST(Dispersion, RejectsBadKinematics) {
    EXPECT_THROW(dispersion(rep("dirac"), {2.0, -1.0, 0.0}), std::invalid_argument);
    EXPECT_THROW(dispersion(rep("dirac"), {NAN, 1.0, 0.0}), std::invalid_argument);
}

TEST(Modes, DiracFreeParticle) {
    const auto ms = modes(rep("dirac"), {2.0, 1.0, 0.0});
    ASSERT_EQ(ms.size(), 4u);
    const double r3 = std::sqrt(3.0);
    const double p[] = {r3, r3, -r3, -r3};
    const double f[] = {1, 1, -1, -1};
    const SpinLabel s[] = {SpinLabel::up, SpinLabel::down, SpinLabel::up, SpinLabel::down};
    for (int i = 0; i < 4; ++i) {
        EXPECT_NEAR(ms[i].momentum.real(), p[i], 1e-12);
        EXPECT_NEAR(ms[i].flux, f[i], 1e-12);
        EXPECT_EQ(ms[i].spin_label, s[i]);
        EXPECT_EQ(ms[i].character, Character::propagating);
    }
}

TEST(Modes, DiracSpinorsMatchTextbookForm) {
    // Upper/lower pairs (0,2) and (1,3) decouple: p a = e a + i m b.
    const double E = 2.0, m = 1.0;
    for (const auto& md : modes(rep("dirac"), {E, m, 0.0})) {
        const double p = md.momentum.real();
        for (int c = 0; c < 2; ++c)
            EXPECT_LE(std::abs(p * md.spinor(c) - E * md.spinor(c) - I_unit * m * md.spinor(c + 2)), 1e-12);
        // unit flux: |a|^2 - |b|^2 = 1 with |b|/|a| = |p - E|/m
        const double ratio = std::abs(p - E) / m;
        const double a2 = md.spinor.head<2>().squaredNorm();
        EXPECT_NEAR(a2 * (1.0 - ratio * ratio), p > 0 ? 1.0 : -1.0, 1e-12);
    }
}

TEST(Modes, AjaibSharesTheSpectrum) {
    const auto d = modes(rep("dirac"), {2.0, 1.0, 0.0});
    const auto a = modes(rep("ajaib"), {2.0, 1.0, 0.0});
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(d[i].momentum - a[i].momentum), 0.0, 1e-14);
}

TEST(Modes, GapModesAreEvanescent) {
    for (const char* n : {"dirac", "ajaib", "xi"}) {
        const auto ms = modes(rep(n), {2.0, 1.0, 1.5});
        int right = 0, left = 0;
        for (const auto& md : ms) {
            EXPECT_EQ(md.character, Character::evanescent);
            EXPECT_NE(md.momentum.imag(), 0.0);
            EXPECT_NEAR(md.spinor.norm(), 1.0, 1e-12);
            if (md.direction == Direction::rightward) {
                ++right;
                EXPECT_GT(md.momentum.imag(), 0.0);
            } else {
                ++left;
            }
        }
        EXPECT_EQ(right, 2) << n;
        EXPECT_EQ(left, 2) << n;
    }
}

TEST(Modes, ThresholdIsDefective) {
    EXPECT_THROW(modes(rep("dirac"), {1.0, 1.0, 0.0}), defective_modes_error);
    EXPECT_THROW(modes(rep("dirac"), {2.0, 1.0, 1.0}), defective_modes_error);
}

TEST(Modes, KleinZoneDirectionConventions) {
    ModeOptions flux_opt, mom_opt;
    mom_opt.convention = DirectionConvention::momentum;
    for (const char* n : {"dirac", "ajaib"}) {
        const auto f = modes(rep(n), {2.0, 1.0, 10.0}, flux_opt);
        const auto p = modes(rep(n), {2.0, 1.0, 10.0}, mom_opt);
        for (int i = 0; i < 4; ++i) {
            // group velocity opposes momentum below the potential
            EXPECT_NE(f[i].direction, p[i].direction);
            EXPECT_EQ(f[i].direction == Direction::rightward, f[i].flux > 0) << n;
        }
    }
}

TEST(Modes, RandomPointsSatisfyModeInvariants) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> uE(0.0, 8.0), um(0.2, 3.0), uV(-10.0, 10.0);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const double m = um(rng), E = m + uE(rng), V = uV(rng);
        for (const char* n : {"dirac", "ajaib", "xi"}) {
            std::vector<Mode> ms;
            try {
                ms = modes(rep(n), {E, m, V});
            } catch (const defective_modes_error&) {
                continue;
            }
            ++checked;
            const double scale = std::max({1.0, std::abs(E - V), m});
            for (const auto& md : ms) {
                EXPECT_LE(on_shell_residual(rep(n), {E, m, V}, md), 1e-9 * scale);
                if (md.character == Character::propagating) {
                    EXPECT_LE(std::abs(md.momentum.imag()), 1e-9);
                    EXPECT_NEAR(std::abs(md.flux), 1.0, 1e-9) << n << " E=" << E << " m=" << m << " V=" << V;
                } else {
                    EXPECT_NE(md.momentum.imag(), 0.0);
                }
            }
        }
    }
    EXPECT_GT(checked, 800);
}

TEST(Modes, LabelsAreDeterministic) {
    const auto a = modes(rep("xi"), {3.0, 1.0, 0.7});
    const auto b = modes(rep("xi"), {3.0, 1.0, 0.7});
    for (int i = 0; i < 4; ++i) EXPECT_EQ(a[i].spinor, b[i].spinor);
}

TEST(Modes, Sigma3BasisIsAvailable) {
    ModeOptions opt;
    opt.basis = SpinBasis::projected_sigma3;
    const auto ms = modes(rep("dirac"), {2.0, 1.0, 0.5}, opt);
    ASSERT_EQ(ms.size(), 4u);
    // for dirac, sigma3 eigenvectors: up lives on components (0, 2)
    EXPECT_LE(std::abs(ms[0].spinor(1)) + std::abs(ms[0].spinor(3)), 1e-12);
}

TEST(SelectMode, MissingModeThrows) {
    std::vector<Mode> empty;
    EXPECT_THROW(select_mode(empty, Direction::rightward, SpinLabel::up), defective_modes_error);
}
