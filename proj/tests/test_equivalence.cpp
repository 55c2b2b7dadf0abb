#include "spinscat/equivalence.hpp"

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include <random>

using namespace spinscat;

namespace {

const RepresentationSet& dirac() { return registry_lookup("dirac"); }
const RepresentationSet& ajaib() { return registry_lookup("ajaib"); }
const RepresentationSet& xi() { return registry_lookup("xi"); }

}  // namespace

TEST(FindIntertwiner, SelfMapIsIdentity) {
    const auto r = find_intertwiner({{dirac().x1, dirac().x1}, {dirac().x2, dirac().x2}});
    ASSERT_TRUE(r.exists);
    EXPECT_LE(max_abs(r.intertwiner - r.intertwiner(0, 0) * Matrix4c::Identity()), 1e-12);
    EXPECT_TRUE(r.unitary);
}

TEST(FindIntertwiner, DiracToAjaibIsUnitary) {
    const auto r = compare_representations(dirac(), ajaib());
    ASSERT_TRUE(r.exists);
    EXPECT_TRUE(r.unitary);
    EXPECT_LE(r.unitarity_residual, 1e-9);
    const double s = norm_inf(r.intertwiner);
    EXPECT_LE(max_abs(r.intertwiner * dirac().x1 - ajaib().x1 * r.intertwiner), 1e-9 * s);
    EXPECT_LE(max_abs(r.intertwiner * dirac().x2 - ajaib().x2 * r.intertwiner), 1e-9 * s);
}

TEST(FindIntertwiner, DiracToXiIsSimilarityOnly) {
    const auto r = compare_representations(dirac(), xi());
    ASSERT_TRUE(r.exists);
    EXPECT_FALSE(r.unitary);
    EXPECT_GT(r.unitarity_residual, 1e-3);
    EXPECT_GT(max_abs(r.metric / r.metric(0, 0) - Matrix4c::Identity()), 1e-3);
    // metric is Hermitian positive-definite
    EXPECT_LE(max_abs(r.metric - r.metric.adjoint()), 1e-12 * norm_inf(r.metric));
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(r.metric);
    EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
    EXPECT_LE(r.pseudo_hermiticity_residual, 1e-9);
}

TEST(FindIntertwiner, InequivalentSetsHaveNoSolution) {
    // the identity is similar only to itself
    Matrix4c z = Matrix4c::Zero();
    z(0, 0) = 1.0;
    const auto r = find_intertwiner({{Matrix4c::Identity(), z}});
    EXPECT_FALSE(r.exists);
}

TEST(FindIntertwiner, RejectsWrongShapes) {
    EXPECT_THROW(find_intertwiner({{ComplexMatrix::Identity(3, 3), ComplexMatrix::Identity(3, 3)}}), dimension_error);
    EXPECT_THROW(find_intertwiner({}), std::invalid_argument);
}

TEST(FindIntertwiner, RandomSimilaritiesAreRecovered) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 20; ++trial) {
        Matrix4c s;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) s(i, j) = cplx(g(rng), g(rng));
        const Matrix4c si = s.inverse();
        const Matrix4c b1 = s * dirac().x1 * si, b2 = s * dirac().x2 * si;
        const auto r = find_intertwiner({{dirac().x1, b1}, {dirac().x2, b2}});
        ASSERT_TRUE(r.exists);
        const double sc = norm_inf(r.intertwiner);
        EXPECT_LE(max_abs(r.intertwiner * dirac().x1 - b1 * r.intertwiner), 1e-9 * sc * norm_inf(b1));
        EXPECT_LE(max_abs(r.intertwiner * dirac().x2 - b2 * r.intertwiner), 1e-9 * sc * norm_inf(b2));
    }
}

TEST(PseudoHermiticity, DiracWithIdentityMetric) {
    EXPECT_LE(pseudo_hermiticity_check(dirac(), Matrix4c::Identity(), 2.0, 1.0), 1e-15);
}

TEST(PseudoHermiticity, XiNeedsItsMetric) {
    const auto r = compare_representations(dirac(), xi());
    EXPECT_LE(pseudo_hermiticity_check(xi(), r.metric, 2.0, 1.0), 1e-9);
    EXPECT_GT(pseudo_hermiticity_check(xi(), Matrix4c::Identity(), 2.0, 1.0), 1e-3);
}

TEST(PseudoHermiticity, RejectsBadMetrics) {
    Matrix4c nh = Matrix4c::Identity();
    nh(0, 1) = 1.0;
    EXPECT_THROW(pseudo_hermiticity_check(dirac(), nh, 2.0, 1.0), metric_error);
    Matrix4c indefinite = Matrix4c::Identity();
    indefinite(3, 3) = -1.0;
    EXPECT_THROW(pseudo_hermiticity_check(dirac(), indefinite, 2.0, 1.0), metric_error);
}

TEST(RealityCheck, RealSpectra) {
    EXPECT_LE(reality_check(dirac(), 2.0, 1.0), 1e-10);
    EXPECT_LE(reality_check(xi(), 2.0, 1.0), 1e-10);
    EXPECT_LE(reality_check(ajaib(), 2.0, 1.0), 1e-10);
    for (const auto* rep : {&dirac(), &ajaib(), &xi()}) EXPECT_EQ(reality_check(*rep, 1.0, 1.0), 0.0);
    EXPECT_THROW(reality_check(dirac(), 0.5, 1.0), std::domain_error);
}

TEST(Metric, GUnitarySymmetriesCommuteWithTheGenerator) {
    // Elements X of the commutant of {xi1, xi2} made g-anti-self-adjoint
    // exponentiate to V with V^dagger g V = g and [V, H] = 0.
    const auto r = compare_representations(dirac(), xi());
    const Matrix4c g = r.metric;
    const Matrix4c gi = g.inverse();
    const ComplexMatrix commutant = nullspace(intertwiner_system({{xi().x1, xi().x1}, {xi().x2, xi().x2}}), 1e-9);
    ASSERT_EQ(commutant.cols(), 4);

    std::mt19937_64 rng(99);
    std::normal_distribution<double> n01;
    const Matrix4c h = energy_hamiltonian(xi(), std::sqrt(3.0), 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        ComplexVector c(4);
        for (int j = 0; j < 4; ++j) c(j) = cplx(n01(rng), n01(rng));
        const Matrix4c cm = unvec(commutant * c, 4);
        const Matrix4c x = 0.5 * (cm - gi * cm.adjoint() * g);
        const Matrix4c v = x.exp();
        EXPECT_LE(max_abs(v.adjoint() * g * v - g), 1e-9 * norm_inf(g) * std::max(1.0, norm_inf(v) * norm_inf(v)));
        EXPECT_LE(max_abs(v * h - h * v), 1e-9 * norm_inf(v) * norm_inf(h));
    }
}
