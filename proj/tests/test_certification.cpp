#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "zerogap/certification.hpp"
#include "zerogap/errors.hpp"

using namespace zerogap;

namespace {

const double kDelta0 = std::numbers::ln2 / (2.0 * std::numbers::pi);
const double kTheoremLength = 10.0 * std::numbers::pi / std::numbers::ln2;

const ArchimedeanKernel& theorem_kernel() {
    static const ArchimedeanKernel k(selberg_minorant(-2.5 / kDelta0, 2.5 / kDelta0, kDelta0));
    return k;
}

}  // namespace

TEST(MinEll, TheoremMinorantPositiveOnImaginaryAxis) {
    const auto m = min_ell_over_mu(theorem_kernel(), SearchParams{});
    EXPECT_GT(m.value, 0.0);
    EXPECT_EQ(m.argmin.real(), 0.0);
    EXPECT_EQ(m.grid_argmin, cplx(0.0, 0.0));
    EXPECT_TRUE(m.boundary_ok);
    EXPECT_EQ(m.grid_points, 201u * 801u);
}

TEST(MinEll, GridRefinementStable) {
    SearchParams coarse, fine;
    fine.step = 0.125;
    const auto a = min_ell_over_mu(theorem_kernel(), coarse);
    const auto b = min_ell_over_mu(theorem_kernel(), fine);
    EXPECT_LT(std::abs(a.value - b.value), 1e-3);
}

TEST(MinEll, ConventionInvariantOnHalfPlane) {
    SearchParams p;
    p.re_max = 50.0;
    p.im_max = 50.0;
    const auto h = min_ell_over_mu(theorem_kernel(), p);
    p.convention = Convention::literal;
    const auto l = min_ell_over_mu(theorem_kernel(), p);
    EXPECT_NEAR(h.value, l.value, 1e-9);
}

TEST(MinEll, RequiresEvenFunction) {
    EXPECT_THROW(min_ell_over_mu(selberg_minorant(-10.0, 30.0, kDelta0), SearchParams{}), DomainError);
    SearchParams bad;
    bad.step = 0.0;
    EXPECT_THROW(min_ell_over_mu(theorem_kernel(), bad), DomainError);
}

TEST(CertifyGap, TheoremLengthCertified) {
    const auto c = certify_gap(4, kTheoremLength, kDelta0);
    EXPECT_TRUE(c.certified);
    EXPECT_GT(c.margin, 0.0);
    EXPECT_TRUE(c.positivity_ok);
    EXPECT_NEAR(c.beta - c.alpha, kTheoremLength, 1e-12);
    EXPECT_NEAR(c.transform_at_zero, 4.0 / kDelta0, 1e-10);
    EXPECT_EQ(to_json(c)["label"], "numerical evidence, grid-based");
}

TEST(CertifyGap, ShortWindowNotCertified) {
    const auto c = certify_gap(4, 20.0, kDelta0);
    EXPECT_FALSE(c.certified);
    EXPECT_LE(c.margin, 0.0);
}

TEST(CertifyGap, VerdictIndependentOfDegree) {
    SearchParams p;
    p.im_max = 100.0;
    for (double length : {kTheoremLength, 40.0}) {
        const bool reference = certify_gap(1, length, kDelta0, p).certified;
        for (int d : {2, 3, 4, 10}) EXPECT_EQ(certify_gap(d, length, kDelta0, p).certified, reference) << d;
    }
}

TEST(CertifyGap, ConventionInvariantVerdict) {
    SearchParams p;
    p.convention = Convention::literal;
    EXPECT_TRUE(certify_gap(4, kTheoremLength, kDelta0, p).certified);
    EXPECT_FALSE(certify_gap(4, 20.0, kDelta0, p).certified);
}

TEST(CertifyGap, DomainErrors) {
    EXPECT_THROW(certify_gap(4, 5.0, 0.1103178), DomainError);
    EXPECT_THROW(certify_gap(4, 1.0 / kDelta0, kDelta0), DomainError);
    EXPECT_THROW(certify_gap(0, kTheoremLength, kDelta0), DomainError);
    EXPECT_THROW(certify_gap(4, kTheoremLength, 0.2), DomainError);
}

TEST(MinimalLength, BetweenObservedGapAndTheorem) {
    const auto m = minimal_certified_length(4, kDelta0, 1e-4);
    EXPECT_LE(m.length, 45.3236015);
    EXPECT_GT(m.length, 28.992);
    EXPECT_TRUE(m.certificate.certified);
    EXPECT_LE(m.length - m.uncertified, 1e-4);
    const auto finer = minimal_certified_length(4, kDelta0, 5e-5);
    EXPECT_LT(std::abs(finer.length - m.length), 1e-3);
}
