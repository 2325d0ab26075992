#include "qg/cbnorm.hpp"
#include "qg/examples.hpp"

#include <gtest/gtest.h>

using namespace qg;

TEST(CbNorm, IdentityIsOne) {
    CbResult r = cb_norm_exact(identity_map({2}));
    EXPECT_TRUE(r.completely_positive);
    EXPECT_EQ(r.value, 1.0);
    EXPECT_NEAR(r.upper, 1.0, 1e-6);
    EXPECT_LE(r.gap, 1e-6);
}

TEST(CbNorm, TransposeIsTwo) {
    CbResult r = cb_norm_exact(transpose_map(2));
    EXPECT_NEAR(r.value, 2.0, 1e-6);
    EXPECT_LE(r.gap, 1e-6);
    EXPECT_NEAR(cb_norm_lower(transpose_map(2), 1), 1.0, 1e-9);
    EXPECT_NEAR(cb_norm_lower(transpose_map(2), 2), 2.0, 1e-6);
}

TEST(CbNorm, Z2Multiplier) {
    BlockMap f{{1, 1}, {1, 1}, Mat(2, 2), "z2"};
    f.action << 2.0, -1.0, -1.0, 2.0;
    CbResult r = cb_norm_exact(f);
    EXPECT_NEAR(r.value, 3.0, 1e-6);
    EXPECT_LE(r.gap, 1e-6);
}

TEST(CbNorm, EngineMultiplier) {
    Engine g = build_engine(group_algebra(symmetric_group3()));
    EngineTable et = bridge(g);
    FinSupp a;
    for (int l = 0; l < et.table.size(); ++l) a.blocks[l] = random_matrix(et.table.dims[l], et.table.dims[l], 5 + l);
    CbResult r = cb_norm_exact(theta_block_map(et, a));
    EXPECT_LE(r.gap, 1e-6);
    EXPECT_LE(sup_norm(a), r.value + 1e-6);
    double lo = cb_norm_lower(theta_block_map(et, a), 2);
    EXPECT_LE(lo, r.upper + 1e-6);
}

TEST(CbNorm, KacPaljutkinMultiplier) {
    Engine g = build_engine(kac_paljutkin());
    EngineTable et = bridge(g);
    FinSupp a;
    for (int l = 0; l < et.table.size(); ++l) a.blocks[l] = random_matrix(et.table.dims[l], et.table.dims[l], 9 + l);
    CbResult r = cb_norm_exact(theta_block_map(et, a));
    EXPECT_LE(r.gap, 1e-6);
    EXPECT_LE(sup_norm(a), r.value + 1e-6);
    double lo = cb_norm_lower(theta_block_map(et, a), 2);
    EXPECT_LE(lo, r.upper + 1e-6);
}

namespace {

BlockMap random_map(const std::vector<int>& dom, const std::vector<int>& cod, unsigned long seed) {
    BlockMap f{dom, cod, Mat(), "random"};
    f.action = random_matrix(f.codomain_dim(), f.domain_dim(), seed);
    return f;
}

}  // namespace

TEST(CbNorm, CompletelyPositiveCollapses) {
    // x -> K x K^* + L x L^*
    Mat K = random_matrix(2, 2, 1), L = random_matrix(2, 2, 2);
    BlockMap f{{2}, {2}, Mat(4, 4), "cp"};
    for (int c = 0; c < 4; ++c) {
        Mat x = Mat::Zero(2, 2);
        x(c / 2, c % 2) = 1.0;
        f.action.col(c) = vec(Mat(K * x * K.adjoint() + L * x * L.adjoint()));
    }
    CbResult r = cb_norm_exact(f);
    EXPECT_TRUE(r.completely_positive);
    EXPECT_NEAR(r.value, op_norm(Mat(K * K.adjoint() + L * L.adjoint())), 1e-12);
    EXPECT_NEAR(r.upper, r.value, 1e-6);
    EXPECT_NEAR(r.lower, r.value, 1e-6);
}

TEST(CbNorm, DaggerInvariance) {
    for (unsigned long s = 0; s < 4; ++s) {
        BlockMap f = random_map({1, 2}, {2}, 200 + s);
        EXPECT_NEAR(cb_norm_exact(f).value, cb_norm_exact(dagger(f)).value, 1e-6);
    }
}

TEST(CbNorm, DirectSumIsMax) {
    for (unsigned long s = 0; s < 3; ++s) {
        BlockMap f = random_map({2}, {2}, 210 + s), g = random_map({1, 1}, {1, 2}, 220 + s);
        const double a = cb_norm_exact(f).value, b = cb_norm_exact(g).value;
        EXPECT_NEAR(cb_norm_exact(direct_sum(f, g)).value, std::max(a, b), 1e-6);
    }
}

TEST(CbNorm, Submultiplicative) {
    for (unsigned long s = 0; s < 3; ++s) {
        BlockMap f = random_map({2}, {1, 2}, 230 + s), g = random_map({2, 1}, {2}, 240 + s);
        EXPECT_LE(cb_norm_exact(compose(f, g)).value, cb_norm_exact(f).value * cb_norm_exact(g).value + 1e-6);
    }
}

TEST(CbNorm, LowerBoundsAreMonotone) {
    for (unsigned long s = 0; s < 3; ++s) {
        BlockMap f = random_map({2}, {2}, 250 + s);
        const double exact = cb_norm_exact(f).value;
        double prev = 0.0;
        for (int n = 1; n <= 3; ++n) {
            const double lo = cb_norm_lower(f, n, s);
            EXPECT_GE(lo, prev - 1e-9);
            EXPECT_LE(lo, exact + 1e-6);
            prev = lo;
        }
    }
}

TEST(CbNorm, CapExceeded) {
    CbOptions opt;
    opt.cap = 3;
    try {
        cb_norm_exact(identity_map({2}), opt);
        FAIL() << "no throw";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), "CapExceeded");
    }
}

TEST(MultiplierReport, ProjectionOnKacTable) {
    const IrrTable t = group_table(symmetric_group3());
    FinSupp p = identity_on(t, {0, 1, 2});
    MultiplierReport r = multiplier_cb_report(t, p, {0, 1, 2, 3, 4, 5});
    EXPECT_FALSE(r.exact);
    EXPECT_NEAR(r.lower, 1.0, 1e-6);
    ASSERT_TRUE(r.upper.has_value());
    EXPECT_NEAR(*r.upper, 1.0, 1e-12);
    for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name;
}

TEST(MultiplierReport, ExactOnEngine) {
    Engine g = build_engine(group_algebra(cyclic_group(2)));
    EngineTable et = bridge(g);
    FinSupp a;
    a.blocks[0] = Mat::Constant(1, 1, 1.0);
    a.blocks[1] = Mat::Constant(1, 1, 3.0);
    MultiplierReport r = multiplier_cb_report(et.table, a, {0, 1}, &et);
    EXPECT_TRUE(r.exact);
    ASSERT_TRUE(r.value.has_value());
    EXPECT_NEAR(*r.value, 3.0, 1e-6);
}

TEST(Sdp, SmallestEigenvalue) {
    // min <C, X> subject to Tr X = 1, X >= 0
    for (unsigned long s = 0; s < 3; ++s) {
        RMat a = random_matrix(4, 4, 300 + s).real();
        RMat c = a + a.transpose();
        SdpProblem p;
        p.block_sizes = {4};
        p.C = {c};
        std::vector<SdpEntry> tr;
        for (int i = 0; i < 4; ++i) tr.push_back({0, i, i, 1.0});
        p.A = {tr};
        p.b = RVec::Ones(1);
        SdpSolution sol = solve_sdp(p);
        const double lmin = Eigen::SelfAdjointEigenSolver<RMat>(c).eigenvalues().minCoeff();
        EXPECT_NEAR(sol.primal, lmin, 1e-7);
        EXPECT_NEAR(sol.dual, lmin, 1e-7);
        EXPECT_LE(sol.gap, 1e-6);
        EXPECT_LE(sol.iterations, 200);
    }
}

TEST(Sdp, IterationCap) {
    SdpProblem p;
    p.block_sizes = {3};
    RMat c(3, 3);
    c << 2, 1, 0, 1, 2, 1, 0, 1, 2;
    p.C = {c};
    p.A = {{{0, 0, 0, 1.0}, {0, 1, 1, 1.0}, {0, 2, 2, 1.0}}};
    p.b = RVec::Ones(1);
    SdpOptions opt;
    opt.max_iterations = 2;
    opt.acceptable = 0.0;
    try {
        solve_sdp(p, opt);
        FAIL() << "no throw";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), "SolverDiverged");
    }
    EXPECT_LE(solve_sdp(p).gap, 1e-6);
}
