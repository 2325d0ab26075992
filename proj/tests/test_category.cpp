#include "qg/category.hpp"
#include "qg/examples.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qg;

namespace {

std::vector<cd> delta(int n, int k) {
    std::vector<cd> v(n, 0.0);
    v[k] = 1.0;
    return v;
}

std::vector<cd> random_vec(int n, std::mt19937& rng) {
    std::normal_distribution<double> nd;
    std::vector<cd> v(n);
    for (auto& x : v) x = cd(nd(rng), nd(rng));
    return v;
}

double dist(const std::vector<cd>& a, const std::vector<cd>& b) {
    double r = 0.0;
    for (size_t k = 0; k < a.size(); ++k) r = std::max(r, std::abs(a[k] - b[k]));
    return r;
}

}  // namespace

TEST(Fusion, BundledRingsPass) {
    for (const FusionRing& r : {rep_cyclic(2), rep_cyclic(5), rep_s3(), temperley_lieb(6, 1.0),
                                temperley_lieb(6, 0.8), temperley_lieb(4, 1.0, true)}) {
        ValidationReport rep = verify_fusion_ring(r);
        EXPECT_TRUE(rep.pass()) << r.labels.size() << " labels: " << rep.first_failure()->name;
    }
}

TEST(Fusion, TemperleyLiebDimensions) {
    FusionRing one = temperley_lieb(5, 1.0);
    for (int n = 0; n <= 5; ++n) EXPECT_DOUBLE_EQ(one.dq(n), n + 1);
    FusionRing r = temperley_lieb(8, 0.8);
    for (int n = 1; n < 8; ++n) EXPECT_NEAR(r.dq(1) * r.dq(n), r.dq(n - 1) + r.dq(n + 1), 1e-9);
    // q and 1/q give the same ring
    FusionRing s = temperley_lieb(8, 1.25);
    EXPECT_LE((r.dq - s.dq).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Fusion, BrokenRingReportsFrobenius) {
    FusionRing r = rep_s3();
    r.N.erase({2, 2, 1});
    ValidationReport rep = verify_fusion_ring(r);
    ASSERT_FALSE(rep.pass());
    bool frob = false;
    for (const auto& c : rep.checks)
        if (c.name == "Frobenius reciprocity") frob = !c.pass;
    EXPECT_TRUE(frob);
}

TEST(Fusion, RingFromEngineTable) {
    Engine g = build_engine(group_algebra(symmetric_group3()));
    EngineTable et = bridge(g);
    FusionRing r = fusion_ring_of(et.table);
    EXPECT_TRUE(verify_fusion_ring(r).pass());
    std::vector<double> dq(r.dq.data(), r.dq.data() + r.size());
    std::sort(dq.begin(), dq.end());
    EXPECT_NEAR(dq[0], 1.0, 1e-12);
    EXPECT_NEAR(dq[1], 1.0, 1e-12);
    EXPECT_NEAR(dq[2], 2.0, 1e-12);
}

TEST(Fusion, QuantumTrace) {
    IrrTable t;
    t.labels = {"e", "u"};
    t.dims = {1, 2};
    const double q = 0.7;
    t.rho = {RVec::Ones(1), RVec(2)};
    t.rho[1] << q, 1.0 / q;
    t.conj = {0, 1};
    t.conj_intertwiner.assign(2, std::nullopt);
    FinSupp f;
    f.blocks[1] = Mat::Zero(2, 2);
    f.blocks[1](0, 0) = 1.0;
    EXPECT_NEAR(std::abs(quantum_trace(t, f)[1] - cd(q)), 0.0, 1e-15);
    FinSupp one = identity_on(t, {0, 1});
    auto tr = quantum_trace(t, one);
    EXPECT_NEAR(tr[1].real(), t.dim_q(1), 1e-15);
    // b is scalar on the block
    FinSupp a, b;
    a.blocks[1] = Mat::Identity(2, 2) + Mat(RMat::Ones(2, 2).cast<cd>()).triangularView<Eigen::StrictlyUpper>().toDenseMatrix();
    b.blocks[1] = Mat::Identity(2, 2) * 3.0;
    EXPECT_LE(quantum_trace_commutator(t, a, b), 1e-14);
}

TEST(Fusion, MultPair) {
    FusionRing r = temperley_lieb(6, 0.8);
    const int n = r.size();
    CatMultiplier one{std::vector<cd>(n, 1.0), std::nullopt};
    std::mt19937 rng(3);
    auto w = random_vec(n, rng);
    cd s = 0.0;
    for (int k = 0; k < n; ++k) s += r.dq(k) * w[k];
    EXPECT_NEAR(std::abs(mult_pair(r, one, w) - s), 0.0, 1e-12);
    CatMultiplier th{random_vec(n, rng), std::nullopt};
    EXPECT_NEAR(std::abs(mult_pair(r, th, delta(n, 0)) - th.theta[0]), 0.0, 1e-14);
    for (int it = 0; it < 100; ++it) {
        auto a = random_vec(n, rng), b = random_vec(n, rng);
        CatMultiplier t{random_vec(n, rng), std::nullopt};
        cd x(0.3, -1.1);
        std::vector<cd> comb(n);
        for (int k = 0; k < n; ++k) comb[k] = a[k] + x * b[k];
        EXPECT_NEAR(std::abs(mult_pair(r, t, comb) - mult_pair(r, t, a) - x * mult_pair(r, t, b)), 0.0, 1e-10);
        EXPECT_LE(std::abs(mult_pair(r, t, a)), weighted_l1(r, a) * sup_norm(t) + 1e-12);
    }
}

TEST(Fusion, CornerAlgebra) {
    FusionRing z2 = rep_cyclic(2);
    EXPECT_LE(dist(corner_multiply(z2, delta(2, 1), delta(2, 1)), delta(2, 0)), 0.0);
    FusionRing tl = temperley_lieb(6, 0.8);
    const int n = tl.size();
    std::vector<cd> sq = corner_multiply(tl, delta(n, 1), delta(n, 1));
    std::vector<cd> want = delta(n, 0);
    want[2] = 1.0;
    EXPECT_LE(dist(sq, want), 0.0);
    EXPECT_NEAR(std::abs(corner_trace(tl, sq) - cd(1.0)), 0.0, 0.0);

    std::mt19937 rng(5);
    for (const FusionRing& r : {rep_s3(), rep_cyclic(4), temperley_lieb(4, 1.0, true)}) {
        const int m = r.size();
        auto e = delta(m, r.unit);
        for (int it = 0; it < 10; ++it) {
            auto f = random_vec(m, rng), g = random_vec(m, rng), h = random_vec(m, rng);
            EXPECT_LE(dist(corner_multiply(r, e, f), f), 1e-14);
            EXPECT_LE(dist(corner_multiply(r, corner_multiply(r, f, g), h), corner_multiply(r, f, corner_multiply(r, g, h))),
                      1e-10);
            EXPECT_NEAR(std::abs(corner_trace(r, corner_multiply(r, f, g)) - corner_trace(r, corner_multiply(r, g, f))),
                        0.0, 1e-10);
        }
    }
}

TEST(Fusion, CornerPairingMatchesMultPair) {
    std::mt19937 rng(9);
    for (const FusionRing& r : {rep_s3(), temperley_lieb(5, 0.8), temperley_lieb(3, 1.0, true)}) {
        const int n = r.size();
        CatMultiplier th{random_vec(n, rng), std::nullopt};
        for (int k = 0; k < n; ++k) {
            if (!r.closed(r.conj[k], k)) continue;
            std::vector<cd> g = delta(n, r.conj[k]);
            g[r.conj[k]] = r.dq(k);
            EXPECT_NEAR(std::abs(corner_pairing(r, th, delta(n, k), g) - mult_pair(r, th, delta(n, k))), 0.0, 1e-12);
        }
    }
}

TEST(Fusion, TruncationGuard) {
    FusionRing r = temperley_lieb(3, 0.8);
    try {
        corner_multiply(r, delta(4, 2), delta(4, 3));
        ADD_FAILURE() << "product outside the truncation accepted";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), "TruncationExceeded");
    }
}

TEST(Fusion, BoundCheck) {
    CatMultiplier m{{1.0, cd(0.0, -2.0)}, 1.5};
    EXPECT_THROW(check_bound(m), Error);
    m.cb_bound = 2.0;
    EXPECT_NO_THROW(check_bound(m));
}

TEST(CentralCorrespondence, ScalesBlocks) {
    Engine g = build_engine(group_algebra(symmetric_group3()));
    EngineTable et = bridge(g);
    const IrrTable& t = et.table;
    CatMultiplier m{{cd(0.5, 0.1), cd(-2.0), cd(0.0, 1.0)}, std::nullopt};
    FinSupp c = central_correspondence(t, m);
    EXPECT_TRUE(is_central(c));

    // theta_apply multiplies every block by theta
    PolElement x;
    for (int a = 0; a < t.size(); ++a) x.coeffs[a] = random_matrix(t.dims[a], t.dims[a], 40 + a);
    PolElement y = theta_apply(t, c, x);
    for (int a = 0; a < t.size(); ++a) EXPECT_LE(max_abs(Mat(y.coeffs[a] - m.theta[a] * x.coeffs[a])), 1e-14);

    // engine: Theta^l of the output is block-scalar on the coefficients
    Mat th = et.theta_engine(et.to_algebra(c));
    Mat inblocks = et.dual_to_u * th * et.u_to_dual;
    Mat want = Mat::Zero(inblocks.rows(), inblocks.cols());
    int off = 0;
    for (int a = 0; a < t.size(); ++a) {
        const int k = t.dims[a] * t.dims[a];
        want.block(off, off, k, k) = m.theta[a] * Mat::Identity(k, k);
        off += k;
    }
    EXPECT_LE(max_abs(Mat(inblocks - want)), 1e-10);

    // algebra map
    CatMultiplier m2{{cd(1.5), cd(0.0, -1.0), cd(3.0)}, std::nullopt}, prod = m;
    for (int a = 0; a < 3; ++a) prod.theta[a] *= m2.theta[a];
    EXPECT_LE(max_abs(add(multiply(c, central_correspondence(t, m2)), central_correspondence(t, prod), -1.0)), 1e-14);

    CatMultiplier d{{0.0, 1.0, 0.0}, std::nullopt};
    PolElement z = theta_apply(t, central_correspondence(t, d), x);
    EXPECT_LE(max_abs(z.coeffs[0]), 0.0);
    EXPECT_LE(max_abs(z.coeffs[2]), 0.0);
}

TEST(DrinfeldMult, Z2) {
    DrinfeldDouble dd = drinfeld_double(function_algebra(cyclic_group(2)));
    const cd t(0.4, -0.3);
    DrinfeldMultiplier nm = drinfeld_mult(dd, {{1.0, t}, std::nullopt});
    EXPECT_LE(nm.residual, 1e-9);
    int ones = 0, ts = 0;
    for (int k = 0; k < nm.eigenvalues.size(); ++k) {
        if (std::abs(nm.eigenvalues(k) - cd(1.0)) < 1e-14) ++ones;
        if (std::abs(nm.eigenvalues(k) - t) < 1e-14) ++ts;
    }
    EXPECT_EQ(ones, 2);
    EXPECT_EQ(ts, 2);
    DrinfeldMultiplier id = drinfeld_mult(dd, {{1.0, 1.0}, std::nullopt});
    EXPECT_LE(id.residual, 1e-9);
    EXPECT_LE(max_abs(Vec(id.eigenvalues - Vec::Ones(4))), 0.0);
    EXPECT_THROW(drinfeld_mult(dd, {{1.0}, std::nullopt}), Error);
}

TEST(DrinfeldMult, S3) {
    DrinfeldDouble dd = drinfeld_double(group_algebra(symmetric_group3()), false);
    for (const auto& c : dd.d.checks) EXPECT_TRUE(c.pass) << c.name << " " << c.residual;
    DrinfeldMultiplier nm = drinfeld_mult(dd, {{cd(0.9), cd(-0.2, 0.5), cd(0.3, 0.1)}, std::nullopt});
    EXPECT_EQ(nm.tags.size(), 36u);
    EXPECT_LE(nm.residual, 1e-9);
}
