#include "qg/corep.hpp"
#include "qg/examples.hpp"
#include "qg/hopf.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace qg;

namespace {

double worst(const ValidationReport& r) {
    double w = 0.0;
    for (const auto& c : r.checks) w = std::max(w, c.residual);
    return w;
}

const Check* find(const ValidationReport& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name) return &c;
    return nullptr;
}

std::vector<HopfData> all_examples() {
    return {function_algebra(cyclic_group(2)), function_algebra(symmetric_group3()), group_algebra(cyclic_group(2)),
            group_algebra(symmetric_group3()),  kac_paljutkin(),                     trivial_hopf()};
}

std::vector<int> sorted_blocks(const HopfData& d) {
    auto b = wedderburn(d, haar_state(d)).dims;
    std::sort(b.begin(), b.end());
    return b;
}

// Delta composed with the flip equals Delta
double cocommutativity(const HopfData& d) {
    const int n = d.dim;
    Mat flipped = swap_op(n, n) * d.comult;
    return max_abs(Mat(flipped - d.comult));
}

double commutativity(const HopfData& d) {
    const int n = d.dim;
    double r = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r = std::max(r, max_abs(Vec(d.mult.col(i * n + j) - d.mult.col(j * n + i))));
    return r;
}

}  // namespace

TEST(Hopf, FunctionAlgebraZ2IsExact) {
    ValidationReport r = validate_hopf(function_algebra(cyclic_group(2)));
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(worst(r), 0.0);
}

TEST(Hopf, BrokenCoproductNamesCoassociativity) {
    HopfData d = function_algebra(cyclic_group(2));
    // Delta(d_e) = d_e (x) d_e + d_g (x) d_e
    std::swap(d.comult(1 * 2 + 1, 0), d.comult(1 * 2 + 0, 0));
    ValidationReport r = validate_hopf(d);
    EXPECT_FALSE(r.pass());
    const Check* c = find(r, "coassociativity");
    ASSERT_NE(c, nullptr);
    EXPECT_FALSE(c->pass);
    try {
        require_valid(d);
        FAIL() << "no throw";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), "AxiomViolation");
    }
}

TEST(Hopf, ShapeErrors) {
    HopfData d = function_algebra(cyclic_group(2));
    d.mult = Mat::Zero(2, 3);
    try {
        validate_hopf(d);
        FAIL() << "no throw";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), "DimensionMismatch");
    }
}

TEST(Hopf, AllExamplesValid) {
    for (const auto& d : all_examples()) {
        ValidationReport r = validate_hopf(d);
        EXPECT_TRUE(r.pass()) << d.basis[0] << " " << (r.first_failure() ? r.first_failure()->name : "");
        EXPECT_LE(worst(r), 1e-10);
    }
}

TEST(Haar, FunctionAlgebraIsUniform) {
    HaarData h = haar_state(function_algebra(symmetric_group3()));
    for (int i = 0; i < 6; ++i) EXPECT_NEAR(std::abs(h.h(i) - 1.0 / 6.0), 0.0, 1e-12);
}

TEST(Haar, GroupAlgebraPicksIdentity) {
    HaarData h = haar_state(group_algebra(cyclic_group(2)));
    EXPECT_NEAR(std::abs(h.h(0) - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(h.h(1)), 0.0, 1e-12);
}

TEST(Haar, InvariantTracialFaithful) {
    for (const auto& d : all_examples()) {
        HaarData h = haar_state(d);
        EXPECT_LE(h.left_residual, 1e-10);
        EXPECT_LE(h.right_residual, 1e-10);
        EXPECT_LE(h.trace_residual, 1e-10);
        EXPECT_GT(h.min_eig, 0.0);
        EXPECT_EQ(h.gns_dim, d.dim);
        EXPECT_NEAR(std::abs(cd(h.h * d.unit) - 1.0), 0.0, 1e-12);
        // h(xy) = h(yx) on random pairs
        for (unsigned long s = 0; s < 3; ++s) {
            Vec x = random_matrix(d.dim, 1, 2 * s).col(0), y = random_matrix(d.dim, 1, 2 * s + 1).col(0);
            EXPECT_LE(std::abs(cd(h.h * d.mul(x, y)) - cd(h.h * d.mul(y, x))), 1e-10);
        }
    }
}

TEST(KacTakesaki, UnitaryAndPentagon) {
    for (const auto& d : all_examples()) {
        UnitaryTensor w = multiplicative_unitary(d, haar_state(d));
        EXPECT_LE(w.unitarity, 1e-10);
        EXPECT_LE(w.pentagon, 1e-10);
    }
}

TEST(KacTakesaki, FunctionAlgebraZ2IsPermutation) {
    HopfData d = function_algebra(cyclic_group(2));
    UnitaryTensor w = multiplicative_unitary(d, haar_state(d));
    ASSERT_EQ(w.W.rows(), 4);
    for (int i = 0; i < 4; ++i) {
        int ones = 0;
        for (int j = 0; j < 4; ++j) {
            const double a = std::abs(w.W(i, j));
            EXPECT_TRUE(a < 1e-12 || std::abs(w.W(i, j) - 1.0) < 1e-12);
            ones += a > 0.5;
        }
        EXPECT_EQ(ones, 1);
    }
    EXPECT_GT(max_abs(Mat(w.W - Mat::Identity(4, 4))), 0.5);
}

TEST(KacTakesaki, PentagonDetectsCorruption) {
    HopfData d = kac_paljutkin();
    UnitaryTensor w = multiplicative_unitary(d, haar_state(d));
    Mat bad = w.W;
    bad.row(3) *= cd(0.0, 1.0);  // still unitary
    EXPECT_LE(unitarity_residual(bad), 1e-10);
    EXPECT_GT(pentagon_residual(bad, w.n), 1e-3);
}

TEST(Dual, GroupDuality) {
    Engine cs3 = build_engine(function_algebra(symmetric_group3()));
    EXPECT_TRUE(validate_hopf(cs3.dual.data).pass());
    EXPECT_EQ(cs3.dual.data.dim, 6);
    EXPECT_LE(cocommutativity(cs3.dual.data), 1e-10);
    EXPECT_GT(commutativity(cs3.dual.data), 0.1);
    EXPECT_EQ(sorted_blocks(cs3.dual.data), (std::vector<int>{1, 1, 2}));

    Engine gs3 = build_engine(group_algebra(symmetric_group3()));
    EXPECT_LE(commutativity(gs3.dual.data), 1e-10);
    EXPECT_EQ(sorted_blocks(gs3.dual.data), (std::vector<int>(6, 1)));
    EXPECT_EQ(sorted_blocks(group_algebra(symmetric_group3())), (std::vector<int>{1, 1, 2}));
}

TEST(Dual, Biduality) {
    for (const auto& d : all_examples()) {
        BidualIso iso = biduality(build_engine(d));
        EXPECT_LE(iso.residual, 1e-8);
        for (const auto& c : iso.checks) EXPECT_TRUE(c.pass) << c.name;
    }
}

TEST(Dual, AntipodeFromW) {
    for (const auto& d : all_examples()) {
        Engine g = build_engine(d);
        Mat s = antipode_from_w(g.dual, g.w);
        EXPECT_LE(max_abs(Mat(s - g.dual.data.antipode)), 1e-9);
        // finite quantum groups are Kac
        EXPECT_LE(max_abs(Mat(s * s - Mat::Identity(s.rows(), s.cols()))), 1e-9);
    }
    HopfData kp = kac_paljutkin();
    EXPECT_LE(max_abs(Mat(kp.antipode * kp.antipode - Mat::Identity(8, 8))), 1e-12);
}

TEST(Dual, GroupAntipodeIsInversion) {
    // the dual of C(G) is C[G]: S permutes the basis, each element to an element of the same order
    Engine g = build_engine(function_algebra(symmetric_group3()));
    Mat s = g.dual.data.antipode;
    Mat g2 = g.dual.data.antipode * g.dual.data.antipode;
    EXPECT_LE(max_abs(Mat(g2 - Mat::Identity(6, 6))), 1e-9);
    // S is antimultiplicative
    const HopfData& a = g.dual.data;
    for (unsigned long k = 0; k < 3; ++k) {
        Vec x = random_matrix(6, 1, 40 + k).col(0), y = random_matrix(6, 1, 50 + k).col(0);
        EXPECT_LE(max_abs(Vec(s * a.mul(x, y) - a.mul(s * y, s * x))), 1e-9);
    }
}

TEST(Classify, IdentityThetaAndConjugation) {
    Engine g = build_engine(function_algebra(symmetric_group3()));
    EngineTable et = bridge(g);
    const int n = g.dual.data.dim;

    L2Classification id = classify_l2_implementation(g, Mat::Identity(n, n));
    EXPECT_EQ(id.cls, L2Class::Central);
    EXPECT_LE(max_abs(Mat(id.T - Mat::Identity(id.T.rows(), id.T.cols()))), 1e-9);

    FinSupp a;
    for (int l = 0; l < et.table.size(); ++l) a.blocks[l] = random_matrix(et.table.dims[l], et.table.dims[l], 60 + l);
    L2Classification th = classify_l2_implementation(g, et.theta_formula(multiplier_involution(et.table, a)));
    EXPECT_TRUE(th.left_centralizer);
    EXPECT_LE(max_abs(Mat(th.T - g.pi(et.to_algebra(l2_implement(et.table, a))))), 1e-8);

    Mat u = polar_unitary(g.dual.op(random_matrix(n, 1, 77).col(0)));
    Mat phi(n, n);
    for (int k = 0; k < n; ++k) phi.col(k) = g.dual.coords(Mat(u * g.dual.ops[k] * u.adjoint()));
    EXPECT_EQ(classify_l2_implementation(g, phi).cls, L2Class::None);
}

TEST(Products, OppositeAndTensor) {
    HopfData op = opposite(kac_paljutkin());
    EXPECT_TRUE(validate_hopf(op).pass());
    HopfData t = tensor_product(function_algebra(cyclic_group(2)), group_algebra(cyclic_group(3)));
    EXPECT_EQ(t.dim, 6);
    EXPECT_TRUE(validate_hopf(t).pass());
    UnitaryTensor w = multiplicative_unitary(t, haar_state(t));
    EXPECT_LE(w.pentagon, 1e-10);
}

TEST(Trivial, EverythingPasses) {
    HopfData d = trivial_hopf();
    Engine g = build_engine(d);
    EXPECT_EQ(g.dual.data.dim, 1);
    EXPECT_LE(biduality(g).residual, 1e-12);
    EXPECT_EQ(classify_l2_implementation(g, Mat::Identity(1, 1)).cls, L2Class::Central);
}
