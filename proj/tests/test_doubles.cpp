#include "qg/doubles.hpp"
#include "qg/examples.hpp"

#include <gtest/gtest.h>

using namespace qg;

namespace {

Vec random_functional(int n, unsigned long seed) { return random_matrix(n, 1, seed).col(0); }

bool all_pass(const DoubleCrossed& d) {
    for (const auto& c : d.checks)
        if (!c.pass) return false;
    return true;
}

double check_residual(const DoubleCrossed& d, const std::string& name) {
    for (const auto& c : d.checks)
        if (c.name == name) return c.residual;
    return -1.0;
}

Matching trivial_matching(const HopfData& a, const HopfData& b) {
    return {a, b, Mat::Identity(static_cast<long>(a.dim) * b.dim, static_cast<long>(a.dim) * b.dim)};
}

}  // namespace

TEST(Doubles, DrinfeldZ2) {
    DrinfeldDouble dd = drinfeld_double(function_algebra(cyclic_group(2)));
    const DoubleCrossed& d = dd.d;
    EXPECT_EQ(d.data.dim, 4);
    EXPECT_TRUE(all_pass(d));
    EXPECT_LE(check_residual(d, "W_m equals engine W"), 1e-9);
    EXPECT_LE(check_residual(d, "W_1^op equals W"), 1e-9);
    EXPECT_LE(check_residual(d, "pentagon"), 1e-9);
    // commutative and cocommutative
    const int n = 4;
    double comm = 0.0, cocomm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            comm = std::max(comm, max_abs(Vec(d.data.mult.col(i * n + j) - d.data.mult.col(j * n + i))));
    cocomm = max_abs(Mat(swap_op(n, n) * d.data.comult - d.data.comult));
    EXPECT_LE(comm, 1e-12);
    EXPECT_LE(cocomm, 1e-12);
}

TEST(Doubles, TrivialMatchingIsDirectProduct) {
    HopfData a = function_algebra(cyclic_group(3)), b = group_algebra(cyclic_group(3));
    DoubleCrossed d = build_double_crossed(trivial_matching(a, b));
    EXPECT_TRUE(all_pass(d));
    HopfData direct = tensor_product(opposite(a), b);
    EXPECT_LE(max_abs(Mat(direct.comult - d.data.comult)), 1e-12);
}

TEST(Doubles, SecondFactorTrivialGivesOpposite) {
    HopfData a = group_algebra(symmetric_group3());
    DoubleCrossed d = build_double_crossed(trivial_matching(a, trivial_hopf()));
    EXPECT_LE(max_abs(Mat(d.data.comult - opposite(a).comult)), 1e-12);
}

TEST(Doubles, GammaEmbeddings) {
    DrinfeldDouble dd = drinfeld_double(function_algebra(cyclic_group(2)));
    GammaReport r = gamma_embeddings_check(dd.d);
    EXPECT_LE(r.gamma1, 1e-10);
    EXPECT_LE(r.gamma2, 1e-10);
    EXPECT_LE(r.membership, 1e-10);

    DoubleCrossed t = build_double_crossed(trivial_matching(function_algebra(cyclic_group(3)),
                                                            group_algebra(cyclic_group(3))));
    GammaReport rt = gamma_embeddings_check(t);
    EXPECT_LE(std::max(rt.gamma1, rt.gamma2), 1e-10);
}

TEST(Doubles, TrivialMatchingLegsCommute) {
    HopfData c2 = function_algebra(cyclic_group(2));
    DoubleCrossed d = build_double_crossed(trivial_matching(c2, c2));
    Mat x = d.e1->dual.ops.back(), y = d.e2->dual.ops.back();
    Mat a = gamma1(d, x), b = gamma2(d, y);
    EXPECT_LE(max_abs(Mat(a * b - b * a)), 1e-12);
}

TEST(Doubles, CorruptedMatchingFails) {
    DrinfeldDouble dd = drinfeld_double(function_algebra(cyclic_group(2)));
    DoubleCrossed d = dd.d;
    // the bicharacter with one phase flipped in place of the W_m unitary
    d.z = d.match.z;
    d.z(2, 3) *= -1.0;
    try {
        gamma_embeddings_check(d);
        ADD_FAILURE() << "corrupted Z passed";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), "IntertwiningFailure");
        EXPECT_NE(std::string(e.what()).find("gamma_2"), std::string::npos);
    }
}

TEST(Doubles, FourierFactorization) {
    DrinfeldDouble dd = drinfeld_double(function_algebra(cyclic_group(2)));
    for (unsigned long s = 0; s < 5; ++s) {
        Factorization f = fourier_factorization(dd.d, random_functional(2, 10 + s), random_functional(2, 20 + s));
        EXPECT_LE(f.residual, 1e-10);
    }
    DoubleCrossed t = build_double_crossed(trivial_matching(function_algebra(cyclic_group(3)),
                                                            group_algebra(cyclic_group(3))));
    for (unsigned long s = 0; s < 5; ++s) {
        Factorization f = fourier_factorization(t, random_functional(3, 30 + s), random_functional(3, 40 + s));
        EXPECT_LE(f.residual, 1e-10);
    }
    // counit slice on the first factor
    Vec eps = t.match.g1.counit.transpose();
    Factorization f = fourier_factorization(t, eps, random_functional(3, 50));
    Mat l2 = gamma2(t, slice_first(t.e2->w.W, functional_density(*t.e2, random_functional(3, 50)), 3, 3));
    EXPECT_LE(max_abs(Mat(f.lhs - l2)), 1e-10);
}

TEST(Doubles, MultiplierFormulas) {
    DrinfeldDouble dd = drinfeld_double(function_algebra(cyclic_group(2)));
    for (int side = 1; side <= 2; ++side)
        for (unsigned long s = 0; s < 3; ++s) {
            MultiplierPair p = double_multiplier_formulas(dd.d, random_functional(2, 60 + s + 10 * side), side);
            EXPECT_LE(p.residual, 1e-9) << "side " << side;
        }
    Vec eps = dd.d.match.g1.counit.transpose();
    MultiplierPair p = double_multiplier_formulas(dd.d, eps, 1);
    EXPECT_LE(max_abs(Mat(p.engine.action - Mat::Identity(4, 4))), 1e-9);
}

TEST(Doubles, MultiplierFormulasNonCommutative) {
    // D(H) for H = group algebra of S3 is too large for the engine; use the
    // trivial matching of the S3 group algebra with C(Z2).
    DoubleCrossed d = build_double_crossed(
        trivial_matching(group_algebra(symmetric_group3()), function_algebra(cyclic_group(2))));
    for (int side = 1; side <= 2; ++side) {
        const int n = side == 1 ? 6 : 2;
        MultiplierPair p = double_multiplier_formulas(d, random_functional(n, 90 + side), side);
        EXPECT_LE(p.residual, 1e-9) << "side " << side;
    }
}
