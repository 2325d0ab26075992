#include "qg/corep.hpp"
#include "qg/examples.hpp"

#include <gtest/gtest.h>

using namespace qg;

namespace {

FinSupp random_finsupp(const IrrTable& t, unsigned long seed) {
    FinSupp a;
    for (int l = 0; l < t.size(); ++l) a.blocks[l] = random_matrix(t.dims[l], t.dims[l], seed * 31 + l);
    return a;
}

void check_bridge(const HopfData& d) {
    Engine g = build_engine(d);
    EngineTable et = bridge(g);
    EXPECT_NO_THROW(require_valid(et.table));
    for (unsigned long s = 0; s < 5; ++s) {
        FinSupp a = random_finsupp(et.table, s);
        Vec av = et.to_algebra(a);
        Mat th = et.theta_formula(a);
        Mat te = et.theta_engine(av);
        EXPECT_LT(max_abs(Mat(th - te)), 1e-9);
        EXPECT_LT(et.w_hat_relation(av, th), 1e-9);
        // L2 implementation
        Vec sinv = et.to_algebra(l2_implement(et.table, a));
        Mat lhs = g.lambda_hat * th;
        Mat rhs = g.pi(sinv) * g.lambda_hat;
        EXPECT_LT(max_abs(Mat(lhs - rhs)), 1e-8);
        // involution contract
        Mat tsharp = et.theta_formula(multiplier_involution(et.table, a));
        EXPECT_LT(max_abs(Mat(tsharp - dagger(g.dual.data, th))), 1e-9);
        // antipode agrees with the engine's S
        Vec sa = et.to_algebra(antipode(et.table, a));
        EXPECT_LT(max_abs(Vec(sa - g.data.antipode * av)), 1e-9);
    }
}

}  // namespace

TEST(Bridge, FunctionAlgebraS3) { check_bridge(function_algebra(symmetric_group3())); }
TEST(Bridge, GroupAlgebraS3) { check_bridge(group_algebra(symmetric_group3())); }
TEST(Bridge, KacPaljutkin) { check_bridge(kac_paljutkin()); }
TEST(Bridge, Trivial) { check_bridge(trivial_hopf()); }
TEST(Bridge, FunctionAlgebraZ2) { check_bridge(function_algebra(cyclic_group(2))); }
