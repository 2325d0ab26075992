#include "qg/examples.hpp"
#include "qg/freeprod.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <random>

using namespace qg;

namespace {

FreeProductTable z2z2() { return {{group_table(cyclic_group(2)), group_table(cyclic_group(2))}}; }
FreeProductTable z3z3() { return {{group_table(cyclic_group(3)), group_table(cyclic_group(3))}}; }

FreeProductTable s3z3() {
    static Engine g = build_engine(group_algebra(symmetric_group3()));
    return {{bridge(g).table, group_table(cyclic_group(3))}};
}

// every string of (factor, label) letters, filtered for alternation
long brute_count(const FreeProductTable& fp, int len) {
    std::vector<Letter> all;
    for (int f = 0; f < static_cast<int>(fp.factors.size()); ++f)
        for (int l = 0; l < fp.factors[f].size(); ++l)
            if (l != fp.factors[f].trivial) all.push_back({f, l});
    long n = 0;
    std::vector<int> idx(len, 0);
    std::function<void(int)> rec = [&](int k) {
        if (k == len) {
            for (int j = 1; j < len; ++j)
                if (all[idx[j]].factor == all[idx[j - 1]].factor) return;
            ++n;
            return;
        }
        for (int i = 0; i < static_cast<int>(all.size()); ++i) {
            idx[k] = i;
            rec(k + 1);
        }
    };
    rec(0);
    return n;
}

AlternatingWord word(std::initializer_list<Letter> l) { return {std::vector<Letter>(l)}; }

}  // namespace

TEST(FreeProd, Enumeration) {
    FreeProductTable fp = z3z3();
    auto w0 = enumerate_words(fp, 0);
    ASSERT_EQ(w0.size(), 1u);
    EXPECT_TRUE(w0[0].letters.empty());
    auto w = enumerate_words(fp, 3);
    long exact3 = 0;
    for (const auto& x : w) exact3 += x.length() == 3;
    EXPECT_EQ(exact3, 16);
    EXPECT_TRUE(std::is_sorted(w.begin(), w.end()));

    for (const FreeProductTable& t : {z2z2(), z3z3(), s3z3()}) {
        auto words = enumerate_words(t, 4);
        for (int len = 0; len <= 4; ++len) {
            long c = 0;
            for (const auto& x : words) c += x.length() == len;
            EXPECT_EQ(c, count_words(t, len));
            EXPECT_EQ(c, len == 0 ? 1 : brute_count(t, len));
        }
    }
}

TEST(FreeProd, TrivialFactor) {
    FreeProductTable fp{{group_table(cyclic_group(1)), group_table(cyclic_group(4))}};
    auto words = enumerate_words(fp, 3);
    ASSERT_EQ(words.size(), 4u);
    for (const auto& w : words)
        for (const auto& l : w.letters) EXPECT_EQ(l.factor, 1);
}

TEST(FreeProd, Fusion) {
    FreeProductTable fp = z2z2();
    AlternatingWord g = word({{0, 1}}), h = word({{1, 1}});
    WordMultiset gg = free_fusion(fp, g, g);
    ASSERT_EQ(gg.size(), 1u);
    EXPECT_TRUE(gg.begin()->first.letters.empty());
    WordMultiset e = free_fusion(fp, AlternatingWord{}, h);
    ASSERT_EQ(e.size(), 1u);
    EXPECT_EQ(e.begin()->first, h);
    // infinite dihedral: (gh)(hg) = e
    WordMultiset c = free_fusion(fp, word({{0, 1}, {1, 1}}), word({{1, 1}, {0, 1}}));
    ASSERT_EQ(c.size(), 1u);
    EXPECT_TRUE(c.begin()->first.letters.empty());

    // std * std = e + sgn + std at the junction
    FreeProductTable s = s3z3();
    const int st = 2;  // the two-dimensional block
    ASSERT_EQ(s.factors[0].dims[st], 2);
    WordMultiset m = free_fusion(s, word({{1, 1}, {0, st}}), word({{0, st}, {1, 1}}));
    long total = 0;
    for (const auto& [w, k] : m) total += static_cast<long>(k) * s.dim(w);
    EXPECT_EQ(total, 4);
    EXPECT_EQ(m.size(), 3u);
}

TEST(FreeProd, DimensionIdentityRandomPairs) {
    FreeProductTable fp = s3z3();
    auto words = enumerate_words(fp, 4);
    std::mt19937 rng(17);
    std::uniform_int_distribution<size_t> pick(0, words.size() - 1);
    for (int it = 0; it < 200; ++it) {
        const auto& a = words[pick(rng)];
        const auto& b = words[pick(rng)];
        WordMultiset m = free_fusion(fp, a, b);
        long rhs = 0;
        for (const auto& [w, k] : m) rhs += static_cast<long>(k) * fp.dim(w);
        EXPECT_EQ(static_cast<long>(fp.dim(a)) * fp.dim(b), rhs);
    }
}

TEST(FreeProd, FusionAssociative) {
    for (const FreeProductTable& fp : {z2z2(), s3z3()}) {
        auto words = enumerate_words(fp, 3);
        auto times = [&](const WordMultiset& x, const AlternatingWord& w, bool left) {
            WordMultiset out;
            for (const auto& [v, k] : x)
                for (const auto& [u, j] : left ? free_fusion(fp, w, v) : free_fusion(fp, v, w)) out[u] += k * j;
            return out;
        };
        for (const auto& a : words)
            for (const auto& b : words)
                for (const auto& c : words) {
                    if (a.length() + b.length() + c.length() > 3) continue;
                    EXPECT_EQ(times(free_fusion(fp, a, b), c, false), times(free_fusion(fp, b, c), a, true));
                }
    }
}

TEST(FreeProd, LengthProjections) {
    FreeProductTable fp = s3z3();
    const int L = 4;
    IrrTable t = truncated_table(fp, L);
    std::vector<FinSupp> p;
    for (int d = 0; d <= L; ++d) p.push_back(length_projection(fp, d, L).element);
    FinSupp sum;
    for (int d = 0; d <= L; ++d) {
        check_shapes(t, p[d]);
        EXPECT_TRUE(is_central(p[d]));
        for (int e = 0; e <= L; ++e) {
            FinSupp pe = multiply(p[d], p[e]);
            if (d == e)
                EXPECT_EQ(max_abs(add(pe, p[d], -1.0)), 0.0);
            else
                EXPECT_EQ(max_abs(pe), 0.0);
        }
        sum = add(sum, p[d]);
    }
    EXPECT_EQ(max_abs(add(sum, identity_on(t, [&] {
                              std::vector<int> all(t.size());
                              for (int k = 0; k < t.size(); ++k) all[k] = k;
                              return all;
                          }()),
                          -1.0)),
              0.0);
    ASSERT_EQ(p[0].blocks.size(), 1u);
    EXPECT_EQ(p[0].blocks.begin()->first, 0);
    GradedElement two = length_projection(fp, 2, L);
    EXPECT_EQ(*two.cb_upper, 8.0);
    EXPECT_EQ(two.bound, "max(4d,1) = 8");
    EXPECT_EQ(*length_projection(fp, 0, L).cb_upper, 1.0);
    for (int d = 0; d <= L; ++d) EXPECT_GE(*length_projection(fp, d, L).cb_upper, sup_norm(p[d]));
}

TEST(FreeProd, PsiOfIdentitiesIsLengthProjection) {
    FreeProductTable fp = s3z3();
    const int L = 3;
    auto ident = [&](int f) {
        std::vector<int> sup;
        for (int l = 0; l < fp.factors[f].size(); ++l)
            if (l != fp.factors[f].trivial) sup.push_back(l);
        return identity_on(fp.factors[f], sup);
    };
    for (int d = 1; d <= L; ++d) {
        std::vector<PsiSlot> slots(d, PsiSlot{{ident(0), ident(1)}, {1.0, 1.0}});
        GradedElement psi = psi_d(fp, slots, L);
        EXPECT_EQ(max_abs(add(psi.element, length_projection(fp, d, L).element, -1.0)), 0.0);
        EXPECT_EQ(*psi.cb_upper, 4.0 * d * (2 * d + 1));
    }
}

TEST(FreeProd, PsiTensorBlocks) {
    FreeProductTable fp = s3z3();
    const int L = 2;
    FinSupp a0, a1, b0, b1;
    a0.blocks[2] = random_matrix(2, 2, 1);
    a1.blocks[1] = random_matrix(1, 1, 2);
    b0.blocks[2] = random_matrix(2, 2, 3);
    b1.blocks[2] = random_matrix(1, 1, 4);
    std::vector<PsiSlot> slots{{{a0, a1}, {2.0, 0.5}}, {{b0, b1}, {1.5, 3.0}}};
    GradedElement psi = psi_d(fp, slots, L);
    auto words = enumerate_words(fp, L);
    int hits = 0;
    for (int k = 0; k < static_cast<int>(words.size()); ++k) {
        const auto& w = words[k];
        if (w == word({{0, 2}, {1, 2}})) {
            EXPECT_EQ(max_abs(Mat(psi.element.blocks.at(k) - kron(a0.blocks[2], b1.blocks[2]))), 0.0);
            ++hits;
        } else if (w == word({{1, 1}, {0, 2}})) {
            EXPECT_EQ(max_abs(Mat(psi.element.blocks.at(k) - kron(a1.blocks[1], b0.blocks[2]))), 0.0);
            ++hits;
        } else {
            EXPECT_EQ(psi.element.blocks.count(k), 0u) << fp.name(w);
        }
    }
    EXPECT_EQ(hits, 2);
    EXPECT_DOUBLE_EQ(*psi.cb_upper, 8.0 * 5.0 * 2.0 * 3.0);

    // d = 1: blocks are the single letters
    GradedElement one = psi_d(fp, {slots[0]}, L);
    EXPECT_EQ(one.element.blocks.size(), 2u);

    FinSupp bad;
    bad.blocks[0] = Mat::Identity(1, 1);
    EXPECT_THROW(psi_d(fp, {PsiSlot{{bad, a1}, {1.0, 1.0}}}, L), Error);
    PsiSlot noBound{{a0, a1}, {1.0, std::nullopt}};
    EXPECT_FALSE(psi_d(fp, {noBound}, L).cb_upper.has_value());
}

TEST(FreeProd, TnSeries) {
    FreeProductTable fp = z3z3();
    const int L = 4;
    auto words = enumerate_words(fp, L);
    GradedElement t4 = tn_series(fp, 4, L);
    for (int k = 0; k < static_cast<int>(words.size()); ++k)
        if (words[k].length() == 2) EXPECT_EQ(t4.element.blocks.at(k)(0, 0), cd(0.25));
    for (int n = 1; n <= L; ++n) EXPECT_EQ(sup_norm(tn_series(fp, n, L).element), 1.0);
    GradedElement t1 = tn_series(fp, 1, L);
    EXPECT_EQ(max_abs(add(t1.element, length_projection(fp, 0, L).element, -1.0)), 0.0);
}
