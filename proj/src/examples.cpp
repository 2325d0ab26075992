#include "qg/examples.hpp"

#include <algorithm>
#include <array>

namespace qg {

int FiniteGroup::inverse(int g) const {
    for (int h = 0; h < size(); ++h)
        if (table[g][h] == identity) return h;
    throw Error("DimensionMismatch", "group table has no inverse");
}

FiniteGroup cyclic_group(int n) {
    FiniteGroup g;
    for (int i = 0; i < n; ++i) g.names.push_back(i == 0 ? "e" : "g" + std::to_string(i));
    g.table.assign(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.table[i][j] = (i + j) % n;
    return g;
}

FiniteGroup symmetric_group3() {
    // r = (0 1 2), s = (1 2); elements r^k s^m listed as e, r, r2, s, rs, r2s
    using P = std::array<int, 3>;
    auto compose = [](const P& a, const P& b) {  // (ab)(x) = a(b(x))
        P c{};
        for (int x = 0; x < 3; ++x) c[x] = a[b[x]];
        return c;
    };
    P e{0, 1, 2}, r{1, 2, 0}, s{0, 2, 1};
    P r2 = compose(r, r);
    std::vector<P> els{e, r, r2, s, compose(r, s), compose(r2, s)};
    FiniteGroup g;
    g.names = {"e", "r", "r2", "s", "rs", "r2s"};
    g.table.assign(6, std::vector<int>(6));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            P c = compose(els[i], els[j]);
            g.table[i][j] = static_cast<int>(std::find(els.begin(), els.end(), c) - els.begin());
        }
    return g;
}

namespace {

HopfData empty_data(int n) {
    HopfData d;
    d.dim = n;
    d.mult = Mat::Zero(n, static_cast<long>(n) * n);
    d.unit = Vec::Zero(n);
    d.comult = Mat::Zero(static_cast<long>(n) * n, n);
    d.counit = Eigen::RowVectorXcd::Zero(n);
    d.antipode = Mat::Zero(n, n);
    d.star = Mat::Zero(n, n);
    return d;
}

}  // namespace

HopfData function_algebra(const FiniteGroup& g) {
    const int n = g.size();
    HopfData d = empty_data(n);
    for (int i = 0; i < n; ++i) d.basis.push_back("d_" + g.names[i]);
    for (int a = 0; a < n; ++a) {
        d.mult(a, static_cast<long>(a) * n + a) = 1.0;
        d.unit(a) = 1.0;
        d.star(a, a) = 1.0;
        d.antipode(g.inverse(a), a) = 1.0;
        for (int h = 0; h < n; ++h) d.comult(static_cast<long>(h) * n + g.table[g.inverse(h)][a], a) = 1.0;
    }
    d.counit(g.identity) = 1.0;
    return d;
}

HopfData group_algebra(const FiniteGroup& g) {
    const int n = g.size();
    HopfData d = empty_data(n);
    for (int i = 0; i < n; ++i) d.basis.push_back("l_" + g.names[i]);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) d.mult(g.table[a][b], static_cast<long>(a) * n + b) = 1.0;
        d.comult(static_cast<long>(a) * n + a, a) = 1.0;
        d.counit(a) = 1.0;
        d.antipode(g.inverse(a), a) = 1.0;
        d.star(g.inverse(a), a) = 1.0;
    }
    d.unit(g.identity) = 1.0;
    return d;
}

HopfData kac_paljutkin() {
    // basis: e1..e4 (central projections), E11, E12, E21, E22
    const int n = 8;
    HopfData d = empty_data(n);
    d.basis = {"e1", "e2", "e3", "e4", "E11", "E12", "E21", "E22"};
    auto E = [](int i, int j) { return 4 + 2 * i + j; };
    auto setm = [&](int a, int b, int c) { d.mult(c, static_cast<long>(a) * n + b) = 1.0; };
    for (int k = 0; k < 4; ++k) setm(k, k, k);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int l = 0; l < 2; ++l) setm(E(i, j), E(j, l), E(i, l));
    for (int k = 0; k < 4; ++k) d.unit(k) = 1.0;
    d.unit(E(0, 0)) = 1.0;
    d.unit(E(1, 1)) = 1.0;

    auto add = [&](int target, int a, int b, cd c) { d.comult(static_cast<long>(a) * n + b, target) += c; };
    const cd h = 0.5, ih = cd(0.0, 0.5), i1 = I_UNIT;
    const int e1 = 0, e2 = 1, e3 = 2, e4 = 3;
    const int E11 = E(0, 0), E12 = E(0, 1), E21 = E(1, 0), E22 = E(1, 1);

    for (int k = 0; k < 4; ++k) add(e1, k, k, 1.0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) add(e1, E(i, j), E(i, j), h);

    add(e2, e1, e2, 1.0); add(e2, e2, e1, 1.0); add(e2, e3, e4, 1.0); add(e2, e4, e3, 1.0);
    add(e2, E11, E22, h); add(e2, E22, E11, h); add(e2, E21, E12, ih); add(e2, E12, E21, -ih);

    add(e3, e1, e3, 1.0); add(e3, e3, e1, 1.0); add(e3, e2, e4, 1.0); add(e3, e4, e2, 1.0);
    add(e3, E11, E22, h); add(e3, E22, E11, h); add(e3, E21, E12, -ih); add(e3, E12, E21, ih);

    add(e4, e1, e4, 1.0); add(e4, e4, e1, 1.0); add(e4, e2, e3, 1.0); add(e4, e3, e2, 1.0);
    add(e4, E11, E11, h); add(e4, E22, E22, h); add(e4, E12, E12, -h); add(e4, E21, E21, -h);

    add(E11, e1, E11, 1.0); add(E11, E11, e1, 1.0); add(E11, e2, E22, 1.0); add(E11, E22, e2, 1.0);
    add(E11, e3, E22, 1.0); add(E11, E22, e3, 1.0); add(E11, e4, E11, 1.0); add(E11, E11, e4, 1.0);

    add(E12, e1, E12, 1.0); add(E12, E12, e1, 1.0); add(E12, e2, E21, i1); add(E12, E21, e2, -i1);
    add(E12, e3, E21, -i1); add(E12, E21, e3, i1); add(E12, e4, E12, -1.0); add(E12, E12, e4, -1.0);

    add(E21, e1, E21, 1.0); add(E21, E21, e1, 1.0); add(E21, e2, E12, -i1); add(E21, E12, e2, i1);
    add(E21, e3, E12, i1); add(E21, E12, e3, -i1); add(E21, e4, E21, -1.0); add(E21, E21, e4, -1.0);

    add(E22, e1, E22, 1.0); add(E22, E22, e1, 1.0); add(E22, e2, E11, 1.0); add(E22, E11, e2, 1.0);
    add(E22, e3, E11, 1.0); add(E22, E11, e3, 1.0); add(E22, e4, E22, 1.0); add(E22, E22, e4, 1.0);

    d.counit(e1) = 1.0;
    for (int k = 0; k < 4; ++k) d.antipode(k, k) = 1.0;
    d.antipode(E11, E11) = 1.0;
    d.antipode(E22, E22) = 1.0;
    d.antipode(E21, E12) = 1.0;
    d.antipode(E12, E21) = 1.0;
    for (int k = 0; k < 4; ++k) d.star(k, k) = 1.0;
    d.star(E11, E11) = 1.0;
    d.star(E22, E22) = 1.0;
    d.star(E21, E12) = 1.0;
    d.star(E12, E21) = 1.0;
    return d;
}

HopfData trivial_hopf() {
    HopfData d = empty_data(1);
    d.basis = {"1"};
    d.mult(0, 0) = 1.0;
    d.unit(0) = 1.0;
    d.comult(0, 0) = 1.0;
    d.counit(0) = 1.0;
    d.antipode(0, 0) = 1.0;
    d.star(0, 0) = 1.0;
    return d;
}

IrrTable group_table(const FiniteGroup& g) {
    IrrTable t;
    t.labels = g.names;
    t.trivial = g.identity;
    t.dims.assign(g.size(), 1);
    t.rho.assign(g.size(), RVec::Ones(1));
    t.conj_intertwiner.assign(g.size(), std::nullopt);
    t.has_fusion = true;
    for (int a = 0; a < g.size(); ++a) {
        t.conj.push_back(g.inverse(a));
        for (int b = 0; b < g.size(); ++b) t.fusion[{a, b, g.table[a][b]}] = 1;
    }
    return t;
}

}  // namespace qg
