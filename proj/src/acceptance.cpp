#include "qg/acceptance.hpp"

#include "qg/category.hpp"
#include "qg/cbnorm.hpp"
#include "qg/corep.hpp"
#include "qg/doubles.hpp"
#include "qg/examples.hpp"
#include "qg/freeprod.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>

namespace qg {

bool Criterion::pass() const {
    if (checks.empty()) return false;
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

const Check* Criterion::worst() const {
    const Check* w = nullptr;
    for (const auto& c : checks)
        if (!c.pass) return &c;
    double best = -1.0;
    for (const auto& c : checks) {
        double r = c.threshold > 0.0 ? c.residual / c.threshold : (c.residual > 0.0 ? 1.0 : 0.0);
        if (r > best) {
            best = r;
            w = &c;
        }
    }
    return w;
}

std::string summary_line(const Criterion& c) {
    std::ostringstream s;
    s << (c.pass() ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.title << "  (" << c.checks.size() << " checks";
    if (const Check* w = c.worst()) s << "; " << (c.pass() ? "tightest: " : "failed: ") << w->name << " " << w->residual
                                      << " <= " << w->threshold;
    s.precision(3);
    s << "; " << std::fixed << c.seconds << " s)";
    return s.str();
}

namespace {

struct Ctx {
    Criterion& c;
    void check(const std::string& name, double res, double thr) {
        if (!std::isfinite(res)) res = std::numeric_limits<double>::infinity();
        c.checks.push_back({name, res, thr, res <= thr});
    }
    void flag(const std::string& name, bool ok) { c.checks.push_back({name, ok ? 0.0 : 1.0, 0.0, ok}); }
};

struct Example {
    std::string name;
    HopfData data;
};

std::vector<Example> engine_examples() {
    return {{"C(Z2)", function_algebra(cyclic_group(2))},
            {"C(S3)", function_algebra(symmetric_group3())},
            {"C[Z2]", group_algebra(cyclic_group(2))},
            {"C[S3]", group_algebra(symmetric_group3())},
            {"Kac-Paljutkin", kac_paljutkin()}};
}

struct Bridged {
    std::string name;
    std::unique_ptr<Engine> g;
    std::unique_ptr<EngineTable> et;
};

std::vector<Bridged> bridged_examples() {
    std::vector<Bridged> out;
    for (auto& e : engine_examples()) {
        Bridged b;
        b.name = e.name;
        b.g = std::make_unique<Engine>(build_engine(e.data));
        b.et = std::make_unique<EngineTable>(bridge(*b.g));
        out.push_back(std::move(b));
    }
    return out;
}

FinSupp random_finsupp(const IrrTable& t, std::mt19937& rng, bool full_support = false) {
    std::bernoulli_distribution keep(0.7);
    std::uniform_int_distribution<unsigned long> seed;
    FinSupp a;
    for (int l = 0; l < t.size(); ++l)
        if (full_support || keep(rng)) a.blocks[l] = random_matrix(t.dims[l], t.dims[l], seed(rng));
    if (a.blocks.empty()) a.blocks[0] = random_matrix(t.dims[0], t.dims[0], seed(rng));
    return a;
}

PolElement random_pol(const IrrTable& t, std::mt19937& rng) {
    std::uniform_int_distribution<unsigned long> seed;
    PolElement x;
    for (int l = 0; l < t.size(); ++l) x.coeffs[l] = random_matrix(t.dims[l], t.dims[l], seed(rng));
    return x;
}

Vec random_vec(long n, std::mt19937& rng) {
    std::uniform_int_distribution<unsigned long> seed;
    return random_matrix(static_cast<int>(n), 1, seed(rng)).col(0);
}

// ---------------------------------------------------------------- 1
void engine_axioms(Ctx& x, unsigned long) {
    auto ex = engine_examples();
    ex.push_back({"trivial", trivial_hopf()});
    for (const auto& e : ex) {
        ValidationReport rep = validate_hopf(e.data);
        double worst = 0.0;
        for (const auto& c : rep.checks) worst = std::max(worst, c.residual);
        x.check(e.name + ": validate_hopf", worst, 1e-9);
        HaarData h = haar_state(e.data);
        x.check(e.name + ": Haar invariance", std::max(h.left_residual, h.right_residual), 1e-9);
        x.check(e.name + ": Haar trace", h.trace_residual, 1e-9);
        x.flag(e.name + ": Gram positive definite", h.min_eig > 0.0);
        UnitaryTensor w = multiplicative_unitary(e.data, h);
        x.check(e.name + ": W unitary", w.unitarity, 1e-9);
        x.check(e.name + ": pentagon", w.pentagon, 1e-9);
    }
}

// ---------------------------------------------------------------- 2
void duality(Ctx& x, unsigned long) {
    for (const auto& e : engine_examples()) {
        Engine g = build_engine(e.data);
        BidualIso iso = biduality(g);
        x.check(e.name + ": bidual isomorphism", iso.residual, 1e-8);
        x.check(e.name + ": dual passes axioms", [&] {
            double w = 0.0;
            for (const auto& c : validate_hopf(g.dual.data).checks) w = std::max(w, c.residual);
            return w;
        }(), 1e-9);
        double r = 0.0;
        Mat s = antipode_from_w(g.dual, g.w, &r);
        x.check(e.name + ": antipode from W", max_abs(Mat(s - g.dual.data.antipode)), 1e-9);
    }
    auto blocks = [](const HopfData& d) {
        std::vector<int> b = wedderburn(d, haar_state(d)).dims;
        std::sort(b.begin(), b.end());
        return b;
    };
    Engine cs3 = build_engine(function_algebra(symmetric_group3()));
    x.flag("dual of C(S3) has blocks (1,1,2)", blocks(cs3.dual.data) == std::vector<int>{1, 1, 2});
    x.flag("C[S3] has blocks (1,1,2)", blocks(group_algebra(symmetric_group3())) == std::vector<int>{1, 1, 2});
}

// ---------------------------------------------------------------- 3
void multiplier_action(Ctx& x, unsigned long seed) {
    for (const auto& [n, d] : {std::pair<std::string, HopfData>{"C[S3]", group_algebra(symmetric_group3())},
                               {"C(S3)", function_algebra(symmetric_group3())}}) {
        Engine g = build_engine(d);
        EngineTable et = bridge(g);
        std::mt19937 rng(seed + 3);
        double rel = 0.0, eng = 0.0;
        for (int it = 0; it < 100; ++it) {
            FinSupp a = random_finsupp(et.table, rng);
            Vec av = et.to_algebra(a);
            Mat th = et.theta_formula(a);
            rel = std::max(rel, et.w_hat_relation(av, th));
            eng = std::max(eng, max_abs(Mat(th - et.theta_engine(av))));
        }
        x.check(n + ": (1 (x) a)W^ = (Theta (x) id)W^, 100 random a", rel, 1e-9);
        x.check(n + ": coefficient formula vs slices of W^", eng, 1e-9);
    }
}

// ---------------------------------------------------------------- 4
Mat slice_comult(const HopfData& ah, const Vec& w, bool first) {
    const int n = ah.dim;
    Mat out = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) out(first ? k : j, i) += (first ? w(j) : w(k)) * ah.comult(j * n + k, i);
    return out;
}

void l2_implementation(Ctx& x, unsigned long seed) {
    auto ex = bridged_examples();
    for (auto& b : ex) {
        const Engine& g = *b.g;
        const EngineTable& et = *b.et;
        std::mt19937 rng(seed + 4);
        double worst = 0.0, tstar = 0.0;
        for (int it = 0; it < 50; ++it) {
            FinSupp a = random_finsupp(et.table, rng);
            Vec bb = random_vec(g.dual.data.dim, rng);
            Mat th = et.theta_formula(a);
            Vec sinv = et.to_algebra(l2_implement(et.table, a));
            Vec lhs = g.lambda_hat * (th * bb);
            Vec rhs = g.pi(sinv) * (g.lambda_hat * bb);
            worst = std::max(worst, max_abs(Vec(lhs - rhs)));
        }
        x.check(b.name + ": Lambda(Theta(a)b) = S^-1(a)Lambda(b), 50 random", worst, 1e-8);

        // classification: membership and centralizer tests must agree
        const HopfData& ah = g.dual.data;
        const int n = ah.dim;
        int disagreements = 0, wrong = 0;
        auto classify = [&](const Mat& phi) -> std::optional<L2Classification> {
            try {
                return classify_l2_implementation(g, phi);
            } catch (const Error& e) {
                if (e.kind() != "EquivalenceViolation") throw;
                ++disagreements;
                return std::nullopt;
            }
        };
        for (int it = 0; it < 100; ++it) {
            Mat phi;
            switch (it % 4) {
                case 0: phi = et.theta_formula(random_finsupp(et.table, rng)); break;
                case 1: phi = slice_comult(ah, random_vec(n, rng), true); break;
                case 2: phi = slice_comult(ah, random_vec(n, rng), false); break;
                default: phi = random_matrix(n, n, rng());
            }
            auto c = classify(phi);
            if (c && it % 4 == 0 && !c->left_centralizer) ++wrong;
        }
        auto id = classify(Mat::Identity(n, n));
        x.check(b.name + ": centralizer/membership disagreements on 101 maps", disagreements, 0.0);
        x.check(b.name + ": Theta^l(a) classified as left centralizer", wrong, 0.0);
        x.flag(b.name + ": identity is central", id && id->cls == L2Class::Central &&
                                                     max_abs(Mat(id->T - Mat::Identity(id->T.rows(), id->T.cols()))) < 1e-9);
        FinSupp a = random_finsupp(et.table, rng, true);
        auto th = classify(et.theta_formula(multiplier_involution(et.table, a)));
        x.check(b.name + ": T of Theta^l(S(a^*)) is S^-1(a)",
                th ? max_abs(Mat(th->T - g.pi(et.to_algebra(l2_implement(et.table, a))))) : 1.0, 1e-8);
    }
    // Ad(u) for a non-central unitary of the dual of C(S3), i.e. of C[S3]
    Engine g = build_engine(function_algebra(symmetric_group3()));
    const int n = g.dual.data.dim;
    std::mt19937 rng(seed + 40);
    Mat u = polar_unitary(g.dual.op(random_vec(n, rng)));
    Mat phi(n, n);
    for (int k = 0; k < n; ++k) phi.col(k) = g.dual.coords(Mat(u * g.dual.ops[k] * u.adjoint()));
    L2Classification c = classify_l2_implementation(g, phi);
    x.flag("Ad(u) on C[S3] classified None", c.cls == L2Class::None);
}

// ---------------------------------------------------------------- 5
IrrTable quantum_su2_fragment(double q) {
    IrrTable t;
    t.labels = {"0", "1/2"};
    t.dims = {1, 2};
    t.rho = {RVec::Ones(1), RVec(2)};
    t.rho[1] << q, 1.0 / q;
    t.conj = {0, 1};
    Mat T(2, 2);
    T << 0.0, 1.0, -1.0, 0.0;
    t.conj_intertwiner = {std::nullopt, T};
    return t;
}

void involution(Ctx& x, unsigned long seed) {
    auto ex = bridged_examples();
    std::mt19937 rng(seed + 5);
    for (auto& b : ex) {
        const EngineTable& et = *b.et;
        const HopfData& ah = b.g->dual.data;
        double inv = 0.0;
        for (int it = 0; it < 20; ++it) {
            FinSupp a = random_finsupp(et.table, rng);
            Mat th = et.theta_formula(a);
            inv = std::max(inv, max_abs(Mat(et.theta_formula(multiplier_involution(et.table, a)) - dagger(ah, th))));
        }
        x.check(b.name + ": Theta^l(S(a^*)) = Theta^l(a)^dagger", inv, 1e-9);

        double h = 0.0;
        for (int it = 0; it < 10; ++it) {
            FinSupp out = symmetrize_ap_net(et.table, random_finsupp(et.table, rng, true));
            Mat th = et.theta_engine(et.to_algebra(out));
            h = std::max(h, max_abs(Mat(et.dual_haar.h * th - et.dual_haar.h)));
        }
        x.check(b.name + ": h o Theta^l(out) = h on the engine", h, 1e-10);
    }

    // coefficient level, including a non-Kac table
    std::vector<IrrTable> tables;
    for (auto& b : ex) tables.push_back(b.et->table);
    tables.push_back(quantum_su2_fragment(0.6));
    double tau = 0.0, star = 0.0, unit = 0.0, haar = 0.0;
    for (const IrrTable& t : tables) {
        for (int it = 0; it < 10; ++it) {
            FinSupp out = symmetrize_ap_net(t, random_finsupp(t, rng, true));
            for (double time : {0.3, -1.7, 2.5})
                tau = std::max(tau, max_abs(add(scaling_modular_action(t, time, out, ModularKind::Tau), out, -1.0)));
            star = std::max(star, max_abs(add(multiplier_involution(t, out), out, -1.0)));
            PolElement one;
            one.coeffs[t.trivial] = Mat::Identity(1, 1);
            unit = std::max(unit, max_abs(add(theta_apply(t, out, one), one, -1.0)));
            PolElement y = random_pol(t, rng);
            haar = std::max(haar, std::abs(haar_pair(t, theta_apply(t, out, y)) - haar_pair(t, y)));
        }
    }
    x.check("symmetrized nets tau-invariant", tau, 0.0);
    x.check("symmetrized nets satisfy S(out^*) = out", star, 1e-12);
    x.check("symmetrized nets satisfy Theta^l(out)(1) = 1", unit, 1e-12);
    x.check("symmetrized nets satisfy h o Theta^l(out) = h", haar, 1e-12);
}

// ---------------------------------------------------------------- 6
void central_averaging(Ctx& x, unsigned long seed) {
    auto ex = bridged_examples();
    std::mt19937 rng(seed + 6);
    for (auto& b : ex) {
        const EngineTable& et = *b.et;
        const HopfData& ah = b.g->dual.data;
        const int n = ah.dim;
        Mat G = et.dual_haar.gram;
        Mat sharp = G.inverse() * ah.comult.adjoint() * kron(G, G);  // h (x) h adjoint of Delta^
        double idem = 0.0, eng = 0.0;
        for (int it = 0; it < 10; ++it) {
            FinSupp a = random_finsupp(et.table, rng);
            FinSupp m = central_average(et.table, a);
            idem = std::max(idem, max_abs(add(central_average(et.table, m), m, -1.0)));
            Mat th = et.theta_engine(et.to_algebra(a));
            Mat rhs = sharp * kron(Mat::Identity(n, n), th) * ah.comult;
            eng = std::max(eng, max_abs(Mat(et.theta_engine(et.to_algebra(m)) - rhs)));
        }
        x.check(b.name + ": A idempotent", idem, 0.0);
        x.check(b.name + ": Theta^l(A(a)) = Delta^#(id (x) Theta^l(a))Delta^", eng, 1e-9);
    }
    for (auto& b : ex) {
        if (b.name != "C(S3)" && b.name != "Kac-Paljutkin" && b.name != "C[S3]") continue;
        double worst = -1.0, gap = 0.0;
        for (int it = 0; it < 3; ++it) {
            FinSupp a = random_finsupp(b.et->table, rng, true);
            CbResult ca = cb_norm_exact(theta_block_map(*b.et, a));
            CbResult cm = cb_norm_exact(theta_block_map(*b.et, central_average(b.et->table, a)));
            worst = std::max(worst, cm.value - ca.value);
            gap = std::max({gap, ca.gap, cm.gap});
        }
        x.check(b.name + ": cb(A(a)) <= cb(a) + 1e-6", std::max(0.0, worst), 1e-6);
        x.check(b.name + ": SDP duality gaps", gap, 1e-6);
    }
}

// ---------------------------------------------------------------- 7
BlockMap random_cp_map(const std::vector<int>& dom, const std::vector<int>& cod, int kraus, std::mt19937& rng) {
    const int N = std::accumulate(dom.begin(), dom.end(), 0), M = std::accumulate(cod.begin(), cod.end(), 0);
    std::vector<Mat> K;
    for (int k = 0; k < kraus; ++k) K.push_back(random_matrix(M, N, rng()));
    BlockMap f{dom, cod, Mat(0, 0), "cp"};
    const int dd = f.domain_dim();
    f.action = Mat(f.codomain_dim(), dd);
    for (int c = 0; c < dd; ++c) {
        Vec e = Vec::Zero(dd);
        e(c) = 1.0;
        auto bl = to_blocks(dom, e);
        Mat X = Mat::Zero(N, N);
        int off = 0;
        for (size_t k = 0; k < dom.size(); ++k) {
            X.block(off, off, dom[k], dom[k]) = bl[k];
            off += dom[k];
        }
        Mat Y = Mat::Zero(M, M);
        for (const Mat& k : K) Y += k * X * k.adjoint();
        std::vector<Mat> out;
        off = 0;
        for (int d : cod) {
            out.push_back(Y.block(off, off, d, d));
            off += d;
        }
        f.action.col(c) = from_blocks(cod, out);
    }
    return f;
}

void cb_norms(Ctx& x, unsigned long seed) {
    double gap = 0.0;
    CbResult id = cb_norm_exact(identity_map({2}));
    x.check("identity on M2 -> 1 exactly", std::abs(id.value - 1.0), 0.0);
    gap = std::max(gap, id.gap);
    CbResult tr = cb_norm_exact(transpose_map(2));
    x.check("transpose on M2 -> 2", std::abs(tr.value - 2.0), 1e-6);
    gap = std::max(gap, tr.gap);

    std::mt19937 rng(seed + 7);
    double cp = 0.0;
    const std::vector<std::pair<std::vector<int>, std::vector<int>>> shapes{
        {{2}, {2}}, {{1, 2}, {2}}, {{2}, {1, 1, 2}}, {{3}, {2}}};
    for (const auto& [dom, cod] : shapes) {
        BlockMap f = random_cp_map(dom, cod, 2, rng);
        CbResult r = cb_norm_exact(f);
        std::vector<Mat> one = to_blocks(cod, f.action * unit_vector(dom));
        double norm1 = 0.0;
        for (const Mat& m : one) norm1 = std::max(norm1, op_norm(m));
        cp = std::max({cp, std::abs(r.value - norm1), std::abs(r.lower - norm1), std::abs(r.upper - norm1)});
        gap = std::max(gap, r.gap);
    }
    x.check("CP maps -> ||Phi(1)|| (SDP bounds included)", cp, 1e-6);

    Engine z2 = build_engine(group_algebra(cyclic_group(2)));
    EngineTable et = bridge(z2);
    FinSupp a;
    a.blocks[0] = Mat::Constant(1, 1, 1.0);
    a.blocks[1] = Mat::Constant(1, 1, 3.0);
    CbResult m13 = cb_norm_exact(theta_block_map(et, a));
    x.check("Z2-dual multiplier (1,3) -> 3", std::abs(m13.value - 3.0), 1e-6);
    gap = std::max(gap, m13.gap);

    auto ex = bridged_examples();
    std::vector<Bridged*> pool;
    for (auto& b : ex)
        if (b.name == "C[S3]" || b.name == "C(S3)" || b.name == "Kac-Paljutkin") pool.push_back(&b);
    double below = 0.0;
    for (int it = 0; it < 100; ++it) {
        const Bridged& b = *pool[it % pool.size()];
        FinSupp r = random_finsupp(b.et->table, rng);
        CbResult c = cb_norm_exact(theta_block_map(*b.et, r));
        below = std::max(below, sup_norm(r) - c.value);
        gap = std::max(gap, c.gap);
    }
    x.check("||a||_inf <= cb(a) + 1e-6 on 100 random multipliers", std::max(0.0, below), 1e-6);
    x.check("SDP duality gaps", gap, 1e-6);
}

// ---------------------------------------------------------------- 8
void free_products(Ctx& x, unsigned long seed) {
    static Engine s3 = build_engine(group_algebra(symmetric_group3()));
    std::vector<std::pair<std::string, FreeProductTable>> fps{
        {"Z2*Z2", {{group_table(cyclic_group(2)), group_table(cyclic_group(2))}}},
        {"Z3*Z3", {{group_table(cyclic_group(3)), group_table(cyclic_group(3))}}},
        {"S3^*Z3*Z2", {{bridge(s3).table, group_table(cyclic_group(3)), group_table(cyclic_group(2))}}}};
    for (const auto& [name, fp] : fps) {
        auto words = enumerate_words(fp, 4);
        long bad = 0;
        for (int len = 0; len <= 4; ++len) {
            long c = 0;
            for (const auto& w : words) c += w.length() == len;
            if (c != count_words(fp, len)) ++bad;
        }
        x.check(name + ": word counts match the alternation recursion", bad, 0.0);
    }
    const FreeProductTable& fp = fps[2].second;
    auto words = enumerate_words(fp, 4);
    std::mt19937 rng(seed + 8);
    std::uniform_int_distribution<size_t> pick(0, words.size() - 1);
    long bad = 0;
    for (int it = 0; it < 200; ++it) {
        const auto& a = words[pick(rng)];
        const auto& b = words[pick(rng)];
        long rhs = 0;
        for (const auto& [w, k] : free_fusion(fp, a, b)) rhs += static_cast<long>(k) * fp.dim(w);
        if (rhs != static_cast<long>(fp.dim(a)) * fp.dim(b)) ++bad;
    }
    x.check("free_fusion dimension identity on 200 random pairs", bad, 0.0);

    const int L = 4;
    double orth = 0.0;
    std::vector<FinSupp> p;
    for (int d = 0; d <= L; ++d) p.push_back(length_projection(fp, d, L).element);
    for (int d = 0; d <= L; ++d)
        for (int e = 0; e <= L; ++e) {
            FinSupp pe = multiply(p[d], p[e]);
            orth = std::max(orth, d == e ? max_abs(add(pe, p[d], -1.0)) : max_abs(pe));
        }
    x.check("p_d orthogonal projections", orth, 0.0);

    double psi = 0.0;
    for (int d = 1; d <= L; ++d) {
        PsiSlot slot;
        for (const auto& t : fp.factors) {
            std::vector<int> sup;
            for (int l = 0; l < t.size(); ++l)
                if (l != t.trivial) sup.push_back(l);
            slot.g.push_back(identity_on(t, sup));
            slot.cb.push_back(1.0);
        }
        GradedElement g = psi_d(fp, std::vector<PsiSlot>(d, slot), L);
        psi = std::max(psi, max_abs(add(g.element, p[d], -1.0)));
        const double want = 4.0 * d * (2.0 * d + 1.0);
        x.flag("Psi_" + std::to_string(d) + " bound reported as 4d(2d+1) prod = " + std::to_string(static_cast<int>(want)),
               g.cb_upper && *g.cb_upper == want && g.bound.find("4d(2d+1)") == 0);
        GradedElement pd = length_projection(fp, d, L);
        x.flag("p_" + std::to_string(d) + " bound reported as max(4d,1)",
               pd.cb_upper && *pd.cb_upper == std::max(4.0 * d, 1.0) && pd.bound.find("max(4d,1)") == 0);
    }
    x.check("Psi_d(1,...,1) = p_d", psi, 0.0);

    GradedElement t4 = tn_series(fp, 4, L);
    double coef = 0.0;
    for (int k = 0; k < static_cast<int>(words.size()); ++k)
        if (words[k].length() == 2) coef = std::max(coef, std::abs(t4.element.blocks.at(k)(0, 0) - cd(0.25)));
    x.check("T_4 coefficient at d = 2 equals 0.25", coef, 0.0);
}

// ---------------------------------------------------------------- 9
void category(Ctx& x, unsigned long seed) {
    std::vector<std::pair<std::string, FusionRing>> rings{{"Rep(Z2)", rep_cyclic(2)},
                                                          {"Rep(S3)", rep_s3()},
                                                          {"TL L=6 q=1", temperley_lieb(6, 1.0)},
                                                          {"TL L=6 q=0.8", temperley_lieb(6, 0.8)}};
    for (const auto& [name, r] : rings) {
        ValidationReport rep = verify_fusion_ring(r);
        for (const auto& c : rep.checks) x.check(name + ": " + c.name, c.residual, c.name.rfind("dq", 0) == 0 ? 1e-9 : 0.0);
    }
    std::mt19937 rng(seed + 9);
    std::normal_distribution<double> nd;
    auto rv = [&](int n) {
        std::vector<cd> v(n);
        for (auto& z : v) z = cd(nd(rng), nd(rng));
        return v;
    };
    double lin = 0.0, bound = 0.0;
    for (int it = 0; it < 100; ++it) {
        const FusionRing& r = rings[it % rings.size()].second;
        const int n = r.size();
        CatMultiplier t{rv(n), std::nullopt};
        auto a = rv(n), b = rv(n);
        cd s(nd(rng), nd(rng));
        std::vector<cd> comb(n);
        for (int k = 0; k < n; ++k) comb[k] = a[k] + s * b[k];
        lin = std::max(lin, std::abs(mult_pair(r, t, comb) - mult_pair(r, t, a) - s * mult_pair(r, t, b)));
        bound = std::max(bound, std::abs(mult_pair(r, t, a)) - weighted_l1(r, a) * sup_norm(t));
    }
    x.check("mult_pair bilinear on 100 random pairs", lin, 1e-9);
    x.check("|pair| <= ||omega||_1 ||theta||_inf on 100 random pairs", std::max(0.0, bound), 1e-12);

    for (const auto& d : {group_algebra(symmetric_group3()), kac_paljutkin()}) {
        Engine g = build_engine(d);
        EngineTable et = bridge(g);
        const IrrTable& t = et.table;
        CatMultiplier m{rv(t.size()), std::nullopt};
        Mat th = et.theta_engine(et.to_algebra(central_correspondence(t, m)));
        Mat inblocks = et.dual_to_u * th * et.u_to_dual;
        Mat want = Mat::Zero(inblocks.rows(), inblocks.cols());
        int off = 0;
        for (int a = 0; a < t.size(); ++a) {
            const int k = t.dims[a] * t.dims[a];
            want.block(off, off, k, k) = m.theta[a] * Mat::Identity(k, k);
            off += k;
        }
        x.check(std::string(d.dim == 8 ? "Kac-Paljutkin" : "C[S3]") + ": central_correspondence block-scalar on the engine",
                max_abs(Mat(inblocks - want)), 1e-10);
    }
}

// ---------------------------------------------------------------- 10
void doubles(Ctx& x, unsigned long seed) {
    auto all_checks = [&](const std::string& name, const DoubleCrossed& d) {
        for (const auto& c : d.checks) x.check(name + ": " + c.name, c.residual, c.threshold);
    };
    DrinfeldDouble dz2 = drinfeld_double(function_algebra(cyclic_group(2)));
    all_checks("D(Z2)", dz2.d);
    Matching triv{function_algebra(cyclic_group(3)), group_algebra(cyclic_group(3)), Mat::Identity(9, 9)};
    DoubleCrossed prod = build_double_crossed(triv);
    all_checks("C(Z3) x C[Z3]", prod);

    for (const auto& [name, d] : {std::pair<std::string, const DoubleCrossed*>{"D(Z2)", &dz2.d}, {"C(Z3) x C[Z3]", &prod}}) {
        GammaReport r;
        try {
            r = gamma_embeddings_check(*d);
        } catch (const Error& e) {
            x.check(name + ": gamma embeddings (" + e.what() + ")", e.residual(), 1e-10);
            continue;
        }
        x.check(name + ": gamma_1 intertwining", r.gamma1, 1e-10);
        x.check(name + ": gamma_2 intertwining", r.gamma2, 1e-10);
        x.check(name + ": gamma images inside the dual", r.membership, 1e-10);
        std::mt19937 rng(seed + 10);
        double f = 0.0;
        for (int it = 0; it < 5; ++it) {
            Factorization fz = fourier_factorization(*d, random_vec(d->n1(), rng), random_vec(d->n2(), rng));
            f = std::max(f, fz.residual);
        }
        x.check(name + ": Fourier factorization, 5 random pairs", f, 1e-10);
    }

    std::mt19937 rng(seed + 11);
    auto theta = [&](int n) {
        std::vector<cd> v(n);
        for (auto& z : v) z = cd(std::normal_distribution<double>()(rng), std::normal_distribution<double>()(rng));
        return CatMultiplier{v, std::nullopt};
    };
    DrinfeldMultiplier nz2 = drinfeld_mult(dz2, theta(dz2.table->table.size()));
    x.check("D(Z2): N_theta = Theta^l(theta (x) 1)", nz2.residual, 1e-9);
    DrinfeldDouble ds3 = drinfeld_double(group_algebra(symmetric_group3()), false);
    all_checks("D(S3)", ds3.d);
    DrinfeldMultiplier ns3 = drinfeld_mult(ds3, theta(ds3.table->table.size()));
    x.check("D(S3): N_theta = Theta^l(theta (x) 1)", ns3.residual, 1e-9);
}

const std::vector<std::pair<std::string, std::function<void(Ctx&, unsigned long)>>>& registry() {
    static const std::vector<std::pair<std::string, std::function<void(Ctx&, unsigned long)>>> r{
        {"Engine axioms", engine_axioms},
        {"Duality", duality},
        {"Multiplier action oracle", multiplier_action},
        {"L2-implementation", l2_implementation},
        {"Involution", involution},
        {"Central averaging", central_averaging},
        {"CB norms", cb_norms},
        {"Free products", free_products},
        {"Category", category},
        {"Doubles", doubles}};
    return r;
}

}  // namespace

Criterion run_criterion(int id, unsigned long seed) {
    if (id < 1 || id > kCriteria) throw Error("UnknownCriterion", "criteria are numbered 1.." + std::to_string(kCriteria));
    Criterion c;
    c.id = id;
    c.title = registry()[id - 1].first;
    Ctx x{c};
    auto t0 = std::chrono::steady_clock::now();
    try {
        registry()[id - 1].second(x, seed);
    } catch (const Error& e) {
        x.check(std::string("unexpected error: ") + e.what(), e.residual() > 0.0 ? e.residual() : 1.0, 0.0);
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return c;
}

std::vector<Criterion> run_acceptance(unsigned long seed) {
    std::vector<Criterion> out;
    for (int id = 1; id <= kCriteria; ++id) out.push_back(run_criterion(id, seed));
    return out;
}

}  // namespace qg
