#include "qg/doubles.hpp"

#include <cmath>

namespace qg {

namespace {

void record(std::vector<Check>& checks, const std::string& name, double res, double thr) {
    checks.push_back({name, res, thr, res <= thr});
}

Mat random_combination(const std::vector<Mat>& ops, unsigned long seed) {
    Mat c = random_matrix(static_cast<int>(ops.size()), 1, seed);
    Mat x = Mat::Zero(ops[0].rows(), ops[0].cols());
    for (size_t k = 0; k < ops.size(); ++k) x += c(k, 0) * ops[k];
    return x;
}

// Linearly independent first-leg slices of x on H_n (x) H_m.
std::vector<Mat> slice_basis(const Mat& x, int n, int m) {
    std::vector<Mat> out;
    Mat q(static_cast<long>(m) * m, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Mat s = x.block(static_cast<long>(i) * m, static_cast<long>(j) * m, m, m);
            Vec v = vec(s);
            Vec r = v - q * (q.adjoint() * v);
            if (r.norm() > 1e-8 * std::max(1.0, v.norm())) {
                q.conservativeResize(q.rows(), q.cols() + 1);
                q.col(q.cols() - 1) = r / r.norm();
                out.push_back(s);
            }
        }
    return out;
}

Mat theta_from_w(const Mat& e_pinv, const Mat& e, const Mat& wr, const Mat& dr, double* residual) {
    Mat cmat = e_pinv * wr;
    Mat theta = e_pinv * dr * pinv(cmat);
    if (residual) *residual = max_abs(Mat(e * theta * cmat - dr));
    return theta;
}

BlockMap to_block_map(const Wedderburn& w, const Mat& theta, const std::string& name) {
    BlockMap f;
    f.domain = w.dims;
    f.codomain = w.dims;
    f.action = w.to_blocks * theta * w.from_blocks;
    f.name = name;
    return f;
}

}  // namespace

Mat DoubleCrossed::pi(const Vec& x) const {
    const int a = n1(), b = n2();
    Mat out = Mat::Zero(static_cast<long>(a) * b, static_cast<long>(a) * b);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) {
            cd c = x(static_cast<long>(i) * b + j);
            if (c != cd(0.0)) out += c * kron(e1->pi_basis[i], e2->pi_basis[j]);
        }
    return out;
}

Mat DoubleCrossed::w_hat() const {
    Mat s = swap_op(n(), n());
    return s * w_m.adjoint() * s;
}

Mat DoubleCrossed::dual_comult(const Mat& y) const {
    Mat s = swap_op(n(), n());
    return s * w_m * kron(y, Mat::Identity(n(), n())) * w_m.adjoint() * s;
}

Mat conjugation(const HopfData& a, const HaarData& ha, bool dual) {
    const int n = a.dim;
    if (ha.trace_residual > 1e-9 || max_abs(Mat(a.antipode * a.antipode - Mat::Identity(n, n))) > 1e-9)
        throw Error("NotKac", "modular conjugations are only built for Kac algebras");
    Mat m = dual ? Mat(a.antipode * a.star) : a.star;
    return ha.R * m * ha.Rinv.conjugate();
}

Mat right_regular(const Engine& g) {
    const int n = g.data.dim;
    Mat mh = conjugation(g.data, g.haar, true);
    Mat k = kron(mh, mh);
    Mat s = swap_op(n, n);
    Mat x = s * g.w.W.adjoint() * s;
    Mat v = k * x.conjugate() * k.conjugate();
    // Delta(x) = V (x (x) 1) V^*
    double res = 0.0;
    Mat id = Mat::Identity(n, n);
    for (int i = 0; i < n; ++i) {
        Mat lhs = v * kron(g.pi_basis[i], id) * v.adjoint();
        Mat rhs = Mat::Zero(lhs.rows(), lhs.cols());
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                cd c = g.data.comult(static_cast<long>(a) * n + b, i);
                if (c != cd(0.0)) rhs += c * kron(g.pi_basis[a], g.pi_basis[b]);
            }
        res = std::max(res, max_abs(Mat(lhs - rhs)));
    }
    if (res > 1e-9) throw Error("InconsistentEngine", "V does not implement the coproduct", res);
    return v;
}

Mat matching_matrix(const Engine& e1, const Engine& e2, const Mat& z, std::vector<Check>* checks) {
    const int n1 = e1.data.dim, n2 = e2.data.dim, n = n1 * n2;
    if (z.rows() != n || z.cols() != n) throw Error("MatchingViolation", "Z has the wrong size");
    std::vector<Check> local;
    std::vector<Check>& ch = checks ? *checks : local;
    double unit = unitarity_residual(z);
    record(ch, "matching unitary", unit, 1e-9);
    if (unit > 1e-9) throw Error("MatchingViolation", "Z is not unitary", unit);

    std::vector<Mat> basis;
    Mat p(static_cast<long>(n) * n, n);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
            basis.push_back(kron(e1.pi_basis[i], e2.pi_basis[j]));
            p.col(i * n2 + j) = vec(basis.back());
        }
    Fit inside = lstsq(p, vec(z));
    record(ch, "matching Z in L^infty(G_1) (x) L^infty(G_2)", inside.residual, 1e-9);
    if (inside.residual > 1e-9)
        throw Error("MatchingViolation", "Z is not in the tensor product algebra", inside.residual);
    Mat images(static_cast<long>(n) * n, n);
    for (int k = 0; k < n; ++k) images.col(k) = vec(Mat(z * basis[k] * z.adjoint()));
    Fit f = lstsq(p, images);
    record(ch, "matching closed", f.residual, 1e-9);
    if (f.residual > 1e-9) throw Error("MatchingViolation", "Ad Z leaves the tensor product algebra", f.residual);

    // (Delta_1 (x) id)m = m_23 m_13 (Delta_1 (x) id) on legs H1 H1 H2
    const Mat& w1 = e1.w.W;
    const Mat& w2 = e2.w.W;
    double id1 = 0.0, id2 = 0.0;
    {
        std::vector<int> dims{n1, n1, n2};
        Mat w12 = embed(w1, dims, {0, 1});
        Mat z13 = embed(z, dims, {0, 2});
        Mat z23 = embed(z, dims, {1, 2});
        for (unsigned long s = 0; s < 2; ++s) {
            Mat x = random_combination(basis, 101 + s);
            Mat lhs = w12.adjoint() * embed(Mat(z * x * z.adjoint()), dims, {1, 2}) * w12;
            Mat inner = w12.adjoint() * embed(x, dims, {1, 2}) * w12;
            Mat rhs = z23 * z13 * inner * z13.adjoint() * z23.adjoint();
            id1 = std::max(id1, max_abs(Mat(lhs - rhs)));
        }
    }
    {
        // (id (x) Delta_2)m = m_13 m_12 (id (x) Delta_2) on legs H1 H2 H2; Delta_2 reads its
        // argument from the last leg
        std::vector<int> dims{n1, n2, n2};
        Mat w23 = embed(w2, dims, {1, 2});
        Mat z12 = embed(z, dims, {0, 1});
        Mat z13 = embed(z, dims, {0, 2});
        for (unsigned long s = 0; s < 2; ++s) {
            Mat x = random_combination(basis, 201 + s);
            Mat lhs = w23.adjoint() * embed(Mat(z * x * z.adjoint()), dims, {0, 2}) * w23;
            Mat inner = w23.adjoint() * embed(x, dims, {0, 2}) * w23;
            Mat rhs = z13 * z12 * inner * z12.adjoint() * z13.adjoint();
            id2 = std::max(id2, max_abs(Mat(lhs - rhs)));
        }
    }
    record(ch, "matching identity (Delta_1 (x) id)", id1, 1e-9);
    record(ch, "matching identity (id (x) Delta_2)", id2, 1e-9);
    if (std::max(id1, id2) > 1e-9)
        throw Error("MatchingViolation", "Ad Z does not satisfy the matching identities", std::max(id1, id2));
    return f.x;
}

HopfData double_crossed_algebra(const HopfData& g1, const HopfData& g2, const Mat& m) {
    const int n1 = g1.dim, n2 = g2.dim, n = n1 * n2;
    // Delta_m = (id (x) chi m (x) id)(Delta_1^op (x) Delta_2)
    HopfData h = tensor_product(g1, g2);
    const Mat c1 = swap_op(n1, n1) * g1.comult;
    const Mat& c2 = g2.comult;
    h.comult = Mat::Zero(static_cast<long>(n) * n, n);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
            const long col = static_cast<long>(i) * n2 + j;
            for (int a = 0; a < n1; ++a)
                for (int b = 0; b < n1; ++b) {
                    cd x = c1(static_cast<long>(a) * n1 + b, i);
                    if (x == cd(0.0)) continue;
                    for (int c = 0; c < n2; ++c)
                        for (int e = 0; e < n2; ++e) {
                            cd y = c2(static_cast<long>(c) * n2 + e, j);
                            if (y == cd(0.0)) continue;
                            const long src = static_cast<long>(b) * n2 + c;
                            for (int p = 0; p < n1; ++p)
                                for (int q = 0; q < n2; ++q) {
                                    cd mm = m(static_cast<long>(p) * n2 + q, src);
                                    if (mm == cd(0.0)) continue;
                                    long row = static_cast<long>(a * n2 + q) * n + (p * n2 + e);
                                    h.comult(row, col) += x * y * mm;
                                }
                        }
                }
        }
    return h;
}

DoubleCrossed build_double_crossed(const Matching& match, bool full_checks) {
    DoubleCrossed d;
    d.match = match;
    d.e1 = std::make_shared<Engine>(build_engine(match.g1));
    d.e2 = std::make_shared<Engine>(build_engine(match.g2));
    const int n1 = d.n1(), n2 = d.n2(), n = d.n();
    d.m = matching_matrix(*d.e1, *d.e2, match.z, &d.checks);

    HopfData& h = d.data;
    h = double_crossed_algebra(match.g1, match.g2, d.m);
    double r1 = 0.0, r2 = 0.0;
    h.counit = solve_counit(h.mult, h.comult, n, &r1);
    h.antipode = solve_antipode(h.mult, h.unit, h.comult, h.counit, n, &r2);
    record(d.checks, "counit solvable", r1, 1e-9);
    record(d.checks, "antipode solvable", r2, 1e-9);
    if (std::max(r1, r2) > 1e-9) throw Error("AxiomViolation", "double has no counit/antipode", std::max(r1, r2));

    d.v1 = right_regular(*d.e1);
    Mat s1 = swap_op(n1, n1);
    d.w1op = s1 * d.v1.adjoint() * s1;

    const HaarData hm = haar_state(h);
    record(d.checks, "GNS factorizes", max_abs(Mat(hm.R - kron(d.e1->haar.R, d.e2->haar.R))), 1e-9);
    if (!d.checks.back().pass) throw Error("MatchingViolation", "Haar state of the double is not h_1 (x) h_2");
    // For m = Ad Z with Z in L^infty(G_1) (x) L^infty(G_2) the unitary entering W_m is
    // Z K Z^* K^* with K = J^_1 J_1 (x) J^_2 J_2.
    auto jj = [](const HopfData& a, const HaarData& ha) -> Mat {
        return conjugation(a, ha, true) * conjugation(a, ha, false).conjugate();
    };
    const Mat k = kron(jj(match.g1, d.e1->haar), jj(match.g2, d.e2->haar));
    d.z = match.z * k * match.z.adjoint() * k.adjoint();
    double zr = 0.0;
    for (int i = 0; i < n; ++i) {
        Mat x = d.pi(h.basis_vec(i));
        zr = std::max(zr, max_abs(Mat(d.z * x * d.z.adjoint() - match.z * x * match.z.adjoint())));
    }
    record(d.checks, "W_m unitary Z implements m", std::max(zr, unitarity_residual(d.z)), 1e-9);

    std::vector<int> dims{n1, n2, n1, n2};
    Mat zb = embed(d.z, dims, {2, 3});
    d.w_m = embed(d.w1op, dims, {0, 2}) * zb.adjoint() * embed(d.e2->w.W, dims, {1, 3}) * zb;
    double u = unitarity_residual(d.w_m);
    record(d.checks, "W_m unitary", u, 1e-9);
    record(d.checks, "W_m equals Kac-Takesaki operator", max_abs(Mat(kac_takesaki(h, hm) - d.w_m)), 1e-9);

    // Delta_m(x) = W_m^*(1 (x) x)W_m on a random element
    std::vector<Mat> basis;
    for (int k = 0; k < n; ++k) basis.push_back(d.pi(h.basis_vec(k)));
    Vec c = random_matrix(n, 1, 7).col(0);
    Mat x = Mat::Zero(n, n);
    for (int k = 0; k < n; ++k) x += c(k) * basis[k];
    Mat lhs = d.w_m.adjoint() * kron(Mat::Identity(n, n), x) * d.w_m;
    Vec dc = h.comult * c;
    Mat rhs = Mat::Zero(lhs.rows(), lhs.cols());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            cd v = dc(static_cast<long>(a) * n + b);
            if (std::abs(v) > 1e-14) rhs += v * kron(basis[a], basis[b]);
        }
    record(d.checks, "W_m implements Delta_m", max_abs(Mat(lhs - rhs)), 1e-9);

    if (full_checks) {
        ValidationReport vr = validate_hopf(h);
        double worst = 0.0;
        for (const auto& ck : vr.checks) worst = std::max(worst, ck.residual);
        record(d.checks, "axioms", worst, 1e-9);
        require_valid(h);
        auto eng = std::make_shared<Engine>(build_engine(h));
        record(d.checks, "W_m equals engine W", max_abs(Mat(eng->w.W - d.w_m)), 1e-9);
        record(d.checks, "pentagon", pentagon_residual(d.w_m, n), 1e-9);
        d.engine = eng;
    }
    for (const auto& ck : d.checks)
        if (!ck.pass) {
            const std::string kind = ck.name == "pentagon" ? "PentagonFailure" : "MatchingViolation";
            throw Error(kind, "double crossed product check failed: " + ck.name, ck.residual);
        }
    return d;
}

Mat gamma1(const DoubleCrossed& d, const Mat& x) { return kron(x, Mat::Identity(d.n2(), d.n2())); }

Mat gamma2(const DoubleCrossed& d, const Mat& x) {
    const Mat& z = d.z;
    return z.adjoint() * kron(Mat::Identity(d.n1(), d.n1()), x) * z;
}

GammaReport gamma_embeddings_check(const DoubleCrossed& d, double tol) {
    GammaReport rep;
    const int n1 = d.n1(), n2 = d.n2();
    std::vector<int> dims{n1, n2, n1, n2};

    const std::vector<Mat> g1 = slice_basis(d.w1op, n1, n1);
    for (const Mat& x : g1) {
        Mat lhs = d.dual_comult(gamma1(d, x));
        Mat inner = d.v1.adjoint() * kron(Mat::Identity(n1, n1), x) * d.v1;
        rep.gamma1 = std::max(rep.gamma1, max_abs(Mat(lhs - embed(inner, dims, {0, 2}))));
    }
    const Mat zz = kron(d.z, d.z);
    const Mat s2 = swap_op(n2, n2);
    const Mat& w2 = d.e2->w.W;
    for (const Mat& x : d.e2->dual.ops) {
        Mat lhs = d.dual_comult(gamma2(d, x));
        Mat dx = s2 * w2 * kron(x, Mat::Identity(n2, n2)) * w2.adjoint() * s2;
        Mat rhs = zz.adjoint() * embed(dx, dims, {1, 3}) * zz;
        rep.gamma2 = std::max(rep.gamma2, max_abs(Mat(lhs - rhs)));
    }
    // *-homomorphism on products and adjoints of random elements
    for (unsigned long s = 0; s < 2; ++s) {
        Mat a = random_combination(g1, 31 + s), b = random_combination(g1, 41 + s);
        rep.homomorphism = std::max(rep.homomorphism, max_abs(Mat(gamma1(d, a * b) - gamma1(d, a) * gamma1(d, b))));
        Mat x = random_combination(d.e2->dual.ops, 51 + s), y = random_combination(d.e2->dual.ops, 61 + s);
        rep.homomorphism = std::max(rep.homomorphism, max_abs(Mat(gamma2(d, x * y) - gamma2(d, x) * gamma2(d, y))));
        rep.homomorphism =
            std::max(rep.homomorphism, max_abs(Mat(gamma2(d, Mat(x.adjoint())) - gamma2(d, x).adjoint())));
    }
    double mem1 = 0.0, mem2 = 0.0;
    if (d.engine) {
        double r = 0.0;
        for (const Mat& x : g1) {
            d.engine->dual.coords(gamma1(d, x), &r);
            mem1 = std::max(mem1, r);
        }
        for (const Mat& x : d.e2->dual.ops) {
            d.engine->dual.coords(gamma2(d, x), &r);
            mem2 = std::max(mem2, r);
        }
        rep.membership = std::max(mem1, mem2);
    }
    if (std::max(rep.gamma1, mem1) > tol)
        throw Error("IntertwiningFailure", "gamma_1 does not intertwine the coproducts", std::max(rep.gamma1, mem1));
    if (std::max(rep.gamma2, mem2) > tol)
        throw Error("IntertwiningFailure", "gamma_2 does not intertwine the coproducts", std::max(rep.gamma2, mem2));
    if (rep.homomorphism > tol)
        throw Error("IntertwiningFailure", "embeddings are not *-homomorphisms", rep.homomorphism);
    return rep;
}

Mat functional_density(const Engine& g, const Vec& omega) {
    const int n = g.data.dim;
    if (omega.size() != n) throw Error("DimensionMismatch", "functional has the wrong length");
    Mat p(n, static_cast<long>(n) * n);
    for (int k = 0; k < n; ++k) p.row(k) = vec(g.pi_basis[k]).transpose();
    Vec f = pinv(p) * omega;
    return unvec(f, n, n);
}

Factorization fourier_factorization(const DoubleCrossed& d, const Vec& omega1, const Vec& omega2) {
    Mat f1 = functional_density(*d.e1, omega1);
    Mat f2 = functional_density(*d.e2, omega2);
    Factorization out;
    out.lhs = slice_first(d.w_m, kron(f1, f2), d.n(), d.n());
    Mat l1 = slice_first(d.w1op, f1, d.n1(), d.n1());
    Mat l2 = slice_first(d.e2->w.W, f2, d.n2(), d.n2());
    out.rhs = gamma1(d, l1) * gamma2(d, l2);
    out.residual = max_abs(Mat(out.lhs - out.rhs));
    return out;
}

Mat double_theta(const DoubleCrossed& d, const Mat& a) {
    const int n = d.n();
    Mat e(static_cast<long>(n) * n, n);
    for (int k = 0; k < n; ++k) e.col(k) = vec(d.pi(d.data.basis_vec(k)));
    Mat ep = pinv(e);
    double r = 0.0;
    Mat theta = theta_from_w(ep, e, reshuffle(d.w_m, n, n), reshuffle(left_second(d.w_m, a, n, n), n, n), &r);
    if (r > 1e-8) throw Error("NotAMultiplier", "(1 (x) a)W_m is not of the form (Theta (x) id)W_m", r);
    return theta;
}

MultiplierPair double_multiplier_formulas(const DoubleCrossed& d, const Vec& omega, int side) {
    const int n1 = d.n1(), n2 = d.n2();
    Mat a, formula;
    if (side == 1) {
        Mat f = functional_density(*d.e1, omega);
        a = gamma1(d, slice_first(d.w1op, f, n1, n1));
        // (omega (x) id)Delta_1^op
        const Mat cop = swap_op(n1, n1) * d.match.g1.comult;
        Mat t(n1, n1);
        for (int i = 0; i < n1; ++i)
            for (int k = 0; k < n1; ++k) {
                cd s = 0.0;
                for (int j = 0; j < n1; ++j) s += omega(j) * cop(static_cast<long>(j) * n1 + k, i);
                t(k, i) = s;
            }
        formula = kron(t, Mat::Identity(n2, n2));
    } else if (side == 2) {
        Mat f = functional_density(*d.e2, omega);
        a = gamma2(d, slice_first(d.e2->w.W, f, n2, n2));
        // m^{-1}(id (x) (omega (x) id)Delta_2)m
        const Mat& c2 = d.match.g2.comult;
        Mat t(n2, n2);
        for (int i = 0; i < n2; ++i)
            for (int k = 0; k < n2; ++k) {
                cd s = 0.0;
                for (int j = 0; j < n2; ++j) s += omega(j) * c2(static_cast<long>(j) * n2 + k, i);
                t(k, i) = s;
            }
        formula = d.m.inverse() * kron(Mat::Identity(n1, n1), t) * d.m;
    } else {
        throw Error("InvalidArgument", "side must be 1 or 2");
    }
    Mat engine = double_theta(d, a);
    Wedderburn w = wedderburn(d.data, haar_state(d.data));
    MultiplierPair out;
    out.engine = to_block_map(w, engine, "engine");
    out.formula = to_block_map(w, formula, side == 1 ? "Theta(lambda_1^op(omega)) (x) id" : "m^-1(id (x) Theta)m");
    out.residual = max_abs(Mat(engine - formula));
    return out;
}

DrinfeldDouble drinfeld_double(const HopfData& h, bool full_checks) {
    DrinfeldDouble dd;
    auto he = std::make_shared<Engine>(build_engine(h));
    dd.h = he;
    dd.table = std::make_shared<EngineTable>(bridge(*he));
    const HopfData& g2 = he->dual.data;
    HaarData h2 = haar_state(g2);
    const int n = h.dim;
    Vec one = he->lambda_hat * g2.unit;
    const double c = one.squaredNorm();
    dd.plancherel = he->lambda_hat * h2.Rinv / std::sqrt(c);
    double u = unitarity_residual(dd.plancherel);
    double inter = 0.0;
    for (int k = 0; k < n; ++k) {
        Mat p2 = gns_rep(g2, h2, g2.basis_vec(k));
        inter = std::max(inter, max_abs(Mat(dd.plancherel * p2 * dd.plancherel.adjoint() - he->dual.ops[k])));
    }
    if (std::max(u, inter) > 1e-9)
        throw Error("InconsistentEngine", "Plancherel map does not intertwine the dual", std::max(u, inter));

    Matching m;
    m.g1 = opposite(h);
    m.g2 = g2;
    Mat iu = kron(Mat::Identity(n, n), dd.plancherel);
    m.z = iu.adjoint() * he->w.W * iu;
    dd.d = build_double_crossed(m, full_checks);
    record(dd.d.checks, "Plancherel unitary", std::max(u, inter), 1e-9);
    record(dd.d.checks, "W_1^op equals W", max_abs(Mat(dd.d.w1op - he->w.W)), 1e-9);
    return dd;
}

}  // namespace qg
