#include "qg/hopf.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

namespace qg {

Vec HopfData::mul(const Vec& x, const Vec& y) const { return mult * kron(x, y); }

Vec HopfData::adj(const Vec& x) const { return star * x.conjugate(); }

Mat HopfData::left_mult(const Vec& x) const {
    Mat l = Mat::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        if (x(i) == cd(0.0)) continue;
        l += x(i) * mult.middleCols(static_cast<Eigen::Index>(i) * dim, dim);
    }
    return l;
}

Vec HopfData::basis_vec(int i) const {
    Vec v = Vec::Zero(dim);
    v(i) = 1.0;
    return v;
}

bool ValidationReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check* ValidationReport::first_failure() const {
    for (const auto& c : checks)
        if (!c.pass) return &c;
    return nullptr;
}

namespace {

Mat coproduct_matrix(const HopfData& d, int i) {
    return unvec(d.comult.col(i), d.dim, d.dim);
}

void add_check(ValidationReport& r, const std::string& name, double res, double thr) {
    r.checks.push_back({name, res, thr, res <= thr});
}

}  // namespace

ValidationReport validate_hopf(const HopfData& d) {
    const int n = d.dim;
    const long n2 = static_cast<long>(n) * n;
    auto bad = [&](const std::string& what) { throw Error("DimensionMismatch", what + " has the wrong shape"); };
    if (n <= 0) bad("dim");
    if (!d.basis.empty() && static_cast<int>(d.basis.size()) != n) bad("basis");
    if (d.mult.rows() != n || d.mult.cols() != n2) bad("mult");
    if (d.unit.size() != n) bad("unit");
    if (d.comult.rows() != n2 || d.comult.cols() != n) bad("comult");
    if (d.counit.size() != n) bad("counit");
    if (d.antipode.rows() != n || d.antipode.cols() != n) bad("antipode");
    if (d.star.rows() != n || d.star.cols() != n) bad("star");

    ValidationReport r;
    const double tol = d.tol;
    const Mat id = Mat::Identity(n, n);

    std::vector<Mat> L(n);
    for (int i = 0; i < n; ++i) L[i] = d.left_mult(d.basis_vec(i));

    double res = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Vec p = d.mult.col(static_cast<Eigen::Index>(i) * n + j);
            res = std::max(res, max_abs(Mat(d.left_mult(p) - L[i] * L[j])));
        }
    add_check(r, "associativity", res, tol);

    Mat right_unit = d.mult * kron(id, Mat(d.unit));
    res = std::max(max_abs(Mat(d.left_mult(d.unit) - id)), max_abs(Mat(right_unit - id)));
    add_check(r, "unit", res, tol);

    double coassoc = 0.0, counit = 0.0, mult_hom = 0.0;
    std::vector<Mat> D(n);
    for (int i = 0; i < n; ++i) D[i] = coproduct_matrix(d, i);
    for (int i = 0; i < n; ++i) {
        Mat lhs = d.comult * D[i];                                  // (Delta (x) id)
        Mat rhs = D[i] * d.comult.transpose();                      // (id (x) Delta)
        coassoc = std::max(coassoc, max_abs(Vec(vec(lhs) - vec(rhs))));
        Vec left = (d.counit * D[i]).transpose();
        Vec right = D[i] * d.counit.transpose();
        counit = std::max({counit, max_abs(Vec(left - d.basis_vec(i))), max_abs(Vec(right - d.basis_vec(i)))});
    }
    add_check(r, "coassociativity", coassoc, tol);
    add_check(r, "counit", counit, tol);

    // Delta(e_i e_j) = Delta(e_i) Delta(e_j) in A (x) A.
    for (int i = 0; i < n; ++i) {
        Mat LD = Mat::Zero(n2, n2);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (D[i](a, b) != cd(0.0)) LD += D[i](a, b) * kron(L[a], L[b]);
        for (int j = 0; j < n; ++j) {
            Vec lhs = d.comult * d.mult.col(static_cast<Eigen::Index>(i) * n + j);
            Vec rhs = LD * d.comult.col(j);
            mult_hom = std::max(mult_hom, max_abs(Vec(lhs - rhs)));
        }
    }
    add_check(r, "comultiplication multiplicative", mult_hom, tol);
    add_check(r, "comultiplication unital", max_abs(Vec(d.comult * d.unit - kron(d.unit, d.unit))), tol);

    double eps = std::abs((d.counit * d.unit)(0) - 1.0);
    eps = std::max(eps, max_abs(Mat(d.counit * d.mult - kron(Mat(d.counit), Mat(d.counit)))));
    add_check(r, "counit multiplicative", eps, tol);

    Mat ue = d.unit * d.counit;
    Mat left_s = d.mult * kron(d.antipode, id) * d.comult;
    Mat right_s = d.mult * kron(id, d.antipode) * d.comult;
    add_check(r, "antipode", std::max(max_abs(Mat(left_s - ue)), max_abs(Mat(right_s - ue))), tol);

    add_check(r, "star involutive", max_abs(Mat(d.star * d.star.conjugate() - id)), tol);
    Mat star_prod = d.star * d.mult.conjugate();
    Mat prod_star = d.mult * kron(d.star, d.star) * swap_op(n, n);
    add_check(r, "star antimultiplicative", max_abs(Mat(star_prod - prod_star)), tol);
    add_check(r, "star unital", max_abs(Vec(d.star * d.unit.conjugate() - d.unit)), tol);
    add_check(r, "comultiplication star-preserving",
              max_abs(Mat(d.comult * d.star - kron(d.star, d.star) * d.comult.conjugate())), tol);
    return r;
}

void require_valid(const HopfData& d) {
    auto r = validate_hopf(d);
    if (const Check* c = r.first_failure())
        throw Error("AxiomViolation", c->name + " residual " + std::to_string(c->residual), c->residual);
}

HopfData opposite(const HopfData& d) {
    HopfData o = d;
    o.comult = swap_op(d.dim, d.dim) * d.comult;
    o.antipode = d.antipode.inverse();
    return o;
}

HopfData tensor_product(const HopfData& a, const HopfData& b) {
    const int n1 = a.dim, n2 = b.dim, n = n1 * n2;
    HopfData t;
    t.dim = n;
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j)
            t.basis.push_back((a.basis.empty() ? std::to_string(i) : a.basis[i]) + "*" +
                              (b.basis.empty() ? std::to_string(j) : b.basis[j]));
    // (x (x) y)(x' (x) y') = xx' (x) yy': reorder the columns of mult_a (x) mult_b.
    Mat mk = kron(a.mult, b.mult);
    t.mult = Mat::Zero(n, static_cast<long>(n) * n);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j)
            for (int k = 0; k < n1; ++k)
                for (int l = 0; l < n2; ++l) {
                    long src = static_cast<long>(i * n1 + k) * (n2 * n2) + (j * n2 + l);
                    long dst = static_cast<long>(i * n2 + j) * n + (k * n2 + l);
                    t.mult.col(dst) = mk.col(src);
                }
    t.unit = kron(a.unit, b.unit);
    // Delta(x (x) y) = (id (x) flip (x) id)(Delta x (x) Delta y)
    Mat ck = kron(a.comult, b.comult);
    t.comult = Mat::Zero(static_cast<long>(n) * n, n);
    for (int p = 0; p < n1; ++p)
        for (int q = 0; q < n1; ++q)
            for (int r = 0; r < n2; ++r)
                for (int s = 0; s < n2; ++s) {
                    long src = static_cast<long>(p * n1 + q) * (n2 * n2) + (r * n2 + s);
                    long dst = static_cast<long>(p * n2 + r) * n + (q * n2 + s);
                    t.comult.row(dst) = ck.row(src);
                }
    t.counit = kron(Mat(a.counit), Mat(b.counit));
    t.antipode = kron(a.antipode, b.antipode);
    t.star = kron(a.star, b.star);
    t.tol = std::max(a.tol, b.tol);
    return t;
}

Eigen::RowVectorXcd solve_counit(const Mat& mult, const Mat& comult, int n, double* residual) {
    (void)mult;
    Mat a(static_cast<long>(n) * n, n);
    Vec rhs = Vec::Zero(static_cast<long>(n) * n);
    for (int b = 0; b < n; ++b)
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < n; ++k) a(b * n + i, k) = comult(static_cast<long>(k) * n + b, i);
            rhs(b * n + i) = (b == i) ? 1.0 : 0.0;
        }
    Fit f = lstsq(a, rhs);
    if (residual) *residual = f.residual;
    return f.x.col(0).transpose();
}

Mat solve_antipode(const Mat& mult, const Vec& unit, const Mat& comult, const Eigen::RowVectorXcd& counit, int n,
                   double* residual) {
    const long n2 = static_cast<long>(n) * n;
    Mat a = Mat::Zero(2 * n2, n2);
    Vec rhs(2 * n2);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            long row = static_cast<long>(k) * n + i;
            rhs(row) = unit(k) * counit(i);
            rhs(n2 + row) = unit(k) * counit(i);
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y) {
                    cd c = comult(static_cast<long>(x) * n + y, i);
                    if (c == cd(0.0)) continue;
                    for (int s = 0; s < n; ++s) {
                        // m(S (x) id): S(e_x) e_y, unknown S(s, x)
                        a(row, static_cast<long>(s) * n + x) += c * mult(k, static_cast<long>(s) * n + y);
                        // m(id (x) S): e_x S(e_y), unknown S(s, y)
                        a(n2 + row, static_cast<long>(s) * n + y) += c * mult(k, static_cast<long>(x) * n + s);
                    }
                }
        }
    // f -> m(id (x) f)Delta is invertible whenever an antipode exists, so the
    // square half of the system is enough; the residual covers both halves.
    Eigen::PartialPivLU<Mat> lu(a.bottomRows(n2));
    Vec x = lu.solve(rhs.tail(n2));
    double res = max_abs(Vec(a * x - rhs));
    if (!std::isfinite(res) || res > 1e-8) {
        Fit f = lstsq(a, rhs);
        x = f.x.col(0);
        res = f.residual;
    }
    if (residual) *residual = res;
    return unvec(x, n, n);
}

HaarData haar_state(const HopfData& d) {
    const int n = d.dim;
    HaarData hd;
    // (id (x) h)Delta(e_i) = h_i 1
    Mat sys = Mat::Zero(static_cast<long>(n) * n, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            for (int b = 0; b < n; ++b) sys(i * n + k, b) += d.comult(static_cast<long>(k) * n + b, i);
            sys(i * n + k, i) -= d.unit(k);
        }
    Mat ns = null_space(sys, 1e-9 * std::max(1.0, max_abs(sys)));
    if (ns.cols() != 1)
        throw Error("NoInvariantState", "invariant functionals form a space of dimension " + std::to_string(ns.cols()));
    Vec h = ns.col(0);
    cd norm = (h.transpose() * d.unit)(0);
    if (std::abs(norm) < 1e-12) throw Error("NoInvariantState", "invariant functional vanishes on the unit");
    hd.h = (h / norm).transpose();

    Mat right = Mat::Zero(n, n), left = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        Mat D = unvec(d.comult.col(i), n, n);
        right.col(i) = D * hd.h.transpose() - d.unit * hd.h(i);
        left.col(i) = (hd.h * D).transpose() - d.unit * hd.h(i);
    }
    hd.right_residual = max_abs(right);
    hd.left_residual = max_abs(left);
    if (hd.left_residual > d.tol)
        throw Error("NoInvariantState", "right-invariant functional is not left invariant", hd.left_residual);

    Mat hm = hd.h * d.mult;  // hm(i*n + j) = h(e_i e_j)
    double tr = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) tr = std::max(tr, std::abs(hm(0, i * n + j) - hm(0, j * n + i)));
    hd.trace_residual = tr;

    hd.gram = Mat(n, n);
    for (int a = 0; a < n; ++a) hd.gram.row(a) = hd.h * d.left_mult(d.star.col(a));
    hd.gram = 0.5 * (hd.gram + hd.gram.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Mat> es(hd.gram);
    hd.min_eig = es.eigenvalues().minCoeff();
    if (hd.min_eig < -d.tol) throw Error("NotPositive", "Haar Gram matrix has a negative eigenvalue", hd.min_eig);
    hd.gns_dim = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()(i) > d.tol) ++hd.gns_dim;
    if (hd.gns_dim == n) {
        Eigen::LLT<Mat> llt(hd.gram);
        hd.R = llt.matrixL().adjoint();
        hd.Rinv = hd.R.inverse();
    }
    return hd;
}

Mat gns_rep(const HopfData& d, const HaarData& haar, const Vec& x) { return haar.R * d.left_mult(x) * haar.Rinv; }

namespace {

// w acting on legs (a, b) of H^{(x)3}, applied to x from the left without
// forming the n^3 x n^3 embedding.
Mat apply_two_legs(const Mat& w, const Mat& x, int n, int a, int b) {
    const int c = 3 - a - b;
    const long n2 = static_cast<long>(n) * n, n3 = n2 * n;
    auto row = [&](int i, int j, int k) {
        int d[3];
        d[a] = i;
        d[b] = j;
        d[c] = k;
        return (static_cast<long>(d[0]) * n + d[1]) * n + d[2];
    };
    // rows regrouped as (i j) x (k, column)
    Mat y(n2, n * n3);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) y.block(static_cast<long>(i) * n + j, k * n3, 1, n3) = x.row(row(i, j, k));
    Mat z = w * y;
    Mat out(n3, n3);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) out.row(row(i, j, k)) = z.block(static_cast<long>(i) * n + j, k * n3, 1, n3);
    return out;
}

}  // namespace

double pentagon_residual(const Mat& w, int n) {
    Mat w23 = kron(Mat::Identity(n, n), w);
    Mat lhs = apply_two_legs(w, apply_two_legs(w, w23, n, 0, 2), n, 0, 1);
    Mat rhs = apply_two_legs(w, kron(w, Mat::Identity(n, n)), n, 1, 2);
    return max_abs(Mat(lhs - rhs));
}

double unitarity_residual(const Mat& w) {
    Mat id = Mat::Identity(w.rows(), w.cols());
    return std::max(max_abs(Mat(w.adjoint() * w - id)), max_abs(Mat(w * w.adjoint() - id)));
}

Mat kac_takesaki(const HopfData& d, const HaarData& haar) {
    const int n = d.dim;
    if (haar.gns_dim != n) throw Error("NotFaithful", "Haar state is not faithful");
    const long n2 = static_cast<long>(n) * n;
    Mat t(n2, n2);
    std::vector<Mat> rmul(n);
    for (int a = 0; a < n; ++a) {
        rmul[a] = Mat(n, n);
        for (int p = 0; p < n; ++p) rmul[a].col(p) = d.mult.col(static_cast<long>(p) * n + a);
    }
    for (int b = 0; b < n; ++b) {
        Mat D = unvec(d.comult.col(b), n, n);
        for (int a = 0; a < n; ++a) t.col(static_cast<long>(a) * n + b) = vec(Mat(rmul[a] * D));
    }
    Mat wstar = kron(haar.R, haar.R) * t * kron(haar.Rinv, haar.Rinv);
    return wstar.adjoint();
}

UnitaryTensor multiplicative_unitary(const HopfData& d, const HaarData& haar) {
    UnitaryTensor u;
    u.W = kac_takesaki(d, haar);
    u.n = d.dim;
    const int n = d.dim;
    u.unitarity = unitarity_residual(u.W);
    if (u.unitarity > 1e-9) throw Error("NotUnitary", "Kac-Takesaki operator is not unitary", u.unitarity);
    u.pentagon = pentagon_residual(u.W, n);
    if (u.pentagon > 1e-9) throw Error("PentagonFailure", "pentagon equation fails", u.pentagon);
    return u;
}

Vec DualHopf::coords(const Mat& o, double* residual) const {
    Vec v = vec(o);
    Vec c = coord * v;
    if (residual) {
        Vec back = Vec::Zero(v.size());
        for (size_t k = 0; k < ops.size(); ++k) back += c(k) * vec(ops[k]);
        *residual = max_abs(Vec(back - v));
    }
    return c;
}

Mat DualHopf::op(const Vec& c) const {
    Mat m = Mat::Zero(n, n);
    for (size_t k = 0; k < ops.size(); ++k) m += c(k) * ops[k];
    return m;
}

DualHopf dual_hopf(const HopfData& data, const UnitaryTensor& w) {
    const int n = w.n;
    const long n2 = static_cast<long>(n) * n;
    DualHopf dh;
    dh.n = n;
    Mat q(n2, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Mat s = w.W.block(static_cast<long>(i) * n, static_cast<long>(j) * n, n, n);
            Vec v = vec(s);
            Vec r = v - q * (q.adjoint() * v);
            if (r.norm() > 1e-8 * std::max(1.0, v.norm())) {
                q.conservativeResize(n2, q.cols() + 1);
                q.col(q.cols() - 1) = r / r.norm();
                dh.ops.push_back(s);
                dh.slice.emplace_back(i, j);
            }
        }
    const int m = static_cast<int>(dh.ops.size());
    if (m != data.dim) throw Error("DimensionMismatch", "slice space has dimension " + std::to_string(m));
    Mat bm(n2, m);
    for (int k = 0; k < m; ++k) bm.col(k) = vec(dh.ops[k]);
    dh.coord = pinv(bm);

    HopfData& hd = dh.data;
    hd.dim = m;
    hd.tol = data.tol;
    for (auto [i, j] : dh.slice) hd.basis.push_back("w(" + std::to_string(i) + "," + std::to_string(j) + ")");
    const double close_tol = 1e-9;
    hd.mult = Mat(m, static_cast<long>(m) * m);
    double res = 0.0, worst = 0.0;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            hd.mult.col(static_cast<long>(a) * m + b) = dh.coords(Mat(dh.ops[a] * dh.ops[b]), &res);
            worst = std::max(worst, res);
        }
    if (worst > close_tol) throw Error("SpanNotClosed", "slice space is not closed under products", worst);
    hd.unit = dh.coords(Mat::Identity(n, n), &res);
    if (res > close_tol) throw Error("SpanNotClosed", "slice space does not contain the unit", res);
    hd.star = Mat(m, m);
    for (int a = 0; a < m; ++a) {
        hd.star.col(a) = dh.coords(Mat(dh.ops[a].adjoint()), &res);
        if (res > close_tol) throw Error("SpanNotClosed", "slice space is not closed under the adjoint", res);
    }

    Mat sigma = swap_op(n, n);
    Mat what = sigma * w.W.adjoint() * sigma;
    hd.comult = Mat(static_cast<long>(m) * m, m);
    for (int k = 0; k < m; ++k) {
        Mat x = what.adjoint() * kron(Mat::Identity(n, n), dh.ops[k]) * what;
        Mat xr(n2, n2);
        for (int i = 0; i < n; ++i)
            for (int kk = 0; kk < n; ++kk)
                for (int j = 0; j < n; ++j)
                    for (int l = 0; l < n; ++l) xr(i * n + j, kk * n + l) = x(i * n + kk, j * n + l);
        Mat c = dh.coord * xr * dh.coord.transpose();
        double r = max_abs(Mat(bm * c * bm.transpose() - xr));
        if (r > close_tol) throw Error("SpanNotClosed", "dual coproduct leaves the slice tensor square", r);
        hd.comult.col(k) = vec(c);
    }
    double r1 = 0.0, r2 = 0.0;
    hd.counit = solve_counit(hd.mult, hd.comult, m, &r1);
    hd.antipode = solve_antipode(hd.mult, hd.unit, hd.comult, hd.counit, m, &r2);
    if (std::max(r1, r2) > close_tol) throw Error("AxiomViolation", "no counit/antipode for the dual", std::max(r1, r2));
    require_valid(hd);
    return dh;
}

Mat antipode_from_w(const DualHopf& dual, const UnitaryTensor& w, double* residual) {
    const int n = w.n, m = dual.data.dim;
    const long n2 = static_cast<long>(n) * n;
    Mat ws = w.W.adjoint();
    Mat x(m, n2), y(m, n2);
    double r = 0.0, worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            long col = static_cast<long>(i) * n + j;
            x.col(col) = dual.coords(ws.block(static_cast<long>(i) * n, static_cast<long>(j) * n, n, n), &r);
            worst = std::max(worst, r);
            y.col(col) = dual.coords(w.W.block(static_cast<long>(i) * n, static_cast<long>(j) * n, n, n), &r);
            worst = std::max(worst, r);
        }
    Mat s = y * pinv(x);
    double fit = max_abs(Mat(s * x - y));
    double diff = max_abs(Mat(s - dual.data.antipode));
    double res = std::max({worst, fit, diff});
    if (residual) *residual = res;
    if (res > 1e-9) throw Error("InconsistentAntipode", "antipode read from W disagrees with the dual antipode", res);
    return s;
}

Mat Engine::pi(const Vec& x) const { return gns_rep(data, haar, x); }

Vec Engine::pi_coords(const Mat& o, double* residual) const {
    Vec v = vec(o);
    Vec c = pi_coord * v;
    if (residual) {
        Vec back = Vec::Zero(v.size());
        for (size_t k = 0; k < pi_basis.size(); ++k) back += c(k) * vec(pi_basis[k]);
        *residual = max_abs(Vec(back - v));
    }
    return c;
}

Mat Engine::w_hat() const {
    Mat sigma = swap_op(w.n, w.n);
    return sigma * w.W.adjoint() * sigma;
}

Engine build_engine(const HopfData& data) {
    Engine g;
    g.data = data;
    require_valid(g.data);
    g.haar = haar_state(g.data);
    g.w = multiplicative_unitary(g.data, g.haar);
    g.dual = dual_hopf(g.data, g.w);
    const int n = data.dim;
    Mat bm(static_cast<long>(n) * n, n);
    for (int k = 0; k < n; ++k) {
        g.pi_basis.push_back(g.pi(data.basis_vec(k)));
        bm.col(k) = vec(g.pi_basis.back());
    }
    g.pi_coord = pinv(bm);
    g.lambda_hat = Mat(n, n);
    Mat rinv_adj = g.haar.Rinv.adjoint();
    for (int b = 0; b < n; ++b) {
        auto [i, j] = g.dual.slice[b];
        Vec wv(n);
        for (int k = 0; k < n; ++k) wv(k) = g.pi(data.star.col(k))(i, j);
        g.lambda_hat.col(b) = rinv_adj * wv;
    }
    return g;
}

int Wedderburn::total() const {
    int t = 0;
    for (int d : dims) t += d * d;
    return t;
}

Wedderburn wedderburn(const HopfData& d, const HaarData& haar, unsigned long seed) {
    const int n = d.dim;
    std::vector<Mat> pib(n);
    Mat bm(static_cast<long>(n) * n, n);
    for (int k = 0; k < n; ++k) {
        pib[k] = gns_rep(d, haar, d.basis_vec(k));
        bm.col(k) = vec(pib[k]);
    }
    Mat pcoord = pinv(bm);
    auto to_coords = [&](const Mat& o) {
        Vec c = pcoord * vec(o);
        Vec back = bm * c;
        double r = max_abs(Vec(back - vec(o)));
        if (r > 1e-8) throw Error("SpanNotClosed", "matrix unit outside the algebra", r);
        return c;
    };

    Vec x = random_matrix(n, 1, seed * 7919 + 17).col(0);
    Vec y = x + d.adj(x);
    Mat py = gns_rep(d, haar, y);
    py = 0.5 * (py + py.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Mat> es(py);
    const RVec& ev = es.eigenvalues();
    double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    std::vector<Mat> projs;
    int start = 0;
    for (int k = 1; k <= n; ++k) {
        if (k == n || ev(k) - ev(k - 1) > 1e-6 * scale) {
            Mat v = es.eigenvectors().middleCols(start, k - start);
            projs.push_back(v * v.adjoint());
            start = k;
        }
    }
    const int np = static_cast<int>(projs.size());
    std::vector<int> parent(np);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
    for (int a = 0; a < np; ++a)
        for (int b = a + 1; b < np; ++b) {
            double best = 0.0;
            for (int k = 0; k < n; ++k) best = std::max(best, max_abs(Mat(projs[a] * pib[k] * projs[b])));
            if (best > 1e-8) parent[find(a)] = find(b);
        }
    std::vector<std::vector<int>> groups;
    std::vector<int> root_to_group(np, -1);
    for (int a = 0; a < np; ++a) {
        int r = find(a);
        if (root_to_group[r] < 0) {
            root_to_group[r] = static_cast<int>(groups.size());
            groups.emplace_back();
        }
        groups[root_to_group[r]].push_back(a);
    }

    struct Block {
        int dim;
        bool trivial;
        int key;
        std::vector<int> members;
    };
    std::vector<Block> blocks;
    for (auto& g : groups) {
        Mat p = Mat::Zero(n, n);
        for (int a : g) p += projs[a];
        Vec pc = to_coords(p);
        int key = 0;
        pc.cwiseAbs().maxCoeff(&key);
        bool triv = g.size() == 1 && std::abs((d.counit * pc)(0) - 1.0) < 1e-8;
        blocks.push_back({static_cast<int>(g.size()), triv, key, g});
    }
    std::stable_sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) {
        if (a.trivial != b.trivial) return a.trivial;
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.key < b.key;
    });

    Wedderburn w;
    for (auto& b : blocks) {
        const int dd = b.dim;
        w.dims.push_back(dd);
        const Mat& f1 = projs[b.members[0]];
        std::vector<Mat> col1(dd);
        col1[0] = f1;
        for (int i = 1; i < dd; ++i) {
            const Mat& fi = projs[b.members[i]];
            Mat best;
            double bn = -1.0;
            for (int k = 0; k < n; ++k) {
                Mat v = fi * pib[k] * f1;
                double nv = v.norm();
                if (nv > bn) {
                    bn = nv;
                    best = v;
                }
            }
            double mu = (best.adjoint() * best).trace().real() / f1.trace().real();
            col1[i] = best / std::sqrt(mu);
        }
        std::vector<Vec> units(static_cast<size_t>(dd) * dd);
        for (int i = 0; i < dd; ++i)
            for (int j = 0; j < dd; ++j) units[i * dd + j] = to_coords(Mat(col1[i] * col1[j].adjoint()));
        w.units.push_back(std::move(units));
    }
    const int tot = w.total();
    if (tot != n) throw Error("DimensionMismatch", "block dimensions do not add up to the algebra dimension");
    w.from_blocks = Mat(n, tot);
    int c = 0;
    for (auto& u : w.units)
        for (auto& v : u) w.from_blocks.col(c++) = v;
    w.to_blocks = w.from_blocks.inverse();
    return w;
}

BidualIso biduality(const Engine& g) {
    Engine gh = build_engine(g.dual.data);
    const HopfData& a = g.data;
    const HopfData& hh = gh.dual.data;
    const int n = a.dim;
    Mat p(n, n), ph(n, n);
    for (int x = 0; x < n; ++x)
        for (int b = 0; b < n; ++b) {
            auto [i, j] = g.dual.slice[b];
            p(x, b) = g.pi_basis[x](i, j);
        }
    for (int d = 0; d < n; ++d)
        for (int c = 0; c < n; ++c) {
            auto [i, j] = gh.dual.slice[c];
            ph(d, c) = gh.pi_basis[d](i, j);
        }
    BidualIso iso;
    iso.phi = ph.inverse() * p.transpose() * a.antipode.inverse();
    const Mat& f = iso.phi;
    double mres = 0.0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            Vec lhs = f * a.mult.col(static_cast<long>(x) * n + y);
            Vec rhs = hh.mul(f.col(x), f.col(y));
            mres = std::max(mres, max_abs(Vec(lhs - rhs)));
        }
    auto add = [&](const std::string& name, double r) {
        iso.checks.push_back({name, r, 1e-8, r <= 1e-8});
        iso.residual = std::max(iso.residual, r);
    };
    add("bidual multiplicative", mres);
    add("bidual comultiplicative", max_abs(Mat(kron(f, f) * a.comult - hh.comult * f)));
    add("bidual unital", max_abs(Vec(f * a.unit - hh.unit)));
    add("bidual counit", max_abs(Mat(hh.counit * f - a.counit)));
    add("bidual star", max_abs(Mat(f * a.star - hh.star * f.conjugate())));
    add("bidual antipode", max_abs(Mat(f * a.antipode - hh.antipode * f)));
    return iso;
}

std::string to_string(L2Class c) {
    switch (c) {
        case L2Class::LeftCentralizer: return "LeftCentralizer";
        case L2Class::RightCentralizer: return "RightCentralizer";
        case L2Class::Central: return "Central";
        case L2Class::None: return "None";
    }
    return "None";
}

Mat dagger(const HopfData& alg, const Mat& phi) { return alg.star * phi.conjugate() * alg.star.conjugate(); }

L2Classification classify_l2_implementation(const Engine& g, const Mat& phi) {
    const HopfData& ah = g.dual.data;
    const int n = ah.dim;
    L2Classification out;
    out.T = g.lambda_hat * dagger(ah, phi) * g.lambda_hat.inverse();
    double scale = std::max(1.0, max_abs(out.T));
    const double thr = 1e-8;
    double r = 0.0;
    g.pi_coords(out.T, &r);
    out.in_algebra = r / scale <= thr;
    double comm = 0.0;
    for (const Mat& p : g.pi_basis) comm = std::max(comm, max_abs(Mat(out.T * p - p * out.T)));
    out.in_commutant = comm / scale <= thr;

    Mat id = Mat::Identity(n, n);
    double pscale = std::max(1.0, max_abs(phi));
    double lc = max_abs(Mat(ah.comult * phi - kron(phi, id) * ah.comult)) / pscale;
    double rc = max_abs(Mat(ah.comult * phi - kron(id, phi) * ah.comult)) / pscale;
    out.left_centralizer = lc <= thr;
    out.right_centralizer = rc <= thr;
    if (out.in_algebra != out.left_centralizer || out.in_commutant != out.right_centralizer)
        throw Error("EquivalenceViolation", "implementing operator and centralizer identities disagree",
                    std::max(lc, rc));
    if (out.left_centralizer && out.right_centralizer)
        out.cls = L2Class::Central;
    else if (out.left_centralizer)
        out.cls = L2Class::LeftCentralizer;
    else if (out.right_centralizer)
        out.cls = L2Class::RightCentralizer;
    else
        out.cls = L2Class::None;
    return out;
}

}  // namespace qg
