#include "qg/category.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qg {

int FusionRing::mult(int i, int j, int k) const {
    auto it = N.find({i, j, k});
    return it == N.end() ? 0 : it->second;
}

int FusionRing::index(const std::string& label) const {
    for (int i = 0; i < size(); ++i)
        if (labels[i] == label) return i;
    throw Error("UnknownLabel", "no label '" + label + "'");
}

bool FusionRing::closed(int i, int j) const { return !max_grade || grade[i] + grade[j] <= *max_grade; }

namespace {

void record(ValidationReport& rep, const std::string& name, double res, double thr) {
    rep.checks.push_back({name, res, thr, res <= thr});
}

}  // namespace

ValidationReport verify_fusion_ring(const FusionRing& r, double tol) {
    ValidationReport rep;
    const int n = r.size();
    if (static_cast<int>(r.conj.size()) != n || r.dq.size() != n || (r.max_grade && static_cast<int>(r.grade.size()) != n))
        throw Error("ShapeMismatch", "fusion ring fields disagree on the number of labels");

    double inv = 0.0;
    for (int i = 0; i < n; ++i) {
        const int c = r.conj[i];
        if (c < 0 || c >= n || r.conj[c] != i) inv = 1.0;
    }
    if (r.conj[r.unit] != r.unit) inv = 1.0;
    record(rep, "conj involution", inv, 0.0);
    if (inv > 0.0) return rep;

    double neg = 0.0;
    for (const auto& [key, m] : r.N) {
        for (int x : key)
            if (x < 0 || x >= n) throw Error("ShapeMismatch", "fusion triple outside the label set");
        if (m < 0) neg = std::max(neg, static_cast<double>(-m));
    }
    record(rep, "nonnegative multiplicities", neg, 0.0);

    double unit = 0.0;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const int d = i == k ? 1 : 0;
            unit = std::max(unit, static_cast<double>(std::abs(r.mult(r.unit, i, k) - d)));
            unit = std::max(unit, static_cast<double>(std::abs(r.mult(i, r.unit, k) - d)));
        }
    record(rep, "unit laws", unit, 0.0);

    double frob = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const int ib = r.conj[i], jb = r.conj[j];
                if (!r.closed(i, j) || !r.closed(ib, k) || !r.closed(k, jb)) continue;
                const int a = r.mult(i, j, k);
                frob = std::max(frob, static_cast<double>(std::abs(a - r.mult(ib, k, j))));
                frob = std::max(frob, static_cast<double>(std::abs(a - r.mult(k, jb, i))));
            }
    record(rep, "Frobenius reciprocity", frob, 0.0);

    // (ij)l and i(jl) as multisets of labels
    double assoc = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) {
                if (r.max_grade && r.grade[i] + r.grade[j] + r.grade[l] > *r.max_grade) continue;
                for (int m = 0; m < n; ++m) {
                    long lhs = 0, rhs = 0;
                    for (int k = 0; k < n; ++k) {
                        lhs += static_cast<long>(r.mult(i, j, k)) * r.mult(k, l, m);
                        rhs += static_cast<long>(r.mult(j, l, k)) * r.mult(i, k, m);
                    }
                    assoc = std::max(assoc, static_cast<double>(std::abs(lhs - rhs)));
                }
            }
    record(rep, "associativity", assoc, 0.0);

    double dqr = std::abs(r.dq(r.unit) - 1.0);
    for (int i = 0; i < n; ++i) {
        if (!(r.dq(i) > 0.0)) dqr = std::max(dqr, 1.0);
        dqr = std::max(dqr, std::abs(r.dq(i) - r.dq(r.conj[i])));
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!r.closed(i, j)) continue;
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += r.mult(i, j, k) * r.dq(k);
            dqr = std::max(dqr, std::abs(r.dq(i) * r.dq(j) - s) / std::max(1.0, r.dq(i) * r.dq(j)));
        }
    record(rep, "dq homomorphism", dqr, tol);

    // On a closed ring dq is the Perron eigenvector of sum_i N_i, normalized at the unit.
    if (!r.max_grade) {
        RMat L = RMat::Zero(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) L(k, j) += r.mult(i, j, k);
        Eigen::EigenSolver<RMat> es(L);
        int top = 0;
        for (int k = 1; k < n; ++k)
            if (es.eigenvalues()(k).real() > es.eigenvalues()(top).real()) top = k;
        Eigen::VectorXcd v = es.eigenvectors().col(top);
        v /= v(r.unit);
        record(rep, "dq Perron", max_abs(Vec(v - r.dq.cast<cd>())), tol);
    }
    return rep;
}

FusionRing fusion_ring_of(const IrrTable& t) {
    if (!t.has_fusion) throw Error("MissingFusionData", "table carries no fusion rules");
    FusionRing r;
    r.labels = t.labels;
    r.unit = t.trivial;
    r.conj = t.conj;
    r.N = t.fusion;
    r.dq = RVec(t.size());
    for (int a = 0; a < t.size(); ++a) r.dq(a) = t.dim_q(a);
    return r;
}

FusionRing rep_cyclic(int n) {
    FusionRing r;
    r.dq = RVec::Ones(n);
    for (int i = 0; i < n; ++i) {
        r.labels.push_back(i == 0 ? "e" : "chi" + std::to_string(i));
        r.conj.push_back((n - i) % n);
        for (int j = 0; j < n; ++j) r.N[{i, j, (i + j) % n}] = 1;
    }
    return r;
}

FusionRing rep_s3() {
    FusionRing r;
    r.labels = {"e", "sgn", "std"};
    r.conj = {0, 1, 2};
    r.dq = RVec(3);
    r.dq << 1.0, 1.0, 2.0;
    r.N = {{{0, 0, 0}, 1}, {{0, 1, 1}, 1}, {{0, 2, 2}, 1}, {{1, 0, 1}, 1}, {{1, 1, 0}, 1}, {{1, 2, 2}, 1},
           {{2, 0, 2}, 1}, {{2, 1, 2}, 1}, {{2, 2, 0}, 1}, {{2, 2, 1}, 1}, {{2, 2, 2}, 1}};
    return r;
}

FusionRing temperley_lieb(int L, double q, bool root_of_unity) {
    if (L < 0) throw Error("ShapeMismatch", "negative truncation");
    FusionRing r;
    r.dq = RVec(L + 1);
    for (int i = 0; i <= L; ++i) {
        r.labels.push_back(std::to_string(i));
        r.conj.push_back(i);
        r.grade.push_back(i);
        if (root_of_unity) {
            const double a = std::numbers::pi / (L + 2);
            r.dq(i) = std::sin((i + 1) * a) / std::sin(a);
        } else if (std::abs(q - 1.0) < 1e-15) {
            r.dq(i) = i + 1;
        } else {
            r.dq(i) = (std::pow(q, i + 1) - std::pow(q, -(i + 1))) / (q - 1.0 / q);
        }
        for (int j = 0; j <= L; ++j)
            for (int k = std::abs(i - j); k <= std::min(i + j, 2 * L - i - j); k += 2) r.N[{i, j, k}] = 1;
    }
    if (!root_of_unity) r.max_grade = L;
    return r;
}

std::map<int, cd> quantum_trace(const IrrTable& t, const FinSupp& f) {
    check_shapes(t, f);
    std::map<int, cd> out;
    for (const auto& [a, m] : f.blocks) out[a] = (t.rho[a].cast<cd>().asDiagonal() * m).trace();
    return out;
}

double quantum_trace_commutator(const IrrTable& t, const FinSupp& f, const FinSupp& g) {
    auto fg = quantum_trace(t, multiply(f, g));
    auto gf = quantum_trace(t, multiply(g, f));
    double r = 0.0;
    for (const auto& [a, v] : fg) r = std::max(r, std::abs(v - gf[a]));
    for (const auto& [a, v] : gf) r = std::max(r, std::abs(v - fg[a]));
    return r;
}

double sup_norm(const CatMultiplier& m) {
    double s = 0.0;
    for (cd v : m.theta) s = std::max(s, std::abs(v));
    return s;
}

void check_bound(const CatMultiplier& m) {
    if (m.cb_bound && sup_norm(m) > *m.cb_bound + 1e-12)
        throw Error("BoundViolation", "sup norm exceeds the attached cb bound", sup_norm(m) - *m.cb_bound);
}

namespace {

void need_size(const FusionRing& r, size_t k, const char* what) {
    if (static_cast<int>(k) != r.size())
        throw Error("ShapeMismatch", std::string(what) + " has " + std::to_string(k) + " entries for " +
                                         std::to_string(r.size()) + " labels");
}

}  // namespace

cd mult_pair(const FusionRing& r, const CatMultiplier& m, const std::vector<cd>& omega) {
    need_size(r, m.theta.size(), "theta");
    need_size(r, omega.size(), "omega");
    cd s = 0.0;
    for (int k = 0; k < r.size(); ++k) s += r.dq(k) * omega[k] * m.theta[k];
    return s;
}

double weighted_l1(const FusionRing& r, const std::vector<cd>& omega) {
    need_size(r, omega.size(), "omega");
    double s = 0.0;
    for (int k = 0; k < r.size(); ++k) s += r.dq(k) * std::abs(omega[k]);
    return s;
}

std::vector<cd> corner_multiply(const FusionRing& r, const std::vector<cd>& f, const std::vector<cd>& g) {
    need_size(r, f.size(), "f");
    need_size(r, g.size(), "g");
    if (r.N.empty() && r.size() > 0) throw Error("MissingFusionData", "ring carries no fusion rules");
    std::vector<cd> out(r.size(), 0.0);
    for (int i = 0; i < r.size(); ++i) {
        if (f[i] == cd(0.0)) continue;
        for (int j = 0; j < r.size(); ++j) {
            if (g[j] == cd(0.0)) continue;
            if (!r.closed(i, j))
                throw Error("TruncationExceeded", "product " + r.labels[i] + " * " + r.labels[j] + " leaves the truncation");
            for (int k = 0; k < r.size(); ++k) {
                const int m = r.mult(i, j, k);
                if (m) out[k] += static_cast<double>(m) * f[i] * g[j];
            }
        }
    }
    return out;
}

cd corner_trace(const FusionRing& r, const std::vector<cd>& f) {
    need_size(r, f.size(), "f");
    return r.dq(r.unit) * f[r.unit];
}

cd corner_pairing(const FusionRing& r, const CatMultiplier& m, const std::vector<cd>& f, const std::vector<cd>& g) {
    need_size(r, m.theta.size(), "theta");
    need_size(r, f.size(), "f");
    std::vector<cd> mf(f.size());
    for (size_t k = 0; k < f.size(); ++k) mf[k] = m.theta[k] * f[k];
    return corner_trace(r, corner_multiply(r, g, mf));
}

FinSupp central_correspondence(const IrrTable& t, const CatMultiplier& m) {
    if (static_cast<int>(m.theta.size()) != t.size())
        throw Error("ShapeMismatch", "theta needs one value per label of the table");
    FinSupp out;
    for (int a = 0; a < t.size(); ++a)
        if (m.theta[a] != cd(0.0)) out.blocks[a] = m.theta[a] * Mat::Identity(t.dims[a], t.dims[a]);
    return out;
}

DrinfeldMultiplier drinfeld_mult(const DrinfeldDouble& dd, const CatMultiplier& m) {
    const EngineTable& et = *dd.table;
    const IrrTable& t = et.table;
    if (static_cast<int>(m.theta.size()) != t.size())
        throw Error("BasisTagMissing", "theta has " + std::to_string(m.theta.size()) + " values for " +
                                           std::to_string(t.size()) + " coefficient labels");
    const DoubleCrossed& d = dd.d;
    const Engine& h = *dd.h;
    const int n1 = d.n1(), n2 = d.n2(), n = d.n();
    const Mat& u = dd.plancherel;

    // gamma_1(U^a_ij) gamma_2(x^b_kl); the coefficients U^a_ij of the dual act on
    // L^2(H) through the dual operators, the blocks of H through the Plancherel map.
    std::vector<Mat> ua, xb;
    std::vector<std::array<int, 3>> ta, tb;
    for (int a = 0; a < t.size(); ++a) {
        const int da = t.dims[a];
        for (int i = 0; i < da; ++i)
            for (int j = 0; j < da; ++j) {
                const Vec& c = et.U[a][i * da + j];
                Mat op = Mat::Zero(n1, n1);
                for (int k = 0; k < n1; ++k)
                    if (c(k) != cd(0.0)) op += c(k) * h.dual.ops[k];
                ua.push_back(gamma1(d, op));
                ta.push_back({a, i, j});
            }
    }
    const Wedderburn& wb = et.blocks;
    for (size_t b = 0; b < wb.dims.size(); ++b) {
        const int db = wb.dims[b];
        for (int k = 0; k < db; ++k)
            for (int l = 0; l < db; ++l) {
                xb.push_back(gamma2(d, Mat(u.adjoint() * h.pi(wb.units[b][k * db + l]) * u)));
                tb.push_back({static_cast<int>(b), k, l});
            }
    }
    if (static_cast<int>(ua.size() * xb.size()) != n) throw Error("BasisTagMissing", "tag basis does not match the double");

    DrinfeldMultiplier out;
    Mat bmat(static_cast<long>(n) * n, n);
    out.eigenvalues = Vec(n);
    int col = 0;
    for (size_t p = 0; p < ua.size(); ++p)
        for (size_t q = 0; q < xb.size(); ++q, ++col) {
            bmat.col(col) = vec(Mat(ua[p] * xb[q]));
            out.tags.push_back({ta[p][0], ta[p][1], ta[p][2], tb[q][0], tb[q][1], tb[q][2]});
            out.eigenvalues(col) = m.theta[ta[p][0]];
        }

    // theta (x) 1 as an element of L^infty(G_m) = L^infty(H^op) (x) L^infty(dual)
    FinSupp central = central_correspondence(t, m);
    Mat a = kron(h.pi(et.to_algebra(central)), Mat::Identity(n2, n2));

    Mat what = d.w_hat();
    Mat wr = reshuffle(what, n, n);
    Mat c = pinv(bmat) * wr;
    const double span = max_abs(Mat(bmat * c - wr));
    Mat lhs = bmat * out.eigenvalues.asDiagonal() * c;
    Mat rhs = reshuffle(left_second(what, a, n, n), n, n);
    out.residual = std::max(span, max_abs(Mat(lhs - rhs)));
    return out;
}

}  // namespace qg
