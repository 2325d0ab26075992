#include "qg/corep.hpp"

#include <algorithm>
#include <cmath>

namespace qg {

int IrrTable::index(const std::string& label) const {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw Error("UnknownLabel", "label '" + label + "' not in table");
    return static_cast<int>(it - labels.begin());
}

int IrrTable::N(int a, int b, int c) const {
    if (!has_fusion) throw Error("MissingFusionData", "table carries no fusion rules");
    auto it = fusion.find({a, b, c});
    return it == fusion.end() ? 0 : it->second;
}

bool IrrTable::kac(double tol) const {
    for (const auto& r : rho)
        for (Eigen::Index i = 0; i < r.size(); ++i)
            if (std::abs(r(i) - 1.0) > tol) return false;
    return true;
}

double IrrTable::dim_q(int a) const { return rho[a].sum(); }

std::optional<Mat> IrrTable::intertwiner(int a) const {
    if (a < static_cast<int>(conj_intertwiner.size()) && conj_intertwiner[a]) return conj_intertwiner[a];
    if (dims[a] == 1) return Mat::Identity(1, 1);
    return std::nullopt;
}

std::vector<Check> validate_table(const IrrTable& t) {
    std::vector<Check> out;
    const int L = t.size();
    auto add = [&](const std::string& name, double r, double thr = 1e-9) { out.push_back({name, r, thr, r <= thr}); };
    if (static_cast<int>(t.dims.size()) != L || static_cast<int>(t.rho.size()) != L ||
        static_cast<int>(t.conj.size()) != L || t.trivial < 0 || t.trivial >= L)
        throw Error("DimensionMismatch", "table fields disagree with the label count");
    double structural = 0.0;
    if (t.dims[t.trivial] != 1 || t.conj[t.trivial] != t.trivial) structural = 1.0;
    for (int a = 0; a < L; ++a) {
        int c = t.conj[a];
        if (c < 0 || c >= L || t.conj[c] != a || t.dims[c] != t.dims[a]) structural = 1.0;
        if (t.rho[a].size() != t.dims[a]) throw Error("ShapeMismatch", "rho of " + t.labels[a] + " has wrong size");
    }
    add("conjugation involutive and dimension preserving", structural, 0.0);
    double qd = 0.0, pos = 0.0;
    for (int a = 0; a < L; ++a) {
        if (t.rho[a].minCoeff() <= 0.0) pos = 1.0;
        qd = std::max(qd, std::abs(t.rho[a].sum() - t.rho[a].cwiseInverse().sum()));
    }
    add("rho positive", pos, 0.0);
    add("Tr(rho) = Tr(rho^-1)", qd);
    if (t.has_fusion) {
        double frob = 0.0, unit = 0.0;
        for (int a = 0; a < L; ++a)
            for (int b = 0; b < L; ++b)
                for (int c = 0; c < L; ++c) {
                    frob = std::max(frob, static_cast<double>(std::abs(t.N(a, b, c) - t.N(t.conj[a], c, b))));
                }
        for (int b = 0; b < L; ++b)
            for (int c = 0; c < L; ++c) unit = std::max(unit, std::abs(t.N(t.trivial, b, c) - (b == c ? 1.0 : 0.0)));
        add("Frobenius reciprocity", frob, 0.0);
        add("fusion unit law", unit, 0.0);
    }
    double tc = 0.0;
    for (int a = 0; a < L; ++a) {
        auto ta = t.intertwiner(a), tb = t.intertwiner(t.conj[a]);
        if (!ta || !tb) continue;
        // T_{conj a} must be proportional to conj(T_a)^{-1}
        Mat p = tb.value() * ta.value().conjugate();
        cd s = p(0, 0);
        tc = std::max(tc, max_abs(Mat(p - s * Mat::Identity(p.rows(), p.cols()))) / std::max(1e-300, std::abs(s)));
    }
    add("conjugation intertwiners compatible", tc);
    return out;
}

void require_valid(const IrrTable& t) {
    for (const auto& c : validate_table(t))
        if (!c.pass) throw Error("InvalidTable", c.name, c.residual);
}

FinSupp identity_on(const IrrTable& t, const std::vector<int>& support) {
    FinSupp a;
    for (int l : support) a.blocks[l] = Mat::Identity(t.dims[l], t.dims[l]);
    return a;
}

bool is_central(const FinSupp& a, double tol) {
    for (const auto& [l, m] : a.blocks) {
        Mat d = m - m(0, 0) * Mat::Identity(m.rows(), m.cols());
        if (max_abs(d) > tol) return false;
    }
    return true;
}

double sup_norm(const FinSupp& a) {
    double s = 0.0;
    for (const auto& [l, m] : a.blocks) s = std::max(s, op_norm(m));
    return s;
}

void check_shapes(const IrrTable& t, const FinSupp& a) {
    for (const auto& [l, m] : a.blocks)
        if (l < 0 || l >= t.size() || m.rows() != t.dims[l] || m.cols() != t.dims[l])
            throw Error("ShapeMismatch", "block shape does not match the table");
}

void check_shapes(const IrrTable& t, const PolElement& x) {
    for (const auto& [l, m] : x.coeffs)
        if (l < 0 || l >= t.size() || m.rows() != t.dims[l] || m.cols() != t.dims[l])
            throw Error("ShapeMismatch", "coefficient shape does not match the table");
}

template <class M>
static M add_maps(const M& a, const M& b, cd sb) {
    M out = a;
    for (const auto& [l, m] : b) {
        auto it = out.find(l);
        if (it == out.end())
            out[l] = sb * m;
        else
            it->second += sb * m;
    }
    return out;
}

FinSupp add(const FinSupp& a, const FinSupp& b, cd sb) { return {add_maps(a.blocks, b.blocks, sb)}; }
PolElement add(const PolElement& a, const PolElement& b, cd sb) { return {add_maps(a.coeffs, b.coeffs, sb)}; }

FinSupp multiply(const FinSupp& a, const FinSupp& b) {
    FinSupp out;
    for (const auto& [l, m] : a.blocks) {
        auto it = b.blocks.find(l);
        if (it != b.blocks.end()) out.blocks[l] = m * it->second;
    }
    return out;
}

double max_abs(const FinSupp& a) {
    double s = 0.0;
    for (const auto& [l, m] : a.blocks) s = std::max(s, max_abs(m));
    return s;
}

double max_abs(const PolElement& x) {
    double s = 0.0;
    for (const auto& [l, m] : x.coeffs) s = std::max(s, max_abs(m));
    return s;
}

PolElement theta_apply(const IrrTable& t, const FinSupp& a, const PolElement& x) {
    check_shapes(t, a);
    check_shapes(t, x);
    PolElement out;
    for (const auto& [l, c] : x.coeffs) {
        auto it = a.blocks.find(l);
        if (it != a.blocks.end()) out.coeffs[l] = it->second.transpose() * c;
    }
    return out;
}

namespace {

const Mat& need_T(const IrrTable& t, int a, std::optional<Mat>& slot) {
    slot = t.intertwiner(a);
    if (!slot) throw Error("MissingConjugationData", "no conjugation intertwiner for " + t.labels[a]);
    return *slot;
}

}  // namespace

PolElement pol_star(const IrrTable& t, const PolElement& x) {
    PolElement out;
    for (const auto& [l, c] : x.coeffs) {
        std::optional<Mat> slot;
        const Mat& T = need_T(t, l, slot);
        Mat y = T.transpose() * c.conjugate() * T.inverse().transpose();
        int cl = t.conj[l];
        auto it = out.coeffs.find(cl);
        if (it == out.coeffs.end())
            out.coeffs[cl] = y;
        else
            it->second += y;
    }
    return out;
}

FinSupp star(const FinSupp& a) {
    FinSupp out;
    for (const auto& [l, m] : a.blocks) out.blocks[l] = m.adjoint();
    return out;
}

// S(b)^a = conj(T_a) (b^{conj a})^T conj(T_a)^{-1}
FinSupp antipode(const IrrTable& t, const FinSupp& b) {
    check_shapes(t, b);
    FinSupp out;
    const bool central = is_central(b);
    for (const auto& [l, m] : b.blocks) {
        int target = t.conj[l];
        if (central) {
            out.blocks[target] = m(0, 0) * Mat::Identity(t.dims[target], t.dims[target]);
            continue;
        }
        std::optional<Mat> slot;
        Mat Tc = need_T(t, target, slot).conjugate();
        out.blocks[target] = Tc * m.transpose() * Tc.inverse();
    }
    return out;
}

// S^{-1}(c)^{conj a} = T_a^* (c^a)^T T_a^{-*}
FinSupp l2_implement(const IrrTable& t, const FinSupp& c) {
    check_shapes(t, c);
    FinSupp out;
    const bool central = is_central(c);
    for (const auto& [l, m] : c.blocks) {
        int target = t.conj[l];
        if (central) {
            out.blocks[target] = m(0, 0) * Mat::Identity(t.dims[target], t.dims[target]);
            continue;
        }
        std::optional<Mat> slot;
        Mat Ta = need_T(t, l, slot).adjoint();
        out.blocks[target] = Ta * m.transpose() * Ta.inverse();
    }
    return out;
}

FinSupp multiplier_involution(const IrrTable& t, const FinSupp& a) { return antipode(t, star(a)); }

PolElement scaling_modular_action(const IrrTable& t, double time, const PolElement& x, ModularKind which) {
    check_shapes(t, x);
    PolElement out;
    for (const auto& [l, c] : x.coeffs) {
        const RVec& r = t.rho[l];
        Mat y = c;
        for (Eigen::Index i = 0; i < y.rows(); ++i)
            for (Eigen::Index j = 0; j < y.cols(); ++j) {
                double ph = std::log(r(i)) * time + (which == ModularKind::Tau ? -1.0 : 1.0) * std::log(r(j)) * time;
                y(i, j) *= std::exp(cd(0.0, ph));
            }
        out.coeffs[l] = y;
    }
    return out;
}

FinSupp scaling_modular_action(const IrrTable& t, double time, const FinSupp& a, ModularKind which) {
    check_shapes(t, a);
    const double sgn = which == ModularKind::SigmaPsi ? 1.0 : -1.0;
    FinSupp out;
    for (const auto& [l, m] : a.blocks) {
        const RVec& r = t.rho[l];
        Mat y = m;
        for (Eigen::Index i = 0; i < y.rows(); ++i)
            for (Eigen::Index j = 0; j < y.cols(); ++j)
                y(i, j) *= std::exp(cd(0.0, sgn * time * (std::log(r(i)) - std::log(r(j)))));
        out.blocks[l] = y;
    }
    return out;
}

FinSupp symmetrize_ap_net(const IrrTable& t, const FinSupp& a) {
    check_shapes(t, a);
    FinSupp b;
    for (const auto& [l, m] : a.blocks) {
        Mat y = m;
        const RVec& r = t.rho[l];
        for (Eigen::Index i = 0; i < y.rows(); ++i)
            for (Eigen::Index j = 0; j < y.cols(); ++j)
                if (std::abs(r(i) - r(j)) > 1e-12 * std::max(r(i), r(j))) y(i, j) = 0.0;
        b.blocks[l] = y;
    }
    FinSupp c = add(b, multiplier_involution(t, b));
    for (auto& [l, m] : c.blocks) m *= 0.5;
    auto it = c.blocks.find(t.trivial);
    double ce = it == c.blocks.end() ? 0.0 : it->second(0, 0).real();
    if (std::abs(ce) < 1e-14) throw Error("DegenerateUnitCoefficient", "trivial coefficient vanishes after symmetrization");
    for (auto& [l, m] : c.blocks) m /= ce;
    return c;
}

FinSupp central_average(const IrrTable& t, const FinSupp& a) {
    check_shapes(t, a);
    FinSupp out;
    for (const auto& [l, m] : a.blocks)
        out.blocks[l] = (m.trace() / static_cast<double>(t.dims[l])) * Mat::Identity(t.dims[l], t.dims[l]);
    return out;
}

void require_subcategory(const IrrTable& t, const std::set<int>& sub) {
    if (!sub.count(t.trivial)) throw Error("NotASubcategory", "subset does not contain the trivial label");
    for (int a : sub)
        if (!sub.count(t.conj[a])) throw Error("NotASubcategory", "subset not closed under conjugation at " + t.labels[a]);
    if (!t.has_fusion) return;
    for (int a : sub)
        for (int b : sub)
            for (int c = 0; c < t.size(); ++c)
                if (t.N(a, b, c) > 0 && !sub.count(c))
                    throw Error("NotASubcategory", t.labels[a] + " x " + t.labels[b] + " contains " + t.labels[c]);
}

PolElement subgroup_expectation(const IrrTable& t, const std::set<int>& sub, const PolElement& x) {
    require_subcategory(t, sub);
    check_shapes(t, x);
    PolElement out;
    for (const auto& [l, c] : x.coeffs)
        if (sub.count(l)) out.coeffs[l] = c;
    return out;
}

cd haar_pair(const IrrTable& t, const PolElement& x) {
    auto it = x.coeffs.find(t.trivial);
    return it == x.coeffs.end() ? cd(0.0) : it->second(0, 0);
}

Mat schur_gram(const IrrTable& t, const std::vector<int>& support) {
    int total = 0;
    for (int l : support) total += t.dims[l] * t.dims[l];
    Mat g = Mat::Zero(total, total);
    int off = 0;
    double kms = 0.0;
    for (int l : support) {
        const int d = t.dims[l];
        const RVec& r = t.rho[l];
        const double dq = t.dim_q(l);
        // h(U_ij^* U_kl) = d_ik d_jl / (rho_i dim_q),  h(U_kl U_ij^*) = d_ik d_jl rho_j / dim_q
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                double left = 1.0 / (r(i) * dq);
                double right = r(j) / dq;
                // KMS: h(x y) = h(y sigma_{-i}(x)) with sigma_{-i}(U_ij) = rho_i rho_j U_ij
                kms = std::max(kms, std::abs(right - r(i) * r(j) * left));
                g(off + i * d + j, off + i * d + j) = left;
            }
        // unitarity of U forces both rows of relations to sum to one
        for (int i = 0; i < d; ++i) {
            double s1 = 0.0, s2 = 0.0;
            for (int k = 0; k < d; ++k) {
                s1 += 1.0 / (r(k) * dq);
                s2 += r(k) / dq;
            }
            kms = std::max({kms, std::abs(s1 - 1.0), std::abs(s2 - 1.0)});
        }
        off += d * d;
    }
    if (kms > 1e-10) throw Error("KmsViolation", "orthogonality relations violate KMS or unitarity", kms);
    return g;
}

double norm(const Functional& w) {
    double s = 0.0;
    for (const auto& [l, m] : w.blocks) s += trace_norm(m);
    return s;
}

FinSupp module_action(const IrrTable& t, const FinSupp& a, const Functional& w, const EngineTable* engine) {
    check_shapes(t, a);
    if (engine) {
        const Engine& g = *engine->g;
        const int n = g.data.dim;
        Vec x = engine->to_algebra(a);
        // omega on the basis of A
        Vec om = Vec::Zero(n);
        for (int k = 0; k < n; ++k) {
            FinSupp ek = engine->from_algebra(g.data.basis_vec(k));
            cd s = 0.0;
            for (const auto& [l, m] : w.blocks) {
                auto it = ek.blocks.find(l);
                if (it != ek.blocks.end()) s += (m * it->second).trace();
            }
            om(k) = s;
        }
        Mat D = unvec(g.data.comult * x, n, n);
        Vec y = D.transpose() * om;
        return engine->from_algebra(y);
    }
    if (!t.has_fusion) throw Error("MissingFusionData", "module action needs fusion rules");
    const int L = t.size();
    bool group = std::all_of(t.dims.begin(), t.dims.end(), [](int d) { return d == 1; });
    FinSupp out;
    if (group) {
        for (int g = 0; g < L; ++g) {
            cd s = 0.0;
            for (const auto& [h, om] : w.blocks)
                for (const auto& [k, ak] : a.blocks)
                    if (t.N(h, g, k) > 0) s += om(0, 0) * ak(0, 0);
            if (s != cd(0.0)) out.blocks[g] = Mat::Constant(1, 1, s);
        }
        return out;
    }
    Functional wc{w.blocks};
    FinSupp ac = a;
    bool central_ok = t.kac() && is_central(a);
    for (const auto& [l, m] : w.blocks)
        if (max_abs(Mat(m - m(0, 0) * Mat::Identity(m.rows(), m.cols()))) > 1e-12) central_ok = false;
    if (!central_ok)
        throw Error("MissingFusionData", "fusion rules determine the action only for central inputs on Kac tables");
    for (int b = 0; b < L; ++b) {
        cd s = 0.0;
        for (const auto& [al, om] : w.blocks)
            for (const auto& [g, ag] : a.blocks) {
                int nn = t.N(al, b, g);
                if (nn) s += om(0, 0) * ag(0, 0) * static_cast<double>(nn * t.dims[g]) / static_cast<double>(t.dims[b]);
            }
        if (s != cd(0.0)) out.blocks[b] = s * Mat::Identity(t.dims[b], t.dims[b]);
    }
    return out;
}

// ---------------------------------------------------------------------------

Vec EngineTable::to_algebra(const FinSupp& a) const {
    Vec x = Vec::Zero(g->data.dim);
    for (const auto& [l, m] : a.blocks) {
        const int d = table.dims[l];
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) x += m(i, j) * blocks.units[l][i * d + j];
    }
    return x;
}

FinSupp EngineTable::from_algebra(const Vec& x) const {
    Vec c = blocks.to_blocks * x;
    FinSupp a;
    int off = 0;
    for (int l = 0; l < table.size(); ++l) {
        const int d = table.dims[l];
        a.blocks[l] = unvec(c.segment(off, d * d), d, d);
        off += d * d;
    }
    return a;
}

Vec EngineTable::to_dual(const PolElement& x) const {
    Vec c = Vec::Zero(u_to_dual.cols());
    std::vector<int> offs(table.size(), 0);
    for (int l = 1; l < table.size(); ++l) offs[l] = offs[l - 1] + table.dims[l - 1] * table.dims[l - 1];
    for (const auto& [l, m] : x.coeffs) c.segment(offs[l], m.size()) = vec(m);
    return u_to_dual * c;
}

PolElement EngineTable::from_dual(const Vec& v) const {
    Vec c = dual_to_u * v;
    PolElement x;
    int off = 0;
    for (int l = 0; l < table.size(); ++l) {
        const int d = table.dims[l];
        x.coeffs[l] = unvec(c.segment(off, d * d), d, d);
        off += d * d;
    }
    return x;
}

Mat EngineTable::block_matrix(const FinSupp& a) const {
    const int n = static_cast<int>(u_to_dual.cols());
    Mat m = Mat::Zero(n, n);
    int off = 0;
    for (int l = 0; l < table.size(); ++l) {
        const int d = table.dims[l];
        auto it = a.blocks.find(l);
        if (it != a.blocks.end())
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    for (int k = 0; k < d; ++k) m(off + i * d + j, off + k * d + j) = it->second(k, i);
        off += d * d;
    }
    return m;
}

Mat EngineTable::theta_formula(const FinSupp& a) const { return u_to_dual * block_matrix(a) * dual_to_u; }

Mat EngineTable::theta_engine(const Vec& a) const {
    const int n = g->data.dim;
    Mat what = g->w_hat();
    Mat pa = g->pi(a).transpose();
    Mat s(n, static_cast<long>(n) * n), sp(n, static_cast<long>(n) * n);
    for (int r = 0; r < n; ++r)
        for (int q = 0; q < n; ++q) {
            Mat f = Mat::Zero(n, n);
            f(r, q) = 1.0;
            s.col(static_cast<long>(r) * n + q) = g->dual.coords(slice_second(what, f, n, n));
            sp.col(static_cast<long>(r) * n + q) = g->dual.coords(slice_second(what, Mat(pa * f), n, n));
        }
    return sp * pinv(s);
}

double EngineTable::w_hat_relation(const Vec& a, const Mat& theta) const {
    const int n = g->data.dim;
    Mat what = g->w_hat();
    Mat lhs = kron(Mat::Identity(n, n), g->pi(a)) * what;
    Mat rhs = Mat::Zero(lhs.rows(), lhs.cols());
    for (int k = 0; k < n; ++k)
        rhs += kron(g->dual.op(theta * u_to_dual.col(k)), g->pi(blocks.from_blocks.col(k)));
    return max_abs(Mat(lhs - rhs));
}

EngineTable bridge(const Engine& g, const std::vector<std::string>& labels, unsigned long seed) {
    EngineTable et;
    et.g = &g;
    const int n = g.data.dim;
    const long n2 = static_cast<long>(n) * n;
    et.blocks = wedderburn(g.data, g.haar, seed);
    et.dual_haar = haar_state(g.dual.data);
    et.dual_blocks = wedderburn(g.dual.data, et.dual_haar, seed);

    Mat e(n2, n);
    for (int k = 0; k < n; ++k) e.col(k) = vec(g.pi(et.blocks.from_blocks.col(k)));
    Mat what = g.w_hat();
    Mat wr(n2, n2);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s) wr(p * n + q, r * n + s) = what(p * n + r, q * n + s);
    Mat x = wr * pinv(Mat(e.transpose()));
    double r = max_abs(Mat(x * e.transpose() - wr));
    if (r > 1e-9) throw Error("SpanNotClosed", "W^ does not split along the blocks", r);
    et.u_to_dual = Mat(n, n);
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
        et.u_to_dual.col(k) = g.dual.coords(unvec(x.col(k), n, n), &r);
        worst = std::max(worst, r);
    }
    if (worst > 1e-9) throw Error("SpanNotClosed", "coefficients outside the dual algebra", worst);
    et.dual_to_u = et.u_to_dual.inverse();

    IrrTable& t = et.table;
    const int L = static_cast<int>(et.blocks.dims.size());
    t.dims = et.blocks.dims;
    t.trivial = 0;
    if (!labels.empty()) {
        if (static_cast<int>(labels.size()) != L) throw Error("DimensionMismatch", "wrong number of labels");
        t.labels = labels;
    } else {
        for (int l = 0; l < L; ++l) t.labels.push_back(l == 0 ? "e" : "b" + std::to_string(l));
    }
    for (int l = 0; l < L; ++l) t.rho.push_back(RVec::Ones(t.dims[l]));
    std::vector<int> offs(L, 0);
    for (int l = 1; l < L; ++l) offs[l] = offs[l - 1] + t.dims[l - 1] * t.dims[l - 1];
    et.U.resize(L);
    for (int l = 0; l < L; ++l)
        for (int k = 0; k < t.dims[l] * t.dims[l]; ++k) et.U[l].push_back(et.u_to_dual.col(offs[l] + k));

    const HopfData& ah = g.dual.data;
    double corep = 0.0;
    for (int l = 0; l < L; ++l) {
        const int d = t.dims[l];
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                Vec lhs = ah.comult * et.U[l][i * d + j];
                Vec rhs = Vec::Zero(lhs.size());
                for (int k = 0; k < d; ++k) rhs += kron(et.U[l][i * d + k], et.U[l][k * d + j]);
                corep = std::max(corep, max_abs(Vec(lhs - rhs)));
            }
    }
    et.corep_residual = corep;
    if (corep > 1e-9) throw Error("SpanNotClosed", "extracted coefficients do not form corepresentations", corep);

    t.conj.assign(L, -1);
    t.conj_intertwiner.assign(L, std::nullopt);
    double conj_res = 0.0;
    for (int l = 0; l < L; ++l) {
        const int d = t.dims[l];
        std::vector<Vec> ys(d * d);
        for (int k = 0; k < d * d; ++k) ys[k] = et.dual_to_u * ah.adj(et.U[l][k]);
        int best = -1;
        double bm = -1.0;
        for (int b = 0; b < L; ++b) {
            if (t.dims[b] != d) continue;
            double mass = 0.0;
            for (auto& y : ys) mass += y.segment(offs[b], d * d).squaredNorm();
            if (mass > bm) {
                bm = mass;
                best = b;
            }
        }
        t.conj[l] = best;
        auto C = [&](int i, int j, int k, int q) { return ys[i * d + j](offs[best] + k * d + q); };
        int j0 = 0, q0 = 0;
        double top = -1.0;
        for (int j = 0; j < d; ++j)
            for (int q = 0; q < d; ++q) {
                double s = 0.0;
                for (int i = 0; i < d; ++i)
                    for (int k = 0; k < d; ++k) s += std::norm(C(i, j, k, q));
                if (s > top) {
                    top = s;
                    j0 = j;
                    q0 = q;
                }
            }
        Mat T(d, d);
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k) T(i, k) = C(i, j0, k, q0);
        T /= T.norm() / std::sqrt(static_cast<double>(d));
        Mat Ti = T.inverse();
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                Vec pred = Vec::Zero(n);
                for (int k = 0; k < d; ++k)
                    for (int q = 0; q < d; ++q) pred(offs[best] + k * d + q) = T(i, k) * Ti(q, j);
                conj_res = std::max(conj_res, max_abs(Vec(pred - ys[i * d + j])));
            }
        t.conj_intertwiner[l] = T;
    }
    et.conj_residual = conj_res;
    if (conj_res > 1e-8) throw Error("SpanNotClosed", "adjoint coefficients do not match a conjugate block", conj_res);

    t.has_fusion = true;
    std::vector<Vec> chi(L);
    for (int l = 0; l < L; ++l) {
        chi[l] = Vec::Zero(n);
        for (int i = 0; i < t.dims[l]; ++i) chi[l] += et.U[l][i * t.dims[l] + i];
    }
    for (int a = 0; a < L; ++a)
        for (int b = 0; b < L; ++b) {
            Vec ab = ah.mul(chi[a], chi[b]);
            for (int c = 0; c < L; ++c) {
                cd v = (et.dual_haar.h * ah.mul(ah.adj(chi[c]), ab))(0);
                int m = static_cast<int>(std::lround(v.real()));
                if (std::abs(v - cd(m)) > 1e-8) throw Error("SpanNotClosed", "non-integral fusion multiplicity");
                if (m) t.fusion[{a, b, c}] = m;
            }
        }
    return et;
}

}  // namespace qg
