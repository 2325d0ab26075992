#include "qg/cbnorm.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace qg {

namespace {

int sum_sq(const std::vector<int>& s) {
    int t = 0;
    for (int d : s) t += d * d;
    return t;
}

std::vector<int> offsets_sq(const std::vector<int>& s) {
    std::vector<int> o(s.size(), 0);
    for (size_t k = 1; k < s.size(); ++k) o[k] = o[k - 1] + s[k - 1] * s[k - 1];
    return o;
}

// Permutation taking each block to its transpose.
Mat transpose_perm(const std::vector<int>& sizes) {
    const int n = sum_sq(sizes);
    Mat p = Mat::Zero(n, n);
    int off = 0;
    for (int d : sizes) {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) p(off + j * d + i, off + i * d + j) = 1.0;
        off += d * d;
    }
    return p;
}

}  // namespace

int BlockMap::domain_dim() const { return sum_sq(domain); }
int BlockMap::codomain_dim() const { return sum_sq(codomain); }

void check_shape(const BlockMap& f) {
    if (f.action.rows() != f.codomain_dim() || f.action.cols() != f.domain_dim())
        throw Error("ShapeMismatch", "action is " + std::to_string(f.action.rows()) + "x" +
                                         std::to_string(f.action.cols()) + ", blocks need " +
                                         std::to_string(f.codomain_dim()) + "x" + std::to_string(f.domain_dim()));
    for (int d : f.domain)
        if (d <= 0) throw Error("ShapeMismatch", "block sizes must be positive");
    for (int d : f.codomain)
        if (d <= 0) throw Error("ShapeMismatch", "block sizes must be positive");
}

BlockMap identity_map(const std::vector<int>& blocks) {
    const int n = sum_sq(blocks);
    return {blocks, blocks, Mat::Identity(n, n), "identity"};
}

BlockMap transpose_map(int d) { return {{d}, {d}, transpose_perm({d}), "transpose"}; }

BlockMap compose(const BlockMap& f, const BlockMap& g) {
    if (f.domain != g.codomain) throw Error("ShapeMismatch", "cannot compose: block structures differ");
    return {g.domain, f.codomain, f.action * g.action, f.name + " o " + g.name};
}

BlockMap direct_sum(const BlockMap& f, const BlockMap& g) {
    BlockMap h;
    h.domain = f.domain;
    h.domain.insert(h.domain.end(), g.domain.begin(), g.domain.end());
    h.codomain = f.codomain;
    h.codomain.insert(h.codomain.end(), g.codomain.begin(), g.codomain.end());
    h.action = Mat::Zero(f.action.rows() + g.action.rows(), f.action.cols() + g.action.cols());
    h.action.topLeftCorner(f.action.rows(), f.action.cols()) = f.action;
    h.action.bottomRightCorner(g.action.rows(), g.action.cols()) = g.action;
    h.name = f.name + " (+) " + g.name;
    return h;
}

BlockMap dagger(const BlockMap& f) {
    return {f.domain, f.codomain, transpose_perm(f.codomain) * f.action.conjugate() * transpose_perm(f.domain),
            f.name + "^dagger"};
}

std::vector<Mat> to_blocks(const std::vector<int>& sizes, const Vec& v) {
    std::vector<Mat> out;
    int off = 0;
    for (int d : sizes) {
        out.push_back(unvec(v.segment(off, d * d), d, d));
        off += d * d;
    }
    return out;
}

Vec from_blocks(const std::vector<int>& sizes, const std::vector<Mat>& blocks) {
    Vec v(sum_sq(sizes));
    int off = 0;
    for (size_t k = 0; k < sizes.size(); ++k) {
        v.segment(off, sizes[k] * sizes[k]) = vec(blocks[k]);
        off += sizes[k] * sizes[k];
    }
    return v;
}

Vec unit_vector(const std::vector<int>& sizes) {
    std::vector<Mat> b;
    for (int d : sizes) b.push_back(Mat::Identity(d, d));
    return from_blocks(sizes, b);
}

namespace {

// Choi-type matrix of the Hilbert-Schmidt adjoint of pi_b o f o P, where P
// is the block-diagonal compression of M_N onto the domain:
//   J[(P,k),(Q,l)] = Psi(E_kl)(P,Q) = conj(K[(b,k,l),(P,Q)]).
Mat choi_of_adjoint(const BlockMap& f, int b) {
    const auto cod_off = offsets_sq(f.codomain);
    const auto dom_off = offsets_sq(f.domain);
    const int mb = f.codomain[b];
    const int N = std::accumulate(f.domain.begin(), f.domain.end(), 0);
    Mat J = Mat::Zero(static_cast<long>(N) * mb, static_cast<long>(N) * mb);
    int pos = 0;
    for (size_t a = 0; a < f.domain.size(); ++a) {
        const int da = f.domain[a];
        for (int p = 0; p < da; ++p)
            for (int q = 0; q < da; ++q)
                for (int k = 0; k < mb; ++k)
                    for (int l = 0; l < mb; ++l)
                        J(static_cast<long>(pos + p) * mb + k, static_cast<long>(pos + q) * mb + l) =
                            std::conj(f.action(cod_off[b] + k * mb + l, dom_off[a] + p * da + q));
        pos += da;
    }
    return J;
}

struct HermEntry {
    int r, c;
    cd v;
};

// Real embedding H -> [[Re H, -Im H], [Im H, Re H]] of a sparse Hermitian
// matrix placed at offset `off` inside a Hermitian block of size h.
void embed_hermitian(std::map<std::pair<int, int>, double>& acc, const std::vector<HermEntry>& es, int off, int h,
                     double sign) {
    auto put = [&](int r, int c, double v) {
        if (v == 0.0 || r > c) return;
        acc[{r, c}] += sign * v;
    };
    for (const auto& e : es) {
        const int r = off + e.r, c = off + e.c;
        put(r, c, e.v.real());
        put(h + r, h + c, e.v.real());
        put(r, h + c, -e.v.imag());
        put(h + r, c, e.v.imag());
    }
}

void flush(std::vector<SdpEntry>& out, int block, const std::map<std::pair<int, int>, double>& acc) {
    for (const auto& [rc, v] : acc)
        if (v != 0.0) out.push_back({block, rc.first, rc.second, v});
}

struct BlockSdp {
    double lower, upper;
    int iterations;
};

// Watrous' dual SDP for the diamond norm of the map with Choi matrix J
// (output dimension N first, input dimension m second).
BlockSdp diamond_sdp(const Mat& J, int N, int m, const SdpOptions& opt) {
    const int D = N * m;
    SdpProblem p;
    p.block_sizes = {2 * m, 2 * m, 4 * D};
    p.C = {RMat::Zero(2 * m, 2 * m), RMat::Zero(2 * m, 2 * m), RMat::Zero(4 * D, 4 * D)};
    {
        std::vector<HermEntry> es;
        for (int r = 0; r < D; ++r)
            for (int c = 0; c < D; ++c)
                if (J(r, c) != cd(0.0)) {
                    es.push_back({r, D + c, -J(r, c)});
                    es.push_back({D + c, r, -std::conj(J(r, c))});
                }
        std::map<std::pair<int, int>, double> acc;
        embed_hermitian(acc, es, 0, 2 * D, 1.0);
        for (const auto& [rc, v] : acc) {
            p.C[2](rc.first, rc.second) = v;
            p.C[2](rc.second, rc.first) = v;
        }
    }
    std::vector<double> b;
    // s_0, s_1
    for (int w = 0; w < 2; ++w) {
        std::vector<SdpEntry> a;
        for (int r = 0; r < 2 * m; ++r) a.push_back({w, r, r, -1.0});
        p.A.push_back(a);
        b.push_back(-0.5);
    }
    // Hermitian parameters of Y_0 and Y_1
    for (int w = 0; w < 2; ++w) {
        for (int i = 0; i < D; ++i)
            for (int j = i; j < D; ++j)
                for (int part = 0; part < (i == j ? 1 : 2); ++part) {
                    std::vector<HermEntry> es;
                    if (i == j)
                        es.push_back({i, i, 1.0});
                    else if (part == 0) {
                        es.push_back({i, j, 1.0});
                        es.push_back({j, i, 1.0});
                    } else {
                        es.push_back({i, j, I_UNIT});
                        es.push_back({j, i, -I_UNIT});
                    }
                    std::vector<SdpEntry> a;
                    // partial trace over the output factor
                    std::vector<HermEntry> tr;
                    for (const auto& e : es)
                        if (e.r / m == e.c / m) tr.push_back({e.r % m, e.c % m, e.v});
                    std::map<std::pair<int, int>, double> acc0, acc2;
                    embed_hermitian(acc0, tr, 0, m, 1.0);
                    embed_hermitian(acc2, es, w * D, 2 * D, -1.0);
                    flush(a, w, acc0);
                    flush(a, 2, acc2);
                    p.A.push_back(a);
                    b.push_back(0.0);
                }
    }
    p.b = Eigen::Map<RVec>(b.data(), static_cast<long>(b.size()));
    SdpSolution s = solve_sdp(p, opt);
    return {-s.primal, 0.5 * (s.y(0) + s.y(1)), s.iterations};
}

}  // namespace

bool is_completely_positive(const BlockMap& f, double tol) {
    check_shape(f);
    for (size_t b = 0; b < f.codomain.size(); ++b) {
        Mat J = choi_of_adjoint(f, static_cast<int>(b));
        if (max_abs(Mat(J - J.adjoint())) > tol) return false;
        Mat h = 0.5 * (J + J.adjoint());
        if (Eigen::SelfAdjointEigenSolver<Mat>(h, Eigen::EigenvaluesOnly).eigenvalues().minCoeff() < -tol) return false;
    }
    return true;
}

CbResult cb_norm_exact(const BlockMap& f, const CbOptions& opt) {
    check_shape(f);
    if (f.domain_dim() > opt.cap || f.codomain_dim() > opt.cap)
        throw Error("CapExceeded", "algebra dimension above the cap of " + std::to_string(opt.cap));
    CbResult res;
    const int N = std::accumulate(f.domain.begin(), f.domain.end(), 0);
    for (size_t b = 0; b < f.codomain.size(); ++b) {
        Mat J = choi_of_adjoint(f, static_cast<int>(b));
        if (max_abs(J) == 0.0) continue;
        BlockSdp s = diamond_sdp(J, N, f.codomain[b], opt.sdp);
        res.lower = std::max(res.lower, s.lower);
        res.upper = std::max(res.upper, s.upper);
        res.iterations = std::max(res.iterations, s.iterations);
    }
    res.gap = std::abs(res.upper - res.lower);
    res.completely_positive = is_completely_positive(f);
    if (res.completely_positive) {
        auto img = to_blocks(f.codomain, f.action * unit_vector(f.domain));
        double v = 0.0;
        for (const auto& m : img) v = std::max(v, op_norm(m));
        res.value = v;
    } else {
        res.value = 0.5 * (res.lower + res.upper);
    }
    return res;
}

namespace {

struct Amplified {
    std::vector<Mat> blocks;  // index (p, i) -> p*n + i
};

Mat gather(const std::vector<int>& sizes, const Amplified& x, int n) {
    Mat out(sum_sq(sizes), static_cast<long>(n) * n);
    const auto off = offsets_sq(sizes);
    for (size_t a = 0; a < sizes.size(); ++a) {
        const int d = sizes[a];
        for (int p = 0; p < d; ++p)
            for (int q = 0; q < d; ++q)
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) out(off[a] + p * d + q, i * n + j) = x.blocks[a](p * n + i, q * n + j);
    }
    return out;
}

Amplified scatter(const std::vector<int>& sizes, const Mat& c, int n) {
    Amplified x;
    const auto off = offsets_sq(sizes);
    for (size_t a = 0; a < sizes.size(); ++a) {
        const int d = sizes[a];
        Mat m(d * n, d * n);
        for (int p = 0; p < d; ++p)
            for (int q = 0; q < d; ++q)
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) m(p * n + i, q * n + j) = c(off[a] + p * d + q, i * n + j);
        x.blocks.push_back(m);
    }
    return x;
}

// Alternating maximization from a starting point in the unit ball.
double ascend(const BlockMap& f, Amplified x, int n, Amplified* best) {
    double value = -1.0;
    for (int it = 0; it < 1000; ++it) {
        Amplified y = scatter(f.codomain, f.action * gather(f.domain, x, n), n);
        int bstar = 0;
        double v = -1.0;
        for (size_t b = 0; b < y.blocks.size(); ++b) {
            double nb = op_norm(y.blocks[b]);
            if (nb > v) {
                v = nb;
                bstar = static_cast<int>(b);
            }
        }
        if (v <= value + 1e-14) {
            value = std::max(value, v);
            break;
        }
        value = v;
        if (best) *best = x;
        Eigen::JacobiSVD<Mat> svd(y.blocks[bstar], Eigen::ComputeFullU | Eigen::ComputeFullV);
        Amplified u;
        for (size_t b = 0; b < y.blocks.size(); ++b) u.blocks.push_back(Mat::Zero(y.blocks[b].rows(), y.blocks[b].cols()));
        u.blocks[bstar] = svd.matrixU().col(0) * svd.matrixV().col(0).adjoint();
        Amplified g = scatter(f.domain, f.action.adjoint() * gather(f.codomain, u, n), n);
        for (auto& m : g.blocks) {
            if (max_abs(m) < 1e-300) continue;
            m = polar_unitary(m);
        }
        x = g;
    }
    return value;
}

Amplified pad(const Amplified& x, const std::vector<int>& sizes, int n_old, int n_new) {
    Amplified y;
    for (size_t a = 0; a < sizes.size(); ++a) {
        const int d = sizes[a];
        Mat m = Mat::Zero(d * n_new, d * n_new);
        for (int p = 0; p < d; ++p)
            for (int q = 0; q < d; ++q)
                for (int i = 0; i < n_old; ++i)
                    for (int j = 0; j < n_old; ++j) m(p * n_new + i, q * n_new + j) = x.blocks[a](p * n_old + i, q * n_old + j);
        y.blocks.push_back(m);
    }
    return y;
}

}  // namespace

double cb_norm_lower(const BlockMap& f, int n, unsigned long seed, int restarts) {
    check_shape(f);
    if (n < 1) throw Error("InvalidArgument", "amplification must be at least 1");
    double best_value = 0.0;
    Amplified best;
    for (int k = 1; k <= n; ++k) {
        std::vector<Amplified> starts;
        if (k > 1) starts.push_back(pad(best, f.domain, k - 1, k));
        for (int r = 0; r < restarts; ++r) {
            Amplified x;
            for (size_t a = 0; a < f.domain.size(); ++a) {
                const int s = f.domain[a] * k;
                x.blocks.push_back(polar_unitary(random_matrix(s, s, seed * 1000003UL + k * 7919UL + r * 131UL + a)));
            }
            starts.push_back(x);
        }
        for (const auto& x0 : starts) {
            Amplified arg = x0;
            double v = ascend(f, x0, k, &arg);
            if (v > best_value || best.blocks.empty()) {
                best_value = std::max(best_value, v);
                best = arg;
            }
        }
    }
    return best_value;
}

namespace {

bool is_central_projection(const FinSupp& a) {
    if (!is_central(a, 0.0)) return false;
    for (const auto& [l, m] : a.blocks)
        if (m(0, 0) != cd(0.0) && m(0, 0) != cd(1.0)) return false;
    return true;
}

}  // namespace

BlockMap theta_block_map(const EngineTable& et, const FinSupp& a) {
    Mat th = et.theta_formula(a);
    BlockMap f;
    f.domain = et.dual_blocks.dims;
    f.codomain = et.dual_blocks.dims;
    f.action = et.dual_blocks.to_blocks * th * et.dual_blocks.from_blocks;
    f.name = "theta";
    return f;
}

MultiplierReport multiplier_cb_report(const IrrTable& t, const FinSupp& a, const std::set<int>& truncation,
                                      const EngineTable* engine, std::optional<double> fourier_upper) {
    check_shapes(t, a);
    for (const auto& [l, m] : a.blocks)
        if (!truncation.count(l) && max_abs(m) > 0.0)
            throw Error("TruncationTooSmall", "label " + t.labels[l] + " is supported but not truncated to");
    MultiplierReport r;
    for (const auto& [l, m] : a.blocks)
        if (truncation.count(l)) r.sup_norm = std::max(r.sup_norm, op_norm(m));
    r.upper = fourier_upper;
    if (engine && static_cast<int>(truncation.size()) == t.size()) {
        CbResult c = cb_norm_exact(theta_block_map(*engine, a));
        r.exact = true;
        r.value = c.value;
        r.lower = c.lower;
        r.gap = c.gap;
        if (!r.upper) r.upper = c.upper;
        r.note = "exact CB norm on the full dual";
        r.checks.push_back({"duality gap", c.gap, 1e-6, c.gap <= 1e-6});
    } else {
        r.lower = r.sup_norm;
        r.note = "LOWER BOUND from the truncation to " + std::to_string(truncation.size()) + " labels";
        // Theta^l(p_F) is a unital CP map on its corner when F is a subcategory
        if (!r.upper && t.kac() && t.has_fusion && is_central_projection(a)) {
            std::set<int> f;
            for (const auto& [l, m] : a.blocks)
                if (max_abs(m) > 0.0) f.insert(l);
            try {
                require_subcategory(t, f);
                r.upper = 1.0;
                r.note += "; CP-collapse upper bound 1";
            } catch (const Error&) {
            }
        }
    }
    const double sl = r.sup_norm - (r.exact ? r.value.value() : r.lower);
    r.checks.push_back({"sup norm below cb norm", std::max(0.0, sl), 1e-6, sl <= 1e-6});
    if (r.upper) {
        const double lu = r.lower - *r.upper;
        r.checks.push_back({"lower bound below upper bound", std::max(0.0, lu), 1e-6, lu <= 1e-6});
    }
    return r;
}

}  // namespace qg
