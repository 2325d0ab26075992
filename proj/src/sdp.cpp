#include "qg/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>
#include <cstdlib>

namespace qg {

namespace {

using Blocks = std::vector<RMat>;

double inner(const Blocks& a, const Blocks& b) {
    double s = 0.0;
    for (size_t k = 0; k < a.size(); ++k) s += (a[k].array() * b[k].array()).sum();
    return s;
}

double fro(const Blocks& a) { return std::sqrt(inner(a, a)); }

// <A_i, G> for a possibly non-symmetric G
double apply_one(const std::vector<SdpEntry>& ai, const Blocks& g) {
    double s = 0.0;
    for (const auto& e : ai) {
        const RMat& m = g[e.block];
        s += e.row == e.col ? e.value * m(e.row, e.row) : e.value * (m(e.row, e.col) + m(e.col, e.row));
    }
    return s;
}

RVec apply_all(const SdpProblem& p, const Blocks& g) {
    RVec out(p.num_constraints());
    for (int i = 0; i < p.num_constraints(); ++i) out(i) = apply_one(p.A[i], g);
    return out;
}

Blocks adjoint(const SdpProblem& p, const RVec& y) {
    Blocks out;
    for (int n : p.block_sizes) out.push_back(RMat::Zero(n, n));
    for (int i = 0; i < p.num_constraints(); ++i) {
        if (y(i) == 0.0) continue;
        for (const auto& e : p.A[i]) {
            out[e.block](e.row, e.col) += y(i) * e.value;
            if (e.row != e.col) out[e.block](e.col, e.row) += y(i) * e.value;
        }
    }
    return out;
}

RMat sym(const RMat& m) { return 0.5 * (m + m.transpose()); }

// Largest alpha with x + alpha dx still positive semidefinite (infinity if unbounded).
double max_step(const Blocks& x, const Blocks& dx) {
    double alpha = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < x.size(); ++k) {
        Eigen::LLT<RMat> llt(x[k]);
        if (llt.info() != Eigen::Success) return 0.0;
        RMat linv = llt.matrixL().solve(RMat::Identity(x[k].rows(), x[k].cols()));
        RMat w = sym(linv * dx[k] * linv.transpose());
        double lmin = Eigen::SelfAdjointEigenSolver<RMat>(w, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
        if (lmin < 0.0) alpha = std::min(alpha, -1.0 / lmin);
    }
    return alpha;
}

}  // namespace

SdpSolution solve_sdp(const SdpProblem& p, const SdpOptions& opt) {
    const int m = p.num_constraints();
    const int nb = static_cast<int>(p.block_sizes.size());
    int ntot = 0;
    for (int n : p.block_sizes) ntot += n;

    // block -> constraints touching it
    std::vector<std::vector<int>> touching(nb);
    std::vector<std::vector<std::vector<SdpEntry>>> by_block(m, std::vector<std::vector<SdpEntry>>(nb));
    std::vector<double> anorm(m, 0.0);
    for (int i = 0; i < m; ++i) {
        for (const auto& e : p.A[i]) {
            by_block[i][e.block].push_back(e);
            anorm[i] += (e.row == e.col ? 1.0 : 2.0) * e.value * e.value;
        }
        for (int k = 0; k < nb; ++k)
            if (!by_block[i][k].empty()) touching[k].push_back(i);
        anorm[i] = std::sqrt(anorm[i]);
    }

    // starting point in the style of SDPT3
    SdpSolution s;
    s.y = RVec::Zero(m);
    double cnorm = fro(p.C);
    for (int k = 0; k < nb; ++k) {
        const double n = p.block_sizes[k];
        double xi = std::max(10.0, std::sqrt(n)), eta = std::max({10.0, std::sqrt(n), p.C[k].norm()});
        for (int i : touching[k]) {
            xi = std::max(xi, n * (1.0 + std::abs(p.b(i))) / (1.0 + anorm[i]));
            eta = std::max(eta, anorm[i]);
        }
        s.X.push_back(xi * RMat::Identity(p.block_sizes[k], p.block_sizes[k]));
        s.Z.push_back(eta * RMat::Identity(p.block_sizes[k], p.block_sizes[k]));
    }

    const double bnorm = p.b.norm();
    int stall = 0;
    SdpSolution best;
    double best_err = std::numeric_limits<double>::infinity();
    for (int it = 0; it <= opt.max_iterations; ++it) {
        s.iterations = it;
        RVec rp = p.b - apply_all(p, s.X);
        Blocks rd = p.C;
        {
            Blocks ay = adjoint(p, s.y);
            for (int k = 0; k < nb; ++k) rd[k] -= s.Z[k] + ay[k];
        }
        s.primal = inner(p.C, s.X);
        s.dual = p.b.dot(s.y);
        s.gap = std::abs(s.primal - s.dual);
        s.primal_infeasibility = rp.norm() / (1.0 + bnorm);
        s.dual_infeasibility = fro(rd) / (1.0 + cnorm);
        const double rel_gap = s.gap / (1.0 + std::abs(s.primal) + std::abs(s.dual));
        const double mu = inner(s.X, s.Z) / ntot;
        const double err = std::max({rel_gap, s.primal_infeasibility, s.dual_infeasibility});
        if (!std::isfinite(err)) break;
        if (err < opt.tolerance) return s;
        if (err < best_err) {
            best_err = err;
            best = s;
        }
        if (std::getenv("QG_SDP_TRACE"))
            std::fprintf(stderr, "%3d p=%.12g d=%.12g pinf=%.2e dinf=%.2e mu=%.2e\n", it, s.primal, s.dual,
                         s.primal_infeasibility, s.dual_infeasibility, mu);
        if (it == opt.max_iterations) break;

        Blocks zinv(nb);
        bool lost = false;
        for (int k = 0; k < nb && !lost; ++k) {
            Eigen::LLT<RMat> llt(s.Z[k]);
            lost = llt.info() != Eigen::Success;
            zinv[k] = sym(llt.solve(RMat::Identity(s.Z[k].rows(), s.Z[k].cols())));
        }
        if (lost) break;

        // Schur complement M_ij = Tr(A_i X A_j Z^{-1})
        RMat M = RMat::Zero(m, m);
        for (int k = 0; k < nb; ++k) {
            const int n = p.block_sizes[k];
            for (int j : touching[k]) {
                RMat t = RMat::Zero(n, n);
                for (const auto& e : by_block[j][k]) {
                    t.col(e.col) += e.value * s.X[k].col(e.row);
                    if (e.row != e.col) t.col(e.row) += e.value * s.X[k].col(e.col);
                }
                RMat g = t * zinv[k];
                for (int i : touching[k]) {
                    if (i < j) continue;
                    double v = 0.0;
                    for (const auto& e : by_block[i][k])
                        v += e.row == e.col ? e.value * g(e.row, e.row) : e.value * (g(e.row, e.col) + g(e.col, e.row));
                    M(i, j) += v;
                }
            }
        }
        M = M.triangularView<Eigen::Lower>();
        M = RMat(M.selfadjointView<Eigen::Lower>());
        Eigen::LDLT<RMat> ldlt(M);
        if (ldlt.info() != Eigen::Success) break;

        Blocks xrz(nb);
        for (int k = 0; k < nb; ++k) xrz[k] = s.X[k] * rd[k] * zinv[k];
        const RVec axrz = apply_all(p, xrz);

        auto direction = [&](double target, const Blocks* corr, RVec& dy, Blocks& dX, Blocks& dZ) {
            Blocks rc(nb);
            for (int k = 0; k < nb; ++k) {
                RMat r = target * RMat::Identity(p.block_sizes[k], p.block_sizes[k]);
                if (corr) r -= corr[0][k] * corr[1][k];
                rc[k] = r * zinv[k];
            }
            RVec rhs = p.b - apply_all(p, rc) + axrz;
            dy = ldlt.solve(rhs);
            for (int refine = 0; refine < 2; ++refine) dy += ldlt.solve(RVec(rhs - M * dy));
            Blocks ady = adjoint(p, dy);
            dX.assign(nb, RMat());
            dZ.assign(nb, RMat());
            for (int k = 0; k < nb; ++k) {
                dZ[k] = rd[k] - ady[k];
                // (target I - XZ - X dZ - corr) Z^{-1}, arranged to avoid forming XZ
                RMat r = -s.X[k] * dZ[k];
                if (corr) r -= corr[0][k] * corr[1][k];
                dX[k] = sym(target * zinv[k] - s.X[k] + r * zinv[k]);
            }
        };

        RVec dy;
        Blocks dX, dZ;
        direction(0.0, nullptr, dy, dX, dZ);
        double ap = std::min(1.0, max_step(s.X, dX));
        double ad = std::min(1.0, max_step(s.Z, dZ));
        Blocks xa = s.X, za = s.Z;
        for (int k = 0; k < nb; ++k) {
            xa[k] += ap * dX[k];
            za[k] += ad * dZ[k];
        }
        const double mu_aff = inner(xa, za) / ntot;
        const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);
        const Blocks corr[2] = {dX, dZ};
        direction(sigma * mu, corr, dy, dX, dZ);
        ap = std::min(1.0, 0.95 * max_step(s.X, dX));
        ad = std::min(1.0, 0.95 * max_step(s.Z, dZ));
        for (int k = 0; k < nb; ++k) {
            s.X[k] = sym(s.X[k] + ap * dX[k]);
            s.Z[k] = sym(s.Z[k] + ad * dZ[k]);
        }
        s.y += ad * dy;
        if (std::getenv("QG_SDP_TRACE")) std::fprintf(stderr, "    ap=%.3g ad=%.3g sigma=%.3g\n", ap, ad, sigma);
        stall = (ap < 1e-8 && ad < 1e-8) ? stall + 1 : 0;
        if (stall >= 3) break;
    }
    if (best_err < opt.acceptable) {
        best.reduced_accuracy = true;
        return best;
    }
    throw Error("SolverDiverged",
                "no convergence after " + std::to_string(s.iterations) + " iterations (gap " + std::to_string(s.gap) +
                    ")",
                s.gap);
}

}  // namespace qg
