#pragma once

#include "qg/cbnorm.hpp"
#include "qg/corep.hpp"
#include "qg/hopf.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace qg {

// Unitary Z in L^infty(G_1) (x) L^infty(G_2) with m(x) = Z x Z^*; for a
// Drinfeld double Z is the bicharacter W of H.
struct Matching {
    HopfData g1;
    HopfData g2;
    Mat z;
};

struct DoubleCrossed {
    std::shared_ptr<const Engine> e1;
    std::shared_ptr<const Engine> e2;
    Matching match;
    Mat m;       // m on coordinates of L^infty(G_1) (x) L^infty(G_2)
    Mat z;       // Z K Z^* K^*, K = J^_1 J_1 (x) J^_2 J_2: the unitary entering W_m and gamma_2
    HopfData data;
    Mat v1;      // right regular representation of G_1
    Mat w1op;    // Sigma V_1^* Sigma
    Mat w_m;     // on (H_1 (x) H_2) (x) (H_1 (x) H_2)
    std::shared_ptr<const Engine> engine;  // only with full checks
    std::vector<Check> checks;

    int n1() const { return e1->data.dim; }
    int n2() const { return e2->data.dim; }
    int n() const { return n1() * n2(); }
    Mat pi(const Vec& x) const;  // on H_1 (x) H_2
    Mat w_hat() const;           // Sigma W_m^* Sigma
    // Sigma W_m (y (x) 1) W_m^* Sigma
    Mat dual_comult(const Mat& y) const;
};

// Matrix M of the modular conjugation v -> M conj(v) on the GNS space:
// J Lambda(x) = Lambda(x^*), or J^ Lambda(x) = Lambda(S(x^*)) when dual. Kac only.
Mat conjugation(const HopfData& a, const HaarData& ha, bool dual);

// Right regular representation V = (J^ (x) J^) chi(W)^* (J^ (x) J^); Kac engines only.
Mat right_regular(const Engine& g);

// Coefficients of m; throws MatchingViolation.
Mat matching_matrix(const Engine& e1, const Engine& e2, const Mat& z, std::vector<Check>* checks = nullptr);

// L^infty(G_1) (x) L^infty(G_2) with Delta_m; counit and antipode are left to the caller.
HopfData double_crossed_algebra(const HopfData& g1, const HopfData& g2, const Mat& m);

// Full checks build the engine of G_m and compare W_m with it, run the pentagon
// and the axiom suite. Without them only the cheap identities are checked.
DoubleCrossed build_double_crossed(const Matching& match, bool full_checks = true);

struct GammaReport {
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    double membership = 0.0;  // images inside the dual of G_m (full checks only)
    double homomorphism = 0.0;
};

// Throws IntertwiningFailure naming the embedding.
GammaReport gamma_embeddings_check(const DoubleCrossed& d, double tol = 1e-10);

Mat gamma1(const DoubleCrossed& d, const Mat& x);  // x (x) 1
Mat gamma2(const DoubleCrossed& d, const Mat& x);  // Z^*(1 (x) x)Z

// Operator density F with omega(x) = sum F_pq pi(x)_pq for omega given by its
// values on the basis.
Mat functional_density(const Engine& g, const Vec& omega);

struct Factorization {
    Mat lhs;  // lambda_m(omega_1 (x) omega_2)
    Mat rhs;  // gamma_1(lambda_1^op(omega_1)) gamma_2(lambda_2(omega_2))
    double residual = 0.0;
};

Factorization fourier_factorization(const DoubleCrossed& d, const Vec& omega1, const Vec& omega2);

struct MultiplierPair {
    BlockMap engine;   // from (1 (x) a)W_m = (Theta (x) id)W_m
    BlockMap formula;  // closed formula
    double residual = 0.0;
};

// Theta^l(a) on L^infty(G_m) coordinates for a on H_1 (x) H_2.
Mat double_theta(const DoubleCrossed& d, const Mat& a);

// side 1: a = gamma_1(lambda_1^op(omega)), side 2: a = gamma_2(lambda_2(omega)).
MultiplierPair double_multiplier_formulas(const DoubleCrossed& d, const Vec& omega, int side);

// D(H) = double crossed product of H^op and the dual of H along Z = W^H.
struct DrinfeldDouble {
    std::shared_ptr<const Engine> h;
    std::shared_ptr<const EngineTable> table;  // blocks of L^infty(H), coefficients in the dual
    Mat plancherel;                            // L^2(dual) -> L^2(H)
    DoubleCrossed d;
};

DrinfeldDouble drinfeld_double(const HopfData& h, bool full_checks = true);

}  // namespace qg
