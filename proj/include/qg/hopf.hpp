#pragma once

#include "qg/linalg.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qg {

// Finite-dimensional Hopf *-algebra in a fixed basis e_0..e_{n-1}.
//   e_i e_j       = sum_k mult(k, i*n + j) e_k
//   Delta(e_i)    = sum_{j,k} comult(j*n + k, i) e_j (x) e_k
//   S(e_j)        = sum_i antipode(i, j) e_i
//   x^*           = star * conj(x)
struct HopfData {
    int dim = 0;
    std::vector<std::string> basis;
    Mat mult;
    Vec unit;
    Mat comult;
    Eigen::RowVectorXcd counit;
    Mat antipode;
    Mat star;
    double tol = 1e-10;

    Vec mul(const Vec& x, const Vec& y) const;
    Vec adj(const Vec& x) const;
    Mat left_mult(const Vec& x) const;  // n x n matrix of y -> x y
    Vec basis_vec(int i) const;
};

struct Check {
    std::string name;
    double residual = 0.0;
    double threshold = 0.0;
    bool pass = true;
};

struct ValidationReport {
    std::vector<Check> checks;
    bool pass() const;
    const Check* first_failure() const;
};

ValidationReport validate_hopf(const HopfData& data);
// Throws AxiomViolation naming the first failing axiom.
void require_valid(const HopfData& data);

// Opposite coproduct (and inverse antipode), same algebra.
HopfData opposite(const HopfData& data);
// Tensor product algebra with tensor coproduct (direct product of quantum groups).
HopfData tensor_product(const HopfData& a, const HopfData& b);

// Linear-system solutions of (eps (x) id)Delta = id and m(S (x) id)Delta = 1 eps.
Eigen::RowVectorXcd solve_counit(const Mat& mult, const Mat& comult, int n, double* residual);
Mat solve_antipode(const Mat& mult, const Vec& unit, const Mat& comult, const Eigen::RowVectorXcd& counit, int n,
                   double* residual);

struct HaarData {
    Eigen::RowVectorXcd h;
    Mat gram;   // gram(a, b) = h(e_a^* e_b)
    Mat R;      // GNS map: Lambda(x) = R x, gram = R^* R
    Mat Rinv;
    int gns_dim = 0;
    double min_eig = 0.0;
    double left_residual = 0.0;
    double right_residual = 0.0;
    double trace_residual = 0.0;
};

HaarData haar_state(const HopfData& data);

// GNS representation pi(x) = R L_x R^{-1}.
Mat gns_rep(const HopfData& data, const HaarData& haar, const Vec& x);

struct UnitaryTensor {
    Mat W;
    std::string flavor = "W";
    int n = 0;  // dimension of each leg
    double unitarity = 0.0;
    double pentagon = 0.0;
};

double pentagon_residual(const Mat& w, int n);
double unitarity_residual(const Mat& w);

// W^*(Lambda(a) (x) Lambda(b)) = (Lambda (x) Lambda)(Delta(b)(a (x) 1)).
Mat kac_takesaki(const HopfData& data, const HaarData& haar);
// The same operator with unitarity and pentagon checked.
UnitaryTensor multiplicative_unitary(const HopfData& data, const HaarData& haar);

// The slice algebra {(omega (x) id)W}, realised on the GNS space.
struct DualHopf {
    HopfData data;
    std::vector<Mat> ops;                     // basis elements as operators
    std::vector<std::pair<int, int>> slice;   // matrix unit producing each basis element
    Mat coord;                                // vec(op) -> coordinates
    int n = 0;                                // GNS dimension

    Vec coords(const Mat& op, double* residual = nullptr) const;
    Mat op(const Vec& c) const;
};

DualHopf dual_hopf(const HopfData& data, const UnitaryTensor& w);

// Antipode of the dual read off from S((omega (x) id)W^*) = (omega (x) id)W.
Mat antipode_from_w(const DualHopf& dual, const UnitaryTensor& w, double* residual = nullptr);

// Everything derived from one HopfData.
struct Engine {
    HopfData data;
    HaarData haar;
    UnitaryTensor w;
    DualHopf dual;
    std::vector<Mat> pi_basis;  // pi(e_k)
    Mat pi_coord;               // vec(op) -> coordinates in A
    Mat lambda_hat;             // column b: L^2 vector of the dual basis element b

    Mat pi(const Vec& x) const;
    Vec pi_coords(const Mat& op, double* residual = nullptr) const;
    Mat w_hat() const;  // Sigma W^* Sigma
};

Engine build_engine(const HopfData& data);

// Block decomposition A = (+) M_d with matrix units expressed in the basis of A.
struct Wedderburn {
    std::vector<int> dims;
    std::vector<std::vector<Vec>> units;  // units[b][i*d + j] = e^b_{ij}
    Mat from_blocks;                      // columns: e^b_{ij} in concatenated block order
    Mat to_blocks;                        // inverse of from_blocks
    int total() const;
};

Wedderburn wedderburn(const HopfData& data, const HaarData& haar, unsigned long seed = 0);

// Isomorphism A -> (A^)^ built from the canonical pairings.
struct BidualIso {
    Mat phi;
    std::vector<Check> checks;
    double residual = 0.0;
};

BidualIso biduality(const Engine& g);

enum class L2Class { LeftCentralizer, RightCentralizer, Central, None };
std::string to_string(L2Class c);

struct L2Classification {
    L2Class cls = L2Class::None;
    Mat T;
    bool in_algebra = false;
    bool in_commutant = false;
    bool left_centralizer = false;
    bool right_centralizer = false;
};

// Phi^dagger(x) = Phi(x^*)^* on the dual's coordinates.
Mat dagger(const HopfData& alg, const Mat& phi);

// phi acts on the coordinates of g.dual.
L2Classification classify_l2_implementation(const Engine& g, const Mat& phi);

}  // namespace qg
