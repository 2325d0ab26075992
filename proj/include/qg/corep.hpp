#pragma once

#include "qg/hopf.hpp"

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qg {

// Irreducible corepresentations of a compact dual: labels with dimensions,
// diagonal rho-matrices, conjugation, optional fusion and conjugation intertwiners
// (conj(U^a)_{ij} := (U^a_{ij})^* = (T_a U^{conj a} T_a^{-1})_{ij}).
struct IrrTable {
    std::vector<std::string> labels;
    int trivial = 0;
    std::vector<int> dims;
    std::vector<RVec> rho;  // diagonal entries
    std::vector<int> conj;
    bool has_fusion = false;
    std::map<std::array<int, 3>, int> fusion;  // {a, b, c} -> N^c_{ab}
    std::vector<std::optional<Mat>> conj_intertwiner;

    int size() const { return static_cast<int>(labels.size()); }
    int index(const std::string& label) const;
    int N(int a, int b, int c) const;
    bool kac(double tol = 1e-12) const;
    double dim_q(int a) const;
    // T_a, defaulting to 1 on one-dimensional labels
    std::optional<Mat> intertwiner(int a) const;
};

std::vector<Check> validate_table(const IrrTable& t);
void require_valid(const IrrTable& t);

// sum_a a^a as blocks; labels are table indices.
struct FinSupp {
    std::map<int, Mat> blocks;
};

// sum_{a,i,j} c^a_{ij} U^a_{ij}
struct PolElement {
    std::map<int, Mat> coeffs;
};

FinSupp identity_on(const IrrTable& t, const std::vector<int>& support);
bool is_central(const FinSupp& a, double tol = 1e-12);
double sup_norm(const FinSupp& a);
void check_shapes(const IrrTable& t, const FinSupp& a);
void check_shapes(const IrrTable& t, const PolElement& x);

FinSupp add(const FinSupp& a, const FinSupp& b, cd sb = 1.0);
FinSupp multiply(const FinSupp& a, const FinSupp& b);
PolElement add(const PolElement& a, const PolElement& b, cd sb = 1.0);
double max_abs(const FinSupp& a);
double max_abs(const PolElement& x);

PolElement theta_apply(const IrrTable& t, const FinSupp& a, const PolElement& x);
PolElement pol_star(const IrrTable& t, const PolElement& x);

FinSupp star(const FinSupp& a);
FinSupp antipode(const IrrTable& t, const FinSupp& a);
FinSupp l2_implement(const IrrTable& t, const FinSupp& a);            // S^{-1}(a)
FinSupp multiplier_involution(const IrrTable& t, const FinSupp& a);   // S(a^*)

enum class ModularKind { Tau, SigmaPhi, SigmaPsi };
PolElement scaling_modular_action(const IrrTable& t, double time, const PolElement& x, ModularKind which);
FinSupp scaling_modular_action(const IrrTable& t, double time, const FinSupp& a, ModularKind which);

FinSupp symmetrize_ap_net(const IrrTable& t, const FinSupp& a);
FinSupp central_average(const IrrTable& t, const FinSupp& a);
PolElement subgroup_expectation(const IrrTable& t, const std::set<int>& sub, const PolElement& x);
void require_subcategory(const IrrTable& t, const std::set<int>& sub);
cd haar_pair(const IrrTable& t, const PolElement& x);

// Gram matrix h(U^a_{ij}^* U^b_{kl}) over (label, i, j) in support order.
Mat schur_gram(const IrrTable& t, const std::vector<int>& support);

// Functional omega(x) = sum_a Tr(omega^a x^a); ||omega|| = sum of trace norms.
struct Functional {
    std::map<int, Mat> blocks;
};
double norm(const Functional& w);

struct EngineTable;
// a * omega = (omega (x) id)Delta(a). Table-level formulas cover the group case
// and central a, omega on Kac tables; other inputs need an engine.
FinSupp module_action(const IrrTable& t, const FinSupp& a, const Functional& w, const EngineTable* engine = nullptr);

// A finite quantum group G seen as l^infty(Gamma) = L^infty(G), with the
// coefficients U^a_{ij} of Pol(dual) read from the block form of W^.
struct EngineTable {
    const Engine* g = nullptr;
    Wedderburn blocks;      // of L^infty(G)
    Wedderburn dual_blocks; // of the dual
    HaarData dual_haar;
    IrrTable table;
    std::vector<std::vector<Vec>> U;  // U[a][i*d + j] in dual coordinates
    Mat u_to_dual;                    // concatenated coefficients -> dual coordinates
    Mat dual_to_u;
    double corep_residual = 0.0;
    double conj_residual = 0.0;

    Vec to_algebra(const FinSupp& a) const;
    FinSupp from_algebra(const Vec& x) const;
    Vec to_dual(const PolElement& x) const;
    PolElement from_dual(const Vec& c) const;
    Mat block_matrix(const FinSupp& a) const;  // Theta^l(a) on concatenated coefficients
    Mat theta_formula(const FinSupp& a) const; // ... on dual coordinates
    Mat theta_engine(const Vec& a) const;      // from slices of W^
    // || (1 (x) pi(a))W^ - (theta (x) id)W^ ||
    double w_hat_relation(const Vec& a, const Mat& theta) const;
};

EngineTable bridge(const Engine& g, const std::vector<std::string>& labels = {}, unsigned long seed = 0);

}  // namespace qg
