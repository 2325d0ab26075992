#pragma once

#include "qg/corep.hpp"
#include "qg/doubles.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qg {

struct FusionRing {
    std::vector<std::string> labels;
    int unit = 0;
    std::vector<int> conj;
    std::map<std::array<int, 3>, int> N;  // {i, j, k} -> N^k_{ij}
    RVec dq;
    // Truncated rings only close on pairs whose grades add up to at most
    // max_grade; grade[i] is the position in the filtration.
    std::optional<int> max_grade;
    std::vector<int> grade;

    int size() const { return static_cast<int>(labels.size()); }
    int mult(int i, int j, int k) const;
    int index(const std::string& label) const;
    bool closed(int i, int j) const;
};

ValidationReport verify_fusion_ring(const FusionRing& r, double tol = 1e-9);

FusionRing fusion_ring_of(const IrrTable& t);
FusionRing rep_cyclic(int n);
FusionRing rep_s3();
// Labels 0..L, N^k_{ij} = 1 iff |i-j| <= k <= min(i+j, 2L-i-j) and i+j+k even.
// dq(n) = [n+1]_q, or sin((n+1)pi/(L+2)) / sin(pi/(L+2)) at the root of unity.
FusionRing temperley_lieb(int L, double q, bool root_of_unity = false);

// Tr(rho_a f^a) per supported label.
std::map<int, cd> quantum_trace(const IrrTable& t, const FinSupp& f);
// max |Tr_q(fg) - Tr_q(gf)| over labels
double quantum_trace_commutator(const IrrTable& t, const FinSupp& f, const FinSupp& g);

struct CatMultiplier {
    std::vector<cd> theta;  // one value per label
    std::optional<double> cb_bound;
};

double sup_norm(const CatMultiplier& m);
void check_bound(const CatMultiplier& m);  // ||theta||_inf <= cb bound

cd mult_pair(const FusionRing& r, const CatMultiplier& m, const std::vector<cd>& omega);
double weighted_l1(const FusionRing& r, const std::vector<cd>& omega);

std::vector<cd> corner_multiply(const FusionRing& r, const std::vector<cd>& f, const std::vector<cd>& g);
cd corner_trace(const FusionRing& r, const std::vector<cd>& f);
// Tr(g M_theta(f)) with M_theta(f)(k) = theta(k) f(k)
cd corner_pairing(const FusionRing& r, const CatMultiplier& m, const std::vector<cd>& f, const std::vector<cd>& g);

FinSupp central_correspondence(const IrrTable& t, const CatMultiplier& m);

// N_theta on the dual of a Drinfeld double, diagonal in the basis
// U^a_{ij} |x| x^b_{kl}; residual against Theta^l(theta (x) 1) on W^_m.
struct DrinfeldMultiplier {
    std::vector<std::array<int, 6>> tags;  // (a, i, j, b, k, l)
    Vec eigenvalues;
    double residual = 0.0;
};

DrinfeldMultiplier drinfeld_mult(const DrinfeldDouble& d, const CatMultiplier& m);

}  // namespace qg
