#pragma once

#include "qg/linalg.hpp"

#include <vector>

namespace qg {

// Real block-diagonal SDP in the standard primal/dual pair
//   primal:  min <C, X>   s.t. <A_i, X> = b_i,  X >= 0
//   dual:    max b^T y    s.t. Z = C - sum_i y_i A_i >= 0
struct SdpEntry {
    int block;
    int row;
    int col;
    double value;
};

struct SdpProblem {
    std::vector<int> block_sizes;
    std::vector<RMat> C;
    // Each A_i is given by its upper-triangular entries (row <= col); the
    // symmetric counterpart is implied.
    std::vector<std::vector<SdpEntry>> A;
    RVec b;

    int num_constraints() const { return static_cast<int>(A.size()); }
};

struct SdpOptions {
    int max_iterations = 200;
    double tolerance = 1e-9;
    // On breakdown (stagnation, lost positivity) the best iterate is returned
    // if its gap and infeasibilities are below this.
    double acceptable = 1e-7;
};

struct SdpSolution {
    RVec y;
    std::vector<RMat> X;
    std::vector<RMat> Z;
    double primal = 0.0;  // <C, X>
    double dual = 0.0;    // b^T y
    double gap = 0.0;     // |primal - dual|
    double primal_infeasibility = 0.0;
    double dual_infeasibility = 0.0;
    int iterations = 0;
    bool reduced_accuracy = false;
};

// Infeasible primal-dual interior-point method, HKM search direction with a
// Mehrotra predictor-corrector. Throws SolverDiverged on stagnation or when
// the iteration cap is reached before the tolerance is met.
SdpSolution solve_sdp(const SdpProblem& p, const SdpOptions& opt = {});

}  // namespace qg
