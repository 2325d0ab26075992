#pragma once

#include "qg/corep.hpp"
#include "qg/sdp.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qg {

// Linear map between direct sums of matrix blocks. Elements are vectorized
// block by block, each block row-major; action maps domain vectors to
// codomain vectors.
struct BlockMap {
    std::vector<int> domain;
    std::vector<int> codomain;
    Mat action;
    std::string name;

    int domain_dim() const;
    int codomain_dim() const;
};

void check_shape(const BlockMap& f);

BlockMap identity_map(const std::vector<int>& blocks);
BlockMap transpose_map(int d);
BlockMap compose(const BlockMap& f, const BlockMap& g);  // f after g
BlockMap direct_sum(const BlockMap& f, const BlockMap& g);
// f^dagger(x) = f(x^*)^*
BlockMap dagger(const BlockMap& f);

std::vector<Mat> to_blocks(const std::vector<int>& sizes, const Vec& v);
Vec from_blocks(const std::vector<int>& sizes, const std::vector<Mat>& blocks);
Vec unit_vector(const std::vector<int>& sizes);

bool is_completely_positive(const BlockMap& f, double tol = 1e-10);

struct CbResult {
    double value = 0.0;
    double lower = 0.0;  // primal certificate
    double upper = 0.0;  // dual certificate
    double gap = 0.0;
    int iterations = 0;
    bool completely_positive = false;
};

struct CbOptions {
    int cap = 64;  // largest admissible algebra dimension on either side
    SdpOptions sdp;
};

// ||f||_cb, one diamond-norm SDP per codomain block. For completely positive
// maps the value is ||f(1)||, with the SDP certificate still attached.
CbResult cb_norm_exact(const BlockMap& f, const CbOptions& opt = {});

// ||f (x) id_n|| by alternating maximization; nondecreasing in n.
double cb_norm_lower(const BlockMap& f, int n, unsigned long seed = 0, int restarts = 4);

// Theta^l(a) on the dual algebra of an engine, in the dual's block form.
BlockMap theta_block_map(const EngineTable& et, const FinSupp& a);

struct MultiplierReport {
    bool exact = false;
    double sup_norm = 0.0;
    double lower = 0.0;
    std::optional<double> value;
    std::optional<double> upper;
    double gap = 0.0;
    std::vector<Check> checks;
    std::string note;
};

// Exact on an engine; otherwise a lower bound on the truncation, labelled as such.
MultiplierReport multiplier_cb_report(const IrrTable& t, const FinSupp& a, const std::set<int>& truncation,
                                      const EngineTable* engine = nullptr, std::optional<double> fourier_upper = {});

}  // namespace qg
