#pragma once

#include "qg/hopf.hpp"

#include <string>
#include <vector>

namespace qg {

struct Criterion {
    int id = 0;
    std::string title;
    std::vector<Check> checks;
    double seconds = 0.0;

    bool pass() const;
    // worst check by residual / threshold, for the one-line summary
    const Check* worst() const;
};

inline constexpr int kCriteria = 10;

// Runs criterion `id` (1..10) end to end on the built-in examples.
Criterion run_criterion(int id, unsigned long seed = 0);
std::vector<Criterion> run_acceptance(unsigned long seed = 0);

std::string summary_line(const Criterion& c);

}  // namespace qg
