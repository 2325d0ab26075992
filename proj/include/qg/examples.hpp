#pragma once

#include "qg/corep.hpp"
#include "qg/hopf.hpp"

#include <string>
#include <vector>

namespace qg {

struct FiniteGroup {
    std::vector<std::string> names;
    std::vector<std::vector<int>> table;  // table[g][h] = gh
    int identity = 0;

    int size() const { return static_cast<int>(names.size()); }
    int inverse(int g) const;
};

FiniteGroup cyclic_group(int n);
FiniteGroup symmetric_group3();

// C(G): delta functions, pointwise product, Delta(d_g) = sum_h d_h (x) d_{h^-1 g}.
HopfData function_algebra(const FiniteGroup& g);
// C[G]: lambda_g lambda_h = lambda_gh, Delta(lambda_g) = lambda_g (x) lambda_g.
HopfData group_algebra(const FiniteGroup& g);
// The 8-dimensional Kac-Paljutkin quantum group, C^4 (+) M_2.
HopfData kac_paljutkin();
HopfData trivial_hopf();

// Irr of the compact dual of a discrete group: group elements, all of
// dimension one, fused by the group law.
IrrTable group_table(const FiniteGroup& g);

}  // namespace qg
