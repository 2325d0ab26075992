#pragma once

#include "qg/corep.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qg {

struct Letter {
    int factor = 0;
    int label = 0;
    auto operator<=>(const Letter&) const = default;
};

// Empty word = trivial label.
struct AlternatingWord {
    std::vector<Letter> letters;
    int length() const { return static_cast<int>(letters.size()); }
    auto operator<=>(const AlternatingWord&) const = default;
};

using WordMultiset = std::map<AlternatingWord, int>;

struct FreeProductTable {
    std::vector<IrrTable> factors;

    int dim(const AlternatingWord& w) const;
    RVec rho(const AlternatingWord& w) const;
    AlternatingWord conj(const AlternatingWord& w) const;
    std::string name(const AlternatingWord& w) const;
    // throws ShapeMismatch on letters outside the tables or broken alternation
    void check(const AlternatingWord& w) const;
};

// All words of length <= max_len in lexicographic letter order (shorter prefix first).
std::vector<AlternatingWord> enumerate_words(const FreeProductTable& fp, int max_len);
// Number of words of length exactly len, from the alternation recursion.
long count_words(const FreeProductTable& fp, int len);

WordMultiset free_fusion(const FreeProductTable& fp, const AlternatingWord& w1, const AlternatingWord& w2);

// The truncation as a table; FinSupp labels index enumerate_words(fp, max_len).
IrrTable truncated_table(const FreeProductTable& fp, int max_len);

// Central elements of the truncation with the known cb upper bound attached.
struct GradedElement {
    FinSupp element;
    std::optional<double> cb_upper;
    std::string bound;  // the bound as a formula with its value
};

GradedElement length_projection(const FreeProductTable& fp, int d, int max_len);

// One slot of Psi_d: g[i] lives on factor i, cb[i] is a known cb bound for it.
struct PsiSlot {
    std::vector<FinSupp> g;
    std::vector<std::optional<double>> cb;
};

GradedElement psi_d(const FreeProductTable& fp, const std::vector<PsiSlot>& slots, int max_len);

// sum_{d <= n} (1 - 1/sqrt(n))^d p_d
GradedElement tn_series(const FreeProductTable& fp, int n, int max_len);

}  // namespace qg
