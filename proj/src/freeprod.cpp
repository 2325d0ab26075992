#include "qg/freeprod.hpp"

#include <cmath>
#include <sstream>

namespace qg {

void FreeProductTable::check(const AlternatingWord& w) const {
    for (int k = 0; k < w.length(); ++k) {
        const Letter& l = w.letters[k];
        if (l.factor < 0 || l.factor >= static_cast<int>(factors.size()))
            throw Error("ShapeMismatch", "letter from factor " + std::to_string(l.factor) + " which does not exist");
        const IrrTable& t = factors[l.factor];
        if (l.label < 0 || l.label >= t.size() || l.label == t.trivial)
            throw Error("ShapeMismatch", "letter label is not a nontrivial label of its factor");
        if (k > 0 && w.letters[k - 1].factor == l.factor) throw Error("ShapeMismatch", "adjacent letters from one factor");
    }
}

int FreeProductTable::dim(const AlternatingWord& w) const {
    int d = 1;
    for (const Letter& l : w.letters) d *= factors[l.factor].dims[l.label];
    return d;
}

RVec FreeProductTable::rho(const AlternatingWord& w) const {
    RVec r = RVec::Ones(1);
    for (const Letter& l : w.letters) {
        const RVec& x = factors[l.factor].rho[l.label];
        RVec out(r.size() * x.size());
        for (Eigen::Index i = 0; i < r.size(); ++i) out.segment(i * x.size(), x.size()) = r(i) * x;
        r = out;
    }
    return r;
}

AlternatingWord FreeProductTable::conj(const AlternatingWord& w) const {
    AlternatingWord out;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        out.letters.push_back({it->factor, factors[it->factor].conj[it->label]});
    return out;
}

std::string FreeProductTable::name(const AlternatingWord& w) const {
    if (w.letters.empty()) return "e";
    std::ostringstream s;
    for (int k = 0; k < w.length(); ++k) {
        if (k) s << '*';
        s << w.letters[k].factor << ':' << factors[w.letters[k].factor].labels[w.letters[k].label];
    }
    return s.str();
}

namespace {

void extend(const FreeProductTable& fp, AlternatingWord& w, int max_len, std::vector<AlternatingWord>& out) {
    out.push_back(w);
    if (w.length() == max_len) return;
    for (int f = 0; f < static_cast<int>(fp.factors.size()); ++f) {
        if (!w.letters.empty() && w.letters.back().factor == f) continue;
        const IrrTable& t = fp.factors[f];
        for (int l = 0; l < t.size(); ++l) {
            if (l == t.trivial) continue;
            w.letters.push_back({f, l});
            extend(fp, w, max_len, out);
            w.letters.pop_back();
        }
    }
}

AlternatingWord concat(const std::vector<Letter>& a, size_t na, const std::vector<Letter>& b, size_t from) {
    AlternatingWord w;
    w.letters.assign(a.begin(), a.begin() + static_cast<long>(na));
    w.letters.insert(w.letters.end(), b.begin() + static_cast<long>(from), b.end());
    return w;
}

// w1[0, n1) times w2[from, end)
void fuse(const FreeProductTable& fp, const std::vector<Letter>& w1, size_t n1, const std::vector<Letter>& w2,
          size_t from, int mult, WordMultiset& out) {
    if (n1 == 0 || from == w2.size() || w1[n1 - 1].factor != w2[from].factor) {
        out[concat(w1, n1, w2, from)] += mult;
        return;
    }
    const int f = w2[from].factor;
    const IrrTable& t = fp.factors[f];
    const int a = w1[n1 - 1].label, b = w2[from].label;
    for (int c = 0; c < t.size(); ++c) {
        const int m = t.N(a, b, c);
        if (!m) continue;
        if (c == t.trivial) {
            fuse(fp, w1, n1 - 1, w2, from + 1, mult * m, out);
        } else {
            AlternatingWord w = concat(w1, n1 - 1, {}, 0);
            w.letters.push_back({f, c});
            w.letters.insert(w.letters.end(), w2.begin() + static_cast<long>(from) + 1, w2.end());
            out[w] += mult * m;
        }
    }
}

std::vector<int> words_of_length(const std::vector<AlternatingWord>& words, int d) {
    std::vector<int> out;
    for (int k = 0; k < static_cast<int>(words.size()); ++k)
        if (words[k].length() == d) out.push_back(k);
    return out;
}

std::string fmt(double x) {
    std::ostringstream s;
    s << x;
    return s.str();
}

}  // namespace

std::vector<AlternatingWord> enumerate_words(const FreeProductTable& fp, int max_len) {
    std::vector<AlternatingWord> out;
    AlternatingWord w;
    if (max_len >= 0) extend(fp, w, max_len, out);
    return out;
}

long count_words(const FreeProductTable& fp, int len) {
    const int F = static_cast<int>(fp.factors.size());
    if (len == 0) return 1;
    // ending[f]: words of the current length whose last letter is in factor f
    std::vector<long> m(F), ending(F);
    for (int f = 0; f < F; ++f) ending[f] = m[f] = fp.factors[f].size() - 1;
    for (int l = 2; l <= len; ++l) {
        long total = 0;
        for (long e : ending) total += e;
        for (int f = 0; f < F; ++f) ending[f] = m[f] * (total - ending[f]);
    }
    long total = 0;
    for (long e : ending) total += e;
    return total;
}

WordMultiset free_fusion(const FreeProductTable& fp, const AlternatingWord& w1, const AlternatingWord& w2) {
    fp.check(w1);
    fp.check(w2);
    WordMultiset out;
    fuse(fp, w1.letters, w1.letters.size(), w2.letters, 0, 1, out);
    long lhs = static_cast<long>(fp.dim(w1)) * fp.dim(w2), rhs = 0;
    for (const auto& [w, m] : out) rhs += static_cast<long>(m) * fp.dim(w);
    if (lhs != rhs)
        throw Error("InconsistentFusion", "dimension count " + std::to_string(lhs) + " != " + std::to_string(rhs));
    return out;
}

IrrTable truncated_table(const FreeProductTable& fp, int max_len) {
    std::vector<AlternatingWord> words = enumerate_words(fp, max_len);
    std::map<AlternatingWord, int> pos;
    for (int k = 0; k < static_cast<int>(words.size()); ++k) pos[words[k]] = k;
    IrrTable t;
    for (const auto& w : words) {
        t.labels.push_back(fp.name(w));
        t.dims.push_back(fp.dim(w));
        t.rho.push_back(fp.rho(w));
        t.conj.push_back(pos.at(fp.conj(w)));
    }
    t.conj_intertwiner.assign(words.size(), std::nullopt);
    return t;
}

GradedElement length_projection(const FreeProductTable& fp, int d, int max_len) {
    if (d < 0 || d > max_len) throw Error("ShapeMismatch", "length outside the truncation");
    std::vector<AlternatingWord> words = enumerate_words(fp, max_len);
    GradedElement out;
    for (int k : words_of_length(words, d)) out.element.blocks[k] = Mat::Identity(fp.dim(words[k]), fp.dim(words[k]));
    out.cb_upper = std::max(4.0 * d, 1.0);
    out.bound = "max(4d,1) = " + fmt(*out.cb_upper);
    return out;
}

GradedElement psi_d(const FreeProductTable& fp, const std::vector<PsiSlot>& slots, int max_len) {
    const int d = static_cast<int>(slots.size());
    const int F = static_cast<int>(fp.factors.size());
    if (d > max_len) throw Error("ShapeMismatch", "length outside the truncation");
    for (const PsiSlot& s : slots) {
        if (static_cast<int>(s.g.size()) != F || static_cast<int>(s.cb.size()) != F)
            throw Error("ShapeMismatch", "each slot needs one element and one bound per factor");
        for (int i = 0; i < F; ++i) {
            check_shapes(fp.factors[i], s.g[i]);
            if (s.g[i].blocks.count(fp.factors[i].trivial))
                throw Error("ShapeMismatch", "slot element supported on the trivial label");
        }
    }
    std::vector<AlternatingWord> words = enumerate_words(fp, max_len);
    GradedElement out;
    for (int k : words_of_length(words, d)) {
        const AlternatingWord& w = words[k];
        Mat block = Mat::Identity(1, 1);
        bool zero = false;
        for (int s = 0; s < d && !zero; ++s) {
            const Letter& l = w.letters[s];
            auto it = slots[s].g[l.factor].blocks.find(l.label);
            if (it == slots[s].g[l.factor].blocks.end())
                zero = true;
            else
                block = kron(block, it->second);
        }
        if (!zero) out.element.blocks[k] = block;
    }
    double prod = 1.0;
    for (const PsiSlot& s : slots) {
        double worst = 0.0;
        for (const auto& c : s.cb) {
            if (!c) {
                prod = -1.0;
                break;
            }
            worst = std::max(worst, *c);
        }
        if (prod < 0.0) break;
        prod *= worst;
    }
    const double front = 4.0 * d * (2.0 * d + 1.0);
    if (prod >= 0.0) {
        out.cb_upper = front * prod;
        out.bound = "4d(2d+1) prod_k max_i ||g_{i,k}||_cb = " + fmt(front) + " * " + fmt(prod) + " = " + fmt(*out.cb_upper);
    } else {
        out.bound = "4d(2d+1) prod_k max_i ||g_{i,k}||_cb: missing per-letter bounds";
    }
    return out;
}

GradedElement tn_series(const FreeProductTable& fp, int n, int max_len) {
    if (n < 1 || n > max_len) throw Error("ShapeMismatch", "need 1 <= n <= max_len");
    std::vector<AlternatingWord> words = enumerate_words(fp, max_len);
    const double c = 1.0 - 1.0 / std::sqrt(static_cast<double>(n));
    GradedElement out;
    for (int k = 0; k < static_cast<int>(words.size()); ++k) {
        const int d = words[k].length();
        if (d > n) continue;
        const double v = std::pow(c, d);
        if (v != 0.0) out.element.blocks[k] = v * Mat::Identity(fp.dim(words[k]), fp.dim(words[k]));
    }
    return out;
}

}  // namespace qg
