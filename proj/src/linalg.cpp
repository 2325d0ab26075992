#include "qg/linalg.hpp"

#include <random>

namespace qg {

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Vec kron(const Vec& a, const Vec& b) {
    Vec out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

Mat swap_op(int a, int b) {
    Mat s = Mat::Zero(a * b, a * b);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) s(j * a + i, i * b + j) = 1.0;
    return s;
}

namespace {

std::vector<int> digits(long idx, const std::vector<int>& dims) {
    std::vector<int> d(dims.size());
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
        d[k] = static_cast<int>(idx % dims[k]);
        idx /= dims[k];
    }
    return d;
}

long undigits(const std::vector<int>& d, const std::vector<int>& dims) {
    long idx = 0;
    for (size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + d[k];
    return idx;
}

}  // namespace

Mat embed(const Mat& x, const std::vector<int>& dims, const std::vector<int>& legs) {
    long total = 1;
    for (int d : dims) total *= d;
    long sub = 1;
    for (int l : legs) sub *= dims[l];
    if (x.rows() != sub || x.cols() != sub) throw Error("DimensionMismatch", "embed: operator size does not match legs");
    Mat out = Mat::Zero(total, total);
    std::vector<int> legdims;
    for (int l : legs) legdims.push_back(dims[l]);
    for (long col = 0; col < total; ++col) {
        auto dc = digits(col, dims);
        std::vector<int> sc;
        for (int l : legs) sc.push_back(dc[l]);
        long jsub = undigits(sc, legdims);
        for (long isub = 0; isub < sub; ++isub) {
            cd v = x(isub, jsub);
            if (v == cd(0.0)) continue;
            auto si = digits(isub, legdims);
            auto dr = dc;
            for (size_t k = 0; k < legs.size(); ++k) dr[legs[k]] = si[k];
            out(undigits(dr, dims), col) += v;
        }
    }
    return out;
}

Vec vec(const Mat& m) {
    Vec v(m.size());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
    return v;
}

Mat unvec(const Vec& v, int rows, int cols) {
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = v(i * cols + j);
    return m;
}

Mat slice_first(const Mat& x, const Mat& f, int n1, int n2) {
    Mat out = Mat::Zero(n2, n2);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n1; ++j) {
            if (f(i, j) == cd(0.0)) continue;
            out += f(i, j) * x.block(i * n2, j * n2, n2, n2);
        }
    return out;
}

Mat slice_second(const Mat& x, const Mat& f, int n1, int n2) {
    Mat out = Mat::Zero(n1, n1);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n1; ++j) out(i, j) = (f.array() * x.block(i * n2, j * n2, n2, n2).array()).sum();
    return out;
}

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
double max_abs(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

Mat null_space(const Mat& a, double tol) {
    Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > tol) ++rank;
    return svd.matrixV().rightCols(a.cols() - rank);
}

Fit lstsq(const Mat& a, const Mat& b) {
    Fit f;
    f.x = a.completeOrthogonalDecomposition().solve(b);
    f.residual = max_abs(Mat(a * f.x - b));
    return f;
}

Mat pinv(const Mat& a, double tol) {
    Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    RVec s = svd.singularValues();
    double cut = tol * (s.size() ? s(0) : 0.0);
    Mat sinv = Mat::Zero(s.size(), s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cut) sinv(i, i) = 1.0 / s(i);
    return svd.matrixV() * sinv * svd.matrixU().adjoint();
}

double op_norm(const Mat& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues()(0);
}

double trace_norm(const Mat& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues().sum();
}

Mat polar_unitary(const Mat& m) {
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

Mat random_matrix(int rows, int cols, unsigned long seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = cd(nd(rng), nd(rng));
    return m;
}

Mat reshuffle(const Mat& x, int n1, int n2) {
    Mat out(static_cast<long>(n1) * n1, static_cast<long>(n2) * n2);
    for (int p = 0; p < n1; ++p)
        for (int q = 0; q < n1; ++q)
            for (int r = 0; r < n2; ++r)
                for (int s = 0; s < n2; ++s)
                    out(static_cast<long>(p) * n1 + q, static_cast<long>(r) * n2 + s) =
                        x(static_cast<long>(p) * n2 + r, static_cast<long>(q) * n2 + s);
    return out;
}

Mat left_second(const Mat& x, const Mat& a, int n1, int n2) {
    Mat out(x.rows(), x.cols());
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n1; ++j)
            out.block(static_cast<long>(i) * n2, static_cast<long>(j) * n2, n2, n2) =
                a * x.block(static_cast<long>(i) * n2, static_cast<long>(j) * n2, n2, n2);
    return out;
}

}  // namespace qg
