#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qg {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr cd I_UNIT{0.0, 1.0};

// Every failure raised by the library carries a machine-readable kind
// (e.g. "AxiomViolation") and, where meaningful, the offending residual.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg, double residual = 0.0)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)), residual_(residual) {}
    const std::string& kind() const { return kind_; }
    double residual() const { return residual_; }

private:
    std::string kind_;
    double residual_;
};

Mat kron(const Mat& a, const Mat& b);
Vec kron(const Vec& a, const Vec& b);

// Flip H_a (x) H_b -> H_b (x) H_a.
Mat swap_op(int a, int b);

// Operator x acting on the tensor legs `legs` (in that order) of a space
// with the given leg dimensions; identity elsewhere.
Mat embed(const Mat& x, const std::vector<int>& dims, const std::vector<int>& legs);

// Row-major vectorization: vec(m)[i*cols + j] = m(i, j).
Vec vec(const Mat& m);
Mat unvec(const Vec& v, int rows, int cols);

// Slice maps for X on H_1 (x) H_2, functional omega(T) = sum_ij F_ij T_ij.
Mat slice_first(const Mat& x, const Mat& f, int n1, int n2);
Mat slice_second(const Mat& x, const Mat& f, int n1, int n2);

// X on H_1 (x) H_2 rearranged so that X = sum_t B_t (x) C_t becomes
// sum_t vec(B_t) vec(C_t)^T.
Mat reshuffle(const Mat& x, int n1, int n2);
// (1 (x) a) X with a acting on the second leg.
Mat left_second(const Mat& x, const Mat& a, int n1, int n2);

double max_abs(const Mat& m);
double max_abs(const Vec& v);

// Orthonormal basis of the null space of a (columns), via SVD.
Mat null_space(const Mat& a, double tol);

// Least-squares fit of b against the columns of a; residual is max-abs.
struct Fit {
    Mat x;
    double residual = 0.0;
};
Fit lstsq(const Mat& a, const Mat& b);

Mat pinv(const Mat& a, double tol = 1e-12);

// Operator norm (largest singular value) and trace norm.
double op_norm(const Mat& m);
double trace_norm(const Mat& m);

// Unitary part of the polar decomposition m = U|m|.
Mat polar_unitary(const Mat& m);

Mat random_matrix(int rows, int cols, unsigned long seed);

}  // namespace qg
