#pragma once

#include <vector>

namespace netlearn {

// Small dense helpers for the learner. Matrices are row-major flat vectors;
// everything here is desk-scale and deterministic.

// Eigen decomposition of a symmetric matrix by cyclic Jacobi rotations.
struct SymmetricEigen {
    std::vector<double> values;   // ascending
    std::vector<double> vectors;  // row-major; column j pairs with values[j]
};

SymmetricEigen jacobi_eigen(std::vector<double> a, int n);

// Minimum-norm solution of A x = b for symmetric PSD A (pseudo-inverse
// through the eigen decomposition; eigenvalues below rel_tol * max are
// treated as zero).
std::vector<double> pinv_solve(const std::vector<double>& a, int n,
                               const std::vector<double>& b, double rel_tol = 1e-12);

// Largest-eigenvalue estimate for symmetric PSD A: fixed-count power
// iteration from the all-ones vector.
double power_iteration_lmax(const std::vector<double>& a, int n, int iters = 50);

// Gaussian elimination with partial pivoting; returns false when singular.
bool solve_linear(std::vector<double> a, int n, std::vector<double> b,
                  std::vector<double>& out, double tol = 1e-12);

// Euclidean projection onto the l1 ball of radius r (sort-based).
std::vector<double> project_l1(const std::vector<double>& v, double r);

}  // namespace netlearn
