#include "netlearn/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace netlearn {

SymmetricEigen jacobi_eigen(std::vector<double> a, int n) {
    std::vector<double> v(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) v[i * n + i] = 1.0;

    auto off = [&] {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += a[i * n + j] * a[i * n + j];
        return s;
    };

    for (int sweep = 0; sweep < 100 && off() > 1e-28; ++sweep) {
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (std::fabs(apq) < 1e-300) continue;
                const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int i = 0; i < n; ++i) {
                    const double aip = a[i * n + p], aiq = a[i * n + q];
                    a[i * n + p] = c * aip - s * aiq;
                    a[i * n + q] = s * aip + c * aiq;
                }
                for (int j = 0; j < n; ++j) {
                    const double apj = a[p * n + j], aqj = a[q * n + j];
                    a[p * n + j] = c * apj - s * aqj;
                    a[q * n + j] = s * apj + c * aqj;
                }
                for (int i = 0; i < n; ++i) {
                    const double vip = v[i * n + p], viq = v[i * n + q];
                    v[i * n + p] = c * vip - s * viq;
                    v[i * n + q] = s * vip + c * viq;
                }
            }
        }
    }

    SymmetricEigen out;
    out.values.resize(n);
    for (int i = 0; i < n; ++i) out.values[i] = a[i * n + i];
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return out.values[i] < out.values[j]; });
    SymmetricEigen sorted;
    sorted.values.resize(n);
    sorted.vectors.resize(static_cast<size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        sorted.values[j] = out.values[order[j]];
        for (int i = 0; i < n; ++i) sorted.vectors[i * n + j] = v[i * n + order[j]];
    }
    return sorted;
}

std::vector<double> pinv_solve(const std::vector<double>& a, int n,
                               const std::vector<double>& b, double rel_tol) {
    const SymmetricEigen eig = jacobi_eigen(a, n);
    double lmax = 0.0;
    for (double l : eig.values) lmax = std::max(lmax, std::fabs(l));
    const double cut = lmax * rel_tol;
    std::vector<double> x(n, 0.0);
    for (int j = 0; j < n; ++j) {
        if (std::fabs(eig.values[j]) <= cut) continue;
        double proj = 0.0;
        for (int i = 0; i < n; ++i) proj += eig.vectors[i * n + j] * b[i];
        proj /= eig.values[j];
        for (int i = 0; i < n; ++i) x[i] += eig.vectors[i * n + j] * proj;
    }
    return x;
}

double power_iteration_lmax(const std::vector<double>& a, int n, int iters) {
    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> y(n);
    double lambda = 0.0;
    for (int it = 0; it < iters; ++it) {
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) s += a[i * n + j] * x[j];
            y[i] = s;
        }
        double norm = 0.0;
        for (double yi : y) norm += yi * yi;
        norm = std::sqrt(norm);
        if (norm < 1e-300) return 0.0;
        lambda = norm;
        for (int i = 0; i < n; ++i) x[i] = y[i] / norm;
    }
    return lambda;
}

bool solve_linear(std::vector<double> a, int n, std::vector<double> b,
                  std::vector<double>& out, double tol) {
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(a[r * n + col]) > std::fabs(a[pivot * n + col])) pivot = r;
        if (std::fabs(a[pivot * n + col]) < tol) return false;
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(a[col * n + j], a[pivot * n + j]);
            std::swap(b[col], b[pivot]);
        }
        const double inv = 1.0 / a[col * n + col];
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r * n + col] * inv;
            if (f == 0.0) continue;
            for (int j = col; j < n; ++j) a[r * n + j] -= f * a[col * n + j];
            b[r] -= f * b[col];
        }
    }
    out.resize(n);
    for (int i = 0; i < n; ++i) out[i] = b[i] / a[i * n + i];
    return true;
}

std::vector<double> project_l1(const std::vector<double>& v, double r) {
    if (r < 0.0) throw std::invalid_argument("project_l1: negative radius");
    double norm1 = 0.0;
    for (double x : v) norm1 += std::fabs(x);
    if (norm1 <= r) return v;
    if (r == 0.0) return std::vector<double>(v.size(), 0.0);

    // Duchi et al. simplex projection applied to |v|; theta is the soft
    // threshold for the largest valid support size.
    std::vector<double> mag(v.size());
    for (size_t i = 0; i < v.size(); ++i) mag[i] = std::fabs(v[i]);
    std::vector<double> sorted = mag;
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    double cumulative = 0.0, theta = 0.0;
    for (size_t j = 0; j < sorted.size(); ++j) {
        cumulative += sorted[j];
        const double candidate = (cumulative - r) / static_cast<double>(j + 1);
        if (candidate < sorted[j])
            theta = candidate;
        else
            break;
    }
    std::vector<double> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        const double shrunk = std::max(0.0, mag[i] - theta);
        out[i] = v[i] >= 0.0 ? shrunk : -shrunk;
    }
    return out;
}

}  // namespace netlearn
