#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "regulens/rng.hpp"

namespace regulens {

struct Projection {
    int dims = 0;
    std::vector<std::string> labels;         // chunk id or corpus key per point
    std::vector<std::vector<double>> axes;   // dims rows of length D, orthonormal
    std::vector<double> explained_variance;  // fractions, non-increasing
    std::vector<std::vector<double>> points; // one row per input vector
};

namespace detail {

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace detail

// Top-`dims` principal axes via power iteration with deflation on the
// population covariance (applied implicitly as X^T (X v) / n, so the DxD
// matrix is never formed). Each axis is oriented so its largest-magnitude
// loading is positive; axes are reported in descending eigenvalue order and
// explained variance as a fraction of total variance.
template <typename Vec>
Projection pca_project(const std::vector<Vec>& vectors, int dims,
                       double tolerance = 1e-9, int max_iterations = 1000) {
    if (dims != 2 && dims != 3)
        throw std::runtime_error("pca: dims must be 2 or 3");
    if (vectors.size() < static_cast<std::size_t>(dims) + 1)
        throw std::runtime_error("pca: need at least " +
                                 std::to_string(dims + 1) + " vectors");
    std::size_t n = vectors.size();
    std::size_t d = vectors[0].size();

    std::vector<double> mean(d, 0.0);
    for (const auto& v : vectors) {
        if (v.size() != d) throw std::runtime_error("pca: ragged input");
        for (std::size_t i = 0; i < d; ++i)
            mean[i] += static_cast<double>(v[i]);
    }
    for (double& m : mean) m /= static_cast<double>(n);

    std::vector<std::vector<double>> centered(n, std::vector<double>(d));
    double trace = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t i = 0; i < d; ++i) {
            double x = static_cast<double>(vectors[r][i]) - mean[i];
            centered[r][i] = x;
            trace += x * x;
        }
    }
    trace /= static_cast<double>(n);
    if (trace <= 0.0) throw std::runtime_error("insufficient variance rank");

    // v -> Cov v, with previously found components deflated away.
    std::vector<std::vector<double>> axes;
    std::vector<double> eigenvalues;
    auto apply = [&](const std::vector<double>& v) {
        std::vector<double> out(d, 0.0);
        for (std::size_t r = 0; r < n; ++r) {
            double proj = detail::dot(centered[r], v);
            for (std::size_t i = 0; i < d; ++i)
                out[i] += proj * centered[r][i];
        }
        for (double& x : out) x /= static_cast<double>(n);
        for (std::size_t k = 0; k < axes.size(); ++k) {
            double coeff = eigenvalues[k] * detail::dot(axes[k], v);
            for (std::size_t i = 0; i < d; ++i) out[i] -= coeff * axes[k][i];
        }
        return out;
    };

    SplitMix64 rng(0x5CA1AB1EULL);
    for (int axis = 0; axis < dims; ++axis) {
        std::vector<double> v(d);
        for (double& x : v) x = rng.next_double() - 0.5;
        // Stay orthogonal to already-found axes from the start.
        for (const auto& prev : axes) {
            double c = detail::dot(prev, v);
            for (std::size_t i = 0; i < d; ++i) v[i] -= c * prev[i];
        }
        double norm = std::sqrt(detail::dot(v, v));
        if (norm == 0.0) throw std::runtime_error("insufficient variance rank");
        for (double& x : v) x /= norm;

        for (int iter = 0; iter < max_iterations; ++iter) {
            auto w = apply(v);
            for (const auto& prev : axes) {
                double c = detail::dot(prev, w);
                for (std::size_t i = 0; i < d; ++i) w[i] -= c * prev[i];
            }
            double wn = std::sqrt(detail::dot(w, w));
            if (wn <= trace * 1e-14)
                throw std::runtime_error("insufficient variance rank");
            for (double& x : w) x /= wn;
            double delta = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                double diff = w[i] - v[i];
                delta += diff * diff;
            }
            v = std::move(w);
            if (std::sqrt(delta) < tolerance) break;
        }
        double lambda = detail::dot(v, apply(v));
        if (lambda <= trace * 1e-12)
            throw std::runtime_error("insufficient variance rank");

        // Orient: largest-magnitude loading positive.
        std::size_t arg = 0;
        for (std::size_t i = 1; i < d; ++i)
            if (std::abs(v[i]) > std::abs(v[arg])) arg = i;
        if (v[arg] < 0.0)
            for (double& x : v) x = -x;

        axes.push_back(std::move(v));
        eigenvalues.push_back(lambda);
    }

    // Descending eigenvalue order (power iteration already tends to produce
    // it; exact ties can land either way).
    std::vector<std::size_t> order(axes.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return eigenvalues[a] > eigenvalues[b];
    });

    Projection p;
    p.dims = dims;
    for (std::size_t k : order) {
        p.axes.push_back(axes[k]);
        p.explained_variance.push_back(eigenvalues[k] / trace);
    }
    p.points.assign(n, std::vector<double>(dims, 0.0));
    for (std::size_t r = 0; r < n; ++r)
        for (int k = 0; k < dims; ++k)
            p.points[r][static_cast<std::size_t>(k)] =
                detail::dot(centered[r], p.axes[static_cast<std::size_t>(k)]);
    return p;
}

template <typename Vec>
Projection pca_project(const std::vector<std::string>& labels,
                       const std::vector<Vec>& vectors, int dims,
                       double tolerance = 1e-9, int max_iterations = 1000) {
    if (labels.size() != vectors.size())
        throw std::runtime_error("pca: labels/vectors size mismatch");
    Projection p = pca_project(vectors, dims, tolerance, max_iterations);
    p.labels = labels;
    return p;
}

} // namespace regulens
