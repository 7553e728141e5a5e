#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace ortho {

// Index/value pairs, indices strictly increasing, no explicit zeros.
struct sparse_vector {
    std::size_t dim = 0;
    std::vector<std::uint32_t> indices;
    std::vector<double> values;

    std::size_t nnz() const { return indices.size(); }

    bool operator==(const sparse_vector&) const = default;
};

inline double l2_norm(const sparse_vector& v) {
    double s = 0.0;
    for (double x : v.values) s += x * x;
    return std::sqrt(s);
}

// Scales values so the vector has unit L2 norm; the zero vector stays zero.
inline void l2_normalize(sparse_vector& v) {
    const double n = l2_norm(v);
    if (n == 0.0) return;
    for (double& x : v.values) x /= n;
}

// w is dense of size >= v.dim.
inline double dot(const std::vector<double>& w, const sparse_vector& v) {
    double s = 0.0;
    for (std::size_t k = 0; k < v.indices.size(); ++k) s += w[v.indices[k]] * v.values[k];
    return s;
}

// acc += a * v
inline void axpy(double a, const sparse_vector& v, std::vector<double>& acc) {
    for (std::size_t k = 0; k < v.indices.size(); ++k) acc[v.indices[k]] += a * v.values[k];
}

inline std::vector<double> to_dense(const sparse_vector& v) {
    std::vector<double> d(v.dim, 0.0);
    for (std::size_t k = 0; k < v.indices.size(); ++k) d[v.indices[k]] = v.values[k];
    return d;
}

} // namespace ortho
