#pragma once

#include <cmath>
#include <cstddef>
#include <deque>
#include <functional>
#include <vector>

namespace ortho {

// Objective callback: fills grad (same size as x) and returns f(x).
using objective_fn = std::function<double(const std::vector<double>& x, std::vector<double>& grad)>;

struct lbfgs_options {
    std::size_t max_iter = 1000;
    double grad_tol = 1e-4;   // sup-norm of the gradient
    std::size_t history = 10; // stored curvature pairs
};

struct lbfgs_result {
    std::vector<double> x;
    double fx = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<double> fx_history; // f after every accepted step
};

namespace detail {

inline double dot_dense(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double sup_norm(const std::vector<double>& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

} // namespace detail

// Limited-memory BFGS with Armijo backtracking. Fully deterministic: fixed
// start point, fixed step schedule, no randomness. Steps are only accepted
// when they decrease f, so fx_history is non-increasing.
inline lbfgs_result lbfgs_minimize(const objective_fn& f, std::vector<double> x0,
                                   const lbfgs_options& opts = {}) {
    lbfgs_result res;
    res.x = std::move(x0);
    const std::size_t n = res.x.size();

    std::vector<double> grad(n), new_grad(n), direction(n), new_x(n);
    res.fx = f(res.x, grad);
    res.fx_history.push_back(res.fx);

    std::deque<std::vector<double>> s_list, y_list;
    std::deque<double> rho_list;

    for (std::size_t iter = 0; iter < opts.max_iter; ++iter) {
        if (detail::sup_norm(grad) <= opts.grad_tol) {
            res.converged = true;
            break;
        }
        res.iterations = iter + 1;

        // Two-loop recursion for d = -H * grad.
        direction = grad;
        std::vector<double> alpha(s_list.size());
        for (std::size_t i = s_list.size(); i-- > 0;) {
            alpha[i] = rho_list[i] * detail::dot_dense(s_list[i], direction);
            for (std::size_t j = 0; j < n; ++j) direction[j] -= alpha[i] * y_list[i][j];
        }
        if (!s_list.empty()) {
            const auto& s = s_list.back();
            const auto& y = y_list.back();
            const double gamma = detail::dot_dense(s, y) / detail::dot_dense(y, y);
            for (double& v : direction) v *= gamma;
        }
        for (std::size_t i = 0; i < s_list.size(); ++i) {
            const double beta = rho_list[i] * detail::dot_dense(y_list[i], direction);
            for (std::size_t j = 0; j < n; ++j) direction[j] += (alpha[i] - beta) * s_list[i][j];
        }
        for (double& v : direction) v = -v;

        double dg = detail::dot_dense(direction, grad);
        if (dg >= 0.0) { // not a descent direction, fall back to steepest descent
            for (std::size_t j = 0; j < n; ++j) direction[j] = -grad[j];
            dg = -detail::dot_dense(grad, grad);
        }

        // Armijo backtracking.
        constexpr double c1 = 1e-4;
        double step = 1.0;
        double new_fx = res.fx;
        bool accepted = false;
        for (int ls = 0; ls < 50; ++ls) {
            for (std::size_t j = 0; j < n; ++j) new_x[j] = res.x[j] + step * direction[j];
            new_fx = f(new_x, new_grad);
            if (std::isfinite(new_fx) && new_fx <= res.fx + c1 * step * dg) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break; // flat to machine precision

        std::vector<double> s(n), y(n);
        for (std::size_t j = 0; j < n; ++j) {
            s[j] = new_x[j] - res.x[j];
            y[j] = new_grad[j] - grad[j];
        }
        const double sy = detail::dot_dense(s, y);
        if (sy > 1e-12) {
            if (s_list.size() == opts.history) {
                s_list.pop_front();
                y_list.pop_front();
                rho_list.pop_front();
            }
            s_list.push_back(std::move(s));
            y_list.push_back(std::move(y));
            rho_list.push_back(1.0 / sy);
        }

        res.x.swap(new_x);
        grad.swap(new_grad);
        res.fx = new_fx;
        res.fx_history.push_back(res.fx);
    }
    if (!res.converged) res.converged = detail::sup_norm(grad) <= opts.grad_tol;
    return res;
}

} // namespace ortho
