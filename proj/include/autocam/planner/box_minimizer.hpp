#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>

namespace autocam {

template <std::size_t N>
using BoxVector = std::array<double, N>;

template <std::size_t N>
struct ValueGradient {
    double value{0.0};
    BoxVector<N> gradient{};
};

template <std::size_t N>
struct BoxMinimum {
    BoxVector<N> x{};
    double value{0.0};
    int iterations{0};
    int evaluations{0};
    bool converged{false};
};

struct BoxMinimizerOptions {
    int max_iterations{200};
    double gradient_tolerance{1e-10};
    double step_tolerance{1e-12};
    double armijo{1e-4};
    int max_backtracks{60};
};

// Projected quasi-Newton (BFGS on the free variables) with an Armijo search
// along the projection arc.  The objective returns nullopt at points where it
// is undefined; those trial points are rejected by the line search.
// Returns nullopt if the objective is undefined at the clamped start point.
template <std::size_t N>
std::optional<BoxMinimum<N>> minimize_box(
    const std::function<std::optional<ValueGradient<N>>(const BoxVector<N>&)>& objective,
    BoxVector<N> x, const BoxVector<N>& lo, const BoxVector<N>& hi,
    const BoxMinimizerOptions& opt = {}) {
    using Matrix = std::array<std::array<double, N>, N>;
    auto identity = [] {
        Matrix m{};
        for (std::size_t i = 0; i < N; ++i) m[i][i] = 1.0;
        return m;
    };
    auto project = [&](BoxVector<N> v) {
        for (std::size_t i = 0; i < N; ++i) v[i] = std::clamp(v[i], lo[i], hi[i]);
        return v;
    };

    x = project(x);
    BoxMinimum<N> out;
    auto current = objective(x);
    out.evaluations = 1;
    if (!current || !std::isfinite(current->value)) return std::nullopt;

    Matrix H = identity();
    bool H_is_identity = true;

    for (int it = 0; it < opt.max_iterations; ++it) {
        out.iterations = it + 1;
        const auto& g = current->gradient;

        std::array<bool, N> free{};
        double pg = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const bool at_lo = x[i] <= lo[i] && g[i] > 0.0;
            const bool at_hi = x[i] >= hi[i] && g[i] < 0.0;
            free[i] = !(at_lo || at_hi);
            if (free[i]) pg = std::max(pg, std::abs(g[i]));
        }
        if (pg < opt.gradient_tolerance) {
            out.converged = true;
            break;
        }

        auto direction = [&](const Matrix& M) {
            BoxVector<N> d{};
            for (std::size_t i = 0; i < N; ++i) {
                if (!free[i]) continue;
                for (std::size_t j = 0; j < N; ++j)
                    if (free[j]) d[i] -= M[i][j] * g[j];
            }
            return d;
        };
        auto dot = [](const BoxVector<N>& a, const BoxVector<N>& b) {
            double s = 0.0;
            for (std::size_t i = 0; i < N; ++i) s += a[i] * b[i];
            return s;
        };

        BoxVector<N> d = direction(H);
        if (!(dot(d, g) < 0.0)) {
            H = identity();
            H_is_identity = true;
            d = direction(H);
        }

        std::optional<ValueGradient<N>> next;
        BoxVector<N> xn{};
        for (int attempt = 0; attempt < 2 && !next; ++attempt) {
            double alpha = 1.0;
            for (int k = 0; k < opt.max_backtracks; ++k, alpha *= 0.5) {
                BoxVector<N> trial = x;
                for (std::size_t i = 0; i < N; ++i) trial[i] += alpha * d[i];
                trial = project(trial);
                BoxVector<N> s{};
                for (std::size_t i = 0; i < N; ++i) s[i] = trial[i] - x[i];
                auto f = objective(trial);
                ++out.evaluations;
                if (f && std::isfinite(f->value) && f->value <= current->value + opt.armijo * dot(g, s)) {
                    next = f;
                    xn = trial;
                    break;
                }
            }
            if (!next && !H_is_identity) {
                H = identity();
                H_is_identity = true;
                d = direction(H);
            } else {
                break;
            }
        }
        if (!next) {
            // No descent along the projected gradient: x is stationary to
            // working precision.
            out.converged = true;
            break;
        }

        BoxVector<N> s{}, y{};
        double step = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            s[i] = xn[i] - x[i];
            y[i] = next->gradient[i] - g[i];
            step = std::max(step, std::abs(s[i]));
        }
        const double sy = dot(s, y);
        if (sy > 1e-18) {
            BoxVector<N> Hy{};
            for (std::size_t i = 0; i < N; ++i)
                for (std::size_t j = 0; j < N; ++j) Hy[i] += H[i][j] * y[j];
            const double yHy = dot(y, Hy);
            for (std::size_t i = 0; i < N; ++i)
                for (std::size_t j = 0; j < N; ++j)
                    H[i][j] += (sy + yHy) * s[i] * s[j] / (sy * sy) - (Hy[i] * s[j] + s[i] * Hy[j]) / sy;
            H_is_identity = false;
        }

        x = xn;
        current = next;
        if (step < opt.step_tolerance) {
            out.converged = true;
            break;
        }
    }

    out.x = x;
    out.value = current->value;
    return out;
}

} // namespace autocam
