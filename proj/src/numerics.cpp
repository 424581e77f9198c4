#include "hre/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "hre/errors.hpp"

namespace hre {

SquareMatrix::SquareMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : k_(rows.size()), a_() {
    a_.reserve(k_ * k_);
    for (const auto& r : rows) {
        if (r.size() != k_)
            throw DimensionError("matrix initializer rows must all have length " +
                                 std::to_string(k_));
        a_.insert(a_.end(), r.begin(), r.end());
    }
}

SquareMatrix SquareMatrix::identity(std::size_t k) {
    SquareMatrix m(k);
    for (std::size_t i = 0; i < k; ++i) m(i, i) = 1.0;
    return m;
}

SquareMatrix SquareMatrix::ones(std::size_t k) { return SquareMatrix(k, 1.0); }

namespace {

// y = (m + I) x, returning the 1-norm of y. x is assumed nonnegative with
// unit 1-norm, so the norm is just the plain sum.
double apply_shifted(const SquareMatrix& m, const std::vector<double>& x,
                     std::vector<double>& y) {
    const std::size_t k = m.size();
    double norm = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        double acc = x[i];  // the +I term
        const auto row = m.row(i);
        for (std::size_t j = 0; j < k; ++j) acc += row[j] * x[j];
        y[i] = acc;
        norm += acc;
    }
    return norm;
}

}  // namespace

SpectralResult spectral_radius(const SquareMatrix& m, double tol, std::size_t max_iter) {
    const std::size_t k = m.size();
    for (std::size_t i = 0; i < k; ++i)
        for (double v : m.row(i))
            if (v < 0.0 || std::isnan(v))
                throw NonNegativityError("spectral radius needs a nonnegative matrix");

    SpectralResult res;
    if (k == 0) {
        res.converged = true;
        return res;
    }
    if (k == 1) {
        res.radius = m(0, 0);
        res.vector = {1.0};
        res.converged = true;
        return res;
    }

    std::vector<double> x(k, 1.0 / static_cast<double>(k));
    std::vector<double> y(k);

    // For a nonnegative x with unit 1-norm, sum((m+I)x) is the Rayleigh-like
    // estimate <1, (m+I)x>; for the Perron vector it equals rho(m) + 1.
    double est = 0.0;
    bool hit_tol = false;
    std::size_t polish_left = 50;  // extra steps after tol to reach the rounding floor
    for (std::size_t it = 1; it <= max_iter; ++it) {
        const double norm = apply_shifted(m, x, y);
        res.iterations = it;
        if (norm == 0.0) {
            // Can only happen for the zero matrix: rho = 0, shift eaten by x itself.
            // (m+I)x has norm >= |x| > 0, so this branch is unreachable; keep it
            // as a hard stop against division by zero.
            res.radius = 0.0;
            res.vector = x;
            res.converged = true;
            return res;
        }
        for (std::size_t i = 0; i < k; ++i) y[i] /= norm;
        x.swap(y);

        const double change = std::abs(norm - est);
        est = norm;
        if (!hit_tol) {
            if (change <= tol * std::max(est, 1.0)) hit_tol = true;
        } else {
            // Polish: keep going while the estimate still moves above the
            // rounding floor, but never more than a bounded number of steps.
            if (change <= 4.0 * 2.220446049250313e-16 * est || polish_left-- == 0) {
                res.radius = est - 1.0;
                res.vector = std::move(x);
                res.converged = true;
                return res;
            }
        }
    }
    res.radius = est - 1.0;
    res.vector = std::move(x);
    res.converged = false;
    return res;
}

double scaled_shift_radius(const SquareMatrix& c, double alpha) {
    if (alpha <= 0.0) throw std::invalid_argument("alpha must be positive");
    SpectralResult r = spectral_radius(c);
    return alpha * (r.radius - 1.0);
}

SolveResult solve_linear(const SquareMatrix& a, std::span<const double> b,
                         double singular_tol) {
    const std::size_t n = a.size();
    if (b.size() != n)
        throw DimensionError("right-hand side has length " + std::to_string(b.size()) +
                             ", expected " + std::to_string(n));

    SolveResult res;
    if (n == 0) {
        res.solution = std::vector<double>{};
        res.pivot_floor = 0.0;
        return res;
    }

    // Working copies; rows are permuted via the index array, never moved.
    std::vector<double> lu(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = a.row(i);
        std::copy(row.begin(), row.end(), lu.begin() + static_cast<std::ptrdiff_t>(i * n));
    }
    std::vector<double> x(b.begin(), b.end());
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});

    // Row scales from the original matrix: pivots are judged relative to the
    // largest coefficient of their own row, so a uniformly tiny but well-
    // conditioned system is not misflagged.
    std::vector<double> scale(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double maxabs = 0.0;
        for (double v : a.row(i)) maxabs = std::max(maxabs, std::abs(v));
        if (maxabs == 0.0) {
            res.pivot_floor = 0.0;
            return res;  // an all-zero row: singular outright
        }
        scale[i] = maxabs;
    }

    res.pivot_floor = std::numeric_limits<double>::infinity();
    for (std::size_t col = 0; col < n; ++col) {
        // Pick the row with the largest scaled pivot.
        std::size_t best = col;
        double best_mag = -1.0;
        for (std::size_t r = col; r < n; ++r) {
            const double mag = std::abs(lu[perm[r] * n + col]) / scale[perm[r]];
            if (mag > best_mag) {
                best_mag = mag;
                best = r;
            }
        }
        std::swap(perm[col], perm[best]);
        res.pivot_floor = std::min(res.pivot_floor, best_mag);
        if (best_mag < singular_tol) return res;  // solution stays empty

        const std::size_t p = perm[col];
        const double pivot = lu[p * n + col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const std::size_t q = perm[r];
            const double f = lu[q * n + col] / pivot;
            if (f == 0.0) continue;
            lu[q * n + col] = 0.0;
            for (std::size_t j = col + 1; j < n; ++j) lu[q * n + j] -= f * lu[p * n + j];
            x[q] -= f * x[p];
        }
    }

    // Back substitution in permuted order.
    std::vector<double> sol(n);
    for (std::size_t ri = n; ri-- > 0;) {
        const std::size_t p = perm[ri];
        double acc = x[p];
        for (std::size_t j = ri + 1; j < n; ++j) acc -= lu[p * n + j] * sol[j];
        sol[ri] = acc / lu[p * n + ri];
    }
    res.solution = std::move(sol);
    return res;
}

bool gershgorin_excludes_zero(const SquareMatrix& m) {
    const std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i) {
        double off = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) off += std::abs(m(i, j));
        if (std::abs(m(i, i)) <= off) return false;
    }
    return true;
}

}  // namespace hre
