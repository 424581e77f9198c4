#include "hre/baselines.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "hre/consistency.hpp"
#include "hre/errors.hpp"
#include "hre/numerics.hpp"

namespace hre {

namespace {

PriorityVector normalized(std::vector<double> w) {
    double total = 0.0;
    for (double v : w) total += v;
    if (!(total > 0.0))
        throw NonpositiveEntryError("prioritization produced a nonpositive total weight");
    for (double& v : w) v /= total;
    PriorityVector pv;
    pv.computed.assign(w.size(), true);
    pv.weights = std::move(w);
    return pv;
}

double positive_value(const PCMatrix& c, std::size_t i, std::size_t j) {
    const double v = c.value(i, j);
    if (!(v > 0.0))
        throw NonpositiveEntryError("comparison (" + std::to_string(i + 1) + "," +
                                    std::to_string(j + 1) + ") is not positive");
    return v;
}

}  // namespace

PriorityVector evm(const PCMatrix& c) {
    const std::size_t n = c.size();
    if (!c.complete())
        throw MissingEntriesError("eigenvector prioritization needs a complete matrix");
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = c.value(i, j);
    return normalized(spectral_radius(m).vector);
}

PriorityVector gmm(const PCMatrix& c) {
    const std::size_t n = c.size();
    if (!c.complete())
        throw MissingEntriesError("geometric-mean prioritization needs a complete matrix");
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        double log_sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) log_sum += std::log(positive_value(c, i, j));
        w[i] = std::exp(log_sum / static_cast<double>(n));
    }
    return normalized(std::move(w));
}

PriorityVector harker_evm(const PCMatrix& c) {
    if (!is_irreducible(comparison_graph(c)))
        throw NotIrreducibleError("comparison graph is not strongly connected");
    return normalized(spectral_radius(harker_matrix(c)).vector);
}

PriorityVector incomplete_gmm(const PCMatrix& c) {
    const std::size_t n = c.size();
    if (!is_irreducible(comparison_graph(c)))
        throw NotIrreducibleError("comparison graph is not strongly connected");
    if (n == 1) return normalized({1.0});

    // Least squares for x_i - x_j ~ log c_ij over the known cells gives the
    // graph-Laplacian normal equations deg(i)*x_i - sum x_j = sum log c_ij.
    // The system is rank-deficient by exactly one (weights are a ratio
    // scale), so x_0 is pinned to 0 and dropped; normalization afterwards
    // erases the arbitrary anchor.
    SquareMatrix a(n - 1);
    std::vector<double> r(n - 1, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        double degree = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || !c.known(i, j)) continue;
            degree += 1.0;
            if (j >= 1) a(i - 1, j - 1) -= 1.0;
            r[i - 1] += std::log(positive_value(c, i, j));
        }
        a(i - 1, i - 1) += degree;
    }
    const SolveResult sol = solve_linear(a, r);
    if (sol.singular())
        throw SingularSystemError("log-least-squares system is singular", sol.pivot_floor);

    std::vector<double> w(n);
    w[0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) w[i] = std::exp((*sol.solution)[i - 1]);
    return normalized(std::move(w));
}

}  // namespace hre
