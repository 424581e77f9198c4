#include "hre/consistency.hpp"

#include <cmath>
#include <cstddef>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "hre/errors.hpp"

namespace hre {

namespace {

// Both indices are (rho - n)/(n - 1) of some nonnegative matrix; sharing the
// core keeps harker_ci bit-identical to saaty_ci on complete input, where
// the Harker matrix IS the comparison matrix.
ConsistencyReport ci_core(const SquareMatrix& m, IndexKind kind) {
    const std::size_t n = m.size();
    ConsistencyReport rep;
    rep.kind = kind;
    rep.dimension = n;
    rep.radius_used = spectral_radius(m).radius;
    rep.index_value = (rep.radius_used - static_cast<double>(n)) /
                      static_cast<double>(n - 1);
    return rep;
}

}  // namespace

ConsistencyReport saaty_ci(const PCMatrix& c) {
    const std::size_t n = c.size();
    if (n < 2) throw DimensionError("consistency index needs n >= 2");
    if (!c.complete())
        throw MissingEntriesError("matrix has missing entries; use harker_ci");
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = c.value(i, j);
    return ci_core(m, IndexKind::Saaty);
}

SquareMatrix harker_matrix(const PCMatrix& c) {
    const std::size_t n = c.size();
    SquareMatrix h(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t s = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            if (c.known(i, j))
                h(i, j) = c.value(i, j);
            else
                ++s;  // h(i, j) stays 0
        }
        h(i, i) = 1.0 + static_cast<double>(s);
    }
    return h;
}

ConsistencyReport harker_ci(const PCMatrix& c) {
    const std::size_t n = c.size();
    if (n < 2) throw DimensionError("consistency index needs n >= 2");
    for (std::size_t i = 0; i < n; ++i) {
        bool any = false;
        for (std::size_t j = 0; j < n && !any; ++j) any = (j != i && c.known(i, j));
        if (!any)
            throw AllMissingRowError("row " + std::to_string(i + 1) +
                                     " has no known comparison");
    }
    if (!is_irreducible(comparison_graph(c)))
        throw NotIrreducibleError("comparison graph is not strongly connected");
    return ci_core(harker_matrix(c), IndexKind::Harker);
}

PCMatrix consistent_completion(const PCMatrix& c, std::size_t root) {
    const std::size_t n = c.size();
    if (root >= n && n > 0)
        throw DimensionError("root index " + std::to_string(root) + " out of range");
    if (n <= 1) return c;

    // Breadth-first spanning tree over known comparisons. v[i] plays the role
    // of a weight: along a tree edge u -> w with c_uw known, c_uw = v_u/v_w.
    std::vector<double> v(n, 0.0);
    std::vector<char> seen(n, 0);
    std::queue<std::size_t> frontier;
    v[root] = 1.0;
    seen[root] = 1;
    frontier.push(root);
    std::size_t reached = 1;
    while (!frontier.empty()) {
        const std::size_t u = frontier.front();
        frontier.pop();
        for (std::size_t w = 0; w < n; ++w) {
            if (seen[w] || !c.known(u, w)) continue;
            v[w] = v[u] / c.value(u, w);
            seen[w] = 1;
            ++reached;
            frontier.push(w);
        }
    }
    if (reached != n)
        throw NotIrreducibleError("comparison graph is not connected; no completion exists");

    // Every known entry must agree with its spanning-tree reconstruction.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j || !c.known(i, j)) continue;
            const double rebuilt = v[i] / v[j];
            if (std::abs(c.value(i, j) - rebuilt) > kConsistencyTol * rebuilt) {
                std::ostringstream msg;
                msg << "entry (" << i + 1 << "," << j + 1 << ") = " << c.value(i, j)
                    << " deviates from its reconstruction " << rebuilt;
                throw NotConsistentError(msg.str());
            }
        }
    }

    PCMatrix full = c;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && !full.known(i, j)) full.set_cell(i, j, v[i] / v[j]);
    return full;
}

}  // namespace hre
