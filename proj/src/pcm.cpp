#include "hre/pcm.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "hre/errors.hpp"

namespace hre {

namespace {

std::vector<std::string> default_labels(std::size_t n, std::vector<std::string> labels) {
    if (labels.empty()) {
        labels.reserve(n);
        for (std::size_t i = 1; i <= n; ++i) labels.push_back("a" + std::to_string(i));
    } else if (labels.size() != n) {
        throw DimensionError("expected " + std::to_string(n) + " labels, got " +
                             std::to_string(labels.size()));
    }
    return labels;
}

std::string cell_ref(std::size_t i, std::size_t j) {
    return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

}  // namespace

PCMatrix::PCMatrix(std::size_t n, std::vector<std::string> labels)
    : n_(n), cells_(n * n), labels_(default_labels(n, std::move(labels))) {
    for (std::size_t i = 0; i < n; ++i) cells_[i * n + i] = 1.0;
}

PCMatrix PCMatrix::from_rows(const std::vector<std::vector<Cell>>& rows,
                             std::vector<std::string> labels) {
    const std::size_t n = rows.size();
    PCMatrix m(n, std::move(labels));
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n)
            throw DimensionError("row " + std::to_string(i + 1) + " has " +
                                 std::to_string(rows[i].size()) + " cells, expected " +
                                 std::to_string(n));
        for (std::size_t j = 0; j < n; ++j) m.cells_[i * n + j] = rows[i][j];
    }
    return m;
}

PCMatrix PCMatrix::complete_from_rows(const std::vector<std::vector<double>>& rows,
                                      std::vector<std::string> labels) {
    std::vector<std::vector<Cell>> cells(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        cells[i].assign(rows[i].begin(), rows[i].end());
    return from_rows(cells, std::move(labels));
}

PCMatrix PCMatrix::from_weights(std::span<const double> weights,
                                std::vector<std::string> labels) {
    const std::size_t n = weights.size();
    for (double w : weights)
        if (!(w > 0.0))
            throw NonpositiveEntryError("weights for a consistent matrix must be positive");
    PCMatrix m(n, std::move(labels));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.cells_[i * n + j] = weights[i] / weights[j];
    return m;
}

bool PCMatrix::complete() const {
    return std::all_of(cells_.begin(), cells_.end(),
                       [](const Cell& c) { return c.has_value(); });
}

void PCMatrix::set_pair(std::size_t i, std::size_t j, double v) {
    if (!(v > 0.0)) throw NonpositiveEntryError("comparison values must be positive");
    if (i == j) throw InvalidProblemError("set_pair cannot touch the diagonal");
    cells_[i * n_ + j] = v;
    cells_[j * n_ + i] = 1.0 / v;
}

void PCMatrix::clear_pair(std::size_t i, std::size_t j) {
    if (i == j) throw InvalidProblemError("clear_pair cannot touch the diagonal");
    cells_[i * n_ + j] = std::nullopt;
    cells_[j * n_ + i] = std::nullopt;
}

ValidationReport validate(const PCMatrix& m) {
    ValidationReport rep;
    const std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Cell& d = m.at(i, i);
        if (!d.has_value() || *d != 1.0) {
            std::ostringstream msg;
            msg << "diagonal cell " << cell_ref(i, i) << " must be 1";
            rep.violations.push_back({ViolationKind::NonUnitDiagonal, i, i, msg.str()});
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Cell& up = m.at(i, j);
            const Cell& dn = m.at(j, i);
            if (up.has_value() != dn.has_value()) {
                const std::size_t miss_r = up.has_value() ? j : i;
                const std::size_t miss_c = up.has_value() ? i : j;
                std::ostringstream msg;
                msg << "cell " << cell_ref(miss_r, miss_c) << " is missing but its mirror is known";
                rep.violations.push_back(
                    {ViolationKind::AsymmetricMissing, miss_r, miss_c, msg.str()});
                continue;
            }
            if (!up.has_value()) continue;
            bool positive = true;
            for (const auto& [v, r, c] : {std::tuple{*up, i, j}, std::tuple{*dn, j, i}}) {
                if (!(v > 0.0) || std::isinf(v) || std::isnan(v)) {
                    std::ostringstream msg;
                    msg << "cell " << cell_ref(r, c) << " = " << v << " is not a positive ratio";
                    rep.violations.push_back({ViolationKind::NonpositiveEntry, r, c, msg.str()});
                    positive = false;
                }
            }
            if (!positive) continue;
            const double prod = *up * *dn;
            if (std::abs(prod - 1.0) > kReciprocityTol) {
                std::ostringstream msg;
                msg << "cells " << cell_ref(i, j) << " and " << cell_ref(j, i)
                    << " multiply to " << prod << ", expected 1";
                rep.violations.push_back({ViolationKind::BrokenReciprocity, i, j, msg.str()});
            }
        }
    }
    return rep;
}

std::size_t ComparisonGraph::edge_count() const {
    std::size_t total = 0;
    for (const auto& nbrs : adjacency) total += nbrs.size();
    return total;
}

ComparisonGraph comparison_graph(const PCMatrix& m) {
    const std::size_t n = m.size();
    ComparisonGraph g;
    g.vertex_count = n;
    g.adjacency.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && m.known(i, j)) g.adjacency[i].push_back(j);
    return g;
}

namespace {

// Iterative DFS marking all vertices reachable from start.
std::size_t count_reachable(const std::vector<std::vector<std::size_t>>& adj,
                            std::size_t start) {
    std::vector<char> seen(adj.size(), 0);
    std::vector<std::size_t> stack{start};
    seen[start] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t w : adj[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count;
}

}  // namespace

bool is_irreducible(const ComparisonGraph& g) {
    const std::size_t n = g.vertex_count;
    if (n <= 1) return true;
    if (count_reachable(g.adjacency, 0) != n) return false;
    std::vector<std::vector<std::size_t>> rev(n);
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t w : g.adjacency[v]) rev[w].push_back(v);
    return count_reachable(rev, 0) == n;
}

MissingCounts missing_counts(const PCMatrix& m, std::span<const std::size_t> rows,
                             CountScope scope) {
    const std::size_t n = m.size();
    MissingCounts counts;
    counts.per_row.reserve(rows.size());
    for (std::size_t i : rows) {
        if (i >= n) throw DimensionError("row index " + std::to_string(i) + " out of range");
        std::size_t s = 0;
        if (scope == CountScope::FullRow) {
            for (std::size_t j = 0; j < n; ++j)
                if (j != i && !m.known(i, j)) ++s;
        } else {
            for (std::size_t j : rows)
                if (j != i && !m.known(i, j)) ++s;
        }
        counts.per_row.push_back(s);
    }
    if (!counts.per_row.empty()) {
        const auto [lo, hi] = std::minmax_element(counts.per_row.begin(), counts.per_row.end());
        counts.s_min = *lo;
        counts.s_max = *hi;
    }
    return counts;
}

PCMatrix submatrix(const PCMatrix& m, std::span<const std::size_t> indices) {
    const std::size_t k = indices.size();
    std::vector<std::string> labels;
    labels.reserve(k);
    for (std::size_t i : indices) {
        if (i >= m.size())
            throw DimensionError("index " + std::to_string(i) + " out of range");
        labels.push_back(m.labels()[i]);
    }
    PCMatrix sub(k, std::move(labels));
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c)
            sub.set_cell(r, c, m.at(indices[r], indices[c]));
    return sub;
}

HreProblem::HreProblem(PCMatrix matrix, std::vector<std::size_t> unknowns,
                       const std::map<std::size_t, double>& reference_weights)
    : matrix_(std::move(matrix)), unknowns_(std::move(unknowns)) {
    const std::size_t n = matrix_.size();
    if (unknowns_.empty()) throw InvalidProblemError("no unknown alternatives");
    if (reference_weights.empty()) throw InvalidProblemError("no reference alternatives");

    std::set<std::size_t> seen;
    for (std::size_t i : unknowns_) {
        if (i >= n)
            throw InvalidProblemError("unknown index " + std::to_string(i) + " out of range");
        if (!seen.insert(i).second)
            throw InvalidProblemError("unknown index " + std::to_string(i) + " repeated");
    }
    for (const auto& [i, w] : reference_weights) {
        if (i >= n)
            throw InvalidProblemError("reference index " + std::to_string(i) + " out of range");
        if (!seen.insert(i).second)
            throw InvalidProblemError("index " + std::to_string(i) +
                                      " is both unknown and reference");
        if (!(w > 0.0) || std::isinf(w))
            throw InvalidProblemError("reference weight for index " + std::to_string(i) +
                                      " must be positive and finite");
        references_.push_back(i);  // std::map iterates ascending
        reference_weights_.push_back(w);
    }
    if (seen.size() != n)
        throw InvalidProblemError("unknowns and references must cover every alternative");
}

double HreProblem::reference_weight(std::size_t original_index) const {
    const auto it = std::lower_bound(references_.begin(), references_.end(), original_index);
    if (it == references_.end() || *it != original_index)
        throw InvalidProblemError("index " + std::to_string(original_index) +
                                  " is not a reference alternative");
    return reference_weights_[static_cast<std::size_t>(it - references_.begin())];
}

std::vector<std::size_t> HreProblem::canonical_order() const {
    std::vector<std::size_t> order = unknowns_;
    order.insert(order.end(), references_.begin(), references_.end());
    return order;
}

}  // namespace hre
