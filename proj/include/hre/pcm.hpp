#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hre {

/// One comparison cell: a known positive ratio or missing ("?").
using Cell = std::optional<double>;

/// Relative tolerance for the reciprocity check c_ij * c_ji = 1.
inline constexpr double kReciprocityTol = 1e-9;

/// n x n pairwise comparison matrix with an explicit missing state and
/// per-alternative labels. Off-diagonal cells hold the ratio of preference
/// strengths c_ij; the diagonal is always 1.
class PCMatrix {
public:
    PCMatrix() = default;

    /// Diagonal set to 1, all off-diagonal cells missing. Labels default to
    /// "a1".."an".
    explicit PCMatrix(std::size_t n, std::vector<std::string> labels = {});

    /// Build from explicit cells (missing allowed anywhere, including the
    /// diagonal, so that validate() can report bad shapes).
    static PCMatrix from_rows(const std::vector<std::vector<Cell>>& rows,
                              std::vector<std::string> labels = {});

    /// Build from fully known cells.
    static PCMatrix complete_from_rows(const std::vector<std::vector<double>>& rows,
                                       std::vector<std::string> labels = {});

    /// Consistent ratio matrix c_ij = weights[i] / weights[j].
    static PCMatrix from_weights(std::span<const double> weights,
                                 std::vector<std::string> labels = {});

    std::size_t size() const { return n_; }

    const Cell& at(std::size_t i, std::size_t j) const { return cells_[i * n_ + j]; }
    bool known(std::size_t i, std::size_t j) const { return cells_[i * n_ + j].has_value(); }
    double value(std::size_t i, std::size_t j) const { return *cells_[i * n_ + j]; }

    bool complete() const;

    /// Construction helpers. Every analysis on a PCMatrix is a pure
    /// function; treat instances as frozen once handed to one.
    void set_cell(std::size_t i, std::size_t j, Cell v) { cells_[i * n_ + j] = v; }
    void set_pair(std::size_t i, std::size_t j, double v);  ///< c_ij = v, c_ji = 1/v
    void clear_pair(std::size_t i, std::size_t j);          ///< both directions missing

    const std::vector<std::string>& labels() const { return labels_; }

private:
    std::size_t n_ = 0;
    std::vector<Cell> cells_;  // row-major
    std::vector<std::string> labels_;
};

enum class ViolationKind {
    NonpositiveEntry,
    BrokenReciprocity,
    AsymmetricMissing,
    NonUnitDiagonal,
};

struct Violation {
    ViolationKind kind;
    std::size_t row = 0;  // 0-based
    std::size_t col = 0;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// Check every PCMatrix invariant; violations are data, not failures.
/// Missing diagonal cells are rejected here rather than silently repaired.
ValidationReport validate(const PCMatrix& m);

/// Directed graph of known comparisons: edge i -> j iff c_ij is known,
/// self-loops omitted.
struct ComparisonGraph {
    std::size_t vertex_count = 0;
    std::vector<std::vector<std::size_t>> adjacency;

    std::size_t edge_count() const;
};

ComparisonGraph comparison_graph(const PCMatrix& m);

/// True iff the graph is strongly connected.
bool is_irreducible(const ComparisonGraph& g);

/// Column scope for missing-entry counts. FullRow counts over all n columns
/// (the Harker matrix H and the incomplete assembly both use that); the
/// WithinBlock scope restricts columns to the requested row set itself (the
/// k x k block C_k of the applicability thresholds). The two must not be
/// mixed.
enum class CountScope { FullRow, WithinBlock };

struct MissingCounts {
    std::vector<std::size_t> per_row;  // aligned with the requested rows
    std::size_t s_max = 0;
    std::size_t s_min = 0;
};

MissingCounts missing_counts(const PCMatrix& m, std::span<const std::size_t> rows,
                             CountScope scope);

/// The block of m on the given indices (labels carried over).
PCMatrix submatrix(const PCMatrix& m, std::span<const std::size_t> indices);

/// A PCMatrix split into k unknown alternatives and n - k reference
/// alternatives with fixed positive weights.
class HreProblem {
public:
    /// Throws SchemaError-free invariants as InvalidProblemError: unknowns
    /// and references must partition 0..n-1, every reference weight must be
    /// positive, and both sides must be non-empty.
    HreProblem(PCMatrix matrix, std::vector<std::size_t> unknowns,
               const std::map<std::size_t, double>& reference_weights);

    const PCMatrix& matrix() const { return matrix_; }
    const std::vector<std::size_t>& unknowns() const { return unknowns_; }
    const std::vector<std::size_t>& references() const { return references_; }  // ascending
    double reference_weight(std::size_t original_index) const;

    std::size_t size() const { return matrix_.size(); }          // n
    std::size_t unknown_count() const { return unknowns_.size(); }  // k

    /// Unknowns first (caller order), then references ascending.
    std::vector<std::size_t> canonical_order() const;

private:
    PCMatrix matrix_;
    std::vector<std::size_t> unknowns_;
    std::vector<std::size_t> references_;
    std::vector<double> reference_weights_;  // aligned with references_
};

}  // namespace hre
