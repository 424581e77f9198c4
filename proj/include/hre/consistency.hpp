#pragma once

#include <cstddef>

#include "hre/numerics.hpp"
#include "hre/pcm.hpp"

namespace hre {

enum class IndexKind { Saaty, Harker };

struct ConsistencyReport {
    double index_value = 0.0;
    IndexKind kind = IndexKind::Saaty;
    std::size_t dimension = 0;   ///< the n used in the denominator
    double radius_used = 0.0;    ///< the spectral radius that produced it
};

/// Saaty consistency index (rho(c) - n) / (n - 1) of a complete matrix.
/// Throws MissingEntriesError on incomplete input, DimensionError for n < 2.
ConsistencyReport saaty_ci(const PCMatrix& c);

/// Harker's auxiliary matrix: h_ii = 1 + s_i with s_i the missing count of
/// row i within the block, h_ij = 0 where c_ij is missing, c_ij otherwise.
SquareMatrix harker_matrix(const PCMatrix& c);

/// Harker consistency index (rho(H) - n) / (n - 1) for incomplete matrices.
/// Coincides with saaty_ci on complete input (identical code path). Throws
/// AllMissingRowError / NotIrreducibleError when the index would rank
/// nothing.
ConsistencyReport harker_ci(const PCMatrix& c);

/// Relative tolerance for treating known entries as mutually consistent.
inline constexpr double kConsistencyTol = 1e-8;

/// Unique consistent completion of an irreducible consistent matrix: missing
/// entries become products of known entries along a path, realized through a
/// breadth-first spanning tree rooted at `root` (path choice is immaterial
/// for consistent data; the root only pins the traversal for determinism).
/// Throws NotIrreducibleError, or NotConsistentError when some known entry
/// deviates from its spanning-tree reconstruction by more than
/// kConsistencyTol relative.
PCMatrix consistent_completion(const PCMatrix& c, std::size_t root = 0);

}  // namespace hre
