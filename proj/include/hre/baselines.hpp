#pragma once

#include "hre/pcm.hpp"
#include "hre/ranking.hpp"

namespace hre {

/// Classical prioritization methods for side-by-side output. All of them
/// return weights normalized to sum 1 with every entry computed.

/// Principal eigenvector of a complete matrix, rescaled to sum 1.
PriorityVector evm(const PCMatrix& c);

/// Rescaled row geometric means of a complete matrix.
PriorityVector gmm(const PCMatrix& c);

/// Principal eigenvector of the Harker matrix; the incomplete extension of
/// evm. Requires an irreducible matrix.
PriorityVector harker_evm(const PCMatrix& c);

/// Logarithmic least squares over the known entries (the incomplete
/// extension of gmm): solves the graph-Laplacian normal equations with one
/// log-weight pinned, exponentiates, normalizes.
PriorityVector incomplete_gmm(const PCMatrix& c);

}  // namespace hre
