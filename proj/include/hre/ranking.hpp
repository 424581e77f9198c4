#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hre/numerics.hpp"
#include "hre/pcm.hpp"

namespace hre {

/// Public method choice; completeness of the data picks the assembly rule.
enum class Method { Arithmetic, Geometric };

/// The assembly rule actually used.
enum class Variant {
    ArithmeticComplete,
    ArithmeticIncomplete,
    GeometricComplete,
    GeometricIncomplete,
};

/// The assembled k x k system A_k w = b in unknowns-first ordering. For the
/// geometric variants the solution lives in log space and the final weights
/// are its exponentials.
struct LinearSystem {
    SquareMatrix coefficients;
    std::vector<double> rhs;
    Variant variant = Variant::ArithmeticComplete;
};

LinearSystem assemble_arithmetic_complete(const HreProblem& p);
LinearSystem assemble_arithmetic_incomplete(const HreProblem& p);
LinearSystem assemble_geometric_complete(const HreProblem& p);
LinearSystem assemble_geometric_incomplete(const HreProblem& p);

SolveResult solve(const LinearSystem& system, double singular_tol = kDefaultSingularTol);

enum class Theorem {
    CompleteArithmetic,
    IncompleteArithmetic,
    CorollaryEqualMissing,
    CorollaryHalfN,
    GeometricAlways,
};

enum class Verdict { Guaranteed, NotGuaranteed };

/// Sufficient-condition evaluation for one problem and method. Guaranteed
/// requires the consistency index to sit strictly below the theorem
/// threshold; values within kThresholdMargin of the threshold count as
/// attained and report NotGuaranteed (the guarantee is one-sided, so the
/// conservative reading stays sound).
struct ApplicabilityReport {
    Theorem theorem = Theorem::GeometricAlways;
    std::optional<double> ci_value;
    std::optional<double> threshold;
    std::optional<std::size_t> s_max;  // incomplete arithmetic only
    std::optional<std::size_t> s_min;
    Verdict verdict = Verdict::NotGuaranteed;
    std::string note;
};

/// Relative margin around the threshold treated as equality.
inline constexpr double kThresholdMargin = 1e-9;

ApplicabilityReport check_applicability(const HreProblem& p, Method method);

/// Weights for all n alternatives in the original order; reference entries
/// are copied exactly, computed entries come from the solve.
struct PriorityVector {
    std::vector<double> weights;
    std::vector<bool> computed;
};

struct RankOptions {
    bool strict = false;               ///< upgrade nonpositive solutions to an error
    double singular_tol = kDefaultSingularTol;
};

struct RankResult {
    PriorityVector priorities;
    ApplicabilityReport applicability;
    Variant variant = Variant::ArithmeticComplete;
    double pivot_floor = 0.0;
    std::vector<std::string> warnings;
};

/// Assemble, check applicability, solve. The report and the solver are
/// independent evidence: a NotGuaranteed verdict does not stop the solve,
/// and a Guaranteed verdict is never taken on faith. Throws
/// InvalidProblemError on invalid comparison data, SingularSystemError when
/// the arithmetic system has no unique solution, NonpositiveSolutionError
/// only under options.strict.
RankResult rank(const HreProblem& p, Method method, const RankOptions& options = {});

const char* to_string(Method m);
const char* to_string(Variant v);
const char* to_string(Theorem t);
const char* to_string(Verdict v);

}  // namespace hre
