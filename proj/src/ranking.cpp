#include "hre/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "hre/consistency.hpp"
#include "hre/errors.hpp"

namespace hre {

namespace {

// Missing counts over the full rows of the unknowns; also the isolated-row
// and irreducibility gates shared by both incomplete assemblers.
std::vector<std::size_t> incomplete_gates(const HreProblem& p) {
    const PCMatrix& m = p.matrix();
    const std::size_t n = m.size();
    MissingCounts counts = missing_counts(m, p.unknowns(), CountScope::FullRow);
    for (std::size_t i = 0; i < counts.per_row.size(); ++i) {
        if (counts.per_row[i] == n - 1)
            throw IsolatedRowError("alternative \"" + m.labels()[p.unknowns()[i]] +
                                   "\" has no known comparison");
    }
    if (!is_irreducible(comparison_graph(m)))
        throw NotIrreducibleError("comparison graph is not strongly connected");
    return counts.per_row;
}

void require_complete(const HreProblem& p, const char* who) {
    if (!p.matrix().complete())
        throw MissingEntriesError(std::string(who) +
                                  " needs a complete matrix; use the incomplete variant");
}

}  // namespace

LinearSystem assemble_arithmetic_incomplete(const HreProblem& p) {
    const PCMatrix& m = p.matrix();
    const std::size_t n = m.size();
    const std::size_t k = p.unknown_count();
    const std::vector<std::size_t>& unknowns = p.unknowns();
    const std::vector<std::size_t> s = incomplete_gates(p);

    LinearSystem sys;
    sys.variant = Variant::ArithmeticIncomplete;
    sys.coefficients = SquareMatrix(k);
    sys.rhs.assign(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t u = unknowns[i];
        const double denom = static_cast<double>(n - s[i] - 1);
        sys.coefficients(i, i) = 1.0;
        for (std::size_t j = 0; j < k; ++j) {
            if (j == i) continue;
            if (m.known(u, unknowns[j]))
                sys.coefficients(i, j) = -m.value(u, unknowns[j]) / denom;
        }
        double acc = 0.0;
        for (std::size_t r : p.references())
            if (m.known(u, r)) acc += m.value(u, r) * p.reference_weight(r);
        sys.rhs[i] = acc / denom;
    }
    return sys;
}

LinearSystem assemble_arithmetic_complete(const HreProblem& p) {
    require_complete(p, "arithmetic complete assembly");
    // All s_i are zero, so the incomplete rule collapses to the complete one;
    // sharing the code path makes the two systems identical by construction.
    LinearSystem sys = assemble_arithmetic_incomplete(p);
    sys.variant = Variant::ArithmeticComplete;
    return sys;
}

LinearSystem assemble_geometric_incomplete(const HreProblem& p) {
    const PCMatrix& m = p.matrix();
    const std::size_t n = m.size();
    const std::size_t k = p.unknown_count();
    const std::vector<std::size_t>& unknowns = p.unknowns();
    const std::vector<std::size_t> s = incomplete_gates(p);

    LinearSystem sys;
    sys.variant = Variant::GeometricIncomplete;
    sys.coefficients = SquareMatrix(k);
    sys.rhs.assign(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t u = unknowns[i];
        sys.coefficients(i, i) = static_cast<double>(n - s[i] - 1);
        for (std::size_t j = 0; j < k; ++j) {
            if (j == i) continue;
            if (m.known(u, unknowns[j])) sys.coefficients(i, j) = -1.0;
        }
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == u || !m.known(u, j)) continue;
            const double c = m.value(u, j);
            if (!(c > 0.0))
                throw NonpositiveEntryError("comparison (" + std::to_string(u + 1) + "," +
                                            std::to_string(j + 1) +
                                            ") is not positive; log undefined");
            acc += std::log(c);
        }
        for (std::size_t r : p.references())
            if (m.known(u, r)) acc += std::log(p.reference_weight(r));
        sys.rhs[i] = acc;
    }
    return sys;
}

LinearSystem assemble_geometric_complete(const HreProblem& p) {
    require_complete(p, "geometric complete assembly");
    LinearSystem sys = assemble_geometric_incomplete(p);
    sys.variant = Variant::GeometricComplete;
    return sys;
}

SolveResult solve(const LinearSystem& system, double singular_tol) {
    return solve_linear(system.coefficients, system.rhs, singular_tol);
}

namespace {

// Guaranteed needs the index strictly below the threshold with a safety
// band: anything within kThresholdMargin (relative) counts as attained.
Verdict threshold_verdict(double ci, double threshold) {
    const double margin = kThresholdMargin * std::max(1.0, std::abs(threshold));
    return ci < threshold - margin ? Verdict::Guaranteed : Verdict::NotGuaranteed;
}

}  // namespace

ApplicabilityReport check_applicability(const HreProblem& p, Method method) {
    ApplicabilityReport rep;
    const std::size_t n = p.size();
    const std::size_t k = p.unknown_count();

    if (method == Method::Geometric) {
        rep.theorem = Theorem::GeometricAlways;
        rep.verdict = Verdict::Guaranteed;
        rep.note = "geometric systems are invertible for every valid problem";
        return rep;
    }

    const bool complete = p.matrix().complete();
    if (k == 1) {
        rep.theorem = complete ? Theorem::CompleteArithmetic : Theorem::IncompleteArithmetic;
        rep.verdict = Verdict::Guaranteed;
        rep.note = "single unknown: the system is 1x1 with coefficient 1";
        return rep;
    }

    const PCMatrix block = submatrix(p.matrix(), p.unknowns());
    const double kk = static_cast<double>(k);

    if (complete) {
        rep.theorem = Theorem::CompleteArithmetic;
        rep.ci_value = saaty_ci(block).index_value;
        rep.threshold = (static_cast<double>(n) - kk) / (kk - 1.0);
        rep.verdict = threshold_verdict(*rep.ci_value, *rep.threshold);
        return rep;
    }

    // Incomplete arithmetic. The index is computed straight from the Harker
    // matrix of the block: a reducible block makes the bound vacuous, not
    // the arithmetic undefined, so no irreducibility gate here.
    MissingCounts counts;
    {
        std::vector<std::size_t> local(k);
        for (std::size_t i = 0; i < k; ++i) local[i] = i;
        counts = missing_counts(block, local, CountScope::WithinBlock);
    }
    rep.s_max = counts.s_max;
    rep.s_min = counts.s_min;
    rep.ci_value = (spectral_radius(harker_matrix(block)).radius - kk) / (kk - 1.0);

    // The general bound always dominates the corollaries, so it is the one
    // reported; corollaries that also fire are mentioned in the note.
    rep.theorem = Theorem::IncompleteArithmetic;
    rep.threshold = (static_cast<double>(n) - kk -
                     static_cast<double>(counts.s_max) + static_cast<double>(counts.s_min)) /
                    (kk - 1.0);
    rep.verdict = threshold_verdict(*rep.ci_value, *rep.threshold);

    std::ostringstream note;
    if (counts.s_max == counts.s_min)
        note << "equal per-row missing counts: the (n-k)/(k-1) bound coincides";
    if (2 * k <= n + 1 && counts.s_max <= k - 2) {
        const double half_threshold = (static_cast<double>(n) - 2.0 * kk + 2.0) / (kk - 1.0);
        if (note.tellp() > 0) note << "; ";
        note << "k <= (n+1)/2 bound " << half_threshold << " also applies";
    }
    rep.note = note.str();
    return rep;
}

namespace {

LinearSystem assemble(const HreProblem& p, Method method, Variant* variant_out) {
    const bool complete = p.matrix().complete();
    LinearSystem sys;
    if (method == Method::Arithmetic)
        sys = complete ? assemble_arithmetic_complete(p) : assemble_arithmetic_incomplete(p);
    else
        sys = complete ? assemble_geometric_complete(p) : assemble_geometric_incomplete(p);
    *variant_out = sys.variant;
    return sys;
}

}  // namespace

RankResult rank(const HreProblem& p, Method method, const RankOptions& options) {
    const PCMatrix& m = p.matrix();
    const ValidationReport vr = validate(m);
    if (!vr.ok()) {
        std::ostringstream msg;
        msg << vr.violations.size() << " validation finding(s); first: "
            << vr.violations.front().message;
        throw InvalidProblemError(msg.str());
    }

    RankResult res;
    res.applicability = check_applicability(p, method);
    const LinearSystem sys = assemble(p, method, &res.variant);
    const SolveResult sol = solve(sys, options.singular_tol);
    res.pivot_floor = sol.pivot_floor;
    if (sol.singular()) {
        std::ostringstream msg;
        msg << to_string(res.variant) << " system has no unique solution"
            << " (scaled pivot " << sol.pivot_floor << " below tolerance "
            << options.singular_tol << ")";
        throw SingularSystemError(msg.str(), sol.pivot_floor);
    }

    const std::size_t n = m.size();
    const bool geometric = (method == Method::Geometric);
    res.priorities.weights.assign(n, 0.0);
    res.priorities.computed.assign(n, false);
    for (std::size_t i = 0; i < p.unknowns().size(); ++i) {
        const double v = (*sol.solution)[i];
        res.priorities.weights[p.unknowns()[i]] = geometric ? std::exp(v) : v;
        res.priorities.computed[p.unknowns()[i]] = true;
    }
    for (std::size_t r : p.references()) res.priorities.weights[r] = p.reference_weight(r);

    for (std::size_t i = 0; i < n; ++i) {
        if (!res.priorities.computed[i]) continue;
        if (!(res.priorities.weights[i] > 0.0)) {
            std::ostringstream msg;
            msg << "computed weight for \"" << m.labels()[i] << "\" is "
                << res.priorities.weights[i] << " (not positive)";
            if (options.strict) throw NonpositiveSolutionError(msg.str());
            res.warnings.push_back(msg.str());
        }
    }

    // The reference block never enters the solved system, so disagreement
    // between its comparisons and the given weights is only worth a warning.
    for (std::size_t a : p.references()) {
        for (std::size_t b : p.references()) {
            if (a >= b || !m.known(a, b)) continue;
            const double implied = p.reference_weight(a) / p.reference_weight(b);
            if (std::abs(m.value(a, b) - implied) > kConsistencyTol * implied) {
                std::ostringstream msg;
                msg << "reference comparison " << m.labels()[a] << " vs " << m.labels()[b]
                    << " = " << m.value(a, b) << " disagrees with the weight ratio "
                    << implied;
                res.warnings.push_back(msg.str());
            }
        }
    }
    return res;
}

const char* to_string(Method m) {
    switch (m) {
        case Method::Arithmetic: return "arithmetic";
        case Method::Geometric: return "geometric";
    }
    return "?";
}

const char* to_string(Variant v) {
    switch (v) {
        case Variant::ArithmeticComplete: return "arithmetic-complete";
        case Variant::ArithmeticIncomplete: return "arithmetic-incomplete";
        case Variant::GeometricComplete: return "geometric-complete";
        case Variant::GeometricIncomplete: return "geometric-incomplete";
    }
    return "?";
}

const char* to_string(Theorem t) {
    switch (t) {
        case Theorem::CompleteArithmetic: return "complete-arithmetic";
        case Theorem::IncompleteArithmetic: return "incomplete-arithmetic";
        case Theorem::CorollaryEqualMissing: return "equal-missing-counts";
        case Theorem::CorollaryHalfN: return "half-n";
        case Theorem::GeometricAlways: return "geometric-always";
    }
    return "?";
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Guaranteed: return "guaranteed";
        case Verdict::NotGuaranteed: return "not-guaranteed";
    }
    return "?";
}

}  // namespace hre
