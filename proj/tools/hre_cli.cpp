// hre: rank alternatives from (possibly incomplete) pairwise comparisons.
//
// Subcommands:
//   validate     check matrix invariants, list findings
//   consistency  Saaty or Harker consistency index (picked by completeness)
//   check        sufficient-condition report for a method and unknown set
//   rank         solve for the unknown weights
//   baseline     classical prioritization methods side by side
//   complete     fill missing entries of a consistent matrix
//
// Exit codes: 0 ok, 1 usage, 2 invalid data, 3 no unique/consistent solution,
// 4 comparison graph not strongly connected. Reports go to stdout, errors to
// stderr.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hre/baselines.hpp"
#include "hre/consistency.hpp"
#include "hre/errors.hpp"
#include "hre/numerics.hpp"
#include "hre/pcm.hpp"
#include "hre/problem_io.hpp"
#include "hre/ranking.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvalidData = 2;
constexpr int kExitNoSolution = 3;
constexpr int kExitNotIrreducible = 4;

struct CommonOpts {
    std::string path;
    std::string format = "text";
    bool upper = false;
    std::vector<std::string> refs;         // name=weight
    std::string ref_file;
    std::optional<long long> seed;         // recorded in reports; the pipeline
                                           // itself is deterministic
    bool json() const { return format == "json"; }
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("input", opts.path, "problem file (.json or .csv)")->required();
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    cmd->add_flag("--upper", opts.upper,
                  "derive the lower triangle from the upper by reciprocity");
    cmd->add_option("--ref", opts.refs, "reference weight as name=weight (repeatable)");
    cmd->add_option("--ref-file", opts.ref_file, "sidecar CSV of name,weight lines");
    cmd->add_option("--seed", opts.seed, "seed recorded in the report metadata");
}

hre::ProblemFile load(const CommonOpts& opts) {
    hre::ProblemFile f = hre::parse_problem_file(opts.path);
    if (opts.upper) hre::apply_upper_triangle(f);
    if (!opts.ref_file.empty()) {
        std::ifstream in(opts.ref_file);
        if (!in) throw hre::ParseError("cannot open \"" + opts.ref_file + "\"");
        for (const auto& [name, weight] : hre::parse_reference_csv(in))
            hre::add_reference(f, name, weight);
    }
    for (const std::string& entry : opts.refs) {
        const std::size_t eq = entry.find('=');
        if (eq == std::string::npos)
            throw hre::SchemaError("reference", "--ref expects name=weight, got \"" + entry + "\"");
        char* end = nullptr;
        const std::string num = entry.substr(eq + 1);
        const double w = std::strtod(num.c_str(), &end);
        if (end != num.c_str() + num.size() || num.empty())
            throw hre::SchemaError("reference", "\"" + num + "\" is not a number");
        hre::add_reference(f, entry.substr(0, eq), w);
    }
    return f;
}

// Data errors are reported up front so every later command can assume a
// well-formed matrix.
void require_valid(const hre::PCMatrix& m) {
    const hre::ValidationReport rep = hre::validate(m);
    if (!rep.ok()) {
        std::ostringstream msg;
        msg << rep.violations.size() << " validation finding(s); first: "
            << rep.violations.front().message;
        throw hre::InvalidProblemError(msg.str());
    }
}

std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

const char* violation_name(hre::ViolationKind k) {
    switch (k) {
        case hre::ViolationKind::NonpositiveEntry: return "nonpositive-entry";
        case hre::ViolationKind::BrokenReciprocity: return "broken-reciprocity";
        case hre::ViolationKind::AsymmetricMissing: return "asymmetric-missing";
        case hre::ViolationKind::NonUnitDiagonal: return "non-unit-diagonal";
    }
    return "?";
}

void emit(const ordered_json& doc) { std::cout << doc.dump(2) << '\n'; }

void add_seed(const CommonOpts& opts, ordered_json& doc) {
    if (opts.seed) doc["seed"] = *opts.seed;
}

ordered_json applicability_json(const hre::ApplicabilityReport& rep) {
    ordered_json doc;
    doc["theorem"] = hre::to_string(rep.theorem);
    doc["ci"] = rep.ci_value ? ordered_json(*rep.ci_value) : ordered_json(nullptr);
    doc["threshold"] = rep.threshold ? ordered_json(*rep.threshold) : ordered_json(nullptr);
    doc["s_max"] = rep.s_max ? ordered_json(*rep.s_max) : ordered_json(nullptr);
    doc["s_min"] = rep.s_min ? ordered_json(*rep.s_min) : ordered_json(nullptr);
    doc["verdict"] = hre::to_string(rep.verdict);
    doc["note"] = rep.note;
    return doc;
}

void print_applicability_text(const hre::ApplicabilityReport& rep) {
    std::cout << "theorem: " << hre::to_string(rep.theorem) << '\n';
    if (rep.ci_value) std::cout << "ci: " << fmt6(*rep.ci_value) << '\n';
    if (rep.threshold) std::cout << "threshold: " << fmt6(*rep.threshold) << '\n';
    if (rep.s_max) std::cout << "s_max: " << *rep.s_max << '\n';
    if (rep.s_min) std::cout << "s_min: " << *rep.s_min << '\n';
    std::cout << "verdict: " << hre::to_string(rep.verdict) << '\n';
    if (!rep.note.empty()) std::cout << "note: " << rep.note << '\n';
}

int cmd_validate(const CommonOpts& opts) {
    const hre::ProblemFile f = load(opts);
    const hre::PCMatrix m = hre::to_matrix(f);
    const hre::ValidationReport rep = hre::validate(m);
    if (opts.json()) {
        ordered_json doc;
        doc["command"] = "validate";
        doc["alternatives"] = f.alternatives;
        doc["ok"] = rep.ok();
        ordered_json findings = ordered_json::array();
        for (const hre::Violation& v : rep.violations) {
            ordered_json item;
            item["kind"] = violation_name(v.kind);
            item["row"] = v.row + 1;
            item["col"] = v.col + 1;
            item["message"] = v.message;
            findings.push_back(std::move(item));
        }
        doc["findings"] = std::move(findings);
        add_seed(opts, doc);
        emit(doc);
    } else {
        for (const hre::Violation& v : rep.violations)
            std::cout << violation_name(v.kind) << ": " << v.message << '\n';
        std::cout << (rep.ok() ? "ok" : "invalid") << '\n';
    }
    return rep.ok() ? kExitOk : kExitInvalidData;
}

int cmd_consistency(const CommonOpts& opts) {
    const hre::ProblemFile f = load(opts);
    const hre::PCMatrix m = hre::to_matrix(f);
    require_valid(m);
    const hre::ConsistencyReport rep = m.complete() ? hre::saaty_ci(m) : hre::harker_ci(m);
    const char* kind = rep.kind == hre::IndexKind::Saaty ? "saaty" : "harker";
    if (opts.json()) {
        ordered_json doc;
        doc["command"] = "consistency";
        doc["kind"] = kind;
        doc["index"] = rep.index_value;
        doc["spectral_radius"] = rep.radius_used;
        doc["dimension"] = rep.dimension;
        add_seed(opts, doc);
        emit(doc);
    } else {
        std::cout << "kind: " << kind << '\n'
                  << "index: " << fmt6(rep.index_value) << '\n'
                  << "spectral radius: " << fmt6(rep.radius_used) << '\n';
    }
    return kExitOk;
}

// Unknown names -> original indices, in the order given.
std::vector<std::size_t> resolve_unknowns(const hre::ProblemFile& f,
                                          const std::vector<std::string>& names) {
    std::vector<std::size_t> indices;
    std::set<std::string> seen;
    for (const std::string& name : names) {
        const auto pos = std::find(f.alternatives.begin(), f.alternatives.end(), name);
        if (pos == f.alternatives.end())
            throw hre::SchemaError("unknowns", "\"" + name + "\" is not an alternative");
        if (!seen.insert(name).second)
            throw hre::SchemaError("unknowns", "\"" + name + "\" repeats");
        indices.push_back(static_cast<std::size_t>(pos - f.alternatives.begin()));
    }
    return indices;
}

int cmd_check(const CommonOpts& opts, const std::string& method_name,
              const std::vector<std::string>& unknown_names) {
    const hre::ProblemFile f = load(opts);
    const hre::PCMatrix m = hre::to_matrix(f);
    require_valid(m);
    const hre::Method method =
        method_name == "geometric" ? hre::Method::Geometric : hre::Method::Arithmetic;

    // The applicability report never reads the reference weights, so an
    // explicit --unknowns list works on files that carry none: the other
    // alternatives get placeholder weight 1.
    std::vector<std::size_t> unknowns;
    std::map<std::size_t, double> ref_weights;
    if (!unknown_names.empty()) {
        unknowns = resolve_unknowns(f, unknown_names);
        const std::set<std::size_t> unknown_set(unknowns.begin(), unknowns.end());
        for (std::size_t i = 0; i < f.size(); ++i)
            if (!unknown_set.count(i)) ref_weights[i] = 1.0;
        for (const auto& [name, weight] : f.reference) {
            const auto pos = std::find(f.alternatives.begin(), f.alternatives.end(), name);
            const auto idx = static_cast<std::size_t>(pos - f.alternatives.begin());
            if (ref_weights.count(idx)) ref_weights[idx] = weight;
        }
    } else if (!f.reference.empty()) {
        const hre::HreProblem p = hre::to_problem(f);
        unknowns = p.unknowns();
        for (std::size_t r : p.references()) ref_weights[r] = p.reference_weight(r);
    } else {
        throw CLI::ValidationError("check", "needs --unknowns or reference weights");
    }
    const hre::HreProblem problem(m, unknowns, ref_weights);
    const hre::ApplicabilityReport rep = hre::check_applicability(problem, method);

    if (opts.json()) {
        ordered_json doc;
        doc["command"] = "check";
        doc["method"] = hre::to_string(method);
        ordered_json names = ordered_json::array();
        for (std::size_t u : problem.unknowns()) names.push_back(f.alternatives[u]);
        doc["unknowns"] = std::move(names);
        doc.update(applicability_json(rep));
        add_seed(opts, doc);
        emit(doc);
    } else {
        std::cout << "method: " << hre::to_string(method) << '\n';
        print_applicability_text(rep);
    }
    return kExitOk;
}

int cmd_rank(const CommonOpts& opts, const std::string& method_name, bool strict,
             double singular_tol) {
    const hre::ProblemFile f = load(opts);
    const hre::HreProblem problem = hre::to_problem(f);
    require_valid(problem.matrix());
    const hre::Method method =
        method_name == "geometric" ? hre::Method::Geometric : hre::Method::Arithmetic;

    // Computed ahead of the solve so a singular system can still be reported
    // together with the threshold evidence.
    const hre::ApplicabilityReport app = hre::check_applicability(problem, method);
    hre::RankOptions options;
    options.strict = strict;
    options.singular_tol = singular_tol;
    hre::RankResult res;
    try {
        res = hre::rank(problem, method, options);
    } catch (const hre::SingularSystemError& e) {
        std::ostringstream msg;
        msg << e.what();
        if (app.ci_value && app.threshold)
            msg << "; consistency index " << fmt6(*app.ci_value)
                << " vs threshold " << fmt6(*app.threshold)
                << " (" << hre::to_string(app.verdict) << ")";
        throw hre::SingularSystemError(msg.str(), e.pivot_floor);
    }

    if (opts.json()) {
        ordered_json doc;
        doc["command"] = "rank";
        doc["method"] = hre::to_string(method);
        doc["variant"] = hre::to_string(res.variant);
        doc["applicability"] = applicability_json(res.applicability);
        ordered_json weights = ordered_json::object();
        ordered_json computed = ordered_json::array();
        for (std::size_t i = 0; i < f.size(); ++i) {
            weights[f.alternatives[i]] = res.priorities.weights[i];
            if (res.priorities.computed[i]) computed.push_back(f.alternatives[i]);
        }
        doc["weights"] = std::move(weights);
        doc["computed"] = std::move(computed);
        doc["pivot_floor"] = res.pivot_floor;
        doc["tolerances"] = ordered_json{{"singular", singular_tol}};
        doc["warnings"] = res.warnings;
        add_seed(opts, doc);
        emit(doc);
    } else {
        std::cout << "method: " << hre::to_string(method) << '\n'
                  << "variant: " << hre::to_string(res.variant) << '\n';
        print_applicability_text(res.applicability);
        std::cout << "weights:\n";
        for (std::size_t i = 0; i < f.size(); ++i)
            std::cout << "  " << f.alternatives[i] << " " << fmt6(res.priorities.weights[i])
                      << (res.priorities.computed[i] ? " computed" : " reference") << '\n';
        for (const std::string& w : res.warnings) std::cout << "warning: " << w << '\n';
    }
    return kExitOk;
}

int cmd_baseline(const CommonOpts& opts) {
    const hre::ProblemFile f = load(opts);
    const hre::PCMatrix m = hre::to_matrix(f);
    require_valid(m);
    const bool complete = m.complete();

    std::vector<std::pair<const char*, std::optional<hre::PriorityVector>>> methods;
    methods.emplace_back("evm", complete ? std::optional(hre::evm(m)) : std::nullopt);
    methods.emplace_back("gmm", complete ? std::optional(hre::gmm(m)) : std::nullopt);
    methods.emplace_back("harker_evm", hre::harker_evm(m));
    methods.emplace_back("incomplete_gmm", hre::incomplete_gmm(m));

    if (opts.json()) {
        ordered_json doc;
        doc["command"] = "baseline";
        doc["complete"] = complete;
        ordered_json out = ordered_json::object();
        for (const auto& [name, pv] : methods) {
            if (!pv) {
                out[name] = nullptr;
                continue;
            }
            ordered_json weights = ordered_json::object();
            for (std::size_t i = 0; i < f.size(); ++i)
                weights[f.alternatives[i]] = pv->weights[i];
            out[name] = std::move(weights);
        }
        doc["methods"] = std::move(out);
        add_seed(opts, doc);
        emit(doc);
    } else {
        for (const auto& [name, pv] : methods) {
            std::cout << name << ":";
            if (!pv) {
                std::cout << " (needs a complete matrix)\n";
                continue;
            }
            std::cout << '\n';
            for (std::size_t i = 0; i < f.size(); ++i)
                std::cout << "  " << f.alternatives[i] << " " << fmt6(pv->weights[i]) << '\n';
        }
    }
    return kExitOk;
}

int cmd_complete(const CommonOpts& opts) {
    const hre::ProblemFile f = load(opts);
    const hre::PCMatrix m = hre::to_matrix(f);
    require_valid(m);
    const hre::PCMatrix full = hre::consistent_completion(m);

    hre::ProblemFile out = f;
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < f.size(); ++j)
            out.matrix[i * f.size() + j] = full.at(i, j);

    if (opts.json()) {
        // The output is itself a valid problem file, ready to feed back in.
        std::cout << hre::write_json(out);
    } else {
        for (std::size_t i = 0; i < f.size(); ++i) {
            for (std::size_t j = 0; j < f.size(); ++j)
                std::cout << (j ? " " : "") << fmt6(*out.at(i, j));
            std::cout << '\n';
        }
    }
    return kExitOk;
}

struct ErrorMapping {
    const char* label;
    int code;
};

ErrorMapping classify(const std::exception& e) {
    if (dynamic_cast<const hre::SingularSystemError*>(&e)) return {"SingularSystem", kExitNoSolution};
    if (dynamic_cast<const hre::NotConsistentError*>(&e)) return {"NotConsistent", kExitNoSolution};
    if (dynamic_cast<const hre::NonpositiveSolutionError*>(&e))
        return {"NonpositiveSolution", kExitNoSolution};
    if (dynamic_cast<const hre::NotIrreducibleError*>(&e))
        return {"NotIrreducible", kExitNotIrreducible};
    if (dynamic_cast<const hre::IsolatedRowError*>(&e))
        return {"IsolatedRow", kExitNotIrreducible};
    if (dynamic_cast<const hre::AllMissingRowError*>(&e))
        return {"AllMissingRow", kExitNotIrreducible};
    if (dynamic_cast<const hre::ParseError*>(&e)) return {"ParseError", kExitInvalidData};
    if (dynamic_cast<const hre::SchemaError*>(&e)) return {"SchemaError", kExitInvalidData};
    if (dynamic_cast<const hre::Error*>(&e)) return {"InvalidData", kExitInvalidData};
    return {"InternalError", kExitUsage};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rank alternatives from pairwise comparisons with reference weights"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string method = "arithmetic";
    std::vector<std::string> unknown_names;
    bool strict = false;
    double singular_tol = hre::kDefaultSingularTol;

    CLI::App* validate = app.add_subcommand("validate", "check matrix invariants");
    add_common(validate, opts);

    CLI::App* consistency = app.add_subcommand("consistency", "consistency index");
    add_common(consistency, opts);

    CLI::App* check = app.add_subcommand("check", "solution-guarantee report");
    add_common(check, opts);
    check->add_option("--variant", method, "ranking method")
        ->check(CLI::IsMember({"arithmetic", "geometric"}))
        ->capture_default_str();
    check->add_option("--unknowns", unknown_names, "alternatives to treat as unknown")
        ->delimiter(',');

    CLI::App* rank = app.add_subcommand("rank", "solve for the unknown weights");
    add_common(rank, opts);
    rank->add_option("--variant", method, "ranking method")
        ->check(CLI::IsMember({"arithmetic", "geometric"}))
        ->capture_default_str();
    rank->add_flag("--strict", strict, "treat nonpositive computed weights as an error");
    rank->add_option("--tol-singular", singular_tol, "scaled-pivot singularity tolerance")
        ->capture_default_str();

    CLI::App* baseline = app.add_subcommand("baseline", "classical prioritization methods");
    add_common(baseline, opts);

    CLI::App* complete = app.add_subcommand("complete", "complete a consistent matrix");
    add_common(complete, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (validate->parsed()) return cmd_validate(opts);
        if (consistency->parsed()) return cmd_consistency(opts);
        if (check->parsed()) return cmd_check(opts, method, unknown_names);
        if (rank->parsed()) return cmd_rank(opts, method, strict, singular_tol);
        if (baseline->parsed()) return cmd_baseline(opts);
        if (complete->parsed()) return cmd_complete(opts);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        const ErrorMapping mapping = classify(e);
        std::cerr << "error: " << mapping.label << ": " << e.what() << '\n';
        return mapping.code;
    }
    return kExitUsage;
}
