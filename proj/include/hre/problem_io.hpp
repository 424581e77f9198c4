#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hre/pcm.hpp"

namespace hre {

/// Parsed problem file: alternative names, the comparison grid, and the
/// reference weights (possibly empty for baseline-only runs).
struct ProblemFile {
    std::vector<std::string> alternatives;
    std::vector<Cell> matrix;  // row-major n*n
    std::vector<std::pair<std::string, double>> reference;  // in alternatives order

    std::size_t size() const { return alternatives.size(); }
    const Cell& at(std::size_t i, std::size_t j) const { return matrix[i * size() + j]; }
};

enum class FileFormat { Json, Csv };

/// JSON schema: {"alternatives": [...], "matrix": [[...]], "reference": {...}}
/// with null marking a missing comparison; an optional "comment" string is
/// ignored. Throws ParseError / SchemaError.
ProblemFile parse_problem_json(std::istream& in);

/// CSV: optional '#' comment lines, a header row of names, then n rows of
/// cells. Cells are decimals, exact fractions "a/b", or "?" for missing.
/// Reference weights arrive separately (sidecar file or flags).
ProblemFile parse_problem_csv(std::istream& in);

ProblemFile parse_problem(std::istream& in, FileFormat format);

/// Reads the file, picking the format from the extension (.csv vs .json).
ProblemFile parse_problem_file(const std::string& path);

/// Sidecar reference weights: '#' comments, then "name,weight" lines.
std::vector<std::pair<std::string, double>> parse_reference_csv(std::istream& in);

/// Keep the upper triangle and the diagonal; overwrite the lower triangle
/// with exact reciprocals (missing stays missing on both sides).
void apply_upper_triangle(ProblemFile& f);

/// Add one reference weight; SchemaError on unknown names, duplicates, or
/// nonpositive weights.
void add_reference(ProblemFile& f, const std::string& name, double weight);

std::string write_json(const ProblemFile& f);
std::string write_csv(const ProblemFile& f);

/// The comparison matrix alone (labels carried over).
PCMatrix to_matrix(const ProblemFile& f);

/// Full problem: unknowns are the alternatives absent from the reference
/// map, in file order. SchemaError when the reference map is empty or
/// leaves no unknown.
HreProblem to_problem(const ProblemFile& f);

}  // namespace hre
