#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace hre {

/// Dense square matrix of doubles, row-major. Small and fully materialized;
/// everything in this library works at desk scale (n up to a few hundred).
class SquareMatrix {
public:
    SquareMatrix() = default;

    explicit SquareMatrix(std::size_t k, double fill = 0.0) : k_(k), a_(k * k, fill) {}

    SquareMatrix(std::initializer_list<std::initializer_list<double>> rows);

    static SquareMatrix identity(std::size_t k);
    static SquareMatrix ones(std::size_t k);

    std::size_t size() const { return k_; }

    double operator()(std::size_t i, std::size_t j) const { return a_[i * k_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * k_ + j]; }

    std::span<const double> row(std::size_t i) const { return {a_.data() + i * k_, k_}; }

private:
    std::size_t k_ = 0;
    std::vector<double> a_;
};

struct SpectralResult {
    double radius = 0.0;
    std::vector<double> vector;  ///< dominant direction, 1-norm one; positive for irreducible input
    std::size_t iterations = 0;
    bool converged = false;
};

/// Spectral radius of a nonnegative matrix by power iteration on m + I.
///
/// The +I shift turns every irreducible nonnegative input into a primitive
/// one, so the iteration cannot stall on eigenvalue-magnitude ties. Stops
/// once the Rayleigh quotient changes by less than tol (relative), then
/// polishes a few more steps to the rounding floor. Throws NonNegativityError
/// on a negative cell.
SpectralResult spectral_radius(const SquareMatrix& m, double tol = 1e-12,
                               std::size_t max_iter = 100000);

/// alpha * (rho(c) - 1) for a complete PC matrix c and alpha > 0. Agrees
/// with the spectral radius of alpha * (c - I) computed directly.
double scaled_shift_radius(const SquareMatrix& c, double alpha);

inline constexpr double kDefaultSingularTol = 1e-10;

struct SolveResult {
    std::optional<std::vector<double>> solution;
    double pivot_floor = 0.0;  ///< smallest row-scaled pivot magnitude encountered

    bool singular() const { return !solution.has_value(); }
};

/// Gaussian elimination with row-scaled partial pivoting.
///
/// The system is declared singular as soon as a pivot falls below
/// singular_tol times the largest original coefficient of its row; otherwise
/// the returned solution satisfies the usual backward-stable residual bound.
/// Throws DimensionError if the rhs length does not match.
SolveResult solve_linear(const SquareMatrix& a, std::span<const double> b,
                         double singular_tol = kDefaultSingularTol);

/// True iff every row is strictly diagonally dominant, i.e. every Gershgorin
/// disc excludes zero, which certifies invertibility.
bool gershgorin_excludes_zero(const SquareMatrix& m);

}  // namespace hre
