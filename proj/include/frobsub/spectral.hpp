#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "frobsub/errors.hpp"
#include "frobsub/matrix.hpp"

namespace frobsub {

/// Real vector, l1 norm convention.
using FloatVector = std::vector<double>;

double l1_norm(std::span<const double> v);
double l1_distance(std::span<const double> a, std::span<const double> b);
FloatVector l1_normalized(std::span<const double> v);

/// ||M v - lambda v||_1.
double eigen_residual(const ExactMatrix& m, std::span<const double> v, double lambda);

/// Relative tolerance used to decide that two block eigenvalues coincide.
inline constexpr double kEigenvalueTol = 1e-9;
bool same_eigenvalue(double a, double b);

/// h(t) = lambda^t * t^degree.
struct GrowthType {
    double lambda = 0.0;
    std::size_t degree = 0;

    friend bool operator==(const GrowthType&, const GrowthType&) = default;
};

/// Negative, zero or positive as a grows slower than, like, or faster than b.
int compare(const GrowthType& a, const GrowthType& b);

struct BlockEigen {
    double lambda = 0.0;
    FloatVector local;     // on the block's own indices, l1 = 1, positive
    FloatVector extended;  // same values placed in a full-length zero vector
};

/// Perron-Frobenius eigenpair of a Primitive or ZeroOne diagonal block.
/// Throws InvalidArgument for any other block class.
BlockEigen pf_eigen_block(const ExactMatrix& m, const BlockDecomposition& dec, std::size_t i);

/// Spectral radius of every diagonal block: the PF eigenvalue for primitive
/// and zero-one blocks, 1 for cycles. Throws NotPBFrobenius on imprimitive blocks.
std::vector<double> block_eigenvalues(const ExactMatrix& m, const BlockDecomposition& dec);

GrowthType growth_type(const BlockDecomposition& dec, std::span<const double> eigenvalues, std::size_t i);

/// Growth type of a union of blocks: the largest growth type of a member.
GrowthType cone_growth_type(const BlockDecomposition& dec, std::span<const double> eigenvalues,
                            std::span<const std::size_t> cone_blocks);

/// Does v lie in the dominant interior of the invariant block cone spanned
/// by `cone_blocks`? Throws InvalidArgument if the cone is not invariant or
/// v has support outside it.
bool dominant_interior_contains(const BlockDecomposition& dec, std::span<const double> eigenvalues,
                                std::span<const std::size_t> cone_blocks, std::span<const double> v);

struct ConvergenceReport {
    FloatVector limit;       // l1-normalized
    double eigenvalue = 0.0;
    std::size_t iterations = 0;
    double residual = 0.0;   // ||M limit - eigenvalue limit||_1
    GrowthType growth;       // of the trajectory
};

class MaxIterExceeded : public Error {
public:
    MaxIterExceeded(const std::string& what, ConvergenceReport best) : Error(what), best_(std::move(best)) {}
    const ConvergenceReport& best() const { return best_; }

private:
    ConvergenceReport best_;
};

inline constexpr double kDefaultTol = 1e-10;
inline constexpr std::size_t kDefaultMaxIter = 20000;

/// Limit of M^t v0 / ||M^t v0||_1 for M in PB-Frobenius form and expanding.
///
/// Iterates are exact integers; a direction snapshot is taken in extended
/// precision every step. When the trajectory has polynomial growth degree
/// d > 0 the snapshot converges only like 1/t, so it is passed through
/// (M - lambda I)^d first, which removes the polynomial part and leaves an
/// error that decays geometrically.
ConvergenceReport normalized_limit(const ExactMatrix& m, const ExactVector& v0, double tol = kDefaultTol,
                                   std::size_t max_iter = kDefaultMaxIter);

/// Which regime governs limits started in block i:
/// own eigenvalue wins, ties with the dependency, or loses to it.
enum class LimitCase : int { BlockDominates = 1, Tied = 2, DependencyDominates = 3 };

LimitCase classify_limit_case(const BlockDecomposition& dec, std::span<const double> eigenvalues, std::size_t i);

/// Blocks whose eigenvalue strictly exceeds every eigenvalue in their dependency.
std::vector<std::size_t> principal_blocks(const ExactMatrix& m, const BlockDecomposition& dec,
                                          std::span<const double> eigenvalues);

struct PrincipalEigenvector {
    std::size_t block = 0;
    double lambda = 0.0;
    FloatVector vector;          // pf_part + dependency_part, then l1-normalized
    FloatVector pf_part;         // extended PF eigenvector of the block, l1 = 1
    FloatVector dependency_part; // solution on C(B_i), same scale as pf_part
    double residual = 0.0;       // ||M vector - lambda vector||_1
};

PrincipalEigenvector principal_eigenvector(const ExactMatrix& m, const BlockDecomposition& dec,
                                           std::span<const double> eigenvalues, std::size_t i,
                                           double tol = 1e-9);

/// Is v (within tol, l1) a non-negative combination of the principal
/// eigenvectors with eigenvalue `lambda`?
bool eigencone_membership(const ExactMatrix& m, const BlockDecomposition& dec, std::span<const double> eigenvalues,
                          std::span<const double> v, double lambda, double tol = 1e-8);

/// Checks that an eigenvector v of m0^k is also an eigenvector of m0.
bool power_eigenvector_lift(const ExactMatrix& m0, std::uint64_t k, std::span<const double> v, double tol);

/// Lawson-Hanson non-negative least squares: argmin ||A x - b||_2, x >= 0,
/// with A given by its columns.
FloatVector nnls(const std::vector<FloatVector>& columns, std::span<const double> b);

/// Dense solve with partial pivoting; throws SingularSystem below `pivot_tol`.
FloatVector solve_linear(std::vector<std::vector<double>> a, FloatVector b, double pivot_tol = 1e-12);

}  // namespace frobsub
