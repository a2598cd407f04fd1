#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace frobsub {

using BigInt = mpz_class;

/// Non-negative vector with arbitrary-precision integer coordinates.
class ExactVector {
public:
    ExactVector() = default;
    explicit ExactVector(std::size_t n);
    explicit ExactVector(std::vector<BigInt> coords);
    ExactVector(std::initializer_list<long> coords);

    static ExactVector unit(std::size_t n, std::size_t i);

    std::size_t size() const { return coords_.size(); }
    const BigInt& operator[](std::size_t i) const { return coords_[i]; }
    const std::vector<BigInt>& coords() const { return coords_; }

    BigInt l1_norm() const;
    bool is_zero() const;

    /// Coordinates divided by the l1 norm, in double precision. Safe for
    /// coordinates far outside the double range.
    std::vector<double> normalized() const;

    friend bool operator==(const ExactVector&, const ExactVector&) = default;

private:
    std::vector<BigInt> coords_;
};

/// Square non-negative integer matrix. Entry (i, j) counts the flow from
/// coordinate j into coordinate i, so the matrix acts on column vectors.
class ExactMatrix {
public:
    ExactMatrix() = default;
    explicit ExactMatrix(std::vector<std::vector<BigInt>> rows);
    ExactMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static ExactMatrix identity(std::size_t n);
    static ExactMatrix zero(std::size_t n);

    std::size_t size() const { return n_; }
    const BigInt& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
    bool positive(std::size_t i, std::size_t j) const { return sgn(entries_[i * n_ + j]) > 0; }

    ExactMatrix operator*(const ExactMatrix& rhs) const;
    ExactVector operator*(const ExactVector& v) const;
    std::vector<double> apply(std::span<const double> v) const;
    std::vector<long double> apply(std::span<const long double> v) const;

    ExactMatrix power(std::uint64_t t) const;

    /// Rows and columns restricted to `indices`, in the given order.
    ExactMatrix submatrix(std::span<const std::size_t> indices) const;

    /// result(p, q) = (*this)(perm[p], perm[q]).
    ExactMatrix permuted(std::span<const std::size_t> perm) const;

    std::vector<std::vector<double>> to_double() const;
    std::vector<std::vector<BigInt>> rows() const;

    bool has_zero_column() const;
    BigInt max_entry() const;

    friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<BigInt> entries_;
};

enum class BlockClass {
    Primitive,     // irreducible, aperiodic, spectral radius > 1
    PowerBounded,  // a single cycle of entry-1 edges (spectral radius 1)
    ZeroOne,       // 1x1 block with entry 0 or 1; counted as power bounded
    Imprimitive,   // irreducible, period > 1, spectral radius > 1: raise a power first
};

const char* to_string(BlockClass c);

struct Block {
    std::vector<std::size_t> indices;  // original matrix indices, ascending
    BlockClass cls = BlockClass::ZeroOne;
    std::size_t period = 0;            // 0 for the acyclic 1x1 zero block

    std::size_t size() const { return indices.size(); }
};

/// Strongly connected components of the flow digraph, ordered so that the
/// permuted matrix is lower block triangular, together with the strict
/// partial order B_i > B_j ("mass started in B_i reaches B_j").
class BlockDecomposition {
public:
    BlockDecomposition() = default;
    BlockDecomposition(std::vector<Block> blocks, std::vector<std::vector<char>> reach);

    std::size_t block_count() const { return blocks_.size(); }
    const std::vector<Block>& blocks() const { return blocks_; }
    const Block& block(std::size_t i) const { return blocks_[i]; }
    std::size_t dimension() const { return block_of_.size(); }

    /// position -> original index.
    const std::vector<std::size_t>& permutation() const { return permutation_; }
    std::size_t block_of(std::size_t index) const { return block_of_[index]; }

    /// B_i > B_j. Irreflexive and transitive.
    bool reaches(std::size_t i, std::size_t j) const { return reach_[i][j] != 0; }

    /// C(B_i) as ascending block indices.
    std::vector<std::size_t> dependency(std::size_t i) const;
    /// Matrix indices covered by C(B_i), ascending.
    std::vector<std::size_t> dependency_indices(std::size_t i) const;
    /// Every pair (i, j) with B_i > B_j, lexicographic.
    std::vector<std::pair<std::size_t, std::size_t>> order_pairs() const;

    /// True when every block reached from a member of `cone_blocks` is a member.
    bool is_invariant(std::span<const std::size_t> cone_blocks) const;

    /// Spectral radius of the diagonal block is 0, 1, or > 1.
    bool is_zero_block(std::size_t i) const;
    bool is_growing(std::size_t i) const;

    bool is_pb_frobenius() const;
    bool is_primitive_frobenius() const;

private:
    std::vector<Block> blocks_;
    std::vector<std::vector<char>> reach_;
    std::vector<std::size_t> permutation_;
    std::vector<std::size_t> block_of_;
};

BlockDecomposition scc_blocks(const ExactMatrix& m);

bool is_primitive(const ExactMatrix& m);
bool is_power_bounded(const ExactMatrix& m);
bool is_expanding(const ExactMatrix& m);

struct FrobeniusPower {
    std::uint64_t exponent = 1;
    ExactMatrix power;                  // m^exponent
    BlockDecomposition decomposition;   // of m^exponent
};

/// Least power whose diagonal blocks are all primitive or power bounded.
FrobeniusPower pb_frobenius_power(const ExactMatrix& m);

/// Least power whose diagonal blocks are all primitive or 1x1 with entry 0/1.
FrobeniusPower primitive_frobenius_power(const ExactMatrix& m);

/// Exact m^t * v.
ExactVector mat_pow_apply(const ExactMatrix& m, const ExactVector& v, std::uint64_t t);

}  // namespace frobsub
