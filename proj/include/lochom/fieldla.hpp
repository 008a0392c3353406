// Exact linear algebra over prime fields F_q: sparse column matrices, rank,
// and lowest-one column reduction (plain and two-level persistent).

#ifndef LOCHOM_FIELDLA_HPP
#define LOCHOM_FIELDLA_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace lochom {

class PrimeField
{
  public:
    /// Throws std::invalid_argument unless q is prime and below 2^31.
    explicit PrimeField(std::uint32_t q = 2);

    static bool is_prime(std::uint64_t q);

    std::uint32_t modulus() const { return q_; }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const
    {
        std::uint32_t s = a + b;
        return s >= q_ ? s - q_ : s;
    }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : q_ - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const
    {
        return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % q_);
    }
    std::uint32_t inv(std::uint32_t a) const;
    /// Canonical representative of an integer.
    std::uint32_t from_int(long long v) const;

  private:
    std::uint32_t q_;
};

struct Entry
{
    int row;
    std::uint32_t value;  // in [1, q-1]

    friend bool operator==(const Entry&, const Entry&) = default;
};

/// Sparse column: entries sorted by strictly increasing row, nonzero values.
using SparseColumn = std::vector<Entry>;

/// Column-major sparse matrix over F_q.
class FieldMatrix
{
  public:
    FieldMatrix(int rows, int cols, std::uint32_t q = 2);

    /// From a row-major dense integer matrix; entries are reduced mod q.
    static FieldMatrix from_dense(const std::vector<std::vector<long long>>& rows, int cols, std::uint32_t q = 2);

    int rows() const { return rows_; }
    int cols() const { return static_cast<int>(columns_.size()); }
    const PrimeField& field() const { return field_; }
    std::uint32_t modulus() const { return field_.modulus(); }

    const SparseColumn& column(int j) const { return columns_[static_cast<std::size_t>(j)]; }
    /// Sorts, merges duplicate rows, reduces mod q, and drops zeros.
    void set_column(int j, std::vector<std::pair<int, long long>> entries);
    /// Appends a column already in canonical form.
    void push_column(SparseColumn col);
    std::uint32_t at(int row, int col) const;

    FieldMatrix transpose() const;
    static FieldMatrix hconcat(const FieldMatrix& a, const FieldMatrix& b);

  private:
    int rows_;
    PrimeField field_;
    std::vector<SparseColumn> columns_;
};

/// a + factor * b over the field.
SparseColumn axpy(const PrimeField& f, const SparseColumn& a, std::uint32_t factor, const SparseColumn& b);

/// Incremental lowest-one reducer: stores columns with distinct pivots (the
/// largest row of each column) and reduces new columns against them.
class ColumnReducer
{
  public:
    ColumnReducer(PrimeField field, int rows);

    const PrimeField& field() const { return field_; }
    /// Reduces col in place; returns whether anything is left.
    bool reduce(SparseColumn& col) const;
    /// Reduces col and, if nonzero, stores it. Returns whether the rank grew.
    bool add(SparseColumn col);
    std::size_t rank() const { return stored_.size(); }
    /// Column stored with pivot `row`, or nullptr.
    const SparseColumn* pivot_column(int row) const;

  private:
    PrimeField field_;
    std::vector<int> pivot_of_row_;
    std::vector<SparseColumn> stored_;
};

/// Rank over F_q via Gaussian elimination; q = 2 uses bit-packed columns.
/// The input is not modified.
std::size_t rank(const FieldMatrix& m);

/// rank([A | B]); throws std::invalid_argument unless row counts agree.
std::size_t rank_of_union(const FieldMatrix& a, const FieldMatrix& b);

/// Basis of the null space of the column map (vectors over column indices).
std::vector<SparseColumn> kernel_basis(const FieldMatrix& m);

/// Two-level persistence reduction of a boundary matrix. `level[j]` tags
/// column j with 1 (first complex) or 2 (added in the second); `degree[j]`
/// is the simplex dimension. Returns, per degree up to the largest degree
/// present, the number of classes born at level 1 that no column kills.
/// Throws std::invalid_argument if a level-1 column follows a level-2
/// column, or if D is not square with each column's rows preceding it.
std::vector<int> persistent_reduce(const FieldMatrix& d, std::span<const int> level, std::span<const int> degree);

}  // namespace lochom

#endif
