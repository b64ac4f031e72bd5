#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rankguard {

/// Dense matrix over GF(2).  Rows are packed into 64-bit words, least
/// significant bit first, so a row XOR (the elimination kernel) runs one
/// machine word at a time.  Padding bits past the last column are kept at
/// zero by every operation.  The 0xn and nx0 shapes are valid values.
///
/// All indices on this type are 0-based.  Instances are plain values; once
/// constructed they can be shared freely across threads as long as nobody
/// mutates them.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), words_(words_for(cols)), data_(rows * words_for(cols), 0) {}

    static BitMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t words_per_row() const noexcept { return words_; }

    bool get(std::size_t r, std::size_t c) const noexcept {
        return (data_[r * words_ + (c >> 6)] >> (c & 63)) & 1u;
    }

    void set(std::size_t r, std::size_t c, bool v) noexcept {
        std::uint64_t& w = data_[r * words_ + (c >> 6)];
        const std::uint64_t m = std::uint64_t(1) << (c & 63);
        if (v)
            w |= m;
        else
            w &= ~m;
    }

    std::span<const std::uint64_t> row(std::size_t r) const noexcept {
        return {data_.data() + r * words_, words_};
    }
    std::span<std::uint64_t> row(std::size_t r) noexcept {
        return {data_.data() + r * words_, words_};
    }

    /// dst ^= src, starting from word `word_from` (earlier words are known
    /// equal to zero in src when this is used inside elimination).
    void xor_rows_from(std::size_t dst, std::size_t src, std::size_t word_from) noexcept {
        std::uint64_t* d = data_.data() + dst * words_;
        const std::uint64_t* s = data_.data() + src * words_;
        for (std::size_t w = word_from; w < words_; ++w) d[w] ^= s[w];
    }

    void xor_rows(std::size_t dst, std::size_t src) noexcept { xor_rows_from(dst, src, 0); }

    void swap_rows(std::size_t a, std::size_t b) noexcept;

    bool row_is_zero(std::size_t r) const noexcept;

    /// Column index of the first set bit in row r, or cols() when the row is
    /// zero.
    std::size_t leading_column(std::size_t r) const noexcept;

    /// Drops all rows at index >= new_rows.
    void truncate_rows(std::size_t new_rows);

    BitMatrix transposed() const;

    friend bool operator==(const BitMatrix& a, const BitMatrix& b) noexcept {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    static std::size_t words_for(std::size_t cols) noexcept { return (cols + 63) / 64; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> data_;
};

/// A row space in reduced row echelon form.  `matrix` has no zero rows and
/// one row per pivot; `pivot_cols` lists the pivot columns in ascending
/// order, so matrix.rows() == pivot_cols.size() == rank of the space.
struct RowBasis {
    BitMatrix matrix;
    std::vector<std::size_t> pivot_cols;

    std::size_t rank() const noexcept { return pivot_cols.size(); }
};

/// Rank of the row space.  Non-destructive (works on a copy).
std::size_t rank(const BitMatrix& m);

/// Reduced row echelon form of the row space of m.  Re-reducing the result
/// is a fixed point.
RowBasis row_reduce(const BitMatrix& m);

/// Matrix product over GF(2).  Throws DimensionMismatch unless
/// a.cols() == b.rows().
BitMatrix multiply(const BitMatrix& a, const BitMatrix& b);

/// Inverse of a square matrix.  Throws SingularMatrix when rank < rows and
/// DimensionMismatch when the input is not square.
BitMatrix invert(const BitMatrix& m);

/// Copies the given rows and columns, in the order given.  Indices must be
/// in range (IndexOutOfRange) and duplicate-free.
BitMatrix select_submatrix(const BitMatrix& m,
                           std::span<const std::size_t> row_idx,
                           std::span<const std::size_t> col_idx);

/// Given nested row spaces V ⊆ Q, returns rank(Q) - rank(V) rows of Q whose
/// cosets extend a basis of V to a basis of Q.  Representatives are taken
/// greedily from q.matrix in row order, so the result is deterministic.
/// Throws NotASubspace when span(v) is not contained in span(q).
BitMatrix extend_basis(const RowBasis& v, const RowBasis& q);

/// Vertical concatenation; column counts must agree.
BitMatrix vstack(const BitMatrix& a, const BitMatrix& b);

/// Incremental independent-set tracker.  try_insert reduces the candidate
/// against the rows collected so far and keeps it iff it is linearly
/// independent of them.
class BasisAccumulator {
public:
    explicit BasisAccumulator(std::size_t cols)
        : cols_(cols), words_(BitMatrix::words_for(cols)), slot_(cols) {}

    bool try_insert(std::span<const std::uint64_t> packed_row);
    bool try_insert(const BitMatrix& m, std::size_t r) { return try_insert(m.row(r)); }

    std::size_t rank() const noexcept { return rank_; }
    std::size_t cols() const noexcept { return cols_; }

private:
    std::size_t cols_;
    std::size_t words_;
    std::vector<std::vector<std::uint64_t>> slot_;  // keyed by leading column
    std::size_t rank_ = 0;
};

/// Row-vector (1xN) times matrix; `v` holds one 0/1 byte per coordinate.
/// Throws DimensionMismatch unless v.size() == m.rows().
std::vector<std::uint8_t> vec_mat_multiply(std::span<const std::uint8_t> v, const BitMatrix& m);

/// Deterministic pseudo-random matrix (every bit a fair coin keyed by seed).
BitMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed);

/// Text format: first line "rows cols", then one '0'/'1' line per row.
std::string to_text(const BitMatrix& m);
BitMatrix bit_matrix_from_text(std::string_view text);

/// One row as a '0'/'1' string (used by the JSON matrix encoding).
std::string row_string(const BitMatrix& m, std::size_t r);

}  // namespace rankguard
