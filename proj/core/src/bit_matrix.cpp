#include "rankguard/bit_matrix.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <sstream>

#include "rankguard/errors.hpp"
#include "rankguard/rng.hpp"

namespace rankguard {

namespace {

// In-place reduction to RREF.  Returns the pivot columns in ascending order;
// afterwards rows [pivots.size(), rows) are all zero.
std::vector<std::size_t> reduce_in_place(BitMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && !m.get(p, c)) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(r, p);
        // The pivot row has no set bits left of c, so the XOR can start at
        // the word holding c.
        const std::size_t w0 = c >> 6;
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (i != r && m.get(i, c)) m.xor_rows_from(i, r, w0);
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// Reduces a packed row against an RREF basis; the result is zero iff the row
// lies in the basis' span.
void reduce_against(std::vector<std::uint64_t>& x, const RowBasis& basis) {
    for (std::size_t i = 0; i < basis.pivot_cols.size(); ++i) {
        const std::size_t c = basis.pivot_cols[i];
        if ((x[c >> 6] >> (c & 63)) & 1u) {
            auto row = basis.matrix.row(i);
            for (std::size_t w = 0; w < row.size(); ++w) x[w] ^= row[w];
        }
    }
}

bool all_zero(std::span<const std::uint64_t> words) {
    for (std::uint64_t w : words)
        if (w) return false;
    return true;
}

}  // namespace

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) noexcept {
    if (a == b) return;
    std::uint64_t* pa = data_.data() + a * words_;
    std::uint64_t* pb = data_.data() + b * words_;
    for (std::size_t w = 0; w < words_; ++w) std::swap(pa[w], pb[w]);
}

bool BitMatrix::row_is_zero(std::size_t r) const noexcept { return all_zero(row(r)); }

std::size_t BitMatrix::leading_column(std::size_t r) const noexcept {
    auto words = row(r);
    for (std::size_t w = 0; w < words.size(); ++w)
        if (words[w]) return (w << 6) + static_cast<std::size_t>(std::countr_zero(words[w]));
    return cols_;
}

void BitMatrix::truncate_rows(std::size_t new_rows) {
    assert(new_rows <= rows_);
    rows_ = new_rows;
    data_.resize(rows_ * words_);
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        auto words = row(r);
        for (std::size_t w = 0; w < words.size(); ++w) {
            std::uint64_t x = words[w];
            while (x) {
                const std::size_t c = (w << 6) + static_cast<std::size_t>(std::countr_zero(x));
                out.set(c, r, true);
                x &= x - 1;
            }
        }
    }
    return out;
}

std::size_t rank(const BitMatrix& m) {
    BitMatrix work = m;
    return reduce_in_place(work).size();
}

RowBasis row_reduce(const BitMatrix& m) {
    RowBasis basis;
    basis.matrix = m;
    basis.pivot_cols = reduce_in_place(basis.matrix);
    basis.matrix.truncate_rows(basis.pivot_cols.size());
    return basis;
}

BitMatrix multiply(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows())
        throw DimensionMismatch("multiply: " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " times " + std::to_string(b.rows()) +
                                "x" + std::to_string(b.cols()));
    BitMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        auto arow = a.row(r);
        for (std::size_t w = 0; w < arow.size(); ++w) {
            std::uint64_t x = arow[w];
            while (x) {
                const std::size_t k = (w << 6) + static_cast<std::size_t>(std::countr_zero(x));
                auto brow = b.row(k);
                auto orow = out.row(r);
                for (std::size_t j = 0; j < brow.size(); ++j) orow[j] ^= brow[j];
                x &= x - 1;
            }
        }
    }
    return out;
}

BitMatrix invert(const BitMatrix& m) {
    if (m.rows() != m.cols())
        throw DimensionMismatch("invert: matrix is " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()));
    const std::size_t n = m.rows();
    // Gauss-Jordan on the augmented [m | I].
    BitMatrix aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug.set(r, c, m.get(r, c));
        aug.set(r, n + r, true);
    }
    const std::vector<std::size_t> pivots = reduce_in_place(aug);
    if (pivots.size() < n || (n > 0 && pivots[n - 1] >= n))
        throw SingularMatrix("invert: rank " +
                             std::to_string(std::count_if(pivots.begin(), pivots.end(),
                                                          [n](std::size_t c) { return c < n; })) +
                             " < " + std::to_string(n));
    BitMatrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv.set(r, c, aug.get(r, n + c));
    return inv;
}

BitMatrix select_submatrix(const BitMatrix& m,
                           std::span<const std::size_t> row_idx,
                           std::span<const std::size_t> col_idx) {
    auto check = [](std::span<const std::size_t> idx, std::size_t limit, const char* what) {
        std::vector<std::uint8_t> seen(limit, 0);
        for (std::size_t i : idx) {
            if (i >= limit)
                throw IndexOutOfRange(std::string("select_submatrix: ") + what + " index " +
                                      std::to_string(i) + " out of range [0," +
                                      std::to_string(limit) + ")");
            if (seen[i])
                throw IndexOutOfRange(std::string("select_submatrix: duplicate ") + what +
                                      " index " + std::to_string(i));
            seen[i] = 1;
        }
    };
    check(row_idx, m.rows(), "row");
    check(col_idx, m.cols(), "column");

    BitMatrix out(row_idx.size(), col_idx.size());
    for (std::size_t r = 0; r < row_idx.size(); ++r)
        for (std::size_t c = 0; c < col_idx.size(); ++c)
            if (m.get(row_idx[r], col_idx[c])) out.set(r, c, true);
    return out;
}

BitMatrix extend_basis(const RowBasis& v, const RowBasis& q) {
    if (v.matrix.cols() != q.matrix.cols())
        throw DimensionMismatch("extend_basis: column counts differ");

    // Containment check: every row of v must reduce to zero against q.
    for (std::size_t r = 0; r < v.matrix.rows(); ++r) {
        std::vector<std::uint64_t> x(v.matrix.row(r).begin(), v.matrix.row(r).end());
        reduce_against(x, q);
        if (!all_zero(x))
            throw NotASubspace("extend_basis: row " + std::to_string(r) +
                               " of v lies outside span(q)");
    }

    BasisAccumulator acc(q.matrix.cols());
    for (std::size_t r = 0; r < v.matrix.rows(); ++r) {
        const bool fresh = acc.try_insert(v.matrix, r);
        assert(fresh);
        (void)fresh;
    }

    const std::size_t want = q.rank() - v.rank();
    BitMatrix out(want, q.matrix.cols());
    std::size_t taken = 0;
    for (std::size_t r = 0; r < q.matrix.rows() && taken < want; ++r) {
        if (acc.try_insert(q.matrix, r)) {
            auto src = q.matrix.row(r);
            auto dst = out.row(taken);
            std::copy(src.begin(), src.end(), dst.begin());
            ++taken;
        }
    }
    assert(taken == want);
    return out;
}

BitMatrix vstack(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.cols()) throw DimensionMismatch("vstack: column counts differ");
    BitMatrix out(a.rows() + b.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        auto src = a.row(r);
        auto dst = out.row(r);
        std::copy(src.begin(), src.end(), dst.begin());
    }
    for (std::size_t r = 0; r < b.rows(); ++r) {
        auto src = b.row(r);
        auto dst = out.row(a.rows() + r);
        std::copy(src.begin(), src.end(), dst.begin());
    }
    return out;
}

bool BasisAccumulator::try_insert(std::span<const std::uint64_t> packed_row) {
    assert(packed_row.size() == words_);
    std::vector<std::uint64_t> x(packed_row.begin(), packed_row.end());
    for (;;) {
        std::size_t lead = cols_;
        for (std::size_t w = 0; w < words_; ++w) {
            if (x[w]) {
                lead = (w << 6) + static_cast<std::size_t>(std::countr_zero(x[w]));
                break;
            }
        }
        if (lead == cols_) return false;
        if (slot_[lead].empty()) {
            slot_[lead] = std::move(x);
            ++rank_;
            return true;
        }
        const auto& s = slot_[lead];
        for (std::size_t w = lead >> 6; w < words_; ++w) x[w] ^= s[w];
    }
}

std::vector<std::uint8_t> vec_mat_multiply(std::span<const std::uint8_t> v, const BitMatrix& m) {
    if (v.size() != m.rows())
        throw DimensionMismatch("vec_mat_multiply: vector length " + std::to_string(v.size()) +
                                " vs " + std::to_string(m.rows()) + " rows");
    std::vector<std::uint64_t> acc(m.words_per_row(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] & 1u) {
            auto row = m.row(i);
            for (std::size_t w = 0; w < row.size(); ++w) acc[w] ^= row[w];
        }
    }
    std::vector<std::uint8_t> out(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c)
        out[c] = static_cast<std::uint8_t>((acc[c >> 6] >> (c & 63)) & 1u);
    return out;
}

BitMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    BitMatrix out(rows, cols);
    const std::size_t words = out.words_per_row();
    const std::uint64_t tail_mask =
        (cols % 64) ? ((std::uint64_t(1) << (cols % 64)) - 1) : ~std::uint64_t(0);
    for (std::size_t r = 0; r < rows; ++r) {
        auto row = out.row(r);
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t bits = mix64(mix64(seed ^ (r * 0x9e3779b97f4a7c15ULL)) ^ w);
            if (w + 1 == words) bits &= tail_mask;
            row[w] = bits;
        }
    }
    return out;
}

std::string to_text(const BitMatrix& m) {
    std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out += row_string(m, r);
        out += '\n';
    }
    return out;
}

BitMatrix bit_matrix_from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    long long rows = -1, cols = -1;
    if (!(in >> rows >> cols) || rows < 0 || cols < 0)
        throw Error("bit matrix text: bad header line");
    BitMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    for (long long r = 0; r < rows; ++r) {
        std::string line;
        if (!(in >> line) || line.size() != static_cast<std::size_t>(cols))
            throw Error("bit matrix text: row " + std::to_string(r) + " malformed");
        for (long long c = 0; c < cols; ++c) {
            const char ch = line[static_cast<std::size_t>(c)];
            if (ch != '0' && ch != '1')
                throw Error("bit matrix text: unexpected character '" + std::string(1, ch) + "'");
            if (ch == '1')
                m.set(static_cast<std::size_t>(r), static_cast<std::size_t>(c), true);
        }
    }
    std::string extra;
    if (in >> extra) throw Error("bit matrix text: trailing content");
    return m;
}

std::string row_string(const BitMatrix& m, std::size_t r) {
    std::string s(m.cols(), '0');
    auto words = m.row(r);
    for (std::size_t w = 0; w < words.size(); ++w) {
        std::uint64_t x = words[w];
        while (x) {
            s[(w << 6) + static_cast<std::size_t>(std::countr_zero(x))] = '1';
            x &= x - 1;
        }
    }
    return s;
}

}  // namespace rankguard
