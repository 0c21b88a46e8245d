#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gauging {

/// Dense bit-packed vector over F2. Bits beyond `n` in the last word stay zero.
struct BitVec {
    size_t n = 0;
    std::vector<uint64_t> w;

    BitVec() = default;
    explicit BitVec(size_t n_bits) : n(n_bits), w((n_bits + 63) / 64, 0) {}

    /// Parse a string of '0'/'1' characters.
    static BitVec from_string(const std::string& s);

    bool get(size_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    void set(size_t i, bool v) {
        uint64_t m = uint64_t(1) << (i & 63);
        if (v) {
            w[i >> 6] |= m;
        } else {
            w[i >> 6] &= ~m;
        }
    }
    void flip(size_t i) { w[i >> 6] ^= uint64_t(1) << (i & 63); }

    void clear();
    void xor_with(const BitVec& other);
    size_t popcount() const;
    bool any() const;
    /// Parity of the bitwise AND with `other` (inner product over F2).
    bool dot(const BitVec& other) const;
    std::vector<size_t> ones() const;
    std::string str() const;

    bool operator==(const BitVec&) const = default;
};

/// Result of row reduction: `transform * input == rref` over F2.
struct RowReduce;

/// Dense bit-packed matrix over F2, row-major.
struct BitMatrix {
    size_t rows = 0;
    size_t cols = 0;
    size_t wpr = 0;  // words per row
    std::vector<uint64_t> w;

    BitMatrix() = default;
    BitMatrix(size_t r, size_t c) : rows(r), cols(c), wpr((c + 63) / 64), w(r * wpr, 0) {}

    static BitMatrix identity(size_t n);
    /// Rows given as strings of '0'/'1'; all must have equal length.
    static BitMatrix from_rows(const std::vector<std::string>& rs);
    /// Parse the text format: "rows cols" header line, then one '0'/'1' line per row.
    static BitMatrix parse(const std::string& text);

    bool get(size_t r, size_t c) const { return (w[r * wpr + (c >> 6)] >> (c & 63)) & 1; }
    void set(size_t r, size_t c, bool v) {
        uint64_t m = uint64_t(1) << (c & 63);
        if (v) {
            w[r * wpr + (c >> 6)] |= m;
        } else {
            w[r * wpr + (c >> 6)] &= ~m;
        }
    }
    void flip(size_t r, size_t c) { w[r * wpr + (c >> 6)] ^= uint64_t(1) << (c & 63); }

    /// dst_row ^= src_row.
    void row_xor(size_t dst, size_t src);
    void swap_rows(size_t a, size_t b);
    BitVec row(size_t r) const;
    void set_row(size_t r, const BitVec& v);
    size_t row_weight(size_t r) const;
    bool row_any(size_t r) const;
    /// Parity of AND between row r and `v`.
    bool row_dot(size_t r, const BitVec& v) const;

    size_t rank() const;
    /// Full reduced row echelon form with deterministic pivoting:
    /// leftmost pivot column first, lowest-index row chosen as pivot.
    RowReduce row_reduce() const;
    /// Basis of {v : m * v = 0} as rows, in RREF-canonical form.
    BitMatrix nullspace() const;
    /// One solution x of m * x = rhs (free variables zero), or nullopt.
    std::optional<BitVec> solve(const BitVec& rhs) const;

    BitMatrix transposed() const;
    BitMatrix mul(const BitMatrix& other) const;
    /// m * v, length = rows.
    BitVec mul_vec(const BitVec& v) const;
    /// Stack rows of a on top of rows of b (column counts must match).
    static BitMatrix vstack(const BitMatrix& a, const BitMatrix& b);
    static BitMatrix hstack(const BitMatrix& a, const BitMatrix& b);
    BitMatrix select_rows(const std::vector<size_t>& idx) const;
    void append_row(const BitVec& v);

    /// Render in the text format accepted by parse().
    std::string str() const;

    bool operator==(const BitMatrix&) const = default;
};

struct RowReduce {
    BitMatrix rref;
    std::vector<size_t> pivot_cols;
    BitMatrix transform;
};

/// True iff `v` is in the row space of `m_rref` (must already be in RREF).
bool in_row_space(const RowReduce& rr, const BitVec& v);

}  // namespace gauging
