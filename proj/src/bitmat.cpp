#include "gauging/bitmat.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace gauging {

BitVec BitVec::from_string(const std::string& s) {
    BitVec v(s.size());
    for (size_t i = 0; i < s.size(); i++) {
        if (s[i] == '1') {
            v.set(i, true);
        } else if (s[i] != '0') {
            throw std::invalid_argument("BitVec::from_string: expected '0'/'1'");
        }
    }
    return v;
}

void BitVec::clear() {
    std::fill(w.begin(), w.end(), 0);
}

void BitVec::xor_with(const BitVec& other) {
    if (n != other.n) {
        throw std::invalid_argument("BitVec::xor_with: length mismatch");
    }
    for (size_t i = 0; i < w.size(); i++) {
        w[i] ^= other.w[i];
    }
}

size_t BitVec::popcount() const {
    size_t c = 0;
    for (uint64_t x : w) {
        c += std::popcount(x);
    }
    return c;
}

bool BitVec::any() const {
    for (uint64_t x : w) {
        if (x) {
            return true;
        }
    }
    return false;
}

bool BitVec::dot(const BitVec& other) const {
    if (n != other.n) {
        throw std::invalid_argument("BitVec::dot: length mismatch");
    }
    uint64_t acc = 0;
    for (size_t i = 0; i < w.size(); i++) {
        acc ^= w[i] & other.w[i];
    }
    return std::popcount(acc) & 1;
}

std::vector<size_t> BitVec::ones() const {
    std::vector<size_t> out;
    for (size_t i = 0; i < n; i++) {
        if (get(i)) {
            out.push_back(i);
        }
    }
    return out;
}

std::string BitVec::str() const {
    std::string s(n, '0');
    for (size_t i = 0; i < n; i++) {
        if (get(i)) {
            s[i] = '1';
        }
    }
    return s;
}

BitMatrix BitMatrix::identity(size_t n) {
    BitMatrix m(n, n);
    for (size_t i = 0; i < n; i++) {
        m.set(i, i, true);
    }
    return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::string>& rs) {
    if (rs.empty()) {
        return BitMatrix();
    }
    BitMatrix m(rs.size(), rs[0].size());
    for (size_t r = 0; r < rs.size(); r++) {
        if (rs[r].size() != m.cols) {
            throw std::invalid_argument("BitMatrix::from_rows: ragged rows");
        }
        for (size_t c = 0; c < m.cols; c++) {
            if (rs[r][c] == '1') {
                m.set(r, c, true);
            } else if (rs[r][c] != '0') {
                throw std::invalid_argument("BitMatrix::from_rows: expected '0'/'1'");
            }
        }
    }
    return m;
}

BitMatrix BitMatrix::parse(const std::string& text) {
    std::istringstream in(text);
    size_t r = 0;
    size_t c = 0;
    if (!(in >> r >> c)) {
        throw std::invalid_argument("BitMatrix::parse: missing 'rows cols' header");
    }
    BitMatrix m(r, c);
    std::string line;
    for (size_t i = 0; i < r; i++) {
        if (!(in >> line) || line.size() != c) {
            throw std::invalid_argument("BitMatrix::parse: bad row " + std::to_string(i));
        }
        for (size_t j = 0; j < c; j++) {
            if (line[j] == '1') {
                m.set(i, j, true);
            } else if (line[j] != '0') {
                throw std::invalid_argument("BitMatrix::parse: expected '0'/'1'");
            }
        }
    }
    return m;
}

void BitMatrix::row_xor(size_t dst, size_t src) {
    uint64_t* d = &w[dst * wpr];
    const uint64_t* s = &w[src * wpr];
    for (size_t i = 0; i < wpr; i++) {
        d[i] ^= s[i];
    }
}

void BitMatrix::swap_rows(size_t a, size_t b) {
    if (a == b) {
        return;
    }
    for (size_t i = 0; i < wpr; i++) {
        std::swap(w[a * wpr + i], w[b * wpr + i]);
    }
}

BitVec BitMatrix::row(size_t r) const {
    BitVec v(cols);
    for (size_t i = 0; i < wpr; i++) {
        v.w[i] = w[r * wpr + i];
    }
    return v;
}

void BitMatrix::set_row(size_t r, const BitVec& v) {
    if (v.n != cols) {
        throw std::invalid_argument("BitMatrix::set_row: length mismatch");
    }
    for (size_t i = 0; i < wpr; i++) {
        w[r * wpr + i] = v.w[i];
    }
}

size_t BitMatrix::row_weight(size_t r) const {
    size_t c = 0;
    for (size_t i = 0; i < wpr; i++) {
        c += std::popcount(w[r * wpr + i]);
    }
    return c;
}

bool BitMatrix::row_any(size_t r) const {
    for (size_t i = 0; i < wpr; i++) {
        if (w[r * wpr + i]) {
            return true;
        }
    }
    return false;
}

bool BitMatrix::row_dot(size_t r, const BitVec& v) const {
    if (v.n != cols) {
        throw std::invalid_argument("BitMatrix::row_dot: length mismatch");
    }
    uint64_t acc = 0;
    for (size_t i = 0; i < wpr; i++) {
        acc ^= w[r * wpr + i] & v.w[i];
    }
    return std::popcount(acc) & 1;
}

size_t BitMatrix::rank() const {
    BitMatrix m = *this;
    size_t r = 0;
    for (size_t c = 0; c < m.cols && r < m.rows; c++) {
        size_t piv = r;
        while (piv < m.rows && !m.get(piv, c)) {
            piv++;
        }
        if (piv == m.rows) {
            continue;
        }
        m.swap_rows(r, piv);
        for (size_t i = r + 1; i < m.rows; i++) {
            if (m.get(i, c)) {
                m.row_xor(i, r);
            }
        }
        r++;
    }
    return r;
}

RowReduce BitMatrix::row_reduce() const {
    RowReduce out;
    out.rref = *this;
    out.transform = BitMatrix::identity(rows);
    BitMatrix& m = out.rref;
    BitMatrix& t = out.transform;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; c++) {
        size_t piv = r;
        while (piv < rows && !m.get(piv, c)) {
            piv++;
        }
        if (piv == rows) {
            continue;
        }
        m.swap_rows(r, piv);
        t.swap_rows(r, piv);
        for (size_t i = 0; i < rows; i++) {
            if (i != r && m.get(i, c)) {
                m.row_xor(i, r);
                t.row_xor(i, r);
            }
        }
        out.pivot_cols.push_back(c);
        r++;
    }
    return out;
}

BitMatrix BitMatrix::nullspace() const {
    RowReduce rr = row_reduce();
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : rr.pivot_cols) {
        is_pivot[c] = true;
    }
    std::vector<size_t> free_cols;
    for (size_t c = 0; c < cols; c++) {
        if (!is_pivot[c]) {
            free_cols.push_back(c);
        }
    }
    BitMatrix basis(free_cols.size(), cols);
    for (size_t k = 0; k < free_cols.size(); k++) {
        basis.set(k, free_cols[k], true);
        for (size_t i = 0; i < rr.pivot_cols.size(); i++) {
            if (rr.rref.get(i, free_cols[k])) {
                basis.set(k, rr.pivot_cols[i], true);
            }
        }
    }
    // Canonicalize: the basis is independent, so RREF keeps all rows.
    return basis.row_reduce().rref;
}

std::optional<BitVec> BitMatrix::solve(const BitVec& rhs) const {
    if (rhs.n != rows) {
        throw std::invalid_argument("BitMatrix::solve: rhs length mismatch");
    }
    BitMatrix aug(rows, cols + 1);
    for (size_t r = 0; r < rows; r++) {
        for (size_t i = 0; i < wpr; i++) {
            aug.w[r * aug.wpr + i] = w[r * wpr + i];
        }
        // Clear any spill past `cols`, then set the augmented column.
        if (cols % 64 != 0) {
            aug.w[r * aug.wpr + (cols >> 6)] &= (uint64_t(1) << (cols & 63)) - 1;
        }
        aug.set(r, cols, rhs.get(r));
    }
    RowReduce rr = aug.row_reduce();
    BitVec x(cols);
    for (size_t i = 0; i < rr.pivot_cols.size(); i++) {
        if (rr.pivot_cols[i] == cols) {
            return std::nullopt;  // inconsistent system
        }
        if (rr.rref.get(i, cols)) {
            x.set(rr.pivot_cols[i], true);
        }
    }
    return x;
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix t(cols, rows);
    for (size_t r = 0; r < rows; r++) {
        for (size_t i = 0; i < wpr; i++) {
            uint64_t word = w[r * wpr + i];
            while (word) {
                size_t c = (i << 6) + std::countr_zero(word);
                t.set(c, r, true);
                word &= word - 1;
            }
        }
    }
    return t;
}

BitMatrix BitMatrix::mul(const BitMatrix& other) const {
    if (cols != other.rows) {
        throw std::invalid_argument("BitMatrix::mul: dimension mismatch");
    }
    BitMatrix out(rows, other.cols);
    for (size_t r = 0; r < rows; r++) {
        for (size_t i = 0; i < wpr; i++) {
            uint64_t word = w[r * wpr + i];
            while (word) {
                size_t k = (i << 6) + std::countr_zero(word);
                for (size_t j = 0; j < out.wpr; j++) {
                    out.w[r * out.wpr + j] ^= other.w[k * other.wpr + j];
                }
                word &= word - 1;
            }
        }
    }
    return out;
}

BitVec BitMatrix::mul_vec(const BitVec& v) const {
    if (v.n != cols) {
        throw std::invalid_argument("BitMatrix::mul_vec: length mismatch");
    }
    BitVec out(rows);
    for (size_t r = 0; r < rows; r++) {
        out.set(r, row_dot(r, v));
    }
    return out;
}

BitMatrix BitMatrix::vstack(const BitMatrix& a, const BitMatrix& b) {
    if (a.rows == 0) {
        return b;
    }
    if (b.rows == 0) {
        return a;
    }
    if (a.cols != b.cols) {
        throw std::invalid_argument("BitMatrix::vstack: column mismatch");
    }
    BitMatrix out(a.rows + b.rows, a.cols);
    std::copy(a.w.begin(), a.w.end(), out.w.begin());
    std::copy(b.w.begin(), b.w.end(), out.w.begin() + a.rows * a.wpr);
    return out;
}

BitMatrix BitMatrix::hstack(const BitMatrix& a, const BitMatrix& b) {
    if (a.rows != b.rows) {
        throw std::invalid_argument("BitMatrix::hstack: row mismatch");
    }
    BitMatrix out(a.rows, a.cols + b.cols);
    for (size_t r = 0; r < a.rows; r++) {
        for (size_t c = 0; c < a.cols; c++) {
            if (a.get(r, c)) {
                out.set(r, c, true);
            }
        }
        for (size_t c = 0; c < b.cols; c++) {
            if (b.get(r, c)) {
                out.set(r, a.cols + c, true);
            }
        }
    }
    return out;
}

BitMatrix BitMatrix::select_rows(const std::vector<size_t>& idx) const {
    BitMatrix out(idx.size(), cols);
    for (size_t i = 0; i < idx.size(); i++) {
        std::copy(w.begin() + idx[i] * wpr, w.begin() + (idx[i] + 1) * wpr, out.w.begin() + i * out.wpr);
    }
    return out;
}

void BitMatrix::append_row(const BitVec& v) {
    if (rows == 0 && cols == 0) {
        cols = v.n;
        wpr = (cols + 63) / 64;
    }
    if (v.n != cols) {
        throw std::invalid_argument("BitMatrix::append_row: length mismatch");
    }
    w.insert(w.end(), v.w.begin(), v.w.end());
    rows++;
}

std::string BitMatrix::str() const {
    std::ostringstream out;
    out << rows << " " << cols << "\n";
    for (size_t r = 0; r < rows; r++) {
        out << row(r).str() << "\n";
    }
    return out.str();
}

bool in_row_space(const RowReduce& rr, const BitVec& v) {
    BitVec x = v;
    for (size_t i = 0; i < rr.pivot_cols.size(); i++) {
        if (x.get(rr.pivot_cols[i])) {
            x.xor_with(rr.rref.row(i));
        }
    }
    return !x.any();
}

}  // namespace gauging
