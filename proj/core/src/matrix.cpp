#include "thom/matrix.hpp"

#include <sstream>

namespace thom::alg {

namespace {
const Integer kZero = 0;
}

IntMatrix::IntMatrix(index_t rows, index_t cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    dense_ = use_dense(rows, cols);
    if (dense_)
        d_.assign(static_cast<size_t>(rows * cols), Integer(0));
    else
        s_.assign(static_cast<size_t>(rows), {});
}

IntMatrix IntMatrix::identity(index_t n) {
    IntMatrix m(n, n);
    for (index_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>>& rows) {
    index_t r = static_cast<index_t>(rows.size());
    index_t c = r == 0 ? 0 : static_cast<index_t>(rows[0].size());
    IntMatrix m(r, c);
    for (index_t i = 0; i < r; ++i) {
        if (static_cast<index_t>(rows[i].size()) != c)
            throw std::invalid_argument("ragged row list");
        for (index_t j = 0; j < c; ++j)
            if (rows[i][j] != 0) m.set(i, j, rows[i][j]);
    }
    return m;
}

const Integer& IntMatrix::at(index_t r, index_t c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw std::out_of_range("IntMatrix::at");
    if (dense_) return d_[static_cast<size_t>(r * cols_ + c)];
    auto it = s_[static_cast<size_t>(r)].find(c);
    return it == s_[static_cast<size_t>(r)].end() ? kZero : it->second;
}

void IntMatrix::set(index_t r, index_t c, Integer v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw std::out_of_range("IntMatrix::set");
    if (dense_) {
        d_[static_cast<size_t>(r * cols_ + c)] = std::move(v);
    } else {
        auto& row = s_[static_cast<size_t>(r)];
        if (v == 0)
            row.erase(c);
        else
            row[c] = std::move(v);
    }
}

void IntMatrix::add_at(index_t r, index_t c, const Integer& v) {
    if (v == 0) return;
    if (dense_) {
        d_[static_cast<size_t>(r * cols_ + c)] += v;
    } else {
        auto& row = s_[static_cast<size_t>(r)];
        auto it = row.find(c);
        if (it == row.end()) {
            row.emplace(c, v);
        } else {
            it->second += v;
            if (it->second == 0) row.erase(it);
        }
    }
}

bool IntMatrix::is_zero() const {
    if (dense_) {
        for (const auto& x : d_)
            if (x != 0) return false;
        return true;
    }
    for (const auto& row : s_)
        if (!row.empty()) return false;
    return true;
}

index_t IntMatrix::nnz() const {
    index_t n = 0;
    if (dense_) {
        for (const auto& x : d_)
            if (x != 0) ++n;
    } else {
        for (const auto& row : s_) n += static_cast<index_t>(row.size());
    }
    return n;
}

index_t IntMatrix::row_nnz(index_t r) const {
    if (!dense_) return static_cast<index_t>(s_[static_cast<size_t>(r)].size());
    index_t n = 0;
    for (index_t c = 0; c < cols_; ++c)
        if (at(r, c) != 0) ++n;
    return n;
}

index_t IntMatrix::col_nnz(index_t c) const {
    index_t n = 0;
    for (index_t r = 0; r < rows_; ++r)
        if (at(r, c) != 0) ++n;
    return n;
}

void IntMatrix::swap_rows(index_t i, index_t j) {
    if (i == j) return;
    if (dense_) {
        for (index_t c = 0; c < cols_; ++c)
            std::swap(d_[static_cast<size_t>(i * cols_ + c)], d_[static_cast<size_t>(j * cols_ + c)]);
    } else {
        std::swap(s_[static_cast<size_t>(i)], s_[static_cast<size_t>(j)]);
    }
}

void IntMatrix::swap_cols(index_t i, index_t j) {
    if (i == j) return;
    for (index_t r = 0; r < rows_; ++r) {
        Integer a = at(r, i), b = at(r, j);
        if (a != b) {
            set(r, i, b);
            set(r, j, a);
        }
    }
}

void IntMatrix::negate_row(index_t i) {
    if (dense_) {
        for (index_t c = 0; c < cols_; ++c) {
            auto& x = d_[static_cast<size_t>(i * cols_ + c)];
            if (x != 0) x = -x;
        }
    } else {
        for (auto& [c, v] : s_[static_cast<size_t>(i)]) v = -v;
    }
}

void IntMatrix::negate_col(index_t j) {
    for (index_t r = 0; r < rows_; ++r) {
        const Integer& x = at(r, j);
        if (x != 0) set(r, j, -x);
    }
}

void IntMatrix::add_row_multiple(index_t dst, index_t src, const Integer& c) {
    if (c == 0) return;
    if (dense_) {
        for (index_t k = 0; k < cols_; ++k) {
            const Integer& s = d_[static_cast<size_t>(src * cols_ + k)];
            if (s != 0) d_[static_cast<size_t>(dst * cols_ + k)] += c * s;
        }
    } else {
        // Copy to survive dst == src aliasing within map mutation.
        auto srow = s_[static_cast<size_t>(src)];
        for (const auto& [k, v] : srow) add_at(dst, k, c * v);
    }
}

void IntMatrix::add_col_multiple(index_t dst, index_t src, const Integer& c) {
    if (c == 0) return;
    for (index_t r = 0; r < rows_; ++r) {
        const Integer& s = at(r, src);
        if (s != 0) add_at(r, dst, c * s);
    }
}

void IntMatrix::combine_cols(index_t a, index_t b, const Integer& p, const Integer& q,
                             const Integer& u, const Integer& v) {
    for (index_t r = 0; r < rows_; ++r) {
        Integer xa = at(r, a), xb = at(r, b);
        if (xa == 0 && xb == 0) continue;
        set(r, a, p * xa + q * xb);
        set(r, b, u * xa + v * xb);
    }
}

void IntMatrix::combine_rows(index_t a, index_t b, const Integer& p, const Integer& q,
                             const Integer& u, const Integer& v) {
    for (index_t c = 0; c < cols_; ++c) {
        Integer xa = at(a, c), xb = at(b, c);
        if (xa == 0 && xb == 0) continue;
        set(a, c, p * xa + q * xb);
        set(b, c, u * xa + v * xb);
    }
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for_each_nonzero([&](index_t r, index_t c, const Integer& v) { t.set(c, r, v); });
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product shape mismatch");
    IntMatrix out(rows_, rhs.cols_);
    for_each_nonzero([&](index_t i, index_t k, const Integer& v) {
        rhs.for_each_in_row(k, [&](index_t j, const Integer& w) { out.add_at(i, j, v * w); });
    });
    return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("matrix difference shape mismatch");
    IntMatrix out = *this;
    rhs.for_each_nonzero([&](index_t r, index_t c, const Integer& v) { out.add_at(r, c, -v); });
    return out;
}

bool IntMatrix::operator==(const IntMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) return false;
    for (index_t r = 0; r < rows_; ++r)
        for (index_t c = 0; c < cols_; ++c)
            if (at(r, c) != rhs.at(r, c)) return false;
    return true;
}

std::vector<Integer> IntMatrix::apply(const std::vector<Integer>& x) const {
    if (static_cast<index_t>(x.size()) != cols_)
        throw std::invalid_argument("apply: vector length mismatch");
    std::vector<Integer> y(static_cast<size_t>(rows_), Integer(0));
    for_each_nonzero([&](index_t r, index_t c, const Integer& v) {
        y[static_cast<size_t>(r)] += v * x[static_cast<size_t>(c)];
    });
    return y;
}

IntMatrix IntMatrix::select_rows(const std::vector<index_t>& which) const {
    IntMatrix out(static_cast<index_t>(which.size()), cols_);
    for (index_t i = 0; i < static_cast<index_t>(which.size()); ++i)
        for_each_in_row(which[static_cast<size_t>(i)],
                        [&](index_t c, const Integer& v) { out.set(i, c, v); });
    return out;
}

IntMatrix IntMatrix::select_cols(const std::vector<index_t>& which) const {
    IntMatrix out(rows_, static_cast<index_t>(which.size()));
    for (index_t j = 0; j < static_cast<index_t>(which.size()); ++j) {
        index_t c = which[static_cast<size_t>(j)];
        for (index_t r = 0; r < rows_; ++r) {
            const Integer& v = at(r, c);
            if (v != 0) out.set(r, j, v);
        }
    }
    return out;
}

void IntMatrix::append_col(const std::vector<Integer>& col) {
    if (static_cast<index_t>(col.size()) != rows_)
        throw std::invalid_argument("append_col: length mismatch");
    IntMatrix out(rows_, cols_ + 1);
    for_each_nonzero([&](index_t r, index_t c, const Integer& v) { out.set(r, c, v); });
    for (index_t r = 0; r < rows_; ++r)
        if (col[static_cast<size_t>(r)] != 0) out.set(r, cols_, col[static_cast<size_t>(r)]);
    *this = std::move(out);
}

std::vector<Integer> IntMatrix::col_vector(index_t c) const {
    std::vector<Integer> v(static_cast<size_t>(rows_), Integer(0));
    for (index_t r = 0; r < rows_; ++r) v[static_cast<size_t>(r)] = at(r, c);
    return v;
}

IntMatrix IntMatrix::hstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
    IntMatrix out(a.rows(), a.cols() + b.cols());
    a.for_each_nonzero([&](index_t r, index_t c, const Integer& v) { out.set(r, c, v); });
    b.for_each_nonzero([&](index_t r, index_t c, const Integer& v) { out.set(r, a.cols() + c, v); });
    return out;
}

void IntMatrix::for_each_nonzero(
    const std::function<void(index_t, index_t, const Integer&)>& f) const {
    if (dense_) {
        for (index_t r = 0; r < rows_; ++r)
            for (index_t c = 0; c < cols_; ++c) {
                const Integer& v = d_[static_cast<size_t>(r * cols_ + c)];
                if (v != 0) f(r, c, v);
            }
    } else {
        for (index_t r = 0; r < rows_; ++r)
            for (const auto& [c, v] : s_[static_cast<size_t>(r)]) f(r, c, v);
    }
}

void IntMatrix::for_each_in_row(index_t r,
                                const std::function<void(index_t, const Integer&)>& f) const {
    if (dense_) {
        for (index_t c = 0; c < cols_; ++c) {
            const Integer& v = d_[static_cast<size_t>(r * cols_ + c)];
            if (v != 0) f(c, v);
        }
    } else {
        for (const auto& [c, v] : s_[static_cast<size_t>(r)]) f(c, v);
    }
}

void IntMatrix::mod_entries(const Integer& m) {
    if (m <= 0) throw std::invalid_argument("mod_entries: modulus must be positive");
    for (index_t r = 0; r < rows_; ++r)
        for (index_t c = 0; c < cols_; ++c) {
            const Integer& v = at(r, c);
            if (v != 0) set(r, c, mod_nonneg(v, m));
        }
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (index_t r = 0; r < rows_; ++r) {
        os << (r ? "; " : "");
        for (index_t c = 0; c < cols_; ++c) os << (c ? " " : "") << at(r, c).get_str();
    }
    os << "]";
    return os.str();
}

Integer determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: not square");
    index_t n = m.rows();
    if (n == 0) return 1;
    std::vector<std::vector<Integer>> a(static_cast<size_t>(n),
                                        std::vector<Integer>(static_cast<size_t>(n)));
    for (index_t i = 0; i < n; ++i)
        for (index_t j = 0; j < n; ++j) a[static_cast<size_t>(i)][static_cast<size_t>(j)] = m.at(i, j);

    Integer prev = 1;
    int sign = 1;
    for (index_t k = 0; k + 1 < n; ++k) {
        if (a[static_cast<size_t>(k)][static_cast<size_t>(k)] == 0) {
            index_t p = -1;
            for (index_t i = k + 1; i < n; ++i)
                if (a[static_cast<size_t>(i)][static_cast<size_t>(k)] != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return 0;
            std::swap(a[static_cast<size_t>(k)], a[static_cast<size_t>(p)]);
            sign = -sign;
        }
        for (index_t i = k + 1; i < n; ++i)
            for (index_t j = k + 1; j < n; ++j) {
                Integer num = a[static_cast<size_t>(i)][static_cast<size_t>(j)] *
                                  a[static_cast<size_t>(k)][static_cast<size_t>(k)] -
                              a[static_cast<size_t>(i)][static_cast<size_t>(k)] *
                                  a[static_cast<size_t>(k)][static_cast<size_t>(j)];
                a[static_cast<size_t>(i)][static_cast<size_t>(j)] = div_exact(num, prev);
            }
        prev = a[static_cast<size_t>(k)][static_cast<size_t>(k)];
    }
    return sign > 0 ? a[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)]
                    : Integer(-a[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)]);
}

}  // namespace thom::alg
