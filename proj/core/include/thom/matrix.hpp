#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "thom/integer.hpp"

namespace thom::alg {

/// Exact integer matrix. Small matrices live in a dense buffer, larger ones
/// in sparse row maps; telescope boundary matrices are extremely sparse and
/// the SNF pivot search is the hot path.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(index_t rows, index_t cols);

    static IntMatrix identity(index_t n);
    static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows);

    index_t rows() const { return rows_; }
    index_t cols() const { return cols_; }

    const Integer& at(index_t r, index_t c) const;
    void set(index_t r, index_t c, Integer v);
    void add_at(index_t r, index_t c, const Integer& v);

    bool is_zero() const;
    index_t nnz() const;
    index_t row_nnz(index_t r) const;
    index_t col_nnz(index_t c) const;

    // Elementary operations (all unimodular except scale by |s| != 1).
    void swap_rows(index_t i, index_t j);
    void swap_cols(index_t i, index_t j);
    void negate_row(index_t i);
    void negate_col(index_t j);
    void add_row_multiple(index_t dst, index_t src, const Integer& c);  // row dst += c * row src
    void add_col_multiple(index_t dst, index_t src, const Integer& c);

    // Two-column unimodular transform: (col a, col b) <- (p*col a + q*col b,
    // u*col a + v*col b), where p*v - q*u = +-1.
    void combine_cols(index_t a, index_t b, const Integer& p, const Integer& q,
                      const Integer& u, const Integer& v);
    void combine_rows(index_t a, index_t b, const Integer& p, const Integer& q,
                      const Integer& u, const Integer& v);

    IntMatrix transposed() const;
    IntMatrix operator*(const IntMatrix& rhs) const;
    IntMatrix operator-(const IntMatrix& rhs) const;
    bool operator==(const IntMatrix& rhs) const;

    std::vector<Integer> apply(const std::vector<Integer>& x) const;  // M * x
    IntMatrix select_rows(const std::vector<index_t>& which) const;
    IntMatrix select_cols(const std::vector<index_t>& which) const;
    void append_col(const std::vector<Integer>& col);
    std::vector<Integer> col_vector(index_t c) const;
    static IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);

    void for_each_nonzero(const std::function<void(index_t, index_t, const Integer&)>& f) const;
    void for_each_in_row(index_t r, const std::function<void(index_t, const Integer&)>& f) const;

    void mod_entries(const Integer& m);  // reduce every entry mod m (m > 0)

    std::string to_string() const;

private:
    static constexpr index_t kDenseLimit = 64;

    index_t rows_ = 0, cols_ = 0;
    bool dense_ = true;
    std::vector<Integer> d_;                        // dense, row-major
    std::vector<std::map<index_t, Integer>> s_;     // sparse rows

    bool use_dense(index_t r, index_t c) const { return r < kDenseLimit && c < kDenseLimit; }
};

/// Fraction-free (Bareiss) determinant; used as an independent oracle in
/// tests and for unimodularity asserts.
Integer determinant(const IntMatrix& m);

}  // namespace thom::alg
