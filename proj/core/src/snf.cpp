#include "thom/snf.hpp"

namespace thom::alg {

namespace {

struct Reducer {
    IntMatrix A, U, V, Uinv, Vinv;

    explicit Reducer(const IntMatrix& m)
        : A(m),
          U(IntMatrix::identity(m.rows())),
          V(IntMatrix::identity(m.cols())),
          Uinv(IntMatrix::identity(m.rows())),
          Vinv(IntMatrix::identity(m.cols())) {}

    // A <- E A with E = I + c e_i e_k^T
    void row_op(index_t dst, index_t src, const Integer& c) {
        A.add_row_multiple(dst, src, c);
        U.add_row_multiple(dst, src, c);
        Uinv.add_col_multiple(src, dst, -c);
    }
    // A <- A E with E = I + c e_k e_j^T (col dst += c * col src)
    void col_op(index_t dst, index_t src, const Integer& c) {
        A.add_col_multiple(dst, src, c);
        V.add_col_multiple(dst, src, c);
        Vinv.add_row_multiple(src, dst, -c);
    }
    void row_swap(index_t i, index_t j) {
        if (i == j) return;
        A.swap_rows(i, j);
        U.swap_rows(i, j);
        Uinv.swap_cols(i, j);
    }
    void col_swap(index_t i, index_t j) {
        if (i == j) return;
        A.swap_cols(i, j);
        V.swap_cols(i, j);
        Vinv.swap_rows(i, j);
    }
    void row_negate(index_t i) {
        A.negate_row(i);
        U.negate_row(i);
        Uinv.negate_col(i);
    }

    // Replace rows (k, i) by ((s, t), (-b/g, a/g)) * rows, where a = A(k,c),
    // b = A(i,c), g = s a + t b. One-shot gcd elimination of A(i,c).
    void row_gcd_step(index_t k, index_t i, index_t c) {
        Integer a = A.at(k, c), b = A.at(i, c);
        auto [g, s, t] = int_gcdext(a, b);
        Integer ag = div_exact(a, g), bg = div_exact(b, g);
        // E = [[s, t], [-bg, ag]], det = s*ag + t*bg = 1; E^-1 = [[ag, -t], [bg, s]]
        A.combine_rows(k, i, s, t, -bg, ag);
        U.combine_rows(k, i, s, t, -bg, ag);
        Uinv.combine_cols(k, i, ag, bg, -t, s);
    }

    void col_gcd_step(index_t k, index_t j, index_t r) {
        Integer a = A.at(r, k), b = A.at(r, j);
        auto [g, s, t] = int_gcdext(a, b);
        Integer ag = div_exact(a, g), bg = div_exact(b, g);
        A.combine_cols(k, j, s, t, -bg, ag);
        V.combine_cols(k, j, s, t, -bg, ag);
        Vinv.combine_rows(k, j, ag, bg, -t, s);
    }
};

// Pivot choice: smallest |value|, ties broken by Markowitz fill estimate.
std::optional<std::pair<index_t, index_t>> choose_pivot(const IntMatrix& A, index_t k) {
    std::optional<std::pair<index_t, index_t>> best;
    Integer best_abs = 0;
    index_t best_fill = 0;
    for (index_t r = k; r < A.rows(); ++r) {
        A.for_each_in_row(r, [&](index_t c, const Integer& v) {
            if (c < k) return;
            Integer a = int_abs(v);
            index_t fill = (A.row_nnz(r) - 1) * (A.col_nnz(c) - 1);
            if (!best || a < best_abs || (a == best_abs && fill < best_fill)) {
                best = {r, c};
                best_abs = a;
                best_fill = fill;
            }
        });
    }
    return best;
}

}  // namespace

SmithResult smith_normal_form(const IntMatrix& m) {
    Reducer rd(m);
    index_t n = std::min(m.rows(), m.cols());
    index_t k = 0;
    for (; k < n; ++k) {
        auto piv = choose_pivot(rd.A, k);
        if (!piv) break;
        rd.row_swap(k, piv->first);
        rd.col_swap(k, piv->second);

        for (;;) {
            // Clear column k below the pivot.
            for (index_t i = k + 1; i < rd.A.rows(); ++i) {
                const Integer& x = rd.A.at(i, k);
                if (x == 0) continue;
                if (divides(rd.A.at(k, k), x))
                    rd.row_op(i, k, -div_exact(x, rd.A.at(k, k)));
                else
                    rd.row_gcd_step(k, i, k);
            }
            // Clear row k right of the pivot.
            bool row_clean = true;
            for (index_t j = k + 1; j < rd.A.cols(); ++j) {
                const Integer& x = rd.A.at(k, j);
                if (x == 0) continue;
                if (divides(rd.A.at(k, k), x)) {
                    rd.col_op(j, k, -div_exact(x, rd.A.at(k, k)));
                } else {
                    rd.col_gcd_step(k, j, k);
                    row_clean = false;  // column k may be dirty again
                }
            }
            if (!row_clean) continue;
            bool col_clean = true;
            for (index_t i = k + 1; i < rd.A.rows(); ++i)
                if (rd.A.at(i, k) != 0) {
                    col_clean = false;
                    break;
                }
            if (col_clean) break;
        }

        // Pivot must divide the remaining submatrix; if not, fold the
        // offending row into row k and redo this pivot.
        bool redo = false;
        for (index_t i = k + 1; i < rd.A.rows() && !redo; ++i) {
            rd.A.for_each_in_row(i, [&](index_t c, const Integer& v) {
                if (redo || c <= k) return;
                if (!divides(rd.A.at(k, k), v)) {
                    rd.row_op(k, i, 1);
                    redo = true;
                }
            });
        }
        if (redo) --k;
    }

    // Normalize signs.
    for (index_t i = 0; i < k; ++i)
        if (rd.A.at(i, i) < 0) rd.row_negate(i);

    // Enforce the divisor chain (pivot-divides sweep above already makes the
    // diagonal a chain in almost all cases; repair any stragglers).
    for (bool changed = true; changed;) {
        changed = false;
        for (index_t i = 0; i + 1 < k; ++i) {
            const Integer &a = rd.A.at(i, i), &b = rd.A.at(i + 1, i + 1);
            if (divides(a, b)) continue;
            // diag(a,b) -> [[a,b],[0,b]] -> diag(gcd, lcm)
            rd.row_op(i, i + 1, 1);
            rd.col_gcd_step(i, i + 1, i);
            const Integer& below = rd.A.at(i + 1, i);
            if (below != 0) rd.row_op(i + 1, i, -div_exact(below, rd.A.at(i, i)));
            if (rd.A.at(i + 1, i + 1) < 0) rd.row_negate(i + 1);
            changed = true;
        }
    }

    SmithResult out;
    out.rank = k;
    out.S = std::move(rd.A);
    out.U = std::move(rd.U);
    out.V = std::move(rd.V);
    out.Uinv = std::move(rd.Uinv);
    out.Vinv = std::move(rd.Vinv);
    out.divisors.reserve(static_cast<size_t>(k));
    for (index_t i = 0; i < k; ++i) out.divisors.push_back(out.S.at(i, i));
    return out;
}

IntMatrix kernel_basis(const SmithResult& snf) {
    std::vector<index_t> free_cols;
    for (index_t j = snf.rank; j < snf.V.cols(); ++j) free_cols.push_back(j);
    return snf.V.select_cols(free_cols);
}

IntMatrix kernel_basis(const IntMatrix& m) { return kernel_basis(smith_normal_form(m)); }

std::optional<std::vector<Integer>> solve(const SmithResult& snf, const std::vector<Integer>& b) {
    std::vector<Integer> ub = snf.U.apply(b);
    std::vector<Integer> y(static_cast<size_t>(snf.V.rows()), Integer(0));
    for (index_t i = 0; i < static_cast<index_t>(ub.size()); ++i) {
        const Integer& d = i < snf.rank ? snf.divisors[static_cast<size_t>(i)] : Integer(0);
        if (i < snf.rank) {
            if (!divides(d, ub[static_cast<size_t>(i)])) return std::nullopt;
            if (i < snf.V.rows()) y[static_cast<size_t>(i)] = div_exact(ub[static_cast<size_t>(i)], d);
        } else if (ub[static_cast<size_t>(i)] != 0) {
            return std::nullopt;
        }
    }
    return snf.V.apply(y);
}

std::optional<std::vector<Integer>> solve(const IntMatrix& m, const std::vector<Integer>& b) {
    return solve(smith_normal_form(m), b);
}

bool in_column_span(const IntMatrix& m, const std::vector<Integer>& b) {
    return solve(m, b).has_value();
}

std::optional<IntMatrix> solve_matrix(const IntMatrix& m, const IntMatrix& b) {
    if (m.rows() != b.rows()) throw std::invalid_argument("solve_matrix: shape mismatch");
    auto snf = smith_normal_form(m);
    IntMatrix x(m.cols(), b.cols());
    for (index_t j = 0; j < b.cols(); ++j) {
        auto col = solve(snf, b.col_vector(j));
        if (!col) return std::nullopt;
        for (index_t i = 0; i < m.cols(); ++i)
            if ((*col)[static_cast<size_t>(i)] != 0) x.set(i, j, (*col)[static_cast<size_t>(i)]);
    }
    return x;
}

}  // namespace thom::alg
