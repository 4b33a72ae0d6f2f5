#pragma once

#include <optional>
#include <vector>

#include "thom/matrix.hpp"

namespace thom::alg {

/// U * M * V = S with S diagonal, d_i | d_{i+1}, U and V unimodular.
/// Uinv and Vinv are tracked alongside, so unimodularity is witnessed by
/// U*Uinv == I exactly rather than asserted.
struct SmithResult {
    IntMatrix S, U, V, Uinv, Vinv;
    index_t rank = 0;
    std::vector<Integer> divisors;  // the nonzero d_1..d_rank, each positive
};

SmithResult smith_normal_form(const IntMatrix& m);

/// Columns form a basis of { x : M x = 0 }.
IntMatrix kernel_basis(const IntMatrix& m);
IntMatrix kernel_basis(const SmithResult& snf);

/// Solve M x = b over the integers. Empty when no integral solution exists.
std::optional<std::vector<Integer>> solve(const SmithResult& snf, const std::vector<Integer>& b);
std::optional<std::vector<Integer>> solve(const IntMatrix& m, const std::vector<Integer>& b);
bool in_column_span(const IntMatrix& m, const std::vector<Integer>& b);

/// Solve M X = B column-by-column; empty if any column fails.
std::optional<IntMatrix> solve_matrix(const IntMatrix& m, const IntMatrix& b);

}  // namespace thom::alg
