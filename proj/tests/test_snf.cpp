#include <random>

#include "doctest.h"
#include "thom/snf.hpp"

using namespace thom;
using namespace thom::alg;

namespace {

IntMatrix mat(const std::vector<std::vector<long>>& rows) {
    std::vector<std::vector<Integer>> conv;
    for (const auto& r : rows) conv.emplace_back(r.begin(), r.end());
    return IntMatrix::from_rows(conv);
}

// Independent oracle: divisors via gcds of k x k minors (determinantal
// divisors), feasible for small matrices.
std::vector<Integer> minor_gcd_divisors(const IntMatrix& m) {
    index_t n = std::min(m.rows(), m.cols());
    std::vector<Integer> dk;  // gcd of all k x k minors
    std::vector<index_t> rows(m.rows()), cols(m.cols());
    for (index_t i = 0; i < m.rows(); ++i) rows[i] = i;
    for (index_t j = 0; j < m.cols(); ++j) cols[j] = j;

    for (index_t k = 1; k <= n; ++k) {
        Integer g = 0;
        std::vector<bool> rsel(m.rows(), false), csel(m.cols(), false);
        std::fill(rsel.begin(), rsel.begin() + k, true);
        do {
            std::vector<index_t> ri;
            for (index_t i = 0; i < m.rows(); ++i)
                if (rsel[i]) ri.push_back(i);
            std::vector<bool> cs(m.cols(), false);
            std::fill(cs.begin(), cs.begin() + k, true);
            do {
                std::vector<index_t> ci;
                for (index_t j = 0; j < m.cols(); ++j)
                    if (cs[j]) ci.push_back(j);
                g = int_gcd(g, determinant(m.select_rows(ri).select_cols(ci)));
            } while (std::prev_permutation(cs.begin(), cs.end()));
        } while (std::prev_permutation(rsel.begin(), rsel.end()));
        dk.push_back(g);
    }
    std::vector<Integer> out;
    Integer prev = 1;
    for (const auto& g : dk) {
        if (g == 0) break;
        out.push_back(div_exact(g, prev));
        prev = g;
    }
    return out;
}

void check_contract(const IntMatrix& m) {
    auto s = smith_normal_form(m);
    CHECK(s.U * m * s.V == s.S);
    CHECK(s.U * s.Uinv == IntMatrix::identity(m.rows()));
    CHECK(s.V * s.Vinv == IntMatrix::identity(m.cols()));
    for (index_t i = 0; i < std::min(s.S.rows(), s.S.cols()); ++i)
        for (index_t j = 0; j < std::min(s.S.rows(), s.S.cols()); ++j)
            if (i != j) CHECK(s.S.at(i, j) == 0);
    for (index_t i = 0; i + 1 < s.rank; ++i) {
        CHECK(s.divisors[i] > 0);
        CHECK(divides(s.divisors[i], s.divisors[i + 1]));
    }
}

}  // namespace

TEST_CASE("snf of the worked 2x2 example matches the minor oracle") {
    IntMatrix m = mat({{2, 4}, {6, 8}});
    auto s = smith_normal_form(m);
    REQUIRE(s.rank == 2);
    CHECK(s.divisors[0] == 2);
    CHECK(s.divisors[1] == 4);
    CHECK(minor_gcd_divisors(m) == std::vector<Integer>{2, 4});
    check_contract(m);
}

TEST_CASE("snf fixed points") {
    check_contract(IntMatrix(3, 3));  // zero matrix stays zero
    auto z = smith_normal_form(IntMatrix(3, 3));
    CHECK(z.rank == 0);
    CHECK(z.S.is_zero());

    auto id = smith_normal_form(IntMatrix::identity(4));
    CHECK(id.rank == 4);
    CHECK(id.S == IntMatrix::identity(4));
}

TEST_CASE("snf shapes: empty, row, column") {
    check_contract(IntMatrix(0, 5));
    check_contract(IntMatrix(5, 0));
    check_contract(mat({{0, 6, 4}}));
    check_contract(mat({{3}, {0}, {9}}));
}

TEST_CASE("snf agrees with the minor-gcd oracle on random small matrices") {
    std::mt19937_64 rng(20240817u);
    for (int trial = 0; trial < 60; ++trial) {
        index_t r = 1 + static_cast<index_t>(rng() % 4);
        index_t c = 1 + static_cast<index_t>(rng() % 4);
        IntMatrix m(r, c);
        for (index_t i = 0; i < r; ++i)
            for (index_t j = 0; j < c; ++j)
                m.set(i, j, static_cast<long>(rng() % 19) - 9);
        auto s = smith_normal_form(m);
        check_contract(m);
        auto oracle = minor_gcd_divisors(m);
        REQUIRE(static_cast<size_t>(s.rank) == oracle.size());
        for (index_t i = 0; i < s.rank; ++i) CHECK(s.divisors[i] == oracle[i]);
        CHECK(int_abs(determinant(s.U)) == 1);
        CHECK(int_abs(determinant(s.V)) == 1);
    }
}

TEST_CASE("snf handles sparse matrices beyond the dense fallback limit") {
    std::mt19937_64 rng(7u);
    IntMatrix m(70, 84);
    for (int k = 0; k < 220; ++k)
        m.set(static_cast<index_t>(rng() % 70), static_cast<index_t>(rng() % 84),
              static_cast<long>(rng() % 7) - 3);
    check_contract(m);
}

TEST_CASE("snf on the banded unit-heavy shape the telescopes produce") {
    std::mt19937_64 rng(3u);
    index_t n = 160;
    IntMatrix m(n, n);
    for (index_t j = 0; j < n; ++j) {
        m.set(j, j, 1);
        if (j + 1 < n) m.set(j + 1, j, -1);
        if (j + 7 < n && rng() % 3 == 0) m.set(j + 7, j, static_cast<long>(rng() % 5) - 2);
    }
    check_contract(m);
}

TEST_CASE("kernel and solve") {
    IntMatrix m = mat({{2, 4}, {6, 8}});
    CHECK(kernel_basis(m).cols() == 0);

    IntMatrix sing = mat({{1, 2, 3}, {2, 4, 6}});
    IntMatrix k = kernel_basis(sing);
    CHECK(k.cols() == 2);
    CHECK((sing * k).is_zero());

    auto sol = solve(mat({{2, 0}, {0, 3}}), {4, 9});
    REQUIRE(sol.has_value());
    CHECK((*sol)[0] == 2);
    CHECK((*sol)[1] == 3);
    CHECK(!solve(mat({{2, 0}, {0, 3}}), {1, 1}).has_value());
    CHECK(!solve(mat({{2}, {3}}), {2, 2}).has_value());
    CHECK(in_column_span(mat({{2}, {3}}), {4, 6}));
}
