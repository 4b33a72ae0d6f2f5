#include <random>

#include "doctest.h"
#include "thom/chain_map.hpp"
#include "thom/complex.hpp"

using namespace thom;
using namespace thom::cx;

namespace {

ComplexPtr point() {
    return std::make_shared<CellComplex>(CellComplex::build({{"v", 0, {}}}));
}

ComplexPtr circle() {
    return std::make_shared<CellComplex>(CellComplex::build({{"v", 0, {}}, {"e", 1, {}}}));
}

ComplexPtr torus() {
    // 1 vertex, 2 edges, 1 face; both boundary maps vanish
    return std::make_shared<CellComplex>(
        CellComplex::build({{"v", 0, {}}, {"a", 1, {}}, {"b", 1, {}}, {"f", 2, {}}}));
}

ComplexPtr hollow_triangle() {
    return std::make_shared<CellComplex>(CellComplex::build({
        {"v0", 0, {}},
        {"v1", 0, {}},
        {"v2", 0, {}},
        {"e01", 1, {{"v1", 1}, {"v0", -1}}},
        {"e12", 1, {{"v2", 1}, {"v1", -1}}},
        {"e02", 1, {{"v2", 1}, {"v0", -1}}},
    }));
}

ComplexPtr disk() {
    auto cells = hollow_triangle();
    return std::make_shared<CellComplex>(CellComplex::build({
        {"v0", 0, {}},
        {"v1", 0, {}},
        {"v2", 0, {}},
        {"e01", 1, {{"v1", 1}, {"v0", -1}}},
        {"e12", 1, {{"v2", 1}, {"v1", -1}}},
        {"e02", 1, {{"v2", 1}, {"v0", -1}}},
        {"f", 2, {{"e01", 1}, {"e12", 1}, {"e02", -1}}},
    }));
}

}  // namespace

TEST_CASE("validation accepts the corpus shapes and pinpoints corruption") {
    CHECK(circle()->validate().ok());
    CHECK(hollow_triangle()->validate().ok());
    CHECK(disk()->validate().ok());

    // an inconsistent edge: dd != 0 through the face f
    auto bad = CellComplex::build({
        {"v0", 0, {}},
        {"v1", 0, {}},
        {"e", 1, {{"v1", 1}, {"v0", -1}}},
        {"e2", 1, {{"v1", 1}, {"v1", 1}}},  // degenerate boundary, breaks dd=0 below
        {"f", 2, {{"e", 1}, {"e2", -1}}},
    });
    auto rep = bad.validate();
    CHECK_FALSE(rep.ok());
    bool mentions_f = false;
    for (const auto& i : rep.issues) mentions_f |= (i.cell == "f");
    CHECK(mentions_f);

    auto bad_dim = CellComplex::build({{"v", 0, {}}, {"f", 2, {{"v", 1}}}});
    CHECK_FALSE(bad_dim.validate().ok());
}

TEST_CASE("homology of the corpus complexes") {
    auto pt = point();
    CHECK(pt->homology(0) == CanonicalGroup::free(1));
    for (int i = 1; i < 4; ++i) CHECK(pt->homology(i).trivial());

    auto s1 = circle();
    CHECK(s1->homology(0) == CanonicalGroup::free(1));
    CHECK(s1->homology(1) == CanonicalGroup::free(1));

    auto t2 = torus();
    CHECK(t2->homology(0) == CanonicalGroup::free(1));
    CHECK(t2->homology(1) == CanonicalGroup::free(2));
    CHECK(t2->homology(2) == CanonicalGroup::free(1));
    CHECK(t2->cohomology(1) == CanonicalGroup::free(2));

    CHECK(hollow_triangle()->homology(1) == CanonicalGroup::free(1));
    CHECK(disk()->homology(1).trivial());
    CHECK(disk()->homology(0) == CanonicalGroup::free(1));
}

TEST_CASE("euler characteristic equals alternating sum of ranks") {
    for (const auto& k : {circle(), torus(), hollow_triangle(), disk()}) {
        Integer chi = 0;
        for (int d = 0; d <= k->max_dim(); ++d) {
            Integer r = k->homology(d).rank;
            chi += (d % 2 == 0) ? r : -r;
        }
        CHECK(chi == k->euler_characteristic());
    }
}

TEST_CASE("homology is invariant under cell relabeling") {
    std::mt19937_64 rng(17u);
    auto base = disk();
    std::vector<CellComplex::PendingCell> pcs;
    std::vector<std::string> names = {"x0", "x1", "x2", "x3", "x4", "x5", "x6"};
    std::shuffle(names.begin(), names.end(), rng);
    for (index_t i = 0; i < base->size(); ++i) {
        const auto& c = base->cell(i);
        CellComplex::PendingCell pc{names[static_cast<size_t>(i)], c.dim, {}};
        for (const auto& [f, coeff] : c.faces)
            pc.faces.emplace_back(names[static_cast<size_t>(f)], coeff);
        pcs.push_back(pc);
    }
    std::shuffle(pcs.begin(), pcs.end(), rng);
    auto renamed = CellComplex::build(pcs);
    for (int d = 0; d <= 2; ++d) CHECK(renamed.homology(d) == base->homology(d));
}

TEST_CASE("relative homology of pairs") {
    auto d = disk();
    auto boundary = Subcomplex(d, d->closure({*d->find("e01"), *d->find("e12"), *d->find("e02")}));
    PairPresentation pair(d, boundary);
    CHECK(pair.relative_homology(2) == CanonicalGroup::free(1));
    CHECK(pair.relative_homology(1).trivial());
    CHECK(pair.relative_homology(0).trivial());
    // (X, X) -> 0 in all degrees
    PairPresentation same(d, Subcomplex::full(d));
    for (int n = 0; n <= 2; ++n) CHECK(same.relative_homology(n).trivial());
    // (X, empty) -> absolute
    PairPresentation abs = PairPresentation::absolute(d);
    for (int n = 0; n <= 2; ++n) CHECK(abs.relative_homology(n) == d->homology(n));
}

TEST_CASE("mod-m coefficients") {
    auto s1 = circle();
    CHECK(s1->homology(1, Coefficients::mod(5)) == CanonicalGroup{0, {Integer(5)}});
    // Klein-bottle-like: one vertex, edges a,b, face with da = 0... use the
    // standard cellular structure: d(f) = 2b
    auto kb = CellComplex::build(
        {{"v", 0, {}}, {"a", 1, {}}, {"b", 1, {}}, {"f", 2, {{"b", 2}}}});
    CHECK(kb.validate().ok());
    CHECK(kb.homology(1) == CanonicalGroup{1, {Integer(2)}});
    CHECK(kb.homology(2).trivial());
    CHECK(kb.homology(2, Coefficients::mod(2)) == CanonicalGroup{0, {Integer(2)}});
    CHECK(kb.homology(1, Coefficients::mod(2)) ==
          CanonicalGroup::from_factors(0, {2, 2}));
}

TEST_CASE("the six-vertex projective plane has Z/2 in degree one") {
    // minimal triangulation: ten faces, every edge shared by exactly two
    const int faces[10][3] = {{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 6, 2},
                              {2, 3, 5}, {3, 4, 6}, {4, 5, 2}, {5, 6, 3}, {6, 2, 4}};
    std::vector<CellComplex::PendingCell> pcs;
    auto vname = [](int a) { return "v" + std::to_string(a); };
    auto ename = [](int a, int b) {
        if (a > b) std::swap(a, b);
        return "e" + std::to_string(a) + std::to_string(b);
    };
    for (int v = 1; v <= 6; ++v) pcs.push_back({vname(v), 0, {}});
    std::set<std::pair<int, int>> edges;
    for (const auto& f : faces)
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                edges.insert({std::min(f[i], f[j]), std::max(f[i], f[j])});
    for (const auto& [a, b] : edges)
        pcs.push_back({ename(a, b), 1, {{vname(b), 1}, {vname(a), -1}}});
    for (const auto& f : faces) {
        int s[3] = {f[0], f[1], f[2]};
        std::sort(s, s + 3);
        pcs.push_back({"f" + std::to_string(s[0]) + std::to_string(s[1]) + std::to_string(s[2]),
                       2,
                       {{ename(s[1], s[2]), 1}, {ename(s[0], s[2]), -1}, {ename(s[0], s[1]), 1}}});
    }
    auto rp2 = CellComplex::build(pcs);
    REQUIRE(rp2.validate().ok());
    CHECK(rp2.euler_characteristic() == 1);
    CHECK(rp2.homology(0) == CanonicalGroup::free(1));
    CHECK(rp2.homology(1) == CanonicalGroup{0, {Integer(2)}});
    CHECK(rp2.homology(2).trivial());
    // with Z/2 coefficients the fundamental class appears
    CHECK(rp2.homology(2, Coefficients::mod(2)) == CanonicalGroup{0, {Integer(2)}});
    CHECK(rp2.cohomology(2) == CanonicalGroup{0, {Integer(2)}});
}

namespace {
// independent rank oracle: fraction-free Gaussian elimination
index_t ff_rank(const alg::IntMatrix& m) {
    std::vector<std::vector<Integer>> a(static_cast<size_t>(m.rows()),
                                        std::vector<Integer>(static_cast<size_t>(m.cols())));
    m.for_each_nonzero([&](index_t r, index_t c, const Integer& v) {
        a[static_cast<size_t>(r)][static_cast<size_t>(c)] = v;
    });
    index_t rank = 0;
    for (index_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        index_t piv = -1;
        for (index_t r = rank; r < m.rows(); ++r)
            if (a[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[static_cast<size_t>(rank)], a[static_cast<size_t>(piv)]);
        for (index_t r = rank + 1; r < m.rows(); ++r) {
            Integer f = a[static_cast<size_t>(r)][static_cast<size_t>(col)];
            if (f == 0) continue;
            Integer p = a[static_cast<size_t>(rank)][static_cast<size_t>(col)];
            for (index_t c = col; c < m.cols(); ++c)
                a[static_cast<size_t>(r)][static_cast<size_t>(c)] =
                    a[static_cast<size_t>(r)][static_cast<size_t>(c)] * p -
                    a[static_cast<size_t>(rank)][static_cast<size_t>(c)] * f;
        }
        ++rank;
    }
    return rank;
}
}  // namespace

TEST_CASE("betti numbers agree with an independent rank computation") {
    std::mt19937_64 rng(321u);
    for (int trial = 0; trial < 12; ++trial) {
        // random downward-closed face sets with standard orientations
        std::set<std::vector<index_t>> faces;
        index_t v = 4 + static_cast<index_t>(rng() % 4);
        for (index_t i = 0; i < v; ++i) faces.insert({i});
        for (int f = 0; f < 6; ++f) {
            std::set<index_t> pick;
            while (pick.size() < 3) pick.insert(static_cast<index_t>(rng() % v));
            std::vector<index_t> tri(pick.begin(), pick.end());
            faces.insert(tri);
            faces.insert({tri[0], tri[1]});
            faces.insert({tri[0], tri[2]});
            faces.insert({tri[1], tri[2]});
        }
        auto name = [](const std::vector<index_t>& f) {
            std::string s = "c";
            for (index_t x : f) s += "." + std::to_string(x);
            return s;
        };
        std::vector<CellComplex::PendingCell> pcs;
        for (const auto& f : faces) {
            CellComplex::PendingCell pc{name(f), static_cast<int>(f.size()) - 1, {}};
            for (size_t omit = 0; omit < f.size() && f.size() > 1; ++omit) {
                std::vector<index_t> sub;
                for (size_t i = 0; i < f.size(); ++i)
                    if (i != omit) sub.push_back(f[i]);
                pc.faces.emplace_back(name(sub), omit % 2 == 0 ? 1 : -1);
            }
            pcs.push_back(std::move(pc));
        }
        auto k = CellComplex::build(pcs);
        REQUIRE(k.validate().ok());
        for (int d = 0; d <= k.max_dim(); ++d) {
            index_t expected = k.count_in_dim(d) - ff_rank(k.boundary_matrix(d)) -
                               ff_rank(k.boundary_matrix(d + 1));
            CHECK(k.homology(d).rank == expected);
        }
    }
}

TEST_CASE("quotient complex collapses a subcomplex to the basepoint") {
    // collapsing one edge of the hollow triangle leaves a circle
    auto h = hollow_triangle();
    Subcomplex arc(h, h->closure({*h->find("e01")}));
    auto q = quotient_complex(PairPresentation(h, arc));
    CHECK(q.validate().ok());
    CHECK(q.homology(1) == CanonicalGroup::free(1));
    CHECK(q.homology(0) == CanonicalGroup::free(1));  // the circle runs through the basepoint
}
