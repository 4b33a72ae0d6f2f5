#include <random>

#include "doctest.h"
#include "thom/chain_map.hpp"

using namespace thom;
using namespace thom::cx;

namespace {

ComplexPtr circle() {
    return std::make_shared<CellComplex>(CellComplex::build({{"v", 0, {}}, {"e", 1, {}}}));
}

ChainMap degree_map(ComplexPtr s1, long k) {
    ChainMap f(s1, s1);
    f.set_image(*s1->find("v"), {{*s1->find("v"), 1}});
    f.set_image(*s1->find("e"), {{*s1->find("e"), k}});
    return f;
}

}  // namespace

TEST_CASE("induced maps on homology") {
    auto s1 = circle();
    auto id = ChainMap::identity(s1);
    CHECK(id.induced(1).matrix == alg::IntMatrix::identity(1));
    CHECK(degree_map(s1, 2).induced(1).matrix.at(0, 0) == 2);
    auto c = ChainMap::constant_to_vertex(s1, s1, *s1->find("v"));
    CHECK(c.induced(1).is_zero_map());
    CHECK(c.induced(0).is_isomorphism());
}

TEST_CASE("induced maps compose functorially on random degree maps") {
    std::mt19937_64 rng(5u);
    auto s1 = circle();
    for (int t = 0; t < 25; ++t) {
        long a = static_cast<long>(rng() % 9) - 4;
        long b = static_cast<long>(rng() % 9) - 4;
        auto fg = degree_map(s1, a).after(degree_map(s1, b));
        CHECK(fg.induced(1).matrix ==
              degree_map(s1, a).induced(1).after(degree_map(s1, b).induced(1)).matrix);
    }
}

TEST_CASE("non-chain-maps are rejected") {
    auto tri = std::make_shared<CellComplex>(CellComplex::build({
        {"v0", 0, {}},
        {"v1", 0, {}},
        {"e", 1, {{"v1", 1}, {"v0", -1}}},
    }));
    ChainMap f(tri, tri);
    f.set_image(*tri->find("v0"), {{*tri->find("v0"), 1}});
    f.set_image(*tri->find("v1"), {{*tri->find("v0"), 1}});
    f.set_image(*tri->find("e"), {{*tri->find("e"), 1}});  // boundary mismatch
    CHECK_FALSE(f.commutes_with_boundary());
    CHECK_THROWS_AS(f.induced(1), alg::NotAChainMap);
}

TEST_CASE("cylinder of identity on a point is an interval") {
    auto pt = std::make_shared<CellComplex>(CellComplex::build({{"v", 0, {}}}));
    auto cyl = algebraic_mapping_cylinder(ChainMap::identity(pt));
    CHECK(cyl.complex->validate().ok());
    CHECK(cyl.complex->size() == 3);
    CHECK(cyl.complex->homology(0) == CanonicalGroup::free(1));
    CHECK(cyl.complex->homology(1).trivial());
}

TEST_CASE("cylinder of x2 on the circle retracts to the target") {
    auto s1 = circle();
    auto cyl = algebraic_mapping_cylinder(degree_map(s1, 2));
    CHECK(cyl.complex->validate().ok());
    CHECK(cyl.complex->size() == 6);
    CHECK(cyl.complex->homology(1) == CanonicalGroup::free(1));
    CHECK(cyl.complex->homology(0) == CanonicalGroup::free(1));
    // structure maps
    cyl.include_source.require_chain_map();
    cyl.include_target.require_chain_map();
    cyl.retraction.require_chain_map();
    CHECK(cyl.retraction.after(cyl.include_target).induced(1).is_isomorphism());
    // homotopy: id ≃ include_target ∘ retraction
    auto idcyl = ChainMap::identity(cyl.complex);
    auto ir = cyl.include_target.after(cyl.retraction);
    CHECK(cyl.homotopy.witnesses(idcyl, ir));
    // inclusion of target induces iso on homology (deformation retract)
    CHECK(cyl.include_target.induced(1).is_isomorphism());
    // inclusion of source composed with retraction is multiplication by 2
    CHECK(cyl.retraction.after(cyl.include_source).induced(1).matrix.at(0, 0) == 2);
}

TEST_CASE("dd = 0 on cylinders of random valid chain maps") {
    std::mt19937_64 rng(23u);
    auto s1 = circle();
    for (int t = 0; t < 10; ++t) {
        auto cyl = algebraic_mapping_cylinder(degree_map(s1, static_cast<long>(rng() % 11) - 5));
        CHECK(cyl.complex->validate().ok());
        CHECK(cyl.homotopy.witnesses(ChainMap::identity(cyl.complex),
                                     cyl.include_target.after(cyl.retraction)));
    }
}
