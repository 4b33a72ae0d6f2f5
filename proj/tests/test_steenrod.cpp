#include "doctest.h"
#include "thom/steenrod.hpp"

using namespace thom;
using namespace thom::sc;
using namespace thom::tow;

namespace {

ComplexPtr point() {
    return std::make_shared<CellComplex>(CellComplex::build({{"v", 0, {}}}));
}

ComplexPtr circle() {
    return std::make_shared<CellComplex>(
        CellComplex::build({{"v", 0, {}}, {"e", 1, {{"v", 1}, {"v", -1}}}}));
}

ComplexPtr torus() {
    return std::make_shared<CellComplex>(
        CellComplex::build({{"v", 0, {}}, {"a", 1, {}}, {"b", 1, {}}, {"f", 2, {}}}));
}

Tower constant_tower(ComplexPtr k, index_t n) {
    Tower t;
    for (index_t i = 0; i < n; ++i) t.levels.push_back(k);
    for (index_t i = 0; i + 1 < n; ++i) t.bondings.push_back(ChainMap::identity(k));
    t.tail = TailPolicy::constant(0);
    return t;
}

Tower solenoid_tower(long m, index_t n) {
    auto s1 = circle();
    Tower t;
    for (index_t i = 0; i < n; ++i) t.levels.push_back(s1);
    for (index_t i = 0; i + 1 < n; ++i) {
        ChainMap f(s1, s1);
        f.set_image(*s1->find("v"), {{*s1->find("v"), 1}});
        f.set_image(*s1->find("e"), {{*s1->find("e"), m}});
        t.bondings.push_back(std::move(f));
    }
    t.tail = TailPolicy::periodic(0, 1);
    return t;
}

}  // namespace

TEST_CASE("steenrod homology of the constant point tower") {
    Tower t = constant_tower(point(), 3);
    auto r = steenrod_homology(t, 0, 2);
    CHECK(r.by_degree[0].value == alg::CanonicalGroup::free(1));
    CHECK(r.by_degree[1].exact_zero());
    CHECK(r.by_degree[2].exact_zero());
    CHECK(r.reduced_h0.exact_zero());
    CHECK(r.provenance == SteenrodResult::Provenance::CrossChecked);
    CHECK_FALSE(r.non_mittag_leffler);
    auto c = cech_cohomology(t, 0);
    CHECK(c.group.value == alg::CanonicalGroup::free(1));
    CHECK(cech_cohomology(t, 1).group.exact_zero());
}

TEST_CASE("steenrod = cellular on the constant circle and torus towers") {
    Tower tc = constant_tower(circle(), 3);
    auto rc = steenrod_homology(tc, 0, 1);
    CHECK(rc.by_degree[0].value == alg::CanonicalGroup::free(1));
    CHECK(rc.by_degree[1].value == alg::CanonicalGroup::free(1));
    CHECK(rc.provenance == SteenrodResult::Provenance::CrossChecked);
    CHECK(cech_cohomology(tc, 1).group.value == alg::CanonicalGroup::free(1));

    Tower tt = constant_tower(torus(), 3);
    auto rt = steenrod_homology(tt, 0, 2);
    CHECK(rt.by_degree[1].value == alg::CanonicalGroup::free(2));
    CHECK(rt.by_degree[2].value == alg::CanonicalGroup::free(1));
}

TEST_CASE("dyadic solenoid: H1 = 0, reduced H0 = 2-adic quotient, Cech H1 = Z[1/2]") {
    Tower t = solenoid_tower(2, 3);
    auto r = steenrod_homology(t, 0, 1);
    CHECK(r.by_degree[1].exact_zero());
    CHECK(r.reduced_h0.tag == alg::GroupResult::Tag::AdicQuotient);
    CHECK(r.reduced_h0.param == 2);
    CHECK(r.non_mittag_leffler);

    auto c = cech_cohomology(t, 1);
    CHECK(c.group.tag == alg::GroupResult::Tag::Localization);
    CHECK(c.group.param == 2);
    CHECK(c.rational_rank == 1);
    REQUIRE(c.elements);
    CHECK(c.elements->equal(c.elements->element(0, {1}), c.elements->element(1, {2})));
    CHECK(cech_cohomology(t, 0).group.value == alg::CanonicalGroup::free(1));
}

TEST_CASE("solenoid family x3 and x6") {
    for (long m : {3L, 6L}) {
        Tower t = solenoid_tower(m, 3);
        auto r = steenrod_homology(t, 1, 1);
        CHECK(r.by_degree[1].exact_zero());
        CHECK(r.reduced_h0.tag == alg::GroupResult::Tag::AdicQuotient);
        CHECK(r.reduced_h0.param == m);
        auto c = cech_cohomology(t, 1);
        CHECK(c.group.tag == alg::GroupResult::Tag::Localization);
        CHECK(c.group.param == m);
    }
}

TEST_CASE("eventually-constant towers with a prefix use the stable level") {
    auto pt = point();
    auto s1 = circle();
    Tower t;
    t.levels = {pt, s1, s1};
    ChainMap collapse = ChainMap::constant_to_vertex(s1, pt, 0);
    t.bondings = {std::move(collapse), ChainMap::identity(s1)};
    t.tail = TailPolicy::constant(1);
    t.validate();
    auto r = steenrod_homology(t, 0, 1);
    CHECK(r.by_degree[0].value == alg::CanonicalGroup::free(1));
    CHECK(r.by_degree[1].value == alg::CanonicalGroup::free(1));
    CHECK(r.provenance == SteenrodResult::Provenance::CrossChecked);
    CHECK(cech_cohomology(t, 1).group.value == alg::CanonicalGroup::free(1));
}

TEST_CASE("truncated towers return Undetermined with the level data attached") {
    Tower t = constant_tower(circle(), 3);
    t.tail = TailPolicy::truncated();
    auto r = steenrod_homology(t, 1, 1);
    CHECK(r.by_degree[1].tag == alg::GroupResult::Tag::Undetermined);
    CHECK(r.by_degree[1].truncation_data.size() == 3);
}

TEST_CASE("chain groups: four modes coincide with cellular chains at depth 0 scale") {
    Tower t = constant_tower(circle(), 3);
    auto kc = chain_group(t, 1, FiltrationMode::KappaChains, 2);
    auto nc = chain_group(t, 1, FiltrationMode::NuChains, 2);
    auto kco = chain_group(t, 1, FiltrationMode::KappaCochains, 2);
    auto nco = chain_group(t, 1, FiltrationMode::NuCochains, 2);
    // point tower: one degree-1 generator per level (the edge) plus one prism
    // slot per level (over the vertex)
    CHECK(kc.level_size(0) == 2);

    using ideals::NatSet;
    using ideals::SemilinearSet;
    auto fin = SemilinearSet::finite_points({{0, 0}, {1, 3}});
    auto stripe = SemilinearSet::rectangle(NatSet::finite({Integer(0)}), NatSet::all());
    auto off_universe = SemilinearSet::rectangle(NatSet::from(5), NatSet::all());
    CHECK(kc.member(fin));
    CHECK(nc.member(fin));
    CHECK(kc.member(stripe));
    CHECK(nc.member(stripe));      // infinite chains are chains
    CHECK(kco.member(fin));
    CHECK(nco.member(fin));
    CHECK_FALSE(kco.member(stripe));  // cochains have finite support
    CHECK_FALSE(nco.member(stripe));
    CHECK_FALSE(kc.member(off_universe));

    // truncated boundary realizes dd = 0
    CHECK((kc.truncated_boundary() * chain_group(t, 2, FiltrationMode::KappaChains, 2)
                                         .truncated_boundary())
              .is_zero());
}

TEST_CASE("telescope_complexes_agree on the constant circle tower") {
    auto tw = std::make_shared<Tower>(constant_tower(circle(), 3));
    auto rep = telescope_complexes_agree(*tw, Restriction::full(tw),
                                         Restriction::empty(tw), 3, 60, 11);
    CHECK(rep.pass());
    CHECK(rep.elements_checked == 60);

    // (full, level-0): identical homology through the range; degree 2 carries
    // the shifted circle class
    index_t v = *tw->level(0)->find("v");
    index_t e = *tw->level(0)->find("e");
    Restriction level0(tw, {{v, e}, {}, {}}, Restriction::Tail::EmptyBeyond);
    auto rep2 = telescope_complexes_agree(*tw, Restriction::full(tw), level0, 3, 40, 13);
    CHECK(rep2.pass());

    // (A, A) is the zero complex both ways
    auto rep3 = telescope_complexes_agree(*tw, Restriction::full(tw), Restriction::full(tw), 2,
                                          20, 17);
    CHECK(rep3.pass());
}

TEST_CASE("skeletal correspondence on constant towers") {
    for (auto k : {circle(), torus()}) {
        Tower t = constant_tower(k, 3);
        auto rep = skeletal_correspondence_check(t, 3);
        CHECK(rep.concentrated);
        CHECK(rep.ranks_match);
        CHECK(rep.boundary_matches);
        CHECK(rep.stabilized_consistent);
        CHECK(rep.pass());
    }
    // point tower: all relative groups vanish outside the skeletal degree
    auto rep = skeletal_correspondence_check(constant_tower(point(), 3), 3);
    CHECK(rep.pass());
    // torus: H_1 stabilizes by skeleton 2
    auto rt = skeletal_correspondence_check(constant_tower(torus(), 2), 2);
    CHECK(rt.stabilization_index[1] <= 2);
}

TEST_CASE("shift iso: H_i of the level equals H_{i+1} of the coned pair") {
    for (auto k : {circle(), torus()}) {
        Tower t = constant_tower(k, 3);
        for (int deg = 0; deg <= k->max_dim(); ++deg) {
            auto iso = telescope_shift_iso(t, deg, 4);
            CHECK(iso.iso.is_isomorphism());
            CHECK(iso.cell_side.group() == k->homology(deg));
        }
    }
}

TEST_CASE("hom-duality spot check on finite truncations") {
    for (auto k : {circle(), torus()}) {
        Tower t = constant_tower(k, 3);
        for (int deg = 0; deg <= k->max_dim(); ++deg)
            CHECK(hom_duality_spot_check(t, deg, 3));
    }
    CHECK(hom_duality_spot_check(solenoid_tower(2, 3), 1, 3));
}

TEST_CASE("solenoid results are independent of the stored truncation depth") {
    for (index_t stored : {index_t(3), index_t(5)}) {
        Tower t = solenoid_tower(2, stored);
        auto r = steenrod_homology(t, 1, 1);
        CHECK(r.by_degree[1].exact_zero());
        CHECK(r.reduced_h0.tag == alg::GroupResult::Tag::AdicQuotient);
        auto c = cech_cohomology(t, 1);
        CHECK(c.group.tag == alg::GroupResult::Tag::Localization);
        CHECK(c.group.param == 2);
        CHECK(c.rational_rank == 1);
    }
}

TEST_CASE("degree-shift identity across the eventually-constant corpus") {
    for (auto k : {point(), circle(), torus()}) {
        Tower t = constant_tower(k, 3);
        auto r = steenrod_homology(t, 0, k->max_dim());
        for (int i = 0; i <= k->max_dim(); ++i) {
            CHECK(r.by_degree[i].tag == alg::GroupResult::Tag::Exact);
            CHECK(r.by_degree[i].value == k->homology(i));
        }
    }
}
