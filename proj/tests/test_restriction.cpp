#include "doctest.h"
#include "thom/restriction.hpp"

using namespace thom;
using namespace thom::tow;

namespace {

ComplexPtr circle() {
    // the loop's two incidences to its vertex cancel in the boundary matrix
    // but keep the closure relation visible
    return std::make_shared<CellComplex>(
        CellComplex::build({{"v", 0, {}}, {"e", 1, {{"v", 1}, {"v", -1}}}}));
}

TowerPtr solenoid(long m, index_t n) {
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
    return std::make_shared<Tower>(std::move(t));
}

}  // namespace

TEST_CASE("the all-empty restriction is Both (vacuously in phi)") {
    auto tw = solenoid(2, 3);
    auto r = Restriction::empty(tw);
    auto c = classify_restriction(r);
    CHECK(c.in_kappa);
    CHECK(c.in_nubar);
    CHECK(c.in_phi);
    CHECK(c.summary == RestrictionClass::Both);
}

TEST_CASE("the full solenoid restriction has a vertex thread") {
    auto tw = solenoid(2, 3);
    auto r = Restriction::full(tw);
    auto c = classify_restriction(r);
    CHECK(c.in_kappa);
    CHECK_FALSE(c.in_nubar);
    CHECK(c.summary == RestrictionClass::InKappaPrime);
    REQUIRE_FALSE(c.thread_witness.empty());
    // the thread must be able to run through the vertex
    bool has_vertex = false;
    for (const auto& [lvl, id] : c.thread_witness) {
        (void)lvl;
        if (id == "v") has_vertex = true;
    }
    CHECK(has_vertex);
}

TEST_CASE("restriction empty from level 2 up is in phi") {
    auto tw = solenoid(2, 4);
    index_t v = *tw->level(0)->find("v");
    std::vector<std::set<index_t>> levels = {{v}, {v}, {}, {}};
    Restriction r(tw, levels, Restriction::Tail::EmptyBeyond);
    auto c = classify_restriction(r);
    CHECK(c.in_phi);
    CHECK(c.summary == RestrictionClass::InPhi);
}

TEST_CASE("declared-infinite levels leave kappa' with a witness") {
    auto tw = solenoid(2, 3);
    index_t v = *tw->level(0)->find("v");
    std::vector<std::set<index_t>> levels = {{v}, {v}, {}};
    Restriction r(tw, levels, Restriction::Tail::EmptyBeyond, {false, true, false});
    auto c = classify_restriction(r);
    CHECK_FALSE(c.in_kappa);
    CHECK(c.in_nubar);  // empty beyond level 2
    REQUIRE(c.infinite_level.has_value());
    CHECK(*c.infinite_level == 1);
    CHECK(c.summary == RestrictionClass::InNubarPrime);
}

TEST_CASE("classification is monotone and families are union closed") {
    auto tw = solenoid(2, 3);
    auto full = Restriction::full(tw);
    index_t v = *tw->level(0)->find("v");
    std::vector<std::set<index_t>> vlev = {{v}, {v}, {v}};
    Restriction vertex_thread(tw, vlev, Restriction::Tail::FollowTower);
    CHECK(vertex_thread.subset_of(full));

    auto cf = classify_restriction(full);
    auto cv = classify_restriction(vertex_thread);
    CHECK(cf.in_kappa);
    CHECK(cv.in_kappa);  // sub-restriction of a kappa' member stays in kappa'

    // union of two kappa' members is kappa'
    auto u = vertex_thread.unite(full);
    CHECK(classify_restriction(u).in_kappa);

    // intersection of kappa' and nubar' members lands in phi
    std::vector<std::set<index_t>> empty2up = {{v}, {}, {}};
    Restriction nb(tw, empty2up, Restriction::Tail::EmptyBeyond);
    CHECK(classify_restriction(nb).in_nubar);
    CHECK(classify_restriction(nb.intersect(vertex_thread)).in_phi);
}

TEST_CASE("telescope duality on the solenoid") {
    auto tw = solenoid(2, 3);
    auto full = Restriction::full(tw);
    index_t v = *tw->level(0)->find("v");
    std::vector<Restriction> kappa_sample = {
        Restriction(tw, {{v}, {v}, {v}}, Restriction::Tail::FollowTower),
        Restriction::empty(tw)};
    std::vector<Restriction> nubar_sample = {
        Restriction(tw, {{v}, {}, {}}, Restriction::Tail::EmptyBeyond),
        Restriction::empty(tw)};

    // full restriction: not in nubar' (thread), in kappa'
    auto rep = telescope_duality_check(full, kappa_sample, nubar_sample);
    CHECK(rep.pass());

    // a restriction with an infinite level: duality goes through the
    // constructed "... -> empty -> T_n -> ... -> T_0" witness
    Restriction marked(tw, {{v}, {v}, {}}, Restriction::Tail::EmptyBeyond,
                       {true, false, false});
    auto rep2 = telescope_duality_check(marked, kappa_sample, nubar_sample);
    CHECK(rep2.pass());

    // a phi member passes both directions through the samples
    auto rep3 = telescope_duality_check(nubar_sample[0], kappa_sample, nubar_sample);
    CHECK(rep3.pass());
}

TEST_CASE("filtration families validate their members against their kind") {
    auto tw = solenoid(2, 3);
    index_t v = *tw->level(0)->find("v");
    FiltrationFamily kappa{FiltrationFamily::Kind::KappaPrime,
                           {Restriction::full(tw),
                            Restriction(tw, {{v}, {v}, {v}}, Restriction::Tail::FollowTower)}};
    CHECK(kappa.members_valid());
    FiltrationFamily phi{FiltrationFamily::Kind::Phi,
                         {Restriction(tw, {{v}, {}, {}}, Restriction::Tail::EmptyBeyond),
                          Restriction::empty(tw)}};
    CHECK(phi.members_valid());
    // the full solenoid has a thread, so it is not a nubar' member
    FiltrationFamily bad{FiltrationFamily::Kind::NubarPrime, {Restriction::full(tw)}};
    CHECK_FALSE(bad.members_valid());
}

TEST_CASE("kappa_double_prime closes a thread into its star closure") {
    auto tw = solenoid(2, 3);
    index_t v = *tw->level(0)->find("v");
    Restriction k(tw, {{v}, {v}, {v}}, Restriction::Tail::FollowTower);
    Restriction q = kappa_double_prime(*tw, k);
    // every closed cell of the circle meets the vertex, so q is everything
    for (index_t i = 0; i < 3; ++i) CHECK(q.level_cells(i).size() == 2);
    CHECK(classify_restriction(q).in_kappa);

    // full tower input reproduces the full restriction
    Restriction full = Restriction::full(tw);
    Restriction qf = kappa_double_prime(*tw, full);
    CHECK(qf.level_cells(0) == full.level_cells(0));

    // empty input gives the empty restriction
    Restriction qe = kappa_double_prime(*tw, Restriction::empty(tw));
    CHECK(classify_restriction(qe).summary == RestrictionClass::Both);
}
