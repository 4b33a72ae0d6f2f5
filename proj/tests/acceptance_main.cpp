// Acceptance suite: one criterion per block, one pass/fail line each, with
// the stated deadlines enforced. Exits nonzero on any failure.

#include <chrono>
#include <iostream>

#include "thom/corpus.hpp"
#include "thom/exchange.hpp"
#include "thom/random_instances.hpp"

using namespace thom;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, const std::string& what, bool pass, Clock::time_point from,
            long budget_ms) {
    long ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - from).count();
    bool in_time = budget_ms <= 0 || ms <= budget_ms;
    if (!pass || !in_time) ++failures;
    std::cout << ((pass && in_time) ? "[PASS] " : "[FAIL] ") << "criterion " << criterion << ": "
              << what << " (" << ms << " ms" << (in_time ? "" : ", over budget") << ")\n";
}

// 1. uniqueness cross-check on >= 10 random complexes (<= 200 cells)
void criterion1() {
    auto t0 = Clock::now();
    rnd::Rng rng(108u);
    std::vector<ax::UniquenessInstance> corpus;
    bool sizes_ok = true;
    for (int i = 0; i < 10; ++i) {
        auto k = std::make_shared<cx::CellComplex>(rnd::random_simplicial_complex(rng, 10, 3, 12));
        while (k->size() > 200)
            k = std::make_shared<cx::CellComplex>(rnd::random_simplicial_complex(rng, 10, 3, 12));
        sizes_ok = sizes_ok && k->size() <= 200;
        corpus.push_back({rnd::constant_tower(k, 2), std::nullopt, std::nullopt,
                          "random" + std::to_string(i)});
    }
    {
        io::Corpus c;
        auto s1 = c.get("circle").complex;
        cx::ChainMap deg2(s1, s1);
        deg2.set_image(*s1->find("v"), {{*s1->find("v"), 1}});
        deg2.set_image(*s1->find("e"), {{*s1->find("e"), 2}});
        corpus.push_back({rnd::constant_tower(s1, 2), rnd::constant_tower(s1, 2), std::move(deg2),
                          "circle-deg2"});
    }
    auto rep = ax::uniqueness_cross_check(corpus, 3);
    if (!rep.pass()) std::cout << "  detail: " << rep.detail << "\n";
    report(1, "TelescopeSteenrod = DirectCellular on " + std::to_string(rep.instances) +
                  " towers, all degrees, with the degree shift",
           rep.pass() && sizes_ok && rep.instances >= 10, t0, 60000);
}

// 2. solenoid family
void criterion2() {
    auto t0 = Clock::now();
    io::Corpus corpus;
    bool ok = true;
    for (long m : {2L, 3L, 6L}) {
        auto doc = corpus.get("solenoid" + std::to_string(m));
        auto st = sc::steenrod_homology(*doc.tower, 0, 1);
        ok = ok && st.by_degree[1].exact_zero();
        ok = ok && st.reduced_h0.tag == alg::GroupResult::Tag::AdicQuotient &&
             st.reduced_h0.param == m;
        ok = ok && st.non_mittag_leffler;
        auto ch = sc::cech_cohomology(*doc.tower, 1);
        ok = ok && ch.group.tag == alg::GroupResult::Tag::Localization && ch.group.param == m;
        ok = ok && ch.rational_rank == 1;
        ok = ok && ch.elements &&
             ch.elements->equal(ch.elements->element(0, {1}), ch.elements->element(1, {m}));
    }
    report(2, "x2/x3/x6 solenoids: Steenrod H1 = 0, reduced H0 = m-adic quotient "
              "(non-Mittag-Leffler), Cech H^1 = Z[1/m] of rational rank 1 with the "
              "element identity",
           ok, t0, 5000);
}

// 3. discrete duality, 1000 seeded trials per instance pairing
void criterion3() {
    auto t0 = Clock::now();
    rnd::Rng rng(31u);
    auto a = ideals::example_a_instance();
    auto b = ideals::example_b_instance();
    index_t pass = 0;
    const index_t trials = 1000;
    for (index_t t = 0; t < trials; ++t) {
        ideals::SemilinearSet s = rnd::random_semilinear(rng);
        if (ideals::duality_check(s, a.kappa, a.nubar).pass() &&
            ideals::duality_check(s, b.kappa, b.nubar).pass())
            ++pass;
    }
    report(3, "discrete duality biconditionals with constructive witnesses: " +
                  std::to_string(pass) + "/" + std::to_string(trials) + " seeded sets, both instances",
           pass == trials, t0, 10000);
}

// 4. chi equality and strictness witnesses
void criterion4() {
    auto t0 = Clock::now();
    rnd::Rng rng(47u);
    kd::GroupFamily fam{2, alg::CanonicalGroup::free(1), std::nullopt};
    auto a = ideals::example_a_instance();
    auto b = ideals::example_b_instance();
    index_t pass = 0;
    const index_t trials = 500;
    for (index_t t = 0; t < trials; ++t) {
        kd::PatternElement g = rnd::random_pattern(rng, fam);
        if (kd::chi_check(g, a.kappa, a.nubar).pass() && kd::chi_check(g, b.kappa, b.nubar).pass())
            ++pass;
    }
    auto w = kd::strictness_witnesses();
    report(4, "chi membership equality on " + std::to_string(pass) + "/" + std::to_string(trials) +
                  " pattern elements; strictness witnesses certify the three strict inclusions",
           pass == trials && w.verified, t0, 0);
}

// 5. controlled additivity at 10/25/50 components
void criterion5() {
    auto t0 = Clock::now();
    io::Corpus corpus;
    bool ok = true;
    auto circle = corpus.get("circle").complex;
    const ax::ScatteredInstance instances[] = {
        ax::ScatteredInstance::cluster(circle, "v"),
        ax::ScatteredInstance::disjoint_union(circle),
        ax::ScatteredInstance::example_a(circle, "v"),
        ax::ScatteredInstance::example_b(circle, "v"),
    };
    for (const auto& inst : instances)
        for (index_t n : {index_t(10), index_t(25), index_t(50)}) {
            auto rep = ax::check_controlled_additivity(inst, 1, n, 5);
            if (!rep.pass())
                std::cout << "  " << inst.name << "@" << n << ": " << rep.detail << "\n";
            ok = ok && rep.pass();
        }
    report(5, "controlled additivity: phi^K products, psi_F duals, assembled membership and "
              "dual form for all four attachments at 10/25/50 components",
           ok, t0, 30000);
}

// 6. chain-level correspondences
void criterion6() {
    auto t0 = Clock::now();
    io::Corpus corpus;
    bool ok = true;
    for (const char* name : {"circle-tower", "torus-tower"}) {
        auto doc = corpus.get(name);
        auto tw = std::make_shared<tow::Tower>(*doc.tower);
        auto agree = sc::telescope_complexes_agree(*tw, tow::Restriction::full(tw),
                                                   tow::Restriction::empty(tw), 3, 100, 23);
        ok = ok && agree.pass() && agree.elements_checked >= 100;
        auto skel = sc::skeletal_correspondence_check(*doc.tower, 3);
        if (!skel.pass()) std::cout << "  " << name << ": " << skel.detail << "\n";
        ok = ok && skel.pass();
    }
    report(6, "KappaChains = NuChains on 100 sampled elements per instance; triple boundary "
              "matrices match the chain model entrywise; skeletal stabilization indices "
              "consistent",
           ok, t0, 0);
}

// 7. exchange isomorphism on per-index x2 towers
void criterion7() {
    auto t0 = Clock::now();
    rnd::Rng rng(12u);
    alg::GroupPresentation z(1);
    alg::IntMatrix two(1, 1);
    two.set(0, 0, 2);
    alg::GroupTower gt;
    gt.levels = {z, z, z};
    gt.bondings = {alg::GroupMap(z, z, two), alg::GroupMap(z, z, two)};
    gt.tail = alg::TailPolicy::periodic(0, 1);
    gt.reversed = true;
    kd::GroupFamily fam{1, alg::CanonicalGroup::free(1), std::move(gt)};
    std::vector<kd::ExchangeSample> samples;
    for (int k = 0; k < 20; ++k) {
        ideals::StepFunction level =
            (k % 3 == 0) ? ideals::StepFunction::identity()
            : (k % 3 == 1)
                ? ideals::StepFunction::constant(static_cast<long>(rng() % 4))
                : ideals::StepFunction({1, 3}, 1, static_cast<long>(rng() % 3));
        ideals::NatSet region =
            (k % 2) ? ideals::NatSet::all() : ideals::NatSet::from(rnd::draw(rng, 5));
        samples.push_back({std::move(level),
                           kd::PatternElement::piece(fam, ideals::SemilinearSet(region),
                                                     {Integer(rnd::draw(rng, 9)) - 4})});
    }
    auto rep = kd::exchange_iso_check(fam, samples);
    report(7, "exchange map injective on 20 sampled (f, element) pairs; inverse level-merge at "
              "h >= max(f, g) succeeds for every sample",
           rep.pass() && rep.samples == 20, t0, 0);
}

// 8. axiom suite on the bundled pair corpus
void criterion8() {
    auto t0 = Clock::now();
    io::Corpus corpus;
    auto pairs = corpus.axiom_pairs();
    bool ok = pairs.size() >= 20;
    for (const auto& p : pairs)
        if (!ax::check_exactness(p, 0, p.space->max_dim()).pass) ok = false;
    {
        auto d = corpus.get("disk").complex;
        std::vector<ax::ExcisionInstance> exc;
        exc.push_back({cx::PairPresentation(d, cx::Subcomplex::full(d)), {*d->find("f")},
                       "disk/face"});
        exc.push_back({corpus.get("disk-circle-pair").pair.value(), {}, "identity"});
        auto er = ax::check_excision_and_dimension(exc);
        ok = ok && er.pass();
    }
    for (const auto& p : pairs)
        if (!p.sub.cells().empty() && !ax::check_strong_excision(p).pass) ok = false;
    bool rejected = false;
    std::string diag;
    try {
        corpus.get("corrupted");
    } catch (const io::ValidationError& e) {
        rejected = true;
        diag = e.what();
    }
    ok = ok && rejected && diag.find("f") != std::string::npos;
    report(8, "exactness, excision, strong excision, dimension on " +
                  std::to_string(pairs.size()) +
                  " bundled pairs; corrupted instance rejected with cell-level diagnostics",
           ok, t0, 0);
}

}  // namespace

int main() {
    auto t0 = Clock::now();
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    long total = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
    std::cout << (failures == 0 ? "ACCEPTANCE: all criteria pass" : "ACCEPTANCE: FAILURES")
              << " (" << total << " ms total)\n";
    return failures == 0 ? 0 : 1;
}
