#include <chrono>
#include <iostream>

#include "CLI11.hpp"
#include "thom/corpus.hpp"
#include "thom/exchange.hpp"
#include "thom/random_instances.hpp"

using namespace thom;

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitSchema = 2;
constexpr int kExitValidation = 3;
constexpr int kExitUnsupported = 4;

struct Options {
    std::string degree = "0..2";
    std::string coeffs = "Z";
    index_t depth = 3;
    std::uint64_t seed = 1;
    index_t trials = 100;
    std::string format = "text";
    bool timings = false;
};

std::pair<int, int> parse_degree_range(const std::string& s) {
    auto dots = s.find("..");
    if (dots == std::string::npos) {
        int d = std::stoi(s);
        return {d, d};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
}

cx::Coefficients parse_coeffs(const std::string& s) {
    if (s == "Z" || s == "z") return cx::Coefficients::Z();
    if (s.rfind("Z/", 0) == 0 || s.rfind("z/", 0) == 0)
        return cx::Coefficients::mod(Integer(s.substr(2)));
    throw io::SchemaError("coefficients must be Z or Z/m");
}

int emit(io::Report& rep, const Options& opt,
         std::chrono::steady_clock::time_point started) {
    rep.include_timing = opt.timings;
    rep.timing_ms = static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                          std::chrono::steady_clock::now() - started)
                                          .count());
    rep.seed = opt.seed;
    std::cout << (opt.format == "json" ? rep.render_json() : rep.render_text());
    return rep.all_pass() ? 0 : kExitCheckFailed;
}

io::InstanceDocument load(const std::string& path_or_name, const io::Corpus& corpus) {
    if (corpus.has(path_or_name)) return corpus.get(path_or_name);
    return io::load_instance(path_or_name);
}

int cmd_homology(const std::string& file, const Options& opt, bool cohomology) {
    auto started = std::chrono::steady_clock::now();
    io::Corpus corpus;
    io::InstanceDocument doc = load(file, corpus);
    auto [lo, hi] = parse_degree_range(opt.degree);
    cx::Coefficients c = parse_coeffs(opt.coeffs);
    io::Report rep;
    rep.command = std::string(cohomology ? "cohomology " : "homology ") + file +
                  " --degree " + opt.degree + " --coeffs " + opt.coeffs;
    for (int n = lo; n <= hi; ++n) {
        std::string key = (cohomology ? "H^" : "H") + std::to_string(n);
        alg::CanonicalGroup g;
        if (doc.kind == io::InstanceDocument::Kind::Complex) {
            g = cohomology ? doc.complex->cohomology(n, c) : doc.complex->homology(n, c);
        } else if (doc.kind == io::InstanceDocument::Kind::Pair) {
            g = cohomology ? doc.pair->relative_cohomology(n, c)
                           : doc.pair->relative_homology(n, c);
        } else {
            throw io::SchemaError("homology commands take a complex or pair document");
        }
        rep.groups[key] = g.to_string();
    }
    return emit(rep, opt, started);
}

int cmd_steenrod(const std::string& file, const Options& opt) {
    auto started = std::chrono::steady_clock::now();
    io::Corpus corpus;
    io::InstanceDocument doc = load(file, corpus);
    if (doc.kind != io::InstanceDocument::Kind::Tower)
        throw io::SchemaError("steenrod takes a tower document");
    auto [lo, hi] = parse_degree_range(opt.degree);
    io::Report rep;
    rep.command = "steenrod " + file + " --degree " + opt.degree;
    sc::SteenrodResult r;
    try {
        r = sc::steenrod_homology(*doc.tower, lo, hi);
    } catch (const alg::UnsupportedBonding& e) {
        // report the per-level truncated groups alongside the failure
        for (int n = lo; n <= hi; ++n)
            for (index_t l = 0; l < doc.tower->stored_levels(); ++l)
                rep.groups["level" + std::to_string(l) + ".H" + std::to_string(n)] =
                    doc.tower->level(l)->homology(n).to_string();
        rep.add("unsupported bonding", false, e.what());
        rep.include_timing = opt.timings;
        rep.seed = opt.seed;
        std::cout << (opt.format == "json" ? rep.render_json() : rep.render_text());
        std::cerr << "unsupported bonding: " << e.what() << "\n";
        return kExitUnsupported;
    }
    for (int n = lo; n <= hi; ++n) rep.groups["H" + std::to_string(n)] = r.by_degree[n].to_string();
    rep.groups["reduced-H0"] = r.reduced_h0.to_string();
    switch (r.provenance) {
        case sc::SteenrodResult::Provenance::TelescopeExact:
            rep.add("provenance", true, "telescope-exact");
            break;
        case sc::SteenrodResult::Provenance::MilnorOracle:
            rep.add("provenance", true, "milnor-oracle");
            break;
        case sc::SteenrodResult::Provenance::CrossChecked:
            rep.add("provenance", true, "cross-checked");
            break;
    }
    rep.add("non-mittag-leffler", true, r.non_mittag_leffler ? "yes" : "no");
    return emit(rep, opt, started);
}

int cmd_cech(const std::string& file, const Options& opt) {
    auto started = std::chrono::steady_clock::now();
    io::Corpus corpus;
    io::InstanceDocument doc = load(file, corpus);
    if (doc.kind != io::InstanceDocument::Kind::Tower)
        throw io::SchemaError("cech takes a tower document");
    auto [lo, hi] = parse_degree_range(opt.degree);
    io::Report rep;
    rep.command = "cech " + file + " --degree " + opt.degree;
    for (int n = lo; n <= hi; ++n) {
        auto r = sc::cech_cohomology(*doc.tower, n);
        rep.groups["H^" + std::to_string(n)] = r.group.to_string();
        if (r.group.tag == alg::GroupResult::Tag::Localization)
            rep.add("rational-rank H^" + std::to_string(n), true,
                    std::to_string(r.rational_rank));
    }
    return emit(rep, opt, started);
}

// ---- verify suites ----

void verify_duality(io::Report& rep, index_t trials, std::uint64_t seed) {
    rnd::Rng rng(seed);
    auto a = ideals::example_a_instance();
    auto b = ideals::example_b_instance();
    index_t pass = 0;
    std::string counterexample;
    for (index_t t = 0; t < trials; ++t) {
        ideals::SemilinearSet s = rnd::random_semilinear(rng);
        bool ok = ideals::duality_check(s, a.kappa, a.nubar).pass() &&
                  ideals::duality_check(s, b.kappa, b.nubar).pass();
        if (ok)
            ++pass;
        else if (counterexample.empty())
            counterexample = "trial " + std::to_string(t) + ": " + s.to_string();
    }
    rep.add("duality: " + std::to_string(pass) + "/" + std::to_string(trials) + " trials",
            pass == trials, trials == 0 ? "vacuous (0 trials)" : "", counterexample);
}

void verify_chi(io::Report& rep, index_t trials, std::uint64_t seed) {
    rnd::Rng rng(seed);
    kd::GroupFamily fam{2, alg::CanonicalGroup::free(1), std::nullopt};
    auto a = ideals::example_a_instance();
    auto b = ideals::example_b_instance();
    index_t pass = 0;
    std::string counterexample;
    for (index_t t = 0; t < trials; ++t) {
        kd::PatternElement g = rnd::random_pattern(rng, fam);
        bool ok = kd::chi_check(g, a.kappa, a.nubar).pass() &&
                  kd::chi_check(g, b.kappa, b.nubar).pass();
        if (ok)
            ++pass;
        else if (counterexample.empty())
            counterexample = "trial " + std::to_string(t);
    }
    rep.add("chi: " + std::to_string(pass) + "/" + std::to_string(trials) + " trials",
            pass == trials, trials == 0 ? "vacuous (0 trials)" : "", counterexample);
    auto w = kd::strictness_witnesses();
    rep.add("strictness witnesses certify strict inclusions", w.verified);
}

void verify_axioms(io::Report& rep) {
    io::Corpus corpus;
    auto pairs = corpus.axiom_pairs();
    bool exact = true;
    for (const auto& p : pairs)
        if (!ax::check_exactness(p, 0, p.space->max_dim()).pass) exact = false;
    rep.add("exactness on " + std::to_string(pairs.size()) + " pairs", exact);

    std::vector<ax::ExcisionInstance> exc;
    {
        auto d = corpus.get("disk").complex;
        exc.push_back({cx::PairPresentation(d, cx::Subcomplex::full(d)), {*d->find("f")},
                       "disk/face"});
        exc.push_back({corpus.get("disk-circle-pair").pair.value(), {}, "disk/identity"});
    }
    auto er = ax::check_excision_and_dimension(exc);
    rep.add("excision", er.excision_ok);
    rep.add("dimension axiom", er.dimension_ok);

    bool strong = true;
    for (const auto& p : pairs)
        if (!p.sub.cells().empty() && !ax::check_strong_excision(p).pass) strong = false;
    rep.add("strong excision (quotient collapses)", strong);

    bool rejected = false;
    std::string diag;
    try {
        corpus.get("corrupted");
    } catch (const io::ValidationError& e) {
        rejected = true;
        diag = e.what();
    }
    rep.add("corrupted instance rejected with diagnostics", rejected, "", diag);
}

void verify_exchange(io::Report& rep, index_t trials, std::uint64_t seed) {
    rnd::Rng rng(seed);
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
    index_t n = std::max<index_t>(trials, 2);
    for (index_t k = 0; k < n; ++k) {
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
    auto r = kd::exchange_iso_check(fam, samples);
    rep.add("exchange: injectivity on " + std::to_string(r.pairs_compared) + " pairs",
            r.injective_on_samples);
    rep.add("exchange: inverse reconstruction on " + std::to_string(r.samples) + " samples",
            r.inverse_reconstruction_ok);
}

void verify_uniqueness(io::Report& rep, std::uint64_t seed) {
    io::Corpus corpus;
    std::vector<ax::UniquenessInstance> insts;
    for (const std::string& name : {"point", "circle", "torus", "disk"})
        insts.push_back(
            {rnd::constant_tower(corpus.get(name).complex, 2), std::nullopt, std::nullopt, name});
    rnd::Rng rng(seed);
    for (int t = 0; t < 6; ++t) {
        auto k = std::make_shared<cx::CellComplex>(rnd::random_simplicial_complex(rng, 7, 2, 6));
        insts.push_back({rnd::constant_tower(k, 2), std::nullopt, std::nullopt,
                         "random" + std::to_string(t)});
    }
    {
        auto s1 = corpus.get("circle").complex;
        cx::ChainMap deg2(s1, s1);
        deg2.set_image(*s1->find("v"), {{*s1->find("v"), 1}});
        deg2.set_image(*s1->find("e"), {{*s1->find("e"), 2}});
        insts.push_back({rnd::constant_tower(s1, 2), rnd::constant_tower(s1, 2), std::move(deg2),
                         "circle-deg2"});
    }
    auto r = ax::uniqueness_cross_check(insts, 3);
    rep.add("uniqueness: groups agree on " + std::to_string(r.instances) + " instances",
            r.groups_agree, "", r.detail);
    rep.add("uniqueness: identification natural", r.natural);
}

int cmd_verify(const std::string& suite, const Options& opt) {
    auto started = std::chrono::steady_clock::now();
    io::Report rep;
    rep.command = "verify " + suite + " --trials " + std::to_string(opt.trials) + " --seed " +
                  std::to_string(opt.seed);
    if (suite == "duality" || suite == "all") verify_duality(rep, opt.trials, opt.seed);
    if (suite == "chi" || suite == "all") verify_chi(rep, opt.trials, opt.seed);
    if (suite == "axioms" || suite == "all") verify_axioms(rep);
    if (suite == "exchange" || suite == "all")
        verify_exchange(rep, std::min<index_t>(opt.trials, 20), opt.seed);
    if (suite == "uniqueness" || suite == "all") verify_uniqueness(rep, opt.seed);
    if (rep.checks.empty()) throw io::SchemaError("unknown suite '" + suite + "'");
    return emit(rep, opt, started);
}

int cmd_corpus(const std::string& action, const std::string& arg, const Options& opt) {
    auto started = std::chrono::steady_clock::now();
    io::Corpus corpus;
    if (action == "list") {
        io::Report rep;
        rep.command = "corpus list";
        for (const auto& n : corpus.names()) rep.add(n, true);
        return emit(rep, opt, started);
    }
    if (action == "show") {
        std::cout << io::serialize_instance(corpus.get(arg));
        return 0;
    }
    if (action == "export") {
        corpus.export_all(arg);
        io::Report rep;
        rep.command = "corpus export " + arg;
        rep.add("exported " + std::to_string(corpus.names().size()) + " instances", true);
        return emit(rep, opt, started);
    }
    throw io::SchemaError("corpus actions: list | show <name> | export <dir>");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Steenrod-Sitnikov homology and Cech cohomology of towers"};
    app.require_subcommand(1);
    Options opt;

    std::string file, suite = "all", corpus_action = "list", corpus_arg;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--degree", opt.degree, "degree or range a..b");
        cmd->add_option("--coeffs", opt.coeffs, "Z or Z/m");
        cmd->add_option("--depth", opt.depth, "telescope truncation depth");
        cmd->add_option("--seed", opt.seed, "randomization seed");
        cmd->add_option("--trials", opt.trials, "randomized trial count");
        cmd->add_option("--format", opt.format, "text or json");
        cmd->add_flag("--timings", opt.timings, "include wall-clock timing in reports");
    };

    CLI::App* homology = app.add_subcommand("homology", "homology of a complex or pair");
    homology->add_option("file", file, "instance file or corpus name")->required();
    add_common(homology);
    CLI::App* cohomology = app.add_subcommand("cohomology", "cohomology of a complex or pair");
    cohomology->add_option("file", file)->required();
    add_common(cohomology);
    CLI::App* steenrod = app.add_subcommand("steenrod", "Steenrod-Sitnikov homology of a tower");
    steenrod->add_option("file", file)->required();
    add_common(steenrod);
    CLI::App* cech = app.add_subcommand("cech", "Cech cohomology of a tower");
    cech->add_option("file", file)->required();
    add_common(cech);
    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "duality|chi|axioms|exchange|uniqueness|all");
    add_common(verify);
    CLI::App* corpus = app.add_subcommand("corpus", "bundled corpus management");
    corpus->add_option("action", corpus_action, "list|show|export");
    corpus->add_option("arg", corpus_arg, "instance name or export directory");
    add_common(corpus);

    CLI11_PARSE(app, argc, argv);

    try {
        if (homology->parsed()) return cmd_homology(file, opt, false);
        if (cohomology->parsed()) return cmd_homology(file, opt, true);
        if (steenrod->parsed()) return cmd_steenrod(file, opt);
        if (cech->parsed()) return cmd_cech(file, opt);
        if (verify->parsed()) return cmd_verify(suite, opt);
        if (corpus->parsed()) return cmd_corpus(corpus_action, corpus_arg, opt);
    } catch (const io::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const io::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitSchema;
    } catch (const alg::UnsupportedBonding& e) {
        std::cerr << "unsupported bonding: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return 0;
}
