#include "doctest.h"
#include "thom/corpus.hpp"

using namespace thom;
using namespace thom::io;

TEST_CASE("instance round trip: parse -> serialize -> parse is the identity") {
    Corpus corpus;
    for (const auto& name : corpus.names()) {
        if (name == "corrupted") continue;
        CAPTURE(name);
        InstanceDocument doc = corpus.get(name);
        std::string once = serialize_instance(doc);
        InstanceDocument doc2 = parse_instance(once);
        std::string twice = serialize_instance(doc2);
        CHECK(once == twice);
        CHECK(doc.kind == doc2.kind);
    }
}

TEST_CASE("semantic round trip for sets and patterns") {
    Corpus corpus;
    auto diag = corpus.get("diagonal-set");
    REQUIRE(diag.set.has_value());
    auto diag2 = parse_instance(serialize_instance(diag));
    CHECK(diag.set->same_set(*diag2.set));

    auto w2 = corpus.get("witness-diagonal");
    REQUIRE(w2.pattern.has_value());
    auto w2b = parse_instance(serialize_instance(w2));
    CHECK(w2.pattern->support().same_set(w2b.pattern->support()));
    for (Integer i = 0; i < 8; ++i)
        for (Integer j = 0; j < 8; ++j)
            CHECK(w2.pattern->value_at(i, j) == w2b.pattern->value_at(i, j));
}

TEST_CASE("tower documents rebuild working towers") {
    Corpus corpus;
    auto doc = corpus.get("solenoid2");
    REQUIRE(doc.tower);
    auto r = sc::steenrod_homology(*doc.tower, 1, 1);
    CHECK(r.by_degree[1].exact_zero());
    auto doc2 = parse_instance(serialize_instance(doc));
    auto r2 = sc::steenrod_homology(*doc2.tower, 1, 1);
    CHECK(r2.by_degree[1].exact_zero());
}

TEST_CASE("schema errors versus validation errors") {
    CHECK_THROWS_AS(parse_instance("{"), SchemaError);
    CHECK_THROWS_AS(parse_instance(R"({"kind":"widget"})"), SchemaError);
    CHECK_THROWS_AS(parse_instance(R"({"kind":"complex","cells":[{"id":"x"}]})"), SchemaError);
    // structurally well-formed but dd != 0
    Corpus corpus;
    CHECK_THROWS_AS(corpus.get("corrupted"), ValidationError);
    try {
        corpus.get("corrupted");
    } catch (const ValidationError& e) {
        std::string what = e.what();
        CHECK(what.find("f") != std::string::npos);  // names the offending cell
    }
}

TEST_CASE("decimal-string integers of arbitrary size survive") {
    std::string big = "123456789012345678901234567890";
    std::string doc = R"({"kind":"complex","cells":[
        {"id":"v","dim":0,"boundary":[]},
        {"id":"e","dim":1,"boundary":[["v", ")" + big + R"("],["v","-)" + big + R"("]]}]})";
    auto parsed = parse_instance(doc);
    auto round = serialize_instance(parsed);
    CHECK(round.find(big) != std::string::npos);
}

TEST_CASE("report renderings agree and are deterministic") {
    Report rep;
    rep.command = "verify duality --trials 3 --seed 9";
    rep.seed = 9;
    rep.add("duality", true, "3/3");
    rep.groups["H1"] = "Z^2";
    std::string t1 = rep.render_text(), t2 = rep.render_text();
    std::string j1 = rep.render_json(), j2 = rep.render_json();
    CHECK(t1 == t2);
    CHECK(j1 == j2);
    CHECK(t1.find("[PASS] duality") != std::string::npos);
    CHECK(j1.find("\"pass\": true") != std::string::npos);
    // timing stays zeroed unless requested
    rep.timing_ms = 1234;
    CHECK(rep.render_text().find("timing_ms = 0") != std::string::npos);
    rep.include_timing = true;
    CHECK(rep.render_text().find("timing_ms = 1234") != std::string::npos);
}

TEST_CASE("corpus export and env-dir override") {
    Corpus corpus;
    std::string dir = "/tmp/thom-corpus-test";
    corpus.export_all(dir);
    Corpus overridden(dir);
    auto a = corpus.get("circle"), b = overridden.get("circle");
    CHECK(serialize_instance(a) == serialize_instance(b));
}
