#include "thom/corpus.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "thom/random_instances.hpp"

namespace thom::io {

using cx::CellComplex;
using cx::ChainMap;
using cx::ComplexPtr;
using ideals::NatSet;
using ideals::SemilinearSet;
using ideals::StepFunction;

namespace {

ComplexPtr point_complex() {
    return std::make_shared<CellComplex>(CellComplex::build({{"v", 0, {}}}));
}

ComplexPtr circle_complex() {
    return std::make_shared<CellComplex>(
        CellComplex::build({{"v", 0, {}}, {"e", 1, {{"v", 1}, {"v", -1}}}}));
}

ComplexPtr torus_complex() {
    return std::make_shared<CellComplex>(
        CellComplex::build({{"v", 0, {}}, {"a", 1, {}}, {"b", 1, {}}, {"f", 2, {}}}));
}

ComplexPtr disk_complex() {
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

InstanceDocument complex_doc(std::string name, ComplexPtr k) {
    InstanceDocument d;
    d.kind = InstanceDocument::Kind::Complex;
    d.name = std::move(name);
    d.complex = std::move(k);
    return d;
}

InstanceDocument tower_doc(std::string name, std::shared_ptr<tow::Tower> t) {
    InstanceDocument d;
    d.kind = InstanceDocument::Kind::Tower;
    d.name = std::move(name);
    d.tower = std::move(t);
    return d;
}

std::shared_ptr<tow::Tower> solenoid_tower(long m) {
    auto s1 = circle_complex();
    auto t = std::make_shared<tow::Tower>();
    for (int i = 0; i < 3; ++i) t->levels.push_back(s1);
    for (int i = 0; i < 2; ++i) {
        ChainMap f(s1, s1);
        f.set_image(*s1->find("v"), {{*s1->find("v"), 1}});
        f.set_image(*s1->find("e"), {{*s1->find("e"), m}});
        t->bondings.push_back(std::move(f));
    }
    t->tail = tow::TailPolicy::periodic(0, 1);
    return t;
}

std::shared_ptr<tow::Tower> constant_tower_of(ComplexPtr k) {
    auto t = std::make_shared<tow::Tower>(rnd::constant_tower(std::move(k), 2));
    return t;
}

InstanceDocument scattered_doc(std::string name, ax::ScatteredInstance s, index_t count) {
    InstanceDocument d;
    d.kind = InstanceDocument::Kind::Scattered;
    d.name = std::move(name);
    d.scattered = std::move(s);
    d.scattered_count = count;
    return d;
}

InstanceDocument pattern_doc(std::string name, kd::PatternElement g) {
    InstanceDocument d;
    d.kind = InstanceDocument::Kind::Pattern;
    d.name = std::move(name);
    d.pattern = std::move(g);
    return d;
}

InstanceDocument set_doc(std::string name, SemilinearSet s) {
    InstanceDocument d;
    d.kind = InstanceDocument::Kind::Set;
    d.name = std::move(name);
    d.set = std::move(s);
    return d;
}

}  // namespace

Corpus::Corpus(std::string override_dir) : dir_(std::move(override_dir)) {
    if (dir_.empty()) {
        if (const char* env = std::getenv("THOM_CORPUS_DIR")) dir_ = env;
    }
    auto put = [&](const InstanceDocument& doc) { builtin_[doc.name] = serialize_instance(doc); };

    put(complex_doc("point", point_complex()));
    put(complex_doc("circle", circle_complex()));
    put(complex_doc("torus", torus_complex()));
    put(complex_doc("disk", disk_complex()));

    {
        InstanceDocument d;
        d.kind = InstanceDocument::Kind::Pair;
        d.name = "disk-circle-pair";
        auto x = disk_complex();
        d.pair = cx::PairPresentation(
            x, cx::Subcomplex(x, x->closure({*x->find("e01"), *x->find("e12"), *x->find("e02")})));
        d.complex = x;
        put(d);
    }

    put(tower_doc("solenoid2", solenoid_tower(2)));
    put(tower_doc("solenoid3", solenoid_tower(3)));
    put(tower_doc("solenoid6", solenoid_tower(6)));
    put(tower_doc("circle-tower", constant_tower_of(circle_complex())));
    put(tower_doc("torus-tower", constant_tower_of(torus_complex())));
    put(tower_doc("point-tower", constant_tower_of(point_complex())));

    for (index_t n : {index_t(10), index_t(25), index_t(50)})
        put(scattered_doc("cluster" + std::to_string(n),
                          ax::ScatteredInstance::cluster(circle_complex(), "v"), n));
    put(scattered_doc("disjoint-union10",
                      ax::ScatteredInstance::disjoint_union(circle_complex()), 10));
    put(scattered_doc("example-a", ax::ScatteredInstance::example_a(circle_complex(), "v"), 9));
    put(scattered_doc("example-b", ax::ScatteredInstance::example_b(circle_complex(), "v"), 9));

    {
        auto w = kd::strictness_witnesses();
        put(pattern_doc("witness-finite", w.w0));
        put(pattern_doc("witness-column", w.w1));
        put(pattern_doc("witness-diagonal", w.w2));
        put(pattern_doc("witness-cofinite", w.w3));
    }

    put(set_doc("diagonal-set", SemilinearSet::under_graph(StepFunction::identity())
                                    .intersect(SemilinearSet::above_graph(StepFunction::identity()))));

    // a deliberately corrupted complex: dd != 0 at the face
    builtin_["corrupted"] = std::string(R"({
  "kind": "complex",
  "name": "corrupted",
  "cells": [
    {"id": "v0", "dim": 0, "boundary": []},
    {"id": "v1", "dim": 0, "boundary": []},
    {"id": "e", "dim": 1, "boundary": [["v1", "1"], ["v0", "-1"]]},
    {"id": "e2", "dim": 1, "boundary": [["v1", "1"], ["v1", "1"]]},
    {"id": "f", "dim": 2, "boundary": [["e", "1"], ["e2", "-1"]]}
  ]
})") + "\n";
}

std::vector<std::string> Corpus::names() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : builtin_) {
        (void)v;
        out.push_back(k);
    }
    return out;
}

bool Corpus::has(const std::string& name) const { return builtin_.count(name) > 0; }

InstanceDocument Corpus::get(const std::string& name) const {
    if (!dir_.empty()) {
        std::filesystem::path p = std::filesystem::path(dir_) / (name + ".json");
        if (std::filesystem::exists(p)) return load_instance(p.string());
    }
    auto it = builtin_.find(name);
    if (it == builtin_.end()) throw SchemaError("no corpus instance named '" + name + "'");
    return parse_instance(it->second);
}

void Corpus::export_all(const std::string& dir) const {
    std::filesystem::create_directories(dir);
    for (const auto& [name, text] : builtin_) {
        std::ofstream out(std::filesystem::path(dir) / (name + ".json"));
        out << text;
    }
}

std::vector<cx::PairPresentation> Corpus::axiom_pairs() const {
    std::vector<cx::PairPresentation> out;
    // classics
    out.push_back(get("disk-circle-pair").pair.value());
    {
        auto d = get("disk").complex;
        out.emplace_back(d, cx::Subcomplex::full(d));
        out.push_back(cx::PairPresentation::absolute(d));
        out.emplace_back(d, cx::Subcomplex(d, d->closure({*d->find("e01")})));
        out.emplace_back(d, cx::Subcomplex(d, {*d->find("v0")}));
    }
    {
        auto t = get("torus").complex;
        out.push_back(cx::PairPresentation::absolute(t));
        out.emplace_back(t, cx::Subcomplex(t, t->closure({*t->find("a")})));
    }
    // deterministic random pairs
    rnd::Rng rng(20260809u);
    while (out.size() < 22) out.push_back(rnd::random_pair(rng, 6, 2, 5));
    return out;
}

}  // namespace thom::io
