#include "thom/instance_io.hpp"

#include <fstream>

#include "json.hpp"

namespace thom::io {

using nlohmann::ordered_json;
using cx::CellComplex;
using cx::ChainMap;
using cx::ComplexPtr;
using ideals::NatSet;
using ideals::SemilinearSet;
using ideals::StepFunction;

namespace {

Integer parse_int(const ordered_json& j, const char* what) {
    if (j.is_number_integer()) return Integer(j.get<long>());
    if (j.is_string()) {
        try {
            return Integer(j.get<std::string>());
        } catch (const std::invalid_argument&) {
        }
    }
    throw SchemaError(std::string("expected a decimal integer for ") + what);
}

index_t parse_index(const ordered_json& j, const char* what) {
    Integer v = parse_int(j, what);
    if (v < 0 || !v.fits_slong_p()) throw SchemaError(std::string("index out of range for ") + what);
    return static_cast<index_t>(v.get_si());
}

std::string int_str(const Integer& v) { return v.get_str(); }

const ordered_json& field(const ordered_json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(std::string("missing field '") + key + "'");
    return *it;
}

// --- complexes ---

CellComplex parse_complex(const ordered_json& j) {
    if (!j.is_object() || !j.contains("cells")) throw SchemaError("complex needs a 'cells' array");
    std::vector<CellComplex::PendingCell> pcs;
    for (const auto& jc : field(j, "cells")) {
        CellComplex::PendingCell pc;
        pc.id = field(jc, "id").get<std::string>();
        pc.dim = static_cast<int>(parse_index(field(jc, "dim"), "dim"));
        if (jc.contains("boundary"))
            for (const auto& jf : jc["boundary"]) {
                if (!jf.is_array() || jf.size() != 2)
                    throw SchemaError("boundary entries are [face-id, coefficient] pairs");
                pc.faces.emplace_back(jf[0].get<std::string>(), parse_int(jf[1], "coefficient"));
            }
        pcs.push_back(std::move(pc));
    }
    CellComplex k;
    try {
        k = CellComplex::build(pcs);
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
    auto rep = k.validate();
    if (!rep.ok()) throw ValidationError(rep.to_string());
    return k;
}

ordered_json complex_json(const CellComplex& k) {
    ordered_json cells = ordered_json::array();
    for (index_t i = 0; i < k.size(); ++i) {
        const auto& c = k.cell(i);
        ordered_json jc;
        jc["id"] = c.id;
        jc["dim"] = c.dim;
        ordered_json bd = ordered_json::array();
        for (const auto& [f, coeff] : c.faces)
            bd.push_back(ordered_json::array({k.cell(f).id, int_str(coeff)}));
        jc["boundary"] = std::move(bd);
        cells.push_back(std::move(jc));
    }
    ordered_json out;
    out["cells"] = std::move(cells);
    return out;
}

// --- step functions, natsets, semilinear expressions ---

StepFunction parse_step_json(const ordered_json& j) {
    std::vector<Integer> table;
    if (j.contains("table"))
        for (const auto& v : j["table"]) table.push_back(parse_int(v, "table entry"));
    Integer slope = j.contains("slope") ? parse_int(j["slope"], "slope") : Integer(0);
    Integer offset = j.contains("offset") ? parse_int(j["offset"], "offset") : Integer(0);
    return {std::move(table), std::move(slope), std::move(offset)};
}

ordered_json step_json(const StepFunction& f) {
    ordered_json out;
    ordered_json table = ordered_json::array();
    for (const auto& v : f.table()) table.push_back(int_str(v));
    out["table"] = std::move(table);
    out["slope"] = int_str(f.slope());
    out["offset"] = int_str(f.offset());
    return out;
}

NatSet parse_natset(const ordered_json& j) {
    std::string kind = field(j, "kind").get<std::string>();
    if (kind == "finite") {
        std::vector<Integer> xs;
        for (const auto& v : field(j, "members")) xs.push_back(parse_int(v, "member"));
        return NatSet::finite(xs);
    }
    if (kind == "cofinite") {
        std::vector<Integer> xs;
        for (const auto& v : field(j, "excluded")) xs.push_back(parse_int(v, "excluded"));
        return NatSet::cofinite(xs);
    }
    if (kind == "from") return NatSet::from(parse_index(field(j, "start"), "start"));
    if (kind == "range")
        return NatSet::range(parse_index(field(j, "lo"), "lo"), parse_index(field(j, "hi"), "hi"));
    if (kind == "all") return NatSet::all();
    if (kind == "periodic") {
        std::vector<bool> word;
        for (const auto& b : field(j, "word")) word.push_back(b.get<bool>());
        NatSet out = NatSet::periodic(parse_index(field(j, "start"), "start"), std::move(word));
        if (j.contains("prefix")) {
            std::vector<Integer> xs;
            for (const auto& v : j["prefix"]) xs.push_back(parse_int(v, "prefix member"));
            out = out.unite(NatSet::finite(xs));
        }
        return out;
    }
    throw SchemaError("unknown natset kind '" + kind + "'");
}

SemilinearSet parse_set_expr(const ordered_json& j, int universe) {
    if (j.contains("op")) {
        std::string op = field(j, "op").get<std::string>();
        const auto& args = field(j, "args");
        if (op == "complement") {
            if (args.size() != 1) throw SchemaError("complement takes one argument");
            return parse_set_expr(args[0], universe).complement();
        }
        if (args.empty()) throw SchemaError("set operation needs arguments");
        SemilinearSet acc = parse_set_expr(args[0], universe);
        for (size_t i = 1; i < args.size(); ++i) {
            SemilinearSet next = parse_set_expr(args[i], universe);
            acc = (op == "union") ? acc.unite(next)
                  : (op == "intersect") ? acc.intersect(next)
                  : (op == "minus") ? acc.minus(next)
                                    : throw SchemaError("unknown set op '" + op + "'");
        }
        return acc;
    }
    std::string region = field(j, "region").get<std::string>();
    if (universe == 1) {
        if (region != "natset") throw SchemaError("one-dimensional sets use 'natset' regions");
        return SemilinearSet(parse_natset(field(j, "set")));
    }
    if (region == "finite-points") {
        std::vector<std::pair<Integer, Integer>> pts;
        for (const auto& p : field(j, "points")) {
            if (!p.is_array() || p.size() != 2) throw SchemaError("points are [i, j] pairs");
            pts.emplace_back(parse_int(p[0], "i"), parse_int(p[1], "j"));
        }
        return SemilinearSet::finite_points(pts);
    }
    if (region == "rectangle")
        return SemilinearSet::rectangle(parse_natset(field(j, "rows")),
                                        parse_natset(field(j, "cols")));
    if (region == "under-graph") return SemilinearSet::under_graph(parse_step_json(field(j, "fn")));
    if (region == "above-graph") return SemilinearSet::above_graph(parse_step_json(field(j, "fn")));
    throw SchemaError("unknown region '" + region + "'");
}

// --- towers ---

std::shared_ptr<tow::Tower> parse_tower(const ordered_json& j) {
    auto t = std::make_shared<tow::Tower>();
    for (const auto& jl : field(j, "levels"))
        t->levels.push_back(std::make_shared<CellComplex>(parse_complex(jl)));
    const auto& jb = field(j, "bondings");
    if (jb.size() + 1 != t->levels.size())
        throw SchemaError("one bonding per consecutive level pair");
    for (size_t i = 0; i < jb.size(); ++i) {
        ChainMap f(t->levels[i + 1], t->levels[i]);
        for (const auto& [src, img] : jb[i].items()) {
            std::vector<std::pair<std::string, Integer>> chain;
            for (const auto& pair : img) {
                if (!pair.is_array() || pair.size() != 2)
                    throw SchemaError("bonding image entries are [cell, coefficient] pairs");
                chain.emplace_back(pair[0].get<std::string>(), parse_int(pair[1], "coefficient"));
            }
            try {
                f.set_image_by_id(src, chain);
            } catch (const std::invalid_argument& e) {
                throw SchemaError(e.what());
            }
        }
        t->bondings.push_back(std::move(f));
    }
    const auto& jt = field(j, "tail");
    std::string policy = field(jt, "policy").get<std::string>();
    if (policy == "truncated") {
        t->tail = tow::TailPolicy::truncated();
    } else if (policy == "eventually-constant") {
        t->tail = tow::TailPolicy::constant(parse_index(field(jt, "from"), "from"));
    } else if (policy == "eventually-periodic") {
        t->tail = tow::TailPolicy::periodic(parse_index(field(jt, "from"), "from"),
                                            parse_index(field(jt, "period"), "period"));
    } else {
        throw SchemaError("unknown tail policy '" + policy + "'");
    }
    try {
        t->validate();
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
    return t;
}

ordered_json tower_json(const tow::Tower& t) {
    ordered_json out;
    out["levels"] = ordered_json::array();
    for (const auto& l : t.levels) out["levels"].push_back(complex_json(*l));
    out["bondings"] = ordered_json::array();
    for (const auto& b : t.bondings) {
        ordered_json jb = ordered_json::object();
        for (index_t c = 0; c < b.source()->size(); ++c) {
            ordered_json img = ordered_json::array();
            for (const auto& [tc, coeff] : b.image(c))
                img.push_back(ordered_json::array({b.target()->cell(tc).id, int_str(coeff)}));
            jb[b.source()->cell(c).id] = std::move(img);
        }
        out["bondings"].push_back(std::move(jb));
    }
    ordered_json jt;
    switch (t.tail.kind) {
        case tow::TailKind::TruncatedUnknown:
            jt["policy"] = "truncated";
            break;
        case tow::TailKind::EventuallyConstant:
            jt["policy"] = "eventually-constant";
            jt["from"] = t.tail.from;
            break;
        case tow::TailKind::EventuallyPeriodic:
            jt["policy"] = "eventually-periodic";
            jt["from"] = t.tail.from;
            jt["period"] = t.tail.period;
            break;
    }
    out["tail"] = std::move(jt);
    return out;
}

// --- patterns ---

kd::PatternElement parse_pattern(const ordered_json& j) {
    const auto& jf = field(j, "family");
    kd::GroupFamily fam;
    fam.universe_dim = static_cast<int>(parse_index(field(jf, "universe"), "universe"));
    alg::CanonicalGroup g;
    g.rank = parse_index(field(jf, "rank"), "rank");
    if (jf.contains("torsion"))
        for (const auto& d : jf["torsion"]) g.torsion.push_back(parse_int(d, "torsion"));
    fam.group = std::move(g);
    kd::PatternElement out(fam);
    for (const auto& jp : field(j, "pieces")) {
        SemilinearSet region = parse_set_expr(field(jp, "region"), fam.universe_dim);
        std::vector<Integer> value;
        for (const auto& v : field(jp, "value")) value.push_back(parse_int(v, "value"));
        out = out.add(kd::PatternElement::piece(fam, region, std::move(value)));
    }
    return out;
}

// --- scattered ---

ax::ScatteredInstance parse_scattered(const ordered_json& j, index_t& count_out) {
    std::string attachment = field(j, "attachment").get<std::string>();
    auto component = std::make_shared<CellComplex>(parse_complex(field(j, "component")));
    std::string basepoint = j.contains("basepoint") ? j["basepoint"].get<std::string>() : "v";
    count_out = j.contains("count") ? parse_index(j["count"], "count") : 10;
    if (attachment == "cluster") return ax::ScatteredInstance::cluster(component, basepoint);
    if (attachment == "disjoint-union") return ax::ScatteredInstance::disjoint_union(component);
    if (attachment == "example-a") return ax::ScatteredInstance::example_a(component, basepoint);
    if (attachment == "example-b") return ax::ScatteredInstance::example_b(component, basepoint);
    throw SchemaError("unknown attachment '" + attachment + "'");
}

}  // namespace

InstanceDocument parse_instance(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    InstanceDocument doc;
    doc.name = j.contains("name") ? j["name"].get<std::string>() : "";
    std::string kind = field(j, "kind").get<std::string>();
    if (kind == "complex") {
        doc.kind = InstanceDocument::Kind::Complex;
        doc.complex = std::make_shared<CellComplex>(parse_complex(j));
    } else if (kind == "pair") {
        doc.kind = InstanceDocument::Kind::Pair;
        auto x = std::make_shared<CellComplex>(parse_complex(field(j, "complex")));
        std::set<index_t> cells;
        for (const auto& id : field(j, "subcomplex")) {
            auto ix = x->find(id.get<std::string>());
            if (!ix) throw SchemaError("subcomplex references unknown cell " + id.get<std::string>());
            cells.insert(*ix);
        }
        try {
            doc.pair = cx::PairPresentation(x, cx::Subcomplex(x, cells));
        } catch (const std::invalid_argument& e) {
            throw ValidationError(e.what());
        }
        doc.complex = x;
    } else if (kind == "tower") {
        doc.kind = InstanceDocument::Kind::Tower;
        doc.tower = parse_tower(j);
    } else if (kind == "scattered") {
        doc.kind = InstanceDocument::Kind::Scattered;
        doc.scattered = parse_scattered(j, doc.scattered_count);
    } else if (kind == "set") {
        doc.kind = InstanceDocument::Kind::Set;
        int universe = static_cast<int>(parse_index(field(j, "universe"), "universe"));
        doc.set = parse_set_expr(field(j, "expr"), universe);
    } else if (kind == "pattern") {
        doc.kind = InstanceDocument::Kind::Pattern;
        doc.pattern = parse_pattern(j);
    } else {
        throw SchemaError("unknown document kind '" + kind + "'");
    }
    return doc;
}

InstanceDocument load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

namespace {

ordered_json natset_json(const NatSet& s) {
    ordered_json out;
    if (s.is_finite()) {
        out["kind"] = "finite";
        ordered_json members = ordered_json::array();
        for (const auto& x : s.elements()) members.push_back(int_str(x));
        out["members"] = std::move(members);
        return out;
    }
    NatSet miss = s.complement();
    if (miss.is_finite()) {
        out["kind"] = "cofinite";
        ordered_json excluded = ordered_json::array();
        for (const auto& x : miss.elements()) excluded.push_back(int_str(x));
        out["excluded"] = std::move(excluded);
        return out;
    }
    out["kind"] = "periodic";
    index_t start = s.tail_from();
    out["start"] = start;
    // minimize the stored period among its divisors; comparing one full word
    // against the candidate is exact
    index_t len = s.period_hint();
    index_t period = len;
    for (index_t p = 1; p < len; ++p) {
        if (len % p != 0) continue;
        bool okp = true;
        for (index_t x = 0; x < len && okp; ++x)
            if (s.contains(Integer(start + x)) != s.contains(Integer(start + x % p))) okp = false;
        if (okp) {
            period = p;
            break;
        }
    }
    ordered_json word = ordered_json::array();
    for (index_t k = 0; k < period; ++k) word.push_back(s.contains(Integer(start + k)));
    out["word"] = std::move(word);
    ordered_json prefix = ordered_json::array();
    for (index_t x = 0; x < start; ++x)
        if (s.contains(Integer(x))) prefix.push_back(int_str(Integer(x)));
    out["prefix"] = std::move(prefix);
    return out;
}

}  // namespace

std::string serialize_instance(const InstanceDocument& doc) {
    ordered_json j;
    if (!doc.name.empty()) j["name"] = doc.name;
    switch (doc.kind) {
        case InstanceDocument::Kind::Complex: {
            j["kind"] = "complex";
            ordered_json body = complex_json(*doc.complex);
            j["cells"] = std::move(body["cells"]);
            break;
        }
        case InstanceDocument::Kind::Pair: {
            j["kind"] = "pair";
            j["complex"] = complex_json(*doc.pair->space);
            ordered_json sub = ordered_json::array();
            for (index_t c : doc.pair->sub.cells()) sub.push_back(doc.pair->space->cell(c).id);
            j["subcomplex"] = std::move(sub);
            break;
        }
        case InstanceDocument::Kind::Tower: {
            j["kind"] = "tower";
            ordered_json body = tower_json(*doc.tower);
            j["levels"] = std::move(body["levels"]);
            j["bondings"] = std::move(body["bondings"]);
            j["tail"] = std::move(body["tail"]);
            break;
        }
        case InstanceDocument::Kind::Scattered: {
            j["kind"] = "scattered";
            const auto& s = *doc.scattered;
            switch (s.attachment) {
                case ax::ScatteredInstance::Attachment::Cluster: j["attachment"] = "cluster"; break;
                case ax::ScatteredInstance::Attachment::DisjointUnion:
                    j["attachment"] = "disjoint-union";
                    break;
                case ax::ScatteredInstance::Attachment::Example10_3a:
                    j["attachment"] = "example-a";
                    break;
                case ax::ScatteredInstance::Attachment::Example10_3b:
                    j["attachment"] = "example-b";
                    break;
            }
            j["component"] = complex_json(*s.component);
            j["basepoint"] = s.basepoint_id;
            j["count"] = doc.scattered_count;
            break;
        }
        case InstanceDocument::Kind::Set: {
            j["kind"] = "set";
            const SemilinearSet& s = *doc.set;
            j["universe"] = s.dim();
            if (s.dim() == 1) {
                ordered_json expr;
                expr["region"] = "natset";
                expr["set"] = natset_json(s.line());
                j["expr"] = std::move(expr);
            } else {
                // canonical emission: union of the band pieces, each written
                // as an intersection of primitive regions
                ordered_json args = ordered_json::array();
                for (const auto& b : s.bands()) {
                    ordered_json parts = ordered_json::array();
                    {
                        ordered_json rect;
                        rect["region"] = "rectangle";
                        ordered_json rows;
                        if (b.excluded_rows.empty()) {
                            rows["kind"] = "all";
                        } else {
                            rows["kind"] = "cofinite";
                            ordered_json ex = ordered_json::array();
                            for (const auto& x : b.excluded_rows) ex.push_back(int_str(x));
                            rows["excluded"] = std::move(ex);
                        }
                        rect["rows"] = std::move(rows);
                        rect["cols"] = natset_json(b.cols);
                        parts.push_back(std::move(rect));
                    }
                    {
                        ordered_json above;
                        above["region"] = "above-graph";
                        above["fn"] = step_json(b.lo);
                        parts.push_back(std::move(above));
                    }
                    if (b.hi) {
                        ordered_json under;
                        under["region"] = "under-graph";
                        under["fn"] = step_json(*b.hi);
                        parts.push_back(std::move(under));
                    }
                    ordered_json inter;
                    inter["op"] = "intersect";
                    inter["args"] = std::move(parts);
                    args.push_back(std::move(inter));
                }
                if (args.empty()) {
                    ordered_json none;
                    none["region"] = "finite-points";
                    none["points"] = ordered_json::array();
                    j["expr"] = std::move(none);
                } else if (args.size() == 1) {
                    j["expr"] = std::move(args[0]);
                } else {
                    ordered_json uni;
                    uni["op"] = "union";
                    uni["args"] = std::move(args);
                    j["expr"] = std::move(uni);
                }
            }
            break;
        }
        case InstanceDocument::Kind::Pattern: {
            j["kind"] = "pattern";
            const auto& g = *doc.pattern;
            ordered_json fam;
            fam["universe"] = g.family().universe_dim;
            fam["rank"] = int_str(Integer(g.family().group.rank));
            ordered_json tors = ordered_json::array();
            for (const auto& d : g.family().group.torsion) tors.push_back(int_str(d));
            fam["torsion"] = std::move(tors);
            j["family"] = std::move(fam);
            ordered_json pieces = ordered_json::array();
            for (const auto& [region, value] : g.pieces()) {
                InstanceDocument tmp;
                tmp.kind = InstanceDocument::Kind::Set;
                tmp.set = region;
                ordered_json piece;
                piece["region"] = ordered_json::parse(serialize_instance(tmp))["expr"];
                ordered_json vals = ordered_json::array();
                for (const auto& v : value) vals.push_back(int_str(v));
                piece["value"] = std::move(vals);
                pieces.push_back(std::move(piece));
            }
            j["pieces"] = std::move(pieces);
            break;
        }
    }
    return j.dump(2) + "\n";
}

ideals::StepFunction parse_step(const std::string& json_text) {
    return parse_step_json(ordered_json::parse(json_text));
}

std::string serialize_complex_json(const cx::CellComplex& k) {
    return complex_json(k).dump(2);
}

}  // namespace thom::io
