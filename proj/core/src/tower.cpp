#include "thom/tower.hpp"

namespace thom::tow {

ComplexPtr Tower::level(index_t i) const {
    if (i < stored_levels()) return levels[static_cast<size_t>(i)];
    switch (tail.kind) {
        case TailKind::TruncatedUnknown:
            throw DepthUnavailable("level beyond truncated tower");
        case TailKind::EventuallyConstant:
            return levels.back();
        case TailKind::EventuallyPeriodic:
            return levels[static_cast<size_t>(tail.from + (i - tail.from) % tail.period)];
    }
    throw std::logic_error("bad tail kind");
}

ChainMap Tower::bonding(index_t i) const {
    if (i < static_cast<index_t>(bondings.size())) return bondings[static_cast<size_t>(i)];
    switch (tail.kind) {
        case TailKind::TruncatedUnknown:
            throw DepthUnavailable("bonding beyond truncated tower");
        case TailKind::EventuallyConstant:
            return ChainMap::identity(levels.back());
        case TailKind::EventuallyPeriodic: {
            index_t pos = tail.from + (i - tail.from) % tail.period;
            if (pos >= static_cast<index_t>(bondings.size()))
                throw DepthUnavailable("periodic block not fully stored");
            return bondings[static_cast<size_t>(pos)];
        }
    }
    throw std::logic_error("bad tail kind");
}

void Tower::validate() const {
    if (levels.empty()) throw std::invalid_argument("tower needs at least one level");
    if (static_cast<index_t>(bondings.size()) + 1 != stored_levels())
        throw std::invalid_argument("tower needs one bonding per consecutive level pair");
    for (index_t i = 0; i < stored_levels(); ++i) {
        auto rep = levels[static_cast<size_t>(i)]->validate();
        if (!rep.ok())
            throw std::invalid_argument("level " + std::to_string(i) +
                                        " is not a chain complex: " + rep.to_string());
    }
    for (index_t i = 0; i + 1 < stored_levels(); ++i) {
        const ChainMap& b = bondings[static_cast<size_t>(i)];
        if (b.source() != levels[static_cast<size_t>(i + 1)] ||
            b.target() != levels[static_cast<size_t>(i)])
            throw std::invalid_argument("bonding " + std::to_string(i) + " connects wrong levels");
        b.require_chain_map();
    }
    if (tail.kind == TailKind::EventuallyConstant && tail.from >= stored_levels())
        throw std::invalid_argument("EventuallyConstant: 'from' level not stored");
    if (tail.kind == TailKind::EventuallyPeriodic) {
        if (tail.period < 1) throw std::invalid_argument("period must be >= 1");
        if (stored_levels() < tail.from + tail.period + 1)
            throw std::invalid_argument("EventuallyPeriodic: repeating block not fully stored");
        // block endpoints must carry the same complex so the block can repeat
        if (level(tail.from) != level(tail.from + tail.period)) {
            const CellComplex &a = *level(tail.from), &b = *level(tail.from + tail.period);
            if (a.size() != b.size())
                throw std::invalid_argument("EventuallyPeriodic: block endpoints differ");
            for (index_t c = 0; c < a.size(); ++c)
                if (a.cell(c).id != b.cell(c).id || a.cell(c).dim != b.cell(c).dim ||
                    a.cell(c).faces != b.cell(c).faces)
                    throw std::invalid_argument("EventuallyPeriodic: block endpoints differ");
        }
    }
}

alg::GroupTower Tower::homology_tower(int n) const {
    validate();
    alg::GroupTower gt;
    gt.tail = tail;
    std::vector<alg::HomologyData> data;
    index_t count = stored_levels();
    for (index_t i = 0; i < count; ++i) {
        data.push_back(level(i)->homology_data(n));
        gt.levels.push_back(data.back().pres);
    }
    for (index_t i = 0; i + 1 < count; ++i)
        gt.bondings.push_back(alg::induced_on_homology(
            data[static_cast<size_t>(i + 1)], data[static_cast<size_t>(i)],
            bonding(i).matrix(n)));
    return gt;
}

alg::GroupTower Tower::cohomology_tower(int n) const {
    validate();
    alg::GroupTower gt;
    gt.tail = tail;
    gt.reversed = true;
    auto codata = [&](index_t i) {
        const CellComplex& k = *level(i);
        return alg::homology_data(k.boundary_matrix(n + 1).transposed(),
                                  k.boundary_matrix(n).transposed());
    };
    std::vector<alg::HomologyData> data;
    index_t count = stored_levels();
    for (index_t i = 0; i < count; ++i) {
        data.push_back(codata(i));
        gt.levels.push_back(data.back().pres);
    }
    for (index_t i = 0; i + 1 < count; ++i)
        gt.bondings.push_back(alg::induced_on_homology(
            data[static_cast<size_t>(i)], data[static_cast<size_t>(i + 1)],
            bonding(i).matrix(n).transposed()));
    return gt;
}

namespace {

std::string level_name(index_t i, const std::string& id) {
    return "L" + std::to_string(i) + ":" + id;
}
std::string prism_name(index_t i, const std::string& id) {
    return "P" + std::to_string(i) + ":" + id;
}

Telescope assemble(const Tower& t, index_t depth, bool coned) {
    t.validate();
    if (t.tail.kind == TailKind::TruncatedUnknown && depth >= t.stored_levels())
        throw DepthUnavailable("telescope depth beyond truncated tower");

    std::vector<CellComplex::PendingCell> pcs;
    std::vector<Telescope::Gen> gens;

    for (index_t i = 0; i <= depth; ++i) {
        const CellComplex& k = *t.level(i);
        for (index_t c = 0; c < k.size(); ++c) {
            CellComplex::PendingCell pc{level_name(i, k.cell(c).id), k.cell(c).dim, {}};
            for (const auto& [f, coeff] : k.cell(c).faces)
                pc.faces.emplace_back(level_name(i, k.cell(f).id), coeff);
            pcs.push_back(std::move(pc));
            gens.push_back({i, false, c});
        }
    }
    index_t prism_top = coned ? depth : depth - 1;
    for (index_t i = 0; i <= prism_top && i <= depth; ++i) {
        const CellComplex& upper = *t.level(i + 1);
        ChainMap p = t.bonding(i);
        for (index_t c = 0; c < upper.size(); ++c) {
            // d(prism s) = p(s) - s - prism(ds); the coned top level drops
            // the s term together with the whole level above
            CellComplex::PendingCell pc{prism_name(i, upper.cell(c).id),
                                        upper.cell(c).dim + 1, {}};
            for (const auto& [tc, coeff] : p.image(c))
                pc.faces.emplace_back(level_name(i, t.level(i)->cell(tc).id), coeff);
            if (!(coned && i == depth))
                pc.faces.emplace_back(level_name(i + 1, upper.cell(c).id), -1);
            for (const auto& [f, coeff] : upper.cell(c).faces)
                pc.faces.emplace_back(prism_name(i, upper.cell(f).id), -coeff);
            pcs.push_back(std::move(pc));
            gens.push_back({i, true, c});
        }
    }

    Telescope tel;
    tel.depth = depth;
    tel.coned = coned;
    tel.complex = std::make_shared<CellComplex>(CellComplex::build(pcs));
    tel.gens = std::move(gens);

    auto rep = tel.complex->validate();
    if (!rep.ok()) throw std::logic_error("telescope assembly broke dd=0: " + rep.to_string());

    if (!coned) {
        // collapse to level 0 along the composite bondings
        ChainMap collapse(tel.complex, t.level(0));
        std::vector<ChainMap> to_zero;  // composite from level i down to 0
        to_zero.push_back(ChainMap::identity(t.level(0)));
        for (index_t i = 1; i <= depth; ++i)
            to_zero.push_back(to_zero.back().after(t.bonding(i - 1)));
        for (index_t g = 0; g < tel.complex->size(); ++g) {
            const auto& info = tel.gens[static_cast<size_t>(g)];
            if (info.prism) {
                collapse.set_image(g, {});
            } else {
                std::vector<std::pair<index_t, Integer>> img;
                for (const auto& [c, coeff] : to_zero[static_cast<size_t>(info.level)].image(info.cell))
                    img.emplace_back(c, coeff);
                collapse.set_image(g, std::move(img));
            }
        }
        collapse.require_chain_map();
        tel.collapse = std::move(collapse);
    }
    return tel;
}

}  // namespace

std::optional<index_t> Telescope::find_level_cell(index_t level, index_t cell) const {
    for (index_t g = 0; g < static_cast<index_t>(gens.size()); ++g) {
        const auto& info = gens[static_cast<size_t>(g)];
        if (!info.prism && info.level == level && info.cell == cell) return g;
    }
    return std::nullopt;
}

std::set<index_t> Telescope::level_zero_cells() const {
    std::set<index_t> out;
    for (index_t g = 0; g < static_cast<index_t>(gens.size()); ++g)
        if (!gens[static_cast<size_t>(g)].prism && gens[static_cast<size_t>(g)].level == 0)
            out.insert(g);
    return out;
}

std::set<index_t> Telescope::skeleton_cells(int k) const {
    std::set<index_t> out;
    for (index_t g = 0; g < complex->size(); ++g)
        if (complex->cell(g).dim <= k) out.insert(g);
    return out;
}

Telescope build_telescope(const Tower& t, index_t depth) { return assemble(t, depth, false); }

Telescope coned_telescope(const Tower& t, index_t depth) { return assemble(t, depth, true); }

}  // namespace thom::tow
