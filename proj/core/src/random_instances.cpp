#include "thom/random_instances.hpp"

#include <algorithm>
#include <map>

namespace thom::rnd {

using cx::CellComplex;
using ideals::NatSet;
using ideals::SemilinearSet;
using ideals::StepFunction;

cx::CellComplex random_simplicial_complex(Rng& rng, index_t vertices, int max_dim,
                                          index_t max_facets) {
    index_t v = 1 + draw(rng, vertices);
    std::set<std::vector<index_t>> faces;
    for (index_t i = 0; i < v; ++i) faces.insert({i});
    index_t facets = 1 + draw(rng, max_facets);
    for (index_t f = 0; f < facets; ++f) {
        int dim = 1 + static_cast<int>(draw(rng, max_dim));
        if (dim + 1 > v) dim = static_cast<int>(v) - 1;
        if (dim < 1) continue;
        std::set<index_t> pick;
        while (static_cast<int>(pick.size()) < dim + 1) pick.insert(draw(rng, v));
        std::vector<index_t> facet(pick.begin(), pick.end());
        // downward closure: every subset is a face
        index_t subsets = static_cast<index_t>(1) << facet.size();
        for (index_t mask = 1; mask < subsets; ++mask) {
            std::vector<index_t> sub;
            for (size_t b = 0; b < facet.size(); ++b)
                if (mask & (static_cast<index_t>(1) << b)) sub.push_back(facet[b]);
            faces.insert(std::move(sub));
        }
    }
    auto name = [](const std::vector<index_t>& f) {
        std::string s = "s";
        for (index_t x : f) s += "." + std::to_string(x);
        return s;
    };
    std::vector<CellComplex::PendingCell> pcs;
    for (const auto& f : faces) {
        CellComplex::PendingCell pc{name(f), static_cast<int>(f.size()) - 1, {}};
        for (size_t omit = 0; omit < f.size() && f.size() > 1; ++omit) {
            std::vector<index_t> face;
            for (size_t i = 0; i < f.size(); ++i)
                if (i != omit) face.push_back(f[i]);
            pc.faces.emplace_back(name(face), (omit % 2 == 0) ? 1 : -1);
        }
        pcs.push_back(std::move(pc));
    }
    return CellComplex::build(pcs);
}

cx::CellComplex relabel(const cx::CellComplex& k, Rng& rng) {
    std::vector<std::string> names;
    for (index_t i = 0; i < k.size(); ++i) names.push_back("c" + std::to_string(i));
    std::shuffle(names.begin(), names.end(), rng);
    std::vector<CellComplex::PendingCell> pcs;
    for (index_t i = 0; i < k.size(); ++i) {
        const auto& c = k.cell(i);
        CellComplex::PendingCell pc{names[static_cast<size_t>(i)], c.dim, {}};
        for (const auto& [f, coeff] : c.faces)
            pc.faces.emplace_back(names[static_cast<size_t>(f)], coeff);
        pcs.push_back(std::move(pc));
    }
    std::shuffle(pcs.begin(), pcs.end(), rng);
    return CellComplex::build(pcs);
}

StepFunction random_step(Rng& rng) {
    std::vector<Integer> table;
    for (index_t k = 0, n = draw(rng, 4); k < n; ++k) table.emplace_back(draw(rng, 8));
    return {std::move(table), draw(rng, 3), draw(rng, 6)};
}

SemilinearSet random_region(Rng& rng) {
    switch (draw(rng, 5)) {
        case 0: {
            std::vector<std::pair<Integer, Integer>> pts;
            for (index_t k = 0, n = draw(rng, 5); k < n; ++k)
                pts.emplace_back(draw(rng, 10), draw(rng, 10));
            return SemilinearSet::finite_points(pts);
        }
        case 1: {
            NatSet rows = (draw(rng, 2) == 0)
                              ? NatSet::finite({Integer(draw(rng, 6)), Integer(draw(rng, 6))})
                              : NatSet::cofinite({Integer(draw(rng, 6))});
            NatSet cols;
            switch (draw(rng, 3)) {
                case 0: cols = NatSet::finite({Integer(draw(rng, 8))}); break;
                case 1: cols = NatSet::from(draw(rng, 5)); break;
                default: cols = NatSet::range(draw(rng, 4), draw(rng, 10)); break;
            }
            return SemilinearSet::rectangle(std::move(rows), std::move(cols));
        }
        case 2:
            return SemilinearSet::under_graph(random_step(rng));
        case 3:
            return SemilinearSet::above_graph(random_step(rng));
        default:
            return SemilinearSet::under_graph(random_step(rng))
                .intersect(SemilinearSet::above_graph(random_step(rng)));
    }
}

SemilinearSet random_semilinear(Rng& rng, int depth) {
    if (depth == 0) return random_region(rng);
    switch (draw(rng, 4)) {
        case 0: return random_semilinear(rng, depth - 1).unite(random_semilinear(rng, depth - 1));
        case 1:
            return random_semilinear(rng, depth - 1).intersect(random_semilinear(rng, depth - 1));
        case 2: return random_semilinear(rng, depth - 1).complement();
        default: return random_region(rng);
    }
}

kd::PatternElement random_pattern(Rng& rng, const kd::GroupFamily& fam) {
    kd::PatternElement out(fam);
    index_t gens = alg::GroupPresentation::of(fam.group).generators();
    for (index_t piece = 0, n = 1 + draw(rng, 2); piece < n; ++piece) {
        std::vector<Integer> v(static_cast<size_t>(gens), Integer(0));
        for (auto& x : v) x = draw(rng, 7) - 3;
        SemilinearSet supp = fam.universe_dim == 2
                                 ? random_semilinear(rng, 1)
                                 : SemilinearSet((draw(rng, 2) == 0)
                                                     ? NatSet::finite({Integer(draw(rng, 9))})
                                                     : NatSet::from(draw(rng, 5)));
        out = out.add(kd::PatternElement::piece(fam, supp, std::move(v)));
    }
    return out;
}

tow::Tower constant_tower(cx::ComplexPtr k, index_t stored_levels) {
    tow::Tower t;
    for (index_t i = 0; i < stored_levels; ++i) t.levels.push_back(k);
    for (index_t i = 0; i + 1 < stored_levels; ++i)
        t.bondings.push_back(cx::ChainMap::identity(k));
    t.tail = tow::TailPolicy::constant(0);
    return t;
}

cx::PairPresentation random_pair(Rng& rng, index_t vertices, int max_dim, index_t max_facets) {
    auto k = std::make_shared<CellComplex>(
        random_simplicial_complex(rng, vertices, max_dim, max_facets));
    // random face-closed subset: close a random cell sample
    std::set<index_t> seed_cells;
    for (index_t i = 0, n = draw(rng, k->size() + 1); i < n; ++i)
        seed_cells.insert(draw(rng, k->size()));
    return {k, cx::Subcomplex(k, k->closure(seed_cells))};
}

}  // namespace thom::rnd
