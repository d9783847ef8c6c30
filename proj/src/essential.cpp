#include "essx/essential.hpp"

#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

namespace essx {

Submodule socle(const FgModule& m) {
    const auto& moduli = m.coordinate_moduli();
    std::vector<std::vector<Int>> gen_cols;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        if (moduli[i] < 2) continue;
        std::vector<Int> unit(m.generators());
        for (const auto& [p, e] : factorize(moduli[i])) {
            unit[i] = moduli[i] / p;
            gen_cols.push_back(m.from_canonical().apply(unit));
        }
    }
    IntMatrix gens(m.generators(), gen_cols.size());
    for (std::size_t j = 0; j < gen_cols.size(); ++j)
        for (std::size_t i = 0; i < m.generators(); ++i) gens.at(i, j) = gen_cols[j][i];
    return submodule_from_generators(m, gens);
}

bool is_essential(const Submodule& s) {
    if (s.source.free_rank() != s.ambient.free_rank()) return false;
    Submodule soc = socle(s.ambient);
    return preimage_columns(s, soc.embedding.matrix()).has_value();
}

bool is_essential_in(const Submodule& s, const Submodule& outer) {
    auto restricted = restrict_submodule(s, outer);
    if (!restricted) return false;
    return is_essential(*restricted);
}

namespace {

std::string coord_key(const std::vector<Int>& v) {
    std::ostringstream os;
    for (const Int& x : v) os << x.str() << ";";
    return os.str();
}

}  // namespace

bool essential_oracle(const Submodule& s) {
    const FgModule& m = s.ambient;
    if (!m.is_finite()) throw InfiniteModule("essential_oracle requires a finite ambient module");

    std::set<std::string> member;
    for (const ModElement& y : enumerate_elements(s.source))
        member.insert(coord_key(s.embedding.apply(y).coords()));

    for (const ModElement& x : enumerate_elements(m)) {
        if (x.is_zero()) continue;
        Int ord = *x.order();
        bool meets = false;
        ModElement mult = x;
        for (Int k = 1; k < ord; ++k) {
            if (member.count(coord_key(mult.coords()))) {
                meets = true;
                break;
            }
            mult = mult + x;
        }
        if (!meets) return false;
    }
    return true;
}

namespace {

void partitions_rec(long long n, long long max_part, std::vector<long long>& cur,
                    std::vector<std::vector<long long>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (long long p = std::min(n, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions_rec(n - p, p, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<long long>> partitions(long long n) {
    std::vector<std::vector<long long>> out;
    std::vector<long long> cur;
    partitions_rec(n, n, cur, out);
    return out;
}

}  // namespace

std::vector<FgModule> abelian_group_types(long long max_order) {
    std::vector<FgModule> out;
    for (long long n = 1; n <= max_order; ++n) {
        std::vector<std::vector<std::vector<Int>>> per_prime;  // prime -> choice -> cyclic orders
        for (const auto& [p, e] : factorize(Int(n))) {
            std::vector<std::vector<Int>> choices;
            for (const auto& part : partitions(e)) {
                std::vector<Int> orders;
                for (long long lambda : part) {
                    Int pk = 1;
                    for (long long i = 0; i < lambda; ++i) pk *= p;
                    orders.push_back(pk);
                }
                choices.push_back(orders);
            }
            per_prime.push_back(choices);
        }
        std::vector<std::vector<Int>> combos{{}};
        for (const auto& choices : per_prime) {
            std::vector<std::vector<Int>> next;
            for (const auto& base : combos)
                for (const auto& c : choices) {
                    auto merged = base;
                    merged.insert(merged.end(), c.begin(), c.end());
                    next.push_back(merged);
                }
            combos = std::move(next);
        }
        for (const auto& cyclics : combos) out.push_back(FgModule::from_invariants(cyclics, 0));
    }
    return out;
}

namespace {

struct Mask {
    std::uint64_t lo = 0, hi = 0;
    bool test(std::size_t i) const { return i < 64 ? (lo >> i) & 1 : (hi >> (i - 64)) & 1; }
    void set(std::size_t i) {
        if (i < 64)
            lo |= std::uint64_t(1) << i;
        else
            hi |= std::uint64_t(1) << (i - 64);
    }
    bool operator<(const Mask& o) const { return lo != o.lo ? lo < o.lo : hi < o.hi; }
    bool operator==(const Mask& o) const { return lo == o.lo && hi == o.hi; }
};

struct ElementTable {
    std::vector<ModElement> elems;
    std::vector<std::vector<std::size_t>> add;
    std::size_t zero_idx = 0;

    explicit ElementTable(const FgModule& m) {
        elems = enumerate_elements(m);
        std::map<std::string, std::size_t> index;
        for (std::size_t i = 0; i < elems.size(); ++i) {
            index[coord_key(elems[i].coords())] = i;
            if (elems[i].is_zero()) zero_idx = i;
        }
        add.assign(elems.size(), std::vector<std::size_t>(elems.size()));
        for (std::size_t i = 0; i < elems.size(); ++i)
            for (std::size_t j = i; j < elems.size(); ++j) {
                std::size_t k = index.at(coord_key((elems[i] + elems[j]).coords()));
                add[i][j] = k;
                add[j][i] = k;
            }
    }

    Mask shift(const Mask& mask, std::size_t x) const {
        Mask out;
        for (std::size_t i = 0; i < elems.size(); ++i)
            if (mask.test(i)) out.set(add[i][x]);
        return out;
    }

    // subgroup mask extended by one element (mask must already be a subgroup)
    Mask close_with(const Mask& mask, std::size_t e) const {
        Mask out;
        std::size_t cur = zero_idx;
        do {
            Mask sh = shift(mask, cur);
            out.lo |= sh.lo;
            out.hi |= sh.hi;
            cur = add[cur][e];
        } while (cur != zero_idx);
        return out;
    }

    IntMatrix gen_matrix(const FgModule& m, const std::vector<std::size_t>& gen_idx) const {
        IntMatrix g(m.generators(), gen_idx.size());
        for (std::size_t j = 0; j < gen_idx.size(); ++j)
            for (std::size_t i = 0; i < m.generators(); ++i)
                g.at(i, j) = elems[gen_idx[j]].coords()[i];
        return g;
    }
};

}  // namespace

SubgroupCorpus subgroup_corpus(const FgModule& m, std::uint64_t seed) {
    if (!m.is_finite()) throw InfiniteModule("subgroup_corpus requires a finite module");
    Int order = m.order();
    if (order > 128) throw Error("subgroup_corpus is desk-scale (order <= 128)");

    SubgroupCorpus out;
    ElementTable table(m);
    std::size_t n = table.elems.size();

    if (order <= 64) {
        out.exhaustive = true;
        std::map<Mask, std::vector<std::size_t>> seen;
        Mask trivial;
        trivial.set(table.zero_idx);
        seen.emplace(trivial, std::vector<std::size_t>{});
        std::vector<Mask> queue{trivial};
        while (!queue.empty()) {
            Mask mask = queue.back();
            queue.pop_back();
            std::vector<std::size_t> gens = seen.at(mask);
            for (std::size_t e = 0; e < n; ++e) {
                if (mask.test(e)) continue;
                Mask bigger = table.close_with(mask, e);
                auto it = seen.find(bigger);
                if (it == seen.end()) {
                    auto g = gens;
                    g.push_back(e);
                    seen.emplace(bigger, g);
                    queue.push_back(bigger);
                }
            }
        }
        for (const auto& [mask, gens] : seen)
            out.subgroups.push_back(submodule_from_generators(m, table.gen_matrix(m, gens)));
        return out;
    }

    // sampled corpus: cyclic subgroups, random endomorphism images, joins
    std::mt19937_64 rng(seed);
    std::set<Mask> seen;
    auto add_gens = [&](const std::vector<std::size_t>& gens) {
        Mask mask;
        mask.set(table.zero_idx);
        for (std::size_t e : gens)
            if (!mask.test(e)) mask = table.close_with(mask, e);
        if (seen.insert(mask).second)
            out.subgroups.push_back(submodule_from_generators(m, table.gen_matrix(m, gens)));
    };
    add_gens({});
    for (std::size_t e = 0; e < n; ++e) add_gens({e});
    for (int i = 0; i < 40; ++i) {
        std::size_t a = rng() % n, b = rng() % n;
        add_gens({a, b});
    }
    HomModule endo(m, m);
    for (int i = 0; i < 20; ++i) {
        std::vector<Int> coords(endo.group().generators());
        for (Int& c : coords) c = Int(rng() % 97);
        ModMorphism f = endo.evaluate(ModElement(endo.group(), coords));
        Submodule img = image(f);
        std::vector<std::size_t> gens;
        Mask mask;
        mask.set(table.zero_idx);
        for (std::size_t j = 0; j < img.embedding.matrix().cols(); ++j) {
            ModElement g(m, img.embedding.matrix().col_vector(j));
            for (std::size_t e = 0; e < n; ++e)
                if (table.elems[e] == g && !mask.test(e)) {
                    mask = table.close_with(mask, e);
                    gens.push_back(e);
                    break;
                }
        }
        add_gens(gens);
    }
    return out;
}

}  // namespace essx
