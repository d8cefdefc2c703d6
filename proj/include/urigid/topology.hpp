#pragma once

// Grothendieck topologies on finite categories, their census, the
// double-negation topology and the rigidity test.

#include <urigid/karoubi.hpp>
#include <urigid/sieve.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace urigid {

/// Covering sieves per object, each list in canonical sieve order.
struct Topology {
    std::vector<std::vector<Sieve>> covers;

    const std::vector<Sieve>& on(ObjectId x) const { return covers[idx(x)]; }
    bool covers_sieve(const Sieve& s) const {
        const auto& v = covers[idx(s.base)];
        return std::binary_search(v.begin(), v.end(), s, SieveLess{});
    }
    friend bool operator==(const Topology& a, const Topology& b) { return a.covers == b.covers; }
};

inline Topology make_topology(std::vector<std::vector<Sieve>> covers) {
    for (auto& v : covers) {
        std::sort(v.begin(), v.end(), SieveLess{});
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    return {std::move(covers)};
}

/// Only the maximal sieves cover.
inline Topology trivial_topology(const FinCategory& c) {
    std::vector<std::vector<Sieve>> covers;
    for (ObjectId x : c.objects()) covers.push_back({maximal_sieve(c, x)});
    return make_topology(std::move(covers));
}

/// Every sieve covers.
inline Topology maximal_topology(const FinCategory& c, const SieveCatalog& catalog) {
    std::vector<std::vector<Sieve>> covers;
    for (ObjectId x : c.objects()) covers.push_back(catalog.on(x));
    return make_topology(std::move(covers));
}

/// Intersection of the covering family.
inline Sieve minimal_cover(const FinCategory& c, const Topology& j, ObjectId x) {
    Sieve m = maximal_sieve(c, x);
    for (const Sieve& s : j.on(x)) m.members &= s.members;
    return m;
}

enum class Axiom { WellFormed, Maximality, Stability, Transitivity };

inline std::string_view to_string(Axiom a) {
    switch (a) {
    case Axiom::WellFormed: return "well-formed";
    case Axiom::Maximality: return "maximality";
    case Axiom::Stability: return "stability";
    case Axiom::Transitivity: return "transitivity";
    }
    return "?";
}

struct TopologyVerdict {
    bool ok = true;
    Axiom axiom = Axiom::WellFormed;
    ObjectId object{};
    std::optional<Sieve> sieve;   // the cover S involved
    std::optional<Sieve> other;   // pulled-back sieve (stability) or R (transitivity)
    std::optional<MorphismId> morphism;
};

inline TopologyVerdict is_topology(const FinCategory& c, const Topology& j, const SieveCatalog& catalog) {
    TopologyVerdict v;
    auto fail = [&](Axiom a, ObjectId x) {
        v.ok = false;
        v.axiom = a;
        v.object = x;
        return v;
    };
    if (j.covers.size() != c.object_count()) return fail(Axiom::WellFormed, object_id(0));
    for (ObjectId x : c.objects())
        for (const Sieve& s : j.on(x))
            if (s.base != x || !is_sieve(c, s)) {
                v.sieve = s;
                return fail(Axiom::WellFormed, x);
            }
    for (ObjectId x : c.objects())
        if (!j.covers_sieve(maximal_sieve(c, x))) return fail(Axiom::Maximality, x);
    for (ObjectId x : c.objects())
        for (const Sieve& s : j.on(x))
            for (MorphismId h : c.hom_into(x)) {
                Sieve p = pullback_sieve(c, s, h);
                if (!j.covers_sieve(p)) {
                    v.sieve = s;
                    v.other = p;
                    v.morphism = h;
                    return fail(Axiom::Stability, x);
                }
            }
    for (ObjectId x : c.objects())
        for (const Sieve& s : j.on(x))
            for (const Sieve& r : catalog.on(x)) {
                if (j.covers_sieve(r)) continue;
                bool locally = true;
                for (MorphismId h : members_of(c, s))
                    if (!j.covers_sieve(pullback_sieve(c, r, h))) {
                        locally = false;
                        break;
                    }
                if (locally) {
                    v.sieve = s;
                    v.other = r;
                    return fail(Axiom::Transitivity, x);
                }
            }
    return v;
}

inline TopologyVerdict is_topology(const FinCategory& c, const Topology& j) {
    return is_topology(c, j, SieveCatalog(c));
}

/// Least topology containing `coverage`, by iterating the closure rules to a
/// fixpoint. `coverage[x]` lists extra covering sieves on x (may be empty).
inline Topology generated_topology(const FinCategory& c, const std::vector<std::vector<Sieve>>& coverage,
                                   const SieveCatalog& catalog) {
    const std::size_t n = c.object_count();
    std::vector<std::vector<bool>> in(n);
    for (ObjectId x : c.objects()) {
        in[idx(x)].assign(catalog.on(x).size(), false);
        in[idx(x)][catalog.index_of(maximal_sieve(c, x))] = true;
        if (idx(x) < coverage.size())
            for (const Sieve& s : coverage[idx(x)]) in[idx(x)][catalog.index_of(s)] = true;
    }
    auto covered = [&](const Sieve& s) { return in[idx(s.base)][catalog.index_of(s)]; };

    bool changed = true;
    while (changed) {
        changed = false;
        auto add = [&](const Sieve& s) {
            auto slot = in[idx(s.base)][catalog.index_of(s)];
            if (!slot) {
                slot = true;
                changed = true;
            }
        };
        for (ObjectId x : c.objects()) {
            const auto& sieves = catalog.on(x);
            for (std::size_t i = 0; i < sieves.size(); ++i) {
                if (!in[idx(x)][i]) continue;
                for (const Sieve& t : sieves)
                    if (sieves[i].subset_of(t)) add(t);
                for (MorphismId h : c.hom_into(x)) add(pullback_sieve(c, sieves[i], h));
                for (const Sieve& r : sieves) {
                    if (covered(r)) continue;
                    bool locally = true;
                    for (MorphismId h : members_of(c, sieves[i]))
                        if (!covered(pullback_sieve(c, r, h))) {
                            locally = false;
                            break;
                        }
                    if (locally) add(r);
                }
            }
        }
    }

    std::vector<std::vector<Sieve>> covers(n);
    for (ObjectId x : c.objects()) {
        const auto& sieves = catalog.on(x);
        for (std::size_t i = 0; i < sieves.size(); ++i)
            if (in[idx(x)][i]) covers[idx(x)].push_back(sieves[i]);
    }
    return make_topology(std::move(covers));
}

inline Topology generated_topology(const FinCategory& c, const std::vector<std::vector<Sieve>>& coverage) {
    return generated_topology(c, coverage, SieveCatalog(c));
}

inline constexpr std::uint64_t default_census_budget = std::uint64_t{1} << 20;

/// The topology whose covers on x are the sieves containing generators[x].
inline Topology principal_topology(const FinCategory& c, const std::vector<Sieve>& generators,
                                   const SieveCatalog& catalog) {
    std::vector<std::vector<Sieve>> covers(c.object_count());
    for (ObjectId x : c.objects())
        for (const Sieve& t : catalog.on(x))
            if (generators[idx(x)].subset_of(t)) covers[idx(x)].push_back(t);
    return make_topology(std::move(covers));
}

/// Every Grothendieck topology on `c`.
///
/// On a finite category each J(x) is closed under binary intersection, so it
/// is the principal filter above its least member. The search therefore picks
/// one generator sieve per object (objects in order, sieves in canonical
/// order), prunes with the stability condition h*(m_x) ⊇ m_y against every
/// object already assigned, and checks transitivity at the leaves. Every
/// visited node counts against `budget`; exceeding it throws BudgetExceeded.
inline std::vector<Topology> enumerate_topologies(const FinCategory& c, const SieveCatalog& catalog,
                                                  std::uint64_t budget = default_census_budget) {
    const std::size_t n = c.object_count();
    std::vector<const Sieve*> chosen(n, nullptr);
    std::vector<Topology> out;
    std::uint64_t visited = 0;

    auto stable_with_assigned = [&](std::size_t k) {
        ObjectId xk = object_id(k);
        for (std::size_t j = 0; j <= k; ++j) {
            ObjectId xj = object_id(j);
            for (MorphismId h : c.hom(xk, xj))
                if (!chosen[k]->subset_of(pullback_sieve(c, *chosen[j], h))) return false;
            if (j == k) continue;
            for (MorphismId h : c.hom(xj, xk))
                if (!chosen[j]->subset_of(pullback_sieve(c, *chosen[k], h))) return false;
        }
        return true;
    };
    auto transitive = [&]() {
        for (ObjectId x : c.objects()) {
            const Sieve& m = *chosen[idx(x)];
            auto gens = members_of(c, m);
            for (const Sieve& r : catalog.on(x)) {
                if (m.subset_of(r)) continue;
                bool locally = true;
                for (MorphismId h : gens)
                    if (!chosen[idx(c.dom(h))]->subset_of(pullback_sieve(c, r, h))) {
                        locally = false;
                        break;
                    }
                if (locally) return false;
            }
        }
        return true;
    };

    auto recurse = [&](auto&& self, std::size_t k) -> void {
        if (++visited > budget)
            throw Error(ErrorKind::BudgetExceeded,
                        "topology census exceeded the budget of " + std::to_string(budget) + " candidates");
        if (k == n) {
            if (!transitive()) return;
            std::vector<Sieve> gens;
            for (const Sieve* s : chosen) gens.push_back(*s);
            out.push_back(principal_topology(c, gens, catalog));
            return;
        }
        for (const Sieve& s : catalog.on(object_id(k))) {
            chosen[k] = &s;
            if (stable_with_assigned(k)) self(self, k + 1);
        }
        chosen[k] = nullptr;
    };
    recurse(recurse, 0);
    return out;
}

inline std::vector<Topology> enumerate_topologies(const FinCategory& c,
                                                  std::uint64_t budget = default_census_budget) {
    return enumerate_topologies(c, SieveCatalog(c), budget);
}

/// J(x) = sieves meeting every non-empty sieve on x. Every non-empty sieve
/// contains a principal one, so meeting all principal sieves suffices.
inline Topology double_negation_topology(const FinCategory& c, const SieveCatalog& catalog) {
    std::vector<std::vector<Sieve>> covers(c.object_count());
    for (ObjectId x : c.objects()) {
        std::vector<Sieve> principal;
        for (MorphismId f : c.hom_into(x)) principal.push_back(principal_sieve(c, f));
        for (const Sieve& s : catalog.on(x)) {
            bool dense = std::all_of(principal.begin(), principal.end(),
                                     [&](const Sieve& p) { return s.members.intersects(p.members); });
            if (dense) covers[idx(x)].push_back(s);
        }
    }
    return make_topology(std::move(covers));
}

inline Topology double_negation_topology(const FinCategory& c) { return double_negation_topology(c, SieveCatalog(c)); }

inline std::vector<ObjectId> irreducible_objects(const FinCategory& c, const Topology& j) {
    std::vector<ObjectId> out;
    for (ObjectId x : c.objects())
        if (j.on(x).size() == 1 && j.on(x).front().is_maximal()) out.push_back(x);
    return out;
}

struct RigidityVerdict {
    bool rigid = true;
    std::vector<ObjectId> irreducibles;
    std::vector<Sieve> witnesses;        // per object: sieve generated from irreducible domains
    std::optional<ObjectId> failing_object;
};

/// J(x) is upward closed, so x is covered by irreducibles iff the largest
/// sieve generated from irreducible domains covers.
inline RigidityVerdict is_rigid(const FinCategory& c, const Topology& j) {
    RigidityVerdict v;
    v.irreducibles = irreducible_objects(c, j);
    std::vector<bool> irreducible(c.object_count(), false);
    for (ObjectId x : v.irreducibles) irreducible[idx(x)] = true;
    for (ObjectId x : c.objects()) {
        std::vector<MorphismId> gens;
        for (MorphismId f : c.hom_into(x))
            if (irreducible[idx(c.dom(f))]) gens.push_back(f);
        Sieve s = sieve_generated_by(c, x, gens);
        if (!j.covers_sieve(s) && v.rigid) {
            v.rigid = false;
            v.failing_object = x;
        }
        v.witnesses.push_back(std::move(s));
    }
    return v;
}

struct CensusEntry {
    Topology topology;
    bool rigid = false;
    std::vector<ObjectId> irreducibles;
};

struct CensusReport {
    std::vector<CensusEntry> entries;
    bool all_rigid = true;
    bool injective = true;
    bool cauchy_complete = false;
    std::optional<MorphismId> non_split_idempotent;
    /// Replete Cauchy-complete full subcategories; present when cauchy_complete.
    std::vector<std::vector<ObjectId>> subcategories;
    bool image_matches = false;
    bool bijection_holds = false;
};

/// Maps every topology to its irreducible objects and compares the image
/// with the Cauchy-complete full subcategories. Subsets that are not closed
/// under isomorphism present the same subtopos as their closure and are not
/// counted.
inline CensusReport rigidity_census(const FinCategory& c, std::uint64_t budget = default_census_budget) {
    SieveCatalog catalog(c);
    CensusReport r;
    std::set<std::vector<ObjectId>> image;
    for (auto& t : enumerate_topologies(c, catalog, budget)) {
        auto v = is_rigid(c, t);
        r.all_rigid = r.all_rigid && v.rigid;
        if (!image.insert(v.irreducibles).second) r.injective = false;
        r.entries.push_back({std::move(t), v.rigid, std::move(v.irreducibles)});
    }
    auto cauchy = is_cauchy_complete(c);
    r.cauchy_complete = cauchy.complete;
    r.non_split_idempotent = cauchy.witness;
    if (r.cauchy_complete && c.object_count() <= max_subcategory_objects) {
        for (auto& s : cauchy_complete_full_subcategories(c))
            if (is_replete(c, s)) r.subcategories.push_back(std::move(s));
        std::set<std::vector<ObjectId>> expected(r.subcategories.begin(), r.subcategories.end());
        r.image_matches = image == expected;
    }
    r.bijection_holds = r.all_rigid && r.injective && r.image_matches;
    return r;
}

} // namespace urigid
