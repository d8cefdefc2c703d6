#pragma once

// Local characterisation of universal rigidity: Cauchy-completeness,
// Artinian slice reflections and enough idempotents on the left in every
// endomorphism monoid. Also the cleaning procedure, the constructive
// irreducible cover and the degree criterion.

#include <urigid/karoubi.hpp>
#include <urigid/topology.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace urigid {

/// The unique idempotent among f, f^2, f^3, ...
inline std::size_t idempotent_power(const MonoidTable& m, std::size_t f) {
    // Walk the powers until one repeats; the idempotent sits on the cycle.
    std::vector<std::size_t> first_seen(m.size(), 0);
    std::vector<std::size_t> powers;
    std::size_t p = f;
    for (std::size_t n = 1; first_seen[p] == 0; ++n) {
        first_seen[p] = n;
        powers.push_back(p);
        p = m.product(p, f);
    }
    for (std::size_t i = first_seen[p] - 1; i < powers.size(); ++i)
        if (m.is_idempotent(powers[i])) return powers[i];
    return p; // unreachable for a valid table
}

struct LeftIdempotentWitness {
    std::size_t element = 0;
    std::optional<std::size_t> left_inverse; // g with g·f = 1
    std::optional<std::size_t> idempotent;   // e != 1 with e·f^n = f^n
    std::size_t exponent = 0;
};

struct EnoughIdempotentsVerdict {
    bool ok = true;
    std::vector<LeftIdempotentWitness> witnesses; // one per element
    std::optional<std::size_t> failing_element;
};

inline EnoughIdempotentsVerdict enough_idempotents_left(const MonoidTable& m) {
    EnoughIdempotentsVerdict v;
    std::vector<std::size_t> idem;
    for (std::size_t e = 0; e < m.size(); ++e)
        if (e != m.identity && m.is_idempotent(e)) idem.push_back(e);
    for (std::size_t f = 0; f < m.size(); ++f) {
        LeftIdempotentWitness w;
        w.element = f;
        for (std::size_t g = 0; g < m.size() && !w.left_inverse; ++g)
            if (m.product(g, f) == m.identity) w.left_inverse = g;
        std::size_t fn = f;
        for (std::size_t n = 1; n <= m.size() && !w.left_inverse && !w.idempotent; ++n) {
            for (std::size_t e : idem)
                if (m.product(e, fn) == fn) {
                    w.idempotent = e;
                    w.exponent = n;
                    break;
                }
            fn = m.product(fn, f);
        }
        if (!w.left_inverse && !w.idempotent && v.ok) {
            v.ok = false;
            v.failing_element = f;
        }
        v.witnesses.push_back(w);
    }
    return v;
}

enum class LocalCondition { CauchyComplete = 1, ArtinianSlices = 2, EnoughIdempotents = 3 };

struct LocalVerdict {
    bool universally_rigid = true;
    std::optional<LocalCondition> failed;
    std::optional<MorphismId> non_split_idempotent;
    std::optional<ObjectId> failing_object;
    std::optional<MorphismId> failing_endomorphism;
    std::vector<std::size_t> slice_heights; // per object
};

inline LocalVerdict universally_rigid_local(const FinCategory& c) {
    LocalVerdict v;
    auto fail = [&](LocalCondition k) {
        if (!v.failed) {
            v.universally_rigid = false;
            v.failed = k;
        }
    };
    if (auto cauchy = is_cauchy_complete(c); !cauchy.complete) {
        fail(LocalCondition::CauchyComplete);
        v.non_split_idempotent = cauchy.witness;
    }
    for (ObjectId x : c.objects()) {
        auto reflection = slice_poset_reflection(c, x);
        v.slice_heights.push_back(reflection.height);
        if (!reflection.artinian()) {
            fail(LocalCondition::ArtinianSlices);
            if (!v.failing_object) v.failing_object = x;
        }
    }
    for (ObjectId x : c.objects()) {
        auto m = endomorphism_monoid(c, x);
        auto e = enough_idempotents_left(m);
        if (!e.ok) {
            fail(LocalCondition::EnoughIdempotents);
            if (!v.failing_object) v.failing_object = x;
            if (!v.failing_endomorphism) v.failing_endomorphism = c.hom(x, x)[*e.failing_element];
        }
    }
    return v;
}

/// Rewrites f into f' with the same image such that the only idempotent e on
/// dom(f') with e·f' = f' is the identity. Each step splits a non-identity
/// idempotent e = r·s fixing f and replaces f by s·f.
inline MorphismId clean_morphism(const FinCategory& c, MorphismId f) {
    for (std::size_t step = 0; step <= c.morphism_count(); ++step) {
        ObjectId y = c.dom(f);
        std::optional<MorphismId> fixing;
        for (MorphismId e : c.hom(y, y))
            if (!c.is_identity(e) && is_idempotent(c, e) && c.compose(e, f) == f) {
                fixing = e;
                break;
            }
        if (!fixing) return f;
        auto split = split_idempotent(c, *fixing);
        if (!split)
            throw Error(ErrorKind::NotCauchyComplete,
                        "idempotent '" + c.morphism_name(*fixing) + "' does not split");
        f = c.compose(split->s, f);
    }
    throw Error(ErrorKind::PreconditionViolated, "cleaning did not terminate");
}

/// A J-covering sieve on x generated by morphisms out of J-irreducible
/// objects. Follows the Artinian induction: for a clean f with reducible
/// domain, take the first non-maximal cover S of dom(f) and cover every r·f,
/// r in S, which has strictly smaller image.
inline Sieve irreducible_cover(const FinCategory& c, const Topology& j, ObjectId x) {
    if (!universally_rigid_local(c).universally_rigid)
        throw Error(ErrorKind::PreconditionViolated, "category is not universally rigid");
    if (!is_topology(c, j).ok) throw Error(ErrorKind::PreconditionViolated, "not a Grothendieck topology");

    std::vector<bool> irreducible(c.object_count(), false);
    for (ObjectId y : irreducible_objects(c, j)) irreducible[idx(y)] = true;

    std::map<std::uint32_t, Sieve> memo;
    auto cover = [&](auto&& self, MorphismId f) -> Sieve {
        if (auto it = memo.find(static_cast<std::uint32_t>(f)); it != memo.end()) return it->second;
        MorphismId clean = clean_morphism(c, f);
        Sieve result = empty_sieve(c, x);
        ObjectId y = c.dom(clean);
        if (irreducible[idx(y)]) {
            result = principal_sieve(c, clean);
        } else {
            const Sieve* chosen = nullptr;
            for (const Sieve& s : j.on(y))
                if (!s.is_maximal()) {
                    chosen = &s;
                    break;
                }
            for (MorphismId r : members_of(c, *chosen)) result.members |= self(self, c.compose(r, clean)).members;
        }
        memo.emplace(static_cast<std::uint32_t>(f), result);
        return result;
    };
    return cover(cover, c.identity(x));
}

struct DegreeVerdict {
    bool ok = true;
    std::optional<MorphismId> failing_morphism;
    /// per morphism: the split epi r and the second factor g with f = r·g
    std::vector<std::optional<std::pair<MorphismId, MorphismId>>> factorizations;
};

/// Every f must factor as r·g with r split epi and g an isomorphism or
/// raising the degree strictly.
inline DegreeVerdict check_degree_criterion(const FinCategory& c, const std::vector<std::uint64_t>& degree) {
    if (degree.size() != c.object_count())
        throw Error(ErrorKind::PreconditionViolated, "degree map must cover every object");
    DegreeVerdict v;
    for (std::size_t i = 0; i < c.morphism_count(); ++i) {
        MorphismId f = morphism_id(i);
        std::optional<std::pair<MorphismId, MorphismId>> found;
        for (MorphismId r : c.hom_out(c.dom(f))) {
            if (!is_split_epi(c, r)) continue;
            for (MorphismId g : c.hom(c.cod(r), c.cod(f))) {
                if (c.compose(r, g) != f) continue;
                if (is_isomorphism(c, g) || degree[idx(c.dom(g))] < degree[idx(c.cod(g))]) {
                    found = std::make_pair(r, g);
                    break;
                }
            }
            if (found) break;
        }
        if (!found && v.ok) {
            v.ok = false;
            v.failing_morphism = f;
        }
        v.factorizations.push_back(found);
    }
    return v;
}

} // namespace urigid
