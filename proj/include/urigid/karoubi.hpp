#pragma once

// Idempotent splitting, Cauchy-completeness and the Karoubi envelope.

#include <urigid/fincat.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

namespace urigid {

/// e = r·s with s·r = id_through.
struct IdempotentSplitting {
    MorphismId e{};
    ObjectId through{};
    MorphismId r{}; // dom(e) -> through
    MorphismId s{}; // through -> dom(e)
};

inline std::optional<IdempotentSplitting> split_idempotent(const FinCategory& c, MorphismId e) {
    if (!is_idempotent(c, e))
        throw Error(ErrorKind::NotIdempotent, "'" + c.morphism_name(e) + "' is not idempotent");
    ObjectId x = c.dom(e);
    if (c.is_identity(e)) return IdempotentSplitting{e, x, e, e};
    for (ObjectId y : c.objects())
        for (MorphismId r : c.hom(x, y))
            for (MorphismId s : c.hom(y, x))
                if (c.compose(r, s) == e && c.compose(s, r) == c.identity(y)) return IdempotentSplitting{e, y, r, s};
    return std::nullopt;
}

struct CauchyVerdict {
    bool complete = true;
    std::optional<MorphismId> witness; // an idempotent that does not split
};

inline CauchyVerdict is_cauchy_complete(const FinCategory& c) {
    for (MorphismId e : idempotents(c))
        if (!split_idempotent(c, e)) return {false, e};
    return {};
}

struct KaroubiEnvelope {
    FinCategory envelope;
    std::vector<MorphismId> idempotent_of; // envelope object -> idempotent of the base
    std::vector<ObjectId> embedding;       // base object -> envelope object
};

/// Objects are the idempotents of `c`; hom(e, e') = {f | e·f = f = f·e'}.
/// Embedded objects keep their base name, other objects take the idempotent's
/// name, and arrows are named "f@e→e'".
inline KaroubiEnvelope karoubi_envelope(const FinCategory& c) {
    KaroubiEnvelope k;
    k.idempotent_of = idempotents(c);
    k.embedding.resize(c.object_count());

    std::unordered_set<std::string> taken;
    for (ObjectId x : c.objects()) taken.insert(c.object_name(x));
    std::vector<std::string> obj_names;
    std::map<std::uint32_t, std::size_t> object_of_idempotent;
    for (std::size_t i = 0; i < k.idempotent_of.size(); ++i) {
        MorphismId e = k.idempotent_of[i];
        object_of_idempotent[static_cast<std::uint32_t>(e)] = i;
        if (c.is_identity(e)) {
            obj_names.push_back(c.object_name(c.dom(e)));
            k.embedding[idx(c.dom(e))] = object_id(i);
            continue;
        }
        std::string n = c.morphism_name(e);
        while (taken.count(n)) n += "'";
        taken.insert(n);
        obj_names.push_back(n);
    }

    Presentation p;
    p.name = "Karoubi(" + c.name() + ")";
    p.objects = obj_names;
    const std::size_t n = k.idempotent_of.size();
    // arrow (f, a, b) where a, b are envelope object indices
    std::map<std::tuple<std::uint32_t, std::size_t, std::size_t>, std::string> names;
    std::vector<std::vector<std::vector<MorphismId>>> homs(n, std::vector<std::vector<MorphismId>>(n));
    std::unordered_set<std::string> arrow_names;
    for (const auto& o : obj_names) arrow_names.insert(identity_name(o));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            MorphismId ea = k.idempotent_of[a], eb = k.idempotent_of[b];
            for (MorphismId f : c.hom(c.dom(ea), c.dom(eb))) {
                if (c.compose(ea, f) != f || c.compose(f, eb) != f) continue;
                homs[a][b].push_back(f);
                auto key = std::make_tuple(static_cast<std::uint32_t>(f), a, b);
                if (a == b && f == ea) {
                    names[key] = identity_name(obj_names[a]);
                    continue;
                }
                std::string label = c.morphism_name(f) + "@" + obj_names[a] + "→" + obj_names[b];
                while (!arrow_names.insert(label).second) label += "'";
                names[key] = label;
                p.morphisms.push_back({names[key], obj_names[a], obj_names[b]});
            }
        }
    auto name_of = [&](MorphismId f, std::size_t a, std::size_t b) -> const std::string& {
        return names.at({static_cast<std::uint32_t>(f), a, b});
    };
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (MorphismId f : homs[a][b]) {
                if (f == k.idempotent_of[a] && a == b) continue;
                for (std::size_t d = 0; d < n; ++d)
                    for (MorphismId g : homs[b][d]) {
                        if (g == k.idempotent_of[b] && b == d) continue;
                        p.composition.push_back({name_of(f, a, b), name_of(g, b, d), name_of(c.compose(f, g), a, d)});
                    }
            }
    k.envelope = validate_category(p);
    return k;
}

/// Envelope objects not isomorphic to any embedded object. Empty iff `c` is
/// Cauchy-complete.
inline std::vector<ObjectId> unembedded_objects(const KaroubiEnvelope& k) {
    std::vector<ObjectId> out;
    for (ObjectId e : k.envelope.objects()) {
        bool found = false;
        for (ObjectId x : k.embedding)
            if (are_isomorphic(k.envelope, e, x)) {
                found = true;
                break;
            }
        if (!found) out.push_back(e);
    }
    return out;
}

inline constexpr std::size_t max_subcategory_objects = 20;

/// Object subsets closed under splitting of idempotents up to isomorphism,
/// in ascending bitmask order (the empty set first).
inline std::vector<std::vector<ObjectId>> cauchy_complete_full_subcategories(const FinCategory& c) {
    if (auto v = is_cauchy_complete(c); !v.complete)
        throw Error(ErrorKind::NotCauchyComplete,
                    "idempotent '" + c.morphism_name(*v.witness) + "' does not split");
    const std::size_t n = c.object_count();
    if (n > max_subcategory_objects)
        throw Error(ErrorKind::BoundExceeded, std::to_string(n) + " objects exceeds the subset enumeration guard");

    // required[x]: for each idempotent on x, the mask of objects isomorphic to
    // its splitting object
    std::vector<std::vector<std::uint32_t>> required(n);
    std::vector<std::uint32_t> iso_class(n, 0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (are_isomorphic(c, object_id(a), object_id(b))) iso_class[a] |= 1u << b;
    for (MorphismId e : idempotents(c)) {
        if (c.is_identity(e)) continue;
        auto split = split_idempotent(c, e);
        required[idx(c.dom(e))].push_back(iso_class[idx(split->through)]);
    }

    std::vector<std::vector<ObjectId>> out;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        bool closed = true;
        for (std::size_t x = 0; x < n && closed; ++x) {
            if (!(mask & (1u << x))) continue;
            for (std::uint32_t need : required[x])
                if (!(mask & need)) {
                    closed = false;
                    break;
                }
        }
        if (!closed) continue;
        std::vector<ObjectId> subset;
        for (std::size_t x = 0; x < n; ++x)
            if (mask & (1u << x)) subset.push_back(object_id(x));
        out.push_back(std::move(subset));
    }
    return out;
}

/// True when `subset` contains every object isomorphic to one of its members.
inline bool is_replete(const FinCategory& c, const std::vector<ObjectId>& subset) {
    std::set<ObjectId> members(subset.begin(), subset.end());
    for (ObjectId x : subset)
        for (ObjectId y : c.objects())
            if (!members.count(y) && are_isomorphic(c, x, y)) return false;
    return true;
}

} // namespace urigid
