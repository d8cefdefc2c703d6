#pragma once

// Finite categories as validated composition tables.
//
// Composition is diagrammatic throughout: compose(f, g) is "f then g" and is
// defined exactly when cod(f) == dom(g).

#include <urigid/error.hpp>
#include <urigid/monoid.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <tuple>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace urigid {

enum class ObjectId : std::uint32_t {};
enum class MorphismId : std::uint32_t {};

constexpr std::size_t idx(ObjectId x) { return static_cast<std::size_t>(x); }
constexpr std::size_t idx(MorphismId f) { return static_cast<std::size_t>(f); }
constexpr ObjectId object_id(std::size_t i) { return static_cast<ObjectId>(i); }
constexpr MorphismId morphism_id(std::size_t i) { return static_cast<MorphismId>(i); }

inline std::string identity_name(const std::string& object) { return "id_" + object; }

/// Raw input: objects, non-identity morphisms and the composite of every
/// composable pair of non-identity morphisms. Identities are implicit and
/// may be referred to as "id_<object>" in the `equals` column.
struct Presentation {
    struct Arrow {
        std::string name, dom, cod;
    };
    struct Composite {
        std::string first, then, equals;
    };
    std::string name;
    std::vector<std::string> objects;
    std::vector<Arrow> morphisms;
    std::vector<Composite> composition;
};

class FinCategory;
FinCategory validate_category(const Presentation& raw);

class FinCategory {
public:
    struct Morphism {
        std::string name;
        ObjectId dom, cod;
    };

    FinCategory() = default;

    const std::string& name() const { return name_; }
    std::size_t object_count() const { return objects_.size(); }
    std::size_t morphism_count() const { return morphisms_.size(); }

    const std::string& object_name(ObjectId x) const { return objects_[idx(x)]; }
    const Morphism& morphism(MorphismId f) const { return morphisms_[idx(f)]; }
    const std::string& morphism_name(MorphismId f) const { return morphisms_[idx(f)].name; }
    ObjectId dom(MorphismId f) const { return morphisms_[idx(f)].dom; }
    ObjectId cod(MorphismId f) const { return morphisms_[idx(f)].cod; }

    MorphismId identity(ObjectId x) const { return morphism_id(idx(x)); }
    bool is_identity(MorphismId f) const { return idx(f) < objects_.size(); }
    bool is_endomorphism(MorphismId f) const { return dom(f) == cod(f); }

    /// Morphisms with codomain `x`, in ascending id order.
    std::span<const MorphismId> hom_into(ObjectId x) const { return hom_into_[idx(x)]; }
    /// Morphisms with domain `x`, in ascending id order.
    std::span<const MorphismId> hom_out(ObjectId x) const { return hom_out_[idx(x)]; }
    std::span<const MorphismId> hom(ObjectId a, ObjectId b) const {
        return hom_[idx(a) * objects_.size() + idx(b)];
    }

    /// Position of `f` inside hom_into(cod(f)); sieve bitsets are indexed by it.
    std::size_t into_index(MorphismId f) const { return into_index_[idx(f)]; }

    /// "f then g". Requires cod(f) == dom(g).
    MorphismId compose(MorphismId f, MorphismId g) const {
        return comp_[comp_offset_[idx(f)] + out_index_[idx(g)]];
    }
    std::optional<MorphismId> try_compose(MorphismId f, MorphismId g) const {
        if (cod(f) != dom(g)) return std::nullopt;
        return compose(f, g);
    }

    std::optional<ObjectId> find_object(const std::string& n) const {
        auto it = object_index_.find(n);
        if (it == object_index_.end()) return std::nullopt;
        return it->second;
    }
    std::optional<MorphismId> find_morphism(const std::string& n) const {
        auto it = morphism_index_.find(n);
        if (it == morphism_index_.end()) return std::nullopt;
        return it->second;
    }
    ObjectId object(const std::string& n) const {
        if (auto x = find_object(n)) return *x;
        throw Error(ErrorKind::UnknownName, "no object named '" + n + "'");
    }
    MorphismId morphism(const std::string& n) const {
        if (auto f = find_morphism(n)) return *f;
        throw Error(ErrorKind::UnknownName, "no morphism named '" + n + "'");
    }

    std::vector<ObjectId> objects() const {
        std::vector<ObjectId> out;
        for (std::size_t i = 0; i < objects_.size(); ++i) out.push_back(object_id(i));
        return out;
    }

    /// Inverse of validate_category: the presentation with identities elided.
    Presentation presentation() const {
        Presentation p;
        p.name = name_;
        p.objects = objects_;
        for (std::size_t i = objects_.size(); i < morphisms_.size(); ++i) {
            const auto& m = morphisms_[i];
            p.morphisms.push_back({m.name, objects_[idx(m.dom)], objects_[idx(m.cod)]});
        }
        for (std::size_t i = objects_.size(); i < morphisms_.size(); ++i) {
            MorphismId f = morphism_id(i);
            for (MorphismId g : hom_out(cod(f))) {
                if (is_identity(g)) continue;
                p.composition.push_back({morphism_name(f), morphism_name(g), morphism_name(compose(f, g))});
            }
        }
        return p;
    }

private:
    friend FinCategory validate_category(const Presentation& raw);

    std::string name_;
    std::vector<std::string> objects_;
    std::vector<Morphism> morphisms_;
    std::vector<std::vector<MorphismId>> hom_into_, hom_out_, hom_;
    std::vector<std::size_t> into_index_, out_index_, comp_offset_;
    std::vector<MorphismId> comp_;
    std::unordered_map<std::string, ObjectId> object_index_;
    std::unordered_map<std::string, MorphismId> morphism_index_;
};

inline FinCategory validate_category(const Presentation& raw) {
    FinCategory c;
    c.name_ = raw.name;
    const std::size_t n = raw.objects.size();

    for (const auto& o : raw.objects) {
        if (!c.object_index_.emplace(o, object_id(c.objects_.size())).second)
            throw Error(ErrorKind::DuplicateName, "object '" + o + "' declared twice");
        c.objects_.push_back(o);
    }
    auto add_morphism = [&](const std::string& name, ObjectId d, ObjectId k) {
        if (!c.morphism_index_.emplace(name, morphism_id(c.morphisms_.size())).second)
            throw Error(ErrorKind::DuplicateName, "morphism '" + name + "' declared twice");
        c.morphisms_.push_back({name, d, k});
    };
    for (std::size_t i = 0; i < n; ++i) add_morphism(identity_name(c.objects_[i]), object_id(i), object_id(i));
    for (const auto& m : raw.morphisms) {
        auto d = c.find_object(m.dom);
        auto k = c.find_object(m.cod);
        if (!d || !k)
            throw Error(ErrorKind::BadEndpoints, "morphism '" + m.name + "' has an undeclared endpoint");
        add_morphism(m.name, *d, *k);
    }

    const std::size_t m = c.morphisms_.size();
    c.hom_into_.assign(n, {});
    c.hom_out_.assign(n, {});
    c.hom_.assign(n * n, {});
    c.into_index_.resize(m);
    c.out_index_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& mor = c.morphisms_[i];
        c.into_index_[i] = c.hom_into_[idx(mor.cod)].size();
        c.out_index_[i] = c.hom_out_[idx(mor.dom)].size();
        c.hom_into_[idx(mor.cod)].push_back(morphism_id(i));
        c.hom_out_[idx(mor.dom)].push_back(morphism_id(i));
        c.hom_[idx(mor.dom) * n + idx(mor.cod)].push_back(morphism_id(i));
    }

    constexpr auto unset = static_cast<MorphismId>(std::numeric_limits<std::uint32_t>::max());
    c.comp_offset_.resize(m);
    std::size_t total = 0;
    for (std::size_t i = 0; i < m; ++i) {
        c.comp_offset_[i] = total;
        total += c.hom_out_[idx(c.morphisms_[i].cod)].size();
    }
    c.comp_.assign(total, unset);
    auto slot = [&](MorphismId f, MorphismId g) -> MorphismId& {
        return c.comp_[c.comp_offset_[idx(f)] + c.out_index_[idx(g)]];
    };
    for (std::size_t i = 0; i < m; ++i) {
        MorphismId f = morphism_id(i);
        for (MorphismId g : c.hom_out(c.cod(f))) {
            if (c.is_identity(f)) slot(f, g) = g;
            else if (c.is_identity(g)) slot(f, g) = f;
        }
    }

    for (const auto& entry : raw.composition) {
        auto f = c.find_morphism(entry.first);
        auto g = c.find_morphism(entry.then);
        if (!f || !g)
            throw Error(ErrorKind::BadEndpoints,
                        "composition entry (" + entry.first + ", " + entry.then + ") names an undeclared morphism");
        if (c.cod(*f) != c.dom(*g))
            throw Error(ErrorKind::BadEndpoints,
                        "composition entry (" + entry.first + ", " + entry.then + ") is not a composable pair");
        auto h = c.find_morphism(entry.equals);
        if (!h)
            throw Error(ErrorKind::MissingComposite, "composite of (" + entry.first + ", " + entry.then + ") is '" +
                                                         entry.equals + "', which is not a declared morphism");
        if (c.dom(*h) != c.dom(*f) || c.cod(*h) != c.cod(*g))
            throw Error(ErrorKind::BadEndpoints, "composite '" + entry.equals + "' of (" + entry.first + ", " +
                                                     entry.then + ") has the wrong endpoints");
        MorphismId& s = slot(*f, *g);
        if (c.is_identity(*f) || c.is_identity(*g)) {
            if (s != *h)
                throw Error(ErrorKind::BadEndpoints,
                            "composition entry (" + entry.first + ", " + entry.then + ") contradicts an identity law");
            continue;
        }
        if (s != unset)
            throw Error(ErrorKind::DuplicateName,
                        "composition entry (" + entry.first + ", " + entry.then + ") listed twice");
        s = *h;
    }

    for (std::size_t i = 0; i < m; ++i) {
        MorphismId f = morphism_id(i);
        for (MorphismId g : c.hom_out(c.cod(f)))
            if (slot(f, g) == unset)
                throw Error(ErrorKind::MissingComposite,
                            "no composite given for (" + c.morphism_name(f) + ", " + c.morphism_name(g) + ")");
    }

    for (std::size_t i = 0; i < m; ++i) {
        MorphismId f = morphism_id(i);
        for (MorphismId g : c.hom_out(c.cod(f))) {
            MorphismId fg = c.compose(f, g);
            for (MorphismId h : c.hom_out(c.cod(g))) {
                if (c.compose(fg, h) != c.compose(f, c.compose(g, h)))
                    throw Error(ErrorKind::AssociativityViolation, "(" + c.morphism_name(f) + ", " +
                                                                       c.morphism_name(g) + ", " +
                                                                       c.morphism_name(h) + ")");
            }
        }
    }
    return c;
}

// ---------------------------------------------------------------------------
// Split epis, factorization and images

/// Some s with s·r = id_cod(r), searched over hom(cod r, dom r).
inline std::optional<MorphismId> section_of(const FinCategory& c, MorphismId r) {
    MorphismId target = c.identity(c.cod(r));
    for (MorphismId s : c.hom(c.cod(r), c.dom(r)))
        if (c.compose(s, r) == target) return s;
    return std::nullopt;
}

inline bool is_split_epi(const FinCategory& c, MorphismId r) { return section_of(c, r).has_value(); }

/// Some g with m·g = id_dom(m).
inline std::optional<MorphismId> retraction_of(const FinCategory& c, MorphismId m) {
    MorphismId target = c.identity(c.dom(m));
    for (MorphismId g : c.hom(c.cod(m), c.dom(m)))
        if (c.compose(m, g) == target) return g;
    return std::nullopt;
}

inline bool is_split_mono(const FinCategory& c, MorphismId m) { return retraction_of(c, m).has_value(); }

inline std::optional<MorphismId> inverse_of(const FinCategory& c, MorphismId f) {
    for (MorphismId g : c.hom(c.cod(f), c.dom(f)))
        if (c.compose(f, g) == c.identity(c.dom(f)) && c.compose(g, f) == c.identity(c.cod(f))) return g;
    return std::nullopt;
}

inline bool is_isomorphism(const FinCategory& c, MorphismId f) { return inverse_of(c, f).has_value(); }

inline bool are_isomorphic(const FinCategory& c, ObjectId a, ObjectId b) {
    if (a == b) return true;
    for (MorphismId f : c.hom(a, b))
        if (is_isomorphism(c, f)) return true;
    return false;
}

inline bool is_idempotent(const FinCategory& c, MorphismId e) {
    return c.is_endomorphism(e) && c.compose(e, e) == e;
}

inline std::vector<MorphismId> idempotents(const FinCategory& c) {
    std::vector<MorphismId> out;
    for (std::size_t i = 0; i < c.morphism_count(); ++i)
        if (is_idempotent(c, morphism_id(i))) out.push_back(morphism_id(i));
    return out;
}

/// Some h with h·g = f, i.e. im(f) <= im(g). Requires cod(f) == cod(g).
inline std::optional<MorphismId> factor_through(const FinCategory& c, MorphismId f, MorphismId g) {
    for (MorphismId h : c.hom(c.dom(f), c.dom(g)))
        if (c.compose(h, g) == f) return h;
    return std::nullopt;
}

inline bool image_leq(const FinCategory& c, MorphismId f, MorphismId g) {
    return factor_through(c, f, g).has_value();
}

inline bool image_eq(const FinCategory& c, MorphismId f, MorphismId g) {
    return image_leq(c, f, g) && image_leq(c, g, f);
}

// ---------------------------------------------------------------------------
// Poset reflection of the slice over an object

struct SlicePosetReflection {
    ObjectId base{};
    std::vector<std::vector<MorphismId>> classes;
    std::vector<std::size_t> class_of;  // indexed by into_index
    std::vector<std::vector<bool>> leq; // leq[a][b]: class a <= class b
    std::size_t top = 0;
    std::size_t height = 0;             // elements in a longest chain

    bool less(std::size_t a, std::size_t b) const { return a != b && leq[a][b]; }
    /// A finite poset has no infinite descending chain.
    bool artinian() const { return true; }
};

inline SlicePosetReflection slice_poset_reflection(const FinCategory& c, ObjectId x) {
    auto into = c.hom_into(x);
    const std::size_t n = into.size();
    std::vector<std::vector<bool>> pre(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) pre[i][j] = image_leq(c, into[i], into[j]);

    SlicePosetReflection r;
    r.base = x;
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    r.class_of.assign(n, none);
    for (std::size_t i = 0; i < n; ++i) {
        if (r.class_of[i] != none) continue;
        std::size_t k = r.classes.size();
        r.classes.emplace_back();
        for (std::size_t j = i; j < n; ++j)
            if (pre[i][j] && pre[j][i]) {
                r.class_of[j] = k;
                r.classes[k].push_back(into[j]);
            }
    }
    const std::size_t k = r.classes.size();
    r.leq.assign(k, std::vector<bool>(k));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            r.leq[a][b] = pre[c.into_index(r.classes[a].front())][c.into_index(r.classes[b].front())];
    r.top = r.class_of[c.into_index(c.identity(x))];

    // Longest chain by memoized depth over the strict order.
    std::vector<std::size_t> depth(k, 0);
    std::vector<std::size_t> order(k);
    for (std::size_t a = 0; a < k; ++a) order[a] = a;
    auto below = [&](std::size_t a) {
        std::size_t count = 0;
        for (std::size_t b = 0; b < k; ++b) count += r.less(b, a);
        return count;
    };
    std::vector<std::size_t> below_count(k);
    for (std::size_t a = 0; a < k; ++a) below_count[a] = below(a);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return below_count[a] < below_count[b]; });
    for (std::size_t a : order) {
        depth[a] = 1;
        for (std::size_t b = 0; b < k; ++b)
            if (r.less(b, a)) depth[a] = std::max(depth[a], depth[b] + 1);
        r.height = std::max(r.height, depth[a]);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Slice categories and endomorphism monoids

/// Objects are morphisms into x; an arrow f -> g is an h with h·g = f.
/// Object names are the morphism names of `c`; arrows are named "h@f→g".
inline FinCategory slice_category(const FinCategory& c, ObjectId x) {
    Presentation p;
    p.name = c.name() + "/" + c.object_name(x);
    auto into = c.hom_into(x);
    for (MorphismId f : into) p.objects.push_back(c.morphism_name(f));

    // arrow key (h, f, g) -> presented name
    std::map<std::tuple<MorphismId, MorphismId, MorphismId>, std::string> names;
    std::vector<std::tuple<MorphismId, MorphismId, MorphismId>> arrows;
    for (MorphismId f : into)
        for (MorphismId g : into)
            for (MorphismId h : c.hom(c.dom(f), c.dom(g))) {
                if (c.compose(h, g) != f) continue;
                auto key = std::make_tuple(h, f, g);
                if (f == g && c.is_identity(h)) {
                    names[key] = identity_name(c.morphism_name(f));
                    continue;
                }
                std::string label = c.morphism_name(h) + "@" + c.morphism_name(f) + "→" + c.morphism_name(g);
                names[key] = label;
                arrows.push_back(key);
                p.morphisms.push_back({label, c.morphism_name(f), c.morphism_name(g)});
            }
    for (const auto& [h1, f1, g1] : arrows)
        for (const auto& [h2, f2, g2] : arrows) {
            if (g1 != f2) continue;
            p.composition.push_back({names.at({h1, f1, g1}), names.at({h2, f2, g2}),
                                     names.at({c.compose(h1, h2), f1, g2})});
        }
    return validate_category(p);
}

inline MonoidTable endomorphism_monoid(const FinCategory& c, ObjectId x) {
    MonoidTable m;
    auto ends = c.hom(x, x);
    std::vector<std::size_t> pos(c.morphism_count());
    for (std::size_t i = 0; i < ends.size(); ++i) {
        pos[idx(ends[i])] = i;
        m.names.push_back(c.morphism_name(ends[i]));
        if (ends[i] == c.identity(x)) m.identity = i;
    }
    m.table.resize(ends.size() * ends.size());
    for (std::size_t i = 0; i < ends.size(); ++i)
        for (std::size_t j = 0; j < ends.size(); ++j)
            m.table[i * ends.size() + j] = pos[idx(c.compose(ends[i], ends[j]))];
    return m;
}

} // namespace urigid
