#pragma once

// Deterministic constructors for posets, monoids and truncated (semi-)simplex
// categories, the pinned fixtures, and a seeded random corpus.

#include <urigid/fincat.hpp>
#include <urigid/karoubi.hpp>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace urigid {

/// `leq[i][j]` means element i <= element j. Morphisms are named "x<=y".
inline FinCategory from_poset(const std::vector<std::string>& elements, const std::vector<std::vector<bool>>& leq,
                              const std::string& name = "poset") {
    const std::size_t n = elements.size();
    if (leq.size() != n) throw Error(ErrorKind::NotPartialOrder, "relation has the wrong shape");
    for (const auto& row : leq)
        if (row.size() != n) throw Error(ErrorKind::NotPartialOrder, "relation has the wrong shape");
    for (std::size_t i = 0; i < n; ++i) {
        if (!leq[i][i]) throw Error(ErrorKind::NotPartialOrder, "not reflexive at '" + elements[i] + "'");
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && leq[i][j] && leq[j][i])
                throw Error(ErrorKind::NotPartialOrder,
                            "not antisymmetric on '" + elements[i] + "', '" + elements[j] + "'");
            for (std::size_t k = 0; k < n; ++k)
                if (leq[i][j] && leq[j][k] && !leq[i][k])
                    throw Error(ErrorKind::NotPartialOrder, "not transitive at '" + elements[i] + "' <= '" +
                                                                elements[j] + "' <= '" + elements[k] + "'");
        }
    }
    Presentation p;
    p.name = name;
    p.objects = elements;
    auto arrow = [&](std::size_t i, std::size_t j) {
        return i == j ? identity_name(elements[i]) : elements[i] + "<=" + elements[j];
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && leq[i][j]) p.morphisms.push_back({arrow(i, j), elements[i], elements[j]});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j || !leq[i][j]) continue;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j && leq[j][k]) p.composition.push_back({arrow(i, j), arrow(j, k), arrow(i, k)});
        }
    return validate_category(p);
}

inline FinCategory chain(std::size_t length, const std::string& name = "chain") {
    std::vector<std::string> elements;
    for (std::size_t i = 0; i < length; ++i) elements.push_back(std::string(1, static_cast<char>('a' + i)));
    std::vector<std::vector<bool>> leq(length, std::vector<bool>(length));
    for (std::size_t i = 0; i < length; ++i)
        for (std::size_t j = i; j < length; ++j) leq[i][j] = true;
    return from_poset(elements, leq, name);
}

/// One-object category "*" whose endomorphisms are the monoid elements. The
/// identity element becomes the implicit identity "id_*".
inline FinCategory from_monoid(const MonoidTable& m, const std::string& name = "monoid") {
    const std::size_t n = m.size();
    if (m.table.size() != n * n || m.identity >= n)
        throw Error(ErrorKind::NoIdentity, "malformed multiplication table");
    for (std::size_t a = 0; a < n; ++a)
        if (m.product(m.identity, a) != a || m.product(a, m.identity) != a)
            throw Error(ErrorKind::NoIdentity, "'" + m.names[m.identity] + "' is not a two-sided identity");
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (m.product(m.product(a, b), c) != m.product(a, m.product(b, c)))
                    throw Error(ErrorKind::NotAssociative,
                                "(" + m.names[a] + ", " + m.names[b] + ", " + m.names[c] + ")");
    Presentation p;
    p.name = name;
    p.objects = {"*"};
    auto label = [&](std::size_t a) { return a == m.identity ? identity_name("*") : m.names[a]; };
    for (std::size_t a = 0; a < n; ++a)
        if (a != m.identity) p.morphisms.push_back({m.names[a], "*", "*"});
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (a != m.identity && b != m.identity) p.composition.push_back({label(a), label(b), label(m.product(a, b))});
    return validate_category(p);
}

/// The monoid {1, f, ..., f^(index+period-1)} with f^(index+period) = f^index.
inline MonoidTable cyclic_monoid(std::size_t index, std::size_t period) {
    const std::size_t n = index + period;
    MonoidTable m;
    m.identity = 0;
    m.names.push_back("1");
    for (std::size_t k = 1; k < n; ++k) m.names.push_back(k == 1 ? "f" : "f" + std::to_string(k));
    auto reduce = [&](std::size_t k) { return k < n ? k : index + (k - index) % period; };
    m.table.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) m.table[a * n + b] = reduce(a + b);
    return m;
}

inline constexpr std::size_t default_simplex_bound = 4;

namespace detail {

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline void monotone_maps(std::size_t a, std::size_t b, bool strict, std::vector<std::vector<std::size_t>>& out) {
    std::vector<std::size_t> v(a + 1);
    auto rec = [&](auto&& self, std::size_t i, std::size_t lo) -> void {
        if (i == a + 1) {
            out.push_back(v);
            return;
        }
        for (std::size_t x = lo; x <= b; ++x) {
            v[i] = x;
            self(self, i + 1, strict ? x + 1 : x);
        }
    };
    rec(rec, 0, 0);
}

} // namespace detail

inline std::string simplex_object_name(std::size_t k) { return "[" + std::to_string(k) + "]"; }

/// Objects [0..n]; morphisms [a] -> [b] are the order-preserving (for
/// `semi`, injective order-preserving) maps, named "[a]->[b]:v0v1...".
inline FinCategory truncated_simplex(std::size_t n, bool semi, std::size_t bound = default_simplex_bound) {
    if (n > bound)
        throw Error(ErrorKind::BoundExceeded,
                    "simplex truncation " + std::to_string(n) + " exceeds bound " + std::to_string(bound));
    struct Map {
        std::size_t a, b;
        std::vector<std::size_t> values;
        std::string name;
    };
    std::vector<Map> maps;
    std::map<std::tuple<std::size_t, std::size_t, std::vector<std::size_t>>, std::string> names;
    for (std::size_t a = 0; a <= n; ++a)
        for (std::size_t b = 0; b <= n; ++b) {
            std::vector<std::vector<std::size_t>> vs;
            detail::monotone_maps(a, b, semi, vs);
            std::uint64_t expected = semi ? detail::binomial(b + 1, a + 1) : detail::binomial(a + b + 1, a + 1);
            if (vs.size() != expected) throw std::logic_error("monotone map count mismatch");
            for (auto& v : vs) {
                bool identity = a == b;
                for (std::size_t i = 0; identity && i < v.size(); ++i) identity = v[i] == i;
                std::string label;
                if (identity) {
                    label = identity_name(simplex_object_name(a));
                } else {
                    label = simplex_object_name(a) + "->" + simplex_object_name(b) + ":";
                    for (std::size_t x : v) label += std::to_string(x);
                }
                names[{a, b, v}] = label;
                if (!identity) maps.push_back({a, b, v, label});
            }
        }
    Presentation p;
    p.name = semi ? "SemiDelta<=" + std::to_string(n) : "Delta<=" + std::to_string(n);
    for (std::size_t k = 0; k <= n; ++k) p.objects.push_back(simplex_object_name(k));
    for (const auto& m : maps) p.morphisms.push_back({m.name, simplex_object_name(m.a), simplex_object_name(m.b)});
    for (const auto& f : maps)
        for (const auto& g : maps) {
            if (f.b != g.a) continue;
            std::vector<std::size_t> h(f.values.size());
            for (std::size_t i = 0; i < h.size(); ++i) h[i] = g.values[f.values[i]];
            p.composition.push_back({f.name, g.name, names.at({f.a, g.b, h})});
        }
    return validate_category(p);
}

// ---------------------------------------------------------------------------
// Pinned fixtures

inline FinCategory fixture_one() { return chain(1, "One"); }
inline FinCategory fixture_p2() { return chain(2, "P2"); }
inline FinCategory fixture_chain3() { return chain(3, "Chain3"); }

inline FinCategory fixture_m2() {
    MonoidTable m{{"1", "e"}, {0, 1, 1, 1}, 0};
    return from_monoid(m, "M2");
}

inline FinCategory fixture_karoubi_m2() {
    Presentation p = karoubi_envelope(fixture_m2()).envelope.presentation();
    p.name = "KaroubiM2";
    return validate_category(p);
}

inline FinCategory fixture_delta1() { return truncated_simplex(1, false); }
inline FinCategory fixture_delta2() { return truncated_simplex(2, false); }
inline FinCategory fixture_semidelta2() { return truncated_simplex(2, true); }

/// Fixture ids double as file names under fixtures/.
inline const std::vector<std::string>& fixture_names() {
    static const std::vector<std::string> names = {"One",    "P2",     "Chain3", "M2",
                                                   "KaroubiM2", "delta1", "delta2", "semidelta2"};
    return names;
}

/// Case-insensitive lookup; "karoubi-m2" is accepted for KaroubiM2.
inline FinCategory fixture(std::string name) {
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char ch) { return std::tolower(ch); });
    name.erase(std::remove(name.begin(), name.end(), '-'), name.end());
    if (name == "one") return fixture_one();
    if (name == "p2") return fixture_p2();
    if (name == "chain3") return fixture_chain3();
    if (name == "m2") return fixture_m2();
    if (name == "karoubim2") return fixture_karoubi_m2();
    if (name == "delta1") return fixture_delta1();
    if (name == "delta2") return fixture_delta2();
    if (name == "semidelta2") return fixture_semidelta2();
    throw Error(ErrorKind::UnknownName, "no fixture named '" + name + "'");
}

inline std::vector<FinCategory> all_fixtures() {
    std::vector<FinCategory> out;
    for (const auto& n : fixture_names()) out.push_back(fixture(n));
    return out;
}

// ---------------------------------------------------------------------------
// Random corpus

struct CorpusBounds {
    std::size_t max_points = 3;       // transformation monoids act on at most this many points
    std::size_t max_modulus = 12;     // commutative monoids live in (Z_n, *) for n <= this
    std::size_t max_generators = 2;
    std::size_t max_monoid_size = 10;
    std::size_t max_poset_size = 5;
};

namespace detail {

inline std::size_t below(std::mt19937_64& rng, std::size_t n) { return n == 0 ? 0 : rng() % n; }

/// Closes `generators` under diagrammatic product on elements represented as
/// value vectors; `times(a, b)` is "a then b".
template <class Times>
MonoidTable close_monoid(std::vector<std::size_t> identity, const std::vector<std::vector<std::size_t>>& generators,
                         Times times, std::size_t cap, const std::string& prefix,
                         std::vector<std::vector<std::size_t>>* kept = nullptr) {
    auto closure = [&](const std::vector<std::vector<std::size_t>>& gens) {
        std::vector<std::vector<std::size_t>> elems{identity};
        std::set<std::vector<std::size_t>> seen{identity};
        for (std::size_t i = 0; i < elems.size() && elems.size() <= cap; ++i)
            for (const auto& g : gens) {
                auto p = times(elems[i], g);
                if (seen.insert(p).second) elems.push_back(p);
            }
        return elems;
    };
    std::vector<std::vector<std::size_t>> gens;
    std::vector<std::vector<std::size_t>> elems{identity};
    for (const auto& g : generators) {
        auto trial = gens;
        trial.push_back(g);
        auto e = closure(trial);
        if (e.size() > cap) continue;
        gens = std::move(trial);
        elems = std::move(e);
    }
    std::sort(elems.begin() + 1, elems.end());
    MonoidTable m;
    m.identity = 0;
    std::map<std::vector<std::size_t>, std::size_t> pos;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        pos[elems[i]] = i;
        std::string label = prefix;
        for (std::size_t j = 0; j < elems[i].size(); ++j) label += (j ? "." : "") + std::to_string(elems[i][j]);
        m.names.push_back(label);
    }
    m.table.resize(elems.size() * elems.size());
    for (std::size_t a = 0; a < elems.size(); ++a)
        for (std::size_t b = 0; b < elems.size(); ++b) m.table[a * elems.size() + b] = pos.at(times(elems[a], elems[b]));
    if (kept) *kept = gens;
    return m;
}

inline FinCategory random_commutative(std::mt19937_64& rng, const CorpusBounds& b, const std::string& name) {
    std::size_t modulus = b.max_modulus < 2 ? 1 : 2 + below(rng, b.max_modulus - 1);
    std::vector<std::vector<std::size_t>> gens;
    std::size_t count = 1 + below(rng, std::max<std::size_t>(b.max_generators, 1));
    for (std::size_t i = 0; i < count && modulus > 1; ++i) gens.push_back({below(rng, modulus)});
    auto times = [modulus](const std::vector<std::size_t>& x, const std::vector<std::size_t>& y) {
        return std::vector<std::size_t>{modulus == 1 ? 0 : (x[0] * y[0]) % modulus};
    };
    auto m = close_monoid({modulus == 1 ? std::size_t{0} : std::size_t{1}}, gens, times, b.max_monoid_size, "z");
    return from_monoid(m, name + ":Z" + std::to_string(modulus));
}

inline FinCategory random_transformations(std::mt19937_64& rng, const CorpusBounds& b, const std::string& name) {
    std::size_t points = 1 + below(rng, std::max<std::size_t>(b.max_points, 1));
    std::vector<std::size_t> identity(points);
    for (std::size_t i = 0; i < points; ++i) identity[i] = i;
    std::vector<std::vector<std::size_t>> gens;
    std::size_t count = 1 + below(rng, std::max<std::size_t>(b.max_generators, 1));
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<std::size_t> g(points);
        for (auto& v : g) v = below(rng, points);
        gens.push_back(g);
    }
    auto times = [](const std::vector<std::size_t>& x, const std::vector<std::size_t>& y) {
        std::vector<std::size_t> r(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) r[i] = y[x[i]];
        return r;
    };
    auto m = close_monoid(identity, gens, times, b.max_monoid_size, "t");
    return from_monoid(m, name + ":T" + std::to_string(points));
}

inline FinCategory random_poset(std::mt19937_64& rng, const CorpusBounds& b, const std::string& name) {
    std::size_t n = 1 + below(rng, std::max<std::size_t>(b.max_poset_size, 1));
    std::vector<std::string> elements;
    for (std::size_t i = 0; i < n; ++i) elements.push_back("p" + std::to_string(i));
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i) {
        leq[i][i] = true;
        for (std::size_t j = i + 1; j < n; ++j) leq[i][j] = below(rng, 5) < 2;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (leq[i][k] && leq[k][j]) leq[i][j] = true;
    return from_poset(elements, leq, name + ":poset" + std::to_string(n));
}

inline FinCategory random_base(std::mt19937_64& rng, const CorpusBounds& b, const std::string& name) {
    switch (below(rng, 3)) {
    case 0: return random_commutative(rng, b, name);
    case 1: return random_transformations(rng, b, name);
    default: return random_poset(rng, b, name);
    }
}

inline FinCategory renamed(const FinCategory& c, const std::string& name) {
    Presentation p = c.presentation();
    p.name = name;
    return validate_category(p);
}

} // namespace detail

/// Deterministic from `seed`: mixes commutative and transformation monoids,
/// posets, Karoubi envelopes of these, and slices of any of the former.
inline std::vector<FinCategory> random_corpus(std::uint64_t seed, std::size_t count, const CorpusBounds& bounds = {}) {
    std::mt19937_64 rng(seed);
    std::vector<FinCategory> out;
    for (std::size_t i = 0; i < count; ++i) {
        std::string name = "corpus" + std::to_string(i);
        switch (detail::below(rng, 5)) {
        case 0: out.push_back(detail::random_commutative(rng, bounds, name)); break;
        case 1: out.push_back(detail::random_transformations(rng, bounds, name)); break;
        case 2: out.push_back(detail::random_poset(rng, bounds, name)); break;
        case 3: {
            FinCategory base = detail::random_base(rng, bounds, name);
            out.push_back(detail::renamed(karoubi_envelope(base).envelope, base.name() + ":karoubi"));
            break;
        }
        default: {
            FinCategory base = detail::below(rng, 2) == 0
                                   ? detail::random_base(rng, bounds, name)
                                   : karoubi_envelope(detail::random_base(rng, bounds, name)).envelope;
            ObjectId x = object_id(detail::below(rng, base.object_count()));
            out.push_back(detail::renamed(slice_category(base, x), name + ":slice"));
            break;
        }
        }
    }
    return out;
}

} // namespace urigid
