#pragma once

// Sieves as bitsets over hom_into(base), indexed by FinCategory::into_index.

#include <urigid/fincat.hpp>

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace urigid {

using Bits = boost::dynamic_bitset<>;

struct Sieve {
    ObjectId base{};
    Bits members;

    bool contains(const FinCategory& c, MorphismId f) const {
        return c.cod(f) == base && members.test(c.into_index(f));
    }
    std::size_t size() const { return members.count(); }
    bool empty() const { return members.none(); }
    bool is_maximal() const { return members.all(); }
    bool subset_of(const Sieve& other) const { return members.is_subset_of(other.members); }

    friend bool operator==(const Sieve& a, const Sieve& b) { return a.base == b.base && a.members == b.members; }
};

/// Canonical order: fewer members first, then lexicographic on the sorted
/// member indices.
inline bool sieve_less(const Sieve& a, const Sieve& b) {
    if (a.base != b.base) return a.base < b.base;
    std::size_t ca = a.members.count(), cb = b.members.count();
    if (ca != cb) return ca < cb;
    Bits diff = a.members ^ b.members;
    auto first = diff.find_first();
    if (first == Bits::npos) return false;
    return a.members.test(first);
}

struct SieveLess {
    bool operator()(const Sieve& a, const Sieve& b) const { return sieve_less(a, b); }
};

inline Sieve empty_sieve(const FinCategory& c, ObjectId x) { return {x, Bits(c.hom_into(x).size())}; }

inline Sieve maximal_sieve(const FinCategory& c, ObjectId x) {
    Sieve s = empty_sieve(c, x);
    s.members.set();
    return s;
}

inline std::vector<MorphismId> members_of(const FinCategory& c, const Sieve& s) {
    std::vector<MorphismId> out;
    auto into = c.hom_into(s.base);
    for (auto i = s.members.find_first(); i != Bits::npos; i = s.members.find_next(i)) out.push_back(into[i]);
    return out;
}

/// Member names sorted lexicographically.
inline std::vector<std::string> member_names(const FinCategory& c, const Sieve& s) {
    std::vector<std::string> out;
    for (MorphismId f : members_of(c, s)) out.push_back(c.morphism_name(f));
    std::sort(out.begin(), out.end());
    return out;
}

/// {h·g | g in gens, cod(h) = dom(g)}.
inline Sieve sieve_generated_by(const FinCategory& c, ObjectId x, std::span<const MorphismId> gens) {
    Sieve s = empty_sieve(c, x);
    for (MorphismId g : gens) {
        if (c.cod(g) != x)
            throw Error(ErrorKind::WrongCodomain,
                        "'" + c.morphism_name(g) + "' does not have codomain '" + c.object_name(x) + "'");
        for (MorphismId h : c.hom_into(c.dom(g))) s.members.set(c.into_index(c.compose(h, g)));
    }
    return s;
}

inline Sieve principal_sieve(const FinCategory& c, MorphismId f) {
    MorphismId gens[] = {f};
    return sieve_generated_by(c, c.cod(f), gens);
}

/// h*(S) = {g | g·h in S}.
inline Sieve pullback_sieve(const FinCategory& c, const Sieve& s, MorphismId h) {
    ObjectId y = c.dom(h);
    Sieve out = empty_sieve(c, y);
    auto into = c.hom_into(y);
    for (std::size_t i = 0; i < into.size(); ++i)
        if (s.members.test(c.into_index(c.compose(into[i], h)))) out.members.set(i);
    return out;
}

inline bool is_sieve(const FinCategory& c, const Sieve& s) {
    if (s.members.size() != c.hom_into(s.base).size()) return false;
    for (MorphismId f : members_of(c, s))
        for (MorphismId h : c.hom_into(c.dom(f)))
            if (!s.members.test(c.into_index(c.compose(h, f)))) return false;
    return true;
}

inline constexpr std::size_t default_sieve_limit = std::size_t{1} << 16;

/// Every sieve on x in canonical order. The sieves are the unions of
/// principal sieves, so they are reached by closing {empty} under union with
/// principal sieves.
inline std::vector<Sieve> all_sieves(const FinCategory& c, ObjectId x, std::size_t limit = default_sieve_limit) {
    std::vector<Sieve> principal;
    for (MorphismId f : c.hom_into(x)) principal.push_back(principal_sieve(c, f));

    std::set<Sieve, SieveLess> seen{empty_sieve(c, x)};
    std::vector<Sieve> frontier{empty_sieve(c, x)};
    while (!frontier.empty()) {
        std::vector<Sieve> next;
        for (const Sieve& s : frontier)
            for (const Sieve& p : principal) {
                if (p.subset_of(s)) continue;
                Sieve u{x, s.members | p.members};
                if (seen.insert(u).second) {
                    if (seen.size() > limit)
                        throw Error(ErrorKind::BudgetExceeded, "more than " + std::to_string(limit) +
                                                                   " sieves on '" + c.object_name(x) + "'");
                    next.push_back(std::move(u));
                }
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

/// All sieves of every object, computed once and shared by the topology code.
class SieveCatalog {
public:
    SieveCatalog() = default;
    explicit SieveCatalog(const FinCategory& c, std::size_t limit = default_sieve_limit) {
        for (ObjectId x : c.objects()) {
            sieves_.push_back(all_sieves(c, x, limit));
            std::map<Bits, std::size_t> index;
            for (std::size_t i = 0; i < sieves_.back().size(); ++i) index.emplace(sieves_.back()[i].members, i);
            index_.push_back(std::move(index));
        }
    }

    const std::vector<Sieve>& on(ObjectId x) const { return sieves_[idx(x)]; }
    std::size_t index_of(const Sieve& s) const { return index_[idx(s.base)].at(s.members); }
    std::size_t total() const {
        std::size_t n = 0;
        for (const auto& v : sieves_) n += v.size();
        return n;
    }

private:
    std::vector<std::vector<Sieve>> sieves_;
    std::vector<std::map<Bits, std::size_t>> index_;
};

} // namespace urigid
