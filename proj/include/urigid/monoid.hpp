#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace urigid {

/// Multiplication table of a finite monoid. `product(a, b)` is "a then b",
/// the same diagrammatic order used for composition in categories.
struct MonoidTable {
    std::vector<std::string> names;
    std::vector<std::size_t> table; // row-major, size() * size()
    std::size_t identity = 0;

    std::size_t size() const { return names.size(); }
    std::size_t product(std::size_t a, std::size_t b) const { return table[a * size() + b]; }
    bool is_idempotent(std::size_t a) const { return product(a, a) == a; }

    std::size_t power(std::size_t a, std::size_t n) const {
        std::size_t result = identity;
        for (std::size_t i = 0; i < n; ++i) result = product(result, a);
        return result;
    }
};

} // namespace urigid
