#ifndef WGRAPH_GROUPS_HPP_
#define WGRAPH_GROUPS_HPP_

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wgraph/error.hpp"
#include "wgraph/permutation.hpp"

namespace wgraph {

using CayleyTable = std::vector<std::vector<std::size_t>>;

// Finite group given by its Cayley table; element 0 is the identity and
// table[i][j] is the index of g_i·g_j.
class FiniteGroup {
public:
    [[nodiscard]] std::size_t order() const noexcept { return table_.size(); }
    [[nodiscard]] std::size_t operator()(std::size_t a, std::size_t b) const { return table_[a][b]; }
    [[nodiscard]] const CayleyTable& table() const noexcept { return table_; }

    [[nodiscard]] std::size_t inverse(std::size_t a) const {
        for (std::size_t b = 0; b < order(); ++b)
            if (table_[a][b] == 0)
                return b;
        throw Error(ErrorCode::NoInverse, "element " + std::to_string(a) + " has no inverse");
    }

    [[nodiscard]] std::size_t element_order(std::size_t a) const {
        std::size_t k = 1;
        for (std::size_t x = a; x != 0; x = table_[x][a])
            ++k;
        return a == 0 ? 1 : k;
    }

    [[nodiscard]] bool is_abelian() const {
        for (std::size_t a = 0; a < order(); ++a)
            for (std::size_t b = 0; b < a; ++b)
                if (table_[a][b] != table_[b][a])
                    return false;
        return true;
    }

    friend FiniteGroup validate_group(CayleyTable table);

private:
    FiniteGroup() = default;
    CayleyTable table_;
};

/// Checks, in order: Latin square, associativity, identity at index 0, inverses.
inline FiniteGroup validate_group(CayleyTable table) {
    const std::size_t n = table.size();
    if (n == 0)
        throw Error(ErrorCode::NotLatinSquare, "empty table");
    for (std::size_t a = 0; a < n; ++a) {
        if (table[a].size() != n)
            throw Error(ErrorCode::NotLatinSquare, "row " + std::to_string(a) + " has the wrong length");
        std::vector<bool> row_seen(n, false), col_seen(n, false);
        for (std::size_t b = 0; b < n; ++b) {
            if (table[a][b] >= n || row_seen[table[a][b]])
                throw Error(ErrorCode::NotLatinSquare, "row " + std::to_string(a) + " is not a permutation");
            row_seen[table[a][b]] = true;
        }
        for (std::size_t b = 0; b < n; ++b) {
            if (table[b].size() != n || table[b][a] >= n || col_seen[table[b][a]])
                throw Error(ErrorCode::NotLatinSquare, "column " + std::to_string(a) + " is not a permutation");
            col_seen[table[b][a]] = true;
        }
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]])
                    throw Error(ErrorCode::NotAssociative, "(" + std::to_string(a) + "·" + std::to_string(b) + ")·" +
                                                               std::to_string(c) + " differs");
    for (std::size_t a = 0; a < n; ++a)
        if (table[0][a] != a || table[a][0] != a)
            throw Error(ErrorCode::NoIdentity, "element 0 is not a two-sided identity");
    for (std::size_t a = 0; a < n; ++a) {
        bool found = false;
        for (std::size_t b = 0; b < n && !found; ++b)
            found = table[a][b] == 0 && table[b][a] == 0;
        if (!found)
            throw Error(ErrorCode::NoInverse, "element " + std::to_string(a) + " has no inverse");
    }
    FiniteGroup g;
    g.table_ = std::move(table);
    return g;
}

inline FiniteGroup cyclic_group(std::size_t n) {
    CayleyTable t(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            t[a][b] = (a + b) % n;
    return validate_group(std::move(t));
}

/// Elements (a, b) are indexed a·|B| + b.
inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    const std::size_t n = a.order() * b.order();
    CayleyTable t(n, std::vector<std::size_t>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            t[x][y] = a(x / b.order(), y / b.order()) * b.order() + b(x % b.order(), y % b.order());
    return validate_group(std::move(t));
}

/// Group of a list of permutations closed under composition; the identity
/// must come first. table[i][j] = index of perms[i] ∘ perms[j].
inline FiniteGroup group_from_permutations(const std::vector<Permutation>& perms) {
    if (perms.empty() || !perms.front().is_identity())
        throw Error(ErrorCode::NoIdentity, "first permutation must be the identity");
    std::map<Permutation, std::size_t> index;
    for (std::size_t i = 0; i < perms.size(); ++i)
        index.emplace(perms[i], i);
    CayleyTable t(perms.size(), std::vector<std::size_t>(perms.size()));
    for (std::size_t i = 0; i < perms.size(); ++i)
        for (std::size_t j = 0; j < perms.size(); ++j) {
            auto it = index.find(compose(perms[i], perms[j]));
            if (it == index.end())
                throw Error(ErrorCode::NotLatinSquare, "permutations are not closed under composition");
            t[i][j] = it->second;
        }
    return validate_group(std::move(t));
}

/// S_k acting on k points, identity first, remaining elements in
/// lexicographic order of their image arrays.
inline FiniteGroup symmetric_group(std::size_t k) {
    std::vector<Permutation> perms;
    std::vector<std::size_t> image(k);
    for (std::size_t i = 0; i < k; ++i)
        image[i] = i;
    do {
        perms.emplace_back(image);
    } while (std::next_permutation(image.begin(), image.end()));
    return group_from_permutations(perms);
}

/// Subgroup generated by `generators` (element indices), as a membership mask.
inline std::vector<bool> generated_subgroup(const FiniteGroup& h, const std::vector<std::size_t>& generators) {
    std::vector<bool> in(h.order(), false);
    std::vector<std::size_t> frontier{0};
    in[0] = true;
    while (!frontier.empty()) {
        std::size_t x = frontier.back();
        frontier.pop_back();
        for (std::size_t s : generators) {
            std::size_t y = h(x, s);
            if (!in[y]) {
                in[y] = true;
                frontier.push_back(y);
            }
        }
    }
    return in;
}

/// An explicit isomorphism a → b as an element map, or nullopt. Backtracking
/// over images of the lowest unmapped element, restricted to elements of the
/// same order; each choice is closed under products before branching again.
inline std::optional<Permutation> groups_isomorphic(const FiniteGroup& a, const FiniteGroup& b,
                                                    std::size_t max_order = 24) {
    const std::size_t n = a.order();
    if (n > max_order || b.order() > max_order)
        throw Error(ErrorCode::TooLarge, "isomorphism search limited to order " + std::to_string(max_order));
    if (n != b.order())
        return std::nullopt;
    std::vector<std::size_t> order_a(n), order_b(n);
    for (std::size_t x = 0; x < n; ++x) {
        order_a[x] = a.element_order(x);
        order_b[x] = b.element_order(x);
    }
    {
        auto sa = order_a, sb = order_b;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb)
            return std::nullopt;
    }

    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    struct State {
        std::vector<std::size_t> image;
        std::vector<bool> used;
    };

    // Extends `s` by x ↦ y and everything forced by products; false on conflict.
    auto assign_and_close = [&](State& s, std::size_t x, std::size_t y) {
        if (s.used[y] || order_a[x] != order_b[y])
            return false;
        s.image[x] = y;
        s.used[y] = true;
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < n; ++i) {
                if (s.image[i] == unset)
                    continue;
                for (std::size_t j = 0; j < n; ++j) {
                    if (s.image[j] == unset)
                        continue;
                    std::size_t k = a(i, j);
                    std::size_t target = b(s.image[i], s.image[j]);
                    if (s.image[k] == unset) {
                        if (s.used[target] || order_a[k] != order_b[target])
                            return false;
                        s.image[k] = target;
                        s.used[target] = true;
                        changed = true;
                    } else if (s.image[k] != target) {
                        return false;
                    }
                }
            }
        }
        return true;
    };

    std::optional<Permutation> found;
    auto search = [&](auto&& self, const State& s) -> void {
        auto next = std::find(s.image.begin(), s.image.end(), unset);
        if (next == s.image.end()) {
            found = Permutation(s.image);
            return;
        }
        const std::size_t x = static_cast<std::size_t>(next - s.image.begin());
        for (std::size_t y = 0; y < n && !found; ++y) {
            State trial = s;
            if (assign_and_close(trial, x, y))
                self(self, trial);
        }
    };

    State start{std::vector<std::size_t>(n, unset), std::vector<bool>(n, false)};
    if (!assign_and_close(start, 0, 0))
        return std::nullopt;
    search(search, start);
    return found;
}

} // namespace wgraph

#endif
