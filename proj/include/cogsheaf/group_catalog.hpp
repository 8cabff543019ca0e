#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "cogsheaf/group.hpp"

namespace cogsheaf {

/// Z/n.
inline GroupPtr cyclic_group(int n) {
    if (n < 1) throw InvalidInputError("cyclic group needs order >= 1");
    std::vector<std::vector<Elt>> table(n, std::vector<Elt>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) table[x][y] = (x + y) % n;
    return std::make_shared<FiniteGroup>(std::move(table), std::vector<std::string>{}, "z" + std::to_string(n));
}

inline GroupPtr trivial_group() { return cyclic_group(1); }

/// Dihedral group of order 2n: ids 0..n-1 are rotations r^k, ids n..2n-1 are
/// reflections s r^k, with s r^k s = r^(-k).
inline GroupPtr dihedral_group(int n) {
    if (n < 1) throw InvalidInputError("dihedral group needs n >= 1");
    const int order = 2 * n;
    std::vector<std::vector<Elt>> table(order, std::vector<Elt>(order));
    for (int x = 0; x < order; ++x)
        for (int y = 0; y < order; ++y) {
            const bool xr = x < n, yr = y < n;
            const int a = xr ? x : x - n;
            const int b = yr ? y : y - n;
            if (xr && yr) table[x][y] = (a + b) % n;                 // r^a r^b
            else if (xr) table[x][y] = n + ((b - a) % n + n) % n;    // r^a (s r^b)
            else if (yr) table[x][y] = n + (a + b) % n;              // (s r^a) r^b
            else table[x][y] = ((b - a) % n + n) % n;                // (s r^a)(s r^b)
        }
    return std::make_shared<FiniteGroup>(std::move(table), std::vector<std::string>{}, "d" + std::to_string(n));
}

namespace detail {

inline void permutations_in_lex_order(int n, std::vector<std::vector<int>>& out) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
}

inline GroupPtr permutation_group(const std::vector<std::vector<int>>& perms, const std::string& name) {
    const int order = static_cast<int>(perms.size());
    std::map<std::vector<int>, Elt> index;
    for (int k = 0; k < order; ++k) index[perms[static_cast<std::size_t>(k)]] = k;
    std::vector<std::vector<Elt>> table(order, std::vector<Elt>(order));
    std::vector<std::string> labels;
    for (int x = 0; x < order; ++x) {
        std::string lbl = "(";
        for (std::size_t i = 0; i < perms[static_cast<std::size_t>(x)].size(); ++i)
            lbl += std::to_string(perms[static_cast<std::size_t>(x)][i]);
        lbl += ")";
        labels.push_back(lbl);
        for (int y = 0; y < order; ++y) {
            // Composition x after y: (x o y)(i) = x[y[i]].
            std::vector<int> comp(perms[static_cast<std::size_t>(x)].size());
            for (std::size_t i = 0; i < comp.size(); ++i)
                comp[i] = perms[static_cast<std::size_t>(x)][static_cast<std::size_t>(
                    perms[static_cast<std::size_t>(y)][i])];
            table[x][y] = index.at(comp);
        }
    }
    return std::make_shared<FiniteGroup>(std::move(table), std::move(labels), name);
}

inline bool is_even_permutation(const std::vector<int>& p) {
    int inversions = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inversions;
    return inversions % 2 == 0;
}

} // namespace detail

/// Symmetric group on n letters, elements in lexicographic one-line order
/// (so the identity permutation has id 0).
inline GroupPtr symmetric_group(int n) {
    if (n < 1 || n > 5) throw InvalidInputError("symmetric group supported for 1 <= n <= 5");
    std::vector<std::vector<int>> perms;
    detail::permutations_in_lex_order(n, perms);
    return detail::permutation_group(perms, "s" + std::to_string(n));
}

/// Alternating group on n letters.
inline GroupPtr alternating_group(int n) {
    if (n < 1 || n > 5) throw InvalidInputError("alternating group supported for 1 <= n <= 5");
    std::vector<std::vector<int>> perms, even;
    detail::permutations_in_lex_order(n, perms);
    for (const auto& p : perms)
        if (detail::is_even_permutation(p)) even.push_back(p);
    return detail::permutation_group(even, "a" + std::to_string(n));
}

/// Direct product; element (g, h) has id g*|H| + h.
inline GroupPtr direct_product(const GroupPtr& g, const GroupPtr& h) {
    const int ng = g->order(), nh = h->order();
    const int order = ng * nh;
    std::vector<std::vector<Elt>> table(order, std::vector<Elt>(order));
    for (int x = 0; x < order; ++x)
        for (int y = 0; y < order; ++y) {
            const Elt gx = x / nh, hx = x % nh, gy = y / nh, hy = y % nh;
            table[x][y] = g->mul(gx, gy) * nh + h->mul(hx, hy);
        }
    return std::make_shared<FiniteGroup>(std::move(table), std::vector<std::string>{},
                                         g->name() + "x" + h->name());
}

/// A subgroup of an ambient group, re-indexed with identity first.  `embed`
/// maps local element ids to ambient ids (sorted ascending, embed[0] = 0).
struct Subgroup {
    GroupPtr group;
    std::vector<Elt> embed;
};

/// Builds the subgroup on the given ambient element ids.  The set must
/// contain the identity and be closed under the ambient multiplication.
inline Subgroup subgroup_from_elements(const GroupPtr& ambient, std::vector<Elt> elements,
                                       const std::string& name = "") {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    for (Elt e : elements)
        if (e < 0 || e >= ambient->order())
            throw InvalidInputError("subgroup element " + std::to_string(e) + " out of range");
    if (elements.empty() || elements[0] != 0)
        throw InvalidInputError("subgroup must contain the identity (id 0)");
    std::map<Elt, Elt> local_of;
    for (std::size_t k = 0; k < elements.size(); ++k) local_of[elements[k]] = static_cast<Elt>(k);
    const int n = static_cast<int>(elements.size());
    std::vector<std::vector<Elt>> table(n, std::vector<Elt>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const Elt prod = ambient->mul(elements[static_cast<std::size_t>(x)],
                                          elements[static_cast<std::size_t>(y)]);
            auto it = local_of.find(prod);
            if (it == local_of.end())
                throw InvalidInputError("subgroup not closed: " + std::to_string(elements[x]) + "*" +
                                        std::to_string(elements[y]) + " = " + std::to_string(prod) +
                                        " escapes the set");
            table[x][y] = it->second;
        }
    return {std::make_shared<FiniteGroup>(std::move(table), std::vector<std::string>{}, name),
            std::move(elements)};
}

/// Closure of a generating set inside an ambient group.
inline std::vector<Elt> subgroup_generated(const GroupPtr& ambient, const std::vector<Elt>& gens) {
    std::set<Elt> closure{0};
    std::vector<Elt> frontier{0};
    for (Elt g : gens)
        if (closure.insert(g).second) frontier.push_back(g);
    while (!frontier.empty()) {
        std::vector<Elt> next;
        for (Elt a : frontier)
            for (Elt b : std::vector<Elt>(closure.begin(), closure.end())) {
                for (Elt prod : {ambient->mul(a, b), ambient->mul(b, a)})
                    if (closure.insert(prod).second) next.push_back(prod);
            }
        frontier = std::move(next);
    }
    return std::vector<Elt>(closure.begin(), closure.end());
}

} // namespace cogsheaf
