#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cogsheaf/errors.hpp"
#include "cogsheaf/matrix.hpp"
#include "cogsheaf/report.hpp"

namespace cogsheaf {

/// Group element id.  Id 0 is always the identity of its group.
using Elt = int;

/// A finite group given by its full Cayley table.  Construction checks only
/// shape (square table, entries in range); the group axioms are checked by
/// validate_group_table so that broken tables can be loaded and diagnosed.
class FiniteGroup {
public:
    explicit FiniteGroup(std::vector<std::vector<Elt>> table,
                         std::vector<std::string> labels = {},
                         std::string name = "")
        : order_(static_cast<int>(table.size())), labels_(std::move(labels)), name_(std::move(name)) {
        if (order_ == 0) throw InvalidInputError("empty group table");
        entries_.reserve(static_cast<std::size_t>(order_) * order_);
        for (const auto& row : table) {
            if (static_cast<int>(row.size()) != order_)
                throw InvalidInputError("group table is not square");
            for (Elt v : row) {
                if (v < 0 || v >= order_)
                    throw InvalidInputError("group table entry " + std::to_string(v) +
                                            " out of range [0," + std::to_string(order_) + ")");
                entries_.push_back(v);
            }
        }
        if (!labels_.empty() && static_cast<int>(labels_.size()) != order_)
            throw InvalidInputError("label count does not match group order");
    }

    int order() const { return order_; }
    const std::string& name() const { return name_; }
    const std::vector<std::string>& labels() const { return labels_; }

    Elt mul(Elt x, Elt y) const {
        check_element(x);
        check_element(y);
        return entries_[static_cast<std::size_t>(x) * order_ + y];
    }

    /// Left inverse from the table row; assumes a valid group.
    Elt inverse(Elt x) const {
        check_element(x);
        for (Elt y = 0; y < order_; ++y)
            if (mul(x, y) == 0 && mul(y, x) == 0) return y;
        throw InvalidInputError("element " + std::to_string(x) + " has no two-sided inverse");
    }

    std::string label(Elt x) const {
        check_element(x);
        return labels_.empty() ? std::to_string(x) : labels_[static_cast<std::size_t>(x)];
    }

    std::vector<std::vector<Elt>> table() const {
        std::vector<std::vector<Elt>> t(order_, std::vector<Elt>(order_));
        for (int i = 0; i < order_; ++i)
            for (int j = 0; j < order_; ++j) t[i][j] = entries_[static_cast<std::size_t>(i) * order_ + j];
        return t;
    }

    /// Structural equality: same order and same table.  Labels and names are
    /// display data and do not participate.
    friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
        return a.order_ == b.order_ && a.entries_ == b.entries_;
    }
    friend bool operator!=(const FiniteGroup& a, const FiniteGroup& b) { return !(a == b); }

private:
    void check_element(Elt x) const {
        if (x < 0 || x >= order_)
            throw InvalidInputError("element id " + std::to_string(x) + " out of range for group of order " +
                                    std::to_string(order_));
    }

    int order_;
    std::vector<Elt> entries_; // row-major Cayley table
    std::vector<std::string> labels_;
    std::string name_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Checks the group axioms on a Cayley table: Latin square, two-sided
/// identity at id 0, two-sided inverses, and associativity over all triples.
inline ValidationReport validate_group_table(const FiniteGroup& g) {
    ValidationReport report;
    const int n = g.order();

    for (Elt x = 0; x < n; ++x) {
        std::vector<bool> seen_row(n, false), seen_col(n, false);
        for (Elt y = 0; y < n; ++y) {
            const Elt r = g.mul(x, y);
            const Elt c = g.mul(y, x);
            if (seen_row[r])
                report.add("latin-square", "row " + std::to_string(x),
                           "duplicate value " + std::to_string(r));
            if (seen_col[c])
                report.add("latin-square", "column " + std::to_string(x),
                           "duplicate value " + std::to_string(c));
            seen_row[r] = true;
            seen_col[c] = true;
        }
    }

    for (Elt x = 0; x < n; ++x) {
        if (g.mul(0, x) != x || g.mul(x, 0) != x) {
            report.add("identity", "element " + std::to_string(x),
                       "id 0 is not a two-sided identity here");
        }
    }

    for (Elt x = 0; x < n; ++x) {
        bool has_inverse = false;
        for (Elt y = 0; y < n && !has_inverse; ++y)
            has_inverse = g.mul(x, y) == 0 && g.mul(y, x) == 0;
        if (!has_inverse)
            report.add("inverses", "element " + std::to_string(x), "no two-sided inverse");
    }

    for (Elt x = 0; x < n; ++x)
        for (Elt y = 0; y < n; ++y)
            for (Elt z = 0; z < n; ++z)
                if (g.mul(g.mul(x, y), z) != g.mul(x, g.mul(y, z))) {
                    report.add("associativity",
                               "(" + std::to_string(x) + "," + std::to_string(y) + "," +
                                   std::to_string(z) + ")");
                    if (report.violations().size() > 64) return report; // enough diagnostics
                }

    return report;
}

/// A homomorphism between finite groups, stored as the image of every source
/// element.  Construction checks shape only; validate_hom checks the law.
struct GroupHom {
    GroupPtr src;
    GroupPtr dst;
    std::vector<Elt> image;

    GroupHom(GroupPtr s, GroupPtr d, std::vector<Elt> img)
        : src(std::move(s)), dst(std::move(d)), image(std::move(img)) {
        if (!src || !dst) throw InvalidInputError("homomorphism with null group");
        if (static_cast<int>(image.size()) != src->order())
            throw InvalidInputError("homomorphism image size " + std::to_string(image.size()) +
                                    " does not match source order " + std::to_string(src->order()));
        for (Elt v : image)
            if (v < 0 || v >= dst->order())
                throw InvalidInputError("homomorphism image value " + std::to_string(v) + " out of range");
    }

    Elt apply(Elt x) const {
        if (x < 0 || x >= src->order())
            throw InvalidInputError("element id " + std::to_string(x) + " out of source range");
        return image[static_cast<std::size_t>(x)];
    }

    friend bool operator==(const GroupHom& a, const GroupHom& b) {
        return *a.src == *b.src && *a.dst == *b.dst && a.image == b.image;
    }
    friend bool operator!=(const GroupHom& a, const GroupHom& b) { return !(a == b); }
};

/// Identity homomorphism on a group.
inline GroupHom identity_hom(GroupPtr g) {
    std::vector<Elt> img(static_cast<std::size_t>(g->order()));
    for (Elt x = 0; x < g->order(); ++x) img[static_cast<std::size_t>(x)] = x;
    return GroupHom(g, g, std::move(img));
}

/// Checks image[0] = 0 and image[xy] = image[x]image[y] on all pairs; with
/// require_injective also checks the kernel is trivial.
inline ValidationReport validate_hom(const GroupHom& h, bool require_injective) {
    ValidationReport report;
    if (h.apply(0) != 0)
        report.add("identity-preservation", "element 0",
                   "maps to " + std::to_string(h.apply(0)));
    const int n = h.src->order();
    for (Elt x = 0; x < n; ++x)
        for (Elt y = 0; y < n; ++y) {
            const Elt lhs = h.apply(h.src->mul(x, y));
            const Elt rhs = h.dst->mul(h.apply(x), h.apply(y));
            if (lhs != rhs)
                report.add("homomorphism-law",
                           "pair (" + std::to_string(x) + "," + std::to_string(y) + ")",
                           std::to_string(lhs) + " != " + std::to_string(rhs));
        }
    if (require_injective) {
        for (Elt x = 1; x < n; ++x)
            if (h.apply(x) == 0)
                report.add("injectivity", "element " + std::to_string(x), "lies in the kernel");
    }
    return report;
}

/// by . x . by^-1 in g.
inline Elt conjugate(const FiniteGroup& g, Elt by, Elt x) {
    return g.mul(g.mul(by, x), g.inverse(by));
}

/// Left regular representation: element x goes to the |G| x |G| permutation
/// matrix with entry (x.c, c) = 1.  Faithful, so it realizes any finite group
/// inside GL over any field.
template <typename F>
std::vector<Matrix<F>> regular_representation(const FiniteGroup& g, F field) {
    const int n = g.order();
    std::vector<Matrix<F>> rep;
    rep.reserve(static_cast<std::size_t>(n));
    for (Elt x = 0; x < n; ++x) {
        Matrix<F> m(field, static_cast<std::size_t>(n), static_cast<std::size_t>(n));
        for (Elt c = 0; c < n; ++c)
            m(static_cast<std::size_t>(g.mul(x, c)), static_cast<std::size_t>(c)) = field.one();
        rep.push_back(std::move(m));
    }
    return rep;
}

} // namespace cogsheaf
