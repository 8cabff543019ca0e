#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "cogsheaf/complex_of_groups.hpp"

namespace cogsheaf {

/// An arrow (g, alpha) of the category built from a complex of groups:
/// alpha is a base arrow or a base identity 1_sigma, and g is an element of
/// the local group at terminal(alpha).
struct BHArrow {
    Elt g = 0;
    bool on_identity = true;
    int base = 0; // object id when on_identity, arrow id otherwise

    static BHArrow at_identity(Elt g, ObjId object) { return {g, true, object}; }
    static BHArrow at_arrow(Elt g, ArrowId arrow) { return {g, false, arrow}; }

    friend bool operator==(const BHArrow& x, const BHArrow& y) {
        return x.g == y.g && x.on_identity == y.on_identity && x.base == y.base;
    }
    friend bool operator!=(const BHArrow& x, const BHArrow& y) { return !(x == y); }
    friend bool operator<(const BHArrow& x, const BHArrow& y) {
        return std::tie(x.on_identity, x.base, x.g) < std::tie(y.on_identity, y.base, y.g);
    }

    std::string str() const {
        return "(" + std::to_string(g) + ", " + (on_identity ? "id:" : "a:") + std::to_string(base) + ")";
    }
};

/// The category of a complex of groups.  Arrows are kept implicit as
/// (element, base morphism) pairs; composites are computed on demand from
/// the embeddings and the twist table.
class BHCategory {
public:
    explicit BHCategory(ComplexPtr complex) : complex_(std::move(complex)) {
        if (!complex_) throw InvalidInputError("null complex");
    }

    const ComplexOfGroups& complex() const { return *complex_; }
    ComplexPtr complex_ptr() const { return complex_; }

    ObjId source(const BHArrow& x) const {
        check(x);
        return x.on_identity ? x.base : complex_->base().initial(x.base);
    }

    ObjId target(const BHArrow& x) const {
        check(x);
        return x.on_identity ? x.base : complex_->base().terminal(x.base);
    }

    BHArrow identity(ObjId v) const {
        if (!complex_->base().has_object(v))
            throw InvalidInputError("unknown object " + std::to_string(v));
        return BHArrow::at_identity(0, v);
    }

    bool is_identity(const BHArrow& x) const { return x.on_identity && x.g == 0; }

    bool composable(const BHArrow& x, const BHArrow& y) const {
        return source(x) == target(y);
    }

    /// Every arrow, identity components first (by object id, then element),
    /// then arrow components (by base arrow id, then element).
    std::vector<BHArrow> arrows() const {
        std::vector<BHArrow> out;
        for (ObjId v : complex_->base().objects())
            for (Elt g = 0; g < complex_->group_at(v)->order(); ++g)
                out.push_back(BHArrow::at_identity(g, v));
        for (const Arrow& a : complex_->base().arrows())
            for (Elt g = 0; g < complex_->group_at(a.terminal)->order(); ++g)
                out.push_back(BHArrow::at_arrow(g, a.id));
        return out;
    }

    std::size_t arrow_count() const {
        std::size_t n = 0;
        for (ObjId v : complex_->base().objects())
            n += static_cast<std::size_t>(complex_->group_at(v)->order());
        for (const Arrow& a : complex_->base().arrows())
            n += static_cast<std::size_t>(complex_->group_at(a.terminal)->order());
        return n;
    }

    void check(const BHArrow& x) const {
        const Scwol& base = complex_->base();
        if (x.on_identity) {
            if (!base.has_object(x.base))
                throw InvalidInputError("arrow over unknown object " + std::to_string(x.base));
            if (x.g < 0 || x.g >= complex_->group_at(x.base)->order())
                throw InvalidInputError("arrow element out of range at object " + std::to_string(x.base));
        } else {
            if (!base.has_arrow(x.base))
                throw InvalidInputError("arrow over unknown base arrow " + std::to_string(x.base));
            if (x.g < 0 || x.g >= complex_->group_at(base.terminal(x.base))->order())
                throw InvalidInputError("arrow element out of range at arrow " + std::to_string(x.base));
        }
    }

private:
    ComplexPtr complex_;
};

/// Builds the category of a validated complex.
inline BHCategory build_bh_category(ComplexPtr complex) {
    if (!complex) throw InvalidInputError("null complex");
    const ValidationReport report = validate_cog(*complex);
    if (!report.ok())
        throw InvalidInputError("invalid complex of groups: " + report.violations().front().rule +
                                " at " + report.violations().front().where);
    return BHCategory(std::move(complex));
}

/// Composite (g, alpha)(h, beta) = (g psi_alpha(h) g_{alpha,beta}, alpha beta)
/// for source(x) = target(y); identity components absorb:
/// (g, 1_t(beta))(h, beta) = (gh, beta) and (g, alpha)(h, 1_i(alpha)) =
/// (g psi_alpha(h), alpha).
inline BHArrow compose_bh(const BHCategory& cat, const BHArrow& x, const BHArrow& y) {
    if (!cat.composable(x, y))
        throw InvalidInputError("non-composable pair " + x.str() + " " + y.str());
    const ComplexOfGroups& c = cat.complex();
    if (x.on_identity && y.on_identity)
        return BHArrow::at_identity(c.group_at(x.base)->mul(x.g, y.g), x.base);
    if (x.on_identity)
        return BHArrow::at_arrow(c.group_at(x.base)->mul(x.g, y.g), y.base);
    const FiniteGroup& host = *c.group_at(c.base().terminal(x.base));
    if (y.on_identity)
        return BHArrow::at_arrow(host.mul(x.g, c.embedding(x.base).apply(y.g)), x.base);
    const auto ab = c.base().composite(x.base, y.base);
    if (!ab)
        throw InvalidInputError("base scwol has no composite for pair (" + std::to_string(x.base) +
                                "," + std::to_string(y.base) + ")");
    const Elt elem = host.mul(host.mul(x.g, c.embedding(x.base).apply(y.g)), c.twist(x.base, y.base));
    return BHArrow::at_arrow(elem, *ab);
}

/// The one-object category of a group; its arrows are the group elements and
/// composition mirrors the group law.
struct GroupCategory {
    GroupPtr group;

    Elt compose(Elt g, Elt h) const { return group->mul(g, h); }

    friend bool operator==(const GroupCategory& a, const GroupCategory& b) {
        return *a.group == *b.group;
    }
};

inline GroupCategory group_category(GroupPtr g) {
    if (!g) throw InvalidInputError("null group");
    return {std::move(g)};
}

/// The full subcategory over one object, under the canonical identification
/// of its arrows (g, 1_sigma) with the elements of the local group.
inline GroupCategory full_subcategory(const BHCategory& cat, ObjId sigma) {
    if (!cat.complex().base().has_object(sigma))
        throw InvalidInputError("unknown object " + std::to_string(sigma));
    return group_category(cat.complex().group_at(sigma));
}

/// Image of a category arrow (g, alpha) in the target group of a morphism:
/// phi_terminal(alpha)(g) . phi(alpha), with phi of an identity arrow equal
/// to the group identity.  This is the composite functor into the one-object
/// category of the target, read through that identification.
inline Elt cat_to_hat_image(const GroupMorphismData& m, const BHArrow& x) {
    const ComplexOfGroups& c = *m.source;
    BHCategory cat(m.source);
    cat.check(x);
    if (x.on_identity) return m.object_map(x.base).apply(x.g);
    const ObjId t = c.base().terminal(x.base);
    return m.target->mul(m.object_map(t).apply(x.g), m.arrow_element(x.base));
}

} // namespace cogsheaf
