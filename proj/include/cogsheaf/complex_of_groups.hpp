#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cogsheaf/group.hpp"
#include "cogsheaf/group_catalog.hpp"
#include "cogsheaf/report.hpp"
#include "cogsheaf/scwol.hpp"

namespace cogsheaf {

/// A complex of groups: a base scwol, a finite local group per object, an
/// embedding psi_a : G_initial(a) -> G_terminal(a) per arrow, and a sparse
/// table of twisting elements g_{a,b} in G_terminal(a) per composable pair
/// (absent entries are the identity).  Twists on pairs involving identity
/// arrows are the group identity and psi of an identity arrow is the identity
/// homomorphism; both are implicit.
class ComplexOfGroups {
public:
    ComplexOfGroups(Scwol base, std::map<ObjId, GroupPtr> local_groups,
                    std::map<ArrowId, GroupHom> embeddings,
                    std::map<std::pair<ArrowId, ArrowId>, Elt> twists = {})
        : base_(std::move(base)), local_groups_(std::move(local_groups)),
          embeddings_(std::move(embeddings)), twists_(std::move(twists)) {
        for (ObjId v : base_.objects()) {
            auto it = local_groups_.find(v);
            if (it == local_groups_.end() || !it->second)
                throw InvalidInputError("missing local group at object " + std::to_string(v));
        }
        if (local_groups_.size() != base_.objects().size())
            throw InvalidInputError("local group assigned to an unknown object");
        for (const Arrow& a : base_.arrows())
            if (!embeddings_.count(a.id))
                throw InvalidInputError("missing arrow homomorphism at arrow " + std::to_string(a.id));
        if (embeddings_.size() != base_.arrows().size())
            throw InvalidInputError("arrow homomorphism assigned to an unknown arrow");
        for (const auto& [pair, g] : twists_) {
            if (!base_.has_arrow(pair.first) || !base_.has_arrow(pair.second) ||
                !base_.composable(pair.first, pair.second))
                throw InvalidInputError("twist on non-composable pair (" + std::to_string(pair.first) +
                                        "," + std::to_string(pair.second) + ")");
            const GroupPtr& host = local_groups_.at(base_.terminal(pair.first));
            if (g < 0 || g >= host->order())
                throw InvalidInputError("twist element out of range on pair (" +
                                        std::to_string(pair.first) + "," + std::to_string(pair.second) + ")");
        }
    }

    const Scwol& base() const { return base_; }
    const std::map<ObjId, GroupPtr>& local_groups() const { return local_groups_; }
    const std::map<ArrowId, GroupHom>& embeddings() const { return embeddings_; }
    const std::map<std::pair<ArrowId, ArrowId>, Elt>& twists() const { return twists_; }

    const GroupPtr& group_at(ObjId v) const {
        auto it = local_groups_.find(v);
        if (it == local_groups_.end())
            throw InvalidInputError("no local group at object " + std::to_string(v));
        return it->second;
    }

    const GroupHom& embedding(ArrowId a) const {
        auto it = embeddings_.find(a);
        if (it == embeddings_.end())
            throw InvalidInputError("no homomorphism at arrow " + std::to_string(a));
        return it->second;
    }

    /// g_{a,b}; identity when no entry is stored.
    Elt twist(ArrowId a, ArrowId b) const {
        auto it = twists_.find({a, b});
        return it == twists_.end() ? 0 : it->second;
    }

    friend bool operator==(const ComplexOfGroups& x, const ComplexOfGroups& y) {
        if (x.base_ != y.base_ || x.twists_ != y.twists_) return false;
        if (x.local_groups_.size() != y.local_groups_.size()) return false;
        for (const auto& [v, g] : x.local_groups_) {
            auto it = y.local_groups_.find(v);
            if (it == y.local_groups_.end() || *g != *it->second) return false;
        }
        if (x.embeddings_.size() != y.embeddings_.size()) return false;
        for (const auto& [a, h] : x.embeddings_) {
            auto it = y.embeddings_.find(a);
            if (it == y.embeddings_.end() || h != it->second) return false;
        }
        return true;
    }
    friend bool operator!=(const ComplexOfGroups& x, const ComplexOfGroups& y) { return !(x == y); }

private:
    Scwol base_;
    std::map<ObjId, GroupPtr> local_groups_;
    std::map<ArrowId, GroupHom> embeddings_;
    std::map<std::pair<ArrowId, ArrowId>, Elt> twists_;
};

using ComplexPtr = std::shared_ptr<const ComplexOfGroups>;

/// Theta(G): the complex of groups over the trivial scwol with local group G.
inline ComplexPtr theta_complex(GroupPtr g, ObjId object = 0) {
    return std::make_shared<ComplexOfGroups>(trivial_scwol(object),
                                             std::map<ObjId, GroupPtr>{{object, std::move(g)}},
                                             std::map<ArrowId, GroupHom>{});
}

/// Exhaustively checks the complex-of-groups axioms: the base is a valid
/// scwol with valid local groups, each psi_a is an injective homomorphism
/// typed G_initial(a) -> G_terminal(a), conjugation by the twist corrects
/// psi_a psi_b to psi_{ab} on every composable pair, and the cocycle
/// condition holds on every composable triple.
inline ValidationReport validate_cog(const ComplexOfGroups& c) {
    ValidationReport report;
    const Scwol& x = c.base();

    report.absorb(validate_scwol(x), "base scwol");
    for (const auto& [v, g] : c.local_groups())
        report.absorb(validate_group_table(*g), "local group at object " + std::to_string(v));
    if (!report.ok()) return report; // element arithmetic below needs valid structure

    for (const Arrow& a : x.arrows()) {
        const GroupHom& psi = c.embedding(a.id);
        const std::string where = "arrow " + std::to_string(a.id);
        if (*psi.src != *c.group_at(a.initial) || *psi.dst != *c.group_at(a.terminal)) {
            report.add("embedding-typing", where,
                       "homomorphism is not typed G_initial -> G_terminal");
            continue;
        }
        report.absorb(validate_hom(psi, /*require_injective=*/true), where);
    }
    if (!report.ok()) return report;

    const auto pairs = composable_sequences(x, 2);
    for (const auto& pr : pairs) {
        const ArrowId a = pr[0], b = pr[1];
        const auto ab = x.composite(a, b);
        if (!ab) continue; // scwol validation already flagged it
        const FiniteGroup& host = *c.group_at(x.terminal(a));
        const Elt g = c.twist(a, b);
        const GroupHom& psi_a = c.embedding(a);
        const GroupHom& psi_b = c.embedding(b);
        const GroupHom& psi_ab = c.embedding(*ab);
        const int n = c.group_at(x.initial(b))->order();
        for (Elt h = 0; h < n; ++h) {
            const Elt lhs = conjugate(host, g, psi_ab.apply(h));
            const Elt rhs = psi_a.apply(psi_b.apply(h));
            if (lhs != rhs) {
                report.add("twist-compatibility",
                           "pair (" + std::to_string(a) + "," + std::to_string(b) + ")",
                           "element " + std::to_string(h) + ": Ad(twist) psi_ab = " +
                               std::to_string(lhs) + " but psi_a psi_b = " + std::to_string(rhs));
                break;
            }
        }
    }

    for (const auto& tr : composable_sequences(x, 3)) {
        const ArrowId a = tr[0], b = tr[1], cc = tr[2];
        const auto ab = x.composite(a, b);
        const auto bc = x.composite(b, cc);
        if (!ab || !bc) continue;
        const FiniteGroup& host = *c.group_at(x.terminal(a));
        const Elt lhs = host.mul(c.embedding(a).apply(c.twist(b, cc)), c.twist(a, *bc));
        const Elt rhs = host.mul(c.twist(a, b), c.twist(*ab, cc));
        if (lhs != rhs)
            report.add("cocycle",
                       "triple (" + std::to_string(a) + "," + std::to_string(b) + "," +
                           std::to_string(cc) + ")",
                       std::to_string(lhs) + " != " + std::to_string(rhs));
    }

    return report;
}

/// A morphism from a complex of groups into Theta(target): a homomorphism
/// phi_sigma : G_sigma -> target per object and an element phi(a) of the
/// target per arrow.
struct GroupMorphismData {
    ComplexPtr source;
    GroupPtr target;
    std::map<ObjId, GroupHom> object_maps;  // phi_sigma
    std::map<ArrowId, Elt> arrow_elements;  // phi(a)

    GroupMorphismData(ComplexPtr src, GroupPtr tgt, std::map<ObjId, GroupHom> obj_maps,
                      std::map<ArrowId, Elt> arrow_elts)
        : source(std::move(src)), target(std::move(tgt)), object_maps(std::move(obj_maps)),
          arrow_elements(std::move(arrow_elts)) {
        if (!source || !target) throw InvalidInputError("morphism with null source or target");
        for (ObjId v : source->base().objects())
            if (!object_maps.count(v))
                throw InvalidInputError("morphism misses object map at " + std::to_string(v));
        if (object_maps.size() != source->base().objects().size())
            throw InvalidInputError("morphism maps an unknown object");
        for (const Arrow& a : source->base().arrows()) {
            auto it = arrow_elements.find(a.id);
            if (it == arrow_elements.end())
                throw InvalidInputError("morphism misses arrow element at " + std::to_string(a.id));
            if (it->second < 0 || it->second >= target->order())
                throw InvalidInputError("morphism arrow element out of range at " + std::to_string(a.id));
        }
        if (arrow_elements.size() != source->base().arrows().size())
            throw InvalidInputError("morphism assigns an element to an unknown arrow");
    }

    const GroupHom& object_map(ObjId v) const { return object_maps.at(v); }
    Elt arrow_element(ArrowId a) const { return arrow_elements.at(a); }

    friend bool operator==(const GroupMorphismData& x, const GroupMorphismData& y) {
        if (*x.source != *y.source || *x.target != *y.target) return false;
        if (x.arrow_elements != y.arrow_elements) return false;
        if (x.object_maps.size() != y.object_maps.size()) return false;
        for (const auto& [v, h] : x.object_maps) {
            auto it = y.object_maps.find(v);
            if (it == y.object_maps.end() || h != it->second) return false;
        }
        return true;
    }
    friend bool operator!=(const GroupMorphismData& x, const GroupMorphismData& y) { return !(x == y); }
};

/// Checks the two morphism equations exhaustively:
///   phi_terminal(a)(psi_a(g)) = phi(a) phi_initial(a)(g) phi(a)^-1   for all a, g
///   phi_terminal(a)(g_{a,b}) phi(ab) = phi(a) phi(b)                 for all composable (a,b)
/// With require_injective also checks each phi_sigma has trivial kernel.
inline ValidationReport validate_morphism_to_group(const GroupMorphismData& m, bool require_injective) {
    ValidationReport report;
    const ComplexOfGroups& c = *m.source;
    const Scwol& x = c.base();
    const FiniteGroup& target = *m.target;

    for (ObjId v : x.objects()) {
        const GroupHom& phi = m.object_map(v);
        const std::string where = "object " + std::to_string(v);
        if (*phi.src != *c.group_at(v) || *phi.dst != target) {
            report.add("object-map-typing", where, "phi_sigma is not typed G_sigma -> target");
            continue;
        }
        report.absorb(validate_hom(phi, require_injective), where);
    }
    if (!report.ok()) return report;

    for (const Arrow& a : x.arrows()) {
        const GroupHom& phi_i = m.object_map(a.initial);
        const GroupHom& phi_t = m.object_map(a.terminal);
        const GroupHom& psi = c.embedding(a.id);
        const Elt pa = m.arrow_element(a.id);
        const int n = c.group_at(a.initial)->order();
        for (Elt g = 0; g < n; ++g) {
            const Elt lhs = phi_t.apply(psi.apply(g));
            const Elt rhs = conjugate(target, pa, phi_i.apply(g));
            if (lhs != rhs) {
                report.add("conjugation-equation", "arrow " + std::to_string(a.id),
                           "element " + std::to_string(g) + ": " + std::to_string(lhs) + " != " +
                               std::to_string(rhs));
                break;
            }
        }
    }

    for (const auto& pr : composable_sequences(x, 2)) {
        const ArrowId a = pr[0], b = pr[1];
        const auto ab = x.composite(a, b);
        if (!ab) continue;
        const Elt lhs = target.mul(m.object_map(x.terminal(a)).apply(c.twist(a, b)),
                                   m.arrow_element(*ab));
        const Elt rhs = target.mul(m.arrow_element(a), m.arrow_element(b));
        if (lhs != rhs)
            report.add("composition-equation",
                       "pair (" + std::to_string(a) + "," + std::to_string(b) + ")",
                       std::to_string(lhs) + " != " + std::to_string(rhs));
    }

    return report;
}

/// A complex of groups built from nested subgroups of one ambient group,
/// together with its canonical morphism into Theta(ambient).
struct SimpleCog {
    ComplexPtr complex;
    GroupMorphismData morphism;
};

/// Builds the complex with psi = subgroup inclusion and all twists trivial,
/// from an assignment of a subgroup of `ambient` to every object.  Requires
/// assign(initial(a)) to be contained in assign(terminal(a)) for every arrow;
/// the canonical morphism (phi_sigma = inclusion, phi(a) = identity) is
/// injective on local groups by construction.
inline SimpleCog simple_cog_from_subgroups(const GroupPtr& ambient, const Scwol& base,
                                           const std::map<ObjId, std::vector<Elt>>& assign) {
    std::map<ObjId, Subgroup> subgroups;
    std::map<ObjId, std::map<Elt, Elt>> local_of; // ambient id -> local id, per object
    for (ObjId v : base.objects()) {
        auto it = assign.find(v);
        if (it == assign.end())
            throw InvalidInputError("no subgroup assigned to object " + std::to_string(v));
        Subgroup sub = subgroup_from_elements(ambient, it->second,
                                              "sub" + std::to_string(v));
        for (std::size_t k = 0; k < sub.embed.size(); ++k)
            local_of[v][sub.embed[k]] = static_cast<Elt>(k);
        subgroups.emplace(v, std::move(sub));
    }

    std::map<ObjId, GroupPtr> local_groups;
    for (const auto& [v, sub] : subgroups) local_groups[v] = sub.group;

    std::map<ArrowId, GroupHom> embeddings;
    for (const Arrow& a : base.arrows()) {
        const Subgroup& from = subgroups.at(a.initial);
        const Subgroup& to = subgroups.at(a.terminal);
        std::vector<Elt> image;
        image.reserve(from.embed.size());
        for (Elt ambient_id : from.embed) {
            auto it = local_of.at(a.terminal).find(ambient_id);
            if (it == local_of.at(a.terminal).end())
                throw InvalidInputError("subgroup inclusion violated at arrow " + std::to_string(a.id) +
                                        ": element " + std::to_string(ambient_id) +
                                        " of the initial subgroup is missing from the terminal one");
            image.push_back(it->second);
        }
        embeddings.emplace(a.id, GroupHom(from.group, to.group, std::move(image)));
    }

    auto complex = std::make_shared<ComplexOfGroups>(base, std::move(local_groups), std::move(embeddings));

    std::map<ObjId, GroupHom> object_maps;
    for (const auto& [v, sub] : subgroups)
        object_maps.emplace(v, GroupHom(sub.group, ambient, sub.embed));
    std::map<ArrowId, Elt> arrow_elements;
    for (const Arrow& a : base.arrows()) arrow_elements[a.id] = 0;

    GroupMorphismData morphism(complex, ambient, std::move(object_maps), std::move(arrow_elements));
    return {complex, std::move(morphism)};
}

} // namespace cogsheaf
