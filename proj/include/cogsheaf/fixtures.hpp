#pragma once

#include <map>
#include <utility>
#include <vector>

#include "cogsheaf/complex_of_groups.hpp"
#include "cogsheaf/group_catalog.hpp"
#include "cogsheaf/sheaf.hpp"

// The four instances shipped under fixtures/: a one-object complex with a
// sign representation, a segment of groups inside Z/12, a triangle with a
// twisted Z/2 structure, and a circuit with trivial groups and a nontrivial
// holonomy.  Together they exercise every equation family the validators
// and the certificate engine check.

namespace cogsheaf::fixtures {

/// Theta(Z/2) over the trivial scwol.
inline ComplexPtr theta_z2() { return theta_complex(cyclic_group(2)); }

inline GroupMorphismData theta_z2_identity_morphism(ComplexPtr theta) {
    return GroupMorphismData(theta, theta->group_at(0), {{0, identity_hom(theta->group_at(0))}},
                             {});
}

/// The rank-1 sign sheaf on Theta(Z/2).
inline Sheaf<RationalField> theta_z2_sign_sheaf(ComplexPtr theta) {
    const RationalField q;
    return Sheaf<RationalField>(q, std::move(theta), {{0, 1}},
                                {{0,
                                  {Matrix<RationalField>::identity(q, 1),
                                   Matrix<RationalField>::from_ints(q, {{-1}})}}},
                                {});
}

/// Segment scwol: objects e=0, v=1, w=2; arrows 0: e->v, 1: e->w.
inline Scwol segment_scwol() { return Scwol({0, 1, 2}, {{0, 0, 1}, {1, 0, 2}}); }

/// Segment of groups inside Z/12: local groups {0,6}, <3>, <2> with
/// inclusion embeddings, plus the canonical injective morphism to Z/12.
inline SimpleCog segment_of_groups() {
    return simple_cog_from_subgroups(cyclic_group(12), segment_scwol(),
                                     {{0, {0, 6}}, {1, {0, 3, 6, 9}}, {2, {0, 2, 4, 6, 8, 10}}});
}

/// Rank-1 sheaf with trivial action everywhere; valid on any untwisted
/// complex and never injective over a nontrivial local group.
inline Sheaf<RationalField> trivial_rank1_sheaf(ComplexPtr complex) {
    const RationalField q;
    std::map<ObjId, int> dims;
    std::map<ObjId, std::vector<Matrix<RationalField>>> rho;
    std::map<ArrowId, Matrix<RationalField>> arrows;
    for (ObjId v : complex->base().objects()) {
        dims[v] = 1;
        rho[v] = std::vector<Matrix<RationalField>>(
            static_cast<std::size_t>(complex->group_at(v)->order()),
            Matrix<RationalField>::identity(q, 1));
    }
    for (const Arrow& a : complex->base().arrows())
        arrows.emplace(a.id, Matrix<RationalField>::identity(q, 1));
    return Sheaf<RationalField>(q, std::move(complex), std::move(dims), std::move(rho),
                                std::move(arrows));
}

/// The single-triangle complex: vertices 0,1,2; edges 0:{0,1}, 1:{0,2},
/// 2:{1,2}; one triangle.
inline ComplexDescription triangle_complex() {
    ComplexDescription c;
    c.vertices = {0, 1, 2};
    c.edges = {{0, 0, 1}, {1, 0, 2}, {2, 1, 2}};
    c.triangles = {{0, {0, 1, 2}}};
    return c;
}

/// Z/2 at every cell of the triangle scwol, identity embeddings, and one
/// nontrivial twist on the composable pair (0, 6).
inline ComplexPtr triangle_twist_complex() {
    const Scwol x = complex_to_scwol(triangle_complex()).scwol;
    const GroupPtr z2 = cyclic_group(2);
    std::map<ObjId, GroupPtr> locals;
    std::map<ArrowId, GroupHom> psi;
    for (ObjId v : x.objects()) locals[v] = z2;
    for (const Arrow& a : x.arrows()) psi.emplace(a.id, identity_hom(z2));
    return std::make_shared<ComplexOfGroups>(x, std::move(locals), std::move(psi),
                                             std::map<std::pair<ArrowId, ArrowId>, Elt>{{{0, 6}, 1}});
}

/// The rank-1 sign sheaf on the twisted triangle: the involution acts by
/// [[-1]] on every stalk; the arrow matrix at arrow 0 is [[-1]], all others
/// [[1]].  With `flip_arrow_zero` the matrix at arrow 0 becomes [[1]], which
/// breaks twist compatibility exactly at the pair (0, 6).
inline Sheaf<RationalField> triangle_sign_sheaf(ComplexPtr complex, bool flip_arrow_zero = false) {
    const RationalField q;
    std::map<ObjId, int> dims;
    std::map<ObjId, std::vector<Matrix<RationalField>>> rho;
    std::map<ArrowId, Matrix<RationalField>> arrows;
    for (ObjId v : complex->base().objects()) {
        dims[v] = 1;
        rho[v] = {Matrix<RationalField>::identity(q, 1),
                  Matrix<RationalField>::from_ints(q, {{-1}})};
    }
    for (const Arrow& a : complex->base().arrows()) {
        const bool minus = a.id == 0 && !flip_arrow_zero;
        arrows.emplace(a.id, Matrix<RationalField>::from_ints(q, {{minus ? -1 : 1}}));
    }
    return Sheaf<RationalField>(q, std::move(complex), std::move(dims), std::move(rho),
                                std::move(arrows));
}

/// Circuit scwol: objects v=0, w=1, e1=2, e2=3; arrows 0: e1->v, 1: e1->w,
/// 2: e2->v, 3: e2->w.
inline Scwol circuit_scwol() {
    return Scwol({0, 1, 2, 3}, {{0, 2, 0}, {1, 2, 1}, {2, 3, 0}, {3, 3, 1}});
}

/// Trivial local groups on the circuit.
inline ComplexPtr circuit_complex() {
    const Scwol x = circuit_scwol();
    const GroupPtr triv = trivial_group();
    std::map<ObjId, GroupPtr> locals;
    std::map<ArrowId, GroupHom> psi;
    for (ObjId v : x.objects()) locals[v] = triv;
    for (const Arrow& a : x.arrows()) psi.emplace(a.id, identity_hom(triv));
    return std::make_shared<ComplexOfGroups>(x, std::move(locals), std::move(psi));
}

/// Rank-2 sheaf on the circuit whose non-tree arrow carries a quarter-turn
/// holonomy.
inline Sheaf<RationalField> circuit_holonomy_sheaf(ComplexPtr complex) {
    const RationalField q;
    std::map<ObjId, int> dims;
    std::map<ObjId, std::vector<Matrix<RationalField>>> rho;
    for (ObjId v : complex->base().objects()) {
        dims[v] = 2;
        rho[v] = {Matrix<RationalField>::identity(q, 2)};
    }
    std::map<ArrowId, Matrix<RationalField>> arrows;
    arrows.emplace(0, Matrix<RationalField>::identity(q, 2));
    arrows.emplace(1, Matrix<RationalField>::from_ints(q, {{1, 1}, {0, 1}}));
    arrows.emplace(2, Matrix<RationalField>::from_ints(q, {{1, 0}, {1, 1}}));
    arrows.emplace(3, Matrix<RationalField>::from_ints(q, {{0, -1}, {1, 0}}));
    return Sheaf<RationalField>(q, std::move(complex), std::move(dims), std::move(rho),
                                std::move(arrows));
}

/// The collapsed variant of the segment morphism: every local map factors
/// through a quotient, so the equations hold but injectivity fails.
inline GroupMorphismData segment_collapsed_morphism(const SimpleCog& seg) {
    GroupMorphismData collapsed = seg.morphism;
    const GroupPtr z12 = collapsed.target;
    collapsed.object_maps.at(0) = GroupHom(seg.complex->group_at(0), z12, {0, 0});
    collapsed.object_maps.at(1) = GroupHom(seg.complex->group_at(1), z12, {0, 6, 0, 6});
    collapsed.object_maps.at(2) = GroupHom(seg.complex->group_at(2), z12, {0, 4, 8, 0, 4, 8});
    return collapsed;
}

} // namespace cogsheaf::fixtures
