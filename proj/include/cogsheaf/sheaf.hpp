#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cogsheaf/bh_category.hpp"
#include "cogsheaf/complex_of_groups.hpp"
#include "cogsheaf/matrix.hpp"

namespace cogsheaf {

/// A sheaf over (the category of) a complex of groups, stored in generator
/// form: a stalk dimension per object, a matrix representation of each local
/// group, and one matrix per base arrow.  The value on a general arrow
/// (g, alpha) is rho_terminal(alpha)(g) . A_alpha, which the decomposition
/// (g, alpha) = (g, 1_terminal(alpha))(1, alpha) makes lossless.
///
/// A_a has shape dim(terminal(a)) x dim(initial(a)), i.e. it maps the stalk
/// at the bigger cell to the stalk at the face.
template <typename F>
class Sheaf {
public:
    Sheaf(F field, ComplexPtr base, std::map<ObjId, int> dims,
          std::map<ObjId, std::vector<Matrix<F>>> representations,
          std::map<ArrowId, Matrix<F>> arrow_matrices)
        : field_(std::move(field)), base_(std::move(base)), dims_(std::move(dims)),
          rho_(std::move(representations)), arrow_(std::move(arrow_matrices)) {
        if (!base_) throw InvalidInputError("sheaf over a null complex");
        const Scwol& x = base_->base();
        for (ObjId v : x.objects()) {
            auto dit = dims_.find(v);
            if (dit == dims_.end() || dit->second < 0)
                throw InvalidInputError("sheaf misses a dimension at object " + std::to_string(v));
            auto rit = rho_.find(v);
            if (rit == rho_.end())
                throw InvalidInputError("sheaf misses the representation at object " + std::to_string(v));
            const int order = base_->group_at(v)->order();
            if (static_cast<int>(rit->second.size()) != order)
                throw InvalidInputError("representation at object " + std::to_string(v) + " has " +
                                        std::to_string(rit->second.size()) + " matrices for a group of order " +
                                        std::to_string(order));
            for (const Matrix<F>& m : rit->second) {
                if (m.field() != field_) throw FieldMismatchError("representation matrix in a foreign field");
                if (m.rows() != static_cast<std::size_t>(dit->second) ||
                    m.cols() != static_cast<std::size_t>(dit->second))
                    throw InvalidInputError("representation matrix at object " + std::to_string(v) +
                                            " is not dim x dim");
            }
        }
        if (dims_.size() != x.objects().size() || rho_.size() != x.objects().size())
            throw InvalidInputError("sheaf data keyed by an unknown object");
        for (const Arrow& a : x.arrows()) {
            auto it = arrow_.find(a.id);
            if (it == arrow_.end())
                throw InvalidInputError("sheaf misses the matrix at arrow " + std::to_string(a.id));
            if (it->second.field() != field_) throw FieldMismatchError("arrow matrix in a foreign field");
            if (it->second.rows() != static_cast<std::size_t>(dims_.at(a.terminal)) ||
                it->second.cols() != static_cast<std::size_t>(dims_.at(a.initial)))
                throw InvalidInputError("arrow matrix at " + std::to_string(a.id) +
                                        " has shape " + std::to_string(it->second.rows()) + "x" +
                                        std::to_string(it->second.cols()) + ", expected " +
                                        std::to_string(dims_.at(a.terminal)) + "x" +
                                        std::to_string(dims_.at(a.initial)));
        }
        if (arrow_.size() != x.arrows().size())
            throw InvalidInputError("sheaf data keyed by an unknown arrow");
    }

    const F& field() const { return field_; }
    const ComplexPtr& base() const { return base_; }
    const std::map<ObjId, int>& dims() const { return dims_; }
    const std::map<ObjId, std::vector<Matrix<F>>>& representations() const { return rho_; }
    const std::map<ArrowId, Matrix<F>>& arrow_matrices() const { return arrow_; }

    int dim(ObjId v) const {
        auto it = dims_.find(v);
        if (it == dims_.end()) throw InvalidInputError("no stalk at object " + std::to_string(v));
        return it->second;
    }

    const Matrix<F>& representation(ObjId v, Elt g) const {
        auto it = rho_.find(v);
        if (it == rho_.end()) throw InvalidInputError("no representation at object " + std::to_string(v));
        if (g < 0 || g >= static_cast<Elt>(it->second.size()))
            throw InvalidInputError("element " + std::to_string(g) + " out of range at object " +
                                    std::to_string(v));
        return it->second[static_cast<std::size_t>(g)];
    }

    const Matrix<F>& arrow_matrix(ArrowId a) const {
        auto it = arrow_.find(a);
        if (it == arrow_.end()) throw InvalidInputError("no matrix at arrow " + std::to_string(a));
        return it->second;
    }

    friend bool operator==(const Sheaf& x, const Sheaf& y) {
        return x.field_ == y.field_ && *x.base_ == *y.base_ && x.dims_ == y.dims_ &&
               x.rho_ == y.rho_ && x.arrow_ == y.arrow_;
    }
    friend bool operator!=(const Sheaf& x, const Sheaf& y) { return !(x == y); }

private:
    F field_;
    ComplexPtr base_;
    std::map<ObjId, int> dims_;
    std::map<ObjId, std::vector<Matrix<F>>> rho_;
    std::map<ArrowId, Matrix<F>> arrow_;
};

/// The value of the sheaf on a category arrow (g, alpha), a matrix mapping
/// the stalk at source(alpha) to the stalk at target(alpha).
template <typename F>
Matrix<F> sheaf_value(const Sheaf<F>& sheaf, const BHArrow& x) {
    BHCategory cat(sheaf.base());
    cat.check(x);
    if (x.on_identity) return sheaf.representation(x.base, x.g);
    const ObjId t = sheaf.base()->base().terminal(x.base);
    return mat_mul(sheaf.representation(t, x.g), sheaf.arrow_matrix(x.base));
}

/// Functoriality in generator form.  Checks, in deterministic order:
/// each rho_sigma sends the identity to the identity matrix and is
/// multiplicative; every arrow matrix intertwines rho_initial with
/// rho_terminal through the embedding; and composable pairs satisfy
/// A_a A_b = rho_terminal(a)(g_{a,b}) A_{ab}.  Together these are exactly
/// functoriality of the induced assignment on all category arrows.
template <typename F>
ValidationReport validate_sheaf(const Sheaf<F>& sheaf) {
    ValidationReport report;
    const ComplexOfGroups& c = *sheaf.base();
    const Scwol& x = c.base();

    for (ObjId v : x.objects()) {
        if (!sheaf.representation(v, 0).is_identity())
            report.add("representation-identity", "object " + std::to_string(v),
                       "rho(identity) is not the identity matrix");
        const int n = c.group_at(v)->order();
        bool bad = false;
        for (Elt g = 0; g < n && !bad; ++g)
            for (Elt h = 0; h < n && !bad; ++h) {
                const Matrix<F> lhs = mat_mul(sheaf.representation(v, g), sheaf.representation(v, h));
                if (lhs != sheaf.representation(v, c.group_at(v)->mul(g, h))) {
                    report.add("representation-multiplicativity", "object " + std::to_string(v),
                               "fails at pair (" + std::to_string(g) + "," + std::to_string(h) + ")");
                    bad = true;
                }
            }
    }

    for (const Arrow& a : x.arrows()) {
        const GroupHom& psi = c.embedding(a.id);
        const int n = c.group_at(a.initial)->order();
        for (Elt g = 0; g < n; ++g) {
            const Matrix<F> lhs = mat_mul(sheaf.arrow_matrix(a.id), sheaf.representation(a.initial, g));
            const Matrix<F> rhs =
                mat_mul(sheaf.representation(a.terminal, psi.apply(g)), sheaf.arrow_matrix(a.id));
            if (lhs != rhs) {
                report.add("intertwining", "arrow " + std::to_string(a.id),
                           "fails at element " + std::to_string(g));
                break;
            }
        }
    }

    for (const auto& pr : composable_sequences(x, 2)) {
        const ArrowId a = pr[0], b = pr[1];
        const auto ab = x.composite(a, b);
        if (!ab) continue;
        const Matrix<F> lhs = mat_mul(sheaf.arrow_matrix(a), sheaf.arrow_matrix(b));
        const Matrix<F> rhs = mat_mul(sheaf.representation(x.terminal(a), c.twist(a, b)),
                                      sheaf.arrow_matrix(*ab));
        if (lhs != rhs)
            report.add("twist-compatibility",
                       "pair (" + std::to_string(a) + "," + std::to_string(b) + ")",
                       lhs.str() + " != " + rhs.str());
    }

    return report;
}

/// Outcome of the three developability properties of a sheaf, with the first
/// counterexample of each failing one.
struct DevReport {
    bool constant_rank = false;
    std::optional<int> rank;                                    // witness when constant
    std::optional<std::pair<ObjId, ObjId>> rank_mismatch;       // objects with different dims

    bool all_invertible = false;
    std::optional<ArrowId> singular_arrow;

    bool injective_on_local_groups = false;
    std::optional<std::pair<ObjId, Elt>> kernel_witness;        // (object, g != identity) with rho = I

    bool verdict() const { return constant_rank && all_invertible && injective_on_local_groups; }

    /// Name of the first failing property in canonical order, empty when all
    /// three hold.
    std::string first_failure() const {
        if (!constant_rank) return "constant rank";
        if (!all_invertible) return "invertibility";
        if (!injective_on_local_groups) return "injectivity on local groups";
        return "";
    }

    std::string describe() const {
        std::string out;
        out += std::string("constant rank: ") + (constant_rank ? "yes" : "no");
        if (rank) out += " (rank " + std::to_string(*rank) + ")";
        if (rank_mismatch)
            out += " (objects " + std::to_string(rank_mismatch->first) + " and " +
                   std::to_string(rank_mismatch->second) + " differ)";
        out += std::string("\ninvertibility: ") + (all_invertible ? "yes" : "no");
        if (singular_arrow) out += " (arrow " + std::to_string(*singular_arrow) + " singular)";
        out += std::string("\ninjectivity on local groups: ") + (injective_on_local_groups ? "yes" : "no");
        if (kernel_witness)
            out += " (object " + std::to_string(kernel_witness->first) + ", element " +
                   std::to_string(kernel_witness->second) + " acts trivially)";
        return out;
    }
};

/// Checks the three developability properties of a valid sheaf: constant
/// rank; invertibility of every arrow matrix (identity arrows and
/// representation values are invertible automatically, and a non-square
/// arrow matrix counts as non-invertible); and trivial kernel of every local
/// representation.  Counterexamples are the first in id order.
template <typename F>
DevReport check_dev_properties(const Sheaf<F>& sheaf) {
    const ValidationReport valid = validate_sheaf(sheaf);
    if (!valid.ok())
        throw InvalidInputError("not a sheaf: " + valid.violations().front().rule + " at " +
                                valid.violations().front().where);

    const ComplexOfGroups& c = *sheaf.base();
    const Scwol& x = c.base();
    DevReport report;

    report.constant_rank = true;
    if (!x.objects().empty()) {
        const ObjId first = x.objects().front();
        report.rank = sheaf.dim(first);
        for (ObjId v : x.objects())
            if (sheaf.dim(v) != *report.rank) {
                report.constant_rank = false;
                report.rank_mismatch = {first, v};
                report.rank.reset();
                break;
            }
    }

    report.all_invertible = true;
    for (const Arrow& a : x.arrows())
        if (!is_invertible(sheaf.arrow_matrix(a.id))) {
            report.all_invertible = false;
            report.singular_arrow = a.id;
            break;
        }

    report.injective_on_local_groups = true;
    for (ObjId v : x.objects()) {
        const int n = c.group_at(v)->order();
        for (Elt g = 1; g < n; ++g)
            if (sheaf.representation(v, g).is_identity()) {
                report.injective_on_local_groups = false;
                report.kernel_witness = {v, g};
                break;
            }
        if (!report.injective_on_local_groups) break;
    }

    return report;
}

/// Realizes a morphism into Theta(G) as a sheaf through the left regular
/// representation of G: every stalk is the group algebra space of dimension
/// |G|, rho_sigma = R . phi_sigma and A_a = R(phi(a)).  When the morphism is
/// injective on local groups the result satisfies all three dev properties;
/// otherwise it is still a sheaf and check_dev_properties reports the
/// non-injective object.
template <typename F>
Sheaf<F> sheaf_from_morphism(const GroupMorphismData& m, F field) {
    const ValidationReport valid = validate_morphism_to_group(m, /*require_injective=*/false);
    if (!valid.ok())
        throw InvalidInputError("not a morphism: " + valid.violations().front().rule + " at " +
                                valid.violations().front().where);

    const std::vector<Matrix<F>> reg = regular_representation(*m.target, field);
    const int n = m.target->order();
    const ComplexOfGroups& c = *m.source;
    const Scwol& x = c.base();

    std::map<ObjId, int> dims;
    std::map<ObjId, std::vector<Matrix<F>>> rho;
    for (ObjId v : x.objects()) {
        dims[v] = n;
        std::vector<Matrix<F>> images;
        const GroupHom& phi = m.object_map(v);
        images.reserve(static_cast<std::size_t>(phi.src->order()));
        for (Elt g = 0; g < phi.src->order(); ++g)
            images.push_back(reg[static_cast<std::size_t>(phi.apply(g))]);
        rho.emplace(v, std::move(images));
    }
    std::map<ArrowId, Matrix<F>> arrows;
    for (const Arrow& a : x.arrows())
        arrows.emplace(a.id, reg[static_cast<std::size_t>(m.arrow_element(a.id))]);

    return Sheaf<F>(std::move(field), m.source, std::move(dims), std::move(rho), std::move(arrows));
}

// ---------------------------------------------------------------------------
// Pullbacks along functors between the categories of complexes of groups.
// ---------------------------------------------------------------------------

/// A functor between the categories of two complexes of groups, given by its
/// object map and its action on category arrows.  The supported targets are
/// the source itself (identity), an ambient complex (subcategory inclusion),
/// and one-object complexes Theta(G) (morphism-induced functors).
struct BHFunctor {
    ComplexPtr source;
    ComplexPtr target;
    std::function<ObjId(ObjId)> object_map;
    std::function<BHArrow(const BHArrow&)> arrow_map;
};

inline BHFunctor bh_identity_functor(ComplexPtr complex) {
    return {complex, complex, [](ObjId v) { return v; }, [](const BHArrow& x) { return x; }};
}

/// Inclusion of the full subcategory over sigma, presented as a functor from
/// Theta(G_sigma).
inline BHFunctor bh_inclusion_functor(ComplexPtr complex, ObjId sigma, ObjId theta_object = 0) {
    if (!complex->base().has_object(sigma))
        throw InvalidInputError("unknown object " + std::to_string(sigma));
    ComplexPtr theta = theta_complex(complex->group_at(sigma), theta_object);
    return {theta, complex, [sigma](ObjId) { return sigma; },
            [sigma](const BHArrow& x) { return BHArrow::at_identity(x.g, sigma); }};
}

/// The functor into Theta(target) induced by a morphism of complexes of
/// groups; arrows land on (phi_terminal(g) . phi(alpha), 1).
inline BHFunctor bh_morphism_functor(const GroupMorphismData& m, ObjId theta_object = 0) {
    ComplexPtr theta = theta_complex(m.target, theta_object);
    GroupMorphismData copy = m;
    return {m.source, theta, [theta_object](ObjId) { return theta_object; },
            [copy, theta_object](const BHArrow& x) {
                return BHArrow::at_identity(cat_to_hat_image(copy, x), theta_object);
            }};
}

/// The pullback sheaf along a functor: stalks and values are taken at the
/// image, re-expressed in generator form over the source.  Verifies
/// exhaustively that the given data is a functor (identities, endpoints,
/// composition) before transporting.
template <typename F>
Sheaf<F> pullback_sheaf(const BHFunctor& f, const Sheaf<F>& target_sheaf) {
    if (!f.source || !f.target) throw InvalidInputError("functor with null endpoints");
    if (target_sheaf.base() != f.target && *target_sheaf.base() != *f.target)
        throw InvalidInputError("sheaf does not live over the functor's target");

    BHCategory src(f.source);
    BHCategory dst(f.target);

    for (ObjId v : f.source->base().objects()) {
        if (!f.target->base().has_object(f.object_map(v)))
            throw InvalidInputError("functor object map leaves the target at " + std::to_string(v));
        const BHArrow image = f.arrow_map(src.identity(v));
        if (!dst.is_identity(image) || image.base != f.object_map(v))
            throw InvalidInputError("functor does not preserve the identity at " + std::to_string(v));
    }
    const std::vector<BHArrow> arrows = src.arrows();
    for (const BHArrow& x : arrows) {
        const BHArrow fx = f.arrow_map(x);
        dst.check(fx);
        if (dst.source(fx) != f.object_map(src.source(x)) ||
            dst.target(fx) != f.object_map(src.target(x)))
            throw InvalidInputError("functor does not preserve endpoints at " + x.str());
    }
    for (const BHArrow& x : arrows)
        for (const BHArrow& y : arrows) {
            if (!src.composable(x, y)) continue;
            const BHArrow lhs = f.arrow_map(compose_bh(src, x, y));
            const BHArrow rhs = compose_bh(dst, f.arrow_map(x), f.arrow_map(y));
            if (lhs != rhs)
                throw InvalidInputError("functor does not preserve composition at " + x.str() + " " +
                                        y.str());
        }

    std::map<ObjId, int> dims;
    std::map<ObjId, std::vector<Matrix<F>>> rho;
    std::map<ArrowId, Matrix<F>> arrow_matrices;
    for (ObjId v : f.source->base().objects()) {
        dims[v] = target_sheaf.dim(f.object_map(v));
        std::vector<Matrix<F>> images;
        const int n = f.source->group_at(v)->order();
        images.reserve(static_cast<std::size_t>(n));
        for (Elt g = 0; g < n; ++g)
            images.push_back(sheaf_value(target_sheaf, f.arrow_map(BHArrow::at_identity(g, v))));
        rho.emplace(v, std::move(images));
    }
    for (const Arrow& a : f.source->base().arrows())
        arrow_matrices.emplace(a.id,
                               sheaf_value(target_sheaf, f.arrow_map(BHArrow::at_arrow(0, a.id))));

    return Sheaf<F>(target_sheaf.field(), f.source, std::move(dims), std::move(rho),
                    std::move(arrow_matrices));
}

// ---------------------------------------------------------------------------
// Digraph sheaves in the style of cellular sheaves on graphs.
// ---------------------------------------------------------------------------

/// A sheaf over a digraph: a vector space dimension per vertex and per edge,
/// and per edge the two structure maps into the stalks of its endpoints.
template <typename F>
struct DigraphSheafData {
    ComplexDescription digraph; // triangles must be empty
    std::map<ObjId, int> vertex_dims;
    std::map<int, int> edge_dims;
    std::map<int, Matrix<F>> tail_maps; // stalk(e) -> stalk(tail(e))
    std::map<int, Matrix<F>> head_maps; // stalk(e) -> stalk(head(e))
};

template <typename F>
struct FriedmanSheaf {
    ScwolFromComplex cells;
    Sheaf<F> sheaf;
};

/// Transports a digraph sheaf onto the scwol of the digraph: trivial local
/// groups everywhere, and the arrow matrix on (edge object -> vertex object)
/// is exactly the corresponding structure map, bit for bit.
template <typename F>
FriedmanSheaf<F> friedman_to_scwol_sheaf(const DigraphSheafData<F>& d, F field) {
    if (!d.digraph.triangles.empty())
        throw InvalidInputError("digraph sheaf input contains triangles");
    ScwolFromComplex cells = complex_to_scwol(d.digraph);

    const GroupPtr trivial = trivial_group();
    std::map<ObjId, GroupPtr> local_groups;
    for (ObjId v : cells.scwol.objects()) local_groups[v] = trivial;
    std::map<ArrowId, GroupHom> embeddings;
    for (const Arrow& a : cells.scwol.arrows())
        embeddings.emplace(a.id, identity_hom(trivial));
    auto complex = std::make_shared<ComplexOfGroups>(cells.scwol, std::move(local_groups),
                                                     std::move(embeddings));

    std::map<ObjId, int> dims;
    std::map<ObjId, std::vector<Matrix<F>>> rho;
    std::map<ArrowId, Matrix<F>> arrows;

    auto stalk_dim = [&](const std::map<int, int>& table, int id, const char* kind) {
        auto it = table.find(id);
        if (it == table.end() || it->second < 0)
            throw InvalidInputError(std::string("missing stalk dimension at ") + kind + " " +
                                    std::to_string(id));
        return it->second;
    };

    for (ObjId v : d.digraph.vertices)
        dims[cells.vertex_object.at(v)] = stalk_dim(d.vertex_dims, v, "vertex");
    for (const auto& e : d.digraph.edges)
        dims[cells.edge_object.at(e.id)] = stalk_dim(d.edge_dims, e.id, "edge");
    for (const auto& [obj, dim] : dims) {
        std::vector<Matrix<F>> images;
        images.push_back(Matrix<F>::identity(field, static_cast<std::size_t>(dim)));
        rho.emplace(obj, std::move(images));
    }
    for (const auto& e : d.digraph.edges) {
        auto tit = d.tail_maps.find(e.id);
        auto hit = d.head_maps.find(e.id);
        if (tit == d.tail_maps.end() || hit == d.head_maps.end())
            throw InvalidInputError("missing structure map at edge " + std::to_string(e.id));
        if (tit->second.rows() != static_cast<std::size_t>(d.vertex_dims.at(e.tail)) ||
            tit->second.cols() != static_cast<std::size_t>(d.edge_dims.at(e.id)))
            throw InvalidInputError("tail map at edge " + std::to_string(e.id) + " has wrong shape");
        if (hit->second.rows() != static_cast<std::size_t>(d.vertex_dims.at(e.head)) ||
            hit->second.cols() != static_cast<std::size_t>(d.edge_dims.at(e.id)))
            throw InvalidInputError("head map at edge " + std::to_string(e.id) + " has wrong shape");
        arrows.emplace(cells.edge_tail_arrow.at(e.id), tit->second);
        arrows.emplace(cells.edge_head_arrow.at(e.id), hit->second);
    }

    Sheaf<F> sheaf(field, complex, std::move(dims), std::move(rho), std::move(arrows));
    return {std::move(cells), std::move(sheaf)};
}

} // namespace cogsheaf
