#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "cogsheaf/cogsheaf.hpp"
#include "cogsheaf/fixtures.hpp"

namespace testutil {

using namespace cogsheaf;

inline std::string fixture_dir() { return COGSHEAF_FIXTURE_DIR; }
inline std::string cli_bin() { return COGSHEAF_CLI_BIN; }

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// ---------------------------------------------------------------------------
// Independent matrix oracles (kept free of the library's mat_* routines'
// control flow: plain index arithmetic only).
// ---------------------------------------------------------------------------

template <typename F>
Matrix<F> oracle_mul(const Matrix<F>& a, const Matrix<F>& b) {
    Matrix<F> c(a.field(), a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            auto acc = a.field().zero();
            for (std::size_t k = 0; k < a.cols(); ++k)
                acc = a.field().add(acc, a.field().mul(a(i, k), b(k, j)));
            c(i, j) = acc;
        }
    return c;
}

template <typename F>
Matrix<F> random_matrix(F field, Rng& rng, std::size_t rows, std::size_t cols) {
    Matrix<F> m(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = field.from_long(uniform(rng, -6, 6));
    return m;
}

/// Product of random elementary row operations applied to the identity, so
/// the result is invertible by construction.
template <typename F>
Matrix<F> random_invertible(F field, Rng& rng, std::size_t n) {
    Matrix<F> m = Matrix<F>::identity(field, n);
    const int ops = static_cast<int>(3 * n);
    for (int step = 0; step < ops; ++step) {
        const std::size_t r = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(n) - 1));
        std::size_t s = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(n) - 1));
        if (n > 1 && s == r) s = (s + 1) % n;
        switch (uniform(rng, 0, 2)) {
        case 0: // add a multiple of row s to row r
            if (r != s) {
                const auto factor = field.from_long(uniform(rng, -3, 3));
                for (std::size_t j = 0; j < n; ++j)
                    m(r, j) = field.add(m(r, j), field.mul(factor, m(s, j)));
            }
            break;
        case 1: // swap rows
            if (r != s)
                for (std::size_t j = 0; j < n; ++j) std::swap(m(r, j), m(s, j));
            break;
        default: { // scale a row by a nonzero value
            long v = uniform(rng, 1, 3);
            if (uniform(rng, 0, 1)) v = -v;
            for (std::size_t j = 0; j < n; ++j) m(r, j) = field.mul(m(r, j), field.from_long(v));
            break;
        }
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// Fixture instances, shared with the shipped bundle definitions.  The JSON
// files under fixtures/ mirror these; test_io cross-checks the two.
// ---------------------------------------------------------------------------

inline Scwol segment_scwol() { return fixtures::segment_scwol(); }
inline SimpleCog make_fix_seg() { return fixtures::segment_of_groups(); }
inline Scwol circuit_scwol() { return fixtures::circuit_scwol(); }
inline ComplexPtr make_fix_circ_complex() { return fixtures::circuit_complex(); }
inline Sheaf<RationalField> make_fix_circ_sheaf(ComplexPtr complex) {
    return fixtures::circuit_holonomy_sheaf(std::move(complex));
}
inline ComplexDescription triangle_complex_description() { return fixtures::triangle_complex(); }
inline ComplexPtr make_fix_tri_complex() { return fixtures::triangle_twist_complex(); }
inline Sheaf<RationalField> make_fix_tri_sheaf(ComplexPtr complex) {
    return fixtures::triangle_sign_sheaf(std::move(complex));
}
inline ComplexPtr make_fix_triv_complex() { return fixtures::theta_z2(); }
inline GroupMorphismData make_fix_triv_morphism(ComplexPtr theta) {
    return fixtures::theta_z2_identity_morphism(std::move(theta));
}
inline Sheaf<RationalField> make_fix_triv_sheaf(ComplexPtr theta) {
    return fixtures::theta_z2_sign_sheaf(std::move(theta));
}
inline Sheaf<RationalField> make_trivial_rank1_sheaf(ComplexPtr complex) {
    return fixtures::trivial_rank1_sheaf(std::move(complex));
}

/// The fully materialized functor check: the value on every identity arrow
/// is an identity matrix and the value map is multiplicative over every
/// composable pair of category arrows.  This is the independent oracle for
/// the generator-based validator.
template <typename F>
bool oracle_functor_check(const Sheaf<F>& s) {
    const BHCategory cat(s.base());
    for (ObjId v : s.base()->base().objects())
        if (!sheaf_value(s, cat.identity(v)).is_identity()) return false;
    const std::vector<BHArrow> arrows = cat.arrows();
    for (const BHArrow& x : arrows)
        for (const BHArrow& y : arrows) {
            if (!cat.composable(x, y)) continue;
            if (sheaf_value(s, compose_bh(cat, x, y)) !=
                mat_mul(sheaf_value(s, x), sheaf_value(s, y)))
                return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// Materialization of the finite matrix group generated by a certificate's
// images, for re-validation through the group machinery.
// ---------------------------------------------------------------------------

template <typename F>
std::string matrix_key(const Matrix<F>& m) {
    return m.str();
}

/// Closes a set of invertible matrices under multiplication (up to `bound`
/// elements) and returns the resulting Cayley-table group plus the id of
/// every generator.  The identity matrix becomes element 0.
template <typename F>
struct MaterializedMatrixGroup {
    GroupPtr group;
    std::map<std::string, Elt> id_of; // matrix_key -> element id
};

template <typename F>
MaterializedMatrixGroup<F> materialize_matrix_group(const std::vector<Matrix<F>>& generators,
                                                    std::size_t bound) {
    if (generators.empty()) throw InvalidInputError("no generators");
    const F field = generators.front().field();
    const std::size_t n = generators.front().rows();
    const Matrix<F> id = Matrix<F>::identity(field, n);

    std::vector<Matrix<F>> elements{id};
    std::map<std::string, std::size_t> index{{matrix_key(id), 0}};
    std::vector<std::size_t> frontier{0};
    for (const Matrix<F>& g : generators) {
        const std::string key = matrix_key(g);
        if (!index.count(key)) {
            index[key] = elements.size();
            frontier.push_back(elements.size());
            elements.push_back(g);
        }
    }
    while (!frontier.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t i : frontier)
            for (std::size_t jj = 0; jj < elements.size(); ++jj) {
                for (const Matrix<F>& prod :
                     {mat_mul(elements[i], elements[jj]), mat_mul(elements[jj], elements[i])}) {
                    const std::string key = matrix_key(prod);
                    if (!index.count(key)) {
                        if (elements.size() >= bound)
                            throw InvalidInputError("matrix group exceeds bound");
                        index[key] = elements.size();
                        next.push_back(elements.size());
                        elements.push_back(prod);
                    }
                }
            }
        frontier = std::move(next);
    }

    const int order = static_cast<int>(elements.size());
    std::vector<std::vector<Elt>> table(order, std::vector<Elt>(order));
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b)
            table[a][b] = static_cast<Elt>(index.at(matrix_key(mat_mul(elements[a], elements[b]))));

    MaterializedMatrixGroup<F> out;
    out.group = std::make_shared<FiniteGroup>(std::move(table));
    for (const auto& [key, idx] : index) out.id_of[key] = static_cast<Elt>(idx);
    return out;
}

// ---------------------------------------------------------------------------
// Random structured instances.
// ---------------------------------------------------------------------------

/// A random connected digraph with at most max_vertices vertices.
inline ComplexDescription random_digraph(Rng& rng, int max_vertices, int max_edges,
                                         bool ensure_connected = true) {
    ComplexDescription c;
    const int nv = uniform(rng, 1, max_vertices);
    for (int v = 0; v < nv; ++v) c.vertices.push_back(v);
    int eid = 0;
    if (ensure_connected)
        for (int v = 1; v < nv; ++v) {
            const int u = uniform(rng, 0, v - 1);
            c.edges.push_back({eid++, u, v});
        }
    const int extra = uniform(rng, 0, max_edges);
    for (int k = 0; k < extra; ++k) {
        const int u = uniform(rng, 0, nv - 1);
        const int v = uniform(rng, 0, nv - 1);
        c.edges.push_back({eid++, u, v}); // loops and parallels allowed
    }
    return c;
}

/// A random connected complex of dimension <= 2: a triangle fan / strip plus
/// random extra edges.
inline ComplexDescription random_two_complex(Rng& rng, int max_triangles) {
    ComplexDescription c;
    const int nt = uniform(rng, 1, max_triangles);
    // Vertices 0..nt+1, triangle k on vertices {k, k+1, k+2}.
    const int nv = nt + 2;
    for (int v = 0; v < nv; ++v) c.vertices.push_back(v);
    std::map<std::pair<int, int>, int> edge_of;
    int eid = 0;
    auto edge = [&](int u, int v) {
        if (u > v) std::swap(u, v);
        auto it = edge_of.find({u, v});
        if (it != edge_of.end()) return it->second;
        edge_of[{u, v}] = eid;
        c.edges.push_back({eid, u, v});
        return eid++;
    };
    for (int k = 0; k < nt; ++k) {
        const int e1 = edge(k, k + 1);
        const int e2 = edge(k + 1, k + 2);
        const int e3 = edge(k, k + 2);
        c.triangles.push_back({k, {e1, e2, e3}});
    }
    const int extra = uniform(rng, 0, 2);
    for (int k = 0; k < extra; ++k) {
        const int u = uniform(rng, 0, nv - 1);
        const int v = uniform(rng, 0, nv - 1);
        if (u != v) edge(u, v);
    }
    return c;
}

/// A random group of order <= 24 from the catalog.
inline GroupPtr random_group(Rng& rng) {
    switch (uniform(rng, 0, 7)) {
    case 0: return cyclic_group(uniform(rng, 2, 24));
    case 1: return dihedral_group(uniform(rng, 2, 12));
    case 2: return symmetric_group(uniform(rng, 2, 4));
    case 3: return alternating_group(4);
    case 4: return direct_product(cyclic_group(2), cyclic_group(uniform(rng, 2, 12)));
    case 5: return direct_product(cyclic_group(3), cyclic_group(uniform(rng, 2, 8)));
    case 6: return direct_product(cyclic_group(2), symmetric_group(3));
    default: return cyclic_group(uniform(rng, 2, 12));
    }
}

/// A random subgroup of g, as ambient element ids (closure of a small random
/// generating set).
inline std::vector<Elt> random_subgroup(const GroupPtr& g, Rng& rng, int max_generators = 2) {
    std::vector<Elt> gens;
    const int k = uniform(rng, 0, max_generators);
    for (int i = 0; i < k; ++i) gens.push_back(uniform(rng, 0, g->order() - 1));
    return subgroup_generated(g, gens);
}

/// Longest chain length ending at each object (faces sit deeper than the
/// cells they bound).
inline std::map<ObjId, int> object_depths(const Scwol& x) {
    std::map<ObjId, int> depth;
    for (ObjId v : x.objects()) depth[v] = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Arrow& a : x.arrows()) {
            if (depth[a.terminal] < depth[a.initial] + 1) {
                depth[a.terminal] = depth[a.initial] + 1;
                changed = true;
            }
        }
    }
    return depth;
}

/// A random connected scwol with at most max_objects objects: either the
/// scwol of a random digraph or of a random 2-complex.
inline Scwol random_scwol(Rng& rng, int max_objects) {
    if (uniform(rng, 0, 1) == 0) {
        const int nv = std::max(1, std::min(4, max_objects / 2));
        return complex_to_scwol(random_digraph(rng, nv, std::max(0, max_objects - nv - 1))).scwol;
    }
    return complex_to_scwol(random_two_complex(rng, std::max(1, (max_objects - 2) / 4))).scwol;
}

/// A random developable instance: subgroup chain of a random ambient group
/// assigned by object depth, embeddings by inclusion.
inline SimpleCog random_simple_cog(Rng& rng, int max_objects) {
    const Scwol x = random_scwol(rng, max_objects);
    const GroupPtr ambient = random_group(rng);
    const std::map<ObjId, int> depth = object_depths(x);
    int max_depth = 0;
    for (const auto& [v, d] : depth) max_depth = std::max(max_depth, d);

    // A nested chain of subgroups, one per depth level, shallow to deep.
    std::vector<std::vector<Elt>> chain(static_cast<std::size_t>(max_depth) + 1);
    chain[static_cast<std::size_t>(max_depth)] = random_subgroup(ambient, rng);
    for (int level = max_depth - 1; level >= 0; --level) {
        // A random subgroup of the level above.
        const std::vector<Elt>& above = chain[static_cast<std::size_t>(level) + 1];
        Subgroup sub = subgroup_from_elements(ambient, above);
        const std::vector<Elt> local = random_subgroup(sub.group, rng, 1);
        std::vector<Elt> ambient_ids;
        for (Elt l : local) ambient_ids.push_back(sub.embed[static_cast<std::size_t>(l)]);
        chain[static_cast<std::size_t>(level)] = ambient_ids;
    }

    std::map<ObjId, std::vector<Elt>> assign;
    for (const auto& [v, d] : depth) assign[v] = chain[static_cast<std::size_t>(d)];
    return simple_cog_from_subgroups(ambient, x, assign);
}

} // namespace testutil
