#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cogsheaf/errors.hpp"
#include "cogsheaf/report.hpp"

namespace cogsheaf {

using ObjId = int;
using ArrowId = int;

/// A non-identity arrow.  `initial` and `terminal` follow the convention that
/// arrows run from the bigger cell to its face, and a composite ab (defined
/// when initial(a) = terminal(b)) has initial(ab) = initial(b) and
/// terminal(ab) = terminal(a).
struct Arrow {
    ArrowId id;
    ObjId initial;
    ObjId terminal;

    friend bool operator==(const Arrow& a, const Arrow& b) {
        return a.id == b.id && a.initial == b.initial && a.terminal == b.terminal;
    }
};

/// A small category without loops: objects, non-identity arrows, and a
/// partial composition table.  Identity arrows are implicit.  Construction
/// checks referential integrity; the scwol axioms are checked by
/// validate_scwol.
class Scwol {
public:
    Scwol(std::vector<ObjId> objects, std::vector<Arrow> arrows,
          std::map<std::pair<ArrowId, ArrowId>, ArrowId> composition = {})
        : objects_(std::move(objects)), composition_(std::move(composition)) {
        std::sort(objects_.begin(), objects_.end());
        if (std::adjacent_find(objects_.begin(), objects_.end()) != objects_.end())
            throw InvalidInputError("duplicate object id");
        std::sort(arrows.begin(), arrows.end(), [](const Arrow& a, const Arrow& b) { return a.id < b.id; });
        for (const Arrow& a : arrows) {
            if (arrow_index_.count(a.id)) throw InvalidInputError("duplicate arrow id " + std::to_string(a.id));
            if (!has_object(a.initial) || !has_object(a.terminal))
                throw InvalidInputError("arrow " + std::to_string(a.id) + " references unknown object");
            arrow_index_[a.id] = arrows_.size();
            arrows_.push_back(a);
        }
        for (const auto& [pair, result] : composition_) {
            if (!arrow_index_.count(pair.first) || !arrow_index_.count(pair.second) ||
                !arrow_index_.count(result))
                throw InvalidInputError("composition entry references unknown arrow");
        }
    }

    const std::vector<ObjId>& objects() const { return objects_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const std::map<std::pair<ArrowId, ArrowId>, ArrowId>& composition() const { return composition_; }

    bool has_object(ObjId v) const {
        return std::binary_search(objects_.begin(), objects_.end(), v);
    }

    bool has_arrow(ArrowId a) const { return arrow_index_.count(a) != 0; }

    const Arrow& arrow(ArrowId a) const {
        auto it = arrow_index_.find(a);
        if (it == arrow_index_.end())
            throw InvalidInputError("unknown arrow id " + std::to_string(a));
        return arrows_[it->second];
    }

    ObjId initial(ArrowId a) const { return arrow(a).initial; }
    ObjId terminal(ArrowId a) const { return arrow(a).terminal; }

    bool composable(ArrowId a, ArrowId b) const { return initial(a) == terminal(b); }

    std::optional<ArrowId> composite(ArrowId a, ArrowId b) const {
        auto it = composition_.find({a, b});
        if (it == composition_.end()) return std::nullopt;
        return it->second;
    }

    /// Arrows with the given initial object, ascending by id.
    std::vector<ArrowId> arrows_from(ObjId v) const {
        std::vector<ArrowId> out;
        for (const Arrow& a : arrows_)
            if (a.initial == v) out.push_back(a.id);
        return out;
    }

    /// Arrows with the given terminal object, ascending by id.
    std::vector<ArrowId> arrows_into(ObjId v) const {
        std::vector<ArrowId> out;
        for (const Arrow& a : arrows_)
            if (a.terminal == v) out.push_back(a.id);
        return out;
    }

    friend bool operator==(const Scwol& a, const Scwol& b) {
        return a.objects_ == b.objects_ && a.arrows_ == b.arrows_ && a.composition_ == b.composition_;
    }
    friend bool operator!=(const Scwol& a, const Scwol& b) { return !(a == b); }

private:
    std::vector<ObjId> objects_;
    std::vector<Arrow> arrows_;
    std::map<ArrowId, std::size_t> arrow_index_;
    std::map<std::pair<ArrowId, ArrowId>, ArrowId> composition_;
};

/// The trivial scwol: one object, no arrows.
inline Scwol trivial_scwol(ObjId object = 0) { return Scwol({object}, {}); }

/// Checks the scwol axioms: stored arrows are non-identities, every
/// composable pair has a composite with loop-free typing, composition entries
/// sit only on composable pairs, and composition is associative on all
/// composable triples.
inline ValidationReport validate_scwol(const Scwol& x) {
    ValidationReport report;

    for (const Arrow& a : x.arrows())
        if (a.initial == a.terminal)
            report.add("no-endoarrows", "arrow " + std::to_string(a.id),
                       "non-identity arrow with initial = terminal");

    for (const auto& [pair, result] : x.composition()) {
        const auto [a, b] = pair;
        if (!x.composable(a, b)) {
            report.add("composition-typing",
                       "pair (" + std::to_string(a) + "," + std::to_string(b) + ")",
                       "entry on a non-composable pair");
        }
    }

    for (const Arrow& a : x.arrows())
        for (const Arrow& b : x.arrows()) {
            if (a.initial != b.terminal) continue;
            // The composite would run initial(b) -> terminal(a); if those
            // coincide it had to be an identity, which axiom 1 forbids.
            if (b.initial == a.terminal) {
                report.add("loop-free-composites",
                           "pair (" + std::to_string(a.id) + "," + std::to_string(b.id) + ")",
                           "composite would need initial = terminal");
                continue;
            }
            const auto ab = x.composite(a.id, b.id);
            if (!ab) {
                report.add("composition-closure",
                           "pair (" + std::to_string(a.id) + "," + std::to_string(b.id) + ")",
                           "no composite recorded");
                continue;
            }
            if (x.initial(*ab) != b.initial || x.terminal(*ab) != a.terminal)
                report.add("composition-typing",
                           "pair (" + std::to_string(a.id) + "," + std::to_string(b.id) + ")",
                           "composite " + std::to_string(*ab) + " has wrong endpoints");
        }

    for (const Arrow& a : x.arrows())
        for (const Arrow& b : x.arrows()) {
            if (a.initial != b.terminal) continue;
            for (const Arrow& c : x.arrows()) {
                if (b.initial != c.terminal) continue;
                const auto ab = x.composite(a.id, b.id);
                const auto bc = x.composite(b.id, c.id);
                if (!ab || !bc) continue; // already reported as closure failure
                const auto ab_c = x.composite(*ab, c.id);
                const auto a_bc = x.composite(a.id, *bc);
                if (!ab_c || !a_bc || *ab_c != *a_bc)
                    report.add("associativity",
                               "triple (" + std::to_string(a.id) + "," + std::to_string(b.id) + "," +
                                   std::to_string(c.id) + ")");
            }
        }

    return report;
}

/// All k-tuples (a_1, ..., a_k) of composable arrows, i.e. with
/// initial(a_l) = terminal(a_{l+1}), in lexicographic order by arrow id.
inline std::vector<std::vector<ArrowId>> composable_sequences(const Scwol& x, int k) {
    if (k < 1) throw InvalidInputError("composable_sequences needs k >= 1");
    std::vector<std::vector<ArrowId>> out;
    std::vector<ArrowId> current;
    auto extend = [&](auto&& self) -> void {
        if (static_cast<int>(current.size()) == k) {
            out.push_back(current);
            return;
        }
        for (const Arrow& next : x.arrows()) {
            if (!current.empty() && x.initial(current.back()) != next.terminal) continue;
            current.push_back(next.id);
            self(self);
            current.pop_back();
        }
    };
    extend(extend);
    return out;
}

// ---------------------------------------------------------------------------
// Complexes of dimension <= 2 and the barycentric scwol construction.
// ---------------------------------------------------------------------------

/// A digraph or a simplicial complex of dimension <= 2.  Digraphs are the
/// triangle-free case; loops and parallel edges are allowed there.  Triangles
/// list their three boundary edges, which must pairwise share one vertex.
struct ComplexDescription {
    struct Edge {
        int id;
        ObjId tail;
        ObjId head;

        friend bool operator==(const Edge& a, const Edge& b) {
            return a.id == b.id && a.tail == b.tail && a.head == b.head;
        }
    };
    struct TriangleCell {
        int id;
        std::array<int, 3> edges;

        friend bool operator==(const TriangleCell& a, const TriangleCell& b) {
            return a.id == b.id && a.edges == b.edges;
        }
    };

    std::vector<ObjId> vertices;
    std::vector<Edge> edges;
    std::vector<TriangleCell> triangles;

    friend bool operator==(const ComplexDescription& a, const ComplexDescription& b) {
        return a.vertices == b.vertices && a.edges == b.edges && a.triangles == b.triangles;
    }
};

/// The scwol of a complex plus the cell-to-object and incidence-to-arrow
/// correspondences, so sheaf transports can address cells directly.
struct ScwolFromComplex {
    Scwol scwol;
    std::map<ObjId, ObjId> vertex_object;
    std::map<int, ObjId> edge_object;
    std::map<int, ObjId> triangle_object;
    std::map<int, ArrowId> edge_tail_arrow; // edge object -> tail vertex object
    std::map<int, ArrowId> edge_head_arrow; // edge object -> head vertex object
    std::map<std::pair<int, int>, ArrowId> triangle_edge_arrow;   // (triangle, edge)
    std::map<std::pair<int, ObjId>, ArrowId> triangle_vertex_arrow; // (triangle, vertex)

    ScwolFromComplex(Scwol s) : scwol(std::move(s)) {}
};

/// Builds the scwol of the first barycentric subdivision: one object per
/// cell, one arrow per proper face incidence, oriented from the bigger cell
/// to the face, with composition given by incidence.  Objects are numbered
/// vertices first (ascending), then edges, then triangles; arrows are
/// numbered per edge (tail then head), then per triangle (its three edge
/// arrows, then its three vertex arrows).
inline ScwolFromComplex complex_to_scwol(const ComplexDescription& c) {
    std::vector<ObjId> vertices = c.vertices;
    std::sort(vertices.begin(), vertices.end());
    if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
        throw InvalidInputError("duplicate vertex id");

    std::map<ObjId, ObjId> vertex_object;
    ObjId next_object = 0;
    for (ObjId v : vertices) vertex_object[v] = next_object++;

    std::map<int, const ComplexDescription::Edge*> edges;
    for (const auto& e : c.edges) {
        if (!edges.emplace(e.id, &e).second)
            throw InvalidInputError("duplicate edge id " + std::to_string(e.id));
        if (!vertex_object.count(e.tail) || !vertex_object.count(e.head))
            throw InvalidInputError("edge " + std::to_string(e.id) + " references unknown vertex");
    }
    std::map<int, ObjId> edge_object;
    for (const auto& [id, e] : edges) edge_object[id] = next_object++;

    std::map<int, const ComplexDescription::TriangleCell*> triangles;
    for (const auto& t : c.triangles) {
        if (!triangles.emplace(t.id, &t).second)
            throw InvalidInputError("duplicate triangle id " + std::to_string(t.id));
    }
    std::map<int, ObjId> triangle_object;
    for (const auto& [id, t] : triangles) triangle_object[id] = next_object++;

    // Boundary data of each triangle: sorted edge ids and sorted vertex ids.
    std::map<int, std::array<int, 3>> tri_edges;
    std::map<int, std::vector<ObjId>> tri_vertices;
    for (const auto& [id, t] : triangles) {
        std::array<int, 3> es = t->edges;
        std::sort(es.begin(), es.end());
        if (es[0] == es[1] || es[1] == es[2])
            throw InvalidInputError("triangle " + std::to_string(id) + " repeats an edge");
        std::set<ObjId> vs;
        for (int eid : es) {
            auto it = edges.find(eid);
            if (it == edges.end())
                throw InvalidInputError("triangle " + std::to_string(id) + " references unknown edge " +
                                        std::to_string(eid));
            if (it->second->tail == it->second->head)
                throw InvalidInputError("triangle " + std::to_string(id) + " contains loop edge " +
                                        std::to_string(eid));
            vs.insert(it->second->tail);
            vs.insert(it->second->head);
        }
        if (vs.size() != 3)
            throw InvalidInputError("triangle " + std::to_string(id) + " edges do not bound a triangle");
        // Each vertex must lie on exactly two of the three edges.
        for (ObjId v : vs) {
            int count = 0;
            for (int eid : es) {
                const auto* e = edges.at(eid);
                if (e->tail == v || e->head == v) ++count;
            }
            if (count != 2)
                throw InvalidInputError("triangle " + std::to_string(id) + " edges do not bound a triangle");
        }
        tri_edges[id] = es;
        tri_vertices[id] = std::vector<ObjId>(vs.begin(), vs.end());
    }

    std::vector<ObjId> objects(static_cast<std::size_t>(next_object));
    for (ObjId k = 0; k < next_object; ++k) objects[static_cast<std::size_t>(k)] = k;

    std::vector<Arrow> arrows;
    ScwolFromComplex result{Scwol({0}, {})}; // placeholder, rebuilt below
    std::map<int, ArrowId> edge_tail_arrow, edge_head_arrow;
    std::map<std::pair<int, int>, ArrowId> triangle_edge_arrow;
    std::map<std::pair<int, ObjId>, ArrowId> triangle_vertex_arrow;

    ArrowId next_arrow = 0;
    for (const auto& [id, e] : edges) {
        edge_tail_arrow[id] = next_arrow;
        arrows.push_back({next_arrow++, edge_object.at(id), vertex_object.at(e->tail)});
        edge_head_arrow[id] = next_arrow;
        arrows.push_back({next_arrow++, edge_object.at(id), vertex_object.at(e->head)});
    }
    for (const auto& [id, t] : triangles) {
        (void)t;
        for (int eid : tri_edges.at(id)) {
            triangle_edge_arrow[{id, eid}] = next_arrow;
            arrows.push_back({next_arrow++, triangle_object.at(id), edge_object.at(eid)});
        }
        for (ObjId v : tri_vertices.at(id)) {
            triangle_vertex_arrow[{id, v}] = next_arrow;
            arrows.push_back({next_arrow++, triangle_object.at(id), vertex_object.at(v)});
        }
    }

    // Composition by incidence: (edge -> vertex) after (triangle -> edge)
    // equals (triangle -> vertex).
    std::map<std::pair<ArrowId, ArrowId>, ArrowId> composition;
    for (const auto& [tid, es] : tri_edges) {
        for (int eid : es) {
            const auto* e = edges.at(eid);
            const ArrowId tri_to_edge = triangle_edge_arrow.at({tid, eid});
            composition[{edge_tail_arrow.at(eid), tri_to_edge}] = triangle_vertex_arrow.at({tid, e->tail});
            composition[{edge_head_arrow.at(eid), tri_to_edge}] = triangle_vertex_arrow.at({tid, e->head});
        }
    }

    result.scwol = Scwol(std::move(objects), std::move(arrows), std::move(composition));
    result.vertex_object = std::move(vertex_object);
    result.edge_object = std::move(edge_object);
    result.triangle_object = std::move(triangle_object);
    result.edge_tail_arrow = std::move(edge_tail_arrow);
    result.edge_head_arrow = std::move(edge_head_arrow);
    result.triangle_edge_arrow = std::move(triangle_edge_arrow);
    result.triangle_vertex_arrow = std::move(triangle_vertex_arrow);
    return result;
}

// ---------------------------------------------------------------------------
// Oriented edges, paths, trees.
// ---------------------------------------------------------------------------

/// Traversal direction of an arrow inside an edge path.  A step (a, minus)
/// runs along the arrow from initial(a) to terminal(a); a step (a, plus) runs
/// against it, from terminal(a) to initial(a).
enum class StepSign { plus, minus };

inline StepSign opposite(StepSign s) { return s == StepSign::plus ? StepSign::minus : StepSign::plus; }

struct PathStep {
    ArrowId arrow;
    StepSign sign;

    friend bool operator==(const PathStep& a, const PathStep& b) {
        return a.arrow == b.arrow && a.sign == b.sign;
    }
};

/// An edge path: a start object plus a chain of oriented-edge steps.  The
/// start object makes the empty path well-defined.
struct EdgePath {
    ObjId start = 0;
    std::vector<PathStep> steps;

    bool empty() const { return steps.empty(); }

    friend bool operator==(const EdgePath& a, const EdgePath& b) {
        return a.start == b.start && a.steps == b.steps;
    }
};

inline ObjId step_source(const Scwol& x, const PathStep& s) {
    return s.sign == StepSign::minus ? x.initial(s.arrow) : x.terminal(s.arrow);
}

inline ObjId step_target(const Scwol& x, const PathStep& s) {
    return s.sign == StepSign::minus ? x.terminal(s.arrow) : x.initial(s.arrow);
}

/// Verifies the chaining rule: each step starts where the previous one ended,
/// and the first starts at path.start.
inline bool is_valid_path(const Scwol& x, const EdgePath& p) {
    if (!x.has_object(p.start)) return false;
    ObjId at = p.start;
    for (const PathStep& s : p.steps) {
        if (!x.has_arrow(s.arrow)) return false;
        if (step_source(x, s) != at) return false;
        at = step_target(x, s);
    }
    return true;
}

inline ObjId path_target(const Scwol& x, const EdgePath& p) {
    return p.steps.empty() ? p.start : step_target(x, p.steps.back());
}

/// Deletes adjacent backtracking pairs (same arrow, opposite signs) until the
/// path is fully reduced.  Endpoints are preserved.
inline EdgePath reduce_edge_path(const Scwol& x, const EdgePath& p) {
    if (!is_valid_path(x, p)) throw InvalidInputError("edge path does not chain");
    EdgePath out{p.start, {}};
    for (const PathStep& s : p.steps) {
        if (!out.steps.empty() && out.steps.back().arrow == s.arrow &&
            out.steps.back().sign == opposite(s.sign)) {
            out.steps.pop_back();
        } else {
            out.steps.push_back(s);
        }
    }
    return out;
}

/// A tree inside a scwol: a set of arrows (undirected edges of the underlying
/// graph) spanning `objects`, connected and circuit-free.
struct Tree {
    std::vector<ObjId> objects; // sorted
    std::vector<ArrowId> arrows; // sorted

    friend bool operator==(const Tree& a, const Tree& b) {
        return a.objects == b.objects && a.arrows == b.arrows;
    }
};

/// Deterministic maximal tree: breadth-first search from the smallest object
/// id, scanning arrows in ascending id order at each visited object.
inline Tree maximal_tree(const Scwol& x) {
    Tree tree;
    tree.objects = x.objects();
    if (tree.objects.empty()) throw InvalidInputError("scwol with no objects");

    // Undirected incidence: object -> arrows touching it, ascending.
    std::map<ObjId, std::vector<ArrowId>> incident;
    for (const Arrow& a : x.arrows()) {
        incident[a.initial].push_back(a.id);
        if (a.terminal != a.initial) incident[a.terminal].push_back(a.id);
    }
    for (auto& [v, list] : incident) std::sort(list.begin(), list.end());

    std::set<ObjId> visited{tree.objects.front()};
    std::queue<ObjId> frontier;
    frontier.push(tree.objects.front());
    while (!frontier.empty()) {
        const ObjId u = frontier.front();
        frontier.pop();
        auto it = incident.find(u);
        if (it == incident.end()) continue;
        for (ArrowId aid : it->second) {
            const Arrow& a = x.arrow(aid);
            const ObjId other = a.initial == u ? a.terminal : a.initial;
            if (visited.insert(other).second) {
                tree.arrows.push_back(aid);
                frontier.push(other);
            }
        }
    }
    if (visited.size() != tree.objects.size())
        throw DisconnectedScwolError("scwol is disconnected: reached " +
                                     std::to_string(visited.size()) + " of " +
                                     std::to_string(tree.objects.size()) + " objects");
    std::sort(tree.arrows.begin(), tree.arrows.end());
    return tree;
}

/// The unique reduced path from v to w inside the tree; empty when v = w.
inline EdgePath tree_path(const Scwol& x, const Tree& t, ObjId v, ObjId w) {
    auto in_tree = [&t](ObjId obj) {
        return std::binary_search(t.objects.begin(), t.objects.end(), obj);
    };
    if (!in_tree(v) || !in_tree(w))
        throw InvalidInputError("tree_path endpoint not in the tree");
    EdgePath path{v, {}};
    if (v == w) return path;

    std::map<ObjId, std::vector<ArrowId>> incident;
    for (ArrowId aid : t.arrows) {
        const Arrow& a = x.arrow(aid);
        incident[a.initial].push_back(aid);
        if (a.terminal != a.initial) incident[a.terminal].push_back(aid);
    }

    // BFS from v with parent steps; the tree makes the result unique.
    std::map<ObjId, PathStep> parent_step;
    std::map<ObjId, ObjId> parent;
    std::set<ObjId> visited{v};
    std::queue<ObjId> frontier;
    frontier.push(v);
    while (!frontier.empty() && !visited.count(w)) {
        const ObjId u = frontier.front();
        frontier.pop();
        auto it = incident.find(u);
        if (it == incident.end()) continue;
        for (ArrowId aid : it->second) {
            const Arrow& a = x.arrow(aid);
            const ObjId other = a.initial == u ? a.terminal : a.initial;
            if (visited.insert(other).second) {
                parent[other] = u;
                // Traversing u -> other: along the arrow when u is initial.
                parent_step[other] = {aid, a.initial == u ? StepSign::minus : StepSign::plus};
                frontier.push(other);
            }
        }
    }
    if (!visited.count(w)) throw DisconnectedScwolError("tree does not connect the endpoints");

    std::vector<PathStep> reversed;
    for (ObjId at = w; at != v; at = parent.at(at)) reversed.push_back(parent_step.at(at));
    path.steps.assign(reversed.rbegin(), reversed.rend());
    return path;
}

// ---------------------------------------------------------------------------
// Scwol functors and non-degeneracy.
// ---------------------------------------------------------------------------

/// A functor between scwols, given by its object and arrow maps.
struct ScwolFunctor {
    std::map<ObjId, ObjId> object_map;
    std::map<ArrowId, ArrowId> arrow_map;
};

/// True iff for each object v the functor restricts to a bijection between
/// the arrows arriving at v and the arrows arriving at f(v).  (Stated for
/// our orientation, where arrows run from a cell to its faces; the arriving
/// star at v is the set of cells having v as a proper face.)  Throws when f
/// is not a functor.
inline bool is_nondegenerate(const Scwol& src, const Scwol& dst, const ScwolFunctor& f) {
    for (ObjId v : src.objects())
        if (!f.object_map.count(v) || !dst.has_object(f.object_map.at(v)))
            throw InvalidInputError("functor object map incomplete at " + std::to_string(v));
    for (const Arrow& a : src.arrows()) {
        auto it = f.arrow_map.find(a.id);
        if (it == f.arrow_map.end() || !dst.has_arrow(it->second))
            throw InvalidInputError("functor arrow map incomplete at " + std::to_string(a.id));
        const Arrow& fa = dst.arrow(it->second);
        if (fa.initial != f.object_map.at(a.initial) || fa.terminal != f.object_map.at(a.terminal))
            throw InvalidInputError("functor does not preserve endpoints at arrow " +
                                    std::to_string(a.id));
    }
    for (const Arrow& a : src.arrows())
        for (const Arrow& b : src.arrows()) {
            if (a.initial != b.terminal) continue;
            const auto ab = src.composite(a.id, b.id);
            if (!ab) throw InvalidInputError("source scwol misses a composite");
            const auto fab = dst.composite(f.arrow_map.at(a.id), f.arrow_map.at(b.id));
            if (!fab || *fab != f.arrow_map.at(*ab))
                throw InvalidInputError("functor does not preserve composition at pair (" +
                                        std::to_string(a.id) + "," + std::to_string(b.id) + ")");
        }

    for (ObjId v : src.objects()) {
        const std::vector<ArrowId> up = src.arrows_into(v);
        const std::vector<ArrowId> down = dst.arrows_into(f.object_map.at(v));
        if (up.size() != down.size()) return false;
        std::set<ArrowId> images;
        for (ArrowId a : up) images.insert(f.arrow_map.at(a));
        if (images.size() != up.size()) return false; // not injective on the star
    }
    return true;
}

} // namespace cogsheaf
