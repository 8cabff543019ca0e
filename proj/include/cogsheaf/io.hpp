#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cogsheaf/develop.hpp"
#include "cogsheaf/sheaf.hpp"

namespace cogsheaf {

/// Insertion-ordered JSON keeps serialization byte-stable: map-backed data is
/// emitted in ascending id order and keys in a fixed order.
using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

namespace detail {

inline const Json& require(const Json& j, const char* key, const std::string& context) {
    auto it = j.find(key);
    if (it == j.end()) throw Error(context + ": missing key '" + key + "'");
    return *it;
}

inline void check_format(const Json& j, const std::string& expected, const std::string& context) {
    const std::string format = require(j, "format", context).get<std::string>();
    if (format != expected)
        throw Error(context + ": format '" + format + "' where '" + expected + "' was expected");
    const int version = require(j, "version", context).get<int>();
    if (version != kFormatVersion)
        throw Error(context + ": unsupported version " + std::to_string(version));
}

} // namespace detail

// ---------------------------------------------------------------------------
// Matrices: arrays of rows, entries as exact strings ("p/q" or residues).
// ---------------------------------------------------------------------------

template <typename F>
Json matrix_to_json(const Matrix<F>& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.field().str(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <typename F>
Matrix<F> matrix_from_json(F field, const Json& j, std::size_t rows, std::size_t cols) {
    if (!j.is_array() || j.size() != rows)
        throw Error("matrix literal has " + std::to_string(j.size()) + " rows, expected " +
                    std::to_string(rows));
    Matrix<F> m(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const Json& row = j[i];
        if (!row.is_array() || row.size() != cols)
            throw Error("matrix row " + std::to_string(i) + " has wrong length");
        for (std::size_t k = 0; k < cols; ++k)
            m(i, k) = field.parse(row[k].get<std::string>());
    }
    return m;
}

// ---------------------------------------------------------------------------
// Groups.
// ---------------------------------------------------------------------------

inline Json group_to_json(const FiniteGroup& g) {
    Json j;
    j["format"] = "cogsheaf/group";
    j["version"] = kFormatVersion;
    if (!g.name().empty()) j["name"] = g.name();
    j["order"] = g.order();
    if (!g.labels().empty()) j["labels"] = g.labels();
    j["table"] = g.table();
    return j;
}

inline GroupPtr group_from_json(const Json& j, const std::string& context = "group") {
    detail::check_format(j, "cogsheaf/group", context);
    const int order = detail::require(j, "order", context).get<int>();
    auto table = detail::require(j, "table", context).get<std::vector<std::vector<Elt>>>();
    if (static_cast<int>(table.size()) != order)
        throw Error(context + ": table size does not match declared order");
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
    std::string name;
    if (j.contains("name")) name = j["name"].get<std::string>();
    return std::make_shared<FiniteGroup>(std::move(table), std::move(labels), std::move(name));
}

/// Standalone homomorphism format: source and target group names plus the
/// image array.
inline Json hom_to_json(const GroupHom& h) {
    if (h.src->name().empty() || h.dst->name().empty())
        throw Error("cannot serialize a homomorphism between unnamed groups");
    Json j;
    j["format"] = "cogsheaf/hom";
    j["version"] = kFormatVersion;
    j["src"] = h.src->name();
    j["dst"] = h.dst->name();
    j["image"] = h.image;
    return j;
}

inline GroupHom hom_from_json(const Json& j, const std::map<std::string, GroupPtr>& groups,
                              const std::string& context = "hom") {
    detail::check_format(j, "cogsheaf/hom", context);
    auto resolve = [&](const char* key) {
        const std::string name = detail::require(j, key, context).get<std::string>();
        auto it = groups.find(name);
        if (it == groups.end()) throw Error(context + ": unknown group '" + name + "'");
        return it->second;
    };
    return GroupHom(resolve("src"), resolve("dst"),
                    detail::require(j, "image", context).get<std::vector<Elt>>());
}

// ---------------------------------------------------------------------------
// Scwols.
// ---------------------------------------------------------------------------

inline Json scwol_to_json(const Scwol& x) {
    Json j;
    j["format"] = "cogsheaf/scwol";
    j["version"] = kFormatVersion;
    j["objects"] = x.objects();
    Json arrows = Json::array();
    for (const Arrow& a : x.arrows())
        arrows.push_back(Json{{"id", a.id}, {"i", a.initial}, {"t", a.terminal}});
    j["arrows"] = std::move(arrows);
    Json comp = Json::array();
    for (const auto& [pair, result] : x.composition())
        comp.push_back(Json::array({pair.first, pair.second, result}));
    j["comp"] = std::move(comp);
    return j;
}

inline Scwol scwol_from_json(const Json& j, const std::string& context = "scwol") {
    detail::check_format(j, "cogsheaf/scwol", context);
    auto objects = detail::require(j, "objects", context).get<std::vector<ObjId>>();
    std::vector<Arrow> arrows;
    for (const Json& a : detail::require(j, "arrows", context))
        arrows.push_back({detail::require(a, "id", context).get<ArrowId>(),
                          detail::require(a, "i", context).get<ObjId>(),
                          detail::require(a, "t", context).get<ObjId>()});
    std::map<std::pair<ArrowId, ArrowId>, ArrowId> comp;
    for (const Json& entry : detail::require(j, "comp", context)) {
        if (!entry.is_array() || entry.size() != 3)
            throw Error(context + ": composition entries must be [a, b, ab] triples");
        comp[{entry[0].get<ArrowId>(), entry[1].get<ArrowId>()}] = entry[2].get<ArrowId>();
    }
    return Scwol(std::move(objects), std::move(arrows), std::move(comp));
}

/// Incidence-list format for digraphs and complexes of dimension <= 2,
/// the input side of the barycentric scwol construction.
inline Json complex_description_to_json(const ComplexDescription& c) {
    Json j;
    j["format"] = "cogsheaf/complex-input";
    j["version"] = kFormatVersion;
    j["vertices"] = c.vertices;
    Json edges = Json::array();
    for (const auto& e : c.edges)
        edges.push_back(Json{{"id", e.id}, {"tail", e.tail}, {"head", e.head}});
    j["edges"] = std::move(edges);
    Json triangles = Json::array();
    for (const auto& t : c.triangles)
        triangles.push_back(Json{{"id", t.id}, {"edges", t.edges}});
    j["triangles"] = std::move(triangles);
    return j;
}

inline ComplexDescription complex_description_from_json(const Json& j,
                                                        const std::string& context = "complex-input") {
    detail::check_format(j, "cogsheaf/complex-input", context);
    ComplexDescription c;
    c.vertices = detail::require(j, "vertices", context).get<std::vector<ObjId>>();
    for (const Json& e : detail::require(j, "edges", context))
        c.edges.push_back({detail::require(e, "id", context).get<int>(),
                           detail::require(e, "tail", context).get<ObjId>(),
                           detail::require(e, "head", context).get<ObjId>()});
    for (const Json& t : detail::require(j, "triangles", context))
        c.triangles.push_back({detail::require(t, "id", context).get<int>(),
                               detail::require(t, "edges", context).get<std::array<int, 3>>()});
    return c;
}

// ---------------------------------------------------------------------------
// Complexes of groups.  Local groups are referenced by name; the scwol by a
// relative path recorded in the file and resolved by the bundle loader.
// ---------------------------------------------------------------------------

inline Json complex_to_json(const ComplexOfGroups& c, const std::string& scwol_ref) {
    Json j;
    j["format"] = "cogsheaf/complex";
    j["version"] = kFormatVersion;
    j["scwol"] = scwol_ref;
    Json locals = Json::array();
    for (const auto& [v, g] : c.local_groups()) {
        if (g->name().empty())
            throw Error("cannot serialize a complex whose local group at object " +
                        std::to_string(v) + " has no name");
        locals.push_back(Json{{"object", v}, {"group", g->name()}});
    }
    j["local_groups"] = std::move(locals);
    Json psi = Json::array();
    for (const auto& [a, hom] : c.embeddings())
        psi.push_back(Json{{"arrow", a}, {"image", hom.image}});
    j["psi"] = std::move(psi);
    Json twists = Json::array();
    for (const auto& [pair, g] : c.twists())
        twists.push_back(Json{{"a", pair.first}, {"b", pair.second}, {"g", g}});
    j["twists"] = std::move(twists);
    return j;
}

inline ComplexPtr complex_from_json(const Json& j, const Scwol& scwol,
                                    const std::map<std::string, GroupPtr>& groups,
                                    const std::string& context = "complex") {
    detail::check_format(j, "cogsheaf/complex", context);
    std::map<ObjId, GroupPtr> locals;
    for (const Json& entry : detail::require(j, "local_groups", context)) {
        const ObjId v = detail::require(entry, "object", context).get<ObjId>();
        const std::string name = detail::require(entry, "group", context).get<std::string>();
        auto it = groups.find(name);
        if (it == groups.end()) throw Error(context + ": unknown group '" + name + "'");
        locals[v] = it->second;
    }
    std::map<ArrowId, GroupHom> embeddings;
    for (const Json& entry : detail::require(j, "psi", context)) {
        const ArrowId a = detail::require(entry, "arrow", context).get<ArrowId>();
        auto image = detail::require(entry, "image", context).get<std::vector<Elt>>();
        if (!scwol.has_arrow(a)) throw Error(context + ": psi on unknown arrow " + std::to_string(a));
        auto src = locals.find(scwol.initial(a));
        auto dst = locals.find(scwol.terminal(a));
        if (src == locals.end() || dst == locals.end())
            throw Error(context + ": psi at arrow " + std::to_string(a) +
                        " references objects without local groups");
        embeddings.emplace(a, GroupHom(src->second, dst->second, std::move(image)));
    }
    std::map<std::pair<ArrowId, ArrowId>, Elt> twists;
    for (const Json& entry : detail::require(j, "twists", context)) {
        twists[{detail::require(entry, "a", context).get<ArrowId>(),
                detail::require(entry, "b", context).get<ArrowId>()}] =
            detail::require(entry, "g", context).get<Elt>();
    }
    return std::make_shared<ComplexOfGroups>(scwol, std::move(locals), std::move(embeddings),
                                             std::move(twists));
}

// ---------------------------------------------------------------------------
// Morphisms into Theta(G).
// ---------------------------------------------------------------------------

inline Json morphism_to_json(const GroupMorphismData& m) {
    Json j;
    j["format"] = "cogsheaf/morphism";
    j["version"] = kFormatVersion;
    if (m.target->name().empty()) throw Error("cannot serialize a morphism whose target has no name");
    j["target"] = m.target->name();
    Json phi = Json::array();
    for (const auto& [v, hom] : m.object_maps)
        phi.push_back(Json{{"object", v}, {"image", hom.image}});
    j["phi"] = std::move(phi);
    Json arrows = Json::array();
    for (const auto& [a, g] : m.arrow_elements)
        arrows.push_back(Json{{"arrow", a}, {"element", g}});
    j["phi_arrows"] = std::move(arrows);
    return j;
}

inline GroupMorphismData morphism_from_json(const Json& j, ComplexPtr source,
                                            const std::map<std::string, GroupPtr>& groups,
                                            const std::string& context = "morphism") {
    detail::check_format(j, "cogsheaf/morphism", context);
    const std::string target_name = detail::require(j, "target", context).get<std::string>();
    auto it = groups.find(target_name);
    if (it == groups.end()) throw Error(context + ": unknown target group '" + target_name + "'");
    std::map<ObjId, GroupHom> object_maps;
    for (const Json& entry : detail::require(j, "phi", context)) {
        const ObjId v = detail::require(entry, "object", context).get<ObjId>();
        auto image = detail::require(entry, "image", context).get<std::vector<Elt>>();
        if (!source->base().has_object(v))
            throw Error(context + ": phi on unknown object " + std::to_string(v));
        object_maps.emplace(v, GroupHom(source->group_at(v), it->second, std::move(image)));
    }
    std::map<ArrowId, Elt> arrow_elements;
    for (const Json& entry : detail::require(j, "phi_arrows", context))
        arrow_elements[detail::require(entry, "arrow", context).get<ArrowId>()] =
            detail::require(entry, "element", context).get<Elt>();
    return GroupMorphismData(std::move(source), it->second, std::move(object_maps),
                             std::move(arrow_elements));
}

// ---------------------------------------------------------------------------
// Sheaves.
// ---------------------------------------------------------------------------

template <typename F>
Json sheaf_to_json(const Sheaf<F>& s) {
    Json j;
    j["format"] = "cogsheaf/sheaf";
    j["version"] = kFormatVersion;
    j["field"] = s.field().name();
    Json dims = Json::array();
    for (const auto& [v, d] : s.dims()) dims.push_back(Json{{"object", v}, {"dim", d}});
    j["dims"] = std::move(dims);
    Json rho = Json::array();
    for (const auto& [v, matrices] : s.representations()) {
        Json ms = Json::array();
        for (const Matrix<F>& m : matrices) ms.push_back(matrix_to_json(m));
        rho.push_back(Json{{"object", v}, {"matrices", std::move(ms)}});
    }
    j["rho"] = std::move(rho);
    Json arrows = Json::array();
    for (const auto& [a, m] : s.arrow_matrices())
        arrows.push_back(Json{{"arrow", a}, {"matrix", matrix_to_json(m)}});
    j["arrows"] = std::move(arrows);
    return j;
}

template <typename F>
Sheaf<F> sheaf_from_json_typed(F field, const Json& j, ComplexPtr base,
                               const std::string& context = "sheaf") {
    std::map<ObjId, int> dims;
    for (const Json& entry : detail::require(j, "dims", context))
        dims[detail::require(entry, "object", context).get<ObjId>()] =
            detail::require(entry, "dim", context).get<int>();
    std::map<ObjId, std::vector<Matrix<F>>> rho;
    for (const Json& entry : detail::require(j, "rho", context)) {
        const ObjId v = detail::require(entry, "object", context).get<ObjId>();
        auto dit = dims.find(v);
        if (dit == dims.end()) throw Error(context + ": rho at object without a dimension");
        const std::size_t d = static_cast<std::size_t>(dit->second);
        std::vector<Matrix<F>> matrices;
        for (const Json& m : detail::require(entry, "matrices", context))
            matrices.push_back(matrix_from_json(field, m, d, d));
        rho.emplace(v, std::move(matrices));
    }
    std::map<ArrowId, Matrix<F>> arrows;
    for (const Json& entry : detail::require(j, "arrows", context)) {
        const ArrowId a = detail::require(entry, "arrow", context).get<ArrowId>();
        if (!base->base().has_arrow(a))
            throw Error(context + ": matrix on unknown arrow " + std::to_string(a));
        const std::size_t r = static_cast<std::size_t>(dims.at(base->base().terminal(a)));
        const std::size_t c = static_cast<std::size_t>(dims.at(base->base().initial(a)));
        arrows.emplace(a, matrix_from_json(field, detail::require(entry, "matrix", context), r, c));
    }
    return Sheaf<F>(std::move(field), std::move(base), std::move(dims), std::move(rho),
                    std::move(arrows));
}

using AnySheaf = std::variant<Sheaf<RationalField>, Sheaf<PrimeField>>;

inline AnySheaf sheaf_from_json(const Json& j, ComplexPtr base, const std::string& context = "sheaf") {
    detail::check_format(j, "cogsheaf/sheaf", context);
    const AnyField field = parse_field(detail::require(j, "field", context).get<std::string>());
    return std::visit(
        [&](auto f) -> AnySheaf { return sheaf_from_json_typed(f, j, base, context); }, field);
}

inline Json sheaf_to_json(const AnySheaf& s) {
    return std::visit([](const auto& sheaf) { return sheaf_to_json(sheaf); }, s);
}

// ---------------------------------------------------------------------------
// Certificates and reports.
// ---------------------------------------------------------------------------

template <typename F>
Json certificate_to_json(const DevCertificate<F>& cert) {
    Json j;
    j["format"] = "cogsheaf/certificate";
    j["version"] = kFormatVersion;
    j["field"] = cert.field.name();
    j["verdict"] = cert.verdict;
    j["base"] = cert.base;
    j["tree"] = cert.tree_arrows;
    Json objs = Json::array();
    for (const auto& [v, matrices] : cert.object_images) {
        Json ms = Json::array();
        for (const Matrix<F>& m : matrices) ms.push_back(matrix_to_json(m));
        objs.push_back(Json{{"object", v}, {"matrices", std::move(ms)}});
    }
    j["object_images"] = std::move(objs);
    Json arrows = Json::array();
    for (const auto& [a, m] : cert.arrow_images)
        arrows.push_back(Json{{"arrow", a}, {"matrix", matrix_to_json(m)}});
    j["arrow_images"] = std::move(arrows);
    Json transcript = Json::array();
    for (const TranscriptEntry& e : cert.transcript)
        transcript.push_back(Json{{"family", e.family},
                                  {"checked", e.checked},
                                  {"passed", e.passed},
                                  {"counterexample", e.counterexample}});
    j["transcript"] = std::move(transcript);
    return j;
}

using AnyCertificate = std::variant<DevCertificate<RationalField>, DevCertificate<PrimeField>>;

namespace detail {

template <typename F>
DevCertificate<F> certificate_from_json_typed(F field, const Json& j, const std::string& context) {
    DevCertificate<F> cert{field, {}, 0, {}, {}, {}, false};
    cert.verdict = require(j, "verdict", context).get<bool>();
    cert.base = require(j, "base", context).get<ObjId>();
    cert.tree_arrows = require(j, "tree", context).get<std::vector<ArrowId>>();
    for (const Json& entry : require(j, "object_images", context)) {
        const ObjId v = require(entry, "object", context).get<ObjId>();
        std::vector<Matrix<F>> matrices;
        for (const Json& m : require(entry, "matrices", context)) {
            if (!m.is_array() || m.empty())
                throw Error(context + ": morphism matrices must be non-empty");
            matrices.push_back(matrix_from_json(field, m, m.size(), m[0].size()));
        }
        cert.object_images.emplace(v, std::move(matrices));
    }
    for (const Json& entry : require(j, "arrow_images", context)) {
        const ArrowId a = require(entry, "arrow", context).get<ArrowId>();
        const Json& m = require(entry, "matrix", context);
        if (!m.is_array() || m.empty()) throw Error(context + ": morphism matrices must be non-empty");
        cert.arrow_images.emplace(a, matrix_from_json(field, m, m.size(), m[0].size()));
    }
    for (const Json& entry : require(j, "transcript", context))
        cert.transcript.push_back({require(entry, "family", context).get<std::string>(),
                                   require(entry, "checked", context).get<long long>(),
                                   require(entry, "passed", context).get<bool>(),
                                   require(entry, "counterexample", context).get<std::string>()});
    return cert;
}

} // namespace detail

inline AnyCertificate certificate_from_json(const Json& j, const std::string& context = "certificate") {
    detail::check_format(j, "cogsheaf/certificate", context);
    const AnyField field = parse_field(detail::require(j, "field", context).get<std::string>());
    return std::visit(
        [&](auto f) -> AnyCertificate { return detail::certificate_from_json_typed(f, j, context); },
        field);
}

inline Json report_to_json(const ValidationReport& report) {
    Json j;
    j["ok"] = report.ok();
    Json violations = Json::array();
    for (const Violation& v : report.violations())
        violations.push_back(Json{{"rule", v.rule}, {"where", v.where}, {"detail", v.detail}});
    j["violations"] = std::move(violations);
    return j;
}

inline Json dev_report_to_json(const DevReport& r) {
    Json j;
    j["verdict"] = r.verdict();
    j["constant_rank"] = Json{{"holds", r.constant_rank}};
    if (r.rank) j["constant_rank"]["rank"] = *r.rank;
    if (r.rank_mismatch)
        j["constant_rank"]["counterexample"] = Json::array({r.rank_mismatch->first, r.rank_mismatch->second});
    j["all_invertible"] = Json{{"holds", r.all_invertible}};
    if (r.singular_arrow) j["all_invertible"]["counterexample"] = *r.singular_arrow;
    j["injective_on_local_groups"] = Json{{"holds", r.injective_on_local_groups}};
    if (r.kernel_witness)
        j["injective_on_local_groups"]["counterexample"] =
            Json::array({r.kernel_witness->first, r.kernel_witness->second});
    return j;
}

// ---------------------------------------------------------------------------
// Files and bundles.
// ---------------------------------------------------------------------------

inline Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string(), "cannot open file");
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string(), e.what());
    }
    return j;
}

inline void write_json_file(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError(path.string(), "cannot open file for writing");
    out << j.dump(2) << '\n';
}

/// An instance bundle: named groups plus the optional scwol / complex /
/// morphism / sheaf they assemble into, loaded from a manifest.
struct InstanceBundle {
    std::map<std::string, GroupPtr> groups;
    std::optional<Scwol> scwol;
    ComplexPtr complex; // null when the manifest has no complex
    std::optional<GroupMorphismData> morphism;
    std::optional<AnySheaf> sheaf;
};

/// Loads a bundle manifest; every path inside is resolved relative to the
/// manifest's directory.  Cross-references (group names, object and arrow
/// ids) are resolved here, so a loaded bundle is structurally sound even
/// before any validator runs.
inline InstanceBundle load_bundle(const std::filesystem::path& manifest_path) {
    const Json manifest = read_json_file(manifest_path);
    const std::string context = manifest_path.string();
    try {
        detail::check_format(manifest, "cogsheaf/bundle", context);
        const std::filesystem::path dir = manifest_path.parent_path();

        InstanceBundle bundle;
        if (manifest.contains("groups"))
            for (const auto& [name, rel] : manifest["groups"].items()) {
                const auto path = dir / rel.get<std::string>();
                bundle.groups[name] = group_from_json(read_json_file(path), path.string());
            }

        std::filesystem::path scwol_path;
        if (manifest.contains("scwol")) scwol_path = dir / manifest["scwol"].get<std::string>();

        Json complex_json;
        std::filesystem::path complex_path;
        if (manifest.contains("complex")) {
            complex_path = dir / manifest["complex"].get<std::string>();
            complex_json = read_json_file(complex_path);
            if (scwol_path.empty())
                scwol_path = complex_path.parent_path() /
                             detail::require(complex_json, "scwol", complex_path.string())
                                 .get<std::string>();
        }
        if (!scwol_path.empty())
            bundle.scwol = scwol_from_json(read_json_file(scwol_path), scwol_path.string());

        if (!complex_json.is_null()) {
            if (!bundle.scwol) throw Error(context + ": complex without a scwol");
            bundle.complex = complex_from_json(complex_json, *bundle.scwol, bundle.groups,
                                               complex_path.string());
        }

        if (manifest.contains("morphism")) {
            if (!bundle.complex) throw Error(context + ": morphism without a complex");
            const auto path = dir / manifest["morphism"].get<std::string>();
            bundle.morphism =
                morphism_from_json(read_json_file(path), bundle.complex, bundle.groups, path.string());
        }

        if (manifest.contains("sheaf")) {
            if (!bundle.complex) throw Error(context + ": sheaf without a complex");
            const auto path = dir / manifest["sheaf"].get<std::string>();
            bundle.sheaf = sheaf_from_json(read_json_file(path), bundle.complex, path.string());
        }
        return bundle;
    } catch (const ParseError&) {
        throw;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(context, e.what());
    } catch (const Error& e) {
        throw ParseError(context, e.what());
    }
}

} // namespace cogsheaf
