// Regenerates the fixture bundle under fixtures/ from the canonical
// definitions in cogsheaf/fixtures.hpp.  Run from the repository root:
//
//   ./build/tools/gen_fixtures [output-dir]
//
// The files are committed; this tool exists so they can be rebuilt after a
// format change and diffed.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "cogsheaf/cogsheaf.hpp"
#include "cogsheaf/fixtures.hpp"

using namespace cogsheaf;
namespace fs = std::filesystem;

namespace {

const RationalField Q;

void write(const fs::path& path, const Json& j) {
    fs::create_directories(path.parent_path());
    write_json_file(path, j);
    std::cout << "wrote " << path.string() << "\n";
}

void write_raw(const fs::path& path, const std::string& text) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path);
    out << text;
    std::cout << "wrote " << path.string() << "\n";
}

GroupPtr renamed(const GroupPtr& g, const std::string& name) {
    return std::make_shared<FiniteGroup>(g->table(), g->labels(), name);
}

/// Rebuilds a complex with fresh names on its local groups so the file
/// format can reference them.
ComplexPtr with_group_names(const ComplexOfGroups& c, const std::map<ObjId, std::string>& names) {
    std::map<ObjId, GroupPtr> locals;
    for (const auto& [v, g] : c.local_groups()) locals[v] = renamed(g, names.at(v));
    std::map<ArrowId, GroupHom> psi;
    for (const auto& [a, hom] : c.embeddings())
        psi.emplace(a, GroupHom(locals.at(c.base().initial(a)), locals.at(c.base().terminal(a)),
                                hom.image));
    return std::make_shared<ComplexOfGroups>(c.base(), std::move(locals), std::move(psi),
                                             c.twists());
}

Json bundle_manifest(const std::map<std::string, std::string>& groups, const std::string& scwol,
                     const std::string& complex, const std::string& morphism = "",
                     const std::string& sheaf = "") {
    Json j;
    j["format"] = "cogsheaf/bundle";
    j["version"] = kFormatVersion;
    Json g;
    for (const auto& [name, path] : groups) g[name] = path;
    j["groups"] = std::move(g);
    j["scwol"] = scwol;
    j["complex"] = complex;
    if (!morphism.empty()) j["morphism"] = morphism;
    if (!sheaf.empty()) j["sheaf"] = sheaf;
    return j;
}

void gen_triv(const fs::path& dir) {
    const ComplexPtr theta = fixtures::theta_z2();
    write(dir / "z2.group.json", group_to_json(*cyclic_group(2)));
    write(dir / "point.scwol.json", scwol_to_json(theta->base()));
    write(dir / "theta.complex.json", complex_to_json(*theta, "point.scwol.json"));
    write(dir / "identity.morphism.json",
          morphism_to_json(fixtures::theta_z2_identity_morphism(theta)));
    write(dir / "sign.sheaf.json", sheaf_to_json(fixtures::theta_z2_sign_sheaf(theta)));
    write(dir / "bundle.json",
          bundle_manifest({{"z2", "z2.group.json"}}, "point.scwol.json", "theta.complex.json",
                          "identity.morphism.json", "sign.sheaf.json"));
}

void gen_seg(const fs::path& dir) {
    const SimpleCog seg = fixtures::segment_of_groups();
    const ComplexPtr named =
        with_group_names(*seg.complex, {{0, "z2"}, {1, "z4"}, {2, "z6"}});
    write(dir / "z2.group.json", group_to_json(*cyclic_group(2)));
    write(dir / "z4.group.json", group_to_json(*cyclic_group(4)));
    write(dir / "z6.group.json", group_to_json(*cyclic_group(6)));
    write(dir / "z12.group.json", group_to_json(*cyclic_group(12)));
    write(dir / "seg.scwol.json", scwol_to_json(seg.complex->base()));
    write(dir / "seg.complex.json", complex_to_json(*named, "seg.scwol.json"));

    GroupMorphismData canonical = seg.morphism;
    write(dir / "canonical.morphism.json", morphism_to_json(canonical));
    write(dir / "collapsed.morphism.json",
          morphism_to_json(fixtures::segment_collapsed_morphism(seg)));
    write(dir / "regular.sheaf.json", sheaf_to_json(sheaf_from_morphism(canonical, Q)));
    write(dir / "trivial_rank1.sheaf.json",
          sheaf_to_json(fixtures::trivial_rank1_sheaf(seg.complex)));

    const std::map<std::string, std::string> groups{{"z2", "z2.group.json"},
                                                    {"z4", "z4.group.json"},
                                                    {"z6", "z6.group.json"},
                                                    {"z12", "z12.group.json"}};
    write(dir / "bundle.json",
          bundle_manifest(groups, "seg.scwol.json", "seg.complex.json", "canonical.morphism.json",
                          "regular.sheaf.json"));
    write(dir / "bundle_trivial_sheaf.json",
          bundle_manifest(groups, "seg.scwol.json", "seg.complex.json", "",
                          "trivial_rank1.sheaf.json"));
    write(dir / "bundle_collapsed.json",
          bundle_manifest(groups, "seg.scwol.json", "seg.complex.json",
                          "collapsed.morphism.json"));
}

void gen_tri(const fs::path& dir) {
    const ComplexPtr tri = fixtures::triangle_twist_complex();
    write(dir / "z2.group.json", group_to_json(*cyclic_group(2)));
    write(dir / "tri.scwol.json", scwol_to_json(tri->base()));
    write(dir / "tri.complex.json", complex_to_json(*tri, "tri.scwol.json"));
    write(dir / "sign.sheaf.json", sheaf_to_json(fixtures::triangle_sign_sheaf(tri)));
    write(dir / "broken_twist.sheaf.json",
          sheaf_to_json(fixtures::triangle_sign_sheaf(tri, /*flip_arrow_zero=*/true)));
    const std::map<std::string, std::string> groups{{"z2", "z2.group.json"}};
    write(dir / "bundle.json",
          bundle_manifest(groups, "tri.scwol.json", "tri.complex.json", "", "sign.sheaf.json"));
    write(dir / "bundle_broken_sheaf.json",
          bundle_manifest(groups, "tri.scwol.json", "tri.complex.json", "",
                          "broken_twist.sheaf.json"));
}

void gen_circ(const fs::path& dir) {
    const ComplexPtr circ = fixtures::circuit_complex();
    write(dir / "z1.group.json", group_to_json(*trivial_group()));
    write(dir / "circ.scwol.json", scwol_to_json(circ->base()));
    write(dir / "circ.complex.json", complex_to_json(*circ, "circ.scwol.json"));
    write(dir / "holonomy.sheaf.json", sheaf_to_json(fixtures::circuit_holonomy_sheaf(circ)));
    write(dir / "bundle.json",
          bundle_manifest({{"z1", "z1.group.json"}}, "circ.scwol.json", "circ.complex.json", "",
                          "holonomy.sheaf.json"));
}

void gen_broken(const fs::path& dir) {
    write_raw(dir / "truncated.json", "{ \"format\": \"cogsheaf/bundle\", \"version\": 1,");
    // A bundle whose complex references a group file that does not exist.
    Json missing = bundle_manifest({{"z2", "no_such_file.group.json"}}, "../triv/point.scwol.json",
                                   "../triv/theta.complex.json");
    write(dir / "missing_group.bundle.json", missing);

    // A disconnected two-segment scwol with trivial structure: develop must
    // refuse it as input rather than produce a verdict.
    const Scwol two({0, 1, 2, 3, 4, 5}, {{0, 2, 0}, {1, 2, 1}, {2, 5, 3}, {3, 5, 4}});
    const GroupPtr triv = trivial_group();
    std::map<ObjId, GroupPtr> locals;
    std::map<ArrowId, GroupHom> psi;
    for (ObjId v : two.objects()) locals[v] = triv;
    for (const Arrow& a : two.arrows()) psi.emplace(a.id, identity_hom(triv));
    auto complex = std::make_shared<ComplexOfGroups>(two, locals, psi);
    write(dir / "disconnected" / "z1.group.json", group_to_json(*triv));
    write(dir / "disconnected" / "two.scwol.json", scwol_to_json(two));
    write(dir / "disconnected" / "two.complex.json", complex_to_json(*complex, "two.scwol.json"));
    write(dir / "disconnected" / "rank1.sheaf.json",
          sheaf_to_json(fixtures::trivial_rank1_sheaf(complex)));
    write(dir / "disconnected" / "bundle.json",
          bundle_manifest({{"z1", "z1.group.json"}}, "two.scwol.json", "two.complex.json", "",
                          "rank1.sheaf.json"));
}

} // namespace

int main(int argc, char** argv) {
    const fs::path out = argc > 1 ? argv[1] : "fixtures";
    try {
        gen_triv(out / "triv");
        gen_seg(out / "seg");
        gen_tri(out / "tri");
        gen_circ(out / "circ");
        gen_broken(out / "broken");
    } catch (const std::exception& e) {
        std::cerr << "fixture generation failed: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
