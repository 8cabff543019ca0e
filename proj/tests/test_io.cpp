#include <catch2/catch_amalgamated.hpp>

#include <filesystem>

#include "test_helpers.hpp"

using namespace cogsheaf;
using testutil::fixture_dir;

namespace {
const RationalField Q;

std::map<std::string, GroupPtr> registry_of(const ComplexOfGroups& c) {
    std::map<std::string, GroupPtr> registry;
    for (const auto& [v, g] : c.local_groups()) registry[g->name()] = g;
    return registry;
}
} // namespace

TEST_CASE("matrix serialization round trip") {
    testutil::Rng rng(1);
    for (int trial = 0; trial < 10; ++trial) {
        const auto m = testutil::random_matrix(Q, rng, 3, 2);
        CHECK(matrix_from_json(Q, matrix_to_json(m), 3, 2) == m);
    }
    const PrimeField f7(7);
    const auto m = testutil::random_matrix(f7, rng, 2, 4);
    CHECK(matrix_from_json(f7, matrix_to_json(m), 2, 4) == m);
    CHECK_THROWS_AS(matrix_from_json(Q, matrix_to_json(m), 3, 4), Error);
}

TEST_CASE("group serialization round trip preserves labels and table") {
    for (const GroupPtr& g : {cyclic_group(6), symmetric_group(3), dihedral_group(4)}) {
        const GroupPtr back = group_from_json(group_to_json(*g));
        CHECK(*back == *g);
        CHECK(back->labels() == g->labels());
        CHECK(back->name() == g->name());
    }
    Json j = group_to_json(*cyclic_group(2));
    j["format"] = "cogsheaf/scwol";
    CHECK_THROWS_AS(group_from_json(j), Error);
    Json v = group_to_json(*cyclic_group(2));
    v["version"] = 99;
    CHECK_THROWS_AS(group_from_json(v), Error);
}

TEST_CASE("homomorphism serialization round trip") {
    const GroupPtr z4 = cyclic_group(4);
    const GroupPtr z2 = cyclic_group(2);
    const GroupHom mod2(z4, z2, {0, 1, 0, 1});
    const std::map<std::string, GroupPtr> registry{{"z4", z4}, {"z2", z2}};
    CHECK(hom_from_json(hom_to_json(mod2), registry) == mod2);
    CHECK_THROWS_AS(hom_from_json(hom_to_json(mod2), {}), Error); // unresolved names
}

TEST_CASE("complex description serialization round trip") {
    testutil::Rng rng(21);
    for (int trial = 0; trial < 8; ++trial) {
        const ComplexDescription d = trial % 2 == 0 ? testutil::random_digraph(rng, 6, 8, false)
                                                    : testutil::random_two_complex(rng, 4);
        CHECK(complex_description_from_json(complex_description_to_json(d)) == d);
    }
}

TEST_CASE("scwol serialization round trip") {
    testutil::Rng rng(2);
    for (int trial = 0; trial < 10; ++trial) {
        const Scwol x = testutil::random_scwol(rng, 8);
        CHECK(scwol_from_json(scwol_to_json(x)) == x);
    }
    CHECK(scwol_from_json(scwol_to_json(trivial_scwol())) == trivial_scwol());
}

TEST_CASE("complex and morphism serialization round trip") {
    testutil::Rng rng(3);
    for (int trial = 0; trial < 8; ++trial) {
        const SimpleCog instance = testutil::random_simple_cog(rng, 7);
        const auto registry = registry_of(*instance.complex);
        const Json cj = complex_to_json(*instance.complex, "base.scwol.json");
        const ComplexPtr back = complex_from_json(cj, instance.complex->base(), registry);
        CHECK(*back == *instance.complex);

        auto full_registry = registry;
        full_registry[instance.morphism.target->name()] = instance.morphism.target;
        const Json mj = morphism_to_json(instance.morphism);
        const GroupMorphismData mback = morphism_from_json(mj, back, full_registry);
        CHECK(mback == instance.morphism);
    }
}

TEST_CASE("sheaf serialization round trip over both fields") {
    testutil::Rng rng(4);
    const SimpleCog instance = testutil::random_simple_cog(rng, 6);
    const auto rational_sheaf = sheaf_from_morphism(instance.morphism, Q);
    const AnySheaf back =
        sheaf_from_json(sheaf_to_json(rational_sheaf), instance.complex);
    REQUIRE(std::holds_alternative<Sheaf<RationalField>>(back));
    CHECK(std::get<Sheaf<RationalField>>(back) == rational_sheaf);

    const PrimeField f5(5);
    const auto modular_sheaf = sheaf_from_morphism(instance.morphism, f5);
    const AnySheaf mback = sheaf_from_json(sheaf_to_json(modular_sheaf), instance.complex);
    REQUIRE(std::holds_alternative<Sheaf<PrimeField>>(mback));
    CHECK(std::get<Sheaf<PrimeField>>(mback) == modular_sheaf);
}

TEST_CASE("certificate serialization round trip") {
    const ComplexPtr tri = testutil::make_fix_tri_complex();
    const auto cert = develop(*tri, testutil::make_fix_tri_sheaf(tri));
    const AnyCertificate back = certificate_from_json(certificate_to_json(cert));
    REQUIRE(std::holds_alternative<DevCertificate<RationalField>>(back));
    CHECK(std::get<DevCertificate<RationalField>>(back) == cert);
}

TEST_CASE("fixture bundles load and match the canonical instances") {
    const std::filesystem::path root = fixture_dir();

    SECTION("theta") {
        const InstanceBundle b = load_bundle(root / "triv" / "bundle.json");
        REQUIRE(b.complex);
        CHECK(*b.complex == *fixtures::theta_z2());
        REQUIRE(b.morphism);
        CHECK(*b.morphism == fixtures::theta_z2_identity_morphism(b.complex));
        REQUIRE(b.sheaf);
        CHECK(std::get<Sheaf<RationalField>>(*b.sheaf) == fixtures::theta_z2_sign_sheaf(b.complex));
    }

    SECTION("segment") {
        const InstanceBundle b = load_bundle(root / "seg" / "bundle.json");
        const SimpleCog seg = fixtures::segment_of_groups();
        REQUIRE(b.complex);
        CHECK(*b.complex == *seg.complex);
        REQUIRE(b.morphism);
        CHECK(*b.morphism == seg.morphism);
        REQUIRE(b.sheaf);
        CHECK(std::get<Sheaf<RationalField>>(*b.sheaf) == sheaf_from_morphism(seg.morphism, Q));
    }

    SECTION("triangle") {
        const InstanceBundle b = load_bundle(root / "tri" / "bundle.json");
        REQUIRE(b.complex);
        CHECK(*b.complex == *fixtures::triangle_twist_complex());
        REQUIRE(b.sheaf);
        CHECK(std::get<Sheaf<RationalField>>(*b.sheaf) ==
              fixtures::triangle_sign_sheaf(b.complex));
    }

    SECTION("circuit") {
        const InstanceBundle b = load_bundle(root / "circ" / "bundle.json");
        REQUIRE(b.complex);
        CHECK(*b.complex == *fixtures::circuit_complex());
        REQUIRE(b.sheaf);
        CHECK(std::get<Sheaf<RationalField>>(*b.sheaf) ==
              fixtures::circuit_holonomy_sheaf(b.complex));
    }
}

TEST_CASE("bundle loading failures raise ParseError") {
    const std::filesystem::path root = fixture_dir();
    CHECK_THROWS_AS(load_bundle(root / "broken" / "truncated.json"), ParseError);
    CHECK_THROWS_AS(load_bundle(root / "broken" / "missing_group.bundle.json"), ParseError);
    CHECK_THROWS_AS(load_bundle(root / "does_not_exist.json"), ParseError);
}

TEST_CASE("dev report and validation report serialize with counterexamples") {
    const SimpleCog seg = fixtures::segment_of_groups();
    const auto sheaf = fixtures::trivial_rank1_sheaf(seg.complex);
    const Json j = dev_report_to_json(check_dev_properties(sheaf));
    CHECK_FALSE(j["verdict"].get<bool>());
    CHECK(j["injective_on_local_groups"]["holds"].get<bool>() == false);
    CHECK(j["injective_on_local_groups"]["counterexample"][0].get<int>() == 0);
    CHECK(j["injective_on_local_groups"]["counterexample"][1].get<int>() == 1);

    ValidationReport r;
    r.add("rule-name", "somewhere", "details");
    const Json rj = report_to_json(r);
    CHECK_FALSE(rj["ok"].get<bool>());
    CHECK(rj["violations"][0]["rule"] == "rule-name");
}
