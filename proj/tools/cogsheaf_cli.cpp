// Command-line front end: validates instance bundles, synthesizes sheaves
// from witness morphisms, runs the developability engine, and dumps
// categories and dev reports.  Exit codes: 0 = pass, 1 = semantic failure,
// 2 = unreadable or structurally broken input.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cogsheaf/cogsheaf.hpp"

namespace {

using namespace cogsheaf;

constexpr int kExitPass = 0;
constexpr int kExitSemantic = 1;
constexpr int kExitInput = 2;

struct Options {
    std::string report_format = "text"; // text | json
    std::string out_path;
    std::string field_spec = "Q";
};

void emit_report(const Options& opt, const std::string& name, const ValidationReport& report,
                 Json& json_out) {
    if (opt.report_format == "json") {
        Json entry = report_to_json(report);
        entry["check"] = name;
        json_out.push_back(std::move(entry));
    } else {
        std::cout << name << ": " << (report.ok() ? "ok" : "FAIL") << "\n";
        if (!report.ok()) std::cout << report.summary();
    }
}

int cmd_validate(const Options& opt, const std::vector<std::string>& bundles) {
    bool all_ok = true;
    Json json_out = Json::array();
    auto run = [&](const std::string& name, const ValidationReport& report) {
        all_ok &= report.ok();
        emit_report(opt, name, report, json_out);
    };
    for (const std::string& path : bundles) {
        const InstanceBundle bundle = load_bundle(path);
        for (const auto& [name, group] : bundle.groups)
            run(path + ": group " + name, validate_group_table(*group));
        if (bundle.scwol) run(path + ": scwol", validate_scwol(*bundle.scwol));
        if (bundle.complex) run(path + ": complex", validate_cog(*bundle.complex));
        if (bundle.morphism)
            run(path + ": morphism",
                validate_morphism_to_group(*bundle.morphism, /*require_injective=*/false));
        if (bundle.sheaf)
            run(path + ": sheaf",
                std::visit([](const auto& s) { return validate_sheaf(s); }, *bundle.sheaf));
    }
    if (opt.report_format == "json") std::cout << json_out.dump(2) << "\n";
    return all_ok ? kExitPass : kExitSemantic;
}

int cmd_develop(const Options& opt, const std::string& bundle_path) {
    const InstanceBundle bundle = load_bundle(bundle_path);
    if (!bundle.complex || !bundle.sheaf)
        throw ParseError(bundle_path, "develop needs a bundle with a complex and a sheaf");

    return std::visit(
        [&](const auto& sheaf) -> int {
            const auto certificate = develop(*bundle.complex, sheaf);
            const Json j = certificate_to_json(certificate);
            if (!opt.out_path.empty()) write_json_file(opt.out_path, j);
            if (opt.report_format == "json") {
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "verdict: " << (certificate.verdict ? "developable" : "not certified")
                          << "\n";
                for (const TranscriptEntry& e : certificate.transcript)
                    std::cout << "  " << e.family << ": " << (e.passed ? "ok" : "FAIL") << " ("
                              << e.checked << " checked"
                              << (e.counterexample.empty() ? "" : "; " + e.counterexample) << ")\n";
            }
            return certificate.verdict ? kExitPass : kExitSemantic;
        },
        *bundle.sheaf);
}

int cmd_sheaf_from_morphism(const Options& opt, const std::string& bundle_path) {
    const InstanceBundle bundle = load_bundle(bundle_path);
    if (!bundle.complex || !bundle.morphism)
        throw ParseError(bundle_path, "sheaf-from-morphism needs a bundle with a complex and a morphism");

    const AnyField field = parse_field(opt.field_spec);
    return std::visit(
        [&](auto f) -> int {
            const auto sheaf = sheaf_from_morphism(*bundle.morphism, f);
            if (!opt.out_path.empty()) write_json_file(opt.out_path, sheaf_to_json(sheaf));
            const DevReport report = check_dev_properties(sheaf);
            if (opt.report_format == "json") std::cout << dev_report_to_json(report).dump(2) << "\n";
            else std::cout << report.describe() << "\n";
            return report.verdict() ? kExitPass : kExitSemantic;
        },
        field);
}

int cmd_dev_check(const Options& opt, const std::string& bundle_path) {
    const InstanceBundle bundle = load_bundle(bundle_path);
    if (!bundle.complex || !bundle.sheaf)
        throw ParseError(bundle_path, "dev-check needs a bundle with a complex and a sheaf");
    return std::visit(
        [&](const auto& sheaf) -> int {
            const ValidationReport valid = validate_sheaf(sheaf);
            if (!valid.ok()) {
                if (opt.report_format == "json") std::cout << report_to_json(valid).dump(2) << "\n";
                else std::cout << "not a sheaf:\n" << valid.summary();
                return kExitSemantic;
            }
            const DevReport report = check_dev_properties(sheaf);
            if (opt.report_format == "json") std::cout << dev_report_to_json(report).dump(2) << "\n";
            else std::cout << report.describe() << "\n";
            return report.verdict() ? kExitPass : kExitSemantic;
        },
        *bundle.sheaf);
}

int cmd_bh_cat(const Options& opt, const std::string& bundle_path) {
    const InstanceBundle bundle = load_bundle(bundle_path);
    if (!bundle.complex) throw ParseError(bundle_path, "bh-cat needs a bundle with a complex");

    const BHCategory cat = build_bh_category(bundle.complex);
    Json j;
    j["objects"] = cat.complex().base().objects();
    Json arrows = Json::array();
    const std::vector<BHArrow> all = cat.arrows();
    auto arrow_json = [](const BHArrow& x) {
        return Json::array({x.g, x.on_identity ? Json("id:" + std::to_string(x.base)) : Json(x.base)});
    };
    for (const BHArrow& x : all) {
        arrows.push_back(Json{{"arrow", arrow_json(x)},
                              {"source", cat.source(x)},
                              {"target", cat.target(x)}});
    }
    j["arrows"] = std::move(arrows);
    Json comp = Json::array();
    for (const BHArrow& x : all)
        for (const BHArrow& y : all)
            if (cat.composable(x, y))
                comp.push_back(Json::array({arrow_json(x), arrow_json(y),
                                            arrow_json(compose_bh(cat, x, y))}));
    j["composition"] = std::move(comp);

    if (!opt.out_path.empty()) write_json_file(opt.out_path, j);
    else std::cout << j.dump(2) << "\n";
    return kExitPass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations with complexes of groups, matrix sheaves, and "
                 "developability certificates"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--report", opt.report_format, "report format: text or json")
        ->check(CLI::IsMember({"text", "json"}));

    std::vector<std::string> validate_bundles;
    CLI::App* validate = app.add_subcommand("validate", "validate every part of a bundle");
    validate->add_option("bundle", validate_bundles, "bundle manifest path(s)")->required();

    std::string develop_bundle;
    CLI::App* dev = app.add_subcommand("develop", "build and verify a developability certificate");
    dev->add_option("bundle", develop_bundle, "bundle manifest path")->required();
    dev->add_option("--out", opt.out_path, "certificate output path");

    std::string sfm_bundle;
    CLI::App* sfm = app.add_subcommand("sheaf-from-morphism",
                                       "realize a witness morphism as a sheaf");
    sfm->add_option("bundle", sfm_bundle, "bundle manifest path")->required();
    sfm->add_option("--out", opt.out_path, "sheaf output path");
    sfm->add_option("--field", opt.field_spec, "field spec: Q or Fp:p");

    std::string devcheck_bundle;
    CLI::App* devcheck = app.add_subcommand("dev-check", "report the dev properties of a sheaf");
    devcheck->add_option("bundle", devcheck_bundle, "bundle manifest path")->required();

    std::string bhcat_bundle;
    CLI::App* bhcat = app.add_subcommand("bh-cat", "dump the category of a complex of groups");
    bhcat->add_option("bundle", bhcat_bundle, "bundle manifest path")->required();
    bhcat->add_option("--out", opt.out_path, "dump output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(opt, validate_bundles);
        if (dev->parsed()) return cmd_develop(opt, develop_bundle);
        if (sfm->parsed()) return cmd_sheaf_from_morphism(opt, sfm_bundle);
        if (devcheck->parsed()) return cmd_dev_check(opt, devcheck_bundle);
        if (bhcat->parsed()) return cmd_bh_cat(opt, bhcat_bundle);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
