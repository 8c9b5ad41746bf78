#include "doctest.h"

#include <filesystem>
#include <set>

#include "pso/driver.hpp"
#include "pso/errors.hpp"
#include "support/model_fixture.hpp"

using namespace pso;
using namespace pso::driver;
using testsupport::case_study;
using testsupport::case_study_source;
using testsupport::parse_or_throw;
using testsupport::read_file;
using testsupport::remove_line;
using testsupport::replace_line;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
    std::filesystem::path dir = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(dir);
    return dir;
}

} // namespace

TEST_CASE("validate accepts the case study with one boundary default") {
    ValidationReport report = validate(case_study());
    CHECK(report.ok());
    REQUIRE(report.diagnostics.size() == 1);
    CHECK(report.diagnostics[0].code == "W001");
    CHECK(report.diagnostics[0].severity == Severity::Warning);
    CHECK(report.diagnostics[0].subjects == std::vector<std::string>{"psir"});
    CHECK(report.notes.empty());
}

TEST_CASE("validate reports coupled behavior groups as notes") {
    dsl::ParsedModel model = parse_or_throw(
        case_study_source() + "\nrel flux_psir physically_related_to temp_pse\n");
    ValidationReport report = validate(model);
    CHECK(report.ok());
    REQUIRE(report.notes.size() == 1);
    CHECK(report.notes[0] ==
          "note: behaviors structural_behavior, thermal_behavior are physically coupled; "
          "each compiles as a separate problem");
}

TEST_CASE("validate stops at ontology errors before planning") {
    dsl::ParsedModel model = parse_or_throw(replace_line(
        case_study_source(), "rel pipe made_of cast_iron", "rel cast_iron made_of pipe"));
    ValidationReport report = validate(model);
    CHECK_FALSE(report.ok());
    REQUIRE_FALSE(report.diagnostics.empty());
    for (const Diagnostic& d : report.diagnostics) {
        CHECK(d.code == "E001");
    }
}

TEST_CASE("compile_request writes the fenics artifact set") {
    std::filesystem::path dir = fresh_dir("pso_driver_fenics");
    CompileResult result =
        compile_request(case_study(), {"structural_behavior", dsl::Backend::Fenics, 50}, dir);
    CHECK(result.ok());

    REQUIRE(result.files.size() == 3);
    CHECK(result.files[0].filename() == "pipe_box.xml");
    CHECK(result.files[1].filename() == "pipe_box_facets.xml");
    CHECK(result.files[2].filename() == "structural_behavior_fenics.py");
    for (const std::filesystem::path& file : result.files) {
        CHECK(std::filesystem::exists(file));
    }

    REQUIRE(result.extended.has_value());
    CHECK(result.extended->instances().size() ==
          case_study().graph.instances().size() + 4);

    std::string script = read_file(result.files[2].string());
    CHECK(script.find("mesh = Mesh(\"pipe_box.xml\")") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("compile_request writes one bulk-data deck for nastran") {
    std::filesystem::path dir = fresh_dir("pso_driver_nastran");
    CompileResult result =
        compile_request(case_study(), {"thermal_behavior", dsl::Backend::Nastran, 50}, dir);
    CHECK(result.ok());
    REQUIRE(result.files.size() == 1);
    CHECK(result.files[0].filename() == "thermal_behavior.bdf");
    std::string deck = read_file(result.files[0].string());
    CHECK(deck.rfind("SOL 159\n", 0) == 0);
    CHECK(deck.find("ENDDATA\n") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("planning errors suppress artifact output") {
    dsl::ParsedModel model =
        parse_or_throw(remove_line(case_study_source(), "rel disp_psi1 s_depends_on psi1"));
    std::filesystem::path dir = fresh_dir("pso_driver_illposed");
    CompileResult result =
        compile_request(model, {"structural_behavior", dsl::Backend::Fenics, 50}, dir);
    CHECK_FALSE(result.ok());
    CHECK(result.files.empty());
    CHECK_FALSE(result.extended.has_value());
    CHECK_FALSE(std::filesystem::exists(dir));

    REQUIRE(result.diagnostics.size() == 2);
    CHECK(result.diagnostics[0].code == "E009");
    CHECK(result.diagnostics[1].code == "W001");
    std::filesystem::remove_all(dir);
}

TEST_CASE("unsupported physics propagates out of compile_request") {
    std::filesystem::path dir = fresh_dir("pso_driver_fluid");
    CHECK_THROWS_AS(
        compile_request(case_study(), {"flow_behavior", dsl::Backend::Nastran, 50}, dir),
        UnsupportedPhysics);
    std::filesystem::remove_all(dir);
}

TEST_CASE("compiling twice yields identical bytes") {
    std::filesystem::path dir_a = fresh_dir("pso_driver_det_a");
    std::filesystem::path dir_b = fresh_dir("pso_driver_det_b");
    for (const dsl::SimRequest& sim : case_study().sims) {
        CAPTURE(sim.behavior);
        CompileResult a = compile_request(case_study(), sim, dir_a);
        CompileResult b = compile_request(case_study(), sim, dir_b);
        REQUIRE(a.files.size() == b.files.size());
        for (std::size_t i = 0; i < a.files.size(); ++i) {
            CHECK(read_file(a.files[i].string()) == read_file(b.files[i].string()));
        }
    }
    std::filesystem::remove_all(dir_a);
    std::filesystem::remove_all(dir_b);
}

TEST_CASE("compiled artifacts match the golden copies byte for byte") {
    std::filesystem::path dir = fresh_dir("pso_driver_golden");
    std::set<std::filesystem::path> produced;
    for (const dsl::SimRequest& sim : case_study().sims) {
        CompileResult result = compile_request(case_study(), sim, dir);
        REQUIRE(result.ok());
        produced.insert(result.files.begin(), result.files.end());
    }
    REQUIRE(produced.size() == 9);
    for (const std::filesystem::path& file : produced) {
        CAPTURE(file.filename().string());
        std::filesystem::path golden =
            std::filesystem::path(PSO_GOLDEN_DIR) / file.filename();
        REQUIRE(std::filesystem::exists(golden));
        CHECK(read_file(file.string()) == read_file(golden.string()));
    }
    std::filesystem::remove_all(dir);
}
