#include "pso/driver.hpp"

#include <fstream>
#include <set>

#include "pso/axioms.hpp"
#include "pso/backend_fenics.hpp"
#include "pso/backend_nastran.hpp"
#include "pso/errors.hpp"
#include "pso/meshgen.hpp"
#include "pso/plan.hpp"

namespace pso::driver {

namespace {

void append(std::vector<Diagnostic>& into, const std::vector<Diagnostic>& from) {
    into.insert(into.end(), from.begin(), from.end());
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) out += ", ";
        out += parts[i];
    }
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    out << body;
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
}

} // namespace

ValidationReport validate(const dsl::ParsedModel& model) {
    ValidationReport report;
    report.diagnostics = axioms::check_all(model.graph);
    if (!report.ok()) {
        return report;
    }

    std::set<std::string> seen;
    for (const dsl::SimRequest& sim : model.sims) {
        if (!seen.insert(sim.behavior).second) {
            continue;
        }
        plan::PlanResult planned = plan::derive_problem(model, sim);
        append(report.diagnostics, planned.diagnostics);
        if (planned.spec) {
            append(report.diagnostics, plan::well_posedness(*planned.spec));
        }
    }
    sort_diagnostics(report.diagnostics);

    plan::CouplingReport coupling = plan::detect_coupling(model);
    for (const auto& group : coupling.groups) {
        if (group.size() < 2) {
            continue;
        }
        report.notes.push_back("note: behaviors " + join(group) +
                               " are physically coupled; each compiles as a separate problem");
    }
    return report;
}

CompileResult compile_request(const dsl::ParsedModel& model, const dsl::SimRequest& request,
                              const std::filesystem::path& out_dir) {
    CompileResult result;
    plan::PlanResult planned = plan::derive_problem(model, request);
    result.diagnostics = planned.diagnostics;
    if (!planned.spec) {
        sort_diagnostics(result.diagnostics);
        return result;
    }
    append(result.diagnostics, plan::well_posedness(*planned.spec));
    sort_diagnostics(result.diagnostics);
    if (!result.ok()) {
        return result;
    }

    const plan::ProblemSpec& spec = *planned.spec;
    result.extended = plan::instantiate_ices(model.graph, spec, request);

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
    }

    if (request.target == dsl::Backend::Fenics) {
        mesh::MeshData grid = mesh::hex_to_tet(mesh::box_hex_mesh(spec.mesh.extent,
                                                                  spec.mesh.divisions));
        mesh::MeshPaths paths = mesh::write_mesh_files(grid, spec.mesh, out_dir);
        result.files.push_back(paths.mesh_file);
        result.files.push_back(paths.facet_file);

        fenics::ScriptArtifact script = fenics::emit_script(
            spec, paths.mesh_file.filename().string(), paths.facet_file.filename().string());
        std::filesystem::path script_path = out_dir / script.file_name;
        write_text(script_path, script.body);
        result.files.push_back(script_path);
    } else {
        mesh::MeshData grid = mesh::box_hex_mesh(spec.mesh.extent, spec.mesh.divisions);
        nastran::Deck deck = nastran::emit_deck(spec, grid);
        std::filesystem::path deck_path = out_dir / (spec.behavior + ".bdf");
        write_text(deck_path, nastran::render_deck(deck));
        result.files.push_back(deck_path);
    }
    return result;
}

} // namespace pso::driver
