#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pso/diagnostics.hpp"
#include "pso/dsl.hpp"
#include "pso/graph.hpp"

namespace pso::driver {

struct ValidationReport {
    // Ontology-level checks, then plan-level checks for each behavior with a
    // simulate request; sorted by (severity, code, subject).
    std::vector<Diagnostic> diagnostics;
    // Informational lines (physically coupled behavior groups).
    std::vector<std::string> notes;

    bool ok() const { return !has_errors(diagnostics); }
};

ValidationReport validate(const dsl::ParsedModel& model);

struct CompileResult {
    std::vector<std::filesystem::path> files; // written artifacts, write order
    std::vector<Diagnostic> diagnostics;      // planning diagnostics
    std::optional<ModelGraph> extended;       // graph plus the request's ICEs

    bool ok() const { return !has_errors(diagnostics); }
};

// Plans one simulate request and writes its artifacts into out_dir. Expects
// an axiom-clean graph (run validate first); planning errors come back in
// diagnostics with no files written. UnsupportedPhysics and IoError
// propagate.
CompileResult compile_request(const dsl::ParsedModel& model, const dsl::SimRequest& request,
                              const std::filesystem::path& out_dir);

} // namespace pso::driver
