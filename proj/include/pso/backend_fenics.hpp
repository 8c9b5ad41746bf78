#pragma once

#include <string>
#include <vector>

#include "pso/plan.hpp"

namespace pso::fenics {

struct ScriptArtifact {
    std::string file_name; // "<behavior>_fenics.py"
    std::string body;
    std::string mesh_file;  // sidecar referenced by the script
    std::string facet_file; // facet-marker sidecar
    // Identifiers assigned from the spec's quantities, in template order.
    std::vector<std::string> data_items;
};

// Renders the solver script for one problem. The template is fixed per
// physics kind; every quantity lands in a named assignment and the script
// reads its mesh from the given sidecar file names. Deterministic. Throws
// IllPosed when the spec is missing data the template needs.
ScriptArtifact emit_script(const plan::ProblemSpec& spec, const std::string& mesh_file,
                           const std::string& facet_file);

} // namespace pso::fenics
