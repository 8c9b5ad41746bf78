#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pso/diagnostics.hpp"
#include "pso/graph.hpp"

namespace pso::axioms {

struct CheckOptions {
    // W003 parthood-entailment notes are informational and off by default.
    bool entailment_notes = false;
};

// E001: relation signature violations, one diagnostic per bad assertion.
std::vector<Diagnostic> check_signatures(const ModelGraph& graph);

// E002 parthood cycles, E003/E004 contact axioms, W003 entailment notes.
std::vector<Diagnostic> check_structure(const ModelGraph& graph, const CheckOptions& options = {});

// Union of the above, sorted by (severity, code, first subject).
std::vector<Diagnostic> check_all(const ModelGraph& graph, const CheckOptions& options = {});

// continuant_part_of edge list including the parthood entailed by made_of:
// made_of(x, y) contributes (y, x). Used for cycle checks and closure queries
// so users never have to assert the entailed edge.
std::vector<std::pair<std::string, std::string>> parthood_edges(const ModelGraph& graph);

// Transitive closure (paths of length >= 1) over parthood_edges.
std::set<std::pair<std::string, std::string>> parthood_closure(const ModelGraph& graph);

} // namespace pso::axioms
