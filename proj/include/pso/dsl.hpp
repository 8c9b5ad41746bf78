#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pso/graph.hpp"

namespace pso::dsl {

struct SourceSpan {
    int line = 1;   // 1-based
    int column = 1; // 1-based

    bool operator==(const SourceSpan&) const = default;
};

struct ParseError {
    SourceSpan span;
    std::string message;
};

std::string format_parse_error(const ParseError& error);

enum class Backend { Fenics, Nastran };

std::string_view backend_name(Backend backend);
std::optional<Backend> backend_from_name(std::string_view name);

// Box faces in canonical order; facet output and serialization follow it.
inline constexpr std::array<std::string_view, 6> kFaceNames = {
    "x_min", "x_max", "y_min", "y_max", "z_min", "z_max",
};

bool is_face_name(std::string_view name);

struct MeshDirective {
    std::string id;
    std::string target;                          // the meshed Object
    std::array<double, 3> extent{1.0, 1.0, 1.0}; // box edge lengths, > 0
    std::array<int, 3> divisions{1, 1, 1};       // cells per axis, >= 1
    std::map<std::string, std::string> face_tags; // face name -> surface id

    bool operator==(const MeshDirective&) const = default;
};

struct SimRequest {
    std::string behavior;
    Backend target = Backend::Fenics;
    int steps = 50;

    bool operator==(const SimRequest&) const = default;
};

struct ParsedModel {
    ModelGraph graph;
    std::vector<MeshDirective> meshes;
    std::vector<SimRequest> sims;

    const MeshDirective* mesh_for_target(const std::string& object_id) const;
    const MeshDirective* mesh_by_id(const std::string& id) const;
};

struct ParseResult {
    std::optional<ParsedModel> model;
    std::vector<ParseError> errors;

    bool ok() const { return model.has_value(); }
};

// Total over arbitrary text: malformed input lands in `errors`, never throws.
// Statements may reference ids declared later in the file.
ParseResult parse(std::string_view text);

// Canonical text form: sorted statement blocks, canonical decimals, explicit
// defaults. parse(serialize_canonical(m)) reproduces m; semantically equal
// models serialize identically.
std::string serialize_canonical(const ParsedModel& model);

} // namespace pso::dsl
