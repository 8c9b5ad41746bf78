#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "pso/dsl.hpp"

namespace pso::mesh {

using Quad = std::array<int, 4>;
using Hex = std::array<int, 8>;
using Tet = std::array<int, 4>;

struct MeshData {
    std::vector<std::array<double, 3>> vertices;
    std::vector<Hex> hexes;
    std::vector<Tet> tets; // filled by hex_to_tet; hexes are retained
    // Boundary quads keyed by box face name, outward winding.
    std::map<std::string, std::vector<Quad>> boundary_faces;
    // surface id -> 1-based facet marker, lexical by surface id.
    std::map<std::string, int> facet_markers;
};

// Structured hex grid over [0,extent] with divisions cells per axis.
// Vertex index = ix + iy*(nx+1) + iz*(nx+1)*(ny+1). Throws InvalidDivisions.
MeshData box_hex_mesh(const std::array<double, 3>& extent, const std::array<int, 3>& divisions);

// Splits every hex into six tets (Kuhn subdivision). All tets have positive
// volume and the split is translation invariant, so neighbouring cells agree
// on the shared-face diagonal.
MeshData hex_to_tet(MeshData mesh);

// Marker table implied by a directive's face tags.
std::map<std::string, int> facet_markers(const dsl::MeshDirective& directive);

// Boundary quads / unique sorted vertex ids of the faces tagged with a
// surface, in canonical face order.
std::vector<Quad> surface_quads(const MeshData& mesh, const dsl::MeshDirective& directive,
                                const std::string& surface);
std::vector<int> surface_nodes(const MeshData& mesh, const dsl::MeshDirective& directive,
                               const std::string& surface);

struct MeshPaths {
    std::filesystem::path mesh_file;
    std::filesystem::path facet_file;
};

// Writes <id>.xml (tet mesh) and <id>_facets.xml (facet markers; untagged
// boundary facets carry 0). Deterministic bytes for identical input. Throws
// UntaggedFaceRequired for tags that match no boundary face, IoError on
// filesystem failure.
MeshPaths write_mesh_files(const MeshData& mesh, const dsl::MeshDirective& directive,
                           const std::filesystem::path& out_dir);

} // namespace pso::mesh
