#include "pso/meshgen.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "pso/decimal.hpp"
#include "pso/errors.hpp"

namespace pso::mesh {

namespace {

// Kuhn subdivision around the main diagonal, in bx + 2*by + 4*bz corner
// numbering: six positively oriented tets sharing edge 0-7.
constexpr int kKuhnTets[6][4] = {
    {0, 1, 3, 7}, {0, 3, 2, 7}, {0, 2, 6, 7}, {0, 6, 4, 7}, {0, 4, 5, 7}, {0, 5, 1, 7},
};

// Hex tuples are stored CHEXA-style: (v000, v100, v110, v010, v001, v101,
// v111, v011). Maps the Kuhn corner number to that tuple position.
constexpr int kCornerToHexSlot[8] = {0, 1, 3, 2, 4, 5, 7, 6};

} // namespace

MeshData box_hex_mesh(const std::array<double, 3>& extent,
                      const std::array<int, 3>& divisions) {
    for (int axis = 0; axis < 3; ++axis) {
        if (divisions[axis] < 1) {
            throw InvalidDivisions("division count must be at least 1 per axis");
        }
        if (!(extent[axis] > 0.0)) {
            throw InvalidDivisions("box extent must be positive per axis");
        }
    }

    const int nx = divisions[0], ny = divisions[1], nz = divisions[2];
    MeshData mesh;

    auto vertex_index = [&](int ix, int iy, int iz) {
        return ix + iy * (nx + 1) + iz * (nx + 1) * (ny + 1);
    };

    mesh.vertices.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1) * (nz + 1));
    for (int iz = 0; iz <= nz; ++iz) {
        for (int iy = 0; iy <= ny; ++iy) {
            for (int ix = 0; ix <= nx; ++ix) {
                mesh.vertices.push_back({extent[0] * ix / nx, extent[1] * iy / ny,
                                         extent[2] * iz / nz});
            }
        }
    }

    mesh.hexes.reserve(static_cast<std::size_t>(nx) * ny * nz);
    for (int iz = 0; iz < nz; ++iz) {
        for (int iy = 0; iy < ny; ++iy) {
            for (int ix = 0; ix < nx; ++ix) {
                mesh.hexes.push_back({
                    vertex_index(ix, iy, iz),
                    vertex_index(ix + 1, iy, iz),
                    vertex_index(ix + 1, iy + 1, iz),
                    vertex_index(ix, iy + 1, iz),
                    vertex_index(ix, iy, iz + 1),
                    vertex_index(ix + 1, iy, iz + 1),
                    vertex_index(ix + 1, iy + 1, iz + 1),
                    vertex_index(ix, iy + 1, iz + 1),
                });
            }
        }
    }

    // Boundary quads, outward winding.
    auto& faces = mesh.boundary_faces;
    for (int iy = 0; iy < ny; ++iy) {
        for (int iz = 0; iz < nz; ++iz) {
            faces["x_min"].push_back({vertex_index(0, iy, iz), vertex_index(0, iy, iz + 1),
                                      vertex_index(0, iy + 1, iz + 1),
                                      vertex_index(0, iy + 1, iz)});
            faces["x_max"].push_back({vertex_index(nx, iy, iz), vertex_index(nx, iy + 1, iz),
                                      vertex_index(nx, iy + 1, iz + 1),
                                      vertex_index(nx, iy, iz + 1)});
        }
    }
    for (int ix = 0; ix < nx; ++ix) {
        for (int iz = 0; iz < nz; ++iz) {
            faces["y_min"].push_back({vertex_index(ix, 0, iz), vertex_index(ix + 1, 0, iz),
                                      vertex_index(ix + 1, 0, iz + 1),
                                      vertex_index(ix, 0, iz + 1)});
            faces["y_max"].push_back({vertex_index(ix, ny, iz), vertex_index(ix, ny, iz + 1),
                                      vertex_index(ix + 1, ny, iz + 1),
                                      vertex_index(ix + 1, ny, iz)});
        }
    }
    for (int ix = 0; ix < nx; ++ix) {
        for (int iy = 0; iy < ny; ++iy) {
            faces["z_min"].push_back({vertex_index(ix, iy, 0), vertex_index(ix, iy + 1, 0),
                                      vertex_index(ix + 1, iy + 1, 0),
                                      vertex_index(ix + 1, iy, 0)});
            faces["z_max"].push_back({vertex_index(ix, iy, nz), vertex_index(ix + 1, iy, nz),
                                      vertex_index(ix + 1, iy + 1, nz),
                                      vertex_index(ix, iy + 1, nz)});
        }
    }

    return mesh;
}

MeshData hex_to_tet(MeshData mesh) {
    mesh.tets.clear();
    mesh.tets.reserve(mesh.hexes.size() * 6);
    for (const Hex& hex : mesh.hexes) {
        int corner[8];
        for (int c = 0; c < 8; ++c) {
            corner[c] = hex[kCornerToHexSlot[c]];
        }
        for (const auto& tet : kKuhnTets) {
            mesh.tets.push_back({corner[tet[0]], corner[tet[1]], corner[tet[2]],
                                 corner[tet[3]]});
        }
    }
    return mesh;
}

std::map<std::string, int> facet_markers(const dsl::MeshDirective& directive) {
    std::set<std::string> surfaces;
    for (const auto& [face, surface] : directive.face_tags) {
        (void)face;
        surfaces.insert(surface);
    }
    std::map<std::string, int> markers;
    int next = 1;
    for (const std::string& surface : surfaces) {
        markers[surface] = next++;
    }
    return markers;
}

std::vector<Quad> surface_quads(const MeshData& mesh, const dsl::MeshDirective& directive,
                                const std::string& surface) {
    std::vector<Quad> out;
    for (std::string_view face : dsl::kFaceNames) {
        auto tag = directive.face_tags.find(std::string(face));
        if (tag == directive.face_tags.end() || tag->second != surface) {
            continue;
        }
        auto quads = mesh.boundary_faces.find(std::string(face));
        if (quads == mesh.boundary_faces.end() || quads->second.empty()) {
            throw UntaggedFaceRequired("face '" + std::string(face) +
                                       "' has no boundary quads in the generated mesh");
        }
        out.insert(out.end(), quads->second.begin(), quads->second.end());
    }
    return out;
}

std::vector<int> surface_nodes(const MeshData& mesh, const dsl::MeshDirective& directive,
                               const std::string& surface) {
    std::set<int> nodes;
    for (const Quad& quad : surface_quads(mesh, directive, surface)) {
        nodes.insert(quad.begin(), quad.end());
    }
    return {nodes.begin(), nodes.end()};
}

namespace {

std::array<int, 3> sorted_tri(int a, int b, int c) {
    std::array<int, 3> tri{a, b, c};
    std::sort(tri.begin(), tri.end());
    return tri;
}

struct FacetRef {
    int cell_index;
    int local_entity;
};

void write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << body;
    if (!out) {
        throw IoError("failed while writing '" + path.string() + "'");
    }
}

} // namespace

MeshPaths write_mesh_files(const MeshData& mesh, const dsl::MeshDirective& directive,
                           const std::filesystem::path& out_dir) {
    if (mesh.tets.empty()) {
        throw Error("write_mesh_files expects a tetrahedral mesh; run hex_to_tet first");
    }
    for (const auto& [face, surface] : directive.face_tags) {
        (void)surface;
        auto it = mesh.boundary_faces.find(face);
        if (it == mesh.boundary_faces.end() || it->second.empty()) {
            throw UntaggedFaceRequired("directive tags face '" + face +
                                       "', which has no boundary quads");
        }
    }

    // Triangle -> (cell, local facet) lookup. Local facet i of a tet is the
    // face opposite vertex i.
    std::map<std::array<int, 3>, FacetRef> facet_of;
    for (std::size_t ci = 0; ci < mesh.tets.size(); ++ci) {
        const Tet& t = mesh.tets[ci];
        for (int local = 0; local < 4; ++local) {
            int v[3];
            int k = 0;
            for (int i = 0; i < 4; ++i) {
                if (i != local) {
                    v[k++] = t[i];
                }
            }
            facet_of[sorted_tri(v[0], v[1], v[2])] = {static_cast<int>(ci), local};
        }
    }

    std::map<std::string, int> markers =
        mesh.facet_markers.empty() ? facet_markers(directive) : mesh.facet_markers;

    struct Entry {
        int cell_index;
        int local_entity;
        int value;
    };
    std::vector<Entry> entries;

    for (std::string_view face : dsl::kFaceNames) {
        auto quads = mesh.boundary_faces.find(std::string(face));
        if (quads == mesh.boundary_faces.end()) {
            continue;
        }
        int marker = 0;
        auto tag = directive.face_tags.find(std::string(face));
        if (tag != directive.face_tags.end()) {
            marker = markers.at(tag->second);
        }
        for (const Quad& q : quads->second) {
            // The quad is split along whichever diagonal the tet mesh used.
            const std::array<std::array<std::array<int, 3>, 2>, 2> splits = {{
                {{sorted_tri(q[0], q[1], q[2]), sorted_tri(q[0], q[2], q[3])}},
                {{sorted_tri(q[0], q[1], q[3]), sorted_tri(q[1], q[2], q[3])}},
            }};
            bool matched = false;
            for (const auto& split : splits) {
                auto a = facet_of.find(split[0]);
                auto b = facet_of.find(split[1]);
                if (a != facet_of.end() && b != facet_of.end()) {
                    entries.push_back({a->second.cell_index, a->second.local_entity, marker});
                    entries.push_back({b->second.cell_index, b->second.local_entity, marker});
                    matched = true;
                    break;
                }
            }
            if (!matched) {
                throw Error("boundary quad does not match the tetrahedral faces");
            }
        }
    }

    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return std::tie(a.cell_index, a.local_entity) < std::tie(b.cell_index, b.local_entity);
    });

    std::ostringstream mesh_xml;
    mesh_xml << "<?xml version=\"1.0\"?>\n";
    mesh_xml << "<dolfin xmlns:dolfin=\"http://fenicsproject.org\">\n";
    mesh_xml << "  <mesh celltype=\"tetrahedron\" dim=\"3\">\n";
    mesh_xml << "    <vertices size=\"" << mesh.vertices.size() << "\">\n";
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
        const auto& v = mesh.vertices[i];
        mesh_xml << "      <vertex index=\"" << i << "\" x=\"" << render_decimal(v[0])
                 << "\" y=\"" << render_decimal(v[1]) << "\" z=\"" << render_decimal(v[2])
                 << "\"/>\n";
    }
    mesh_xml << "    </vertices>\n";
    mesh_xml << "    <cells size=\"" << mesh.tets.size() << "\">\n";
    for (std::size_t i = 0; i < mesh.tets.size(); ++i) {
        const Tet& t = mesh.tets[i];
        mesh_xml << "      <tetrahedron index=\"" << i << "\" v0=\"" << t[0] << "\" v1=\""
                 << t[1] << "\" v2=\"" << t[2] << "\" v3=\"" << t[3] << "\"/>\n";
    }
    mesh_xml << "    </cells>\n";
    mesh_xml << "  </mesh>\n";
    mesh_xml << "</dolfin>\n";

    std::ostringstream facet_xml;
    facet_xml << "<?xml version=\"1.0\"?>\n";
    facet_xml << "<dolfin xmlns:dolfin=\"http://fenicsproject.org\">\n";
    facet_xml << "  <mesh_value_collection name=\"boundaries\" type=\"uint\" dim=\"2\" size=\""
              << entries.size() << "\">\n";
    for (const Entry& e : entries) {
        facet_xml << "    <value cell_index=\"" << e.cell_index << "\" local_entity=\""
                  << e.local_entity << "\" value=\"" << e.value << "\"/>\n";
    }
    facet_xml << "  </mesh_value_collection>\n";
    facet_xml << "</dolfin>\n";

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);

    MeshPaths paths{out_dir / (directive.id + ".xml"), out_dir / (directive.id + "_facets.xml")};
    write_file(paths.mesh_file, mesh_xml.str());
    write_file(paths.facet_file, facet_xml.str());
    return paths;
}

} // namespace pso::mesh
