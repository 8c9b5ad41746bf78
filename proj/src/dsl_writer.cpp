#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

#include "pso/decimal.hpp"
#include "pso/dsl.hpp"

namespace pso::dsl {

namespace {

std::string render_extent(double v) {
    return render_decimal(v);
}

} // namespace

std::string serialize_canonical(const ParsedModel& model) {
    const ModelGraph& graph = model.graph;
    std::ostringstream out;
    bool wrote_block = false;

    auto start_block = [&](bool nonempty) {
        if (nonempty && wrote_block) {
            out << "\n";
        }
        wrote_block = wrote_block || nonempty;
    };

    // Classes (built-ins stay implicit).
    std::vector<std::string> classes = graph.taxonomy().user_classes();
    start_block(!classes.empty());
    for (const std::string& name : classes) {
        out << "class " << name << " < " << graph.taxonomy().parent_of(name) << "\n";
    }

    // Instances.
    std::vector<Instance> instances = graph.instances();
    std::sort(instances.begin(), instances.end(),
              [](const Instance& a, const Instance& b) { return a.id < b.id; });
    start_block(!instances.empty());
    for (const Instance& inst : instances) {
        out << "instance " << inst.id << " : " << inst.cls;
        if (!inst.label.empty()) {
            out << " \"" << inst.label << "\"";
        }
        out << "\n";
    }

    // Relation assertions.
    std::vector<Assertion> assertions = graph.assertions();
    std::sort(assertions.begin(), assertions.end(),
              [](const Assertion& a, const Assertion& b) {
                  return std::tie(a.subject, a.relation, a.object) <
                         std::tie(b.subject, b.relation, b.object);
              });
    start_block(!assertions.empty());
    for (const Assertion& a : assertions) {
        out << "rel " << a.subject << " " << relation_name(a.relation) << " " << a.object << "\n";
    }

    // Quantity values (map iteration is already id-sorted).
    start_block(!graph.values().empty());
    for (const auto& [id, value] : graph.values()) {
        out << "value " << id << " = " << render_decimal(value.magnitude);
        if (!value.unit.empty()) {
            out << " " << value.unit;
        }
        out << "\n";
    }

    // Mesh directives with their face tags.
    std::vector<const MeshDirective*> meshes;
    for (const MeshDirective& mesh : model.meshes) {
        meshes.push_back(&mesh);
    }
    std::sort(meshes.begin(), meshes.end(),
              [](const MeshDirective* a, const MeshDirective* b) { return a->id < b->id; });
    start_block(!meshes.empty());
    for (const MeshDirective* mesh : meshes) {
        out << "mesh " << mesh->id << " for " << mesh->target << " box "
            << render_extent(mesh->extent[0]) << " " << render_extent(mesh->extent[1]) << " "
            << render_extent(mesh->extent[2]) << " div " << mesh->divisions[0] << " "
            << mesh->divisions[1] << " " << mesh->divisions[2] << "\n";
        for (std::string_view face : kFaceNames) {
            auto it = mesh->face_tags.find(std::string(face));
            if (it != mesh->face_tags.end()) {
                out << "tag " << mesh->id << " face " << face << " surface " << it->second
                    << "\n";
            }
        }
    }

    // Simulation requests, duplicates collapsed.
    std::set<std::tuple<std::string, std::string, int>> sims;
    for (const SimRequest& sim : model.sims) {
        sims.emplace(sim.behavior, std::string(backend_name(sim.target)), sim.steps);
    }
    start_block(!sims.empty());
    for (const auto& [behavior, target, steps] : sims) {
        out << "simulate " << behavior << " target " << target << " steps " << steps << "\n";
    }

    return out.str();
}

} // namespace pso::dsl
