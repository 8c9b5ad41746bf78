#include "pso/plan.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <tuple>

#include "pso/axioms.hpp"
#include "pso/decimal.hpp"
#include "pso/errors.hpp"

namespace pso::plan {

namespace {

Diagnostic error(std::string code, std::string message, std::vector<std::string> subjects) {
    return {Severity::Error, std::move(code), std::move(message), std::move(subjects)};
}

Diagnostic warning(std::string code, std::string message, std::vector<std::string> subjects) {
    return {Severity::Warning, std::move(code), std::move(message), std::move(subjects)};
}

std::string render_quantity(const QuantityValue& value) {
    std::string out = render_decimal(value.magnitude);
    if (!value.unit.empty()) {
        out += " " + value.unit;
    }
    return out;
}

} // namespace

std::string_view physics_kind_name(PhysicsKind kind) {
    switch (kind) {
    case PhysicsKind::Structural: return "structural";
    case PhysicsKind::Thermal: return "thermal";
    case PhysicsKind::Fluid: return "fluid";
    }
    return "?";
}

std::optional<PhysicsKind> kind_of_behavior(const ModelGraph& graph,
                                            const std::string& behavior) {
    const Instance* inst = graph.find_instance(behavior);
    if (!inst) {
        return std::nullopt;
    }
    const Taxonomy& tax = graph.taxonomy();
    if (tax.is_subclass_of(inst->cls, cls::StructuralBehavior)) return PhysicsKind::Structural;
    if (tax.is_subclass_of(inst->cls, cls::ThermalBehavior)) return PhysicsKind::Thermal;
    if (tax.is_subclass_of(inst->cls, cls::FluidBehavior)) return PhysicsKind::Fluid;
    return std::nullopt;
}

bool is_transient(PhysicsKind kind) {
    return kind == PhysicsKind::Thermal || kind == PhysicsKind::Fluid;
}

std::string_view property_role_name(PropertyRole role) {
    switch (role) {
    case PropertyRole::Dirichlet: return "dirichlet";
    case PropertyRole::Neumann: return "neumann";
    case PropertyRole::Volumetric: return "volumetric";
    case PropertyRole::Initial: return "initial";
    case PropertyRole::Unsupported: return "unsupported";
    }
    return "?";
}

PropertyRole classify_property(const Taxonomy& taxonomy, PhysicsKind kind,
                               const std::string& property_cls, BearerKind bearer) {
    auto is = [&](const char* cls_name) {
        return taxonomy.is_subclass_of(property_cls, cls_name);
    };
    const bool surface = bearer == BearerKind::Surface;

    switch (kind) {
    case PhysicsKind::Structural:
        if (surface && is(cls::Displacement)) return PropertyRole::Dirichlet;
        if (surface && is(cls::DistributedForce)) return PropertyRole::Neumann;
        if (surface && is(cls::Pressure)) return PropertyRole::Neumann;
        if (!surface && is(cls::BodyForce)) return PropertyRole::Volumetric;
        break;
    case PhysicsKind::Thermal:
        if (surface && is(cls::Temperature)) return PropertyRole::Dirichlet;
        if (surface && is(cls::TemperatureFlux)) return PropertyRole::Neumann;
        if (!surface && is(cls::TemperatureFlux)) return PropertyRole::Volumetric;
        if (!surface && is(cls::Temperature)) return PropertyRole::Initial;
        break;
    case PhysicsKind::Fluid:
        if (surface && is(cls::Velocity)) return PropertyRole::Dirichlet;
        if (surface && is(cls::Pressure)) return PropertyRole::Neumann;
        if (!surface && is(cls::BodyForce)) return PropertyRole::Volumetric;
        if (!surface && is(cls::Velocity)) return PropertyRole::Initial;
        break;
    }
    return PropertyRole::Unsupported;
}

std::vector<std::string> required_material_keys(PhysicsKind kind) {
    switch (kind) {
    case PhysicsKind::Structural: return {cls::ElasticModulus, cls::ShearModulus};
    case PhysicsKind::Thermal:
        return {cls::Density, cls::SpecificHeatCapacity, cls::ThermalConductivity};
    case PhysicsKind::Fluid: return {cls::Density, cls::Viscosity};
    }
    return {};
}

namespace {

// Expands a participant to candidate domain Objects: an Object stands for
// itself, an ObjectAggregate for its direct Object parts.
std::vector<std::string> expand_participant(const ModelGraph& graph, const std::string& id) {
    std::vector<std::string> out;
    if (graph.is_instance_of(id, cls::Object)) {
        out.push_back(id);
        return out;
    }
    if (graph.is_instance_of(id, cls::ObjectAggregate)) {
        for (const std::string& member : graph.subjects_of(Relation::ContinuantPartOf, id)) {
            if (graph.is_instance_of(member, cls::Object)) {
                out.push_back(member);
            }
        }
    }
    return out;
}

// True when `candidate` bears at least one property that matters for `kind`,
// either directly or through one of its surfaces.
bool bears_relevant_property(const ModelGraph& graph,
                             const std::set<std::pair<std::string, std::string>>& closure,
                             PhysicsKind kind, const std::string& candidate) {
    const Taxonomy& tax = graph.taxonomy();
    for (const std::string& prop : graph.instances_of(cls::PhysicalProperty)) {
        const std::string& prop_cls = graph.instance(prop).cls;
        for (const std::string& target : graph.objects_of(prop, Relation::SDependsOn)) {
            BearerKind bearer;
            if (target == candidate) {
                bearer = BearerKind::Object;
            } else if (tax.is_subclass_of(graph.instance(target).cls, cls::FiatObjectSurface) &&
                       closure.count({target, candidate}) != 0) {
                bearer = BearerKind::Surface;
            } else {
                continue;
            }
            if (classify_property(tax, kind, prop_cls, bearer) != PropertyRole::Unsupported) {
                return true;
            }
        }
    }
    return false;
}

// The built-in MaterialProperty subclass a class keys under (Density,
// Viscosity, ...). Empty when the class is MaterialProperty itself.
std::string material_key(const Taxonomy& tax, const std::string& cls_name) {
    std::string cur = cls_name;
    while (tax.parent_of(cur) != cls::MaterialProperty) {
        cur = tax.parent_of(cur);
        if (cur.empty()) {
            return {};
        }
    }
    return cur;
}

} // namespace

PlanResult derive_problem(const dsl::ParsedModel& model, const dsl::SimRequest& request) {
    const ModelGraph& graph = model.graph;
    const Taxonomy& tax = graph.taxonomy();
    std::vector<Diagnostic> diags;

    const Instance* behavior = graph.find_instance(request.behavior);
    if (!behavior || !tax.is_subclass_of(behavior->cls, cls::PhysicalBehavior)) {
        diags.push_back(error("E005",
                              "'" + request.behavior + "' is not a physical behavior instance",
                              {request.behavior}));
        return {std::nullopt, std::move(diags)};
    }

    auto kind = kind_of_behavior(graph, request.behavior);
    if (!kind) {
        diags.push_back(error("E005",
                              "behavior '" + request.behavior + "' has class '" + behavior->cls +
                                  "', which does not determine a physics kind",
                              {request.behavior}));
        return {std::nullopt, std::move(diags)};
    }

    ProblemSpec spec;
    spec.behavior = request.behavior;
    spec.kind = *kind;
    spec.timestep_count = request.steps;

    auto closure = axioms::parthood_closure(graph);

    // Domain: explicit participants win; otherwise inherit from the parent
    // process (W002).
    std::vector<std::string> participants =
        graph.objects_of(request.behavior, Relation::HasParticipant);
    std::string inherited_from;
    if (participants.empty()) {
        std::vector<std::string> processes =
            graph.objects_of(request.behavior, Relation::ProcessProfileOf);
        std::sort(processes.begin(), processes.end());
        for (const std::string& process : processes) {
            for (std::string& p : graph.objects_of(process, Relation::HasParticipant)) {
                participants.push_back(std::move(p));
                if (inherited_from.empty()) {
                    inherited_from = process;
                }
            }
        }
    }

    std::set<std::string> candidate_set;
    for (const std::string& participant : participants) {
        for (std::string& candidate : expand_participant(graph, participant)) {
            candidate_set.insert(std::move(candidate));
        }
    }
    std::vector<std::string> candidates;
    for (const std::string& candidate : candidate_set) {
        if (bears_relevant_property(graph, closure, spec.kind, candidate)) {
            candidates.push_back(candidate);
        }
    }

    if (candidates.empty()) {
        diags.push_back(error("E005",
                              "no domain object with " +
                                  std::string(physics_kind_name(spec.kind)) +
                                  " properties participates in behavior '" + request.behavior +
                                  "'",
                              {request.behavior}));
        return {std::nullopt, std::move(diags)};
    }
    if (candidates.size() > 1) {
        std::string listed;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (i) listed += ", ";
            listed += "'" + candidates[i] + "'";
        }
        diags.push_back(error("E005",
                              "ambiguous domain for behavior '" + request.behavior +
                                  "': candidates " + listed,
                              {request.behavior}));
        return {std::nullopt, std::move(diags)};
    }
    spec.domain = candidates.front();
    if (!inherited_from.empty()) {
        diags.push_back(warning("W002",
                                "domain '" + spec.domain + "' for behavior '" + request.behavior +
                                    "' inherited from process '" + inherited_from + "'",
                                {request.behavior, spec.domain}));
    }

    // Surface tree of the domain.
    std::set<std::string> domain_surfaces;
    for (const std::string& surface : graph.instances_of(cls::FiatObjectSurface)) {
        if (closure.count({surface, spec.domain}) != 0) {
            domain_surfaces.insert(surface);
        }
    }
    for (const std::string& surface : domain_surfaces) {
        SurfaceInfo info{surface, spec.domain};
        std::vector<std::string> wholes = graph.objects_of(surface, Relation::ContinuantPartOf);
        std::sort(wholes.begin(), wholes.end());
        for (const std::string& whole : wholes) {
            if (domain_surfaces.count(whole) != 0) {
                info.parent = whole;
                break;
            }
        }
        spec.surfaces.push_back(std::move(info));
    }

    // Property bindings.
    auto require_value = [&](const std::string& prop) -> const QuantityValue* {
        const QuantityValue* value = graph.value_of(prop);
        if (!value) {
            diags.push_back(
                error("E006", "property '" + prop + "' has no value assignment", {prop}));
        }
        return value;
    };

    for (const std::string& prop : graph.instances_of(cls::PhysicalProperty)) {
        const std::string& prop_cls = graph.instance(prop).cls;
        for (const std::string& target : graph.objects_of(prop, Relation::SDependsOn)) {
            BearerKind bearer;
            if (target == spec.domain) {
                bearer = BearerKind::Object;
            } else if (domain_surfaces.count(target) != 0) {
                bearer = BearerKind::Surface;
            } else {
                continue;
            }
            PropertyRole role = classify_property(tax, spec.kind, prop_cls, bearer);
            if (role == PropertyRole::Unsupported) {
                continue;
            }
            const QuantityValue* value = require_value(prop);
            if (!value) {
                continue;
            }
            switch (role) {
            case PropertyRole::Dirichlet:
                spec.dirichlet.push_back({target, prop, *value});
                break;
            case PropertyRole::Neumann:
                spec.neumann.push_back({target, prop, *value});
                break;
            case PropertyRole::Volumetric:
                spec.volumetric.push_back({prop, *value});
                break;
            case PropertyRole::Initial:
                spec.initial.push_back({prop, *value});
                break;
            case PropertyRole::Unsupported:
                break;
            }
        }
    }

    auto bc_order = [](const BcBinding& a, const BcBinding& b) {
        return std::tie(a.surface, a.property) < std::tie(b.surface, b.property);
    };
    auto field_order = [](const FieldBinding& a, const FieldBinding& b) {
        return a.property < b.property;
    };
    std::sort(spec.dirichlet.begin(), spec.dirichlet.end(), bc_order);
    std::sort(spec.neumann.begin(), spec.neumann.end(), bc_order);
    std::sort(spec.volumetric.begin(), spec.volumetric.end(), field_order);
    std::sort(spec.initial.begin(), spec.initial.end(), field_order);

    // Material properties, via made_of.
    std::vector<std::string> substances = graph.objects_of(spec.domain, Relation::MadeOf);
    std::sort(substances.begin(), substances.end());
    for (const std::string& substance : substances) {
        std::vector<std::string> props = graph.subjects_of(Relation::SDependsOn, substance);
        std::sort(props.begin(), props.end());
        for (const std::string& prop : props) {
            const std::string& prop_cls = graph.instance(prop).cls;
            if (!tax.is_subclass_of(prop_cls, cls::MaterialProperty)) {
                continue;
            }
            std::string key = material_key(tax, prop_cls);
            if (key.empty() || spec.materials.count(key) != 0) {
                continue;
            }
            const QuantityValue* value = require_value(prop);
            if (value) {
                spec.materials.emplace(key, *value);
            }
        }
    }

    // Temporal extent from the parent process's temporal region.
    {
        std::vector<std::string> processes =
            graph.objects_of(request.behavior, Relation::ProcessProfileOf);
        std::sort(processes.begin(), processes.end());
        for (const std::string& process : processes) {
            std::vector<std::string> regions =
                graph.objects_of(process, Relation::OccupiesTemporalRegion);
            std::sort(regions.begin(), regions.end());
            if (!regions.empty()) {
                spec.temporal_region = regions.front();
                break;
            }
        }
        if (!spec.temporal_region.empty()) {
            if (const QuantityValue* value = graph.value_of(spec.temporal_region)) {
                spec.temporal_extent = *value;
            }
        }
        if (is_transient(spec.kind)) {
            if (spec.temporal_region.empty()) {
                diags.push_back(error("E006",
                                      "transient behavior '" + request.behavior +
                                          "' has no temporal region with a duration value",
                                      {request.behavior}));
            } else if (!spec.temporal_extent) {
                diags.push_back(error("E006",
                                      "temporal region '" + spec.temporal_region +
                                          "' has no duration value",
                                      {spec.temporal_region}));
            }
        }
    }

    // Mesh directive for the domain.
    if (const dsl::MeshDirective* mesh = model.mesh_for_target(spec.domain)) {
        spec.mesh = *mesh;
        std::set<std::string> tagged;
        for (const auto& [face, surface] : mesh->face_tags) {
            (void)face;
            tagged.insert(surface);
        }
        auto check_tagged = [&](const BcBinding& binding) {
            if (tagged.count(binding.surface) == 0) {
                diags.push_back(error("E005",
                                      "surface '" + binding.surface +
                                          "' carries a boundary condition but is not tagged on "
                                          "mesh '" +
                                          mesh->id + "'",
                                      {binding.surface}));
            }
        };
        for (const BcBinding& b : spec.dirichlet) check_tagged(b);
        for (const BcBinding& b : spec.neumann) check_tagged(b);
    } else {
        diags.push_back(error("E005",
                              "no mesh directive targets domain '" + spec.domain +
                                  "' of behavior '" + request.behavior + "'",
                              {request.behavior, spec.domain}));
    }

    sort_diagnostics(diags);
    if (has_errors(diags)) {
        return {std::nullopt, std::move(diags)};
    }
    return {std::move(spec), std::move(diags)};
}

std::vector<Diagnostic> well_posedness(const ProblemSpec& spec) {
    std::vector<Diagnostic> diags;

    std::map<std::string, std::string> parent;
    for (const SurfaceInfo& info : spec.surfaces) {
        parent[info.id] = info.parent;
    }
    auto chain_of = [&](const std::string& surface) {
        std::vector<std::string> chain{surface};
        std::string cur = surface;
        std::set<std::string> guard{surface};
        while (true) {
            auto it = parent.find(cur);
            if (it == parent.end() || it->second == spec.domain) break;
            cur = it->second;
            if (!guard.insert(cur).second) break; // malformed tree, stop
            chain.push_back(cur);
        }
        return chain;
    };

    std::vector<const BcBinding*> bindings;
    for (const BcBinding& b : spec.dirichlet) bindings.push_back(&b);
    for (const BcBinding& b : spec.neumann) bindings.push_back(&b);

    auto coverage = [&](const std::vector<std::string>& chain) {
        std::vector<std::string> props;
        for (const BcBinding* b : bindings) {
            if (std::find(chain.begin(), chain.end(), b->surface) != chain.end()) {
                props.push_back(b->property);
            }
        }
        std::sort(props.begin(), props.end());
        return props;
    };

    // E007: a surface reached by two boundary conditions, reported where the
    // overlap first appears.
    for (const SurfaceInfo& info : spec.surfaces) {
        std::vector<std::string> chain = chain_of(info.id);
        std::vector<std::string> covering = coverage(chain);
        if (covering.size() < 2) continue;
        if (info.parent != spec.domain) {
            std::vector<std::string> above = coverage(chain_of(info.parent));
            if (above.size() >= 2) continue; // already reported upstream
        }
        std::string listed;
        for (std::size_t i = 0; i < covering.size(); ++i) {
            if (i) listed += ", ";
            listed += "'" + covering[i] + "'";
        }
        Diagnostic d;
        d.severity = Severity::Error;
        d.code = "E007";
        d.message = "surface '" + info.id + "' is covered by " +
                    std::to_string(covering.size()) + " boundary conditions (" + listed + ")";
        d.subjects = {info.id};
        d.subjects.insert(d.subjects.end(), covering.begin(), covering.end());
        diags.push_back(std::move(d));
    }

    // W001: uncovered top-level surfaces default to zero Neumann.
    for (const SurfaceInfo& info : spec.surfaces) {
        if (info.parent != spec.domain) continue;
        bool covered = !coverage(chain_of(info.id)).empty();
        if (!covered) {
            for (const SurfaceInfo& other : spec.surfaces) {
                if (other.id == info.id) continue;
                std::vector<std::string> chain = chain_of(other.id);
                if (std::find(chain.begin(), chain.end(), info.id) == chain.end()) continue;
                for (const BcBinding* b : bindings) {
                    if (b->surface == other.id) {
                        covered = true;
                        break;
                    }
                }
                if (covered) break;
            }
        }
        if (!covered) {
            std::string detail =
                spec.kind == PhysicsKind::Structural
                    ? "it is treated as traction-free (zero Neumann)"
                    : "a zero-Neumann default applies";
            diags.push_back(warning("W001",
                                    "surface '" + info.id +
                                        "' carries no boundary condition; " + detail,
                                    {info.id}));
        }
    }

    if (spec.kind == PhysicsKind::Thermal && spec.initial.empty()) {
        diags.push_back(error("E008",
                              "thermal behavior '" + spec.behavior +
                                  "' has no initial temperature",
                              {spec.behavior}));
    }

    if (spec.kind == PhysicsKind::Structural && spec.dirichlet.empty()) {
        diags.push_back(error("E009",
                              "structural behavior '" + spec.behavior +
                                  "' has no Dirichlet constraint; the problem admits "
                                  "rigid-body motion",
                              {spec.behavior}));
    }

    for (const std::string& key : required_material_keys(spec.kind)) {
        if (spec.materials.count(key) == 0) {
            diags.push_back(error("E010",
                                  "material key '" + key + "' required for " +
                                      std::string(physics_kind_name(spec.kind)) +
                                      " analysis of '" + spec.domain + "' is missing",
                                  {spec.domain}));
        }
    }

    sort_diagnostics(diags);
    return diags;
}

CouplingReport detect_coupling(const dsl::ParsedModel& model) {
    const ModelGraph& graph = model.graph;
    const Taxonomy& tax = graph.taxonomy();

    std::vector<std::string> behaviors = graph.instances_of(cls::PhysicalBehavior);
    std::sort(behaviors.begin(), behaviors.end());

    auto closure = axioms::parthood_closure(graph);

    // Property set of each behavior: every dependent continuant borne by its
    // participants or anything that is part of them.
    std::map<std::string, std::set<std::string>> props;
    for (const std::string& behavior : behaviors) {
        std::vector<std::string> participants =
            graph.objects_of(behavior, Relation::HasParticipant);
        if (participants.empty()) {
            for (const std::string& process :
                 graph.objects_of(behavior, Relation::ProcessProfileOf)) {
                for (std::string& p : graph.objects_of(process, Relation::HasParticipant)) {
                    participants.push_back(std::move(p));
                }
            }
        }
        std::set<std::string> bearers;
        for (const std::string& participant : participants) {
            bearers.insert(participant);
            for (std::string& member : expand_participant(graph, participant)) {
                bearers.insert(std::move(member));
            }
        }
        for (const auto& [part, whole] : closure) {
            if (bearers.count(whole) != 0) {
                bearers.insert(part);
            }
        }
        std::set<std::string>& mine = props[behavior];
        for (const Assertion& a : graph.assertions()) {
            if (a.relation != Relation::SDependsOn) continue;
            if (bearers.count(a.object) == 0) continue;
            if (tax.is_subclass_of(graph.instance(a.subject).cls,
                                   cls::SpecificallyDependentContinuant)) {
                mine.insert(a.subject);
            }
        }
    }

    auto related = graph.transitive_closure(Relation::PhysicallyRelatedTo);

    // Union-find over behaviors.
    std::map<std::string, std::string> root;
    for (const std::string& b : behaviors) {
        root[b] = b;
    }
    std::function<std::string(const std::string&)> find = [&](const std::string& x) {
        return root[x] == x ? x : root[x] = find(root[x]);
    };
    for (std::size_t i = 0; i < behaviors.size(); ++i) {
        for (std::size_t j = i + 1; j < behaviors.size(); ++j) {
            bool linked = false;
            for (const std::string& p1 : props[behaviors[i]]) {
                for (const std::string& p2 : props[behaviors[j]]) {
                    if (related.count({p1, p2}) != 0) {
                        linked = true;
                        break;
                    }
                }
                if (linked) break;
            }
            if (linked) {
                root[find(behaviors[i])] = find(behaviors[j]);
            }
        }
    }

    std::map<std::string, std::vector<std::string>> grouped;
    for (const std::string& b : behaviors) {
        grouped[find(b)].push_back(b);
    }
    CouplingReport report;
    std::vector<std::vector<std::string>> groups;
    for (auto& [key, members] : grouped) {
        (void)key;
        std::sort(members.begin(), members.end());
        groups.push_back(std::move(members));
    }
    std::sort(groups.begin(), groups.end());
    report.groups = std::move(groups);
    return report;
}

namespace {

std::string fresh_id(const ModelGraph& graph, const std::set<std::string>& taken,
                     const std::string& base) {
    if (!graph.has_instance(base) && taken.count(base) == 0) {
        return base;
    }
    for (int i = 1;; ++i) {
        std::string candidate = base + "_" + std::to_string(i);
        if (!graph.has_instance(candidate) && taken.count(candidate) == 0) {
            return candidate;
        }
    }
}

} // namespace

ModelGraph instantiate_ices(const ModelGraph& graph, const ProblemSpec& spec,
                            const dsl::SimRequest& request) {
    std::vector<Diagnostic> posedness = well_posedness(spec);
    if (has_errors(posedness)) {
        for (const Diagnostic& d : posedness) {
            if (d.severity == Severity::Error) {
                throw IllPosed("cannot instantiate simulation entities: " + format_diagnostic(d));
            }
        }
    }

    ModelGraph::Builder builder{graph};
    std::set<std::string> taken;
    const std::string prefix =
        spec.behavior + "_" + std::string(dsl::backend_name(request.target));

    auto add = [&](const std::string& base, const char* cls_name) {
        std::string id = fresh_id(graph, taken, base);
        taken.insert(id);
        builder.add_instance(id, cls_name);
        return id;
    };

    std::string domain_ice = add(prefix + "_domain", cls::Domain);
    builder.add_assertion(domain_ice, Relation::IsAbout, spec.domain);

    // The mesh is about the domain's shape; create the shape when the model
    // never asserted one.
    std::string shape;
    {
        std::vector<std::string> shapes;
        for (const std::string& candidate : graph.subjects_of(Relation::SDependsOn, spec.domain)) {
            if (graph.is_instance_of(candidate, cls::Shape)) {
                shapes.push_back(candidate);
            }
        }
        std::sort(shapes.begin(), shapes.end());
        if (!shapes.empty()) {
            shape = shapes.front();
        } else {
            shape = add(spec.domain + "_shape", cls::Shape);
            builder.add_assertion(shape, Relation::SDependsOn, spec.domain);
        }
    }

    std::string mesh_ice = add(prefix + "_mesh", cls::Mesh);
    builder.add_assertion(mesh_ice, Relation::IsAbout, shape);

    int bc_counter = 0;
    auto add_bc = [&](const BcBinding& binding) {
        std::string id = add(prefix + "_bc" + std::to_string(++bc_counter),
                             cls::BoundaryCondition);
        builder.add_assertion(id, Relation::IsAbout, spec.domain);
        builder.add_assertion(id, Relation::IsAbout, binding.surface);
        builder.add_assertion(id, Relation::IsAbout, binding.property);
    };
    for (const BcBinding& binding : spec.dirichlet) add_bc(binding);
    for (const BcBinding& binding : spec.neumann) add_bc(binding);

    int ic_counter = 0;
    for (const FieldBinding& binding : spec.initial) {
        std::string id =
            add(prefix + "_ic" + std::to_string(++ic_counter), cls::InitialCondition);
        builder.add_assertion(id, Relation::IsAbout, spec.domain);
        builder.add_assertion(id, Relation::IsAbout, binding.property);
    }

    if (is_transient(spec.kind)) {
        std::string step = add(prefix + "_timestep", cls::TimeStep);
        builder.add_assertion(step, Relation::IsAbout, spec.temporal_region);
        builder.set_value(step, {static_cast<double>(spec.timestep_count), ""});
    }

    return std::move(builder).build();
}

std::string dump_plan(const ProblemSpec& spec) {
    std::ostringstream out;
    out << "behavior: " << spec.behavior << "\n";
    out << "kind: " << physics_kind_name(spec.kind) << "\n";
    out << "domain: " << spec.domain << "\n";
    out << "mesh: " << spec.mesh.id << "\n";

    auto bc_block = [&](const char* name, const std::vector<BcBinding>& bindings) {
        out << name << ":\n";
        for (const BcBinding& b : bindings) {
            out << "  " << b.surface << " " << b.property << " " << render_quantity(b.value)
                << "\n";
        }
    };
    auto field_block = [&](const char* name, const std::vector<FieldBinding>& bindings) {
        out << name << ":\n";
        for (const FieldBinding& b : bindings) {
            out << "  " << b.property << " " << render_quantity(b.value) << "\n";
        }
    };
    bc_block("dirichlet", spec.dirichlet);
    bc_block("neumann", spec.neumann);
    field_block("volumetric", spec.volumetric);
    field_block("initial", spec.initial);

    out << "materials:\n";
    for (const auto& [key, value] : spec.materials) {
        out << "  " << key << " " << render_quantity(value) << "\n";
    }

    out << "temporal_extent: "
        << (spec.temporal_extent ? render_quantity(*spec.temporal_extent) : std::string("none"))
        << "\n";
    out << "timestep_count: " << spec.timestep_count << "\n";
    return out.str();
}

} // namespace pso::plan
