#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pso/diagnostics.hpp"
#include "pso/dsl.hpp"
#include "pso/graph.hpp"

namespace pso::plan {

enum class PhysicsKind { Structural, Thermal, Fluid };

std::string_view physics_kind_name(PhysicsKind kind); // "structural" / ...

// Resolves the physics kind from a behavior instance's class. Empty when the
// class refines none of the three built-in behavior kinds.
std::optional<PhysicsKind> kind_of_behavior(const ModelGraph& graph, const std::string& behavior);

bool is_transient(PhysicsKind kind);

enum class PropertyRole { Dirichlet, Neumann, Volumetric, Initial, Unsupported };

std::string_view property_role_name(PropertyRole role);

enum class BearerKind { Object, Surface };

// Total classification table: any (kind, property class, bearer) combination
// yields a role, Unsupported when the pairing has no reading for that physics.
// `property_cls` must name a class in `taxonomy`.
PropertyRole classify_property(const Taxonomy& taxonomy, PhysicsKind kind,
                               const std::string& property_cls, BearerKind bearer);

struct BcBinding {
    std::string surface;  // FiatObjectSurface id
    std::string property; // property instance id
    QuantityValue value;

    bool operator==(const BcBinding&) const = default;
};

struct FieldBinding {
    std::string property;
    QuantityValue value;

    bool operator==(const FieldBinding&) const = default;
};

struct SurfaceInfo {
    std::string id;
    std::string parent; // enclosing surface id, or the domain id when top-level

    bool operator==(const SurfaceInfo&) const = default;
};

// Solver-neutral statement of one behavior's boundary-value problem.
struct ProblemSpec {
    std::string behavior;
    PhysicsKind kind = PhysicsKind::Structural;
    std::string domain; // Object id

    std::vector<BcBinding> dirichlet; // sorted by (surface, property)
    std::vector<BcBinding> neumann;   // sorted by (surface, property)
    std::vector<FieldBinding> volumetric; // sorted by property
    std::vector<FieldBinding> initial;    // sorted by property

    // built-in MaterialProperty subclass name -> value
    std::map<std::string, QuantityValue> materials;

    std::optional<QuantityValue> temporal_extent;
    std::string temporal_region; // instance id when present
    int timestep_count = 50;

    dsl::MeshDirective mesh;

    // All surfaces of the domain, for boundary coverage reasoning.
    std::vector<SurfaceInfo> surfaces;
};

struct PlanResult {
    std::optional<ProblemSpec> spec; // absent when diagnostics carry errors
    std::vector<Diagnostic> diagnostics;
};

// Builds the ProblemSpec for one simulate request. Emits E005/E006 errors and
// the W002 inherited-domain warning. Expects a graph that already passed
// check_all without errors.
PlanResult derive_problem(const dsl::ParsedModel& model, const dsl::SimRequest& request);

// PDE-level checks on a derived spec: W001 uncovered boundary defaults,
// E007 overlapping boundary conditions, E008 missing initial temperature,
// E009 unconstrained structural problem, E010 missing material keys.
std::vector<Diagnostic> well_posedness(const ProblemSpec& spec);

// Behaviors partitioned by physically_related_to between their properties.
// Uncoupled behaviors form singleton groups. Groups and members are sorted.
struct CouplingReport {
    std::vector<std::vector<std::string>> groups;
};

CouplingReport detect_coupling(const dsl::ParsedModel& model);

// Extends the graph with the PSO-Sim individuals describing this request:
// Domain, Mesh (plus a Shape when the domain has none), BoundaryConditions,
// InitialConditions and, for transient kinds, a TimeStep. Never touches
// existing instances. Throws IllPosed when well_posedness reports errors.
ModelGraph instantiate_ices(const ModelGraph& graph, const ProblemSpec& spec,
                            const dsl::SimRequest& request);

// Stable textual rendering used by `psoc dump-plan`.
std::string dump_plan(const ProblemSpec& spec);

std::vector<std::string> required_material_keys(PhysicsKind kind);

} // namespace pso::plan
