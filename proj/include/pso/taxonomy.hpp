#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace pso {

// Built-in upper-ontology class names. Kept as constants so the rest of the
// code never spells them ad hoc.
namespace cls {
inline constexpr const char* Entity = "Entity";

inline constexpr const char* Occurrent = "Occurrent";
inline constexpr const char* Process = "Process";
inline constexpr const char* PhysicalBehavior = "PhysicalBehavior";
inline constexpr const char* StructuralBehavior = "StructuralBehavior";
inline constexpr const char* ThermalBehavior = "ThermalBehavior";
inline constexpr const char* FluidBehavior = "FluidBehavior";
inline constexpr const char* ProcessBoundary = "ProcessBoundary";
inline constexpr const char* TemporalRegion = "TemporalRegion";
inline constexpr const char* ZeroDTemporalRegion = "ZeroDTemporalRegion";
inline constexpr const char* OneDTemporalRegion = "OneDTemporalRegion";

inline constexpr const char* Continuant = "Continuant";
inline constexpr const char* IndependentContinuant = "IndependentContinuant";
inline constexpr const char* MaterialEntity = "MaterialEntity";
inline constexpr const char* Object = "Object";
inline constexpr const char* ObjectAggregate = "ObjectAggregate";
inline constexpr const char* FiatObjectPart = "FiatObjectPart";
inline constexpr const char* FiatObjectSurface = "FiatObjectSurface";
inline constexpr const char* MaterialSubstance = "MaterialSubstance";
inline constexpr const char* ImmaterialEntity = "ImmaterialEntity";
inline constexpr const char* Site = "Site";

inline constexpr const char* SpecificallyDependentContinuant = "SpecificallyDependentContinuant";
inline constexpr const char* Quality = "Quality";
inline constexpr const char* Shape = "Shape";
inline constexpr const char* StateOfMatter = "StateOfMatter";
inline constexpr const char* PhysicalProperty = "PhysicalProperty";
inline constexpr const char* Displacement = "Displacement";
inline constexpr const char* BodyForce = "BodyForce";
inline constexpr const char* DistributedForce = "DistributedForce";
inline constexpr const char* Pressure = "Pressure";
inline constexpr const char* Velocity = "Velocity";
inline constexpr const char* Temperature = "Temperature";
inline constexpr const char* TemperatureFlux = "TemperatureFlux";
inline constexpr const char* MaterialProperty = "MaterialProperty";
inline constexpr const char* Density = "Density";
inline constexpr const char* ElasticModulus = "ElasticModulus";
inline constexpr const char* ShearModulus = "ShearModulus";
inline constexpr const char* SpecificHeatCapacity = "SpecificHeatCapacity";
inline constexpr const char* ThermalConductivity = "ThermalConductivity";
inline constexpr const char* Viscosity = "Viscosity";
inline constexpr const char* RelationalQuality = "RelationalQuality";
inline constexpr const char* Contact = "Contact";
inline constexpr const char* RealizableEntity = "RealizableEntity";
inline constexpr const char* Disposition = "Disposition";
inline constexpr const char* Energy = "Energy";
inline constexpr const char* Field = "Field";
inline constexpr const char* RealizableMotion = "RealizableMotion";

inline constexpr const char* GenericallyDependentContinuant = "GenericallyDependentContinuant";
inline constexpr const char* InformationContentEntity = "InformationContentEntity";
inline constexpr const char* Domain = "Domain";
inline constexpr const char* GeometricModel = "GeometricModel";
inline constexpr const char* Mesh = "Mesh";
inline constexpr const char* BoundaryCondition = "BoundaryCondition";
inline constexpr const char* InitialCondition = "InitialCondition";
inline constexpr const char* TimeStep = "TimeStep";
} // namespace cls

// Single-inheritance class tree rooted at Entity. Immutable: add_class
// returns an extended copy and never touches the receiver.
class Taxonomy {
public:
    static Taxonomy defaults();

    bool contains(const std::string& name) const;
    bool is_builtin(const std::string& name) const;

    // Parent class name; empty string for the root. Throws UnknownClass.
    const std::string& parent_of(const std::string& name) const;

    // Reflexive subclass test. Throws UnknownClass on either argument.
    bool is_subclass_of(const std::string& name, const std::string& ancestor) const;

    // Throws DuplicateClass if name exists, UnknownParent if parent does not.
    Taxonomy add_class(const std::string& name, const std::string& parent) const;

    std::vector<std::string> user_classes() const; // sorted
    std::vector<std::string> all_classes() const;  // sorted

    bool operator==(const Taxonomy&) const = default;

private:
    Taxonomy() = default;

    std::map<std::string, std::string> parent_; // class -> parent, root -> ""
    std::set<std::string> user_;                // classes added on top of the built-ins
};

} // namespace pso
