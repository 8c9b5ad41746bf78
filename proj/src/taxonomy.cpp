#include "pso/taxonomy.hpp"

#include "pso/errors.hpp"

namespace pso {

namespace {

struct Edge {
    const char* child;
    const char* parent;
};

constexpr Edge kBuiltinTree[] = {
    {cls::Occurrent, cls::Entity},
    {cls::Process, cls::Occurrent},
    {cls::PhysicalBehavior, cls::Process},
    {cls::StructuralBehavior, cls::PhysicalBehavior},
    {cls::ThermalBehavior, cls::PhysicalBehavior},
    {cls::FluidBehavior, cls::PhysicalBehavior},
    {cls::ProcessBoundary, cls::Occurrent},
    {cls::TemporalRegion, cls::Occurrent},
    {cls::ZeroDTemporalRegion, cls::TemporalRegion},
    {cls::OneDTemporalRegion, cls::TemporalRegion},

    {cls::Continuant, cls::Entity},
    {cls::IndependentContinuant, cls::Continuant},
    {cls::MaterialEntity, cls::IndependentContinuant},
    {cls::Object, cls::MaterialEntity},
    {cls::ObjectAggregate, cls::MaterialEntity},
    {cls::FiatObjectPart, cls::MaterialEntity},
    {cls::FiatObjectSurface, cls::FiatObjectPart},
    {cls::MaterialSubstance, cls::MaterialEntity},
    {cls::ImmaterialEntity, cls::IndependentContinuant},
    {cls::Site, cls::ImmaterialEntity},

    {cls::SpecificallyDependentContinuant, cls::Continuant},
    {cls::Quality, cls::SpecificallyDependentContinuant},
    {cls::Shape, cls::Quality},
    {cls::StateOfMatter, cls::Quality},
    {cls::PhysicalProperty, cls::Quality},
    {cls::Displacement, cls::PhysicalProperty},
    {cls::BodyForce, cls::PhysicalProperty},
    {cls::DistributedForce, cls::PhysicalProperty},
    {cls::Pressure, cls::PhysicalProperty},
    {cls::Velocity, cls::PhysicalProperty},
    {cls::Temperature, cls::PhysicalProperty},
    {cls::TemperatureFlux, cls::PhysicalProperty},
    {cls::MaterialProperty, cls::Quality},
    {cls::Density, cls::MaterialProperty},
    {cls::ElasticModulus, cls::MaterialProperty},
    {cls::ShearModulus, cls::MaterialProperty},
    {cls::SpecificHeatCapacity, cls::MaterialProperty},
    {cls::ThermalConductivity, cls::MaterialProperty},
    {cls::Viscosity, cls::MaterialProperty},
    {cls::RelationalQuality, cls::SpecificallyDependentContinuant},
    {cls::Contact, cls::RelationalQuality},
    {cls::RealizableEntity, cls::SpecificallyDependentContinuant},
    {cls::Disposition, cls::RealizableEntity},
    {cls::Energy, cls::Disposition},
    {cls::Field, cls::Disposition},
    {cls::RealizableMotion, cls::Disposition},

    {cls::GenericallyDependentContinuant, cls::Continuant},
    {cls::InformationContentEntity, cls::GenericallyDependentContinuant},
    {cls::Domain, cls::InformationContentEntity},
    {cls::GeometricModel, cls::InformationContentEntity},
    {cls::Mesh, cls::GeometricModel},
    {cls::BoundaryCondition, cls::InformationContentEntity},
    {cls::InitialCondition, cls::InformationContentEntity},
    {cls::TimeStep, cls::InformationContentEntity},
};

} // namespace

Taxonomy Taxonomy::defaults() {
    Taxonomy t;
    t.parent_[cls::Entity] = "";
    for (const Edge& e : kBuiltinTree) {
        t.parent_[e.child] = e.parent;
    }
    return t;
}

bool Taxonomy::contains(const std::string& name) const {
    return parent_.count(name) != 0;
}

bool Taxonomy::is_builtin(const std::string& name) const {
    return contains(name) && user_.count(name) == 0;
}

const std::string& Taxonomy::parent_of(const std::string& name) const {
    auto it = parent_.find(name);
    if (it == parent_.end()) {
        throw UnknownClass("unknown class '" + name + "'");
    }
    return it->second;
}

bool Taxonomy::is_subclass_of(const std::string& name, const std::string& ancestor) const {
    if (!contains(ancestor)) {
        throw UnknownClass("unknown class '" + ancestor + "'");
    }
    const std::string* cur = &name;
    while (true) {
        auto it = parent_.find(*cur);
        if (it == parent_.end()) {
            throw UnknownClass("unknown class '" + *cur + "'");
        }
        if (it->first == ancestor) {
            return true;
        }
        if (it->second.empty()) {
            return false;
        }
        cur = &it->second;
    }
}

Taxonomy Taxonomy::add_class(const std::string& name, const std::string& parent) const {
    if (contains(name)) {
        throw DuplicateClass("class '" + name + "' is already defined");
    }
    if (!contains(parent)) {
        throw UnknownParent("unknown parent class '" + parent + "'");
    }
    Taxonomy out = *this;
    out.parent_[name] = parent;
    out.user_.insert(name);
    return out;
}

std::vector<std::string> Taxonomy::user_classes() const {
    return {user_.begin(), user_.end()};
}

std::vector<std::string> Taxonomy::all_classes() const {
    std::vector<std::string> out;
    out.reserve(parent_.size());
    for (const auto& [name, parent] : parent_) {
        (void)parent;
        out.push_back(name);
    }
    return out;
}

} // namespace pso
