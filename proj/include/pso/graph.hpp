#pragma once

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pso/taxonomy.hpp"

namespace pso {

enum class Relation {
    OccupiesTemporalRegion,
    ProcessProfileOf,
    HasParticipant,
    ContinuantPartOf,
    LocatedIn,
    SDependsOn,
    MadeOf,
    PhysicallyRelatedTo,
    IsAbout,
};

inline constexpr std::array<Relation, 9> kAllRelations = {
    Relation::OccupiesTemporalRegion, Relation::ProcessProfileOf,
    Relation::HasParticipant,         Relation::ContinuantPartOf,
    Relation::LocatedIn,              Relation::SDependsOn,
    Relation::MadeOf,                 Relation::PhysicallyRelatedTo,
    Relation::IsAbout,
};

std::string_view relation_name(Relation relation);
std::optional<Relation> relation_from_name(std::string_view name);

struct Instance {
    std::string id;
    std::string cls;
    std::string label;

    bool operator==(const Instance&) const = default;
};

struct Assertion {
    std::string subject;
    Relation relation = Relation::ContinuantPartOf;
    std::string object;

    auto operator<=>(const Assertion&) const = default;
};

struct QuantityValue {
    double magnitude = 0.0;
    std::string unit;

    bool operator==(const QuantityValue&) const = default;
};

// Immutable instance graph over a Taxonomy. Construction goes through the
// Builder, which checks referential integrity; afterwards the graph only
// answers queries. Iteration orders are deterministic (declaration order for
// instances/assertions, sorted for closures).
class ModelGraph {
public:
    class Builder;

    const Taxonomy& taxonomy() const { return taxonomy_; }

    const std::vector<Instance>& instances() const { return instances_; }
    bool has_instance(const std::string& id) const;
    const Instance* find_instance(const std::string& id) const;
    const Instance& instance(const std::string& id) const; // throws UnknownInstance

    // Subclass-aware class membership test for an existing instance.
    bool is_instance_of(const std::string& id, const std::string& cls) const;
    // Ids of all instances whose class is `cls` or a subclass, declaration order.
    std::vector<std::string> instances_of(const std::string& cls) const;

    const std::vector<Assertion>& assertions() const { return assertions_; }

    // Pattern query; nullopt fields match anything. Ids given in a pattern
    // must resolve (UnknownInstance otherwise). Result order follows the
    // declaration order of the matching assertions.
    std::vector<Assertion> query(const std::optional<std::string>& subject,
                                 std::optional<Relation> relation,
                                 const std::optional<std::string>& object) const;

    // Convenience projections of query().
    std::vector<std::string> objects_of(const std::string& subject, Relation relation) const;
    std::vector<std::string> subjects_of(Relation relation, const std::string& object) const;

    const QuantityValue* value_of(const std::string& id) const;
    const std::map<std::string, QuantityValue>& values() const { return values_; }

    // continuant_part_of: ordinary transitive closure of the asserted edges.
    // physically_related_to: symmetric-transitive closure.
    // Any other relation: UnsupportedRelation.
    std::set<std::pair<std::string, std::string>> transitive_closure(Relation relation) const;

private:
    friend class Builder;
    explicit ModelGraph(Taxonomy taxonomy) : taxonomy_(std::move(taxonomy)) {}

    Taxonomy taxonomy_;
    std::vector<Instance> instances_;
    std::map<std::string, std::size_t> index_;
    std::vector<Assertion> assertions_;
    std::set<Assertion> assertion_set_;
    std::map<std::string, QuantityValue> values_;
};

class ModelGraph::Builder {
public:
    explicit Builder(Taxonomy taxonomy);
    explicit Builder(const ModelGraph& base);

    // Throws DuplicateInstance / UnknownClass.
    Builder& add_instance(std::string id, std::string cls, std::string label = {});
    // Duplicate triples collapse silently.
    Builder& add_assertion(std::string subject, Relation relation, std::string object);
    Builder& set_value(const std::string& id, QuantityValue value);
    // Throws UnknownInstance if an assertion or value references a missing id.
    ModelGraph build() &&;

private:
    ModelGraph graph_;
};

} // namespace pso
