#include "pso/graph.hpp"

#include <algorithm>

#include "pso/errors.hpp"

namespace pso {

namespace {

struct RelationNames {
    Relation relation;
    std::string_view name;
};

constexpr RelationNames kRelationNames[] = {
    {Relation::OccupiesTemporalRegion, "occupies_temporal_region"},
    {Relation::ProcessProfileOf, "process_profile_of"},
    {Relation::HasParticipant, "has_participant"},
    {Relation::ContinuantPartOf, "continuant_part_of"},
    {Relation::LocatedIn, "located_in"},
    {Relation::SDependsOn, "s_depends_on"},
    {Relation::MadeOf, "made_of"},
    {Relation::PhysicallyRelatedTo, "physically_related_to"},
    {Relation::IsAbout, "is_about"},
};

} // namespace

std::string_view relation_name(Relation relation) {
    for (const auto& entry : kRelationNames) {
        if (entry.relation == relation) {
            return entry.name;
        }
    }
    return "?";
}

std::optional<Relation> relation_from_name(std::string_view name) {
    for (const auto& entry : kRelationNames) {
        if (entry.name == name) {
            return entry.relation;
        }
    }
    return std::nullopt;
}

ModelGraph::Builder::Builder(Taxonomy taxonomy) : graph_(std::move(taxonomy)) {}

ModelGraph::Builder::Builder(const ModelGraph& base) : graph_(base) {}

ModelGraph::Builder& ModelGraph::Builder::add_instance(std::string id, std::string cls,
                                                       std::string label) {
    if (graph_.index_.count(id) != 0) {
        throw DuplicateInstance("instance '" + id + "' is already declared");
    }
    if (!graph_.taxonomy_.contains(cls)) {
        throw UnknownClass("unknown class '" + cls + "' for instance '" + id + "'");
    }
    graph_.index_[id] = graph_.instances_.size();
    graph_.instances_.push_back({std::move(id), std::move(cls), std::move(label)});
    return *this;
}

ModelGraph::Builder& ModelGraph::Builder::add_assertion(std::string subject, Relation relation,
                                                        std::string object) {
    Assertion a{std::move(subject), relation, std::move(object)};
    if (graph_.assertion_set_.insert(a).second) {
        graph_.assertions_.push_back(std::move(a));
    }
    return *this;
}

ModelGraph::Builder& ModelGraph::Builder::set_value(const std::string& id, QuantityValue value) {
    graph_.values_[id] = std::move(value);
    return *this;
}

ModelGraph ModelGraph::Builder::build() && {
    for (const Assertion& a : graph_.assertions_) {
        if (graph_.index_.count(a.subject) == 0) {
            throw UnknownInstance("assertion references unknown instance '" + a.subject + "'");
        }
        if (graph_.index_.count(a.object) == 0) {
            throw UnknownInstance("assertion references unknown instance '" + a.object + "'");
        }
    }
    for (const auto& [id, value] : graph_.values_) {
        (void)value;
        if (graph_.index_.count(id) == 0) {
            throw UnknownInstance("value references unknown instance '" + id + "'");
        }
    }
    return std::move(graph_);
}

bool ModelGraph::has_instance(const std::string& id) const {
    return index_.count(id) != 0;
}

const Instance* ModelGraph::find_instance(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : &instances_[it->second];
}

const Instance& ModelGraph::instance(const std::string& id) const {
    const Instance* inst = find_instance(id);
    if (!inst) {
        throw UnknownInstance("unknown instance '" + id + "'");
    }
    return *inst;
}

bool ModelGraph::is_instance_of(const std::string& id, const std::string& cls) const {
    return taxonomy_.is_subclass_of(instance(id).cls, cls);
}

std::vector<std::string> ModelGraph::instances_of(const std::string& cls) const {
    std::vector<std::string> out;
    for (const Instance& inst : instances_) {
        if (taxonomy_.is_subclass_of(inst.cls, cls)) {
            out.push_back(inst.id);
        }
    }
    return out;
}

std::vector<Assertion> ModelGraph::query(const std::optional<std::string>& subject,
                                         std::optional<Relation> relation,
                                         const std::optional<std::string>& object) const {
    if (subject && index_.count(*subject) == 0) {
        throw UnknownInstance("unknown instance '" + *subject + "' in query");
    }
    if (object && index_.count(*object) == 0) {
        throw UnknownInstance("unknown instance '" + *object + "' in query");
    }
    std::vector<Assertion> out;
    for (const Assertion& a : assertions_) {
        if (subject && a.subject != *subject) continue;
        if (relation && a.relation != *relation) continue;
        if (object && a.object != *object) continue;
        out.push_back(a);
    }
    return out;
}

std::vector<std::string> ModelGraph::objects_of(const std::string& subject,
                                                Relation relation) const {
    std::vector<std::string> out;
    for (const Assertion& a : query(subject, relation, std::nullopt)) {
        out.push_back(a.object);
    }
    return out;
}

std::vector<std::string> ModelGraph::subjects_of(Relation relation,
                                                 const std::string& object) const {
    std::vector<std::string> out;
    for (const Assertion& a : query(std::nullopt, relation, object)) {
        out.push_back(a.subject);
    }
    return out;
}

const QuantityValue* ModelGraph::value_of(const std::string& id) const {
    auto it = values_.find(id);
    return it == values_.end() ? nullptr : &it->second;
}

std::set<std::pair<std::string, std::string>> ModelGraph::transitive_closure(
    Relation relation) const {
    if (relation != Relation::ContinuantPartOf && relation != Relation::PhysicallyRelatedTo) {
        throw UnsupportedRelation("transitive_closure is only defined for continuant_part_of "
                                  "and physically_related_to");
    }
    const bool symmetric = relation == Relation::PhysicallyRelatedTo;

    std::map<std::string, std::set<std::string>> succ;
    for (const Assertion& a : assertions_) {
        if (a.relation != relation) continue;
        succ[a.subject].insert(a.object);
        if (symmetric) {
            succ[a.object].insert(a.subject);
        }
    }

    std::set<std::pair<std::string, std::string>> out;
    for (const auto& [start, direct] : succ) {
        // Reachability by at least one edge: seed the worklist with the
        // direct successors, not with the start node.
        std::vector<std::string> work(direct.begin(), direct.end());
        std::set<std::string> seen(direct.begin(), direct.end());
        while (!work.empty()) {
            std::string cur = std::move(work.back());
            work.pop_back();
            out.emplace(start, cur);
            auto it = succ.find(cur);
            if (it == succ.end()) continue;
            for (const std::string& next : it->second) {
                if (seen.insert(next).second) {
                    work.push_back(next);
                }
            }
        }
    }
    return out;
}

} // namespace pso
