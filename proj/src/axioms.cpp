#include "pso/axioms.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "pso/errors.hpp"

namespace pso::axioms {

namespace {

struct BaseRule {
    Relation relation;
    const char* subject_cls;
    const char* object_cls;
};

constexpr BaseRule kBaseRules[] = {
    {Relation::OccupiesTemporalRegion, cls::Occurrent, cls::TemporalRegion},
    {Relation::ProcessProfileOf, cls::PhysicalBehavior, cls::Process},
    {Relation::HasParticipant, cls::Process, cls::IndependentContinuant},
    {Relation::ContinuantPartOf, cls::Continuant, cls::Continuant},
    {Relation::LocatedIn, cls::IndependentContinuant, cls::IndependentContinuant},
    {Relation::SDependsOn, cls::SpecificallyDependentContinuant, cls::IndependentContinuant},
    {Relation::MadeOf, cls::MaterialEntity, cls::MaterialSubstance},
    {Relation::PhysicallyRelatedTo, cls::SpecificallyDependentContinuant,
     cls::SpecificallyDependentContinuant},
    {Relation::IsAbout, cls::InformationContentEntity, cls::Entity},
};

// Bearer refinements for s_depends_on, checked most-specific first.
struct DependsRefinement {
    const char* subject_cls;
    const char* object_cls;
};

constexpr DependsRefinement kDependsRefinements[] = {
    {cls::MaterialProperty, cls::MaterialSubstance},
    {cls::PhysicalProperty, cls::MaterialEntity},
    {cls::StateOfMatter, cls::MaterialEntity},
    {cls::Shape, cls::IndependentContinuant},
    {cls::Energy, cls::MaterialEntity},
    {cls::Field, cls::MaterialEntity},
    {cls::RealizableMotion, cls::MaterialEntity},
};

const BaseRule& rule_for(Relation relation) {
    for (const BaseRule& r : kBaseRules) {
        if (r.relation == relation) {
            return r;
        }
    }
    return kBaseRules[0]; // unreachable: every relation is listed
}

Diagnostic signature_violation(const ModelGraph& graph, const Assertion& a, std::string detail) {
    Diagnostic d;
    d.severity = Severity::Error;
    d.code = "E001";
    d.message = std::string(relation_name(a.relation)) + ": " + std::move(detail);
    d.subjects = {a.subject, a.object};
    (void)graph;
    return d;
}

} // namespace

std::vector<Diagnostic> check_signatures(const ModelGraph& graph) {
    std::vector<Diagnostic> out;
    const Taxonomy& tax = graph.taxonomy();

    for (const Assertion& a : graph.assertions()) {
        const BaseRule& rule = rule_for(a.relation);
        const std::string& scls = graph.instance(a.subject).cls;
        const std::string& ocls = graph.instance(a.object).cls;

        if (!tax.is_subclass_of(scls, rule.subject_cls)) {
            out.push_back(signature_violation(
                graph, a,
                "subject '" + a.subject + "' (" + scls + ") must be a " + rule.subject_cls));
            continue;
        }
        if (a.relation == Relation::MadeOf &&
            tax.is_subclass_of(scls, cls::MaterialSubstance)) {
            out.push_back(signature_violation(
                graph, a,
                "subject '" + a.subject + "' (" + scls +
                    ") must be a material entity that is not itself a material substance"));
            continue;
        }
        if (!tax.is_subclass_of(ocls, rule.object_cls)) {
            out.push_back(signature_violation(
                graph, a, "object '" + a.object + "' (" + ocls + ") must be a " + rule.object_cls));
            continue;
        }
        if (a.relation == Relation::IsAbout &&
            tax.is_subclass_of(ocls, cls::InformationContentEntity)) {
            out.push_back(signature_violation(
                graph, a,
                "object '" + a.object + "' (" + ocls +
                    ") must not be an information content entity"));
            continue;
        }
        if (a.relation == Relation::SDependsOn) {
            for (const DependsRefinement& ref : kDependsRefinements) {
                if (!tax.is_subclass_of(scls, ref.subject_cls)) {
                    continue;
                }
                if (!tax.is_subclass_of(ocls, ref.object_cls)) {
                    out.push_back(signature_violation(
                        graph, a,
                        "a " + std::string(ref.subject_cls) + " must depend on a " +
                            ref.object_cls + "; '" + a.subject + "' depends on '" + a.object +
                            "' (" + ocls + ")"));
                }
                break;
            }
        }
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> parthood_edges(const ModelGraph& graph) {
    std::vector<std::pair<std::string, std::string>> edges;
    for (const Assertion& a : graph.assertions()) {
        if (a.relation == Relation::ContinuantPartOf) {
            edges.emplace_back(a.subject, a.object);
        } else if (a.relation == Relation::MadeOf) {
            edges.emplace_back(a.object, a.subject);
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

std::set<std::pair<std::string, std::string>> parthood_closure(const ModelGraph& graph) {
    std::map<std::string, std::set<std::string>> succ;
    for (const auto& [from, to] : parthood_edges(graph)) {
        succ[from].insert(to);
    }
    std::set<std::pair<std::string, std::string>> out;
    for (const auto& [start, direct] : succ) {
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

namespace {

// Strongly connected components over the parthood edge set; components with a
// cycle become E002 diagnostics.
std::vector<std::vector<std::string>> parthood_cycles(const ModelGraph& graph) {
    auto edges = parthood_edges(graph);
    std::map<std::string, std::vector<std::string>> succ;
    std::set<std::pair<std::string, std::string>> edge_set;
    for (const auto& [from, to] : edges) {
        succ[from].push_back(to);
        edge_set.insert({from, to});
    }

    // Iterative Tarjan.
    std::map<std::string, int> index, lowlink;
    std::map<std::string, bool> on_stack;
    std::vector<std::string> stack;
    std::vector<std::vector<std::string>> components;
    int counter = 0;

    struct Frame {
        std::string node;
        std::size_t next_child = 0;
    };

    for (const auto& [root, children] : succ) {
        (void)children;
        if (index.count(root) != 0) continue;
        std::vector<Frame> frames{{root}};
        index[root] = lowlink[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;

        while (!frames.empty()) {
            Frame& f = frames.back();
            auto it = succ.find(f.node);
            bool descended = false;
            while (it != succ.end() && f.next_child < it->second.size()) {
                const std::string& child = it->second[f.next_child++];
                if (index.count(child) == 0) {
                    index[child] = lowlink[child] = counter++;
                    stack.push_back(child);
                    on_stack[child] = true;
                    frames.push_back({child});
                    descended = true;
                    break;
                }
                if (on_stack[child]) {
                    lowlink[f.node] = std::min(lowlink[f.node], index[child]);
                }
            }
            if (descended) continue;

            if (lowlink[f.node] == index[f.node]) {
                std::vector<std::string> component;
                while (true) {
                    std::string top = stack.back();
                    stack.pop_back();
                    on_stack[top] = false;
                    component.push_back(top);
                    if (top == f.node) break;
                }
                bool cyclic = component.size() > 1 ||
                              edge_set.count({component.front(), component.front()}) != 0;
                if (cyclic) {
                    std::sort(component.begin(), component.end());
                    components.push_back(std::move(component));
                }
            }
            std::string done = f.node;
            frames.pop_back();
            if (!frames.empty()) {
                lowlink[frames.back().node] =
                    std::min(lowlink[frames.back().node], lowlink[done]);
            }
        }
    }
    std::sort(components.begin(), components.end());
    return components;
}

} // namespace

std::vector<Diagnostic> check_structure(const ModelGraph& graph, const CheckOptions& options) {
    std::vector<Diagnostic> out;
    const Taxonomy& tax = graph.taxonomy();

    for (const auto& component : parthood_cycles(graph)) {
        Diagnostic d;
        d.severity = Severity::Error;
        d.code = "E002";
        std::string members;
        for (std::size_t i = 0; i < component.size(); ++i) {
            if (i) members += ", ";
            members += "'" + component[i] + "'";
        }
        d.message = "continuant_part_of forms a cycle among " + members;
        d.subjects = component;
        out.push_back(std::move(d));
    }

    auto closure = parthood_closure(graph);
    auto owning_objects = [&](const std::string& id) {
        std::set<std::string> objects;
        for (const auto& [part, whole] : closure) {
            if (part != id) continue;
            if (tax.is_subclass_of(graph.instance(whole).cls, cls::Object)) {
                objects.insert(whole);
            }
        }
        return objects;
    };

    for (const std::string& contact : graph.instances_of(cls::Contact)) {
        std::set<std::string> surfaces;
        for (const std::string& target : graph.objects_of(contact, Relation::SDependsOn)) {
            if (graph.is_instance_of(target, cls::FiatObjectSurface)) {
                surfaces.insert(target);
            }
        }
        if (surfaces.size() != 2) {
            Diagnostic d;
            d.severity = Severity::Error;
            d.code = "E003";
            d.message = "contact '" + contact +
                        "' must s-depend on exactly two distinct fiat object surfaces; found " +
                        std::to_string(surfaces.size());
            d.subjects = {contact};
            out.push_back(std::move(d));
            continue;
        }
        auto it = surfaces.begin();
        const std::string& s1 = *it++;
        const std::string& s2 = *it;
        std::set<std::string> o1 = owning_objects(s1);
        std::set<std::string> o2 = owning_objects(s2);
        std::vector<std::string> shared;
        std::set_intersection(o1.begin(), o1.end(), o2.begin(), o2.end(),
                              std::back_inserter(shared));
        if (!shared.empty()) {
            Diagnostic d;
            d.severity = Severity::Error;
            d.code = "E004";
            d.message = "contact '" + contact + "' relates surfaces '" + s1 + "' and '" + s2 +
                        "' of the same object '" + shared.front() + "'";
            d.subjects = {contact, shared.front()};
            out.push_back(std::move(d));
        }
    }

    if (options.entailment_notes) {
        for (const Assertion& a : graph.assertions()) {
            if (a.relation != Relation::MadeOf) continue;
            Diagnostic d;
            d.severity = Severity::Warning;
            d.code = "W003";
            d.message = "made_of implies that '" + a.object + "' is a continuant part of '" +
                        a.subject + "'; the parthood is materialized for closure queries";
            d.subjects = {a.subject, a.object};
            out.push_back(std::move(d));
        }
    }

    return out;
}

std::vector<Diagnostic> check_all(const ModelGraph& graph, const CheckOptions& options) {
    std::vector<Diagnostic> out = check_signatures(graph);
    std::vector<Diagnostic> structure = check_structure(graph, options);
    out.insert(out.end(), std::make_move_iterator(structure.begin()),
               std::make_move_iterator(structure.end()));
    sort_diagnostics(out);
    return out;
}

} // namespace pso::axioms
