#include <algorithm>
#include <cctype>
#include <list>
#include <set>
#include <string>
#include <vector>

#include "pso/decimal.hpp"
#include "pso/dsl.hpp"
#include "pso/errors.hpp"

namespace pso::dsl {

namespace {

struct Tok {
    std::string text;
    int line = 1;
    int column = 1;
    bool quoted = false;

    SourceSpan span() const { return {line, column}; }
};

struct TokLine {
    int number = 1;
    std::vector<Tok> toks;
};

struct RawClass {
    Tok name, parent;
};

struct RawInstance {
    Tok id, cls;
    std::string label;
};

struct RawRel {
    Tok subject, object;
    Relation relation = Relation::ContinuantPartOf;
};

struct RawValue {
    Tok id;
    double magnitude = 0.0;
    std::string unit;
};

struct RawMesh {
    Tok id, target;
    std::array<double, 3> extent{};
    std::array<int, 3> divisions{};
};

struct RawTag {
    Tok mesh, face, surface;
};

struct RawSim {
    Tok behavior;
    Backend target = Backend::Fenics;
    int steps = 50;
};

class LineParser {
public:
    LineParser(const TokLine& line, std::vector<ParseError>& errors)
        : line_(line), errors_(errors) {}

    bool done() const { return pos_ >= line_.toks.size(); }

    const Tok* next(const std::string& what) {
        if (done()) {
            fail(end_column(), "expected " + what);
            return nullptr;
        }
        return &line_.toks[pos_++];
    }

    const Tok* name(const std::string& what) {
        const Tok* tok = next(what);
        if (!tok) return nullptr;
        if (tok->quoted) {
            fail(tok->column, "expected " + what);
            return nullptr;
        }
        return tok;
    }

    bool keyword(const std::string& word) {
        const Tok* tok = next("'" + word + "'");
        if (!tok) return false;
        if (tok->quoted || tok->text != word) {
            fail(tok->column, "expected '" + word + "'");
            return false;
        }
        return true;
    }

    std::optional<double> number(const std::string& what) {
        const Tok* tok = name(what);
        if (!tok) return std::nullopt;
        auto value = parse_decimal(tok->text);
        if (!value) {
            fail(tok->column, "malformed number '" + tok->text + "'");
            return std::nullopt;
        }
        return value;
    }

    std::optional<double> positive_number(const std::string& what) {
        int column = done() ? end_column() : line_.toks[pos_].column;
        auto value = number(what);
        if (!value) return std::nullopt;
        if (*value <= 0.0) {
            fail(column, "expected positive number");
            return std::nullopt;
        }
        return value;
    }

    std::optional<int> positive_int(const std::string& what) {
        const Tok* tok = name(what);
        if (!tok) return std::nullopt;
        const std::string& s = tok->text;
        bool digits = !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
            return std::isdigit(c) != 0;
        });
        long v = 0;
        if (digits) {
            for (char c : s) {
                v = v * 10 + (c - '0');
                if (v > 1000000) break;
            }
        }
        if (!digits || v < 1 || v > 1000000) {
            fail(tok->column, "expected positive integer");
            return std::nullopt;
        }
        return static_cast<int>(v);
    }

    bool finish() {
        if (!done()) {
            fail(line_.toks[pos_].column, "unexpected token '" + line_.toks[pos_].text + "'");
            return false;
        }
        return true;
    }

    void fail(int column, std::string message) {
        errors_.push_back({{line_.number, column}, std::move(message)});
    }

    int end_column() const {
        if (line_.toks.empty()) return 1;
        const Tok& last = line_.toks.back();
        return last.column + static_cast<int>(last.text.size()) + (last.quoted ? 2 : 0);
    }

private:
    const TokLine& line_;
    std::vector<ParseError>& errors_;
    std::size_t pos_ = 0;
};

// Tokenizes one physical line. Comments start at an unquoted '#'.
bool tokenize(const std::string& text, int line_no, TokLine& out,
              std::vector<ParseError>& errors) {
    out.number = line_no;
    out.toks.clear();
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == ' ' || c == '\t') {
            ++i;
            continue;
        }
        if (c == '#') {
            break;
        }
        int column = static_cast<int>(i) + 1;
        if (c == '"') {
            std::size_t close = text.find('"', i + 1);
            if (close == std::string::npos) {
                errors.push_back({{line_no, column}, "unterminated label"});
                return false;
            }
            out.toks.push_back({text.substr(i + 1, close - i - 1), line_no, column, true});
            i = close + 1;
            continue;
        }
        std::size_t start = i;
        while (i < text.size() && text[i] != ' ' && text[i] != '\t' && text[i] != '#' &&
               text[i] != '"') {
            ++i;
        }
        out.toks.push_back({text.substr(start, i - start), line_no, column, false});
    }
    return true;
}

} // namespace

std::string format_parse_error(const ParseError& error) {
    return "parse error at " + std::to_string(error.span.line) + ":" +
           std::to_string(error.span.column) + ": " + error.message;
}

std::string_view backend_name(Backend backend) {
    return backend == Backend::Fenics ? "fenics" : "nastran";
}

std::optional<Backend> backend_from_name(std::string_view name) {
    if (name == "fenics") return Backend::Fenics;
    if (name == "nastran") return Backend::Nastran;
    return std::nullopt;
}

bool is_face_name(std::string_view name) {
    return std::find(kFaceNames.begin(), kFaceNames.end(), name) != kFaceNames.end();
}

const MeshDirective* ParsedModel::mesh_for_target(const std::string& object_id) const {
    for (const MeshDirective& mesh : meshes) {
        if (mesh.target == object_id) {
            return &mesh;
        }
    }
    return nullptr;
}

const MeshDirective* ParsedModel::mesh_by_id(const std::string& id) const {
    for (const MeshDirective& mesh : meshes) {
        if (mesh.id == id) {
            return &mesh;
        }
    }
    return nullptr;
}

ParseResult parse(std::string_view text) {
    std::vector<ParseError> errors;

    std::vector<RawClass> classes;
    std::vector<RawInstance> instances;
    std::vector<RawRel> rels;
    std::vector<RawValue> values;
    std::vector<RawMesh> meshes;
    std::vector<RawTag> tags;
    std::vector<RawSim> sims;

    // Pass 1: per-line syntax.
    int line_no = 0;
    std::size_t offset = 0;
    while (offset <= text.size()) {
        std::size_t eol = text.find('\n', offset);
        std::string line(text.substr(
            offset, eol == std::string_view::npos ? text.size() - offset : eol - offset));
        offset = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }

        TokLine toks;
        if (!tokenize(line, line_no, toks, errors) || toks.toks.empty()) {
            continue;
        }

        LineParser p(toks, errors);
        const Tok* head = p.name("statement");
        if (!head) continue;
        const std::string& kw = head->text;

        if (kw == "class") {
            const Tok* name = p.name("class name");
            if (!name || !p.keyword("<")) continue;
            const Tok* parent = p.name("parent class name");
            if (!parent || !p.finish()) continue;
            classes.push_back({*name, *parent});
        } else if (kw == "instance") {
            const Tok* id = p.name("instance id");
            if (!id || !p.keyword(":")) continue;
            const Tok* cls = p.name("class name");
            if (!cls) continue;
            std::string label;
            if (!p.done()) {
                const Tok* lab = p.next("label");
                if (!lab) continue;
                if (!lab->quoted) {
                    p.fail(lab->column, "expected quoted label");
                    continue;
                }
                label = lab->text;
            }
            if (!p.finish()) continue;
            instances.push_back({*id, *cls, label});
        } else if (kw == "rel") {
            const Tok* subject = p.name("subject id");
            if (!subject) continue;
            const Tok* rel = p.name("relation name");
            if (!rel) continue;
            auto relation = relation_from_name(rel->text);
            if (!relation) {
                p.fail(rel->column, "unknown relation '" + rel->text + "'");
                continue;
            }
            const Tok* object = p.name("object id");
            if (!object || !p.finish()) continue;
            rels.push_back({*subject, *object, *relation});
        } else if (kw == "value") {
            const Tok* id = p.name("instance id");
            if (!id || !p.keyword("=")) continue;
            auto magnitude = p.number("number");
            if (!magnitude) continue;
            std::string unit;
            if (!p.done()) {
                const Tok* u = p.name("unit");
                if (!u) continue;
                unit = u->text;
            }
            if (!p.finish()) continue;
            values.push_back({*id, *magnitude, unit});
        } else if (kw == "mesh") {
            const Tok* id = p.name("mesh id");
            if (!id || !p.keyword("for")) continue;
            const Tok* target = p.name("target id");
            if (!target || !p.keyword("box")) continue;
            RawMesh m{*id, *target, {}, {}};
            bool ok = true;
            for (int axis = 0; axis < 3 && ok; ++axis) {
                auto v = p.positive_number("box extent");
                if (!v) {
                    ok = false;
                } else {
                    m.extent[axis] = *v;
                }
            }
            if (!ok || !p.keyword("div")) continue;
            for (int axis = 0; axis < 3 && ok; ++axis) {
                auto v = p.positive_int("division count");
                if (!v) {
                    ok = false;
                } else {
                    m.divisions[axis] = *v;
                }
            }
            if (!ok || !p.finish()) continue;
            meshes.push_back(std::move(m));
        } else if (kw == "tag") {
            const Tok* mesh = p.name("mesh id");
            if (!mesh || !p.keyword("face")) continue;
            const Tok* face = p.name("face name");
            if (!face) continue;
            if (!is_face_name(face->text)) {
                p.fail(face->column, "unknown face '" + face->text + "'");
                continue;
            }
            if (!p.keyword("surface")) continue;
            const Tok* surface = p.name("surface id");
            if (!surface || !p.finish()) continue;
            tags.push_back({*mesh, *face, *surface});
        } else if (kw == "simulate") {
            const Tok* behavior = p.name("behavior id");
            if (!behavior || !p.keyword("target")) continue;
            const Tok* backend = p.name("backend name");
            if (!backend) continue;
            auto target = backend_from_name(backend->text);
            if (!target) {
                p.fail(backend->column, "unknown backend '" + backend->text + "'");
                continue;
            }
            RawSim sim{*behavior, *target, 50};
            if (!p.done()) {
                if (!p.keyword("steps")) continue;
                auto steps = p.positive_int("step count");
                if (!steps) continue;
                sim.steps = *steps;
            }
            if (!p.finish()) continue;
            sims.push_back(std::move(sim));
        } else {
            p.fail(head->column, "unknown statement '" + kw + "'");
        }
    }

    // Pass 2a: user classes to a fixpoint, so declaration order is free.
    Taxonomy taxonomy = Taxonomy::defaults();
    {
        std::list<const RawClass*> pending;
        for (const RawClass& rc : classes) {
            pending.push_back(&rc);
        }
        bool progress = true;
        while (progress) {
            progress = false;
            for (auto it = pending.begin(); it != pending.end();) {
                const RawClass& rc = **it;
                if (taxonomy.contains(rc.name.text)) {
                    errors.push_back({rc.name.span(), "duplicate class '" + rc.name.text + "'"});
                    it = pending.erase(it);
                    progress = true;
                } else if (taxonomy.contains(rc.parent.text)) {
                    taxonomy = taxonomy.add_class(rc.name.text, rc.parent.text);
                    it = pending.erase(it);
                    progress = true;
                } else {
                    ++it;
                }
            }
        }
        for (const RawClass* rc : pending) {
            errors.push_back({rc->parent.span(), "class '" + rc->name.text +
                                                     "' has unresolved parent '" +
                                                     rc->parent.text + "'"});
        }
    }

    // Pass 2b: instances.
    std::map<std::string, const RawInstance*> declared;
    for (const RawInstance& ri : instances) {
        if (declared.count(ri.id.text) != 0) {
            errors.push_back({ri.id.span(), "duplicate instance '" + ri.id.text + "'"});
            continue;
        }
        if (!taxonomy.contains(ri.cls.text)) {
            errors.push_back({ri.cls.span(), "unknown class '" + ri.cls.text + "'"});
            continue;
        }
        declared[ri.id.text] = &ri;
    }

    auto instance_class = [&](const Tok& tok) -> const std::string* {
        auto it = declared.find(tok.text);
        if (it == declared.end()) {
            errors.push_back({tok.span(), "unknown instance '" + tok.text + "'"});
            return nullptr;
        }
        return &it->second->cls.text;
    };

    // Pass 2c: relations and values.
    std::vector<const RawRel*> good_rels;
    for (const RawRel& rr : rels) {
        const std::string* sc = instance_class(rr.subject);
        const std::string* oc = instance_class(rr.object);
        if (sc && oc) {
            good_rels.push_back(&rr);
        }
    }

    std::set<std::string> valued;
    std::vector<const RawValue*> good_values;
    for (const RawValue& rv : values) {
        if (!instance_class(rv.id)) continue;
        if (!valued.insert(rv.id.text).second) {
            errors.push_back({rv.id.span(), "duplicate value for '" + rv.id.text + "'"});
            continue;
        }
        good_values.push_back(&rv);
    }

    // Pass 2d: mesh directives and face tags.
    std::map<std::string, MeshDirective> mesh_map;
    std::vector<std::string> mesh_order;
    for (const RawMesh& rm : meshes) {
        if (mesh_map.count(rm.id.text) != 0) {
            errors.push_back({rm.id.span(), "duplicate mesh '" + rm.id.text + "'"});
            continue;
        }
        if (!instance_class(rm.target)) continue;
        MeshDirective d;
        d.id = rm.id.text;
        d.target = rm.target.text;
        d.extent = rm.extent;
        d.divisions = rm.divisions;
        mesh_map[d.id] = std::move(d);
        mesh_order.push_back(rm.id.text);
    }
    for (const RawTag& rt : tags) {
        auto mesh_it = mesh_map.find(rt.mesh.text);
        if (mesh_it == mesh_map.end()) {
            errors.push_back({rt.mesh.span(), "unknown mesh '" + rt.mesh.text + "'"});
            continue;
        }
        const std::string* sc = instance_class(rt.surface);
        if (!sc) continue;
        if (!taxonomy.is_subclass_of(*sc, cls::FiatObjectSurface)) {
            errors.push_back(
                {rt.surface.span(), "'" + rt.surface.text + "' is not a fiat object surface"});
            continue;
        }
        auto [tag_it, fresh] = mesh_it->second.face_tags.emplace(rt.face.text, rt.surface.text);
        (void)tag_it;
        if (!fresh) {
            errors.push_back({rt.face.span(), "face '" + rt.face.text +
                                                  "' already tagged for mesh '" + rt.mesh.text +
                                                  "'"});
        }
    }

    // Pass 2e: simulation requests.
    std::vector<SimRequest> sim_out;
    for (const RawSim& rs : sims) {
        const std::string* bc = instance_class(rs.behavior);
        if (!bc) continue;
        if (!taxonomy.is_subclass_of(*bc, cls::PhysicalBehavior)) {
            errors.push_back(
                {rs.behavior.span(), "'" + rs.behavior.text + "' is not a physical behavior"});
            continue;
        }
        sim_out.push_back({rs.behavior.text, rs.target, rs.steps});
    }

    std::sort(errors.begin(), errors.end(), [](const ParseError& a, const ParseError& b) {
        return std::tie(a.span.line, a.span.column, a.message) <
               std::tie(b.span.line, b.span.column, b.message);
    });

    if (!errors.empty()) {
        return {std::nullopt, std::move(errors)};
    }

    ModelGraph::Builder builder{taxonomy};
    for (const RawInstance& ri : instances) {
        builder.add_instance(ri.id.text, ri.cls.text, ri.label);
    }
    for (const RawRel* rr : good_rels) {
        builder.add_assertion(rr->subject.text, rr->relation, rr->object.text);
    }
    for (const RawValue* rv : good_values) {
        builder.set_value(rv->id.text, {rv->magnitude, rv->unit});
    }

    ParsedModel model{std::move(builder).build(), {}, std::move(sim_out)};
    for (const std::string& id : mesh_order) {
        model.meshes.push_back(std::move(mesh_map[id]));
    }
    return {std::move(model), {}};
}

} // namespace pso::dsl
