#include "pso/backend_nastran.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "pso/decimal.hpp"
#include "pso/errors.hpp"

namespace pso::nastran {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::string upper(std::string s) {
    for (char& c : s) {
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    return s;
}

std::optional<double> try_parse_real(const std::string& raw) {
    std::string t = trim(raw);
    if (t.empty()) return std::nullopt;
    // Reinsert the implied 'e' of the NASTRAN exponent form: a sign embedded
    // after a digit or '.' separates mantissa and exponent.
    std::string norm;
    norm.reserve(t.size() + 1);
    for (std::size_t i = 0; i < t.size(); ++i) {
        char c = t[i];
        if ((c == '+' || c == '-') && i > 0) {
            char prev = t[i - 1];
            if (std::isdigit(static_cast<unsigned char>(prev)) || prev == '.') {
                norm += 'e';
            }
        }
        norm += c;
    }
    // Bare trailing '.' ("7200.") is legal in a deck but not for from_chars.
    if (!norm.empty() && norm.back() == '.') {
        norm += '0';
    }
    std::size_t epos = norm.find_first_of("eE");
    if (epos != std::string::npos && epos > 0 && norm[epos - 1] == '.') {
        norm.insert(epos, "0"); // "70.e-1" -> "70.0e-1"
    }
    return parse_decimal(norm);
}

bool is_integer_token(const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    }
    return true;
}

} // namespace

double parse_real_field(const std::string& text) {
    auto value = try_parse_real(text);
    if (!value) {
        throw Error("not a real field: '" + text + "'");
    }
    return *value;
}

std::string format_field(double value) {
    if (value == 0.0) {
        return "0.0";
    }

    // Plain decimal is preferred whenever the exact shortest rendering fits.
    std::string shortest = render_decimal(value);
    if (shortest.find('e') == std::string::npos && shortest.size() <= 8) {
        return shortest;
    }

    std::string best;
    double best_err = std::numeric_limits<double>::infinity();
    bool best_plain = false;
    auto consider = [&](const std::string& s, bool plain) {
        if (s.empty() || s.size() > 8) return;
        auto parsed = try_parse_real(s);
        if (!parsed) return;
        double rel = std::abs(*parsed - value) / std::abs(value);
        bool better = rel < best_err ||
                      (rel == best_err &&
                       (plain > best_plain ||
                        (plain == best_plain && (s.size() < best.size() ||
                                                 (s.size() == best.size() && s < best)))));
        if (better) {
            best = s;
            best_err = rel;
            best_plain = plain;
        }
    };

    // Fixed-point candidates.
    char buf[64];
    for (int prec = 0; prec <= 9; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*f", prec, value);
        std::string s = buf;
        if (s.find('.') == std::string::npos) {
            s += ".";
        }
        consider(s, true);
    }

    // NASTRAN exponent candidates at descending precision, the shortest
    // round-trip mantissa first.
    auto consider_exponent = [&](const std::string& scientific) {
        std::size_t epos = scientific.find('e');
        if (epos == std::string::npos) return;
        std::string mantissa = scientific.substr(0, epos);
        int exponent = std::stoi(scientific.substr(epos + 1));
        if (mantissa.find('.') == std::string::npos) {
            mantissa += ".";
        }
        consider(mantissa + (exponent < 0 ? "-" : "+") + std::to_string(std::abs(exponent)),
                 false);
    };
    consider_exponent(shortest);
    for (int sig = 7; sig >= 1; --sig) {
        std::snprintf(buf, sizeof(buf), "%.*e", sig - 1, value);
        consider_exponent(buf);
    }

    return best;
}

std::string render_field(const Field& field) {
    switch (field.kind) {
    case FieldKind::Blank: return {};
    case FieldKind::Int: return std::to_string(field.int_value);
    case FieldKind::Real: return format_field(field.real_value);
    case FieldKind::Text: return field.text;
    }
    return {};
}

namespace {

std::string pad8(const std::string& s) {
    std::string out = s.substr(0, 8);
    out.resize(8, ' ');
    return out;
}

std::string rstrip(std::string s) {
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
        s.pop_back();
    }
    return s;
}

void render_card(std::ostringstream& out, const Card& card) {
    std::size_t i = 0;
    bool first = true;
    do {
        std::string line = pad8(first ? card.name : "+");
        first = false;
        for (int slot = 0; slot < 8; ++slot) {
            line += pad8(i < card.fields.size() ? render_field(card.fields[i]) : "");
            ++i;
        }
        bool more = i < card.fields.size();
        if (more) {
            out << line << "+\n";
        } else {
            out << rstrip(line) << "\n";
        }
    } while (i < card.fields.size());
}

} // namespace

std::string render_deck(const Deck& deck) {
    std::ostringstream out;
    for (const std::string& line : deck.executive) {
        out << line << "\n";
    }
    out << "CEND\n";
    for (const std::string& line : deck.case_control) {
        out << line << "\n";
    }
    out << "BEGIN BULK\n";
    for (const std::string& line : deck.comments) {
        out << line << "\n";
    }
    for (const Card& card : deck.bulk) {
        render_card(out, card);
    }
    out << "ENDDATA\n";
    return out.str();
}

namespace {

Field classify_field(const std::string& raw) {
    std::string t = trim(raw);
    if (t.empty()) {
        return Field::blank();
    }
    if (is_integer_token(t)) {
        return Field::integer(std::stoll(t));
    }
    if (auto value = try_parse_real(t)) {
        return Field::real(*value);
    }
    return Field::word(t);
}

bool valid_card_name(const std::string& name) {
    if (name.empty() || name.size() > 8) return false;
    if (!std::isalpha(static_cast<unsigned char>(name[0]))) return false;
    return std::all_of(name.begin(), name.end(), [](unsigned char c) {
        return std::isalnum(c) != 0;
    });
}

void strip_trailing_blanks(Card& card) {
    while (!card.fields.empty() && card.fields.back().kind == FieldKind::Blank) {
        card.fields.pop_back();
    }
}

} // namespace

Deck parse_deck(const std::string& text) {
    Deck deck;
    enum class Section { Executive, CaseControl, Bulk, Done };
    Section section = Section::Executive;

    int line_no = 0;
    std::size_t offset = 0;
    while (offset <= text.size() && section != Section::Done) {
        std::size_t eol = text.find('\n', offset);
        std::string line = text.substr(
            offset, eol == std::string::npos ? text.size() - offset : eol - offset);
        offset = eol == std::string::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        std::string trimmed = trim(line);

        switch (section) {
        case Section::Executive:
            if (upper(trimmed) == "CEND") {
                section = Section::CaseControl;
            } else if (!trimmed.empty()) {
                deck.executive.push_back(trimmed);
            }
            break;
        case Section::CaseControl:
            if (upper(trimmed).rfind("BEGIN", 0) == 0 &&
                upper(trimmed).find("BULK") != std::string::npos) {
                section = Section::Bulk;
            } else if (!trimmed.empty()) {
                deck.case_control.push_back(trimmed);
            }
            break;
        case Section::Bulk: {
            if (trimmed.empty()) {
                break;
            }
            if (trimmed[0] == '$') {
                deck.comments.push_back(trimmed);
                break;
            }
            if (upper(trimmed) == "ENDDATA") {
                section = Section::Done;
                break;
            }
            if (line[0] == '+' || line[0] == '*') {
                if (deck.bulk.empty()) {
                    throw MalformedCard("continuation without a preceding card", line_no);
                }
                for (int slot = 1; slot <= 8; ++slot) {
                    std::string cell = static_cast<std::size_t>(slot) * 8 < line.size()
                                           ? line.substr(static_cast<std::size_t>(slot) * 8, 8)
                                           : std::string();
                    deck.bulk.back().fields.push_back(classify_field(cell));
                }
                break;
            }
            std::string name = trim(line.substr(0, std::min<std::size_t>(8, line.size())));
            if (!valid_card_name(name)) {
                throw MalformedCard("malformed bulk entry '" + trimmed + "'", line_no);
            }
            Card card;
            card.name = upper(name);
            for (int slot = 1; slot <= 8; ++slot) {
                std::string cell = static_cast<std::size_t>(slot) * 8 < line.size()
                                       ? line.substr(static_cast<std::size_t>(slot) * 8, 8)
                                       : std::string();
                card.fields.push_back(classify_field(cell));
            }
            deck.bulk.push_back(std::move(card));
            break;
        }
        case Section::Done:
            break;
        }
    }

    for (Card& card : deck.bulk) {
        strip_trailing_blanks(card);
    }
    return deck;
}

namespace {

void emit_mesh_cards(Deck& deck, const mesh::MeshData& mesh) {
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
        const auto& v = mesh.vertices[i];
        Card grid{"GRID",
                  {Field::integer(static_cast<long long>(i) + 1), Field::blank(),
                   Field::real(v[0]), Field::real(v[1]), Field::real(v[2])}};
        deck.bulk.push_back(std::move(grid));
    }
    for (std::size_t i = 0; i < mesh.hexes.size(); ++i) {
        const mesh::Hex& h = mesh.hexes[i];
        Card chexa{"CHEXA", {Field::integer(static_cast<long long>(i) + 1), Field::integer(1)}};
        for (int node : h) {
            chexa.fields.push_back(Field::integer(node + 1));
        }
        deck.bulk.push_back(std::move(chexa));
    }
    deck.bulk.push_back({"PSOLID", {Field::integer(1), Field::integer(1)}});
}

} // namespace

Deck emit_deck(const plan::ProblemSpec& spec, const mesh::MeshData& mesh) {
    if (spec.kind == plan::PhysicsKind::Fluid) {
        throw UnsupportedPhysics("fluid behavior '" + spec.behavior +
                                 "' has no bulk-data mapping; use the fenics target");
    }

    Deck deck;
    const bool structural = spec.kind == plan::PhysicsKind::Structural;
    deck.executive = {structural ? "SOL 101" : "SOL 159"};
    deck.comments.push_back("$ " + spec.behavior + ": " +
                            std::string(plan::physics_kind_name(spec.kind)) + " problem on '" +
                            spec.domain + "'");

    if (structural) {
        deck.case_control = {"TITLE = " + spec.behavior, "SPC = 1"};
        bool has_loads = !spec.neumann.empty() || !spec.volumetric.empty();
        if (has_loads) {
            deck.case_control.push_back("LOAD = 2");
        }
        deck.case_control.push_back("DISPLACEMENT = ALL");

        emit_mesh_cards(deck, mesh);

        Card mat1{"MAT1",
                  {Field::integer(1), Field::real(spec.materials.at(cls::ElasticModulus).magnitude),
                   Field::real(spec.materials.at(cls::ShearModulus).magnitude)}};
        auto density = spec.materials.find(cls::Density);
        if (density != spec.materials.end()) {
            mat1.fields.push_back(Field::blank()); // NU stays derived
            mat1.fields.push_back(Field::real(density->second.magnitude));
        }
        deck.bulk.push_back(std::move(mat1));

        deck.comments.push_back("$ SPC pins translational components 123 at the prescribed value");
        for (const plan::BcBinding& b : spec.dirichlet) {
            for (int node : mesh::surface_nodes(mesh, spec.mesh, b.surface)) {
                deck.bulk.push_back({"SPC",
                                     {Field::integer(1), Field::integer(node + 1),
                                      Field::word("123"), Field::real(b.value.magnitude)}});
            }
        }

        for (const plan::BcBinding& b : spec.neumann) {
            for (const mesh::Quad& q : mesh::surface_quads(mesh, spec.mesh, b.surface)) {
                deck.bulk.push_back({"PLOAD",
                                     {Field::integer(3), Field::real(b.value.magnitude),
                                      Field::integer(q[0] + 1), Field::integer(q[1] + 1),
                                      Field::integer(q[2] + 1), Field::integer(q[3] + 1)}});
            }
        }

        std::vector<long long> load_sets;
        if (!spec.neumann.empty()) {
            load_sets.push_back(3);
        }
        long long grav_sid = 4;
        if (!spec.volumetric.empty()) {
            deck.comments.push_back(
                "$ GRAV A*N encodes the volumetric body force, not an acceleration");
        }
        for (const plan::FieldBinding& b : spec.volumetric) {
            deck.bulk.push_back({"GRAV",
                                 {Field::integer(grav_sid), Field::blank(),
                                  Field::real(b.value.magnitude), Field::real(0.0),
                                  Field::real(0.0), Field::real(1.0)}});
            load_sets.push_back(grav_sid++);
        }
        if (has_loads) {
            Card load{"LOAD", {Field::integer(2), Field::real(1.0)}};
            for (long long sid : load_sets) {
                load.fields.push_back(Field::real(1.0));
                load.fields.push_back(Field::integer(sid));
            }
            deck.bulk.push_back(std::move(load));
        }
    } else {
        deck.case_control = {"TITLE = " + spec.behavior, "SPC = 1"};
        bool has_loads = !spec.neumann.empty() || !spec.volumetric.empty();
        if (has_loads) {
            deck.case_control.push_back("LOAD = 2");
        }
        deck.case_control.push_back("IC = 30");
        deck.case_control.push_back("TSTEP = 40");
        deck.case_control.push_back("THERMAL = ALL");

        emit_mesh_cards(deck, mesh);

        deck.bulk.push_back({"MAT4",
                             {Field::integer(1),
                              Field::real(spec.materials.at(cls::ThermalConductivity).magnitude),
                              Field::real(spec.materials.at(cls::SpecificHeatCapacity).magnitude),
                              Field::real(spec.materials.at(cls::Density).magnitude)}});

        deck.comments.push_back(
            "$ TEMPBC STAT pins boundary temperatures; QHBDY AREA4 applies the surface flux");
        for (const plan::BcBinding& b : spec.dirichlet) {
            Card tempbc{"TEMPBC",
                        {Field::integer(1), Field::word("STAT"), Field::real(b.value.magnitude)}};
            for (int node : mesh::surface_nodes(mesh, spec.mesh, b.surface)) {
                tempbc.fields.push_back(Field::integer(node + 1));
            }
            deck.bulk.push_back(std::move(tempbc));
        }

        for (const plan::BcBinding& b : spec.neumann) {
            for (const mesh::Quad& q : mesh::surface_quads(mesh, spec.mesh, b.surface)) {
                deck.bulk.push_back({"QHBDY",
                                     {Field::integer(2), Field::word("AREA4"),
                                      Field::real(b.value.magnitude), Field::blank(),
                                      Field::integer(q[0] + 1), Field::integer(q[1] + 1),
                                      Field::integer(q[2] + 1), Field::integer(q[3] + 1)}});
            }
        }

        for (const plan::FieldBinding& b : spec.volumetric) {
            deck.bulk.push_back({"QVOL",
                                 {Field::integer(2), Field::real(b.value.magnitude),
                                  Field::blank(), Field::integer(1), Field::word("THRU"),
                                  Field::integer(static_cast<long long>(mesh.hexes.size()))}});
        }

        for (const plan::FieldBinding& b : spec.initial) {
            deck.bulk.push_back({"TEMPD", {Field::integer(30), Field::real(b.value.magnitude)}});
        }

        double extent = spec.temporal_extent ? spec.temporal_extent->magnitude : 1.0;
        double dt = extent / spec.timestep_count;
        deck.bulk.push_back({"TSTEP",
                             {Field::integer(40), Field::integer(spec.timestep_count),
                              Field::real(dt), Field::integer(1)}});
    }

    return deck;
}

} // namespace pso::nastran
