#pragma once

#include <string>
#include <vector>

#include "pso/meshgen.hpp"
#include "pso/plan.hpp"

namespace pso::nastran {

enum class FieldKind { Blank, Int, Real, Text };

// One small-field cell. Typed so decks can be compared numerically after a
// render/parse round trip.
struct Field {
    FieldKind kind = FieldKind::Blank;
    long long int_value = 0;
    double real_value = 0.0;
    std::string text;

    static Field blank() { return {}; }
    static Field integer(long long v) { return {FieldKind::Int, v, 0.0, {}}; }
    static Field real(double v) { return {FieldKind::Real, 0, v, {}}; }
    static Field word(std::string v) { return {FieldKind::Text, 0, 0.0, std::move(v)}; }

    bool operator==(const Field&) const = default;
};

struct Card {
    std::string name;          // <= 8 characters
    std::vector<Field> fields; // data fields; spills into continuation lines

    bool operator==(const Card&) const = default;
};

struct Deck {
    std::vector<std::string> executive;    // before CEND
    std::vector<std::string> case_control; // between CEND and BEGIN BULK
    std::vector<std::string> comments;     // $ lines at the top of the bulk section
    std::vector<Card> bulk;
};

// Best small-field rendering of a real: at most 8 characters, always carries
// a decimal point, uses the NASTRAN exponent form (1.2346+8) when fixed
// notation does not fit. Relative error is at most 1e-4 for magnitudes in
// [1e-9, 1e9].
std::string format_field(double value);

// Inverse of format_field; also accepts ordinary E-notation.
double parse_real_field(const std::string& text);

std::string render_field(const Field& field); // unpadded cell content

// Full deck text: executive, CEND, case control, BEGIN BULK, comments,
// cards (10 x 8 layout, '+' continuations), ENDDATA. Lines stay within 80
// columns.
std::string render_deck(const Deck& deck);

// Parses render_deck output (and hand-written small-field decks). Throws
// MalformedCard with the 1-based line number on garbage.
Deck parse_deck(const std::string& text);

// Maps a structural or thermal problem onto bulk data. Throws
// UnsupportedPhysics for fluid problems.
Deck emit_deck(const plan::ProblemSpec& spec, const mesh::MeshData& mesh);

} // namespace pso::nastran
