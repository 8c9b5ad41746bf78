#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "pso/backend_nastran.hpp"
#include "pso/errors.hpp"
#include "pso/meshgen.hpp"
#include "support/model_fixture.hpp"

using namespace pso;
using namespace pso::nastran;

namespace {

plan::ProblemSpec case_spec(const std::string& behavior) {
    plan::PlanResult result =
        plan::derive_problem(testsupport::case_study(), {behavior, dsl::Backend::Nastran, 50});
    REQUIRE(result.spec.has_value());
    return *result.spec;
}

mesh::MeshData case_mesh(const plan::ProblemSpec& spec) {
    return mesh::hex_to_tet(mesh::box_hex_mesh(spec.mesh.extent, spec.mesh.divisions));
}

std::vector<const Card*> cards_named(const Deck& deck, const std::string& name) {
    std::vector<const Card*> out;
    for (const Card& card : deck.bulk) {
        if (card.name == name) {
            out.push_back(&card);
        }
    }
    return out;
}

} // namespace

TEST_CASE("format_field prefers plain decimals that fit") {
    CHECK(format_field(7200.0) == "7200.0");
    CHECK(format_field(-1.0) == "-1.0");
    CHECK(format_field(0.0) == "0.0");
    CHECK(format_field(-0.0) == "0.0");
    CHECK(format_field(0.2) == "0.2");
    CHECK(format_field(293.15) == "293.15");
    CHECK(format_field(-12500.0) == "-12500.0");
    CHECK(format_field(-70632.0) == "-70632.0");
    CHECK(format_field(101425.0) == "101425.0");
}

TEST_CASE("format_field falls back to the NASTRAN exponent form") {
    CHECK(format_field(123456789.0) == "1.2346+8");
    CHECK(format_field(1.1e11) == "1.1+11");
    CHECK(format_field(4.4e10) == "4.4+10");
    CHECK(format_field(1e-9) == "1.-9");
    for (const char* rendered :
         {"7200.0", "1.2346+8", "1.1+11", "1.-9", "-12500.0"}) {
        CHECK(std::string(rendered).size() <= 8);
    }
}

TEST_CASE("parse_real_field handles deck notations") {
    CHECK(parse_real_field("7200.0") == 7200.0);
    CHECK(parse_real_field("7200.") == 7200.0);
    CHECK(parse_real_field("  -12500.0 ") == -12500.0);
    CHECK(parse_real_field("1.2346+8") == 1.2346e8);
    CHECK(parse_real_field("1.1+11") == 1.1e11);
    CHECK(parse_real_field("1.-9") == 1e-9);
    CHECK(parse_real_field("2.5-3") == 2.5e-3);
    CHECK(parse_real_field("1.5E3") == 1500.0);
    CHECK(parse_real_field("1.5e-2") == 0.015);

    CHECK_THROWS_AS(parse_real_field(""), Error);
    CHECK_THROWS_AS(parse_real_field("THRU"), Error);
    CHECK_THROWS_AS(parse_real_field("1.2.3"), Error);
}

TEST_CASE("format/parse round trip stays within tolerance") {
    std::mt19937 rng(40501);
    std::uniform_real_distribution<double> log_pos(-9.0, 9.0);
    for (int i = 0; i < 2000; ++i) {
        double value = std::pow(10.0, log_pos(rng));
        double back = parse_real_field(format_field(value));
        CHECK(std::abs(back - value) / value <= 1e-4);
    }
    // Negative values keep one character less for digits; stay in the range
    // where fixed notation holds five significant digits.
    std::uniform_real_distribution<double> log_neg(-1.0, 4.0);
    for (int i = 0; i < 2000; ++i) {
        double value = -std::pow(10.0, log_neg(rng));
        double back = parse_real_field(format_field(value));
        CHECK(std::abs(back - value) / std::abs(value) <= 1e-4);
    }
}

TEST_CASE("render_field follows the field kind") {
    CHECK(render_field(Field::blank()).empty());
    CHECK(render_field(Field::integer(45)) == "45");
    CHECK(render_field(Field::word("THRU")) == "THRU");
    CHECK(render_field(Field::real(0.25)) == "0.25");
}

TEST_CASE("render_deck keeps the small-field layout") {
    Deck deck;
    deck.executive = {"SOL 101"};
    deck.case_control = {"TITLE = t"};
    Card wide{"TEMPBC", {}};
    for (int i = 0; i < 11; ++i) {
        wide.fields.push_back(Field::integer(i + 1));
    }
    deck.bulk.push_back(wide);
    deck.bulk.push_back({"PSOLID", {Field::integer(1), Field::integer(1)}});

    std::string text = render_deck(deck);
    std::istringstream lines(text);
    std::string line;
    std::vector<std::string> all;
    while (std::getline(lines, line)) {
        CHECK(line.size() <= 80);
        all.push_back(line);
    }
    REQUIRE(all.size() == 8);
    CHECK(all[0] == "SOL 101");
    CHECK(all[1] == "CEND");
    CHECK(all[2] == "TITLE = t");
    CHECK(all[3] == "BEGIN BULK");
    // Eight data fields per line; the continuation marker sits in column 73.
    CHECK(all[4].size() == 73);
    CHECK(all[4].substr(0, 8) == "TEMPBC  ");
    CHECK(all[4].back() == '+');
    CHECK(all[5].substr(0, 8) == "+       ");
    CHECK(all[5].find("9") != std::string::npos);
    CHECK(all[6] == "PSOLID  1       1");
    CHECK(all[7] == "ENDDATA");
}

TEST_CASE("parse_deck splits sections and fixed columns") {
    std::string text =
        "SOL 101\n"
        "CEND\n"
        "TITLE = demo\n"
        "BEGIN BULK\n"
        "$ a comment\n"
        "GRID    2               0.25    0.0     0.0\n"
        "SPC     1       2       123     0.0\n"
        "ENDDATA\n";
    Deck deck = parse_deck(text);
    CHECK(deck.executive == std::vector<std::string>{"SOL 101"});
    CHECK(deck.case_control == std::vector<std::string>{"TITLE = demo"});
    CHECK(deck.comments == std::vector<std::string>{"$ a comment"});
    REQUIRE(deck.bulk.size() == 2);
    CHECK(deck.bulk[0].name == "GRID");
    REQUIRE(deck.bulk[0].fields.size() == 5);
    CHECK(deck.bulk[0].fields[0] == Field::integer(2));
    CHECK(deck.bulk[0].fields[1] == Field::blank());
    CHECK(deck.bulk[0].fields[2] == Field::real(0.25));
    // SPC's constrained-components cell reads back as an integer.
    CHECK(deck.bulk[1].fields[2] == Field::integer(123));
}

TEST_CASE("parse_deck reports malformed bulk lines") {
    std::string garbage =
        "SOL 101\nCEND\nBEGIN BULK\n"
        "@@@     1\n"
        "ENDDATA\n";
    CHECK_THROWS_AS(parse_deck(garbage), MalformedCard);
    try {
        parse_deck(garbage);
        FAIL("expected MalformedCard");
    } catch (const MalformedCard& e) {
        CHECK(e.line() == 4);
        CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    }

    std::string dangling =
        "SOL 101\nCEND\nBEGIN BULK\n"
        "+       1\n"
        "ENDDATA\n";
    CHECK_THROWS_AS(parse_deck(dangling), MalformedCard);
}

TEST_CASE("rendered decks parse back to the same text") {
    for (const char* behavior : {"structural_behavior", "thermal_behavior"}) {
        CAPTURE(behavior);
        plan::ProblemSpec spec = case_spec(behavior);
        std::string text = render_deck(emit_deck(spec, case_mesh(spec)));
        CHECK(render_deck(parse_deck(text)) == text);
    }
}

TEST_CASE("emit_deck structural bulk data") {
    plan::ProblemSpec spec = case_spec("structural_behavior");
    Deck deck = emit_deck(spec, case_mesh(spec));

    CHECK(deck.executive == std::vector<std::string>{"SOL 101"});
    CHECK(deck.case_control ==
          std::vector<std::string>{"TITLE = structural_behavior", "SPC = 1", "LOAD = 2",
                                   "DISPLACEMENT = ALL"});

    CHECK(cards_named(deck, "GRID").size() == 45);
    CHECK(cards_named(deck, "CHEXA").size() == 16);
    CHECK(cards_named(deck, "PSOLID").size() == 1);

    auto mat1 = cards_named(deck, "MAT1");
    REQUIRE(mat1.size() == 1);
    CHECK(mat1[0]->fields ==
          std::vector<Field>{Field::integer(1), Field::real(1.1e11), Field::real(4.4e10),
                             Field::blank(), Field::real(7200.0)});

    auto spc = cards_named(deck, "SPC");
    REQUIRE(spc.size() == 9);
    std::vector<long long> pinned;
    for (const Card* card : spc) {
        CHECK(card->fields[0] == Field::integer(1));
        CHECK(card->fields[2] == Field::word("123"));
        CHECK(card->fields[3] == Field::real(0.0));
        pinned.push_back(card->fields[1].int_value);
    }
    CHECK(pinned == std::vector<long long>{1, 6, 11, 16, 21, 26, 31, 36, 41});

    auto pload = cards_named(deck, "PLOAD");
    REQUIRE(pload.size() == 4);
    CHECK(pload[0]->fields ==
          std::vector<Field>{Field::integer(3), Field::real(-12500.0), Field::integer(5),
                             Field::integer(10), Field::integer(25), Field::integer(20)});

    auto grav = cards_named(deck, "GRAV");
    REQUIRE(grav.size() == 1);
    CHECK(grav[0]->fields ==
          std::vector<Field>{Field::integer(4), Field::blank(), Field::real(-70632.0),
                             Field::real(0.0), Field::real(0.0), Field::real(1.0)});

    auto load = cards_named(deck, "LOAD");
    REQUIRE(load.size() == 1);
    CHECK(load[0]->fields ==
          std::vector<Field>{Field::integer(2), Field::real(1.0), Field::real(1.0),
                             Field::integer(3), Field::real(1.0), Field::integer(4)});

    // First cell wired in CHEXA corner order, 1-based.
    auto chexa = cards_named(deck, "CHEXA");
    CHECK(chexa[0]->fields ==
          std::vector<Field>{Field::integer(1), Field::integer(1), Field::integer(1),
                             Field::integer(2), Field::integer(7), Field::integer(6),
                             Field::integer(16), Field::integer(17), Field::integer(22),
                             Field::integer(21)});
}

TEST_CASE("emit_deck thermal bulk data") {
    plan::ProblemSpec spec = case_spec("thermal_behavior");
    Deck deck = emit_deck(spec, case_mesh(spec));

    CHECK(deck.executive == std::vector<std::string>{"SOL 159"});
    CHECK(deck.case_control ==
          std::vector<std::string>{"TITLE = thermal_behavior", "SPC = 1", "LOAD = 2", "IC = 30",
                                   "TSTEP = 40", "THERMAL = ALL"});

    auto mat4 = cards_named(deck, "MAT4");
    REQUIRE(mat4.size() == 1);
    CHECK(mat4[0]->fields ==
          std::vector<Field>{Field::integer(1), Field::real(52.0), Field::real(447.0),
                             Field::real(7200.0)});

    auto tempbc = cards_named(deck, "TEMPBC");
    REQUIRE(tempbc.size() == 1);
    REQUIRE(tempbc[0]->fields.size() == 38);
    CHECK(tempbc[0]->fields[0] == Field::integer(1));
    CHECK(tempbc[0]->fields[1] == Field::word("STAT"));
    CHECK(tempbc[0]->fields[2] == Field::real(293.15));
    std::vector<long long> nodes;
    for (std::size_t i = 3; i < tempbc[0]->fields.size(); ++i) {
        nodes.push_back(tempbc[0]->fields[i].int_value);
    }
    std::vector<long long> expected;
    for (long long n : {1, 2, 3, 4, 5}) expected.push_back(n);
    for (long long n = 11; n <= 20; ++n) expected.push_back(n);
    for (long long n = 26; n <= 45; ++n) expected.push_back(n);
    CHECK(nodes == expected);

    auto qhbdy = cards_named(deck, "QHBDY");
    REQUIRE(qhbdy.size() == 8);
    for (const Card* card : qhbdy) {
        CHECK(card->fields[0] == Field::integer(2));
        CHECK(card->fields[1] == Field::word("AREA4"));
        CHECK(card->fields[2] == Field::real(85.0));
        CHECK(card->fields[3] == Field::blank());
    }

    auto qvol = cards_named(deck, "QVOL");
    REQUIRE(qvol.size() == 1);
    CHECK(qvol[0]->fields ==
          std::vector<Field>{Field::integer(2), Field::real(1200.0), Field::blank(),
                             Field::integer(1), Field::word("THRU"), Field::integer(16)});

    auto tempd = cards_named(deck, "TEMPD");
    REQUIRE(tempd.size() == 1);
    CHECK(tempd[0]->fields == std::vector<Field>{Field::integer(30), Field::real(300.0)});

    auto tstep = cards_named(deck, "TSTEP");
    REQUIRE(tstep.size() == 1);
    CHECK(tstep[0]->fields ==
          std::vector<Field>{Field::integer(40), Field::integer(50), Field::real(0.2),
                             Field::integer(1)});
}

TEST_CASE("emit_deck refuses fluid problems") {
    plan::ProblemSpec spec = case_spec("flow_behavior");
    CHECK_THROWS_AS(emit_deck(spec, case_mesh(spec)), UnsupportedPhysics);
}
