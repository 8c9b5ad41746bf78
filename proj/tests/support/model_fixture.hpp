#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "pso/dsl.hpp"

namespace testsupport {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline const std::string& case_study_source() {
    static const std::string source = read_file(PSO_MODEL_FILE);
    return source;
}

// Parses the shipped case study; throws when it fails so every test sees the
// parse errors instead of an empty optional.
inline const pso::dsl::ParsedModel& case_study() {
    static const pso::dsl::ParsedModel model = [] {
        pso::dsl::ParseResult result = pso::dsl::parse(case_study_source());
        if (!result.ok()) {
            std::string what = "case study failed to parse:";
            for (const auto& error : result.errors) {
                what += "\n  " + pso::dsl::format_parse_error(error);
            }
            throw std::runtime_error(what);
        }
        return std::move(*result.model);
    }();
    return model;
}

// Removes the first line containing `needle`; throws when no line matches so
// a stale mutation cannot silently test nothing.
inline std::string remove_line(const std::string& source, const std::string& needle) {
    std::istringstream in(source);
    std::ostringstream out;
    std::string line;
    bool removed = false;
    while (std::getline(in, line)) {
        if (!removed && line.find(needle) != std::string::npos) {
            removed = true;
            continue;
        }
        out << line << "\n";
    }
    if (!removed) {
        throw std::runtime_error("no line contains '" + needle + "'");
    }
    return out.str();
}

inline std::string replace_line(const std::string& source, const std::string& needle,
                                const std::string& replacement) {
    std::istringstream in(source);
    std::ostringstream out;
    std::string line;
    bool replaced = false;
    while (std::getline(in, line)) {
        if (!replaced && line.find(needle) != std::string::npos) {
            out << replacement << "\n";
            replaced = true;
            continue;
        }
        out << line << "\n";
    }
    if (!replaced) {
        throw std::runtime_error("no line contains '" + needle + "'");
    }
    return out.str();
}

inline pso::dsl::ParsedModel parse_or_throw(const std::string& source) {
    pso::dsl::ParseResult result = pso::dsl::parse(source);
    if (!result.ok()) {
        std::string what = "mutant failed to parse:";
        for (const auto& error : result.errors) {
            what += "\n  " + pso::dsl::format_parse_error(error);
        }
        throw std::runtime_error(what);
    }
    return std::move(*result.model);
}

} // namespace testsupport
