#pragma once

#include <string>
#include <vector>

namespace pso {

enum class Severity { Error, Warning };

std::string_view severity_name(Severity severity); // "error" / "warning"

// One finding from validation or planning. `code` is one of the fixed E/W
// codes; `subjects` names the offending instances.
struct Diagnostic {
    Severity severity = Severity::Error;
    std::string code;
    std::string message;
    std::vector<std::string> subjects;

    bool operator==(const Diagnostic&) const = default;
};

// "ERROR E001 [a,b]: message"
std::string format_diagnostic(const Diagnostic& diagnostic);

// Stable report order: (severity, code, first subject).
void sort_diagnostics(std::vector<Diagnostic>& diagnostics);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

} // namespace pso
