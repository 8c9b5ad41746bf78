#include "pso/diagnostics.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <tuple>

namespace pso {

std::string_view severity_name(Severity severity) {
    return severity == Severity::Error ? "error" : "warning";
}

std::string format_diagnostic(const Diagnostic& d) {
    std::ostringstream out;
    std::string sev(severity_name(d.severity));
    for (char& c : sev) {
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    out << sev << " " << d.code << " [";
    for (std::size_t i = 0; i < d.subjects.size(); ++i) {
        if (i) out << ",";
        out << d.subjects[i];
    }
    out << "]: " << d.message;
    return out.str();
}

void sort_diagnostics(std::vector<Diagnostic>& diagnostics) {
    std::stable_sort(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& a, const Diagnostic& b) {
                         static const std::string empty;
                         const std::string& sa = a.subjects.empty() ? empty : a.subjects.front();
                         const std::string& sb = b.subjects.empty() ? empty : b.subjects.front();
                         return std::tie(a.severity, a.code, sa) < std::tie(b.severity, b.code, sb);
                     });
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

} // namespace pso
