#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pso/axioms.hpp"
#include "pso/driver.hpp"
#include "pso/dsl.hpp"
#include "pso/errors.hpp"
#include "pso/plan.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kValidationError = 1;
constexpr int kUsageError = 2;

std::optional<pso::dsl::ParsedModel> load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read '" << path << "'\n";
        return std::nullopt;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    pso::dsl::ParseResult result = pso::dsl::parse(buffer.str());
    if (!result.ok()) {
        for (const pso::dsl::ParseError& err : result.errors) {
            std::cerr << pso::dsl::format_parse_error(err) << "\n";
        }
        return std::nullopt;
    }
    return std::move(result.model);
}

class DiagnosticPrinter {
public:
    explicit DiagnosticPrinter(bool as_json) : json_(as_json) {}

    // Prints each distinct diagnostic once, even when validation and
    // per-request planning both report it.
    void print(const std::vector<pso::Diagnostic>& diags) {
        for (const pso::Diagnostic& d : diags) {
            std::string text = pso::format_diagnostic(d);
            if (!seen_.insert(text).second) {
                continue;
            }
            if (d.severity == pso::Severity::Warning) {
                warned_ = true;
            }
            if (json_) {
                nlohmann::json record{{"severity", std::string(pso::severity_name(d.severity))},
                                      {"code", d.code},
                                      {"subjects", d.subjects},
                                      {"message", d.message}};
                std::cout << record.dump() << "\n";
            } else {
                std::cout << text << "\n";
            }
        }
    }

    bool warned() const { return warned_; }

private:
    bool json_;
    bool warned_ = false;
    std::set<std::string> seen_;
};

int run_validate(const std::string& file, const std::string& format, bool strict) {
    auto model = load_model(file);
    if (!model) {
        return kUsageError;
    }
    pso::driver::ValidationReport report = pso::driver::validate(*model);
    DiagnosticPrinter printer(format == "json");
    printer.print(report.diagnostics);
    if (format != "json") {
        for (const std::string& n : report.notes) {
            std::cout << n << "\n";
        }
    }
    if (!report.ok()) {
        return kValidationError;
    }
    if (strict && printer.warned()) {
        return kValidationError;
    }
    return kOk;
}

int run_compile(const std::string& file, const std::string& behavior, const std::string& target,
                const std::string& out_dir, int steps, bool strict) {
    auto model = load_model(file);
    if (!model) {
        return kUsageError;
    }

    std::vector<pso::dsl::SimRequest> requests;
    if (behavior == "all") {
        for (const pso::dsl::SimRequest& sim : model->sims) {
            if (!target.empty() && pso::dsl::backend_name(sim.target) != target) {
                continue;
            }
            requests.push_back(sim);
        }
        if (requests.empty()) {
            std::cerr << "error: the file declares no matching simulate request\n";
            return kUsageError;
        }
    } else {
        const pso::dsl::SimRequest* in_file = nullptr;
        for (const pso::dsl::SimRequest& sim : model->sims) {
            if (sim.behavior == behavior) {
                in_file = &sim;
                break;
            }
        }
        pso::dsl::SimRequest request;
        request.behavior = behavior;
        if (!target.empty()) {
            request.target = *pso::dsl::backend_from_name(target);
        } else if (in_file) {
            request.target = in_file->target;
        } else {
            std::cerr << "error: --target required: no simulate request for '" << behavior
                      << "' in the file\n";
            return kUsageError;
        }
        request.steps = in_file ? in_file->steps : 50;
        requests.push_back(request);
    }
    if (steps > 0) {
        for (pso::dsl::SimRequest& r : requests) {
            r.steps = steps;
        }
    }

    DiagnosticPrinter printer(false);
    pso::driver::ValidationReport report = pso::driver::validate(*model);
    printer.print(report.diagnostics);
    if (!report.ok()) {
        return kValidationError;
    }
    for (const std::string& n : report.notes) {
        std::cout << n << "\n";
    }

    try {
        for (const pso::dsl::SimRequest& request : requests) {
            pso::driver::CompileResult result = pso::driver::compile_request(*model, request,
                                                                             out_dir);
            printer.print(result.diagnostics);
            if (!result.ok()) {
                return kValidationError;
            }
            for (const auto& path : result.files) {
                std::cout << "wrote " << path.string() << "\n";
            }
        }
    } catch (const pso::UnsupportedPhysics& e) {
        std::cerr << "error: unsupported physics: " << e.what() << "\n";
        return kValidationError;
    } catch (const pso::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    }

    if (strict && printer.warned()) {
        return kValidationError;
    }
    return kOk;
}

int run_dump_plan(const std::string& file, const std::string& behavior) {
    auto model = load_model(file);
    if (!model) {
        return kUsageError;
    }

    DiagnosticPrinter printer(false);
    std::vector<pso::Diagnostic> axiom_diags = pso::axioms::check_all(model->graph);
    printer.print(axiom_diags);
    if (pso::has_errors(axiom_diags)) {
        return kValidationError;
    }

    pso::dsl::SimRequest request;
    request.behavior = behavior;
    for (const pso::dsl::SimRequest& sim : model->sims) {
        if (sim.behavior == behavior) {
            request = sim;
            break;
        }
    }
    request.behavior = behavior;

    pso::plan::PlanResult planned = pso::plan::derive_problem(*model, request);
    printer.print(planned.diagnostics);
    if (!planned.spec) {
        return kValidationError;
    }
    std::cout << pso::plan::dump_plan(*planned.spec);
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"psoc: compiles physics ontology models into solver inputs"};
    app.require_subcommand(1);

    std::string v_file;
    std::string v_format = "text";
    bool v_strict = false;
    CLI::App* validate = app.add_subcommand("validate", "check a model file");
    validate->add_option("file", v_file, "model file (.pso)")->required();
    validate->add_option("--format", v_format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    validate->add_flag("--strict", v_strict, "treat warnings as errors");

    std::string c_file;
    std::string c_behavior;
    std::string c_target;
    std::string c_out;
    int c_steps = 0;
    bool c_strict = false;
    CLI::App* compile = app.add_subcommand("compile", "emit solver input files");
    compile->add_option("file", c_file, "model file (.pso)")->required();
    compile->add_option("--behavior", c_behavior, "behavior instance id, or 'all'")->required();
    compile->add_option("--target", c_target, "solver dialect")
        ->check(CLI::IsMember({"fenics", "nastran"}));
    compile->add_option("--out", c_out, "output directory")->required();
    compile->add_option("--steps", c_steps, "time step count override")
        ->check(CLI::PositiveNumber);
    compile->add_flag("--strict", c_strict, "treat warnings as errors");

    std::string d_file;
    std::string d_behavior;
    CLI::App* dump = app.add_subcommand("dump-plan", "print the derived problem spec");
    dump->add_option("file", d_file, "model file (.pso)")->required();
    dump->add_option("--behavior", d_behavior, "behavior instance id")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        if (validate->parsed()) {
            return run_validate(v_file, v_format, v_strict);
        }
        if (compile->parsed()) {
            return run_compile(c_file, c_behavior, c_target, c_out, c_steps, c_strict);
        }
        return run_dump_plan(d_file, d_behavior);
    } catch (const pso::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kUsageError;
    }
}
