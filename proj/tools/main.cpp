#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tproxy/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntimeError = 1;
constexpr int kExitUsageError = 2;

std::optional<std::string> readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return std::nullopt;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void printReport(const tproxy::Outcome& outcome, tproxy::ReportFormat format) {
    if (!outcome.report) {
        return;
    }
    std::cout << "--- report ---\n";
    if (format == tproxy::ReportFormat::Json) {
        std::cout << tproxy::emitReportJson(*outcome.report) << "\n";
    } else {
        std::cout << tproxy::emitReportTable(*outcome.report);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tproxy: a runtime with transparent and opaque object proxies"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run a script");
    std::string scriptPath;
    run->add_option("script", scriptPath, "Script file")->required();
    bool instrument = false;
    run->add_flag("--instrument", instrument,
                  "Count and classify equality comparisons");
    std::string reportFormat;
    run->add_option("--report", reportFormat, "Report format")
        ->check(CLI::IsMember({"json", "table"}));
    std::vector<std::string> wrapNames;
    run->add_option("--wrap-function", wrapNames,
                    "Wrap a top-level function's arguments in a membrane")
        ->take_all();
    bool wrapOpaque = false;
    run->add_flag("--wrap-opaque", wrapOpaque,
                  "Use opaque membranes when wrapping");
    bool listFunctions = false;
    run->add_flag("--list-functions", listFunctions,
                  "List wrappable top-level functions and exit");
    bool enumerateVariants = false;
    run->add_flag("--enumerate-variants", enumerateVariants,
                  "Run the per-function wrapping sweep");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsageError;
    }

    if (!reportFormat.empty() && !instrument) {
        std::cerr << "--report requires --instrument\n";
        return kExitUsageError;
    }
    if (enumerateVariants && !instrument) {
        std::cerr << "--enumerate-variants requires --instrument\n";
        return kExitUsageError;
    }
    if (enumerateVariants && (!wrapNames.empty() || listFunctions)) {
        std::cerr << "--enumerate-variants cannot be combined with "
                     "--wrap-function or --list-functions\n";
        return kExitUsageError;
    }

    std::optional<std::string> source = readFile(scriptPath);
    if (!source) {
        std::cerr << "cannot read script file '" << scriptPath << "'\n";
        return kExitUsageError;
    }

    try {
        if (listFunctions) {
            for (const std::string& name : tproxy::listFunctions(*source)) {
                std::cout << name << "\n";
            }
            return kExitOk;
        }

        if (enumerateVariants) {
            auto variants = tproxy::enumerateVariants(*source, wrapOpaque);
            std::cout << tproxy::variantsToJson(variants) << "\n";
            return kExitOk;
        }

        tproxy::RunConfig config;
        config.instrument = instrument;
        config.reportFormat = reportFormat == "table" ? tproxy::ReportFormat::Table
                                                      : tproxy::ReportFormat::Json;
        config.wrapFunctions = wrapNames;
        config.wrapOpaque = wrapOpaque;

        tproxy::Outcome outcome = tproxy::runSource(*source, config);
        for (const std::string& line : outcome.output) {
            std::cout << line << "\n";
        }
        printReport(outcome, config.reportFormat);
        if (outcome.error) {
            std::cerr << outcome.error->format() << "\n";
            return kExitRuntimeError;
        }
        return kExitOk;
    } catch (const tproxy::ScriptError& err) {
        // Parse errors and startup errors (e.g. an unknown --wrap-function
        // name) are usage-level failures.
        tproxy::Diagnostic diag{err.kind(), err.message(), err.position()};
        std::cerr << diag.format() << "\n";
        return kExitUsageError;
    }
}
