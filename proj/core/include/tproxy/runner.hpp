#ifndef TPROXY_RUNNER_HPP
#define TPROXY_RUNNER_HPP

#include <optional>
#include <string>
#include <vector>

#include "tproxy/interpreter.hpp"

namespace tproxy {

enum class ReportFormat { Json, Table };

/// One script execution's configuration.
struct RunConfig {
    bool instrument = false;
    ReportFormat reportFormat = ReportFormat::Json;
    std::vector<std::string> wrapFunctions;
    bool wrapOpaque = false;
    /// Test-only: keep recorded comparison events for the dual-evaluation
    /// oracle.
    bool retainEvents = false;
};

/// Rebinds a top-level function so each call passes its object arguments
/// and its result through one membrane created here, shared across the
/// function's calls. Transparent membranes by default; opaque reproduces
/// the interference experiment. The name must be bound to a callable
/// global (hoist first); anything else is a type error.
void wrapFunctionArguments(Interpreter& interp, const std::string& name,
                           bool opaque);

/// Parses and runs one source text under the configuration. Unknown
/// wrap-function names surface as a Reference ScriptError before the
/// program runs (a startup error, not an Outcome error).
Outcome runSource(const std::string& source, const RunConfig& config);

struct VariantResult {
    /// Unset for the baseline run.
    std::optional<std::string> function;
    Outcome outcome;
};

/// The per-function wrapping sweep: one baseline run plus one run per
/// top-level function with exactly that function wrapped. Every run gets
/// a fresh interpreter and heap; instrumentation is always on. A
/// variant's runtime error lands in its outcome.
std::vector<VariantResult> enumerateVariants(const std::string& source,
                                             bool wrapOpaque = false);

/// JSON array of {function, report} entries, one per variant, with an
/// "error" member when that variant failed at runtime.
std::string variantsToJson(const std::vector<VariantResult>& variants);

/// Names wrappable by --wrap-function, in declaration order.
std::vector<std::string> listFunctions(const std::string& source);

} // namespace tproxy

#endif
