#ifndef TPROXY_PARSER_HPP
#define TPROXY_PARSER_HPP

#include <string>

#include "tproxy/ast.hpp"

namespace tproxy {

/// Parses a UTF-8 source text into a program. Deterministic; raises a
/// ScriptError of kind Syntax carrying the offending line/column.
ast::Program parseProgram(const std::string& source);

} // namespace tproxy

#endif
