#ifndef TPROXY_ERROR_HPP
#define TPROXY_ERROR_HPP

#include <optional>
#include <stdexcept>
#include <string>

namespace tproxy {

struct Position {
    int line = 0;
    int col = 0;

    friend bool operator==(const Position&, const Position&) = default;
};

enum class ErrorKind {
    Syntax,
    Type,
    Reference,
    Revoked,
    Contract,
};

const char* errorKindName(ErrorKind k);

/// Runtime and parse errors raised by the language. Errors propagate to
/// the top level; scripts have no catch construct.
class ScriptError : public std::runtime_error {
public:
    ScriptError(ErrorKind kind, std::string message,
                std::optional<Position> pos = std::nullopt)
        : std::runtime_error(std::string(errorKindName(kind)) + ": " + message),
          kind_(kind),
          message_(std::move(message)),
          pos_(pos) {}

    ErrorKind kind() const { return kind_; }
    const std::string& message() const { return message_; }
    const std::optional<Position>& position() const { return pos_; }
    void setPosition(Position p) { pos_ = p; }

private:
    ErrorKind kind_;
    std::string message_;
    std::optional<Position> pos_;
};

[[noreturn]] inline void throwTypeError(const std::string& msg) {
    throw ScriptError(ErrorKind::Type, msg);
}

[[noreturn]] inline void throwRevoked(const std::string& msg) {
    throw ScriptError(ErrorKind::Revoked, msg);
}

} // namespace tproxy

#endif
