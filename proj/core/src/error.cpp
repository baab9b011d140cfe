#include "tproxy/error.hpp"

namespace tproxy {

const char* errorKindName(ErrorKind k) {
    switch (k) {
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::Type: return "TypeError";
    case ErrorKind::Reference: return "ReferenceError";
    case ErrorKind::Revoked: return "RevokedProxyError";
    case ErrorKind::Contract: return "ContractViolation";
    }
    return "Error";
}

} // namespace tproxy
