#pragma once

#include <stdexcept>
#include <string>

namespace spokelab {

/// Error categories surfaced by the library. Each maps onto one of the
/// documented failure modes of the operations (see README, "Errors").
enum class Errc {
  InputRange,      // unknown input x / node outside the declared domain
  Incomplete,      // operation requires a complete trace or snapshot
  KindMismatch,    // trace kind does not match the operation's contract
  BoundViolation,  // a declared bound (mind changes, value bound) was exceeded
  Monotonicity,    // strictly-decreasing discipline violated
  OracleDomain,    // oracle consulted outside its domain
  NormViolation,   // declared btt norm exceeded
  Composition,     // reduction composition domain mismatch
  NodeUnknown,     // node id not present in the snapshot
  Structure,       // graph does not have the expected spoke structure
  AuditViolation,  // oracle refused a query outside its allowed set
  Parse,           // malformed input file
  Usage,           // bad command line / unknown suite
  Size,            // artifact too large for the requested export
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::InputRange: return "input-range";
    case Errc::Incomplete: return "incomplete";
    case Errc::KindMismatch: return "kind-mismatch";
    case Errc::BoundViolation: return "bound-violation";
    case Errc::Monotonicity: return "monotonicity";
    case Errc::OracleDomain: return "oracle-domain";
    case Errc::NormViolation: return "norm-violation";
    case Errc::Composition: return "composition";
    case Errc::NodeUnknown: return "node-unknown";
    case Errc::Structure: return "structure";
    case Errc::AuditViolation: return "audit-violation";
    case Errc::Parse: return "parse";
    case Errc::Usage: return "usage";
    case Errc::Size: return "size";
  }
  return "unknown";
}

}  // namespace spokelab
