#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crnrob/network.hpp"

namespace crnrob {

struct ParseDiagnostic {
  enum class Severity { Error, Warning };
  int line = 0;    // 1-based
  int column = 0;  // 1-based
  std::string message;
  Severity severity = Severity::Error;

  std::string to_string() const;
};

struct ParseResult {
  std::optional<ReactionNetwork> network;
  std::vector<ParseDiagnostic> diagnostics;
  std::string origin;

  bool ok() const { return network.has_value(); }
  bool has_errors() const;
};

/// Parses the .crn reaction-network format:
///
///   # comment
///   species: X, Y            (optional; pins the species ordering)
///   X + Y -> 2 Y ; alpha
///   Y <-> X ; beta, gamma    (expands to forward then reverse reaction)
///   params: alpha=2, beta=1, gamma=1/2
///
/// Species are auto-registered on first mention unless a species: header is
/// present. Rates are positive rationals or parameter names. Errors are
/// collected as diagnostics; parsing continues so several problems can be
/// reported at once. Never throws on arbitrary bytes.
ParseResult parse_network(std::string_view text, std::string_view origin = "<stdin>");

/// Canonical text form; parse_network(serialize(net)) reconstructs an
/// identical network (species order, reaction order, exact constants).
std::string serialize(const ReactionNetwork& net);

}  // namespace crnrob
