#include "crnrob/parser.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace crnrob {

std::string ParseDiagnostic::to_string() const {
  std::ostringstream out;
  out << (severity == Severity::Error ? "error" : "warning") << " at " << line << ":" << column << ": " << message;
  return out.str();
}

bool ParseResult::has_errors() const {
  for (const auto& d : diagnostics)
    if (d.severity == ParseDiagnostic::Severity::Error) return true;
  return false;
}

namespace {

constexpr int kMaxCoefficient = 1000000;

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

struct Cursor {
  std::string_view text;
  size_t pos = 0;
  int line = 0;

  void skip_space() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r')) ++pos;
  }
  bool done() {
    skip_space();
    return pos >= text.size();
  }
  char peek() const { return pos < text.size() ? text[pos] : '\0'; }
  int column() const { return static_cast<int>(pos) + 1; }
};

// One parsed stoichiometric term: coefficient * species name.
struct Term {
  int coeff;
  std::string name;
  int column;
};

struct RawRate {
  std::string token;  // literal or identifier
  int column;
};

struct RawReaction {
  std::vector<Term> reactant, product;
  bool reversible = false;
  std::vector<RawRate> rates;
  int line = 0;
};

struct RawParam {
  std::string name;
  RawRate value;
  int line = 0;
};

class LineParser {
 public:
  LineParser(std::string_view text, int line, std::vector<ParseDiagnostic>& diags)
      : cur_{text, 0, line}, diags_(diags) {}

  void error(int column, const std::string& msg) {
    diags_.push_back({cur_.line, column, msg, ParseDiagnostic::Severity::Error});
  }

  std::optional<std::string> ident() {
    cur_.skip_space();
    if (!is_ident_start(cur_.peek())) return std::nullopt;
    size_t start = cur_.pos;
    while (cur_.pos < cur_.text.size() && is_ident_char(cur_.text[cur_.pos])) ++cur_.pos;
    return std::string(cur_.text.substr(start, cur_.pos - start));
  }

  std::optional<long> integer() {
    cur_.skip_space();
    if (!std::isdigit(static_cast<unsigned char>(cur_.peek()))) return std::nullopt;
    size_t start = cur_.pos;
    while (cur_.pos < cur_.text.size() && std::isdigit(static_cast<unsigned char>(cur_.text[cur_.pos]))) ++cur_.pos;
    std::string digits(cur_.text.substr(start, cur_.pos - start));
    if (digits.size() > 7) return kMaxCoefficient + 1L;
    return std::stol(digits);
  }

  bool consume(char c) {
    cur_.skip_space();
    if (cur_.peek() == c) {
      ++cur_.pos;
      return true;
    }
    return false;
  }

  // complex := '0' | term ('+' term)*
  // term    := [int] ident     ("2 Y" and "2Y" both accepted)
  std::optional<std::vector<Term>> complex() {
    cur_.skip_space();
    std::vector<Term> terms;
    if (cur_.peek() == '0') {
      size_t save = cur_.pos;
      ++cur_.pos;
      cur_.skip_space();
      char next = cur_.peek();
      if (next == '-' || next == '<' || next == ';' || next == '\0') return terms;  // empty complex
      cur_.pos = save;
    }
    while (true) {
      cur_.skip_space();
      int col = cur_.column();
      int coeff = 1;
      if (std::isdigit(static_cast<unsigned char>(cur_.peek()))) {
        auto n = integer();
        if (!n || *n <= 0 || *n > kMaxCoefficient) {
          error(col, "stoichiometric coefficient out of range");
          return std::nullopt;
        }
        coeff = static_cast<int>(*n);
      }
      auto name = ident();
      if (!name) {
        error(cur_.column(), "expected species name");
        return std::nullopt;
      }
      terms.push_back({coeff, *name, col});
      if (!consume('+')) break;
    }
    return terms;
  }

  // arrow := '->' | '<->'
  std::optional<bool> arrow() {
    cur_.skip_space();
    if (cur_.peek() == '<') {
      if (cur_.text.substr(cur_.pos, 3) == "<->") {
        cur_.pos += 3;
        return true;
      }
      error(cur_.column(), "malformed arrow (expected -> or <->)");
      return std::nullopt;
    }
    if (cur_.text.substr(cur_.pos, 2) == "->") {
      cur_.pos += 2;
      return false;
    }
    error(cur_.column(), "expected -> or <-> after reactant complex");
    return std::nullopt;
  }

  std::optional<RawRate> rate_token() {
    cur_.skip_space();
    int col = cur_.column();
    size_t start = cur_.pos;
    while (cur_.pos < cur_.text.size()) {
      char c = cur_.text[cur_.pos];
      if (c == ',' || c == ' ' || c == '\t' || c == '\r') break;
      ++cur_.pos;
    }
    if (cur_.pos == start) {
      error(col, "expected rate constant");
      return std::nullopt;
    }
    return RawRate{std::string(cur_.text.substr(start, cur_.pos - start)), col};
  }

  std::optional<RawReaction> reaction() {
    RawReaction r;
    r.line = cur_.line;
    auto lhs = complex();
    if (!lhs) return std::nullopt;
    auto rev = arrow();
    if (!rev) return std::nullopt;
    r.reversible = *rev;
    auto rhs = complex();
    if (!rhs) return std::nullopt;
    r.reactant = std::move(*lhs);
    r.product = std::move(*rhs);
    if (!consume(';')) {
      error(cur_.column(), "expected ';' before rate constants");
      return std::nullopt;
    }
    auto first = rate_token();
    if (!first) return std::nullopt;
    r.rates.push_back(*first);
    if (consume(',')) {
      auto second = rate_token();
      if (!second) return std::nullopt;
      r.rates.push_back(*second);
    }
    if (!cur_.done()) {
      error(cur_.column(), "unexpected trailing text");
      return std::nullopt;
    }
    size_t want = r.reversible ? 2 : 1;
    if (r.rates.size() != want) {
      error(r.rates.back().column,
            r.reversible ? "reversible reaction needs two rate constants" : "irreversible reaction takes one rate constant");
      return std::nullopt;
    }
    return r;
  }

  // name=value pairs separated by commas
  void params_into(std::vector<RawParam>& out) {
    while (true) {
      cur_.skip_space();
      if (cur_.done()) break;
      auto name = ident();
      if (!name) {
        error(cur_.column(), "expected parameter name");
        return;
      }
      if (!consume('=')) {
        error(cur_.column(), "expected '=' in parameter definition");
        return;
      }
      cur_.skip_space();
      int vcol = cur_.column();
      size_t start = cur_.pos;
      while (cur_.pos < cur_.text.size() && cur_.text[cur_.pos] != ',' && cur_.text[cur_.pos] != ' ' &&
             cur_.text[cur_.pos] != '\t')
        ++cur_.pos;
      std::string value(cur_.text.substr(start, cur_.pos - start));
      out.push_back({*name, RawRate{value, vcol}, cur_.line});
      if (!consume(',')) {
        if (!cur_.done()) error(cur_.column(), "expected ',' between parameters");
        break;
      }
    }
  }

  // comma-separated identifiers
  void species_into(std::vector<std::pair<std::string, int>>& out) {
    while (true) {
      cur_.skip_space();
      if (cur_.done()) break;
      int col = cur_.column();
      auto name = ident();
      if (!name) {
        error(cur_.column(), "expected species name");
        return;
      }
      out.push_back({*name, col});
      if (!consume(',')) {
        if (!cur_.done()) error(cur_.column(), "expected ',' between species names");
        break;
      }
    }
  }

 private:
  Cursor cur_;
  std::vector<ParseDiagnostic>& diags_;
};

}  // namespace

ParseResult parse_network(std::string_view text, std::string_view origin) {
  ParseResult result;
  result.origin = std::string(origin);
  auto& diags = result.diagnostics;

  std::vector<std::pair<std::string, int>> declared_species;  // name, column
  std::vector<RawParam> raw_params;
  std::vector<RawReaction> raw_reactions;
  bool species_pinned = false;
  int species_header_line = 0;

  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    ++line_no;
    pos = eol + 1;

    auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    size_t content = line.find_first_not_of(" \t\r");
    if (content == std::string_view::npos) {
      if (eol == text.size()) break;
      continue;
    }

    LineParser lp(line, line_no, diags);
    if (line.substr(content).rfind("species:", 0) == 0) {
      LineParser body(line.substr(content + 8), line_no, diags);
      if (species_pinned)
        diags.push_back({line_no, static_cast<int>(content) + 1, "duplicate species: header",
                         ParseDiagnostic::Severity::Error});
      species_pinned = true;
      species_header_line = line_no;
      std::vector<std::pair<std::string, int>> names;
      body.species_into(names);
      for (auto& n : names) declared_species.push_back(std::move(n));
    } else if (line.substr(content).rfind("params:", 0) == 0) {
      LineParser body(line.substr(content + 7), line_no, diags);
      body.params_into(raw_params);
    } else {
      auto r = lp.reaction();
      if (r) raw_reactions.push_back(std::move(*r));
    }
    if (eol == text.size()) break;
  }

  // resolve parameters
  std::vector<std::pair<std::string, Rational>> parameters;
  std::map<std::string, Rational> param_map;
  for (const auto& p : raw_params) {
    if (param_map.count(p.name)) {
      diags.push_back({p.line, p.value.column, "duplicate parameter: " + p.name, ParseDiagnostic::Severity::Error});
      continue;
    }
    auto value = parse_rational(p.value.token);
    if (!value) {
      diags.push_back(
          {p.line, p.value.column, "malformed parameter value: " + p.value.token, ParseDiagnostic::Severity::Error});
      continue;
    }
    if (*value <= 0) {
      diags.push_back(
          {p.line, p.value.column, "nonpositive rate constant: " + p.name, ParseDiagnostic::Severity::Error});
      continue;
    }
    param_map[p.name] = *value;
    parameters.push_back({p.name, *value});
  }

  // species registry: header first, then first mention
  std::vector<Species> species;
  std::map<std::string, int> index;
  auto register_species = [&](const std::string& name) -> int {
    auto it = index.find(name);
    if (it != index.end()) return it->second;
    int idx = static_cast<int>(species.size());
    species.push_back({name, idx});
    index[name] = idx;
    return idx;
  };
  for (const auto& [name, col] : declared_species) {
    if (index.count(name))
      diags.push_back(
          {species_header_line, col, "duplicate species in header: " + name, ParseDiagnostic::Severity::Error});
    else
      register_species(name);
  }
  for (const auto& r : raw_reactions) {
    for (const auto& t : r.reactant) {
      if (species_pinned && !index.count(t.name))
        diags.push_back({r.line, t.column, "species not in header: " + t.name, ParseDiagnostic::Severity::Error});
      else
        register_species(t.name);
    }
    for (const auto& t : r.product) {
      if (species_pinned && !index.count(t.name))
        diags.push_back({r.line, t.column, "species not in header: " + t.name, ParseDiagnostic::Severity::Error});
      else
        register_species(t.name);
    }
  }
  const int d = static_cast<int>(species.size());

  auto build_complex = [&](const std::vector<Term>& terms) {
    Complex c;
    c.coeffs.assign(d, 0);
    for (const auto& t : terms) {
      auto it = index.find(t.name);
      if (it != index.end()) c.coeffs[it->second] += t.coeff;
    }
    return c;
  };

  auto resolve_rate = [&](const RawRate& raw, int line) -> std::optional<RateConstant> {
    if (is_ident_start(raw.token.empty() ? '\0' : raw.token[0])) {
      auto it = param_map.find(raw.token);
      if (it == param_map.end()) {
        diags.push_back({line, raw.column, "unresolved parameter name: " + raw.token,
                         ParseDiagnostic::Severity::Error});
        return std::nullopt;
      }
      return RateConstant{it->second, raw.token};
    }
    auto value = parse_rational(raw.token);
    if (!value) {
      diags.push_back({line, raw.column, "malformed rate constant: " + raw.token, ParseDiagnostic::Severity::Error});
      return std::nullopt;
    }
    if (*value <= 0) {
      diags.push_back({line, raw.column, "nonpositive rate constant", ParseDiagnostic::Severity::Error});
      return std::nullopt;
    }
    return RateConstant{*value, std::nullopt};
  };

  std::vector<Reaction> reactions;
  std::set<std::pair<std::vector<int>, std::vector<int>>> edges;
  auto add_reaction = [&](Complex reactant, Complex product, const RawRate& raw, int line) {
    auto rate = resolve_rate(raw, line);
    if (!rate) return;
    if (reactant == product) {
      diags.push_back({line, 1, "reactant and product complexes are identical", ParseDiagnostic::Severity::Error});
      return;
    }
    if (!edges.insert({reactant.coeffs, product.coeffs}).second) {
      diags.push_back({line, 1, "duplicate reaction edge", ParseDiagnostic::Severity::Error});
      return;
    }
    reactions.push_back({std::move(reactant), std::move(product), *rate});
  };

  for (const auto& r : raw_reactions) {
    Complex lhs = build_complex(r.reactant);
    Complex rhs = build_complex(r.product);
    add_reaction(lhs, rhs, r.rates[0], r.line);
    if (r.reversible) add_reaction(rhs, lhs, r.rates[1], r.line);
  }

  if (result.has_errors()) return result;
  if (species.empty() && reactions.empty() && raw_reactions.empty()) {
    diags.push_back({1, 1, "empty network description", ParseDiagnostic::Severity::Error});
    return result;
  }

  try {
    result.network.emplace(std::move(species), std::move(reactions), std::move(parameters));
  } catch (const NetworkError& e) {
    diags.push_back({1, 1, e.what(), ParseDiagnostic::Severity::Error});
  }
  return result;
}

std::string serialize(const ReactionNetwork& net) {
  std::ostringstream out;
  out << "species: ";
  for (int i = 0; i < net.species_count(); ++i) {
    if (i) out << ", ";
    out << net.species_name(i);
  }
  out << "\n";
  for (const Reaction& r : net.reactions()) {
    out << r.reactant.to_string(net.species()) << " -> " << r.product.to_string(net.species()) << " ; ";
    if (r.rate.name)
      out << *r.rate.name;
    else
      out << to_string(r.rate.value);
    out << "\n";
  }
  if (!net.parameters().empty()) {
    out << "params: ";
    bool first = true;
    for (const auto& [name, value] : net.parameters()) {
      if (!first) out << ", ";
      first = false;
      out << name << "=" << to_string(value);
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace crnrob
