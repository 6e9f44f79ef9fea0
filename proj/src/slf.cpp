#include "flatlat/slf.hpp"

#include <sstream>
#include <unordered_map>

namespace flatlat {

namespace {

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> tokens;
  std::istringstream in{std::string(line)};
  for (std::string token; in >> token;) tokens.push_back(std::move(token));
  return tokens;
}

std::string quoted(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

SlfDocument parse_slf_document(std::string_view text) {
  SlfDocument doc;
  std::size_t line_number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_number;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tokens = tokenize(line);
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (tokens[0] == "elements") {
      if (tokens.size() == 1) throw ParseError(line_number, "'elements' needs at least one label");
      for (std::size_t k = 1; k < tokens.size(); ++k) {
        doc.names.push_back(tokens[k]);
        doc.name_lines.push_back(line_number);
      }
    } else if (tokens[0] == "le") {
      if (tokens.size() != 3) throw ParseError(line_number, "'le' takes exactly two labels");
      doc.relations.push_back({tokens[1], tokens[2], line_number});
    } else {
      throw ParseError(line_number, "unknown directive '" + tokens[0] + "'");
    }
    if (end == text.size()) break;
  }
  if (doc.names.empty()) throw ParseError(line_number, "no 'elements' line");
  return doc;
}

FiniteJoinSemilattice to_semilattice(const SlfDocument& doc, const SizeGuard& guard) {
  const std::size_t n = doc.names.size();
  std::unordered_map<std::string, std::size_t> index_of;
  for (std::size_t k = 0; k < n; ++k) {
    if (!index_of.emplace(doc.names[k], k).second) {
      throw ParseError(doc.name_lines[k], "duplicate label '" + doc.names[k] + "'", ErrorCode::DuplicateLabel);
    }
  }
  const std::size_t first_line = doc.name_lines.front();
  if (n > guard.max_size) {
    throw ParseError(first_line,
                     std::to_string(n) + " elements exceed the size guard of " + std::to_string(guard.max_size),
                     ErrorCode::SizeGuardExceeded);
  }

  std::vector<ElementSet> up(n, ElementSet(n));
  for (std::size_t k = 0; k < n; ++k) up[k].set(k);
  for (const auto& rel : doc.relations) {
    for (const auto* label : {&rel.lower, &rel.upper}) {
      if (!index_of.contains(*label)) {
        throw ParseError(rel.line, "undeclared label '" + *label + "'", ErrorCode::UnknownLabel);
      }
    }
  }
  // Add relations one at a time so a cycle is reported at the line closing it.
  for (const auto& rel : doc.relations) {
    const std::size_t lo = index_of.at(rel.lower);
    const std::size_t hi = index_of.at(rel.upper);
    if (lo != hi && up[hi].test(lo)) {
      throw ParseError(rel.line, "'" + rel.lower + "' <= '" + rel.upper + "' closes a cycle",
                       ErrorCode::CycleDetected);
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (up[k].test(lo)) up[k] |= up[hi];
    }
  }

  // Transitive reduction: x < y with nothing strictly between.
  std::vector<std::pair<std::string, std::string>> covers;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y || !up[x].test(y)) continue;
      bool direct = true;
      for (std::size_t z = 0; z < n && direct; ++z) {
        if (z != x && z != y && up[x].test(z) && up[z].test(y)) direct = false;
      }
      if (direct) covers.emplace_back(doc.names[x], doc.names[y]);
    }
  }
  try {
    return from_covers(doc.names, covers, guard);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(first_line, e.what(), e.code());
  }
}

std::string write_slf(const FiniteJoinSemilattice& s) {
  std::string out = "elements";
  for (const auto& name : s.names()) out += " " + name;
  out += '\n';
  for (const auto& [lo, hi] : s.covers()) out += "le " + s.name(lo) + " " + s.name(hi) + "\n";
  return out;
}

std::string emit_dot(const FiniteJoinSemilattice& s, std::string_view graph_name) {
  std::string out = "digraph " + quoted(graph_name) + " {\n";
  out += "  rankdir=BT;\n";
  out += "  node [shape=plaintext];\n";
  for (Index x = 0; x < s.size(); ++x) {
    out += "  n" + std::to_string(x) + " [label=" + quoted(s.name(x)) + "];\n";
  }
  for (const auto& [lo, hi] : s.covers()) {
    out += "  n" + std::to_string(lo) + " -> n" + std::to_string(hi) + ";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace flatlat
