#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flatlat/error.hpp"
#include "flatlat/semilattice.hpp"

namespace flatlat {

/// A parsed SLF file before validation.
///
/// Grammar, one directive per line, `#` starts a comment:
///
///     elements <label>...
///     le <lower> <upper>
struct SlfDocument {
  struct Relation {
    std::string lower;
    std::string upper;
    std::size_t line = 0;
  };

  std::vector<std::string> names;
  std::vector<std::size_t> name_lines;
  std::vector<Relation> relations;
};

/// Syntax only; throws ParseError with the offending line.
SlfDocument parse_slf_document(std::string_view text);

/// Builds the semilattice from the transitive reduction of the declared
/// relation. Construction errors are rethrown as ParseError carrying the
/// source line and the original ErrorCode as `cause()`.
FiniteJoinSemilattice to_semilattice(const SlfDocument& doc, const SizeGuard& guard = {});

inline FiniteJoinSemilattice parse_slf(std::string_view text, const SizeGuard& guard = {}) {
  return to_semilattice(parse_slf_document(text), guard);
}

/// `elements` in index order followed by one `le` line per cover pair.
std::string write_slf(const FiniteJoinSemilattice& s);

/// Hasse diagram in DOT syntax, drawn bottom to top.
std::string emit_dot(const FiniteJoinSemilattice& s, std::string_view graph_name = "semilattice");

}  // namespace flatlat
