#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dstab/matrix.hpp"

namespace dstab {

// One matrix cell: a concrete rational or a named parameter placeholder.
using Cell = std::variant<Rational, std::string>;

// A square matrix template with optional named parameters.  Two input
// syntaxes parse into this: a JSON object {"n", "entries", "parameters"}
// and plain CSV (concrete values only).
struct MatrixDocument {
  int n = 0;
  std::vector<Cell> cells;                  // row-major, size n*n
  std::vector<std::string> parameters;      // declared names, document order

  bool concrete() const;
  // Substitutes parameter values (all placeholders must be bound).
  Matrix bind(const std::map<std::string, Rational>& values) const;
  // Shortcut for documents without parameters.
  Matrix to_matrix() const;

  friend bool operator==(const MatrixDocument& a, const MatrixDocument& b) {
    return a.n == b.n && a.cells == b.cells && a.parameters == b.parameters;
  }
};

// Parses a scalar cell: exact rational literal ("-3", "5/4", "0.25", with
// U+2212 accepted as minus) or, when `allow_names` and the token is an
// identifier, a parameter reference.
Cell parse_cell(std::string_view token, bool allow_names);

// Sniffs the syntax (leading '{' means JSON) and parses.  JSON documents
// may declare parameters; CSV documents are concrete.  Entries given as
// JSON numbers must be integers -- non-integer literals must be quoted
// strings so they stay exact.
MatrixDocument parse_matrix_document(const std::string& text);

MatrixDocument parse_matrix_json(const std::string& text);
MatrixDocument parse_matrix_csv(const std::string& text);

// Canonical JSON serialization; parse(serialize(doc)) == doc.
std::string serialize_matrix_document(const MatrixDocument& doc);

// FNV-1a 64-bit digest of the canonical serialization, rendered as
// "fnv1a64:<16 hex digits>".
std::string document_digest(const MatrixDocument& doc);

}  // namespace dstab
