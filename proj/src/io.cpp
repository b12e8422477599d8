#include "dstab/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <sstream>

namespace dstab {

using ordered_json = nlohmann::ordered_json;

bool MatrixDocument::concrete() const {
  for (const Cell& c : cells) {
    if (std::holds_alternative<std::string>(c)) return false;
  }
  return true;
}

Matrix MatrixDocument::bind(const std::map<std::string, Rational>& values) const {
  Matrix m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Cell& c = cells[static_cast<std::size_t>(i) * n + j];
      if (const Rational* r = std::get_if<Rational>(&c)) {
        m.at(i, j) = *r;
      } else {
        const std::string& name = std::get<std::string>(c);
        const auto it = values.find(name);
        if (it == values.end()) {
          throw ParseError("unbound parameter '" + name + "'");
        }
        m.at(i, j) = it->second;
      }
    }
  }
  return m;
}

Matrix MatrixDocument::to_matrix() const { return bind({}); }

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

Cell parse_cell(std::string_view token, bool allow_names) {
  const std::string t = trim(token);
  if (t.empty()) throw ParseError("empty matrix entry");
  if (is_identifier(t)) {
    if (!allow_names) {
      throw ParseError("unparseable scalar '" + t + "' (parameters are not allowed here)");
    }
    return Cell(t);
  }
  return Cell(Rational::parse(t));
}

MatrixDocument parse_matrix_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("matrix document must be a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer()) {
    throw ParseError("matrix document needs an integer field \"n\"");
  }
  const int n = j["n"].get<int>();
  if (n < 1 || n > kMaxDim) {
    throw ParseError("matrix dimension out of range: " + std::to_string(n));
  }
  if (!j.contains("entries") || !j["entries"].is_array() ||
      static_cast<int>(j["entries"].size()) != n) {
    throw ParseError("\"entries\" must be an array of " + std::to_string(n) + " rows");
  }

  MatrixDocument doc;
  doc.n = n;
  if (j.contains("parameters")) {
    if (!j["parameters"].is_object()) {
      throw ParseError("\"parameters\" must be an object mapping names");
    }
    for (const auto& [name, value] : j["parameters"].items()) {
      if (!is_identifier(name)) {
        throw ParseError("invalid parameter name '" + name + "'");
      }
      (void)value;  // reserved for metadata; contents are not interpreted
      doc.parameters.push_back(name);
    }
  }

  for (const auto& row : j["entries"]) {
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw ParseError("matrix rows must all have length " + std::to_string(n));
    }
    for (const auto& cell : row) {
      if (cell.is_string()) {
        Cell c = parse_cell(cell.get<std::string>(), /*allow_names=*/true);
        if (const std::string* name = std::get_if<std::string>(&c)) {
          if (std::find(doc.parameters.begin(), doc.parameters.end(), *name) ==
              doc.parameters.end()) {
            throw ParseError("unknown placeholder '" + *name +
                             "' (not declared under \"parameters\")");
          }
        }
        doc.cells.push_back(std::move(c));
      } else if (cell.is_number_integer()) {
        doc.cells.push_back(Cell(Rational(static_cast<long>(cell.get<std::int64_t>()))));
      } else if (cell.is_number()) {
        throw ParseError(
            "non-integer JSON number in entries; quote it as a string "
            "(e.g. \"0.25\") so the value stays exact");
      } else {
        throw ParseError("matrix entries must be strings or integers");
      }
    }
  }
  return doc;
}

MatrixDocument parse_matrix_csv(const std::string& text) {
  std::vector<std::vector<Cell>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    std::vector<Cell> row;
    std::istringstream cells(line);
    std::string token;
    while (std::getline(cells, token, ',')) {
      row.push_back(parse_cell(token, /*allow_names=*/false));
    }
    if (line.back() == ',') throw ParseError("trailing comma in CSV row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("empty CSV matrix");
  const int n = static_cast<int>(rows.size());
  if (n > kMaxDim) {
    throw ParseError("matrix dimension out of range: " + std::to_string(n));
  }
  MatrixDocument doc;
  doc.n = n;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n) {
      throw ParseError("CSV matrix must be square (got a row of length " +
                       std::to_string(row.size()) + " for n=" + std::to_string(n) + ")");
    }
    for (const Cell& c : row) doc.cells.push_back(c);
  }
  return doc;
}

MatrixDocument parse_matrix_document(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' ? parse_matrix_json(text) : parse_matrix_csv(text);
  }
  throw ParseError("empty matrix document");
}

std::string serialize_matrix_document(const MatrixDocument& doc) {
  ordered_json j;
  j["n"] = doc.n;
  ordered_json entries = ordered_json::array();
  for (int i = 0; i < doc.n; ++i) {
    ordered_json row = ordered_json::array();
    for (int jx = 0; jx < doc.n; ++jx) {
      const Cell& c = doc.cells[static_cast<std::size_t>(i) * doc.n + jx];
      if (const Rational* r = std::get_if<Rational>(&c)) {
        row.push_back(r->str());
      } else {
        row.push_back(std::get<std::string>(c));
      }
    }
    entries.push_back(std::move(row));
  }
  j["entries"] = std::move(entries);
  ordered_json params = ordered_json::object();
  for (const std::string& p : doc.parameters) params[p] = nullptr;
  j["parameters"] = std::move(params);
  return j.dump();
}

std::string document_digest(const MatrixDocument& doc) {
  const std::string bytes = serialize_matrix_document(doc);
  std::uint64_t hash = 0xCBF29CE484222325ull;
  for (unsigned char b : bytes) {
    hash ^= b;
    hash *= 0x100000001B3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return std::string("fnv1a64:") + buf;
}

}  // namespace dstab
