#include "evo1d/document.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "evo1d/error.hpp"

namespace evo1d {

namespace {

using nlohmann::json;

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

const json& require(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing key '") + key + "'");
  return *it;
}

Field field_from_json(const json& d) {
  if (d.is_string()) return Field::parse(d.get<std::string>());
  if (!d.is_object()) throw ParseError("field descriptor must be an object");
  const json& kind = require(d, "kind");
  if (!kind.is_string()) throw ParseError("field 'kind' must be a string");
  const auto k = kind.get<std::string>();
  if (k == "finite") {
    const json& p = require(d, "p");
    if (!p.is_number_unsigned()) throw ParseError("field 'p' must be a positive integer");
    unsigned deg = 1;
    if (auto it = d.find("deg"); it != d.end()) {
      if (!it->is_number_unsigned()) throw ParseError("field 'deg' must be 1 or 2");
      deg = it->get<unsigned>();
    }
    return Field::finite(p.get<unsigned>(), deg);
  }
  if (k == "rational") {
    auto it = d.find("mode");
    if (it == d.end())
      throw UnsupportedField("rational field without a mode: choose \"real\" or \"quadratic-closure\"");
    if (!it->is_string()) throw ParseError("field 'mode' must be a string");
    const auto m = it->get<std::string>();
    if (m == "real" || m == "real-closure") return Field::rationals(RationalMode::Real);
    if (m == "quadratic-closure") return Field::rationals(RationalMode::QuadraticClosure);
    throw UnsupportedField("unknown rational mode '" + m + "'");
  }
  throw UnsupportedField("unknown field kind '" + k + "'");
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string what = e.what();
    if (auto pos = what.find("parse error"); pos != std::string::npos) {
      const auto colon = what.find(": ", pos);
      what = colon == std::string::npos ? what.substr(pos) : what.substr(colon + 2);
    }
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
  }
}

std::string quote(const std::string& s) { return json(s).dump(); }

}  // namespace

AlgebraDocument parse_document(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("algebra document must be a JSON object");
  const Field field = field_from_json(require(doc, "field"));
  const json& dim = require(doc, "dim");
  if (!dim.is_number_unsigned() || dim.get<std::size_t>() == 0) throw ParseError("'dim' must be a positive integer");
  const std::size_t n = dim.get<std::size_t>();
  const json& rows = require(doc, "structure");
  if (!rows.is_array() || rows.size() != n)
    throw ParseError("'structure' must be an array of " + std::to_string(n) + " rows");
  Matrix c(field, n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const json& row = rows[r];
    if (!row.is_array() || row.size() != n)
      throw ParseError("structure row " + std::to_string(r + 1) + ": expected " + std::to_string(n) + " entries");
    for (std::size_t k = 0; k < n; ++k) {
      const json& cell = row[k];
      std::string text_cell;
      if (cell.is_string()) {
        text_cell = cell.get<std::string>();
      } else if (cell.is_number_integer()) {
        text_cell = cell.dump();
      } else {
        throw ParseError("structure row " + std::to_string(r + 1) + ", column " + std::to_string(k + 1) +
                         ": expected a scalar string");
      }
      try {
        c(r, k) = parse_scalar(text_cell, field);
      } catch (const ParseError& e) {
        throw ParseError("structure row " + std::to_string(r + 1) + ", column " + std::to_string(k + 1) + ": " +
                         e.what());
      } catch (const DivisionByZero&) {
        throw ParseError("structure row " + std::to_string(r + 1) + ", column " + std::to_string(k + 1) +
                         ": zero denominator");
      }
    }
  }
  std::optional<std::string> label;
  if (auto it = doc.find("label"); it != doc.end()) {
    if (!it->is_string()) throw ParseError("'label' must be a string");
    label = it->get<std::string>();
  }
  return {field, EvolutionAlgebra::validate(field, n, c), label};
}

AlgebraDocument load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

std::string field_descriptor(const Field& f) {
  if (f.is_rational())
    return std::string("{\"kind\": \"rational\", \"mode\": \"") +
           (f.mode() == RationalMode::Real ? "real" : "quadratic-closure") + "\"}";
  return "{\"kind\": \"finite\", \"p\": " + std::to_string(f.prime()) + ", \"deg\": " + std::to_string(f.degree()) +
         "}";
}

Field parse_field_descriptor(std::string_view json_text) { return field_from_json(parse_json(json_text)); }

std::string write_document(const EvolutionAlgebra& a, const std::optional<std::string>& label) {
  std::ostringstream os;
  os << "{\n  \"field\": " << field_descriptor(a.field()) << ",\n  \"dim\": " << a.dim()
     << ",\n  \"structure\": [\n";
  for (std::size_t r = 0; r < a.dim(); ++r) {
    os << "    [";
    for (std::size_t k = 0; k < a.dim(); ++k) {
      if (k) os << ", ";
      os << quote(a.structure()(r, k).to_string());
    }
    os << "]" << (r + 1 < a.dim() ? "," : "") << "\n";
  }
  os << "  ]";
  if (label) os << ",\n  \"label\": " << quote(*label);
  os << "\n}\n";
  return os.str();
}

}  // namespace evo1d
