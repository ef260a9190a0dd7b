#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "evo1d/evolution.hpp"

namespace evo1d {

/// JSON algebra file: {"field": {...}, "dim": n, "structure": [[...], ...], "label": "..."}.
/// Row i of the structure matrix holds the coordinates of e_i².
struct AlgebraDocument {
  Field field;
  EvolutionAlgebra algebra;
  std::optional<std::string> label;
};

/// Throws ParseError (with line/column for JSON syntax, row/column for
/// scalars), UnsupportedField, or RankError.
AlgebraDocument parse_document(std::string_view text);
AlgebraDocument load_document(const std::string& path);

/// Deterministic text: one structure row per line, canonical scalar strings.
std::string write_document(const EvolutionAlgebra& a, const std::optional<std::string>& label = std::nullopt);

/// {"kind":"finite","p":3,"deg":2} or {"kind":"rational","mode":"real"}.
std::string field_descriptor(const Field& f);
Field parse_field_descriptor(std::string_view json_text);

}  // namespace evo1d
