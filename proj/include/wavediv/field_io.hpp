#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "wavediv/field.hpp"

namespace wavediv {

/// Field file schema:
///   {"d": int, "Jmax": int, "s": float, "p": float|"inf", "q": float|"inf",
///    "entries": [{"i": int, "j": int, "k": [int,...], "v": float}, ...]}
/// Zero-valued entries are omitted on write; the reader rejects duplicate
/// (i, j, k) indices. A "meta" object (run configuration echo) may be present
/// and is preserved verbatim.
nlohmann::ordered_json field_to_json(const CoefficientField& field,
                                     const nlohmann::ordered_json* meta = nullptr);

CoefficientField field_from_json(const nlohmann::json& doc);

void write_field(std::ostream& os, const CoefficientField& field,
                 const nlohmann::ordered_json* meta = nullptr);
CoefficientField read_field(std::istream& is);

CoefficientField read_field_file(const std::string& path);
void write_field_file(const std::string& path, const CoefficientField& field,
                      const nlohmann::ordered_json* meta = nullptr);

/// Helpers shared by the covering / config serializers: p and q print as a
/// number or the string "inf".
nlohmann::ordered_json exponent_to_json(double v);
double exponent_from_json(const nlohmann::json& v);

}  // namespace wavediv
