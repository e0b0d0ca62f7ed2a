#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>
#include <variant>

#include "supercf/classify.hpp"
#include "supercf/mf.hpp"

namespace supercf {

/// Malformed input documents; the message carries position or field context.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::json;

/// One parsed input document.
struct Document {
  enum class Kind { CfAlgebra, Elementary, MatrixFactorizationDoc } kind;
  CFData cf;                // CfAlgebra
  ElementaryParams params;  // Elementary
  MatrixFactorization mf;   // MatrixFactorizationDoc
};

Document parse_document(const std::string& text);

Json algebra_to_json(const SuperAlgebra& a);
SuperAlgebra algebra_from_json(const Json& j, const std::string& where);

Json cf_to_json(const CFData& cf);
CFData cf_from_json(const Json& j);

Json mf_to_json(const MatrixFactorization& r);
MatrixFactorization mf_from_json(const Json& j);

Json elementary_to_json(const ElementaryParams& p);
ElementaryParams elementary_from_json(const Json& j);

Json report_to_json(const CheckReport& r);
Json classification_to_json(const ClassificationReport& r);
Json dao_to_json(const DaoResult& d);

std::string report_to_text(const CheckReport& r);
std::string classification_to_text(const ClassificationReport& r);
std::string dao_to_text(const DaoResult& d);

/// Canonical machine serialization (sorted keys, two-space indent, trailing
/// newline); parsing and re-serializing is byte-identical.
std::string dump_machine(const Json& j);

}  // namespace supercf
