#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "realform/decide.hpp"

namespace realform::cli {

using nlohmann::json;

// Thrown for malformed documents; maps to exit code 2.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputDocument {
  int k = 0;
  std::vector<CMatrix> matrices;
  json tolerances = json::object();
};

InputDocument parse_input(const json& doc);
InputDocument read_input(const std::string& path);
json read_json(const std::string& path);

CMatrix parse_matrix(const json& rows, int k);
json to_json(cplx z);
json to_json(const CMatrix& M);
json input_document(int k, const std::vector<CMatrix>& Ms);

// Applies {"deg_tol": ..., ...}; unknown keys are a parse error.
void apply_tolerances(Tolerances& tol, const json& overrides);

json to_json(const Decision& d);
json to_json(const SpectralClass& sc, const EigenSystem& es);

// Sorted keys, two-space indent, floats as %.17g, non-finite floats as null.
std::string dump(const json& j);

}  // namespace realform::cli
