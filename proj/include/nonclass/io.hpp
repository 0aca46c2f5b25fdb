#pragma once

#include "nonclass/core.hpp"
#include "nonclass/discord.hpp"
#include "nonclass/fano.hpp"
#include "nonclass/measure.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace nonclass {

/// Input that does not follow the JSON state schema.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// { "dim_a": M, "dim_b": N, "matrix": [[re, im], ...] }, (MN)^2 row-major entries.
nlohmann::json state_to_json(const DensityOperator& rho);

/// Throws FormatError for schema problems and InvalidState for matrices that
/// are not density operators.
DensityOperator state_from_json(const nlohmann::json& j);
DensityOperator read_state_file(const std::string& path);

nlohmann::json generator_basis_to_json(const GeneratorBasis& basis);
/// r_a, r_b, T plus both index maps so T's rows and columns are labelled.
nlohmann::json fano_to_json(const FanoForm& f);

nlohmann::json measure_result_to_json(const MeasureResult& r);

/// { "D": x, "discord": y, "classical_basis_found": bool, "defect": z }.
nlohmann::json report_to_json(const ClassificationReport& r);

}  // namespace nonclass
