#pragma once

#include "nilp2/formmodule.hpp"
#include "nilp2/oracle.hpp"

#include <json.hpp>

namespace nilp2 {

using ordered_json = nlohmann::ordered_json;

/// Row-major hex-coefficient array; the field tag travels separately.
ordered_json matrix_json(const Mat& m);

/// Synthesized module: field header, dimension, form matrix, endomorphism,
/// symbol and mask bookkeeping.
ordered_json module_json(const FormModule& m, const Symbol& s, const std::string& mask);

/// Census payload: header fields, per-symbol orbit sizes, totals, verdict.
ordered_json census_json(const OrbitCensus& census, const CensusComparison& cmp);

} // namespace nilp2
