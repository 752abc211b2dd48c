#pragma once

#include <qinterp/qsim.hpp>
#include <qinterp/rational.hpp>
#include <qinterp/zmap.hpp>

#include <json.hpp>

namespace qinterp {

inline constexpr int kSchemaVersion = 1;

// {"exact": "num/den", "value": <double>}
nlohmann::json rational_json(const Rational& r);

nlohmann::json params_json(const ProblemParams& params);

// Params, range sizes, histograms as sorted [fiber size, multiplicity] pairs,
// mean and variance per scope, and the wall time.
nlohmann::json census_json(const RangeCensus& census);

// Nonzero amplitudes as [index, real, imag] triples.
nlohmann::json state_json(const StateVector& state);

}  // namespace qinterp
