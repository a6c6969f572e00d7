#pragma once

#include <json.hpp>

#include "mft/catalan.hpp"
#include "mft/kontsevich.hpp"
#include "mft/quartic_finite.hpp"

namespace mft {

using nlohmann::json;

json to_json(const MomentPolynomial& p);
json to_json(const LaurentExpr& e);
json to_json(const FreeEnergy& f);
json to_json(const IntersectionTable& t);
json to_json(const ExpansionMonomial& m);

std::string intersection_key(const std::vector<int>& k);

json spectrum_to_json(const Spectrum& s);
Spectrum spectrum_from_json(const json& j);
Spectrum load_spectrum(const std::string& path);

} // namespace mft
