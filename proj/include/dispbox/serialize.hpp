#pragma once

#include <string>

#include <json.hpp>

#include "dispbox/construction.hpp"
#include "dispbox/coverfree.hpp"
#include "dispbox/dispersion.hpp"

namespace dispbox {

nlohmann::json to_json(const AxisBox& b);
nlohmann::json to_json(const DispersionResult& r);
nlohmann::json to_json(const TestBoxSpec& s);
nlohmann::json to_json(const CoverFreeCertificate& c);
nlohmann::json to_json(const BoundValue& v);
nlohmann::json to_json(const ReductionReport& r);

// SetFamily file format: {"ground_size": m, "sets": [[indices...], ...]}.
nlohmann::json to_json(const SetFamily& f);
SetFamily set_family_from_json(const nlohmann::json& j);
SetFamily load_set_family(const std::string& path);
void save_set_family(const SetFamily& f, const std::string& path);

}  // namespace dispbox
