#include "dispbox/serialize.hpp"

#include <fstream>

#include "dispbox/errors.hpp"

namespace dispbox {

using nlohmann::json;

json to_json(const AxisBox& b) {
  return json{{"lo", b.lo()}, {"hi", b.hi()}};
}

json to_json(const DispersionResult& r) {
  return json{{"value", r.value},
              {"witness", to_json(r.witness)},
              {"mode", to_string(r.mode)},
              {"boxes_examined", r.boxes_examined},
              {"seconds", r.seconds}};
}

json to_json(const TestBoxSpec& s) {
  return json{{"d", s.d},
              {"k", s.k},
              {"A", s.large_axes},
              {"j", s.small_axis},
              {"volume", test_box_volume(s).to_double()},
              {"volume_exact", test_box_volume(s).to_string()}};
}

json to_json(const CoverFreeCertificate& c) {
  json cover_numbers = json::array();
  for (const auto& cr : c.per_j) {
    if (cr.number.has_value())
      cover_numbers.push_back(*cr.number);
    else
      cover_numbers.push_back(nullptr);  // uncoverable
  }
  json refutation = nullptr;
  if (c.refuting_j.has_value())
    refutation = json{{"j", *c.refuting_j}, {"A", c.refuting_cover}};
  return json{{"r", c.r},
              {"verdict", c.certified ? "certified" : "refuted"},
              {"refutation", refutation},
              {"per_j_cover_numbers", cover_numbers}};
}

json to_json(const BoundValue& v) {
  return json{{"name", v.name},
              {"value", v.value},
              {"kind", v.is_lower ? "lower" : "upper"},
              {"constant", v.paper_constant ? "paper-specified" : "caller-supplied"},
              {"note", v.note}};
}

json to_json(const ReductionReport& r) {
  json bounds{{"main_lower", r.main_lower}, {"trivial", r.trivial_lower}};
  bounds["ahr"] = r.ahr_lower ? json(*r.ahr_lower) : json(nullptr);
  bounds["intermediate_aa"] = r.intermediate_aa ? json(*r.intermediate_aa) : json(nullptr);
  json verdict{{"exceeds_main", r.exceeds_main}, {"exceeds_trivial", r.exceeds_trivial}};
  verdict["exceeds_ahr"] = r.exceeds_ahr ? json(*r.exceeds_ahr) : json(nullptr);
  verdict["exceeds_intermediate"] =
      r.exceeds_intermediate ? json(*r.exceeds_intermediate) : json(nullptr);
  json out{{"d", r.d},
           {"eps", r.eps},
           {"k", r.k},
           {"r", r.r},
           {"family_size", r.family_size},
           {"n", r.n},
           {"hits_all", r.hits_all},
           {"bounds", bounds},
           {"verdict", verdict},
           {"claim2_violation", r.claim2_violation}};
  out["missing_box"] = r.missing_box ? to_json(*r.missing_box) : json(nullptr);
  out["certificate"] = r.certificate ? to_json(*r.certificate) : json(nullptr);
  return out;
}

json to_json(const SetFamily& f) {
  return json{{"ground_size", f.ground_size}, {"sets", f.sets}};
}

SetFamily set_family_from_json(const json& j) {
  SetFamily f;
  try {
    f.ground_size = j.at("ground_size").get<int>();
    f.sets = j.at("sets").get<std::vector<std::vector<int>>>();
  } catch (const json::exception& e) {
    throw usage_error(std::string("malformed set family JSON: ") + e.what());
  }
  f.validate();
  return f;
}

SetFamily load_set_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot open family file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw usage_error(path + ": " + e.what());
  }
  return set_family_from_json(j);
}

void save_set_family(const SetFamily& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw usage_error("cannot open output file: " + path);
  out << to_json(f).dump(2) << "\n";
}

}  // namespace dispbox
