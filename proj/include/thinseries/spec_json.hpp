#ifndef THINSERIES_SPEC_JSON_HPP
#define THINSERIES_SPEC_JSON_HPP

#include <fstream>
#include <string>

#include <json.hpp>

#include "thinseries/error.hpp"
#include "thinseries/spec.hpp"

namespace thinseries {

// Spec document:
//   {"A": {"explicit": [1,3], "tails": [[5,2]]},
//    "B": {"explicit": [2]},
//    "b": 1, "r": 2}
// "tails" entries are [start, step] pairs; "b" and "r" default to 1 and 2.

inline SizeSet size_set_from_json(const nlohmann::json& j, const char* name) {
  if (j.is_null()) return SizeSet{};
  if (!j.is_object())
    throw Error("invalid_spec", std::string(name) + " must be an object");
  std::vector<long> explicit_values;
  std::vector<Progression> tails;
  if (j.contains("explicit")) {
    for (const auto& v : j.at("explicit")) {
      if (!v.is_number_integer())
        throw Error("invalid_spec",
                    std::string(name) + ".explicit entries must be integers");
      explicit_values.push_back(v.get<long>());
    }
  }
  if (j.contains("tails")) {
    for (const auto& t : j.at("tails")) {
      if (!t.is_array() || t.size() != 2)
        throw Error("invalid_spec",
                    std::string(name) + ".tails entries must be [start, step]");
      tails.push_back(Progression{t.at(0).get<long>(), t.at(1).get<long>()});
    }
  }
  return SizeSet(std::move(explicit_values), std::move(tails));
}

inline ThinnedSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("invalid_spec", "spec must be a JSON object");
  SizeSet a = size_set_from_json(j.value("A", nlohmann::json()), "A");
  SizeSet b = size_set_from_json(j.value("B", nlohmann::json()), "B");
  long stretch_b = j.value("b", 1L);
  long stretch_r = j.value("r", 2L);
  return ThinnedSpec(std::move(a), std::move(b), stretch_b, stretch_r);
}

inline ThinnedSpec parse_spec(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw Error("invalid_spec", "spec document is not valid JSON");
  return spec_from_json(j);
}

inline ThinnedSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("invalid_spec", "cannot open spec file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_spec(text);
}

inline nlohmann::json size_set_to_json(const SizeSet& s) {
  nlohmann::json j = nlohmann::json::object();
  j["explicit"] = s.explicit_values();
  auto tails = nlohmann::json::array();
  for (const Progression& t : s.tails()) tails.push_back({t.start, t.step});
  j["tails"] = tails;
  return j;
}

inline nlohmann::json spec_to_json(const ThinnedSpec& spec) {
  nlohmann::json j;
  j["A"] = size_set_to_json(spec.A());
  j["B"] = size_set_to_json(spec.B());
  j["b"] = spec.b();
  j["r"] = spec.r();
  return j;
}

} // namespace thinseries

#endif
