#pragma once

// JSON file formats: pure states as {"n", "d", "amplitudes": [[re, im], ...]}
// in flat-index order, and codes as {"d", "n", "codewords": [[digits], ...]}.

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qent/codes.hpp"
#include "qent/core.hpp"

namespace qent {

inline nlohmann::json state_to_json(const PureState& s) {
  nlohmann::json amps = nlohmann::json::array();
  for (const auto& z : s.amplitudes) amps.push_back({z.real(), z.imag()});
  return {{"n", s.n}, {"d", s.d}, {"amplitudes", std::move(amps)}};
}

inline PureState state_from_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  const int d = j.at("d").get<int>();
  std::vector<cplx> amps;
  for (const auto& a : j.at("amplitudes"))
    amps.emplace_back(a.at(0).get<double>(), a.at(1).get<double>());
  return PureState(n, d, std::move(amps));
}

inline void write_state(const std::string& path, const PureState& s) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << state_to_json(s).dump() << "\n";
}

inline PureState read_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open state file: " + path);
  nlohmann::json j;
  in >> j;
  return state_from_json(j);
}

inline nlohmann::json code_to_json(const LinearCode& c) {
  nlohmann::json words = nlohmann::json::array();
  for (const auto& w : c.codewords) words.push_back(w.digits);
  return {{"d", c.d}, {"n", c.n}, {"codewords", std::move(words)}};
}

inline LinearCode code_from_json(const nlohmann::json& j) {
  LinearCode c;
  c.d = j.at("d").get<int>();
  c.n = j.at("n").get<int>();
  for (const auto& w : j.at("codewords"))
    c.codewords.emplace_back(c.d, w.get<std::vector<int>>());
  return c;
}

}  // namespace qent
