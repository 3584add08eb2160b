#pragma once

// Thresholds recorded by prerun_fixtures (see tests/prerun_fixtures.cpp).

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#ifndef NILOSC_FIXTURE_DIR
#error "NILOSC_FIXTURE_DIR must point at tests/fixtures"
#endif

namespace fixtures {

inline const nlohmann::json& prerun() {
  static const nlohmann::json doc = [] {
    const std::string path = std::string(NILOSC_FIXTURE_DIR) + "/prerun.json";
    std::ifstream in(path);
    if (!in) throw std::runtime_error("missing fixture file " + path + " (run prerun_fixtures)");
    return nlohmann::json::parse(in);
  }();
  return doc;
}

}  // namespace fixtures
