#pragma once

#include "lscat/io.hpp"

#include <memory>
#include <string>

#ifndef LSCAT_FIXTURE_DIR
#error "LSCAT_FIXTURE_DIR must point at the bundled fixtures directory"
#endif

namespace testing_support {

inline std::string fixture(const std::string& relative) { return std::string(LSCAT_FIXTURE_DIR) + "/" + relative; }

inline lscat::ComplexPtr complex(const std::string& name) {
  return lscat::load_complex(fixture("complexes/" + name + ".json"));
}

/// Loads a bundled map together with the complexes it refers to.
inline std::shared_ptr<const lscat::SimplicialMap> map(const std::string& name) {
  const auto j = lscat::read_json(fixture("maps/" + name + ".json"));
  lscat::ComplexRegistry reg;
  for (const char* key : {"source", "target"}) {
    const auto c = j.at("map").at(key).get<std::string>();
    reg[c] = complex(c);
  }
  return std::make_shared<const lscat::SimplicialMap>(lscat::map_from_json(j, reg, name));
}

}  // namespace testing_support
