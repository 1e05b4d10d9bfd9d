#pragma once

#include <random>
#include <string>

#include "gpm/config.hpp"
#include "gpm/error.hpp"
#include "gpm/wordcraft.hpp"

namespace gpm::testing {

inline std::string scenario_path(const std::string& name) { return std::string(GPM_SCENARIO_DIR) + "/" + name; }

inline Scenario load(const std::string& name) { return load_scenario(scenario_path(name + ".json")).scenario; }

/// Uniform letters, identities included, so the word need not be reduced.
inline LetterSeq random_word(const GraphProduct& gp, int len, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> vert(0, gp.vertex_count() - 1);
  LetterSeq w;
  for (int i = 0; i < len; ++i) {
    const int v = vert(rng);
    std::uniform_int_distribution<int> el(0, gp.group(v).order() - 1);
    w.push_back({v, el(rng)});
  }
  return w;
}

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return static_cast<ErrorCode>(-1);
}

}  // namespace gpm::testing
