#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gdiscord/discord.hpp"
#include "gdiscord/symplectic.hpp"

namespace gdiscord {

// One of three ways to describe the input state:
//   {"standard": {"a":..., "b":..., "c":..., "d":...}}
//   {"cov": [16 numbers, row-major]}            (nested 4x4 also accepted)
//   {"family": {"variant": "symmetric_t", "a":..., "t":...}}
struct StateSpec {
  std::optional<StandardFormParams> standard;
  std::optional<TwoModeCov> cov;
  std::optional<FamilyParams> family;
};

StateSpec parse_state_spec(const std::string& text);
StateSpec load_state_spec(const std::string& path);

// Builds the covariance and rejects unphysical input, naming the violated
// symplectic eigenvalue.
TwoModeCov realize_state(const StateSpec& spec);

const char* family_name(Family f);
Family family_from_name(const std::string& name);
std::vector<std::string> family_param_names(Family f);
FamilyParams make_family(const std::string& variant,
                         const std::map<std::string, double>& params);
// swept parameter when none is named explicitly: t, q, s per variant
std::string default_sweep_param(Family f);
FamilyParams with_param(FamilyParams fp, const std::string& name, double value);

// locale-independent %.12g
std::string format_g12(double v);

}  // namespace gdiscord
