#pragma once

#include <string>

#include "json.hpp"
#include "mhad/solver.hpp"

namespace mhad {

// {"n", "m", "outcome": "exists" | "not_exists", "recipe" | "obstruction"}.
// Every recipe and design-source object carries a "kind" discriminator.
nlohmann::json certificate_to_json(const Certificate& certificate);
nlohmann::json recipe_to_json(const Recipe& recipe);
nlohmann::json obstruction_to_json(const Obstruction& obstruction);

// Throws Error(Parse) on malformed documents.
Certificate certificate_from_json(const nlohmann::json& doc);

// Pretty-printed with sorted keys and a trailing newline.
std::string serialize_certificate(const Certificate& certificate);

}  // namespace mhad
