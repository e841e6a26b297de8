#pragma once

#include <optional>

#include "ratnest/surface.hpp"

namespace ratnest {

/// Genus-0 rotation system for g, or nullopt when g is not planar.
std::optional<RotationSystem> planar_embed(const Graph& g);

bool is_planar(const Graph& g);

}  // namespace ratnest
