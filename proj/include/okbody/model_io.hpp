// ModelFile (de)serialization: JSON documents describing surface or threefold
// models, with rationals written as integers or "p/q" strings.
#pragma once

#include <optional>
#include <string>

#include "okbody/models.hpp"

namespace okb {

struct LoadedModel {
  std::optional<ThreefoldModel> threefold;
  std::optional<SurfacePackage> surface;
};

std::string export_surface_json(const SurfaceModel& model,
                                const SurfaceFlag& flag);
std::string export_threefold_json(const ThreefoldModel& model);

// Parses and fully validates; throws ModelError on malformed input.
LoadedModel load_model_json(const std::string& text);

}  // namespace okb
