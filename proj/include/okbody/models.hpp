// Built-in models: surfaces and Mori dream threefolds with exact chamber,
// intersection and flag data derived from the defining geometry.
#pragma once

#include <map>
#include <string>

#include "okbody/surface.hpp"
#include "okbody/threefold.hpp"

namespace okb {

using Params = std::map<std::string, Rational>;

struct SurfacePackage {
  SurfaceModel model;
  SurfaceFlag flag;
};

std::vector<std::string> builtin_surface_names();
std::vector<std::string> builtin_threefold_names();

// Throws ModelError for unknown names or unsupported parameter values.
SurfacePackage builtin_surface(const std::string& name, const Params& params);
ThreefoldModel builtin_threefold(const std::string& name, const Params& params);

}  // namespace okb
