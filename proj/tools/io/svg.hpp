#pragma once

#include <optional>
#include <string>

#include "toric/geography.hpp"

namespace toric::io {

struct SvgOptions {
  std::optional<BoundaryArc> arc;  // traced and its link vertices numbered
  std::string title;
};

/// 800x800 picture of a slice: chambers filled by model, E(B) outlined in bold.
/// Coordinates are rounded for display; the JSON stays exact.
std::string render_svg(const GeographySlice& slice, const SvgOptions& options = {});

}  // namespace toric::io
