#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "corrpoly/scenario.hpp"

namespace corrpoly {

/// ch, ghz26, two-by-three, bell-wigner, ghz-singles-triples. Joint order
/// follows the published listings.
std::vector<std::string> preset_names();

/// Throws Error(Parse) for an unknown name.
Scenario preset(std::string_view name);

}  // namespace corrpoly
