#pragma once

#include <optional>
#include <span>
#include <string>

#include "flow/composition.hpp"
#include "flow/value.hpp"

namespace flow {

/// Graphviz rendering of the bipartite graph. Data are small circles filled
/// by token state (New blue, Old green, Void white); operators are larger
/// labeled circles.
std::string to_dot(const Composition& comp,
                   std::optional<std::span<const TokenState>> marking = std::nullopt);

}  // namespace flow
