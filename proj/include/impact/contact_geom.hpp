#pragma once

#include <variant>

#include "impact/types.hpp"

namespace impact {

/// Rigid half-plane {y : y.normal >= -boundary_height}; normal points into
/// the foundation. With normal (0,-1) the foundation is {x2 <= boundary_height}.
struct HalfPlane {
  double boundary_height = 0.0;
  Vec2 inward_normal{0.0, -1.0};
};

using RigidFoundation = std::variant<HalfPlane>;

/// Unit vector pointing into the foundation.
Vec2 foundation_normal(const RigidFoundation& foundation);

/// Closest point of the foundation boundary to a deformed position.
Vec2 closest_point(const RigidFoundation& foundation, const Vec2& position);

/// Signed normal gap; positive means the point penetrates the foundation.
double gap(const RigidFoundation& foundation, const Vec2& position);

/// (I - n n^T) v for a unit normal n.
Vec2 tangential_velocity(const Vec2& velocity, const Vec2& normal);

}  // namespace impact
