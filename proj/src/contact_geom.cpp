#include "impact/contact_geom.hpp"

namespace impact {

Vec2 foundation_normal(const RigidFoundation& foundation) {
  return std::get<HalfPlane>(foundation).inward_normal;
}

Vec2 closest_point(const RigidFoundation& foundation, const Vec2& position) {
  const auto& plane = std::get<HalfPlane>(foundation);
  return position - gap(foundation, position) * plane.inward_normal;
}

double gap(const RigidFoundation& foundation, const Vec2& position) {
  const auto& plane = std::get<HalfPlane>(foundation);
  return position.dot(plane.inward_normal) + plane.boundary_height;
}

Vec2 tangential_velocity(const Vec2& velocity, const Vec2& normal) {
  return velocity - normal.dot(velocity) * normal;
}

}  // namespace impact
