#ifndef EGOSKILL_MATH_CAMERA_HPP
#define EGOSKILL_MATH_CAMERA_HPP

#include <Eigen/Core>
#include <cstdint>

#include "egoskill/errors.hpp"
#include "egoskill/math/se3.hpp"

namespace egoskill {

/// Pinhole intrinsics plus the world-to-camera extrinsic for one frame.
/// Camera convention: x right, y down, z forward (points in front of the
/// camera have positive z in camera coordinates).
template <typename Scalar>
struct CameraFrame {
  std::int64_t frame_id = 0;
  Scalar fx = Scalar(1);
  Scalar fy = Scalar(1);
  Scalar cx = Scalar(0);
  Scalar cy = Scalar(0);
  RigidTransform<Scalar> world_to_camera;

  RigidTransform<Scalar> cameraToWorld() const { return invert(world_to_camera); }
};

using CameraFramed = CameraFrame<double>;

/// Back-projects pixel (u, v) at metric depth z into camera coordinates.
/// Throws NonPositiveDepth for z <= 0 and NonFiniteInput for bad values.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> liftPixel(const CameraFrame<Scalar>& cam, Scalar u,
                                      Scalar v, Scalar z) {
  if (!std::isfinite(u) || !std::isfinite(v) || !std::isfinite(z)) {
    throw NonFiniteInput("liftPixel: non-finite pixel or depth");
  }
  if (z <= Scalar(0)) {
    throw NonPositiveDepth(static_cast<double>(z));
  }
  return {(u - cam.cx) / cam.fx * z, (v - cam.cy) / cam.fy * z, z};
}

/// Projects a camera-space point to pixel coordinates.
/// Throws NonPositiveDepth when the point is at or behind the camera plane.
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 1> projectPoint(const CameraFrame<Scalar>& cam,
                                         const Eigen::Matrix<Scalar, 3, 1>& p) {
  if (p.z() <= Scalar(0)) {
    throw NonPositiveDepth(static_cast<double>(p.z()));
  }
  return {cam.fx * p.x() / p.z() + cam.cx, cam.fy * p.y() / p.z() + cam.cy};
}

}  // namespace egoskill

#endif  // EGOSKILL_MATH_CAMERA_HPP
