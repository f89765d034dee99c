#ifndef EGOSKILL_GRASP_HPP
#define EGOSKILL_GRASP_HPP

#include <Eigen/Core>
#include <string>
#include <vector>

#include "egoskill/math/camera.hpp"
#include "egoskill/math/se3.hpp"

namespace egoskill {

/// A predicted task-relevant contact location: source pixel, metric depth,
/// and the back-projected camera-frame 3D point.
struct AffordancePoint {
  Eigen::Vector2d pixel = Eigen::Vector2d::Zero();
  double depth = 0.0;
  Eigen::Vector3d point3d_cam = Eigen::Vector3d::Zero();
  std::string task_text;
};

/// A scored gripper pose proposal in camera coordinates. The translation is
/// the gripper center (not a fingertip).
struct GraspCandidate {
  Pose6d pose_cam;
  double score = 0.0;
  double width = 0.0;
};

enum class SelectionMode {
  kAffordanceFused,      // nearest-to-contact among candidates above threshold
  kBestScoreOnly,        // highest score, contact point ignored
  kContactPointDirect,   // pose at the contact point, caller's orientation
};

/// Dense metric depth image, row-major, indexed as (x, y) = (column, row).
struct DepthMap {
  int width = 0;
  int height = 0;
  std::vector<double> data;

  double at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
};

/// Median depth over a patch x patch window centered on the pixel, clamped
/// to the map borders. Non-positive entries are excluded; throws
/// NonPositiveDepth when the whole patch is invalid.
double patchMedianDepth(const DepthMap& depth, int u, int v, int patch = 5);

/// Builds an AffordancePoint by reading the patch-median depth at the pixel
/// and back-projecting through the camera intrinsics.
AffordancePoint makeAffordancePoint(const CameraFramed& cam, double u, double v,
                                    const DepthMap& depth,
                                    const std::string& task_text);

/// Chooses a grasp pose.
///
/// kAffordanceFused: among candidates with score >= score_threshold, minimize
/// distance from candidate translation to aff.point3d_cam; ties prefer the
/// higher score, then the lower input index. kBestScoreOnly: maximize score
/// (ties to the lower index); the contact point and threshold play no part.
/// kContactPointDirect: pose at aff.point3d_cam with the supplied
/// initial_gripper_orientation; candidates may be empty.
///
/// Throws NoViableGrasp when the feasible set is empty in the first two modes.
Pose6d selectGrasp(const AffordancePoint& aff,
                   const std::vector<GraspCandidate>& candidates,
                   SelectionMode mode, double score_threshold,
                   const Eigen::Vector3d& initial_gripper_orientation);

/// Straight-line approach to a grasp: waypoints from the standoff pose
/// (retracted by standoff along the gripper's local +z, its approach axis)
/// down to the grasp pose, spaced at most `step` apart, constant
/// orientation, last waypoint exactly grasp_pose.
std::vector<Pose6d> planLinearApproach(const Pose6d& grasp_pose,
                                       double standoff = 0.10,
                                       double step = 0.01);

}  // namespace egoskill

#endif  // EGOSKILL_GRASP_HPP
