#include "egoskill/grasp.hpp"

#include <algorithm>
#include <cmath>

#include "egoskill/errors.hpp"

namespace egoskill {

double patchMedianDepth(const DepthMap& depth, int u, int v, int patch) {
  const int r = patch / 2;
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(patch) * patch);
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      const int x = std::clamp(u + dx, 0, depth.width - 1);
      const int y = std::clamp(v + dy, 0, depth.height - 1);
      const double z = depth.at(x, y);
      if (z > 0.0 && std::isfinite(z)) values.push_back(z);
    }
  }
  if (values.empty()) throw NonPositiveDepth(0.0);
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  if (values.size() % 2 == 1) return values[mid];
  const double upper = values[mid];
  std::nth_element(values.begin(), values.begin() + mid - 1, values.begin() + mid);
  return (values[mid - 1] + upper) / 2.0;
}

AffordancePoint makeAffordancePoint(const CameraFramed& cam, double u, double v,
                                    const DepthMap& depth,
                                    const std::string& task_text) {
  AffordancePoint aff;
  aff.pixel = Eigen::Vector2d(u, v);
  aff.depth = patchMedianDepth(depth, static_cast<int>(std::lround(u)),
                               static_cast<int>(std::lround(v)));
  aff.point3d_cam = liftPixel(cam, u, v, aff.depth);
  aff.task_text = task_text;
  return aff;
}

Pose6d selectGrasp(const AffordancePoint& aff,
                   const std::vector<GraspCandidate>& candidates,
                   SelectionMode mode, double score_threshold,
                   const Eigen::Vector3d& initial_gripper_orientation) {
  switch (mode) {
    case SelectionMode::kContactPointDirect:
      return Pose6d(aff.point3d_cam, initial_gripper_orientation);

    case SelectionMode::kBestScoreOnly: {
      if (candidates.empty()) throw NoViableGrasp();
      std::size_t best = 0;
      for (std::size_t i = 1; i < candidates.size(); ++i) {
        if (candidates[i].score > candidates[best].score) best = i;
      }
      return candidates[best].pose_cam;
    }

    case SelectionMode::kAffordanceFused: {
      bool found = false;
      std::size_t best = 0;
      double best_dist = 0.0;
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (candidates[i].score < score_threshold) continue;
        const double dist =
            (candidates[i].pose_cam.translation - aff.point3d_cam).norm();
        if (!found || dist < best_dist ||
            (dist == best_dist && candidates[i].score > candidates[best].score)) {
          found = true;
          best = i;
          best_dist = dist;
        }
      }
      if (!found) throw NoViableGrasp();
      return candidates[best].pose_cam;
    }
  }
  throw Error("unknown selection mode");
}

std::vector<Pose6d> planLinearApproach(const Pose6d& grasp_pose, double standoff,
                                       double step) {
  if (standoff <= 0.0 || step <= 0.0) {
    throw Error("approach standoff and step must be positive");
  }
  const Eigen::Vector3d approach =
      eulerToMatrix(grasp_pose.euler) * Eigen::Vector3d::UnitZ();
  const int segments = static_cast<int>(std::ceil(standoff / step - 1e-12));
  std::vector<Pose6d> waypoints;
  waypoints.reserve(segments + 1);
  for (int k = 0; k < segments; ++k) {
    const double retreat = standoff * (1.0 - static_cast<double>(k) / segments);
    waypoints.emplace_back(grasp_pose.translation - retreat * approach,
                           grasp_pose.euler);
  }
  waypoints.push_back(grasp_pose);
  return waypoints;
}

}  // namespace egoskill
