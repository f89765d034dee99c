#include "egoskill/egolift.hpp"

#include <algorithm>
#include <unordered_map>

namespace egoskill {

namespace {

std::unordered_map<std::int64_t, const CameraFramed*> indexCameras(
    const std::vector<CameraFramed>& cams) {
  std::unordered_map<std::int64_t, const CameraFramed*> by_frame;
  by_frame.reserve(cams.size());
  for (const auto& cam : cams) by_frame[cam.frame_id] = &cam;
  return by_frame;
}

Pose6d blendPoses(const Pose6d& a, const Pose6d& b, double s) {
  const Eigen::Vector3d t = (1.0 - s) * a.translation + s * b.translation;
  const Eigen::Matrix3d r =
      slerpRotation(eulerToMatrix(a.euler), eulerToMatrix(b.euler), s);
  return Pose6d(t, matrixToEuler(r));
}

}  // namespace

Pose6d liftFrame(const HandDetection& det, const CameraFramed& cam) {
  if (det.frame_id != cam.frame_id) {
    throw FrameMismatch(det.frame_id, cam.frame_id);
  }
  return toPose(compose(cam.cameraToWorld(), toTransform(det.wrist_pose_cam)));
}

std::vector<WristTrajectory> liftClip(const std::string& clip_id,
                                      std::vector<HandDetection> dets,
                                      const std::vector<CameraFramed>& cams,
                                      double min_confidence,
                                      std::int64_t max_gap) {
  std::erase_if(dets, [&](const HandDetection& d) {
    return d.confidence < min_confidence;
  });
  if (dets.empty()) throw EmptyClip(clip_id);
  std::sort(dets.begin(), dets.end(),
            [](const HandDetection& a, const HandDetection& b) {
              return a.frame_id < b.frame_id;
            });
  for (std::size_t i = 1; i < dets.size(); ++i) {
    if (dets[i].frame_id == dets[i - 1].frame_id) {
      throw Error("duplicate detection for frame " +
                  std::to_string(dets[i].frame_id) + " in clip '" + clip_id + "'");
    }
  }

  const auto by_frame = indexCameras(cams);
  auto cameraAt = [&](std::int64_t frame) -> const CameraFramed& {
    const auto it = by_frame.find(frame);
    if (it == by_frame.end()) throw MissingCamera(frame);
    return *it->second;
  };

  std::vector<WristTrajectory> out;
  WristTrajectory cur;
  cur.clip_id = clip_id;
  for (const HandDetection& det : dets) {
    const Pose6d world = liftFrame(det, cameraAt(det.frame_id));
    if (!cur.poses.empty()) {
      const std::int64_t prev = cur.poses.back().frame_id;
      const std::int64_t gap = det.frame_id - prev - 1;
      if (gap > max_gap) {
        out.push_back(std::move(cur));
        cur = WristTrajectory{};
        cur.clip_id = clip_id;
      } else if (gap > 0) {
        const Pose6d a = cur.poses.back().pose;  // copy: push_back may reallocate
        for (std::int64_t m = prev + 1; m < det.frame_id; ++m) {
          const double s = static_cast<double>(m - prev) /
                           static_cast<double>(det.frame_id - prev);
          cur.poses.push_back({m, blendPoses(a, world, s)});
        }
        cur.source_gaps.push_back({prev + 1, det.frame_id - 1});
      }
    }
    cur.poses.push_back({det.frame_id, world});
  }
  out.push_back(std::move(cur));
  return out;
}

std::vector<Pose6d> reexpressWindow(const WristTrajectory& traj,
                                    const std::vector<CameraFramed>& cams,
                                    std::size_t t, std::size_t n) {
  if (t + n >= traj.poses.size()) {
    throw WindowOutOfRange("window [" + std::to_string(t) + ", " +
                           std::to_string(t + n) + "] exceeds trajectory of " +
                           std::to_string(traj.poses.size()) + " poses");
  }
  const auto by_frame = indexCameras(cams);
  const auto it = by_frame.find(traj.poses[t].frame_id);
  if (it == by_frame.end()) throw MissingCamera(traj.poses[t].frame_id);
  const RigidTransformd& world_to_cam = it->second->world_to_camera;

  std::vector<Pose6d> window;
  window.reserve(n + 1);
  for (std::size_t i = t; i <= t + n; ++i) {
    window.push_back(
        toPose(compose(world_to_cam, toTransform(traj.poses[i].pose))));
  }
  return window;
}

}  // namespace egoskill
