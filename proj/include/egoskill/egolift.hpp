#ifndef EGOSKILL_EGOLIFT_HPP
#define EGOSKILL_EGOLIFT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "egoskill/math/camera.hpp"
#include "egoskill/math/se3.hpp"

namespace egoskill {

/// One hand detection: the wrist pose expressed in that frame's camera
/// coordinates plus a detector confidence in [0, 1].
struct HandDetection {
  std::int64_t frame_id = 0;
  Pose6d wrist_pose_cam;
  double confidence = 1.0;
};

struct TimedPose {
  std::int64_t frame_id = 0;
  Pose6d pose;
};

/// Inclusive frame-id range whose poses were produced by interpolation
/// rather than observed.
struct GapFill {
  std::int64_t first = 0;
  std::int64_t last = 0;
};

/// A world-frame wrist trajectory recovered from one contiguous stretch of
/// detections. frame_ids are strictly increasing and consecutive (interior
/// gaps are filled; fills are listed in source_gaps).
struct WristTrajectory {
  std::string clip_id;
  std::vector<TimedPose> poses;
  std::vector<GapFill> source_gaps;
};

/// Maps a camera-frame wrist detection into the world frame:
/// invert(world_to_camera) ∘ wrist_pose_cam.
/// Throws FrameMismatch when det and cam disagree on the frame id.
Pose6d liftFrame(const HandDetection& det, const CameraFramed& cam);

/// Lifts a whole clip. Detections with confidence below min_confidence are
/// dropped. Interior gaps of at most max_gap missing frames are filled by
/// linear translation blend and constant-angular-velocity rotation blend
/// between the neighboring lifted poses; larger gaps split the clip into
/// separate trajectories.
///
/// Throws MissingCamera when a surviving detection has no camera record and
/// EmptyClip when nothing survives the confidence filter.
std::vector<WristTrajectory> liftClip(const std::string& clip_id,
                                      std::vector<HandDetection> dets,
                                      const std::vector<CameraFramed>& cams,
                                      double min_confidence = 0.5,
                                      std::int64_t max_gap = 5);

/// Re-expresses the window of poses at positions t..t+n (inclusive, n+1
/// poses) in the coordinates of the camera at position t:
/// world_to_camera(t) ∘ pose_i.
///
/// t and n index positions within traj.poses, not raw frame ids.
/// Throws WindowOutOfRange when the window exceeds the trajectory and
/// MissingCamera when no camera record matches the frame at position t.
std::vector<Pose6d> reexpressWindow(const WristTrajectory& traj,
                                    const std::vector<CameraFramed>& cams,
                                    std::size_t t, std::size_t n);

}  // namespace egoskill

#endif  // EGOSKILL_EGOLIFT_HPP
