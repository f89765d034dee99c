#pragma once

#include <functional>
#include <vector>

#include "egoskill/retrieval.hpp"
#include "egoskill/simkitchen.hpp"

namespace egoskill {

/// Fixed extrinsic between the evaluation camera and the robot base. Acting
/// on a camera-frame pose yields the same pose in the robot (world) frame.
struct Calibration {
  RigidTransformd camera_to_robot;
};

using PolicyFn = std::function<ActionChunk(const PolicyQuery&)>;

struct EpisodeOptions {
  int budget = 200;          // maximum policy-driven environment steps
  int chunk_length = 10;     // n; every returned chunk must have this length
  int feature_dim = 32;
  bool full_pipeline = false;  // grasp selection + approach before the loop
  double grasp_score_threshold = 0.2;
  SimParams sim;
};

struct RolloutResult {
  bool success = false;
  int steps = 0;            // environment steps driven by policy chunks
  int inference_calls = 0;
  int grasp_steps = 0;      // approach steps taken in full-pipeline mode
  std::vector<int> steps_per_query;  // env steps after each policy call
  std::vector<Pose6d> pose_log;      // world gripper pose after each step
  SimScene final_scene;
};

/// Decodes a chunk in camera coordinates and maps every pose into the robot
/// frame through the calibration transform.
std::vector<Pose6d> cameraToRobotChunk(const ActionChunk& chunk,
                                       const Calibration& calib);

/// Chunk-by-chunk deployment loop. Each iteration reads the scene state
/// (features and gripper pose in camera coordinates), queries the policy
/// once, and executes all n returned actions through step(), stopping early
/// only on success or when fewer than n steps of budget remain. The goal
/// feature is passed through to every query unchanged.
///
/// The default entry assumes the tool is already grasped; with
/// opts.full_pipeline the episode first selects a grasp for the task's tool
/// from scene-derived candidates and walks a linear approach onto it.
RolloutResult runEpisode(const PolicyFn& policy, SimScene scene,
                         const TaskSpec& task, const Calibration& calib,
                         const FeatureVec& goal_feature,
                         const EpisodeOptions& opts = {});

}  // namespace egoskill
