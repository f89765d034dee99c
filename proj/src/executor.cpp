#include "egoskill/executor.hpp"

#include "egoskill/errors.hpp"
#include "egoskill/grasp.hpp"

namespace egoskill {

std::vector<Pose6d> cameraToRobotChunk(const ActionChunk& chunk,
                                       const Calibration& calib) {
  std::vector<Pose6d> out;
  const std::vector<Pose6d> decoded = decodeChunk(chunk);
  out.reserve(decoded.size());
  for (const Pose6d& pose_cam : decoded) {
    out.push_back(toPose(compose(calib.camera_to_robot, toTransform(pose_cam))));
  }
  return out;
}

namespace {

// Scene-derived grasp proposals in camera coordinates: the task's tool part
// as the strong candidate plus every other object as a weak distractor.
void runGraspPhase(SimScene* scene, const TaskSpec& task,
                   const Calibration& calib, const EpisodeOptions& opts,
                   RolloutResult* result) {
  const RigidTransformd world_to_camera = invert(calib.camera_to_robot);
  const auto it = scene->objects.find(task.tool_id);
  if (it == scene->objects.end()) {
    throw InfeasibleTask("scene has no tool object '" + task.tool_id + "'");
  }
  const Pose6d tool_cam =
      toPose(compose(world_to_camera, toTransform(partPose(it->second))));

  std::vector<GraspCandidate> candidates;
  candidates.push_back(GraspCandidate{tool_cam, 0.9, 0.06});
  for (const auto& [id, obj] : scene->objects) {
    if (id == task.tool_id) continue;
    const Pose6d other =
        toPose(compose(world_to_camera, toTransform(partPose(obj))));
    candidates.push_back(GraspCandidate{other, 0.25, 0.06});
  }

  AffordancePoint aff;
  aff.point3d_cam = tool_cam.translation;
  aff.depth = tool_cam.translation.z();
  aff.task_text = skillName(task.skill);

  const Pose6d grasp_cam =
      selectGrasp(aff, candidates, SelectionMode::kAffordanceFused,
                  opts.grasp_score_threshold, tool_cam.euler);
  const std::vector<Pose6d> approach = planLinearApproach(grasp_cam);
  for (std::size_t i = 0; i < approach.size(); ++i) {
    const Pose6d target =
        toPose(compose(calib.camera_to_robot, toTransform(approach[i])));
    const GripperCommand cmd = (i + 1 == approach.size())
                                   ? GripperCommand::kClose
                                   : GripperCommand::kHold;
    *scene = step(*scene, target, cmd, opts.sim);
    ++result->grasp_steps;
  }
  if (!scene->attachment || scene->attachment->object_id != task.tool_id) {
    throw InfeasibleTask("approach failed to grasp '" + task.tool_id + "'");
  }
}

}  // namespace

RolloutResult runEpisode(const PolicyFn& policy, SimScene scene,
                         const TaskSpec& task, const Calibration& calib,
                         const FeatureVec& goal_feature,
                         const EpisodeOptions& opts) {
  if (opts.budget < 0) throw Error("budget must be nonnegative");
  if (opts.chunk_length < 1) throw Error("chunk_length must be positive");

  RolloutResult result;
  if (opts.full_pipeline) {
    runGraspPhase(&scene, task, calib, opts, &result);
  }

  const RigidTransformd world_to_camera = invert(calib.camera_to_robot);
  CameraFramed camera;
  camera.world_to_camera = world_to_camera;

  result.success = success(scene, task);
  const int n = opts.chunk_length;
  while (!result.success && result.steps + n <= opts.budget) {
    PolicyQuery query;
    query.obs_feature = featureVector(scene, camera, opts.feature_dim);
    query.goal_feature = goal_feature;
    query.current_pose =
        toPose(compose(world_to_camera, toTransform(scene.gripper_pose)));
    const ActionChunk chunk = policy(query);
    if (static_cast<int>(chunk.n()) != n) {
      throw BadWindowLength(chunk.n(), static_cast<std::size_t>(n));
    }
    ++result.inference_calls;

    int executed = 0;
    for (const Pose6d& target : cameraToRobotChunk(chunk, calib)) {
      scene = step(scene, target, GripperCommand::kClose, opts.sim);
      ++result.steps;
      ++executed;
      result.pose_log.push_back(scene.gripper_pose);
      if (success(scene, task)) {
        result.success = true;
        break;
      }
    }
    result.steps_per_query.push_back(executed);
  }

  result.final_scene = std::move(scene);
  return result;
}

}  // namespace egoskill
