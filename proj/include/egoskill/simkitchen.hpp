#ifndef EGOSKILL_SIMKITCHEN_HPP
#define EGOSKILL_SIMKITCHEN_HPP

#include <Eigen/Core>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "egoskill/egolift.hpp"
#include "egoskill/math/camera.hpp"
#include "egoskill/math/se3.hpp"
#include "egoskill/skills.hpp"

namespace egoskill {

enum class JointType { kPrismatic, kRevolute };

/// A 1-DOF articulation. The handle is the graspable part; its world pose at
/// joint value q is derived from handle_home (the pose at q = 0):
/// prismatic handles translate by q along the axis, revolute handles rotate
/// by q about the hinge line through pivot.
struct Articulation {
  JointType type = JointType::kPrismatic;
  Eigen::Vector3d axis = Eigen::Vector3d::UnitX();
  Eigen::Vector3d pivot = Eigen::Vector3d::Zero();
  double q_min = 0.0;
  double q_max = 1.0;
  double q = 0.0;
  Pose6d handle_home;
};

struct SimObject {
  Pose6d pose;                        // free/static body pose (world)
  std::optional<Articulation> joint;  // articulated objects; pose is the base
  std::optional<double> fill;         // containers: fill fraction in [0, 1]
  bool graspable = false;
  bool blade = false;     // can cut when attached and swung through a target
  bool cuttable = false;
  bool cut_done = false;
};

/// Rigid weld between the gripper and a grasped part, stored as the part's
/// pose expressed in the gripper frame at attach time.
struct Attachment {
  std::string object_id;
  RigidTransformd gripper_to_part;
};

/// Progress of a circular stirring motion around one container: the signed
/// azimuth accumulated by the held object about the container's vertical
/// axis. Wandering beyond the excursion bound or leaving the tracking zone
/// resets the accumulator, so only compact, sustained motion counts.
struct StirTracker {
  bool active = false;
  double accum = 0.0;
  double last_azimuth = 0.0;
  Eigen::Vector3d anchor = Eigen::Vector3d::Zero();
};

struct SimScene {
  std::map<std::string, SimObject> objects;
  Pose6d gripper_pose;
  bool gripper_closed = false;
  std::optional<Attachment> attachment;
  std::map<std::string, StirTracker> stir;
  std::uint64_t seed = 0;
};

enum class GripperCommand { kOpen, kClose, kHold };

struct SimParams {
  double attach_tolerance = 0.005;       // meters
  double pour_angle = EIGEN_PI / 3;      // tilt beyond this transfers fill
  double pour_rate = 0.05;               // fill fraction per step
  double catch_radius = 0.15;            // xy reach of a receiving container
  double stir_zone = 0.12;               // xy radius around a container center
  double stir_min_radius = 0.005;        // below this azimuth is ill-defined
  double stir_excursion = 0.05;          // anchor ball; leaving resets accum
  double cut_radius = 0.05;              // xy alignment for a cut to count
  double blade_level_tol = EIGEN_PI / 4; // blade axis tilt from horizontal
};

/// Success thresholds and references for one task instance.
struct TaskSpec {
  Skill skill = Skill::kSlideOpen;
  std::string target_id;   // judged object: articulation, picked/placed body,
                           // pour receiver, stirred container, cut target
  std::string tool_id;     // object the gripper must hold (handle for
                           // articulations, cup/spoon/knife otherwise)
  double open_fraction = 0.9;
  double close_fraction = 0.1;
  double lift_height = 0.05;
  double reference_z = 0.0;
  Eigen::Vector3d place_target = Eigen::Vector3d::Zero();
  double place_tolerance = 0.05;
  double pour_gain = 0.3;
  double receiver_initial_fill = 0.0;
  double stir_angle = 2 * EIGEN_PI;
};

RigidTransformd handleTransformAt(const Articulation& joint, double q);

/// World pose of an object's graspable part: the handle for articulated
/// objects, the body origin otherwise.
Pose6d partPose(const SimObject& obj);

/// Advances the scene by one kinematic step.
///
/// Order of effects: (1) the gripper moves — freely to `target`, or, when
/// attached to an articulated handle, by projecting the commanded motion
/// onto the joint's 1-DOF manifold (q updates, the gripper rides the
/// handle); an attached free body follows the gripper rigidly. (2) the
/// command applies: open releases, close attaches the nearest graspable part
/// within attach_tolerance. (3) containers tilted past pour_angle transfer
/// fill toward the nearest lower container within catch_radius. (4) stirring
/// and cutting progress are tracked from the held object's motion.
///
/// Pure function: the input scene is never modified.
SimScene step(const SimScene& scene, const Pose6d& target, GripperCommand cmd,
              const SimParams& params = {});

bool success(const SimScene& scene, const TaskSpec& task);

/// A scripted ground-truth demonstration: per-step gripper targets plus a
/// smooth egocentric camera path of equal length (frame ids 0, 1, ...).
/// Replaying the targets through step() with a persistent close command
/// completes the task.
struct ScriptedDemo {
  std::vector<Pose6d> gripper;
  std::vector<CameraFramed> cameras;
};

ScriptedDemo scriptedDemo(const TaskSpec& task, const SimScene& scene,
                          const SimParams& params = {});

/// Replays gripper targets with a persistent close command. When `states` is
/// non-null it receives the scene after every step.
SimScene replayDemo(SimScene scene, const std::vector<Pose6d>& targets,
                    const SimParams& params = {},
                    std::vector<SimScene>* states = nullptr);

/// One step that grasps the task's tool: the gripper teleports onto the
/// part and closes, so post-grasp policies can start from a held state.
SimScene attachForTask(const SimScene& scene, const TaskSpec& task,
                       const SimParams& params = {});

struct DetectionNoise {
  double pose_noise_std = 0.0;   // meters on translation, radians on rotation
  double dropout = 0.0;          // i.i.d. per-frame drop probability
};

struct RenderedClip {
  std::vector<HandDetection> detections;
  std::vector<CameraFramed> cameras;
  std::vector<Eigen::VectorXd> features;  // one per frame, kept on dropout
};

/// Replays the demo against the scene and renders what a hand detector and
/// camera-calibration pipeline would output: per-frame camera-coordinate
/// gripper poses with additive noise (gaussian translation, gaussian
/// axis-angle rotation), frames dropped i.i.d., plus per-frame observation
/// feature vectors (see featureVector). Deterministic given the seed.
RenderedClip renderDetections(const SimScene& scene,
                              const std::vector<Pose6d>& gripper_traj,
                              const std::vector<CameraFramed>& camera_traj,
                              const DetectionNoise& noise, std::uint64_t seed,
                              int feature_dim = 32,
                              const SimParams& params = {});

/// The observation feature vector: a fixed function of scene state expressed
/// in the given camera's coordinates. Layout (default d = 32):
///   [0:3)  gripper translation          [3:6)  gripper orientation (Euler)
///   [6]    1 if holding something        [7]    normalized q of the held
///                                              articulation, else 0
///   two lowest-id articulated objects, 8 slots each:
///     handle translation (3), handle minus gripper translation (3),
///     normalized q (1), joint type 0/1 (1)
///   two lowest-id non-articulated objects, 4 slots each:
///     translation (3), fill fraction or 0 (1)
/// Entries beyond the layout are zero; the layout is truncated at d.
Eigen::VectorXd featureVector(const SimScene& scene, const CameraFramed& cam,
                              int d = 32);

/// A randomized scene/task pair for one skill, plus the fixed camera an
/// evaluation episode observes through.
struct TaskSetup {
  SimScene scene;
  TaskSpec task;
  CameraFramed eval_camera;
};

TaskSetup makeTaskScene(Skill skill, std::uint64_t seed);

}  // namespace egoskill

#endif  // EGOSKILL_SIMKITCHEN_HPP
