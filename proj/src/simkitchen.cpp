#include "egoskill/simkitchen.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "egoskill/errors.hpp"
#include "egoskill/rng.hpp"

namespace egoskill {

namespace {

constexpr double kPi = EIGEN_PI;

Eigen::Vector2d xy(const Eigen::Vector3d& p) { return p.head<2>(); }

double tiltFromVertical(const Eigen::Matrix3d& r) {
  const Eigen::Vector3d up = r * Eigen::Vector3d::UnitZ();
  return std::atan2(up.head<2>().norm(), up.z());
}

const SimObject& objectAt(const SimScene& scene, const std::string& id) {
  const auto it = scene.objects.find(id);
  if (it == scene.objects.end()) {
    throw Error("scene has no object '" + id + "'");
  }
  return it->second;
}

}  // namespace

RigidTransformd handleTransformAt(const Articulation& joint, double q) {
  if (joint.type == JointType::kPrismatic) {
    RigidTransformd t = toTransform(joint.handle_home);
    t.translation += q * joint.axis;
    return t;
  }
  return compose(rotationAboutLine(joint.axis, joint.pivot, q),
                 toTransform(joint.handle_home));
}

Pose6d partPose(const SimObject& obj) {
  if (obj.joint) return toPose(handleTransformAt(*obj.joint, obj.joint->q));
  return obj.pose;
}

SimScene step(const SimScene& scene, const Pose6d& target, GripperCommand cmd,
              const SimParams& params) {
  SimScene s = scene;

  std::optional<Eigen::Vector3d> held_pos_before;
  if (s.attachment) {
    held_pos_before = partPose(objectAt(s, s.attachment->object_id)).translation;
  }

  // 1. gripper motion
  SimObject* held =
      s.attachment ? &s.objects.at(s.attachment->object_id) : nullptr;
  if (held && held->joint) {
    Articulation& joint = *held->joint;
    const RigidTransformd desired =
        compose(toTransform(target), s.attachment->gripper_to_part);
    double dq = 0.0;
    if (joint.type == JointType::kPrismatic) {
      dq = joint.axis.dot(desired.translation -
                          handleTransformAt(joint, joint.q).translation);
    } else {
      const Eigen::Vector3d axis = joint.axis.normalized();
      auto radial = [&](const Eigen::Vector3d& p) {
        const Eigen::Vector3d arm = p - joint.pivot;
        return (arm - arm.dot(axis) * axis).eval();
      };
      const Eigen::Vector3d u = radial(handleTransformAt(joint, joint.q).translation);
      const Eigen::Vector3d v = radial(desired.translation);
      if (u.norm() > 1e-9 && v.norm() > 1e-9) {
        dq = std::atan2(axis.dot(u.cross(v)), u.dot(v));
      }
    }
    joint.q = std::clamp(joint.q + dq, joint.q_min, joint.q_max);
    s.gripper_pose = toPose(compose(handleTransformAt(joint, joint.q),
                                    invert(s.attachment->gripper_to_part)));
  } else {
    s.gripper_pose = target;
    if (held) {
      held->pose = toPose(
          compose(toTransform(s.gripper_pose), s.attachment->gripper_to_part));
    }
  }

  // 2. gripper command
  if (cmd == GripperCommand::kOpen) {
    s.gripper_closed = false;
    s.attachment.reset();
  } else if (cmd == GripperCommand::kClose) {
    s.gripper_closed = true;
    if (!s.attachment) {
      const Eigen::Vector3d g = s.gripper_pose.translation;
      double best = params.attach_tolerance;
      const std::string* best_id = nullptr;
      for (const auto& [id, obj] : s.objects) {
        if (!obj.graspable) continue;
        const double dist = (partPose(obj).translation - g).norm();
        if (dist <= best) {
          best = dist;
          best_id = &id;
        }
      }
      if (best_id) {
        const RigidTransformd part = toTransform(partPose(s.objects.at(*best_id)));
        s.attachment = Attachment{
            *best_id, compose(invert(toTransform(s.gripper_pose)), part)};
      }
    }
  }

  // 3. pouring
  for (auto& [src_id, src] : s.objects) {
    if (!src.fill || *src.fill <= 0.0 || src.joint) continue;
    if (tiltFromVertical(eulerToMatrix(src.pose.euler)) <= params.pour_angle) {
      continue;
    }
    double best_xy = params.catch_radius;
    SimObject* recv = nullptr;
    for (auto& [other_id, other] : s.objects) {
      if (other_id == src_id || !other.fill || other.joint) continue;
      if (other.pose.translation.z() >= src.pose.translation.z()) continue;
      const double dist =
          (xy(other.pose.translation) - xy(src.pose.translation)).norm();
      if (dist <= best_xy) {
        best_xy = dist;
        recv = &other;
      }
    }
    if (recv) {
      const double amount =
          std::min({params.pour_rate, *src.fill, 1.0 - *recv->fill});
      *src.fill -= amount;
      *recv->fill += amount;
    }
  }

  // 4. stirring progress of the held object around container centers
  if (s.attachment && !s.objects.at(s.attachment->object_id).joint) {
    const Eigen::Vector3d p =
        s.objects.at(s.attachment->object_id).pose.translation;
    for (auto& [cid, container] : s.objects) {
      if (!container.fill || cid == s.attachment->object_id) continue;
      StirTracker& st = s.stir[cid];
      const Eigen::Vector2d arm = xy(p) - xy(container.pose.translation);
      const double radius = arm.norm();
      if (radius < params.stir_min_radius || radius > params.stir_zone) {
        st = StirTracker{};
        continue;
      }
      const double azimuth = std::atan2(arm.y(), arm.x());
      if (!st.active) {
        st = StirTracker{true, 0.0, azimuth, p};
      } else if ((p - st.anchor).norm() > params.stir_excursion) {
        st = StirTracker{true, 0.0, azimuth, p};
      } else {
        st.accum += wrapAngle(azimuth - st.last_azimuth);
        st.last_azimuth = azimuth;
      }
    }
  } else {
    s.stir.clear();
  }

  // 5. cutting: the held blade's center crossing a target's midplane downward
  if (s.attachment && held_pos_before) {
    const SimObject& blade = s.objects.at(s.attachment->object_id);
    if (blade.blade && !blade.joint) {
      const Eigen::Vector3d blade_axis =
          eulerToMatrix(blade.pose.euler) * Eigen::Vector3d::UnitX();
      const bool level =
          std::asin(std::min(1.0, std::abs(blade_axis.z()))) <=
          params.blade_level_tol;
      for (auto& [tid, tgt] : s.objects) {
        if (!tgt.cuttable || tgt.cut_done) continue;
        const double plane_z = tgt.pose.translation.z();
        const bool crossed = held_pos_before->z() > plane_z &&
                             blade.pose.translation.z() <= plane_z;
        const bool aligned =
            (xy(blade.pose.translation) - xy(tgt.pose.translation)).norm() <=
            params.cut_radius;
        if (crossed && aligned && level) tgt.cut_done = true;
      }
    }
  }

  return s;
}

bool success(const SimScene& scene, const TaskSpec& task) {
  const SimObject& target = objectAt(scene, task.target_id);
  switch (task.skill) {
    case Skill::kSlideOpen:
    case Skill::kHingeOpen: {
      const Articulation& j = *target.joint;
      return j.q >= task.open_fraction * j.q_max - 1e-12;
    }
    case Skill::kSlideClose:
    case Skill::kHingeClose: {
      const Articulation& j = *target.joint;
      return j.q <= task.close_fraction * j.q_max + 1e-12;
    }
    case Skill::kPick:
      return scene.attachment && scene.attachment->object_id == task.target_id &&
             target.pose.translation.z() - task.reference_z >=
                 task.lift_height - 1e-12;
    case Skill::kPlace:
      return (target.pose.translation - task.place_target).norm() <=
             task.place_tolerance;
    case Skill::kPour:
      return target.fill &&
             *target.fill - task.receiver_initial_fill >= task.pour_gain - 1e-12;
    case Skill::kStir: {
      const auto it = scene.stir.find(task.target_id);
      return it != scene.stir.end() &&
             std::abs(it->second.accum) >= task.stir_angle - 1e-12;
    }
    case Skill::kCut:
      return target.cut_done;
  }
  return false;
}

SimScene replayDemo(SimScene scene, const std::vector<Pose6d>& targets,
                    const SimParams& params, std::vector<SimScene>* states) {
  for (const Pose6d& target : targets) {
    scene = step(scene, target, GripperCommand::kClose, params);
    if (states) states->push_back(scene);
  }
  return scene;
}

SimScene attachForTask(const SimScene& scene, const TaskSpec& task,
                       const SimParams& params) {
  const Pose6d part = partPose(objectAt(scene, task.tool_id));
  SimScene s = step(scene, part, GripperCommand::kClose, params);
  if (!s.attachment || s.attachment->object_id != task.tool_id) {
    throw InfeasibleTask("could not grasp '" + task.tool_id + "'");
  }
  return s;
}

namespace {

// Straight-line approach from the current gripper pose onto a part pose.
// The second-to-last waypoint stays a few centimeters out so a persistent
// close command cannot attach early; the last waypoint is the part pose
// exactly, which welds with a zero grip offset.
void appendApproach(std::vector<Pose6d>* targets, const Pose6d& from,
                    const Pose6d& to) {
  const Eigen::Vector3d start = from.translation;
  const Eigen::Vector3d goal = to.translation;
  const double dist = (goal - start).norm();
  const Eigen::Matrix3d r0 = eulerToMatrix(from.euler);
  const Eigen::Matrix3d r1 = eulerToMatrix(to.euler);
  if (dist > 0.03) {
    const Eigen::Vector3d pre = goal - 0.03 * (goal - start).normalized();
    const int m = std::max(1, static_cast<int>(std::ceil((dist - 0.03) / 0.03)));
    for (int k = 1; k <= m; ++k) {
      const double s = static_cast<double>(k) / m;
      targets->emplace_back(start + s * (pre - start),
                            matrixToEuler(slerpRotation(r0, r1, s)));
    }
  }
  targets->push_back(to);
}

std::vector<Pose6d> articulationSweep(const Articulation& joint, double q_from,
                                      double q_to, int steps) {
  std::vector<Pose6d> targets;
  targets.reserve(steps);
  for (int k = 1; k <= steps; ++k) {
    const double q = q_from + (q_to - q_from) * k / steps;
    targets.push_back(toPose(handleTransformAt(joint, q)));
  }
  return targets;
}

// Smooth egocentric-style camera path: a gently swaying eye looking at a
// fixed scene point, z-forward pinhole convention.
std::vector<CameraFramed> cameraPath(std::size_t frames,
                                     const Eigen::Vector3d& center,
                                     std::uint64_t seed) {
  Rng rng = makeRng(seed, 91);
  std::uniform_real_distribution<double> phase(0.0, 2 * kPi);
  std::uniform_real_distribution<double> jitter(-0.06, 0.06);
  const Eigen::Vector3d base =
      center + Eigen::Vector3d(jitter(rng), -0.55 + jitter(rng), 0.45 + jitter(rng));
  const double p1 = phase(rng), p2 = phase(rng), p3 = phase(rng);

  std::vector<CameraFramed> cams;
  cams.reserve(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    const double t = static_cast<double>(i);
    const Eigen::Vector3d eye =
        base + Eigen::Vector3d(0.03 * std::sin(0.09 * t + p1),
                               0.02 * std::sin(0.07 * t + p2),
                               0.015 * std::sin(0.11 * t + p3));
    const Eigen::Vector3d forward = (center - eye).normalized();
    const Eigen::Vector3d right =
        forward.cross(Eigen::Vector3d::UnitZ()).normalized();
    const Eigen::Vector3d down = forward.cross(right);
    Eigen::Matrix3d cam_to_world;
    cam_to_world.col(0) = right;
    cam_to_world.col(1) = down;
    cam_to_world.col(2) = forward;

    CameraFramed cam;
    cam.frame_id = static_cast<std::int64_t>(i);
    cam.fx = 320.0;
    cam.fy = 320.0;
    cam.cx = 160.0;
    cam.cy = 120.0;
    cam.world_to_camera = invert(RigidTransformd{cam_to_world, eye});
    cams.push_back(cam);
  }
  return cams;
}

Eigen::Vector3d sceneCenter(const SimScene& scene) {
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();
  int count = 0;
  for (const auto& [id, obj] : scene.objects) {
    sum += partPose(obj).translation;
    ++count;
  }
  return count ? Eigen::Vector3d(sum / count) : Eigen::Vector3d::Zero();
}

}  // namespace

ScriptedDemo scriptedDemo(const TaskSpec& task, const SimScene& scene,
                          const SimParams& params) {
  const SimObject& tool = objectAt(scene, task.tool_id);
  if (!tool.graspable) {
    throw InfeasibleTask("tool '" + task.tool_id + "' is not graspable");
  }
  const Pose6d grip = partPose(tool);

  std::vector<Pose6d> targets;
  appendApproach(&targets, scene.gripper_pose, grip);

  switch (task.skill) {
    case Skill::kSlideOpen:
    case Skill::kHingeOpen: {
      const Articulation& j = *objectAt(scene, task.target_id).joint;
      const double q_to = std::min(j.q_max, (task.open_fraction + 0.05) * j.q_max);
      const auto sweep = articulationSweep(j, j.q, q_to, 30);
      targets.insert(targets.end(), sweep.begin(), sweep.end());
      break;
    }
    case Skill::kSlideClose:
    case Skill::kHingeClose: {
      const Articulation& j = *objectAt(scene, task.target_id).joint;
      const double q_to = std::max(j.q_min, (task.close_fraction - 0.05) * j.q_max);
      const auto sweep = articulationSweep(j, j.q, q_to, 30);
      targets.insert(targets.end(), sweep.begin(), sweep.end());
      break;
    }
    case Skill::kPick: {
      const double lift = task.lift_height + 0.03;
      for (int k = 1; k <= 12; ++k) {
        Pose6d p = grip;
        p.translation.z() += lift * k / 12.0;
        targets.push_back(p);
      }
      break;
    }
    case Skill::kPlace: {
      Pose6d up = grip;
      up.translation.z() += 0.06;
      for (int k = 1; k <= 5; ++k) {
        Pose6d p = grip;
        p.translation.z() += 0.06 * k / 5.0;
        targets.push_back(p);
      }
      Eigen::Vector3d above_target = task.place_target;
      above_target.z() = up.translation.z();
      for (int k = 1; k <= 12; ++k) {
        const double s = static_cast<double>(k) / 12.0;
        Pose6d p = up;
        p.translation = up.translation + s * (above_target - up.translation);
        targets.push_back(p);
      }
      for (int k = 1; k <= 6; ++k) {
        Pose6d p = up;
        p.translation = above_target;
        p.translation.z() =
            above_target.z() + (task.place_target.z() - above_target.z()) * k / 6.0;
        targets.push_back(p);
      }
      break;
    }
    case Skill::kPour: {
      const SimObject& receiver = objectAt(scene, task.target_id);
      const Eigen::Vector3d over(receiver.pose.translation.x(),
                                 receiver.pose.translation.y(),
                                 receiver.pose.translation.z() + 0.22);
      Pose6d up = grip;
      up.translation.z() += 0.12;
      for (int k = 1; k <= 6; ++k) {
        Pose6d p = grip;
        p.translation.z() += 0.12 * k / 6.0;
        targets.push_back(p);
      }
      for (int k = 1; k <= 10; ++k) {
        const double s = static_cast<double>(k) / 10.0;
        Pose6d p = up;
        p.translation = up.translation + s * (over - up.translation);
        targets.push_back(p);
      }
      // tilt in place well past the pouring threshold, then hold
      const Eigen::Matrix3d r0 = eulerToMatrix(grip.euler);
      for (int k = 1; k <= 8; ++k) {
        const double angle = 1.35 * k / 8.0;
        const Eigen::Matrix3d r =
            Eigen::AngleAxisd(angle, Eigen::Vector3d::UnitX()).toRotationMatrix() *
            r0;
        targets.emplace_back(over, matrixToEuler(r));
      }
      const Pose6d tilted = targets.back();
      for (int k = 0; k < 10; ++k) targets.push_back(tilted);
      break;
    }
    case Skill::kStir: {
      const SimObject& pot = objectAt(scene, task.target_id);
      const double radius = 0.02;
      const Eigen::Vector3d center(pot.pose.translation.x(),
                                   pot.pose.translation.y(),
                                   pot.pose.translation.z() + 0.05);
      const Eigen::Vector3d entry = center + Eigen::Vector3d(radius, 0, 0);
      for (int k = 1; k <= 8; ++k) {
        const double s = static_cast<double>(k) / 8.0;
        Pose6d p = grip;
        p.translation = grip.translation + s * (entry - grip.translation);
        targets.push_back(p);
      }
      const int loops_steps = 44;
      for (int k = 1; k <= loops_steps; ++k) {
        const double phi = 2.2 * 2 * kPi * k / loops_steps;
        Pose6d p = grip;
        p.translation = center + Eigen::Vector3d(radius * std::cos(phi),
                                                 radius * std::sin(phi), 0.0);
        targets.push_back(p);
      }
      break;
    }
    case Skill::kCut: {
      const SimObject& veg = objectAt(scene, task.target_id);
      const Eigen::Vector3d above(veg.pose.translation.x(),
                                  veg.pose.translation.y(),
                                  veg.pose.translation.z() + 0.15);
      Pose6d up = grip;
      up.translation.z() += 0.10;
      for (int k = 1; k <= 5; ++k) {
        Pose6d p = grip;
        p.translation.z() += 0.10 * k / 5.0;
        targets.push_back(p);
      }
      for (int k = 1; k <= 10; ++k) {
        const double s = static_cast<double>(k) / 10.0;
        Pose6d p = up;
        p.translation = up.translation + s * (above - up.translation);
        targets.push_back(p);
      }
      for (int k = 1; k <= 8; ++k) {
        Pose6d p = up;
        p.translation = above;
        p.translation.z() =
            above.z() + (veg.pose.translation.z() - 0.03 - above.z()) * k / 8.0;
        targets.push_back(p);
      }
      break;
    }
  }

  ScriptedDemo demo;
  demo.gripper = std::move(targets);
  demo.cameras = cameraPath(demo.gripper.size(), sceneCenter(scene), scene.seed);
  return demo;
}

RenderedClip renderDetections(const SimScene& scene,
                              const std::vector<Pose6d>& gripper_traj,
                              const std::vector<CameraFramed>& camera_traj,
                              const DetectionNoise& noise, std::uint64_t seed,
                              int feature_dim, const SimParams& params) {
  if (gripper_traj.size() != camera_traj.size()) {
    throw LengthMismatch("gripper trajectory has " +
                         std::to_string(gripper_traj.size()) + " poses but " +
                         std::to_string(camera_traj.size()) + " cameras");
  }
  Rng rng = makeRng(seed, 7);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  RenderedClip clip;
  clip.cameras = camera_traj;
  SimScene state = scene;
  for (std::size_t i = 0; i < gripper_traj.size(); ++i) {
    state = step(state, gripper_traj[i], GripperCommand::kClose, params);
    clip.features.push_back(featureVector(state, camera_traj[i], feature_dim));

    const bool dropped = uniform(rng) < noise.dropout;
    RigidTransformd in_cam = compose(camera_traj[i].world_to_camera,
                                     toTransform(state.gripper_pose));
    if (noise.pose_noise_std > 0.0) {
      in_cam.translation += noise.pose_noise_std *
                            Eigen::Vector3d(gauss(rng), gauss(rng), gauss(rng));
      const Eigen::Vector3d w = noise.pose_noise_std *
                                Eigen::Vector3d(gauss(rng), gauss(rng), gauss(rng));
      if (w.norm() > 0.0) {
        in_cam.rotation =
            in_cam.rotation *
            Eigen::AngleAxisd(w.norm(), w.normalized()).toRotationMatrix();
      }
    }
    if (!dropped) {
      HandDetection det;
      det.frame_id = camera_traj[i].frame_id;
      det.wrist_pose_cam = toPose(in_cam);
      det.confidence = 1.0;
      clip.detections.push_back(det);
    }
  }
  return clip;
}

Eigen::VectorXd featureVector(const SimScene& scene, const CameraFramed& cam,
                              int d) {
  std::vector<double> slots;
  slots.reserve(32);
  const RigidTransformd& wc = cam.world_to_camera;
  const RigidTransformd gripper_cam =
      compose(wc, toTransform(scene.gripper_pose));

  auto pushVec3 = [&](const Eigen::Vector3d& v) {
    slots.push_back(v.x());
    slots.push_back(v.y());
    slots.push_back(v.z());
  };

  pushVec3(gripper_cam.translation);
  pushVec3(matrixToEuler(gripper_cam.rotation));
  slots.push_back(scene.attachment ? 1.0 : 0.0);
  double held_q = 0.0;
  if (scene.attachment) {
    const SimObject& held = scene.objects.at(scene.attachment->object_id);
    if (held.joint && held.joint->q_max > held.joint->q_min) {
      held_q = (held.joint->q - held.joint->q_min) /
               (held.joint->q_max - held.joint->q_min);
    }
  }
  slots.push_back(held_q);

  int articulated = 0;
  for (const auto& [id, obj] : scene.objects) {
    if (!obj.joint || articulated == 2) continue;
    ++articulated;
    const Eigen::Vector3d handle = wc * partPose(obj).translation;
    pushVec3(handle);
    pushVec3(handle - gripper_cam.translation);
    const double span = obj.joint->q_max - obj.joint->q_min;
    slots.push_back(span > 0.0 ? (obj.joint->q - obj.joint->q_min) / span : 0.0);
    slots.push_back(obj.joint->type == JointType::kPrismatic ? 0.0 : 1.0);
  }
  for (; articulated < 2; ++articulated) {
    for (int k = 0; k < 8; ++k) slots.push_back(0.0);
  }

  int bodies = 0;
  for (const auto& [id, obj] : scene.objects) {
    if (obj.joint || bodies == 2) continue;
    ++bodies;
    pushVec3(wc * obj.pose.translation);
    slots.push_back(obj.fill.value_or(0.0));
  }
  for (; bodies < 2; ++bodies) {
    for (int k = 0; k < 4; ++k) slots.push_back(0.0);
  }

  Eigen::VectorXd out = Eigen::VectorXd::Zero(d);
  for (int i = 0; i < d && i < static_cast<int>(slots.size()); ++i) {
    out[i] = slots[i];
  }
  return out;
}

namespace {

Pose6d counterPose(Rng& rng, double x0, double y0, double z) {
  std::uniform_real_distribution<double> dx(-0.08, 0.08);
  std::uniform_real_distribution<double> yaw(-0.25, 0.25);
  return Pose6d(Eigen::Vector3d(x0 + dx(rng), y0 + dx(rng), z),
                Eigen::Vector3d(yaw(rng), 0.0, 0.0));
}

}  // namespace

TaskSetup makeTaskScene(Skill skill, std::uint64_t seed) {
  Rng rng = makeRng(seed, 17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> sym(-1.0, 1.0);

  TaskSetup setup;
  SimScene& scene = setup.scene;
  TaskSpec& task = setup.task;
  scene.seed = seed;
  scene.gripper_pose = Pose6d(
      Eigen::Vector3d(0.05 * sym(rng), 0.12 + 0.04 * sym(rng), 0.35 + 0.05 * sym(rng)),
      Eigen::Vector3d::Zero());
  task.skill = skill;

  switch (skill) {
    case Skill::kSlideOpen:
    case Skill::kSlideClose: {
      const double yaw = 0.3 * sym(rng);
      const Eigen::Vector3d axis =
          eulerToMatrix(Eigen::Vector3d(yaw, 0, 0)) * Eigen::Vector3d(0, -1, 0);
      SimObject drawer;
      drawer.graspable = true;
      Articulation j;
      j.type = JointType::kPrismatic;
      j.axis = axis;
      j.q_min = 0.0;
      j.q_max = 0.25 + 0.1 * unit(rng);
      j.handle_home =
          Pose6d(Eigen::Vector3d(0.1 * sym(rng), 0.55 + 0.05 * sym(rng),
                                 0.15 + 0.1 * unit(rng)),
                 Eigen::Vector3d(yaw, 0.0, 0.0));
      j.q = (skill == Skill::kSlideOpen ? 0.1 * unit(rng)
                                        : 0.85 + 0.15 * unit(rng)) *
            j.q_max;
      drawer.joint = j;
      drawer.pose = j.handle_home;
      scene.objects["drawer"] = drawer;
      task.target_id = "drawer";
      task.tool_id = "drawer";
      break;
    }
    case Skill::kHingeOpen:
    case Skill::kHingeClose: {
      const double side = unit(rng) < 0.5 ? 1.0 : -1.0;
      const double yaw = 0.25 * sym(rng);
      SimObject door;
      door.graspable = true;
      Articulation j;
      j.type = JointType::kRevolute;
      j.pivot = Eigen::Vector3d(0.12 * sym(rng), 0.6 + 0.05 * sym(rng),
                                0.2 + 0.1 * unit(rng));
      j.axis = Eigen::Vector3d(0, 0, -side);
      j.q_min = 0.0;
      j.q_max = 1.2 + 0.6 * unit(rng);
      const double width = 0.28 + 0.1 * unit(rng);
      const Eigen::Vector3d handle_offset =
          eulerToMatrix(Eigen::Vector3d(yaw, 0, 0)) *
          Eigen::Vector3d(side * width, 0.0, 0.0);
      j.handle_home = Pose6d(j.pivot + handle_offset, Eigen::Vector3d(yaw, 0, 0));
      j.q = (skill == Skill::kHingeOpen ? 0.1 * unit(rng)
                                        : 0.85 + 0.15 * unit(rng)) *
            j.q_max;
      door.joint = j;
      door.pose = Pose6d(j.pivot, Eigen::Vector3d(yaw, 0, 0));
      scene.objects["door"] = door;
      task.target_id = "door";
      task.tool_id = "door";
      break;
    }
    case Skill::kPick: {
      SimObject can;
      can.graspable = true;
      can.pose = counterPose(rng, 0.0, 0.5, 0.05);
      scene.objects["can"] = can;
      task.target_id = "can";
      task.tool_id = "can";
      task.reference_z = can.pose.translation.z();
      break;
    }
    case Skill::kPlace: {
      SimObject cup;
      cup.graspable = true;
      cup.pose = counterPose(rng, -0.15, 0.45, 0.05);
      SimObject mat;  // static visual target
      mat.pose = counterPose(rng, 0.15, 0.55, 0.02);
      scene.objects["cup"] = cup;
      scene.objects["mat"] = mat;
      task.target_id = "cup";
      task.tool_id = "cup";
      task.place_target = mat.pose.translation + Eigen::Vector3d(0, 0, 0.03);
      break;
    }
    case Skill::kPour: {
      SimObject cup;
      cup.graspable = true;
      cup.fill = 0.7;
      cup.pose = counterPose(rng, -0.15, 0.45, 0.08);
      SimObject bowl;
      bowl.fill = 0.1;
      bowl.pose = counterPose(rng, 0.12, 0.55, 0.03);
      scene.objects["cup"] = cup;
      scene.objects["bowl"] = bowl;
      task.target_id = "bowl";
      task.tool_id = "cup";
      task.pour_gain = 0.3;
      task.receiver_initial_fill = *bowl.fill;
      break;
    }
    case Skill::kStir: {
      SimObject spoon;
      spoon.graspable = true;
      spoon.pose = counterPose(rng, -0.18, 0.4, 0.06);
      SimObject pot;
      pot.fill = 0.5;
      pot.pose = counterPose(rng, 0.1, 0.55, 0.06);
      scene.objects["spoon"] = spoon;
      scene.objects["pot"] = pot;
      task.target_id = "pot";
      task.tool_id = "spoon";
      task.stir_angle = 2 * kPi;
      break;
    }
    case Skill::kCut: {
      SimObject knife;
      knife.graspable = true;
      knife.blade = true;
      knife.pose = counterPose(rng, -0.18, 0.42, 0.05);
      knife.pose.euler = Eigen::Vector3d::Zero();  // blade axis level
      SimObject carrot;
      carrot.cuttable = true;
      carrot.pose = counterPose(rng, 0.1, 0.52, 0.02);
      scene.objects["knife"] = knife;
      scene.objects["carrot"] = carrot;
      task.target_id = "carrot";
      task.tool_id = "knife";
      break;
    }
  }

  // one fixed evaluation camera, jittered like the demo cameras
  setup.eval_camera = cameraPath(1, sceneCenter(scene), splitmix64(seed) ^ 0x5eedu)[0];
  return setup;
}

}  // namespace egoskill
