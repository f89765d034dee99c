#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Geometry>
#include <cmath>
#include <set>

#include "egoskill/egolift.hpp"
#include "egoskill/errors.hpp"
#include "egoskill/simkitchen.hpp"

using namespace egoskill;

namespace {

constexpr double kPi = EIGEN_PI;

Articulation makeDrawerJoint() {
  Articulation j;
  j.type = JointType::kPrismatic;
  j.axis = Eigen::Vector3d(0, -1, 0);
  j.q_min = 0.0;
  j.q_max = 0.3;
  j.q = 0.1;
  j.handle_home = Pose6d(Eigen::Vector3d(0.0, 0.5, 0.2), Eigen::Vector3d::Zero());
  return j;
}

Articulation makeDoorJoint() {
  Articulation j;
  j.type = JointType::kRevolute;
  j.axis = Eigen::Vector3d(0, 0, -1);
  j.pivot = Eigen::Vector3d(0.1, 0.6, 0.25);
  j.q_min = 0.0;
  j.q_max = 1.6;
  j.q = 1.0;
  j.handle_home =
      Pose6d(j.pivot + Eigen::Vector3d(0.3, 0.0, 0.0), Eigen::Vector3d::Zero());
  return j;
}

SimScene drawerScene() {
  SimScene s;
  SimObject drawer;
  drawer.graspable = true;
  drawer.joint = makeDrawerJoint();
  drawer.pose = drawer.joint->handle_home;
  s.objects["drawer"] = drawer;
  s.gripper_pose = Pose6d(Eigen::Vector3d(0, 0.1, 0.3), Eigen::Vector3d::Zero());
  return s;
}

SimScene doorScene() {
  SimScene s;
  SimObject door;
  door.graspable = true;
  door.joint = makeDoorJoint();
  door.pose = Pose6d(door.joint->pivot, Eigen::Vector3d::Zero());
  s.objects["door"] = door;
  s.gripper_pose = Pose6d(Eigen::Vector3d(0, 0.1, 0.3), Eigen::Vector3d::Zero());
  return s;
}

SimScene graspedObjectScene(const std::string& id, const Pose6d& pose,
                            bool blade = false) {
  SimScene s;
  SimObject obj;
  obj.graspable = true;
  obj.blade = blade;
  obj.pose = pose;
  s.objects[id] = obj;
  s.gripper_pose = pose;
  s = step(s, pose, GripperCommand::kClose);
  REQUIRE(s.attachment);
  REQUIRE(s.attachment->object_id == id);
  return s;
}

double maxPoseError(const Pose6d& a, const Pose6d& b) {
  return std::max((a.translation - b.translation).norm(),
                  rotationDistance(eulerToMatrix(a.euler), eulerToMatrix(b.euler)));
}

}  // namespace

TEST_CASE("prismatic handle transform slides the home pose along the axis") {
  const Articulation j = makeDrawerJoint();
  const RigidTransformd t = handleTransformAt(j, 0.25);
  CHECK((t.translation - Eigen::Vector3d(0.0, 0.25, 0.2)).norm() == doctest::Approx(0.0));
  CHECK((t.rotation - Eigen::Matrix3d::Identity()).norm() == doctest::Approx(0.0));
}

TEST_CASE("revolute handle transform matches an explicit axis-angle oracle") {
  const Articulation j = makeDoorJoint();
  for (double q : {0.0, 0.3, 1.1, -0.4}) {
    const RigidTransformd t = handleTransformAt(j, q);
    const Eigen::Matrix3d r =
        Eigen::AngleAxisd(q, j.axis.normalized()).toRotationMatrix();
    const Eigen::Vector3d expect_t =
        j.pivot + r * (j.handle_home.translation - j.pivot);
    const Eigen::Matrix3d expect_r = r * eulerToMatrix(j.handle_home.euler);
    CHECK((t.translation - expect_t).norm() < 1e-12);
    CHECK((t.rotation - expect_r).norm() < 1e-12);
  }
}

TEST_CASE("free-space motion teleports the gripper to the commanded pose") {
  SimScene s;
  s.gripper_pose = Pose6d(Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero());
  const Pose6d target(Eigen::Vector3d(0.2, -0.1, 0.4),
                      Eigen::Vector3d(0.3, -0.2, 0.1));
  s = step(s, target, GripperCommand::kHold);
  CHECK(maxPoseError(s.gripper_pose, target) == doctest::Approx(0.0));
  CHECK_FALSE(s.gripper_closed);
}

TEST_CASE("closing within tolerance attaches the nearest graspable part") {
  SimScene s;
  SimObject near, far;
  near.graspable = true;
  near.pose = Pose6d(Eigen::Vector3d(0.003, 0, 0), Eigen::Vector3d::Zero());
  far.graspable = true;
  far.pose = Pose6d(Eigen::Vector3d(0.004, 0, 0), Eigen::Vector3d::Zero());
  s.objects["a_far"] = far;
  s.objects["b_near"] = near;
  s.gripper_pose = Pose6d(Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero());

  SimScene closed = step(s, s.gripper_pose, GripperCommand::kClose);
  REQUIRE(closed.attachment);
  CHECK(closed.attachment->object_id == "b_near");
  CHECK(closed.gripper_closed);

  SimScene released = step(closed, closed.gripper_pose, GripperCommand::kOpen);
  CHECK_FALSE(released.attachment);
  CHECK_FALSE(released.gripper_closed);
}

TEST_CASE("closing beyond the attach tolerance grabs nothing") {
  SimScene s;
  SimObject can;
  can.graspable = true;
  can.pose = Pose6d(Eigen::Vector3d(0.006, 0, 0), Eigen::Vector3d::Zero());
  s.objects["can"] = can;
  s.gripper_pose = Pose6d(Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero());
  const SimScene closed = step(s, s.gripper_pose, GripperCommand::kClose);
  CHECK(closed.gripper_closed);
  CHECK_FALSE(closed.attachment);
}

TEST_CASE("an attached free body follows the gripper as a rigid weld") {
  SimScene s;
  SimObject can;
  can.graspable = true;
  can.pose = Pose6d(Eigen::Vector3d(0.1, 0.2, 0.3), Eigen::Vector3d(0.4, 0.1, -0.2));
  s.objects["can"] = can;
  s.gripper_pose =
      Pose6d(Eigen::Vector3d(0.102, 0.2, 0.3), Eigen::Vector3d(0.4, 0.1, -0.2));
  s = step(s, s.gripper_pose, GripperCommand::kClose);
  REQUIRE(s.attachment);

  const RigidTransformd offset = s.attachment->gripper_to_part;
  const Pose6d targets[] = {
      Pose6d(Eigen::Vector3d(0.3, -0.1, 0.5), Eigen::Vector3d(1.0, 0.3, 0.2)),
      Pose6d(Eigen::Vector3d(-0.2, 0.4, 0.1), Eigen::Vector3d(-2.0, -0.5, 1.1))};
  for (const Pose6d& t : targets) {
    s = step(s, t, GripperCommand::kClose);
    const RigidTransformd expect = compose(toTransform(t), offset);
    CHECK(maxPoseError(s.objects.at("can").pose, toPose(expect)) < 1e-12);
  }
}

TEST_CASE("prismatic joints admit only the axis component of a handle command") {
  SimScene s = drawerScene();
  s = attachForTask(s, TaskSpec{Skill::kSlideOpen, "drawer", "drawer"}, {});
  const Articulation& j = *s.objects.at("drawer").joint;
  REQUIRE(j.q == doctest::Approx(0.1));

  SUBCASE("displacement along the axis advances q by the displacement") {
    const Pose6d target = toPose(handleTransformAt(j, 0.17));
    SimScene moved = step(s, target, GripperCommand::kClose);
    CHECK(moved.objects.at("drawer").joint->q == doctest::Approx(0.17).epsilon(1e-12));
  }
  SUBCASE("perpendicular displacement leaves q unchanged") {
    Pose6d target = toPose(handleTransformAt(j, j.q));
    target.translation += Eigen::Vector3d(0.05, 0.0, 0.07);
    SimScene moved = step(s, target, GripperCommand::kClose);
    CHECK(moved.objects.at("drawer").joint->q == doctest::Approx(0.1).epsilon(1e-12));
    CHECK((moved.gripper_pose.translation -
           handleTransformAt(j, 0.1).translation).norm() < 1e-12);
  }
  SUBCASE("commands past the limits clamp q to its range") {
    Pose6d target = toPose(handleTransformAt(j, j.q));
    target.translation += 1.0 * j.axis;
    SimScene moved = step(s, target, GripperCommand::kClose);
    CHECK(moved.objects.at("drawer").joint->q == doctest::Approx(0.3));
    target.translation -= 3.0 * j.axis;
    moved = step(moved, target, GripperCommand::kClose);
    CHECK(moved.objects.at("drawer").joint->q == doctest::Approx(0.0));
  }
}

TEST_CASE("revolute joints advance by the swept angle about the hinge axis") {
  SimScene s = doorScene();
  s = attachForTask(s, TaskSpec{Skill::kHingeOpen, "door", "door"}, {});
  const Articulation j = *s.objects.at("door").joint;
  REQUIRE(j.q == doctest::Approx(1.0));

  SUBCASE("a handle target on the arc advances q to the target angle") {
    const Pose6d target = toPose(handleTransformAt(j, 1.05));
    SimScene moved = step(s, target, GripperCommand::kClose);
    CHECK(moved.objects.at("door").joint->q == doctest::Approx(1.05).epsilon(1e-12));
  }
  SUBCASE("the projection ignores the radial component of the target") {
    const Eigen::Vector3d on_arc = handleTransformAt(j, 1.2).translation;
    Pose6d target = toPose(handleTransformAt(j, 1.2));
    target.translation = j.pivot + 2.0 * (on_arc - j.pivot);
    SimScene moved = step(s, target, GripperCommand::kClose);
    CHECK(moved.objects.at("door").joint->q == doctest::Approx(1.2).epsilon(1e-12));
    CHECK((moved.gripper_pose.translation -
           handleTransformAt(j, 1.2).translation).norm() < 1e-12);
  }
  SUBCASE("angles clamp at the hinge limits") {
    const Pose6d target = toPose(handleTransformAt(j, -0.8));
    SimScene moved = step(s, target, GripperCommand::kClose);
    CHECK(moved.objects.at("door").joint->q == doctest::Approx(0.0));
  }
}

TEST_CASE("pouring transfers fill above the tilt threshold and conserves it") {
  SimScene s;
  SimObject cup;
  cup.graspable = true;
  cup.fill = 0.5;
  cup.pose = Pose6d(Eigen::Vector3d(0.0, 0.0, 0.25), Eigen::Vector3d::Zero());
  SimObject bowl;
  bowl.fill = 0.0;
  bowl.pose = Pose6d(Eigen::Vector3d(0.05, 0.0, 0.0), Eigen::Vector3d::Zero());
  s.objects["cup"] = cup;
  s.objects["bowl"] = bowl;
  s.gripper_pose = cup.pose;
  s = step(s, cup.pose, GripperCommand::kClose);
  REQUIRE(s.attachment);

  auto totalFill = [](const SimScene& scene) {
    double sum = 0.0;
    for (const auto& [id, obj] : scene.objects) sum += obj.fill.value_or(0.0);
    return sum;
  };

  SUBCASE("tilt below the threshold pours nothing") {
    const Pose6d tilted(cup.pose.translation, Eigen::Vector3d(0, 0, 1.0));
    SimScene after = step(s, tilted, GripperCommand::kClose);
    CHECK(*after.objects.at("cup").fill == doctest::Approx(0.5));
    CHECK(*after.objects.at("bowl").fill == doctest::Approx(0.0));
  }
  SUBCASE("tilt past the threshold pours at the fixed rate") {
    const Pose6d tilted(cup.pose.translation, Eigen::Vector3d(0, 0, 1.1));
    SimScene after = step(s, tilted, GripperCommand::kClose);
    CHECK(*after.objects.at("cup").fill == doctest::Approx(0.45));
    CHECK(*after.objects.at("bowl").fill == doctest::Approx(0.05));
    CHECK(totalFill(after) == doctest::Approx(totalFill(s)));
    after = step(after, tilted, GripperCommand::kClose);
    CHECK(*after.objects.at("bowl").fill == doctest::Approx(0.10));
    CHECK(totalFill(after) == doctest::Approx(totalFill(s)));
  }
  SUBCASE("nothing transfers without a catch below the source") {
    SimScene far = s;
    far.objects.at("bowl").pose.translation.x() = 0.5;
    const Pose6d tilted(cup.pose.translation, Eigen::Vector3d(0, 0, 1.1));
    SimScene after = step(far, tilted, GripperCommand::kClose);
    CHECK(*after.objects.at("cup").fill == doctest::Approx(0.5));
    CHECK(*after.objects.at("bowl").fill == doctest::Approx(0.0));

    SimScene high = s;
    high.objects.at("bowl").pose.translation.z() = 0.5;
    after = step(high, tilted, GripperCommand::kClose);
    CHECK(*after.objects.at("cup").fill == doctest::Approx(0.5));
  }
  SUBCASE("a nearly full receiver only takes what fits") {
    SimScene full = s;
    full.objects.at("bowl").fill = 0.98;
    const Pose6d tilted(cup.pose.translation, Eigen::Vector3d(0, 0, 1.1));
    SimScene after = step(full, tilted, GripperCommand::kClose);
    CHECK(*after.objects.at("bowl").fill == doctest::Approx(1.0));
    CHECK(*after.objects.at("cup").fill == doctest::Approx(0.48));
  }
}

TEST_CASE("stirring accumulates swept azimuth and resets on excursions") {
  SimScene s;
  SimObject spoon;
  spoon.graspable = true;
  spoon.pose = Pose6d(Eigen::Vector3d(0.02, 0.0, 0.1), Eigen::Vector3d::Zero());
  SimObject pot;
  pot.fill = 0.5;
  pot.pose = Pose6d(Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero());
  s.objects["spoon"] = spoon;
  s.objects["pot"] = pot;
  s.gripper_pose = spoon.pose;
  s = step(s, spoon.pose, GripperCommand::kClose);
  REQUIRE(s.attachment);

  auto circleTarget = [&](double phi) {
    return Pose6d(Eigen::Vector3d(0.02 * std::cos(phi), 0.02 * std::sin(phi), 0.1),
                  Eigen::Vector3d::Zero());
  };

  SimScene cur = s;
  const int steps = 25;
  for (int k = 1; k <= steps; ++k) {
    cur = step(cur, circleTarget(0.3 * k), GripperCommand::kClose);
  }
  // anchored on the close step, so every circle step contributes
  CHECK(cur.stir.at("pot").accum == doctest::Approx(0.3 * steps).epsilon(1e-9));

  SUBCASE("a jump larger than the excursion bound restarts the count") {
    SimScene jumped = step(
        cur,
        Pose6d(Eigen::Vector3d(0.09, 0.0, 0.1), Eigen::Vector3d::Zero()),
        GripperCommand::kClose);
    CHECK(jumped.stir.at("pot").active);
    CHECK(jumped.stir.at("pot").accum == doctest::Approx(0.0));
  }
  SUBCASE("leaving the stir zone clears the tracker") {
    SimScene left = step(
        cur, Pose6d(Eigen::Vector3d(0.3, 0.0, 0.1), Eigen::Vector3d::Zero()),
        GripperCommand::kClose);
    CHECK_FALSE(left.stir.at("pot").active);
    CHECK(left.stir.at("pot").accum == doctest::Approx(0.0));
  }
  SUBCASE("releasing the stirrer clears all progress") {
    SimScene released = step(cur, cur.gripper_pose, GripperCommand::kOpen);
    CHECK(released.stir.empty());
  }
}

TEST_CASE("a level blade crossing a target midplane downward cuts it") {
  const Pose6d knife_start(Eigen::Vector3d(0.0, 0.0, 0.1), Eigen::Vector3d::Zero());
  SimScene base = graspedObjectScene("knife", knife_start, true);
  SimObject carrot;
  carrot.cuttable = true;
  carrot.pose = Pose6d(Eigen::Vector3d(0.0, 0.0, 0.02), Eigen::Vector3d::Zero());
  base.objects["carrot"] = carrot;

  SUBCASE("an aligned downward pass latches the cut") {
    const Pose6d down(Eigen::Vector3d(0.0, 0.0, 0.0), Eigen::Vector3d::Zero());
    SimScene after = step(base, down, GripperCommand::kClose);
    CHECK(after.objects.at("carrot").cut_done);
    after = step(after, knife_start, GripperCommand::kClose);
    CHECK(after.objects.at("carrot").cut_done);
  }
  SUBCASE("a pass outside the alignment radius misses") {
    const Pose6d down(Eigen::Vector3d(0.06, 0.0, 0.0), Eigen::Vector3d::Zero());
    SimScene after = step(base, down, GripperCommand::kClose);
    CHECK_FALSE(after.objects.at("carrot").cut_done);
  }
  SUBCASE("a tilted blade does not cut") {
    const Pose6d down(Eigen::Vector3d(0.0, 0.0, 0.0),
                      Eigen::Vector3d(0.0, -kPi / 3, 0.0));
    SimScene after = step(base, down, GripperCommand::kClose);
    CHECK_FALSE(after.objects.at("carrot").cut_done);
  }
  SUBCASE("an upward pass does not cut") {
    SimScene low = base;
    low.gripper_pose.translation.z() = 0.0;
    low.objects.at("knife").pose.translation.z() = 0.0;
    const Pose6d up(Eigen::Vector3d(0.0, 0.0, 0.1), Eigen::Vector3d::Zero());
    SimScene after = step(low, up, GripperCommand::kClose);
    CHECK_FALSE(after.objects.at("carrot").cut_done);
  }
}

TEST_CASE("success predicates gate on the task thresholds") {
  SUBCASE("articulation open and close fractions") {
    SimScene s = drawerScene();
    TaskSpec open{Skill::kSlideOpen, "drawer", "drawer"};
    TaskSpec close{Skill::kSlideClose, "drawer", "drawer"};
    s.objects.at("drawer").joint->q = 0.9 * 0.3;
    CHECK(success(s, open));
    s.objects.at("drawer").joint->q = 0.89 * 0.3;
    CHECK_FALSE(success(s, open));
    s.objects.at("drawer").joint->q = 0.1 * 0.3;
    CHECK(success(s, close));
    s.objects.at("drawer").joint->q = 0.11 * 0.3;
    CHECK_FALSE(success(s, close));
  }
  SUBCASE("pick needs the attachment and the lift") {
    SimScene s = graspedObjectScene(
        "can", Pose6d(Eigen::Vector3d(0, 0, 0.05), Eigen::Vector3d::Zero()));
    TaskSpec pick{Skill::kPick, "can", "can"};
    pick.reference_z = 0.05;
    CHECK_FALSE(success(s, pick));
    SimScene lifted = step(
        s, Pose6d(Eigen::Vector3d(0, 0, 0.11), Eigen::Vector3d::Zero()),
        GripperCommand::kClose);
    CHECK(success(lifted, pick));
    SimScene dropped = step(lifted, lifted.gripper_pose, GripperCommand::kOpen);
    CHECK_FALSE(success(dropped, pick));
  }
  SUBCASE("place needs the object near the target point") {
    SimScene s = graspedObjectScene(
        "cup", Pose6d(Eigen::Vector3d(0, 0, 0.05), Eigen::Vector3d::Zero()));
    TaskSpec place{Skill::kPlace, "cup", "cup"};
    place.place_target = Eigen::Vector3d(0.3, 0.1, 0.05);
    CHECK_FALSE(success(s, place));
    SimScene moved = step(
        s, Pose6d(place.place_target + Eigen::Vector3d(0.0, 0.03, 0.0),
                  Eigen::Vector3d::Zero()),
        GripperCommand::kClose);
    CHECK(success(moved, place));
  }
}

TEST_CASE("scripted demonstrations succeed across skills and randomized scenes") {
  for (Skill skill : kAllSkills) {
    CAPTURE(skillName(skill));
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
      CAPTURE(seed);
      const TaskSetup setup = makeTaskScene(skill, seed);
      const ScriptedDemo demo = scriptedDemo(setup.task, setup.scene);
      REQUIRE(demo.gripper.size() == demo.cameras.size());
      const SimScene final_state = replayDemo(setup.scene, demo.gripper);
      REQUIRE(final_state.attachment);
      CHECK(final_state.attachment->object_id == setup.task.tool_id);
      CHECK(success(final_state, setup.task));
      CHECK_FALSE(success(setup.scene, setup.task));
    }
  }
}

TEST_CASE("hinge scenes cover both handle sides and both succeed") {
  std::set<int> sides;
  for (std::uint64_t seed = 1; seed <= 16; ++seed) {
    const TaskSetup setup = makeTaskScene(Skill::kHingeOpen, seed);
    const Articulation& j = *setup.scene.objects.at("door").joint;
    const double dx = (j.handle_home.translation - j.pivot).x();
    sides.insert(dx > 0 ? 1 : -1);
  }
  CHECK(sides.size() == 2);
}

TEST_CASE("scene generation is deterministic in the seed") {
  const TaskSetup a = makeTaskScene(Skill::kPour, 42);
  const TaskSetup b = makeTaskScene(Skill::kPour, 42);
  const TaskSetup c = makeTaskScene(Skill::kPour, 43);
  CHECK(a.scene.gripper_pose.asVector() == b.scene.gripper_pose.asVector());
  CHECK(a.scene.objects.at("cup").pose.asVector() ==
        b.scene.objects.at("cup").pose.asVector());
  CHECK(a.eval_camera.world_to_camera.translation ==
        b.eval_camera.world_to_camera.translation);
  CHECK(a.scene.objects.at("cup").pose.asVector() !=
        c.scene.objects.at("cup").pose.asVector());
}

TEST_CASE("noise-free detections lift back to the executed trajectory") {
  for (Skill skill : {Skill::kHingeOpen, Skill::kPour, Skill::kSlideClose}) {
    CAPTURE(skillName(skill));
    const TaskSetup setup = makeTaskScene(skill, 7);
    const ScriptedDemo demo = scriptedDemo(setup.task, setup.scene);
    std::vector<SimScene> states;
    replayDemo(setup.scene, demo.gripper, {}, &states);

    const RenderedClip clip =
        renderDetections(setup.scene, demo.gripper, demo.cameras, {}, 99);
    REQUIRE(clip.detections.size() == demo.gripper.size());
    REQUIRE(clip.features.size() == demo.gripper.size());

    const auto trajs = liftClip("demo", clip.detections, clip.cameras);
    REQUIRE(trajs.size() == 1);
    REQUIRE(trajs[0].poses.size() == states.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
      worst = std::max(worst,
                       maxPoseError(trajs[0].poses[i].pose, states[i].gripper_pose));
    }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("rendering is deterministic in the seed and honors dropout") {
  const TaskSetup setup = makeTaskScene(Skill::kStir, 3);
  const ScriptedDemo demo = scriptedDemo(setup.task, setup.scene);
  DetectionNoise noise;
  noise.pose_noise_std = 0.004;
  noise.dropout = 0.25;

  const RenderedClip a =
      renderDetections(setup.scene, demo.gripper, demo.cameras, noise, 5);
  const RenderedClip b =
      renderDetections(setup.scene, demo.gripper, demo.cameras, noise, 5);
  const RenderedClip c =
      renderDetections(setup.scene, demo.gripper, demo.cameras, noise, 6);

  REQUIRE(a.detections.size() == b.detections.size());
  CHECK(a.detections.size() < demo.gripper.size());
  CHECK(a.detections.size() > demo.gripper.size() / 2);
  CHECK(a.features.size() == demo.gripper.size());
  CHECK(a.cameras.size() == demo.gripper.size());
  for (std::size_t i = 0; i < a.detections.size(); ++i) {
    CHECK(a.detections[i].frame_id == b.detections[i].frame_id);
    CHECK(a.detections[i].wrist_pose_cam.asVector() ==
          b.detections[i].wrist_pose_cam.asVector());
  }
  bool differs = a.detections.size() != c.detections.size();
  if (!differs) {
    for (std::size_t i = 0; i < a.detections.size(); ++i) {
      differs = differs || a.detections[i].wrist_pose_cam.asVector() !=
                               c.detections[i].wrist_pose_cam.asVector();
    }
  }
  CHECK(differs);
}

TEST_CASE("translation noise survives lifting at its injected scale") {
  double sum_sq = 0.0;
  std::size_t count = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const TaskSetup setup = makeTaskScene(Skill::kPick, seed);
    const ScriptedDemo demo = scriptedDemo(setup.task, setup.scene);
    std::vector<SimScene> states;
    replayDemo(setup.scene, demo.gripper, {}, &states);

    DetectionNoise noise;
    noise.pose_noise_std = 0.005;
    const RenderedClip clip =
        renderDetections(setup.scene, demo.gripper, demo.cameras, noise, seed);
    const auto trajs = liftClip("noisy", clip.detections, clip.cameras);
    REQUIRE(trajs.size() == 1);
    for (const TimedPose& tp : trajs[0].poses) {
      const auto idx = static_cast<std::size_t>(tp.frame_id);
      sum_sq += (tp.pose.translation - states[idx].gripper_pose.translation)
                    .squaredNorm();
      count += 3;
    }
  }
  const double rmse = std::sqrt(sum_sq / count);
  CHECK(rmse > 0.003);
  CHECK(rmse < 0.008);
}

TEST_CASE("feature vectors expose scene state in the camera frame") {
  SimScene s = drawerScene();
  SimObject can;
  can.fill = 0.4;
  can.pose = Pose6d(Eigen::Vector3d(0.2, 0.3, 0.05), Eigen::Vector3d::Zero());
  s.objects["can"] = can;

  CameraFramed cam;  // identity extrinsics: camera frame == world frame
  const Eigen::VectorXd f = featureVector(s, cam);
  REQUIRE(f.size() == 32);

  CHECK((f.segment<3>(0) - s.gripper_pose.translation).norm() < 1e-12);
  CHECK((f.segment<3>(3) - s.gripper_pose.euler).norm() < 1e-12);
  CHECK(f[6] == 0.0);
  CHECK(f[7] == 0.0);
  const Eigen::Vector3d handle =
      handleTransformAt(*s.objects.at("drawer").joint, 0.1).translation;
  CHECK((f.segment<3>(8) - handle).norm() < 1e-12);
  CHECK((f.segment<3>(11) - (handle - s.gripper_pose.translation)).norm() < 1e-12);
  CHECK(f[14] == doctest::Approx(0.1 / 0.3));
  CHECK(f[15] == 0.0);
  CHECK(f.segment<8>(16).norm() == 0.0);
  CHECK((f.segment<3>(24) - can.pose.translation).norm() < 1e-12);
  CHECK(f[27] == doctest::Approx(0.4));
  CHECK(f.segment<4>(28).norm() == 0.0);

  SUBCASE("a non-trivial camera re-expresses the translations") {
    CameraFramed moved = cam;
    moved.world_to_camera =
        RigidTransformd{eulerToMatrix(Eigen::Vector3d(0.5, 0.2, -0.3)),
                        Eigen::Vector3d(0.1, -0.2, 0.3)};
    const Eigen::VectorXd g = featureVector(s, moved);
    CHECK((g.segment<3>(0) -
           moved.world_to_camera * s.gripper_pose.translation).norm() < 1e-12);
    CHECK((g.segment<3>(8) - moved.world_to_camera * handle).norm() < 1e-12);
  }
}

TEST_CASE("mismatched trajectory and camera lengths are rejected") {
  const TaskSetup setup = makeTaskScene(Skill::kPick, 1);
  const ScriptedDemo demo = scriptedDemo(setup.task, setup.scene);
  auto cams = demo.cameras;
  cams.pop_back();
  CHECK_THROWS_AS(
      renderDetections(setup.scene, demo.gripper, cams, {}, 1),
      LengthMismatch);
}
