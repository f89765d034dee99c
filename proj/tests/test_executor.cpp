#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Geometry>
#include <cmath>
#include <vector>

#include "egoskill/action_codec.hpp"
#include "egoskill/errors.hpp"
#include "egoskill/executor.hpp"
#include "egoskill/simkitchen.hpp"

using namespace egoskill;

namespace {

ActionChunk absChunkFromTargets(const Pose6d& base,
                                const std::vector<Pose6d>& targets) {
  std::vector<Pose6d> window;
  window.reserve(targets.size() + 1);
  window.push_back(base);
  for (const Pose6d& p : targets) window.push_back(p);
  ActionMode mode;
  mode.translation = TranslationMode::kAbsolute;
  mode.orientation = OrientationMode::kAbsolute;
  return encodeChunk(window, mode);
}

// Replays a prerecorded target list n poses at a time, repeating the last
// target once the list is exhausted.
PolicyFn demoReplayPolicy(std::vector<Pose6d> demo, int n, int* calls) {
  return [demo = std::move(demo), n, calls](const PolicyQuery& q) {
    const int k = (*calls)++;
    std::vector<Pose6d> targets;
    targets.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const std::size_t idx = static_cast<std::size_t>(k) * n + i;
      targets.push_back(idx < demo.size() ? demo[idx] : demo.back());
    }
    return absChunkFromTargets(q.current_pose, targets);
  };
}

PolicyFn stayPutPolicy(int n) {
  return [n](const PolicyQuery& q) {
    std::vector<Pose6d> window(static_cast<std::size_t>(n) + 1,
                               q.current_pose);
    return encodeChunk(window, ActionMode{});
  };
}

double poseGap(const Pose6d& a, const Pose6d& b) {
  const RigidTransformd ta = toTransform(a);
  const RigidTransformd tb = toTransform(b);
  return std::max((ta.translation - tb.translation).norm(),
                  (ta.rotation - tb.rotation).norm());
}

Calibration tiltedCalib() {
  Calibration calib;
  calib.camera_to_robot.rotation =
      Eigen::AngleAxisd(0.7, Eigen::Vector3d(1, 2, -1).normalized())
          .toRotationMatrix();
  calib.camera_to_robot.translation = Eigen::Vector3d(0.3, -1.2, 2.0);
  return calib;
}

}  // namespace

TEST_CASE("cameraToRobotChunk with identity calibration matches decode") {
  std::vector<Pose6d> targets;
  targets.push_back(Pose6d(Eigen::Vector3d(0.1, 0.2, 0.3),
                           Eigen::Vector3d(0.4, -0.2, 0.9)));
  targets.push_back(Pose6d(Eigen::Vector3d(-0.5, 0.0, 1.1),
                           Eigen::Vector3d(-1.2, 0.3, 0.0)));
  const ActionChunk chunk = absChunkFromTargets(targets[0], targets);

  const std::vector<Pose6d> mapped = cameraToRobotChunk(chunk, Calibration{});
  const std::vector<Pose6d> decoded = decodeChunk(chunk);
  REQUIRE(mapped.size() == decoded.size());
  for (std::size_t i = 0; i < mapped.size(); ++i) {
    CHECK(poseGap(mapped[i], decoded[i]) < 1e-14);
  }
}

TEST_CASE("cameraToRobotChunk with pure translation shifts positions only") {
  Calibration calib;
  calib.camera_to_robot.translation = Eigen::Vector3d(1.0, -2.0, 0.5);

  std::vector<Pose6d> targets;
  targets.push_back(Pose6d(Eigen::Vector3d(0.1, 0.2, 0.3),
                           Eigen::Vector3d(0.4, -0.2, 0.9)));
  targets.push_back(Pose6d(Eigen::Vector3d(0.7, -0.1, 0.0),
                           Eigen::Vector3d(2.0, 0.1, -0.6)));
  const ActionChunk chunk = absChunkFromTargets(targets[0], targets);

  const std::vector<Pose6d> mapped = cameraToRobotChunk(chunk, calib);
  const std::vector<Pose6d> decoded = decodeChunk(chunk);
  for (std::size_t i = 0; i < mapped.size(); ++i) {
    CHECK((mapped[i].translation -
           (decoded[i].translation + calib.camera_to_robot.translation))
              .norm() < 1e-14);
    CHECK((mapped[i].euler - decoded[i].euler).norm() < 1e-12);
  }
}

TEST_CASE("cameraToRobotChunk matches a homogeneous-matrix oracle") {
  const Calibration calib = tiltedCalib();
  Eigen::Matrix4d h_calib = Eigen::Matrix4d::Identity();
  h_calib.block<3, 3>(0, 0) = calib.camera_to_robot.rotation;
  h_calib.block<3, 1>(0, 3) = calib.camera_to_robot.translation;

  std::vector<Pose6d> targets;
  targets.push_back(Pose6d(Eigen::Vector3d(0.2, 0.1, 0.8),
                           Eigen::Vector3d(0.3, 0.5, -0.7)));
  targets.push_back(Pose6d(Eigen::Vector3d(-0.4, 0.9, 0.2),
                           Eigen::Vector3d(-2.8, -0.9, 1.4)));
  targets.push_back(Pose6d(Eigen::Vector3d(0.0, 0.0, 0.0),
                           Eigen::Vector3d(0.0, 1.1, 0.0)));
  const ActionChunk chunk = absChunkFromTargets(targets[0], targets);

  const std::vector<Pose6d> mapped = cameraToRobotChunk(chunk, calib);
  const std::vector<Pose6d> decoded = decodeChunk(chunk);
  for (std::size_t i = 0; i < mapped.size(); ++i) {
    Eigen::Matrix4d h_pose = Eigen::Matrix4d::Identity();
    const RigidTransformd t = toTransform(decoded[i]);
    h_pose.block<3, 3>(0, 0) = t.rotation;
    h_pose.block<3, 1>(0, 3) = t.translation;
    const Eigen::Matrix4d expected = h_calib * h_pose;

    const RigidTransformd got = toTransform(mapped[i]);
    CHECK((got.rotation - expected.block<3, 3>(0, 0)).norm() < 1e-12);
    CHECK((got.translation - expected.block<3, 1>(0, 3)).norm() < 1e-12);
  }
}

TEST_CASE("budget-bound episode executes whole chunks only") {
  TaskSetup setup = makeTaskScene(Skill::kPick, 21);
  setup.task.lift_height = 100.0;  // unreachable, episode must exhaust budget

  EpisodeOptions opts;
  opts.chunk_length = 10;

  SUBCASE("budget divisible by chunk length") {
    opts.budget = 50;
    const RolloutResult r =
        runEpisode(stayPutPolicy(opts.chunk_length), setup.scene, setup.task,
                   Calibration{}, Eigen::VectorXd::Zero(32), opts);
    CHECK_FALSE(r.success);
    CHECK(r.inference_calls == 5);
    CHECK(r.steps == 50);
    CHECK(r.steps == r.inference_calls * opts.chunk_length);
    REQUIRE(r.steps_per_query.size() == 5);
    for (int c : r.steps_per_query) CHECK(c == 10);
    CHECK(r.pose_log.size() == 50);
  }

  SUBCASE("leftover budget smaller than a chunk is never spent") {
    opts.budget = 55;
    const RolloutResult r =
        runEpisode(stayPutPolicy(opts.chunk_length), setup.scene, setup.task,
                   Calibration{}, Eigen::VectorXd::Zero(32), opts);
    CHECK_FALSE(r.success);
    CHECK(r.inference_calls == 5);
    CHECK(r.steps == 50);
  }

  SUBCASE("budget below one chunk means no queries at all") {
    opts.budget = 7;
    const RolloutResult r =
        runEpisode(stayPutPolicy(opts.chunk_length), setup.scene, setup.task,
                   Calibration{}, Eigen::VectorXd::Zero(32), opts);
    CHECK_FALSE(r.success);
    CHECK(r.inference_calls == 0);
    CHECK(r.steps == 0);
    CHECK(r.pose_log.empty());
  }
}

TEST_CASE("already-satisfied task returns without querying the policy") {
  const TaskSetup setup = makeTaskScene(Skill::kSlideOpen, 31);
  const SimScene held = attachForTask(setup.scene, setup.task);
  const ScriptedDemo demo = scriptedDemo(setup.task, held);
  const SimScene done = replayDemo(held, demo.gripper);
  REQUIRE(success(done, setup.task));

  int calls = 0;
  PolicyFn counting = [&calls](const PolicyQuery& q) {
    ++calls;
    return encodeChunk(std::vector<Pose6d>(11, q.current_pose), ActionMode{});
  };
  const RolloutResult r = runEpisode(counting, done, setup.task, Calibration{},
                                     Eigen::VectorXd::Zero(32));
  CHECK(r.success);
  CHECK(r.steps == 0);
  CHECK(r.inference_calls == 0);
  CHECK(calls == 0);
}

TEST_CASE("wrong chunk length from the policy is rejected") {
  const TaskSetup setup = makeTaskScene(Skill::kPick, 41);
  PolicyFn short_policy = [](const PolicyQuery& q) {
    return encodeChunk(std::vector<Pose6d>(8, q.current_pose), ActionMode{});
  };
  EpisodeOptions opts;
  opts.chunk_length = 10;
  CHECK_THROWS_AS(runEpisode(short_policy, setup.scene, setup.task,
                             Calibration{}, Eigen::VectorXd::Zero(32), opts),
                  BadWindowLength);
}

TEST_CASE("demo replay through the episode loop reproduces the demo path") {
  const Skill skills[] = {Skill::kSlideOpen, Skill::kSlideClose,
                          Skill::kHingeOpen, Skill::kHingeClose,
                          Skill::kPick,      Skill::kPlace,
                          Skill::kPour,      Skill::kStir,
                          Skill::kCut};
  for (Skill skill : skills) {
    for (std::uint64_t seed : {5, 6}) {
      CAPTURE(skillName(skill));
      CAPTURE(seed);
      const TaskSetup setup = makeTaskScene(skill, seed);
      const SimScene held = attachForTask(setup.scene, setup.task);
      const ScriptedDemo demo = scriptedDemo(setup.task, held);

      std::vector<SimScene> replay_states;
      replayDemo(held, demo.gripper, SimParams{}, &replay_states);

      EpisodeOptions opts;
      opts.chunk_length = 10;
      opts.budget = 200;
      int calls = 0;
      const RolloutResult r =
          runEpisode(demoReplayPolicy(demo.gripper, opts.chunk_length, &calls),
                     held, setup.task, Calibration{},
                     Eigen::VectorXd::Zero(32), opts);

      CHECK(r.success);
      CHECK(r.inference_calls == calls);
      REQUIRE(r.pose_log.size() == static_cast<std::size_t>(r.steps));
      REQUIRE(static_cast<std::size_t>(r.steps) <= replay_states.size() + 10);

      double worst = 0.0;
      const std::size_t overlap =
          std::min(r.pose_log.size(), replay_states.size());
      for (std::size_t i = 0; i < overlap; ++i) {
        worst = std::max(
            worst, poseGap(r.pose_log[i], replay_states[i].gripper_pose));
      }
      CHECK(worst < 1e-9);
      CHECK(poseGap(r.pose_log.back(), r.final_scene.gripper_pose) == 0.0);

      int sum = 0;
      for (int c : r.steps_per_query) {
        sum += c;
        CHECK(c <= opts.chunk_length);
      }
      CHECK(sum == r.steps);
      for (std::size_t i = 0; i + 1 < r.steps_per_query.size(); ++i) {
        CHECK(r.steps_per_query[i] == opts.chunk_length);
      }
    }
  }
}

TEST_CASE("queries carry the fixed goal and camera-frame state") {
  const TaskSetup setup = makeTaskScene(Skill::kSlideOpen, 51);
  const SimScene held = attachForTask(setup.scene, setup.task);
  const ScriptedDemo demo = scriptedDemo(setup.task, held);

  Eigen::VectorXd goal = Eigen::VectorXd::LinSpaced(32, -1.0, 2.5);
  const Calibration calib = tiltedCalib();

  std::vector<PolicyQuery> seen;
  int calls = 0;
  PolicyFn inner = demoReplayPolicy(demo.gripper, 10, &calls);
  // The demo targets are world poses; under this calibration the policy must
  // hand back camera-frame actions instead, so wrap the oracle accordingly.
  const RigidTransformd world_to_camera = invert(calib.camera_to_robot);
  PolicyFn recording = [&](const PolicyQuery& q) {
    seen.push_back(q);
    const ActionChunk world_chunk = inner(q);
    std::vector<Pose6d> window;
    window.push_back(q.current_pose);
    for (const Pose6d& p : decodeChunk(world_chunk)) {
      window.push_back(toPose(compose(world_to_camera, toTransform(p))));
    }
    ActionMode mode;
    mode.translation = TranslationMode::kAbsolute;
    mode.orientation = OrientationMode::kAbsolute;
    return encodeChunk(window, mode);
  };

  const RolloutResult r =
      runEpisode(recording, held, setup.task, calib, goal);
  CHECK(r.success);
  REQUIRE_FALSE(seen.empty());

  for (const PolicyQuery& q : seen) {
    REQUIRE(q.goal_feature.size() == goal.size());
    CHECK(q.goal_feature == goal);  // bitwise, the goal is never recomputed
    CHECK(q.obs_feature.size() == 32);
  }
  const Pose6d expected_start =
      toPose(compose(world_to_camera, toTransform(held.gripper_pose)));
  CHECK(poseGap(seen.front().current_pose, expected_start) < 1e-12);
}

TEST_CASE("camera-frame actions land where the calibration says") {
  TaskSetup setup = makeTaskScene(Skill::kPick, 61);
  setup.task.lift_height = 100.0;
  const Calibration calib = tiltedCalib();

  const Pose6d target_cam(Eigen::Vector3d(0.05, -0.1, 0.6),
                          Eigen::Vector3d(0.2, 0.1, -0.3));
  PolicyFn fixed = [&](const PolicyQuery& q) {
    std::vector<Pose6d> window(11, target_cam);
    window[0] = q.current_pose;
    ActionMode mode;
    mode.translation = TranslationMode::kAbsolute;
    mode.orientation = OrientationMode::kAbsolute;
    return encodeChunk(window, mode);
  };

  EpisodeOptions opts;
  opts.budget = 10;
  const RolloutResult r = runEpisode(fixed, setup.scene, setup.task, calib,
                                     Eigen::VectorXd::Zero(32), opts);
  CHECK(r.steps == 10);
  const Pose6d expected =
      toPose(compose(calib.camera_to_robot, toTransform(target_cam)));
  CHECK(poseGap(r.final_scene.gripper_pose, expected) < 1e-12);
}

TEST_CASE("full pipeline grasps the tool before executing the policy") {
  for (Skill skill : {Skill::kSlideOpen, Skill::kHingeOpen, Skill::kPick}) {
    CAPTURE(skillName(skill));
    const TaskSetup setup = makeTaskScene(skill, 71);
    // Demo scripted from the held state the grasp phase is expected to reach.
    const SimScene held = attachForTask(setup.scene, setup.task);
    const ScriptedDemo demo = scriptedDemo(setup.task, held);

    EpisodeOptions opts;
    opts.full_pipeline = true;
    int calls = 0;
    const RolloutResult r =
        runEpisode(demoReplayPolicy(demo.gripper, opts.chunk_length, &calls),
                   setup.scene, setup.task, Calibration{},
                   Eigen::VectorXd::Zero(32), opts);
    CHECK(r.success);
    CHECK(r.grasp_steps > 0);
    CHECK(r.inference_calls > 0);
  }
}

TEST_CASE("full pipeline propagates grasp failures") {
  const TaskSetup setup = makeTaskScene(Skill::kSlideOpen, 81);

  SUBCASE("score threshold filters every candidate") {
    EpisodeOptions opts;
    opts.full_pipeline = true;
    opts.grasp_score_threshold = 0.95;
    CHECK_THROWS_AS(
        runEpisode(stayPutPolicy(10), setup.scene, setup.task, Calibration{},
                   Eigen::VectorXd::Zero(32), opts),
        NoViableGrasp);
  }

  SUBCASE("tool missing from the scene") {
    TaskSpec task = setup.task;
    task.tool_id = "no_such_object";
    EpisodeOptions opts;
    opts.full_pipeline = true;
    CHECK_THROWS_AS(
        runEpisode(stayPutPolicy(10), setup.scene, task, Calibration{},
                   Eigen::VectorXd::Zero(32), opts),
        InfeasibleTask);
  }
}
