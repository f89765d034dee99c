// Command-line front end for the skill-from-video pipeline. Subcommands pipe
// through plain text files: synth renders detections from scripted demos,
// extract lifts them into world trajectories, build turns trajectories into
// a training dataset, fit freezes a retrieval index, eval runs seeded trial
// batches against the kitchen simulator, report aggregates trial records,
// grasp runs the grasp selector on candidate files, and verify round-trips
// the zero-noise pipeline as a self check.
//
// All randomness derives from --seed: unit of work k (demo k in synth, trial
// k in eval, clip k in verify) uses mixSeed(seed, k), so results do not
// depend on execution order or thread count.

#include "CLI11.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "egoskill/dataset.hpp"
#include "egoskill/errors.hpp"
#include "egoskill/executor.hpp"
#include "egoskill/grasp.hpp"
#include "egoskill/io/config.hpp"
#include "egoskill/io/records.hpp"
#include "egoskill/retrieval.hpp"
#include "egoskill/rng.hpp"
#include "egoskill/simkitchen.hpp"

using namespace egoskill;

namespace {

struct Global {
  std::uint64_t seed = 0;
  std::string config_path;
  std::string out_dir = ".";
  Config cfg;
};

void loadConfig(Global* g) {
  if (!g->config_path.empty()) g->cfg = Config::fromFile(g->config_path);
}

// Relative output paths land inside --out-dir; inputs are taken as given.
std::string outPath(const Global& g, const std::string& path) {
  if (path.empty() || path.front() == '/' || g.out_dir.empty() ||
      g.out_dir == ".") {
    return path;
  }
  return g.out_dir + "/" + path;
}

void ensureParentDir(const std::string& path) {
  const std::filesystem::path parent =
      std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
}

double poseGap(const Pose6d& a, const Pose6d& b) {
  const RigidTransformd ta = toTransform(a);
  const RigidTransformd tb = toTransform(b);
  return std::max((ta.translation - tb.translation).norm(),
                  (ta.rotation - tb.rotation).norm());
}

Skill requireSkill(const std::string& name) {
  const std::optional<Skill> skill = parseSkill(name);
  if (!skill) throw Error("unknown skill '" + name + "'");
  return *skill;
}

// One natural-language caption per skill; each matches exactly one keyword
// list, so the dataset builder's segmentation assigns it unambiguously.
const char* captionFor(Skill skill) {
  switch (skill) {
    case Skill::kSlideOpen: return "the person pulls to open the drawer";
    case Skill::kSlideClose: return "the person pushes to close the drawer";
    case Skill::kHingeOpen: return "the person swings open the door of the cabinet";
    case Skill::kHingeClose: return "the person moves to close the door";
    case Skill::kPick: return "the person reaches to pick up the can";
    case Skill::kPlace: return "the person lowers the cup to place it on the mat";
    case Skill::kPour: return "the person tilts the cup to pour water into the bowl";
    case Skill::kStir: return "the person uses the spoon to stir the pot";
    case Skill::kCut: return "the person uses the knife to cut the carrot";
  }
  return "";
}

TranslationMode translationModeFrom(const std::string& token) {
  if (token == "abs") return TranslationMode::kAbsolute;
  if (token == "rel") return TranslationMode::kRelative;
  throw Error("translation_mode must be 'abs' or 'rel', got '" + token + "'");
}

OrientationMode orientationModeFrom(const std::string& token) {
  if (token == "abs") return OrientationMode::kAbsolute;
  if (token == "rel") return OrientationMode::kRelative;
  throw Error("orientation_mode must be 'abs' or 'rel', got '" + token + "'");
}

int cmdSynth(const Global& g, const std::vector<std::string>& skill_names,
             int demos) {
  if (demos < 1) throw Error("--demos must be positive");
  DetectionNoise noise;
  noise.pose_noise_std = g.cfg.getDouble("pose_noise_std", 0.0);
  noise.dropout = g.cfg.getDouble("dropout", 0.0);
  const int feature_dim = g.cfg.getInt("feature_dim", 32);
  if (g.out_dir != "." && !g.out_dir.empty()) {
    std::filesystem::create_directories(g.out_dir);
  }

  std::uint64_t counter = 0;
  for (const std::string& name : skill_names) {
    const Skill skill = requireSkill(name);
    std::size_t frames = 0;
    for (int i = 0; i < demos; ++i, ++counter) {
      const std::uint64_t demo_seed = mixSeed(g.seed, counter);
      const TaskSetup setup = makeTaskScene(skill, demo_seed);
      const SimScene held = attachForTask(setup.scene, setup.task);
      const ScriptedDemo demo = scriptedDemo(setup.task, held);
      const RenderedClip clip =
          renderDetections(held, demo.gripper, demo.cameras, noise, demo_seed,
                           feature_dim);
      frames += demo.gripper.size();

      const std::string clip_id = name + "_" + std::to_string(i);
      writeDetections(outPath(g, clip_id + "_detections.txt"),
                      clip.detections);
      writeCameras(outPath(g, clip_id + "_cameras.txt"), clip.cameras);

      std::vector<FeatureRecord> features;
      features.reserve(clip.features.size());
      for (std::size_t j = 0; j < clip.features.size(); ++j) {
        features.push_back(FeatureRecord{
            clip_id, static_cast<std::int64_t>(j), clip.features[j]});
      }
      writeFeatures(outPath(g, clip_id + "_features.txt"), features);

      Annotation note;
      note.clip_id = clip_id;
      note.text = captionFor(skill);
      note.first_frame = 0;
      note.last_frame = static_cast<std::int64_t>(demo.gripper.size()) - 1;
      writeAnnotations(outPath(g, clip_id + "_annotation.txt"), {note});
    }
    std::printf("synth: skill %s  demos %d  frames %zu\n", name.c_str(),
                demos, frames);
  }
  return 0;
}

int cmdExtract(const Global& g, const std::string& detections_path,
               const std::string& cameras_path, const std::string& out,
               const std::string& clip_id) {
  try {
    const std::vector<HandDetection> dets = readDetections(detections_path);
    const std::vector<CameraFramed> cams = readCameras(cameras_path);
    const double min_confidence = g.cfg.getDouble("min_confidence", 0.5);
    const int max_gap = g.cfg.getInt("max_gap", 5);

    const std::vector<WristTrajectory> trajectories =
        liftClip(clip_id, dets, cams, min_confidence, max_gap);

    const std::string path = outPath(g, out);
    ensureParentDir(path);
    writeTrajectories(path, trajectories);

    std::size_t gaps = 0;
    for (const WristTrajectory& t : trajectories) gaps += t.source_gaps.size();
    std::printf("extract: clips 1  trajectories %zu  gaps %zu  splits %zu\n",
                trajectories.size(), gaps, trajectories.size() - 1);
    return 0;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "extract: parse failure: %s\n", e.what());
    return 2;
  } catch (const FormatVersionMismatch& e) {
    std::fprintf(stderr, "extract: parse failure: %s\n", e.what());
    return 2;
  } catch (const EmptyClip& e) {
    std::fprintf(stderr, "extract: empty output: %s\n", e.what());
    return 3;
  }
}

// Restricts a trajectory to an annotated frame range. Gap fills that fall
// outside the range are dropped with the poses they describe.
WristTrajectory sliceTrajectory(const WristTrajectory& traj,
                                std::int64_t first, std::int64_t last) {
  WristTrajectory out;
  out.clip_id = traj.clip_id;
  for (const TimedPose& p : traj.poses) {
    if (p.frame_id >= first && p.frame_id <= last) out.poses.push_back(p);
  }
  for (const GapFill& gap : traj.source_gaps) {
    if (gap.first >= first && gap.last <= last) out.source_gaps.push_back(gap);
  }
  return out;
}

int cmdBuild(const Global& g, const std::string& in_dir,
             const std::string& out) {
  const int n = g.cfg.getInt("chunk_n", 10);
  const int stride = g.cfg.getInt("stride", 1);
  ActionMode mode;
  mode.translation =
      translationModeFrom(g.cfg.getString("translation_mode", "rel"));
  mode.orientation =
      orientationModeFrom(g.cfg.getString("orientation_mode", "rel"));

  std::vector<std::string> clip_ids;
  const std::string suffix = "_annotation.txt";
  for (const auto& entry : std::filesystem::directory_iterator(in_dir)) {
    const std::string name = entry.path().filename().string();
    if (name.size() > suffix.size() &&
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
      clip_ids.push_back(name.substr(0, name.size() - suffix.size()));
    }
  }
  std::sort(clip_ids.begin(), clip_ids.end());
  if (clip_ids.empty()) {
    throw Error("no *_annotation.txt files under '" + in_dir + "'");
  }

  std::vector<Annotation> annotations;
  for (const std::string& id : clip_ids) {
    const std::vector<Annotation> ann =
        readAnnotations(in_dir + "/" + id + suffix);
    annotations.insert(annotations.end(), ann.begin(), ann.end());
  }
  const std::vector<SkillSegment> segments =
      segmentBySkill(annotations, defaultSkillKeywords());
  std::map<std::string, std::vector<SkillSegment>> by_clip;
  for (const SkillSegment& seg : segments) by_clip[seg.clip_id].push_back(seg);

  std::vector<TrainingSample> samples;
  int used_clips = 0;
  int built_segments = 0;
  int skipped_short = 0;
  for (const std::string& id : clip_ids) {
    const auto clip_segments = by_clip.find(id);
    if (clip_segments == by_clip.end()) continue;
    ++used_clips;

    const std::vector<WristTrajectory> trajectories =
        readTrajectories(in_dir + "/" + id + "_trajectories.txt");
    const std::vector<FeatureRecord> features =
        readFeatures(in_dir + "/" + id + "_features.txt");
    const std::vector<CameraFramed> cams =
        readCameras(in_dir + "/" + id + "_cameras.txt");
    if (features.empty()) throw Error("no features for clip '" + id + "'");

    std::map<std::int64_t, FeatureVec> by_frame;
    for (const FeatureRecord& f : features) by_frame[f.frame_id] = f.feature;

    for (const SkillSegment& seg : clip_segments->second) {
      for (const WristTrajectory& whole : trajectories) {
        const WristTrajectory traj =
            sliceTrajectory(whole, seg.first_frame, seg.last_frame);
        if (traj.poses.empty()) continue;

        SkillClip clip;
        clip.clip_id = id;
        clip.skill = seg.skill;
        clip.annotation_text = captionFor(seg.skill);
        clip.trajectory = traj;
        clip.goal_feature = features.back().feature;
        clip.frame_features.reserve(traj.poses.size());
        for (const TimedPose& p : traj.poses) {
          const auto f = by_frame.find(p.frame_id);
          if (f == by_frame.end()) {
            throw Error("clip '" + id + "' has no feature for frame " +
                        std::to_string(p.frame_id));
          }
          clip.frame_features.push_back(f->second);
        }

        try {
          const std::vector<TrainingSample> built =
              buildSamples(clip, cams, n, mode, stride);
          samples.insert(samples.end(), built.begin(), built.end());
          ++built_segments;
        } catch (const ClipTooShort&) {
          ++skipped_short;
        }
      }
    }
  }

  const std::string path = outPath(g, out);
  ensureParentDir(path);
  writeDataset(samples, path);
  std::printf("build: clips %d  segments %d  skipped %d  samples %zu\n",
              used_clips, built_segments, skipped_short, samples.size());
  return 0;
}

int cmdFit(const Global& g, const std::string& dataset_path,
           const std::string& out) {
  std::vector<TrainingSample> dataset = readDataset(dataset_path);
  RetrievalWeights weights;
  weights.obs = g.cfg.getDouble("obs_weight", 1.0);
  weights.goal = g.cfg.getDouble("goal_weight", 1.0);
  weights.pose = g.cfg.getDouble("pose_weight", 1.0);
  const double pose_scale = g.cfg.getDouble("pose_scale", 0.1);

  const RetrievalIndex index =
      fitRetrievalIndex(std::move(dataset), weights, pose_scale);
  const std::string path = outPath(g, out);
  ensureParentDir(path);
  writeIndex(index, path);
  std::printf("fit: samples %zu  d %ld  n %zu\n", index.samples.size(),
              static_cast<long>(index.d), index.n);
  return 0;
}

TrialRecord runTrial(const RetrievalIndex& index, Skill skill, int trial_index,
                     std::uint64_t trial_seed, int budget, int feature_dim) {
  const TaskSetup setup = makeTaskScene(skill, trial_seed);
  const SimScene held = attachForTask(setup.scene, setup.task);

  // Goal conditioning: the feature of the completed scene as the evaluation
  // camera would observe it.
  const ScriptedDemo demo = scriptedDemo(setup.task, held);
  const SimScene completed = replayDemo(held, demo.gripper);
  const FeatureVec goal =
      featureVector(completed, setup.eval_camera, feature_dim);

  Calibration calib;
  calib.camera_to_robot = setup.eval_camera.cameraToWorld();

  EpisodeOptions opts;
  opts.budget = budget;
  opts.chunk_length = static_cast<int>(index.n);
  opts.feature_dim = feature_dim;

  const PolicyFn policy = [&index](const PolicyQuery& q) {
    return predict(index, q);
  };
  const RolloutResult r =
      runEpisode(policy, held, setup.task, calib, goal, opts);

  TrialRecord record;
  record.index = trial_index;
  record.skill = skill;
  record.seed = trial_seed;
  record.success = r.success;
  record.steps = r.steps;
  record.inference_calls = r.inference_calls;
  return record;
}

int cmdEval(const Global& g, const std::string& index_path,
            const std::string& skill_name, int trials, int threads,
            const std::string& out) {
  if (trials < 1) throw Error("--trials must be positive");
  const Skill skill = requireSkill(skill_name);
  const RetrievalIndex index = readIndex(index_path);
  const int budget = g.cfg.getInt("budget", 200);
  const int feature_dim =
      g.cfg.getInt("feature_dim", static_cast<int>(index.d));

  std::vector<TrialRecord> records(static_cast<std::size_t>(trials));
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= trials) break;
      records[static_cast<std::size_t>(i)] =
          runTrial(index, skill, i, mixSeed(g.seed, static_cast<std::uint64_t>(i)),
                   budget, feature_dim);
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  const std::string path = outPath(g, out);
  ensureParentDir(path);
  writeTrials(path, records);

  int successes = 0;
  for (const TrialRecord& r : records) successes += r.success ? 1 : 0;
  std::printf("eval: skill %s  trials %d  successes %d  rate %.1f%%\n",
              skill_name.c_str(), trials, successes,
              100.0 * successes / trials);
  return 0;
}

AffordancePoint readAffordance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  RecordReader reader(in, path);
  expectHeader(reader, "affordance", 1);
  reader.expectLineEnd();
  if (!reader.nextLine()) reader.fail("missing affordance record");

  AffordancePoint aff;
  aff.pixel.x() = reader.takeDouble();
  aff.pixel.y() = reader.takeDouble();
  aff.depth = reader.takeDouble();
  for (int i = 0; i < 3; ++i) aff.point3d_cam[i] = reader.takeDouble();
  aff.task_text = reader.takeRest();
  return aff;
}

int cmdGrasp(const Global& g, const std::string& candidates_path,
             const std::string& affordance_path, const std::string& out) {
  const std::vector<GraspCandidate> candidates =
      readGraspCandidates(candidates_path);
  const AffordancePoint aff = readAffordance(affordance_path);
  const double threshold = g.cfg.getDouble("grasp_threshold", 0.2);
  Eigen::Vector3d init_euler(g.cfg.getDouble("init_alpha", 0.0),
                             g.cfg.getDouble("init_beta", 0.0),
                             g.cfg.getDouble("init_gamma", 0.0));

  const std::pair<SelectionMode, const char*> modes[] = {
      {SelectionMode::kAffordanceFused, "affordance_fused"},
      {SelectionMode::kBestScoreOnly, "best_score_only"},
      {SelectionMode::kContactPointDirect, "contact_point_direct"},
  };

  std::string body = "format grasps 1\n";
  for (const auto& [mode, name] : modes) {
    std::string line = std::string("grasp ") + name;
    try {
      const Pose6d pose =
          selectGrasp(aff, candidates, mode, threshold, init_euler);
      const auto v = pose.asVector();
      for (int i = 0; i < 6; ++i) line += " " + formatDouble(v[i]);
    } catch (const NoViableGrasp&) {
      line += " none";
    }
    body += line + "\n";
    std::printf("%s\n", line.c_str());
  }

  const std::string path = outPath(g, out);
  ensureParentDir(path);
  atomicWriteFile(path, body);
  return 0;
}

int cmdReport(const Global& g, const std::vector<std::string>& trial_paths,
              const std::string& out) {
  std::vector<TrialRecord> all;
  for (const std::string& path : trial_paths) {
    const std::vector<TrialRecord> records = readTrials(path);
    all.insert(all.end(), records.begin(), records.end());
  }
  if (all.empty()) throw Error("no trial records to report");

  struct Bucket {
    int trials = 0;
    int successes = 0;
    long steps = 0;
    long calls = 0;
  };
  std::map<Skill, Bucket> buckets;
  Bucket total;
  for (const TrialRecord& r : all) {
    Bucket& b = buckets[r.skill];
    ++b.trials;
    ++total.trials;
    b.successes += r.success ? 1 : 0;
    total.successes += r.success ? 1 : 0;
    b.steps += r.steps;
    total.steps += r.steps;
    b.calls += r.inference_calls;
    total.calls += r.inference_calls;
  }

  std::printf("%-12s %7s %10s %7s %11s %11s\n", "skill", "trials",
              "successes", "rate", "mean_steps", "mean_calls");
  auto printRow = [](const char* name, const Bucket& b) {
    std::printf("%-12s %7d %10d %6.1f%% %11.1f %11.1f\n", name, b.trials,
                b.successes, 100.0 * b.successes / b.trials,
                static_cast<double>(b.steps) / b.trials,
                static_cast<double>(b.calls) / b.trials);
  };
  for (Skill skill : kAllSkills) {
    const auto it = buckets.find(skill);
    if (it != buckets.end()) printRow(skillName(skill), it->second);
  }
  printRow("all", total);

  std::string body = "format report 1\n";
  char line[160];
  for (Skill skill : kAllSkills) {
    const auto it = buckets.find(skill);
    if (it == buckets.end()) continue;
    const Bucket& b = it->second;
    std::snprintf(line, sizeof(line), "rate %s %d %d %.1f\n", skillName(skill),
                  b.trials, b.successes, 100.0 * b.successes / b.trials);
    body += line;
  }
  std::snprintf(line, sizeof(line), "rate all %d %d %.1f\n", total.trials,
                total.successes, 100.0 * total.successes / total.trials);
  body += line;

  const std::string path = outPath(g, out);
  ensureParentDir(path);
  atomicWriteFile(path, body);
  return 0;
}

int cmdVerify(const Global& g, int clips) {
  if (clips < 1) throw Error("--clips must be positive");
  double worst_lift = 0.0;
  double worst_reexpress = 0.0;
  double worst_codec = 0.0;

  for (int c = 0; c < clips; ++c) {
    const Skill skill = kAllSkills[static_cast<std::size_t>(c) % kAllSkills.size()];
    const std::uint64_t seed = mixSeed(g.seed, static_cast<std::uint64_t>(c));
    const TaskSetup setup = makeTaskScene(skill, seed);
    const SimScene held = attachForTask(setup.scene, setup.task);
    const ScriptedDemo demo = scriptedDemo(setup.task, held);

    std::vector<SimScene> states;
    replayDemo(held, demo.gripper, SimParams{}, &states);
    const RenderedClip rendered = renderDetections(
        held, demo.gripper, demo.cameras, DetectionNoise{}, seed);

    const std::vector<WristTrajectory> trajectories =
        liftClip("verify_" + std::to_string(c), rendered.detections,
                 demo.cameras);
    if (trajectories.size() != 1 ||
        trajectories[0].poses.size() != states.size()) {
      std::printf("[FAIL] zero-noise lift lost frames on clip %d\n", c);
      return 1;
    }
    const WristTrajectory& traj = trajectories[0];
    for (std::size_t i = 0; i < states.size(); ++i) {
      worst_lift = std::max(
          worst_lift, poseGap(traj.poses[i].pose, states[i].gripper_pose));
    }

    for (std::size_t t : {std::size_t{0}, traj.poses.size() / 2}) {
      if (t + 1 >= traj.poses.size()) continue;
      const std::vector<Pose6d> window =
          reexpressWindow(traj, demo.cameras, t, 1);
      worst_reexpress = std::max(
          worst_reexpress,
          poseGap(window[0], rendered.detections[t].wrist_pose_cam));
    }

    const std::size_t span = std::min<std::size_t>(10, traj.poses.size() - 1);
    const std::vector<Pose6d> window =
        reexpressWindow(traj, demo.cameras, 0, span);
    for (TranslationMode tm :
         {TranslationMode::kAbsolute, TranslationMode::kRelative}) {
      for (OrientationMode om :
           {OrientationMode::kAbsolute, OrientationMode::kRelative}) {
        ActionMode mode;
        mode.translation = tm;
        mode.orientation = om;
        const std::vector<Pose6d> decoded =
            decodeChunk(encodeChunk(window, mode));
        for (std::size_t i = 0; i < decoded.size(); ++i) {
          worst_codec =
              std::max(worst_codec, poseGap(decoded[i], window[i + 1]));
        }
      }
    }
  }

  bool ok = true;
  auto check = [&ok](const char* what, double value, double bound) {
    const bool pass = value < bound;
    ok = ok && pass;
    std::printf("[%s] %s: max error %.3g (bound %.1g)\n",
                pass ? "PASS" : "FAIL", what, value, bound);
  };
  check("lifted trajectories match simulated gripper paths", worst_lift, 1e-9);
  check("window re-expression reproduces raw detections", worst_reexpress, 1e-9);
  check("chunk encode/decode round trip", worst_codec, 1e-9);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skill-from-video pipeline"};
  app.require_subcommand(1);

  Global g;
  app.add_option("--seed", g.seed,
                 "base seed; unit k of any batch uses mixSeed(seed, k)");
  app.add_option("--config", g.config_path,
                 "key=value file overriding built-in defaults");
  app.add_option("--out-dir", g.out_dir,
                 "directory where relative output paths are written");

  int rc = 0;
  auto guarded = [&rc, &g](auto fn) {
    return [&rc, &g, fn]() {
      try {
        loadConfig(&g);
        rc = fn();
      } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        rc = 1;
      } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        rc = 1;
      }
    };
  };

  auto* synth = app.add_subcommand(
      "synth", "render scripted demos into detection/camera/feature files");
  synth->fallthrough();
  std::vector<std::string> synth_skills;
  int synth_demos = 5;
  synth->add_option("--skills", synth_skills, "skill names")
      ->required()
      ->delimiter(',');
  synth->add_option("--demos", synth_demos, "demos per skill");
  synth->callback(
      guarded([&]() { return cmdSynth(g, synth_skills, synth_demos); }));

  auto* extract = app.add_subcommand(
      "extract", "lift camera-frame detections into world trajectories");
  extract->fallthrough();
  std::string ex_detections, ex_cameras, ex_out = "trajectories.txt";
  std::string ex_clip_id = "clip";
  extract->add_option("--detections", ex_detections, "detections file")
      ->required();
  extract->add_option("--cameras", ex_cameras, "cameras file")->required();
  extract->add_option("--out", ex_out, "output trajectories file");
  extract->add_option("--clip-id", ex_clip_id, "clip id for the output");
  extract->callback(guarded(
      [&]() { return cmdExtract(g, ex_detections, ex_cameras, ex_out, ex_clip_id); }));

  auto* build = app.add_subcommand(
      "build", "assemble a training dataset from extracted clips");
  build->fallthrough();
  std::string build_in_dir, build_out = "dataset.txt";
  build->add_option("--in-dir", build_in_dir,
                    "directory holding per-clip files (default: --out-dir)");
  build->add_option("--out", build_out, "output dataset file");
  build->callback(guarded([&]() {
    return cmdBuild(g, build_in_dir.empty() ? g.out_dir : build_in_dir,
                    build_out);
  }));

  auto* fit = app.add_subcommand("fit", "freeze a retrieval index");
  fit->fallthrough();
  std::string fit_dataset, fit_out = "index.txt";
  fit->add_option("--dataset", fit_dataset, "dataset file")->required();
  fit->add_option("--out", fit_out, "output index file");
  fit->callback(guarded([&]() { return cmdFit(g, fit_dataset, fit_out); }));

  auto* eval = app.add_subcommand(
      "eval", "run seeded policy trials in the kitchen simulator");
  eval->fallthrough();
  std::string eval_index, eval_skill, eval_out = "trials.txt";
  int eval_trials = 20;
  int eval_threads = 1;
  eval->add_option("--index", eval_index, "retrieval index file")->required();
  eval->add_option("--skill", eval_skill, "skill to evaluate")->required();
  eval->add_option("--trials", eval_trials, "number of trials");
  eval->add_option("--threads", eval_threads, "worker threads");
  eval->add_option("--out", eval_out, "output trial-record file");
  eval->callback(guarded([&]() {
    return cmdEval(g, eval_index, eval_skill, eval_trials, eval_threads,
                   eval_out);
  }));

  auto* grasp = app.add_subcommand(
      "grasp", "run grasp selection on candidate and affordance files");
  grasp->fallthrough();
  std::string grasp_candidates, grasp_affordance, grasp_out = "grasps.txt";
  grasp->add_option("--candidates", grasp_candidates, "candidates file")
      ->required();
  grasp->add_option("--affordance", grasp_affordance, "affordance file")
      ->required();
  grasp->add_option("--out", grasp_out, "output file");
  grasp->callback(guarded(
      [&]() { return cmdGrasp(g, grasp_candidates, grasp_affordance, grasp_out); }));

  auto* report =
      app.add_subcommand("report", "aggregate trial records into a table");
  report->fallthrough();
  std::vector<std::string> report_trials;
  std::string report_out = "report.txt";
  report->add_option("--trials", report_trials, "trial-record files")
      ->required();
  report->add_option("--out", report_out, "output report file");
  report->callback(
      guarded([&]() { return cmdReport(g, report_trials, report_out); }));

  auto* verify = app.add_subcommand(
      "verify", "self-check the zero-noise pipeline round trip");
  verify->fallthrough();
  int verify_clips = 9;
  verify->add_option("--clips", verify_clips, "synthetic clips to check");
  verify->callback(guarded([&]() { return cmdVerify(g, verify_clips); }));

  CLI11_PARSE(app, argc, argv);
  return rc;
}
