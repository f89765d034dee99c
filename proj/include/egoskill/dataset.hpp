#pragma once

#include <istream>
#include <map>
#include <string>
#include <vector>

#include "egoskill/action_codec.hpp"
#include "egoskill/egolift.hpp"
#include "egoskill/io/records.hpp"
#include "egoskill/skills.hpp"

namespace egoskill {

struct Annotation {
  std::string clip_id;
  std::string text;
  std::int64_t first_frame = 0;
  std::int64_t last_frame = 0;
};

struct SkillSegment {
  std::string clip_id;
  Skill skill = Skill::kSlideOpen;
  std::int64_t first_frame = 0;
  std::int64_t last_frame = 0;
};

using FeatureVec = Eigen::VectorXd;

/// One annotated clip ready for sample extraction. Frame features align
/// positionally with trajectory.poses, and goal_feature is the feature of
/// the final frame.
struct SkillClip {
  std::string clip_id;
  Skill skill = Skill::kSlideOpen;
  std::string annotation_text;
  WristTrajectory trajectory;
  std::vector<FeatureVec> frame_features;
  FeatureVec goal_feature;
};

struct TrainingSample {
  FeatureVec obs_feature;
  FeatureVec goal_feature;
  Pose6d current_pose;  // wrist pose in the frame of the camera at time t
  ActionChunk chunk;    // chunk.base_pose == current_pose
};

/// Keyword phrases for assigning annotation texts to skills. Matching is
/// case-insensitive on whole words, so "pick" does not match "picky".
std::map<Skill, std::vector<std::string>> defaultSkillKeywords();

/// True when `phrase` occurs in `text` with word boundaries on both sides,
/// ignoring case.
bool matchesKeyword(const std::string& text, const std::string& phrase);

/// Assigns each annotation to the single skill whose keyword list matches
/// its text; annotations matching zero or several skills are dropped.
std::vector<SkillSegment> segmentBySkill(
    const std::vector<Annotation>& annotations,
    const std::map<Skill, std::vector<std::string>>& skill_keywords);

/// Slides a window of n+1 poses over the clip at the given stride. Each
/// sample re-expresses its window in the camera frame of its start time and
/// encodes the result as an action chunk, so current_pose and the chunk's
/// base pose coincide.
std::vector<TrainingSample> buildSamples(const SkillClip& clip,
                                         const std::vector<CameraFramed>& cams,
                                         int n, ActionMode mode, int stride = 1);

void writeDatasetStream(std::string* out,
                        const std::vector<TrainingSample>& samples);
std::vector<TrainingSample> readDatasetStream(RecordReader& reader);

void writeDataset(const std::vector<TrainingSample>& samples,
                  const std::string& path);
std::vector<TrainingSample> readDataset(const std::string& path);

void writeAnnotations(const std::string& path,
                      const std::vector<Annotation>& annotations);
std::vector<Annotation> readAnnotations(const std::string& path);

}  // namespace egoskill
