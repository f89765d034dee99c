#pragma once

#include <string>
#include <vector>

#include "egoskill/dataset.hpp"

namespace egoskill {

struct RetrievalWeights {
  double obs = 1.0;
  double goal = 1.0;
  double pose = 1.0;
};

struct PolicyQuery {
  FeatureVec obs_feature;
  FeatureVec goal_feature;
  Pose6d current_pose;  // camera frame, like the stored samples
};

/// Immutable nearest-neighbor store over training samples. Lookup is an
/// exact linear scan, so results are reproducible and order-stable.
struct RetrievalIndex {
  std::vector<TrainingSample> samples;
  RetrievalWeights weights;
  double pose_scale = 0.1;  // meters per radian when comparing poses
  Eigen::Index d = 0;
  std::size_t n = 0;
};

RetrievalIndex fitRetrievalIndex(std::vector<TrainingSample> dataset,
                                 const RetrievalWeights& weights = {},
                                 double pose_scale = 0.1);

/// Rewrites a chunk onto a new base pose. Relative action channels transfer
/// verbatim; absolute translation channels shift by the base translation
/// difference and absolute orientation channels rotate by the base rotation
/// difference, so every action keeps its offset from the base.
ActionChunk rebaseChunk(const ActionChunk& chunk, const Pose6d& new_base);

/// Returns the stored chunk minimizing
///   w_obs |Δobs|^2 + w_goal |Δgoal|^2 + w_pose (|Δt|^2 + (pose_scale θ)^2)
/// with ties going to the lowest stored index, rebased onto q.current_pose.
ActionChunk predict(const RetrievalIndex& index, const PolicyQuery& q);

void writeIndex(const RetrievalIndex& index, const std::string& path);
RetrievalIndex readIndex(const std::string& path);

}  // namespace egoskill
