#include "egoskill/retrieval.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "egoskill/errors.hpp"

namespace egoskill {

RetrievalIndex fitRetrievalIndex(std::vector<TrainingSample> dataset,
                                 const RetrievalWeights& weights,
                                 double pose_scale) {
  if (dataset.empty()) throw EmptyDataset();
  if (weights.obs < 0 || weights.goal < 0 || weights.pose < 0) {
    throw Error("retrieval weights must be nonnegative");
  }
  if (weights.obs == 0 && weights.goal == 0 && weights.pose == 0) {
    throw Error("retrieval weights must not all be zero");
  }
  if (!(pose_scale > 0) || !std::isfinite(pose_scale)) {
    throw Error("pose_scale must be positive and finite");
  }

  RetrievalIndex index;
  index.d = dataset.front().obs_feature.size();
  index.n = dataset.front().chunk.n();
  const ActionMode mode = dataset.front().chunk.mode;
  for (const TrainingSample& s : dataset) {
    if (s.obs_feature.size() != index.d || s.goal_feature.size() != index.d) {
      throw MixedDimensions("sample feature dimensions disagree");
    }
    if (s.chunk.n() != index.n || !(s.chunk.mode == mode)) {
      throw MixedDimensions("sample chunk lengths or modes disagree");
    }
  }
  index.samples = std::move(dataset);
  index.weights = weights;
  index.pose_scale = pose_scale;
  return index;
}

ActionChunk rebaseChunk(const ActionChunk& chunk, const Pose6d& new_base) {
  ActionChunk out = chunk;
  out.base_pose = new_base;
  const bool abs_t = chunk.mode.translation == TranslationMode::kAbsolute;
  const bool abs_o = chunk.mode.orientation == OrientationMode::kAbsolute;
  if (!abs_t && !abs_o) return out;

  const Eigen::Vector3d dt =
      new_base.translation - chunk.base_pose.translation;
  const Eigen::Matrix3d carry =
      eulerToMatrix(new_base.euler) *
      eulerToMatrix(chunk.base_pose.euler).transpose();
  for (Action6& a : out.actions) {
    if (abs_t) a.head<3>() += dt;
    if (abs_o) {
      a.tail<3>() = matrixToEuler(carry * eulerToMatrix(a.tail<3>().eval()));
    }
  }
  return out;
}

ActionChunk predict(const RetrievalIndex& index, const PolicyQuery& q) {
  if (index.samples.empty()) throw EmptyDataset();
  if (q.obs_feature.size() != index.d || q.goal_feature.size() != index.d) {
    throw DimensionMismatch("query features have size " +
                            std::to_string(q.obs_feature.size()) + "/" +
                            std::to_string(q.goal_feature.size()) +
                            ", index expects " + std::to_string(index.d));
  }

  const Eigen::Matrix3d q_rot = eulerToMatrix(q.current_pose.euler);
  double best_cost = std::numeric_limits<double>::infinity();
  std::size_t best = 0;
  for (std::size_t i = 0; i < index.samples.size(); ++i) {
    const TrainingSample& s = index.samples[i];
    double cost = 0.0;
    if (index.weights.obs > 0) {
      cost += index.weights.obs * (q.obs_feature - s.obs_feature).squaredNorm();
    }
    if (index.weights.goal > 0) {
      cost +=
          index.weights.goal * (q.goal_feature - s.goal_feature).squaredNorm();
    }
    if (index.weights.pose > 0) {
      const double angle =
          rotationDistance(q_rot, eulerToMatrix(s.current_pose.euler));
      cost += index.weights.pose *
              ((q.current_pose.translation - s.current_pose.translation)
                   .squaredNorm() +
               index.pose_scale * index.pose_scale * angle * angle);
    }
    if (cost < best_cost) {
      best_cost = cost;
      best = i;
    }
  }
  return rebaseChunk(index.samples[best].chunk, q.current_pose);
}

void writeIndex(const RetrievalIndex& index, const std::string& path) {
  std::string out = "format index 1\n";
  out += "weights " + formatDouble(index.weights.obs) + ' ' +
         formatDouble(index.weights.goal) + ' ' +
         formatDouble(index.weights.pose) + ' ' +
         formatDouble(index.pose_scale) + '\n';
  writeDatasetStream(&out, index.samples);
  atomicWriteFile(path, out);
}

RetrievalIndex readIndex(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  RecordReader reader(in, path);
  expectHeader(reader, "index", 1);
  if (!reader.nextLine() || reader.takeToken() != "weights") {
    reader.fail("expected a 'weights' record");
  }
  RetrievalWeights weights;
  weights.obs = reader.takeDouble();
  weights.goal = reader.takeDouble();
  weights.pose = reader.takeDouble();
  const double pose_scale = reader.takeDouble();
  reader.expectLineEnd();
  return fitRetrievalIndex(readDatasetStream(reader), weights, pose_scale);
}

}  // namespace egoskill
