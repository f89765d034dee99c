#include "egoskill/action_codec.hpp"

#include "egoskill/errors.hpp"

namespace egoskill {

ActionChunk encodeChunk(const std::vector<Pose6d>& window, ActionMode mode) {
  if (window.size() < 2) throw BadWindowLength(window.size(), 2);
  ActionChunk chunk;
  chunk.mode = mode;
  chunk.base_pose = window.front();
  chunk.actions.reserve(window.size() - 1);
  for (std::size_t i = 1; i < window.size(); ++i) {
    Action6 a;
    if (mode.translation == TranslationMode::kAbsolute) {
      a.head<3>() = window[i].translation;
    } else {
      a.head<3>() = window[i].translation - window[i - 1].translation;
    }
    if (mode.orientation == OrientationMode::kAbsolute) {
      a.tail<3>() = window[i].euler;
    } else {
      const Eigen::Matrix3d rel = eulerToMatrix(window[i - 1].euler).transpose() *
                                  eulerToMatrix(window[i].euler);
      a.tail<3>() = matrixToEuler(rel);
    }
    chunk.actions.push_back(a);
  }
  return chunk;
}

std::vector<Pose6d> decodeChunk(const ActionChunk& chunk) {
  std::vector<Pose6d> poses;
  poses.reserve(chunk.actions.size());
  Eigen::Vector3d prev_t = chunk.base_pose.translation;
  Eigen::Matrix3d prev_r = eulerToMatrix(chunk.base_pose.euler);
  for (const Action6& a : chunk.actions) {
    Eigen::Vector3d t;
    if (chunk.mode.translation == TranslationMode::kAbsolute) {
      t = a.head<3>();
    } else {
      t = prev_t + a.head<3>();
    }
    Eigen::Vector3d euler;
    if (chunk.mode.orientation == OrientationMode::kAbsolute) {
      euler = a.tail<3>();
    } else {
      prev_r = prev_r * eulerToMatrix(a.tail<3>().eval());
      euler = matrixToEuler(prev_r);
    }
    poses.emplace_back(t, euler);
    prev_t = t;
  }
  return poses;
}

}  // namespace egoskill
