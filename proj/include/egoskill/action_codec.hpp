#ifndef EGOSKILL_ACTION_CODEC_HPP
#define EGOSKILL_ACTION_CODEC_HPP

#include <Eigen/Core>
#include <vector>

#include "egoskill/math/se3.hpp"

namespace egoskill {

using Action6 = Eigen::Matrix<double, 6, 1>;

enum class TranslationMode { kAbsolute, kRelative };
enum class OrientationMode { kAbsolute, kRelative };

/// One of the four translation/orientation representation combinations.
struct ActionMode {
  TranslationMode translation = TranslationMode::kRelative;
  OrientationMode orientation = OrientationMode::kRelative;

  friend bool operator==(const ActionMode&, const ActionMode&) = default;
};

/// n encoded actions plus the pose they hang off. Everything lives in the
/// camera frame of the window's first pose.
///
/// Absolute components store each future pose directly. Relative components
/// store the delta of each future pose with respect to its predecessor:
/// translations as plain vector differences, orientations as the Euler
/// triple of the relative rotation R_{i-1}^T R_i, wrapped to [-pi, pi).
struct ActionChunk {
  ActionMode mode;
  Pose6d base_pose;
  std::vector<Action6> actions;

  std::size_t n() const { return actions.size(); }
};

/// Encodes a window of n+1 poses (current pose plus n future poses) into a
/// chunk of n actions. base_pose = window[0].
/// Throws BadWindowLength when the window has fewer than 2 poses.
ActionChunk encodeChunk(const std::vector<Pose6d>& window, ActionMode mode);

/// Decodes a chunk back into the n future poses, chaining relative
/// components from base_pose.
std::vector<Pose6d> decodeChunk(const ActionChunk& chunk);

}  // namespace egoskill

#endif  // EGOSKILL_ACTION_CODEC_HPP
