#ifndef EGOSKILL_ERRORS_HPP
#define EGOSKILL_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace egoskill {

/// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct NonOrthonormalInput : Error {
  explicit NonOrthonormalInput(const std::string& what = "matrix is not a rotation")
      : Error(what) {}
};

struct NonPositiveDepth : Error {
  explicit NonPositiveDepth(double depth)
      : Error("depth must be positive, got " + std::to_string(depth)) {}
};

struct NonFiniteInput : Error {
  explicit NonFiniteInput(const std::string& what = "non-finite input") : Error(what) {}
};

struct FrameMismatch : Error {
  FrameMismatch(std::int64_t det_frame, std::int64_t cam_frame)
      : Error("detection frame " + std::to_string(det_frame) +
              " does not match camera frame " + std::to_string(cam_frame)) {}
};

struct MissingCamera : Error {
  explicit MissingCamera(std::int64_t frame)
      : Error("no camera record for frame " + std::to_string(frame)), frame_id(frame) {}
  std::int64_t frame_id;
};

struct EmptyClip : Error {
  explicit EmptyClip(const std::string& clip)
      : Error("no detection survives filtering in clip '" + clip + "'") {}
};

struct WindowOutOfRange : Error {
  explicit WindowOutOfRange(const std::string& what) : Error(what) {}
};

struct BadWindowLength : Error {
  BadWindowLength(std::size_t got, std::size_t want)
      : Error("window has " + std::to_string(got) + " poses, expected " +
              std::to_string(want)) {}
};

struct ClipTooShort : Error {
  explicit ClipTooShort(const std::string& what) : Error(what) {}
};

struct EmptyDataset : Error {
  EmptyDataset() : Error("cannot fit an index on an empty dataset") {}
};

struct MixedDimensions : Error {
  explicit MixedDimensions(const std::string& what) : Error(what) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

struct NoViableGrasp : Error {
  explicit NoViableGrasp(const std::string& what = "feasible grasp set is empty")
      : Error(what) {}
};

struct InfeasibleTask : Error {
  explicit InfeasibleTask(const std::string& what) : Error(what) {}
};

struct LengthMismatch : Error {
  explicit LengthMismatch(const std::string& what) : Error(what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(what) {}
};

struct FormatVersionMismatch : Error {
  explicit FormatVersionMismatch(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : Error(path + ":" + std::to_string(line) + ": " + what), line_number(line) {}
  std::size_t line_number;
};

}  // namespace egoskill

#endif  // EGOSKILL_ERRORS_HPP
