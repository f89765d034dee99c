#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "egoskill/egolift.hpp"
#include "egoskill/grasp.hpp"
#include "egoskill/skills.hpp"

// Line-oriented text formats. Every file starts with a header line
//   format <kind> <version> [params...]
// and numbers are written with 17 significant digits, so a write/read round
// trip reproduces every double bit for bit. Writes go through a temp file
// and a rename, so readers never observe a partially written file.

namespace egoskill {

struct FeatureRecord {
  std::string clip_id;
  std::int64_t frame_id = 0;
  Eigen::VectorXd feature;
};

struct TrialRecord {
  int index = 0;
  Skill skill = Skill::kSlideOpen;
  std::uint64_t seed = 0;
  bool success = false;
  int steps = 0;
  int inference_calls = 0;
};

std::string formatDouble(double value);
void atomicWriteFile(const std::string& path, const std::string& contents);
std::string readFileToString(const std::string& path);

// Tokenizer over one file that tracks line numbers for error reporting.
class RecordReader {
 public:
  RecordReader(std::istream& in, std::string path);

  bool nextLine();
  int lineNumber() const { return line_number_; }
  const std::string& path() const { return path_; }

  bool atLineEnd();
  std::string takeToken();
  double takeDouble();
  std::int64_t takeInt();
  std::uint64_t takeUnsigned();
  std::string takeRest();
  void expectLineEnd();
  [[noreturn]] void fail(const std::string& what) const;

 private:
  std::istream& in_;
  std::string path_;
  std::string line_;
  std::size_t pos_ = 0;
  int line_number_ = 0;
};

// Reads the header line and returns its trailing tokens; a missing header or
// a version other than `version` raises FormatVersionMismatch.
void expectHeader(RecordReader& reader, const std::string& kind, int version);

void writeDetections(const std::string& path,
                     const std::vector<HandDetection>& detections);
std::vector<HandDetection> readDetections(const std::string& path);

void writeCameras(const std::string& path,
                  const std::vector<CameraFramed>& cameras);
std::vector<CameraFramed> readCameras(const std::string& path);

void writeTrajectories(const std::string& path,
                       const std::vector<WristTrajectory>& trajectories);
std::vector<WristTrajectory> readTrajectories(const std::string& path);

void writeFeatures(const std::string& path,
                   const std::vector<FeatureRecord>& features);
std::vector<FeatureRecord> readFeatures(const std::string& path);

void writeTrials(const std::string& path, const std::vector<TrialRecord>& trials);
std::vector<TrialRecord> readTrials(const std::string& path);

void writeGraspCandidates(const std::string& path,
                          const std::vector<GraspCandidate>& candidates);
std::vector<GraspCandidate> readGraspCandidates(const std::string& path);

void writeDepthMap(const std::string& path, const DepthMap& depth);
DepthMap readDepthMap(const std::string& path);

}  // namespace egoskill
