#include "egoskill/io/records.hpp"

#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "egoskill/errors.hpp"

namespace egoskill {

std::string formatDouble(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void atomicWriteFile(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw IoError("write to '" + tmp + "' failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw IoError("rename '" + tmp + "' -> '" + path + "': " +
                  std::strerror(errno));
  }
}

std::string readFileToString(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RecordReader::RecordReader(std::istream& in, std::string path)
    : in_(in), path_(std::move(path)) {}

bool RecordReader::nextLine() {
  while (std::getline(in_, line_)) {
    ++line_number_;
    pos_ = 0;
    if (!atLineEnd()) return true;  // skip blank lines
  }
  return false;
}

bool RecordReader::atLineEnd() {
  while (pos_ < line_.size() &&
         std::isspace(static_cast<unsigned char>(line_[pos_]))) {
    ++pos_;
  }
  return pos_ >= line_.size();
}

std::string RecordReader::takeToken() {
  if (atLineEnd()) fail("unexpected end of record");
  const std::size_t start = pos_;
  while (pos_ < line_.size() &&
         !std::isspace(static_cast<unsigned char>(line_[pos_]))) {
    ++pos_;
  }
  return line_.substr(start, pos_ - start);
}

double RecordReader::takeDouble() {
  const std::string tok = takeToken();
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size() || errno == ERANGE) {
    fail("expected a number, got '" + tok + "'");
  }
  return v;
}

std::int64_t RecordReader::takeInt() {
  const std::string tok = takeToken();
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(tok.c_str(), &end, 10);
  if (end != tok.c_str() + tok.size() || errno == ERANGE) {
    fail("expected an integer, got '" + tok + "'");
  }
  return v;
}

std::uint64_t RecordReader::takeUnsigned() {
  const std::string tok = takeToken();
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(tok.c_str(), &end, 10);
  if (tok.empty() || tok.front() == '-' ||
      end != tok.c_str() + tok.size() || errno == ERANGE) {
    fail("expected an unsigned integer, got '" + tok + "'");
  }
  return v;
}

std::string RecordReader::takeRest() {
  if (atLineEnd()) return {};
  return line_.substr(pos_);
}

void RecordReader::expectLineEnd() {
  if (!atLineEnd()) fail("trailing fields: '" + line_.substr(pos_) + "'");
}

void RecordReader::fail(const std::string& what) const {
  throw ParseError(path_, line_number_, what);
}

void expectHeader(RecordReader& reader, const std::string& kind, int version) {
  if (!reader.nextLine()) {
    throw FormatVersionMismatch("'" + reader.path() + "' is empty, expected a " +
                                kind + " header");
  }
  std::string magic, got_kind;
  std::int64_t got_version = -1;
  try {
    magic = reader.takeToken();
    got_kind = reader.takeToken();
    got_version = reader.takeInt();
  } catch (const ParseError&) {
    throw FormatVersionMismatch("'" + reader.path() + "' has a malformed header");
  }
  if (magic != "format" || got_kind != kind || got_version != version) {
    throw FormatVersionMismatch("'" + reader.path() + "' has header '" + magic +
                                " " + got_kind + " " + std::to_string(got_version) +
                                "', expected 'format " + kind + " " +
                                std::to_string(version) + "'");
  }
}

namespace {

void appendPose(std::string* out, const Pose6d& pose) {
  const auto v = pose.asVector();
  for (int i = 0; i < 6; ++i) {
    *out += ' ';
    *out += formatDouble(v[i]);
  }
}

Pose6d takePose(RecordReader& r) {
  Eigen::Matrix<double, 6, 1> v;
  for (int i = 0; i < 6; ++i) v[i] = r.takeDouble();
  return Pose6d::fromVector(v);
}

}  // namespace

void writeDetections(const std::string& path,
                     const std::vector<HandDetection>& detections) {
  std::string out = "format detections 1\n";
  for (const HandDetection& det : detections) {
    out += std::to_string(det.frame_id);
    appendPose(&out, det.wrist_pose_cam);
    out += ' ';
    out += formatDouble(det.confidence);
    out += '\n';
  }
  atomicWriteFile(path, out);
}

std::vector<HandDetection> readDetections(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  RecordReader r(in, path);
  expectHeader(r, "detections", 1);
  std::vector<HandDetection> out;
  while (r.nextLine()) {
    HandDetection det;
    det.frame_id = r.takeInt();
    det.wrist_pose_cam = takePose(r);
    det.confidence = r.takeDouble();
    r.expectLineEnd();
    out.push_back(std::move(det));
  }
  return out;
}

void writeCameras(const std::string& path,
                  const std::vector<CameraFramed>& cameras) {
  std::string out = "format cameras 1\n";
  for (const CameraFramed& cam : cameras) {
    out += std::to_string(cam.frame_id);
    for (double v : {cam.fx, cam.fy, cam.cx, cam.cy}) {
      out += ' ';
      out += formatDouble(v);
    }
    for (int row = 0; row < 3; ++row) {
      for (int col = 0; col < 3; ++col) {
        out += ' ';
        out += formatDouble(cam.world_to_camera.rotation(row, col));
      }
    }
    for (int i = 0; i < 3; ++i) {
      out += ' ';
      out += formatDouble(cam.world_to_camera.translation[i]);
    }
    out += '\n';
  }
  atomicWriteFile(path, out);
}

std::vector<CameraFramed> readCameras(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  RecordReader r(in, path);
  expectHeader(r, "cameras", 1);
  std::vector<CameraFramed> out;
  while (r.nextLine()) {
    CameraFramed cam;
    cam.frame_id = r.takeInt();
    cam.fx = r.takeDouble();
    cam.fy = r.takeDouble();
    cam.cx = r.takeDouble();
    cam.cy = r.takeDouble();
    for (int row = 0; row < 3; ++row) {
      for (int col = 0; col < 3; ++col) {
        cam.world_to_camera.rotation(row, col) = r.takeDouble();
      }
    }
    for (int i = 0; i < 3; ++i) {
      cam.world_to_camera.translation[i] = r.takeDouble();
    }
    r.expectLineEnd();
    if (!isRotation(cam.world_to_camera.rotation)) {
      r.fail("camera rotation is not orthonormal");
    }
    out.push_back(cam);
  }
  return out;
}

void writeTrajectories(const std::string& path,
                       const std::vector<WristTrajectory>& trajectories) {
  std::string out = "format trajectories 1\n";
  for (std::size_t idx = 0; idx < trajectories.size(); ++idx) {
    const WristTrajectory& traj = trajectories[idx];
    for (const TimedPose& tp : traj.poses) {
      bool filled = false;
      for (const GapFill& gap : traj.source_gaps) {
        filled = filled || (tp.frame_id >= gap.first && tp.frame_id <= gap.last);
      }
      out += std::to_string(idx);
      out += ' ';
      out += traj.clip_id;
      out += ' ';
      out += std::to_string(tp.frame_id);
      appendPose(&out, tp.pose);
      out += filled ? " 1\n" : " 0\n";
    }
  }
  atomicWriteFile(path, out);
}

std::vector<WristTrajectory> readTrajectories(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  RecordReader r(in, path);
  expectHeader(r, "trajectories", 1);
  std::vector<WristTrajectory> out;
  std::int64_t current = -1;
  while (r.nextLine()) {
    const std::int64_t idx = r.takeInt();
    const std::string clip_id = r.takeToken();
    TimedPose tp;
    tp.frame_id = r.takeInt();
    tp.pose = takePose(r);
    const std::int64_t filled = r.takeInt();
    r.expectLineEnd();
    if (filled != 0 && filled != 1) r.fail("filled flag must be 0 or 1");
    if (idx != current) {
      if (idx != current + 1) r.fail("trajectory indices must be consecutive");
      current = idx;
      out.emplace_back();
      out.back().clip_id = clip_id;
    } else if (out.back().clip_id != clip_id) {
      r.fail("clip id changed within one trajectory");
    }
    WristTrajectory& traj = out.back();
    if (filled) {
      if (!traj.source_gaps.empty() &&
          traj.source_gaps.back().last == tp.frame_id - 1) {
        traj.source_gaps.back().last = tp.frame_id;
      } else {
        traj.source_gaps.push_back(GapFill{tp.frame_id, tp.frame_id});
      }
    }
    traj.poses.push_back(std::move(tp));
  }
  return out;
}

void writeFeatures(const std::string& path,
                   const std::vector<FeatureRecord>& features) {
  const Eigen::Index d = features.empty() ? 0 : features.front().feature.size();
  std::string out = "format features 1 " + std::to_string(d) + "\n";
  for (const FeatureRecord& rec : features) {
    if (rec.feature.size() != d) {
      throw MixedDimensions("feature for clip '" + rec.clip_id + "' has size " +
                            std::to_string(rec.feature.size()) + ", expected " +
                            std::to_string(d));
    }
    out += rec.clip_id;
    out += ' ';
    out += std::to_string(rec.frame_id);
    for (Eigen::Index i = 0; i < d; ++i) {
      out += ' ';
      out += formatDouble(rec.feature[i]);
    }
    out += '\n';
  }
  atomicWriteFile(path, out);
}

std::vector<FeatureRecord> readFeatures(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  RecordReader r(in, path);
  expectHeader(r, "features", 1);
  const std::int64_t d = r.takeInt();
  if (d < 0) r.fail("negative feature dimension");
  std::vector<FeatureRecord> out;
  while (r.nextLine()) {
    FeatureRecord rec;
    rec.clip_id = r.takeToken();
    rec.frame_id = r.takeInt();
    rec.feature.resize(d);
    for (std::int64_t i = 0; i < d; ++i) rec.feature[i] = r.takeDouble();
    r.expectLineEnd();
    out.push_back(std::move(rec));
  }
  return out;
}

void writeTrials(const std::string& path, const std::vector<TrialRecord>& trials) {
  std::string out = "format trials 1\n";
  for (const TrialRecord& t : trials) {
    out += "trial " + std::to_string(t.index) + ' ' + skillName(t.skill) + ' ' +
           std::to_string(t.seed) + ' ' + (t.success ? "1" : "0") + ' ' +
           std::to_string(t.steps) + ' ' + std::to_string(t.inference_calls) +
           '\n';
  }
  atomicWriteFile(path, out);
}

std::vector<TrialRecord> readTrials(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  RecordReader r(in, path);
  expectHeader(r, "trials", 1);
  std::vector<TrialRecord> out;
  while (r.nextLine()) {
    if (r.takeToken() != "trial") r.fail("expected a 'trial' record");
    TrialRecord t;
    t.index = static_cast<int>(r.takeInt());
    const std::string skill = r.takeToken();
    const auto parsed = parseSkill(skill);
    if (!parsed) r.fail("unknown skill '" + skill + "'");
    t.skill = *parsed;
    t.seed = r.takeUnsigned();
    const std::int64_t success = r.takeInt();
    if (success != 0 && success != 1) r.fail("success flag must be 0 or 1");
    t.success = success == 1;
    t.steps = static_cast<int>(r.takeInt());
    t.inference_calls = static_cast<int>(r.takeInt());
    r.expectLineEnd();
    out.push_back(t);
  }
  return out;
}

void writeGraspCandidates(const std::string& path,
                          const std::vector<GraspCandidate>& candidates) {
  std::string out = "format candidates 1\n";
  for (const GraspCandidate& c : candidates) {
    std::string line;
    appendPose(&line, c.pose_cam);
    out += line.substr(1);
    out += ' ';
    out += formatDouble(c.score);
    out += ' ';
    out += formatDouble(c.width);
    out += '\n';
  }
  atomicWriteFile(path, out);
}

std::vector<GraspCandidate> readGraspCandidates(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  RecordReader r(in, path);
  expectHeader(r, "candidates", 1);
  std::vector<GraspCandidate> out;
  while (r.nextLine()) {
    GraspCandidate c;
    c.pose_cam = takePose(r);
    c.score = r.takeDouble();
    c.width = r.takeDouble();
    r.expectLineEnd();
    out.push_back(c);
  }
  return out;
}

void writeDepthMap(const std::string& path, const DepthMap& depth) {
  if (depth.width < 0 || depth.height < 0 ||
      depth.data.size() !=
          static_cast<std::size_t>(depth.width) * depth.height) {
    throw LengthMismatch("depth map data does not match its dimensions");
  }
  std::string out = "format depth 1 " + std::to_string(depth.width) + ' ' +
                    std::to_string(depth.height) + '\n';
  for (int y = 0; y < depth.height; ++y) {
    for (int x = 0; x < depth.width; ++x) {
      if (x) out += ' ';
      out += formatDouble(depth.at(x, y));
    }
    out += '\n';
  }
  atomicWriteFile(path, out);
}

DepthMap readDepthMap(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  RecordReader r(in, path);
  expectHeader(r, "depth", 1);
  DepthMap depth;
  depth.width = static_cast<int>(r.takeInt());
  depth.height = static_cast<int>(r.takeInt());
  if (depth.width <= 0 || depth.height <= 0) r.fail("non-positive dimensions");
  depth.data.reserve(static_cast<std::size_t>(depth.width) * depth.height);
  for (int y = 0; y < depth.height; ++y) {
    if (!r.nextLine()) r.fail("missing depth row " + std::to_string(y));
    for (int x = 0; x < depth.width; ++x) depth.data.push_back(r.takeDouble());
    r.expectLineEnd();
  }
  return depth;
}

}  // namespace egoskill
