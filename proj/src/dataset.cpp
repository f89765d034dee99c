#include "egoskill/dataset.hpp"

#include <cctype>
#include <fstream>

#include "egoskill/errors.hpp"

namespace egoskill {

std::map<Skill, std::vector<std::string>> defaultSkillKeywords() {
  return {
      {Skill::kSlideOpen,
       {"open drawer", "open the drawer", "pull out the drawer", "slide open"}},
      {Skill::kSlideClose,
       {"close drawer", "close the drawer", "push in the drawer",
        "slide shut"}},
      {Skill::kHingeOpen,
       {"open cupboard", "open the cupboard", "open door", "open the door",
        "open fridge", "open the fridge"}},
      {Skill::kHingeClose,
       {"close cupboard", "close the cupboard", "close door", "close the door",
        "close fridge", "close the fridge"}},
      {Skill::kPick, {"pick up", "grab", "take out", "lift up"}},
      {Skill::kPlace, {"put down", "place", "set down"}},
      {Skill::kPour, {"pour", "drizzle"}},
      {Skill::kCut, {"cut", "slice", "chop"}},
      {Skill::kStir, {"stir", "mix", "whisk"}},
  };
}

bool matchesKeyword(const std::string& text, const std::string& phrase) {
  if (phrase.empty()) return false;
  auto lowered = [](const std::string& s) {
    std::string out = s;
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
  };
  auto isWord = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
  };
  const std::string t = lowered(text);
  const std::string p = lowered(phrase);
  for (std::size_t pos = t.find(p); pos != std::string::npos;
       pos = t.find(p, pos + 1)) {
    const std::size_t end = pos + p.size();
    const bool left_ok = pos == 0 || !isWord(t[pos - 1]);
    const bool right_ok = end == t.size() || !isWord(t[end]);
    if (left_ok && right_ok) return true;
  }
  return false;
}

std::vector<SkillSegment> segmentBySkill(
    const std::vector<Annotation>& annotations,
    const std::map<Skill, std::vector<std::string>>& skill_keywords) {
  std::vector<SkillSegment> out;
  for (const Annotation& ann : annotations) {
    int matches = 0;
    Skill assigned = Skill::kSlideOpen;
    for (const auto& [skill, keywords] : skill_keywords) {
      for (const std::string& phrase : keywords) {
        if (matchesKeyword(ann.text, phrase)) {
          ++matches;
          assigned = skill;
          break;
        }
      }
    }
    if (matches == 1) {
      out.push_back(SkillSegment{ann.clip_id, assigned, ann.first_frame,
                                 ann.last_frame});
    }
  }
  return out;
}

std::vector<TrainingSample> buildSamples(const SkillClip& clip,
                                         const std::vector<CameraFramed>& cams,
                                         int n, ActionMode mode, int stride) {
  if (n < 1) throw Error("chunk size must be at least 1");
  if (stride < 1) throw Error("stride must be at least 1");
  const std::size_t len = clip.trajectory.poses.size();
  if (len < static_cast<std::size_t>(n) + 1) {
    throw ClipTooShort("clip '" + clip.clip_id + "' has " +
                       std::to_string(len) + " frames, need " +
                       std::to_string(n + 1));
  }
  if (clip.frame_features.size() != len) {
    throw LengthMismatch("clip '" + clip.clip_id + "' has " +
                         std::to_string(clip.frame_features.size()) +
                         " features for " + std::to_string(len) + " frames");
  }

  std::vector<TrainingSample> samples;
  for (std::size_t t = 0; t + n < len; t += stride) {
    const std::vector<Pose6d> window =
        reexpressWindow(clip.trajectory, cams, t, static_cast<std::size_t>(n));
    TrainingSample s;
    s.obs_feature = clip.frame_features[t];
    s.goal_feature = clip.goal_feature;
    s.current_pose = window.front();
    s.chunk = encodeChunk(window, mode);
    samples.push_back(std::move(s));
  }
  return samples;
}

namespace {

const char* modeToken(TranslationMode m) {
  return m == TranslationMode::kAbsolute ? "abs" : "rel";
}
const char* modeToken(OrientationMode m) {
  return m == OrientationMode::kAbsolute ? "abs" : "rel";
}

template <typename Mode>
Mode parseModeToken(RecordReader& r) {
  const std::string tok = r.takeToken();
  if (tok == "abs") return Mode::kAbsolute;
  if (tok == "rel") return Mode::kRelative;
  r.fail("expected 'abs' or 'rel', got '" + tok + "'");
}

}  // namespace

void writeDatasetStream(std::string* out,
                        const std::vector<TrainingSample>& samples) {
  if (samples.empty()) throw EmptyDataset();
  const Eigen::Index d = samples.front().obs_feature.size();
  const std::size_t n = samples.front().chunk.n();
  const ActionMode mode = samples.front().chunk.mode;

  *out += "format dataset 1 " + std::to_string(d) + ' ' + std::to_string(n) +
          ' ' + modeToken(mode.translation) + ' ' + modeToken(mode.orientation) +
          '\n';
  for (const TrainingSample& s : samples) {
    if (s.obs_feature.size() != d || s.goal_feature.size() != d) {
      throw MixedDimensions("sample features disagree on dimension");
    }
    if (s.chunk.n() != n || !(s.chunk.mode == mode)) {
      throw MixedDimensions("sample chunks disagree on length or mode");
    }
    std::string line;
    for (Eigen::Index i = 0; i < d; ++i) {
      line += formatDouble(s.obs_feature[i]);
      line += ' ';
    }
    for (Eigen::Index i = 0; i < d; ++i) {
      line += formatDouble(s.goal_feature[i]);
      line += ' ';
    }
    const auto pose = s.current_pose.asVector();
    for (int i = 0; i < 6; ++i) {
      line += formatDouble(pose[i]);
      line += ' ';
    }
    for (const Action6& a : s.chunk.actions) {
      for (int i = 0; i < 6; ++i) {
        line += formatDouble(a[i]);
        line += ' ';
      }
    }
    line.back() = '\n';
    *out += line;
  }
}

std::vector<TrainingSample> readDatasetStream(RecordReader& reader) {
  expectHeader(reader, "dataset", 1);
  const std::int64_t d = reader.takeInt();
  const std::int64_t n = reader.takeInt();
  ActionMode mode;
  mode.translation = parseModeToken<TranslationMode>(reader);
  mode.orientation = parseModeToken<OrientationMode>(reader);
  reader.expectLineEnd();
  if (d < 1) reader.fail("feature dimension must be positive");
  if (n < 1) reader.fail("chunk length must be positive");

  std::vector<TrainingSample> samples;
  while (reader.nextLine()) {
    TrainingSample s;
    s.obs_feature.resize(d);
    s.goal_feature.resize(d);
    for (std::int64_t i = 0; i < d; ++i) s.obs_feature[i] = reader.takeDouble();
    for (std::int64_t i = 0; i < d; ++i) s.goal_feature[i] = reader.takeDouble();
    Eigen::Matrix<double, 6, 1> pose;
    for (int i = 0; i < 6; ++i) pose[i] = reader.takeDouble();
    s.current_pose = Pose6d::fromVector(pose);
    s.chunk.mode = mode;
    s.chunk.base_pose = s.current_pose;
    s.chunk.actions.resize(n);
    for (std::int64_t k = 0; k < n; ++k) {
      for (int i = 0; i < 6; ++i) s.chunk.actions[k][i] = reader.takeDouble();
    }
    reader.expectLineEnd();
    samples.push_back(std::move(s));
  }
  return samples;
}

void writeDataset(const std::vector<TrainingSample>& samples,
                  const std::string& path) {
  std::string out;
  writeDatasetStream(&out, samples);
  atomicWriteFile(path, out);
}

std::vector<TrainingSample> readDataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  RecordReader reader(in, path);
  return readDatasetStream(reader);
}

void writeAnnotations(const std::string& path,
                      const std::vector<Annotation>& annotations) {
  std::string out = "format annotations 1\n";
  for (const Annotation& a : annotations) {
    out += a.clip_id + ' ' + std::to_string(a.first_frame) + ' ' +
           std::to_string(a.last_frame) + ' ' + a.text + '\n';
  }
  atomicWriteFile(path, out);
}

std::vector<Annotation> readAnnotations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  RecordReader reader(in, path);
  expectHeader(reader, "annotations", 1);
  reader.expectLineEnd();

  std::vector<Annotation> annotations;
  while (reader.nextLine()) {
    Annotation a;
    a.clip_id = reader.takeToken();
    a.first_frame = reader.takeInt();
    a.last_frame = reader.takeInt();
    a.text = reader.takeRest();
    if (a.text.empty()) reader.fail("annotation text is empty");
    annotations.push_back(std::move(a));
  }
  return annotations;
}

}  // namespace egoskill
