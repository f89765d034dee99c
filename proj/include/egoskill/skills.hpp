#ifndef EGOSKILL_SKILLS_HPP
#define EGOSKILL_SKILLS_HPP

#include <array>
#include <optional>
#include <string_view>

namespace egoskill {

/// The nine manipulation skills the pipeline handles.
enum class Skill {
  kSlideOpen,
  kSlideClose,
  kHingeOpen,
  kHingeClose,
  kPick,
  kPlace,
  kPour,
  kCut,
  kStir,
};

inline constexpr std::array<Skill, 9> kAllSkills = {
    Skill::kSlideOpen, Skill::kSlideClose, Skill::kHingeOpen,
    Skill::kHingeClose, Skill::kPick,      Skill::kPlace,
    Skill::kPour,       Skill::kCut,       Skill::kStir,
};

constexpr const char* skillName(Skill s) {
  switch (s) {
    case Skill::kSlideOpen: return "slide_open";
    case Skill::kSlideClose: return "slide_close";
    case Skill::kHingeOpen: return "hinge_open";
    case Skill::kHingeClose: return "hinge_close";
    case Skill::kPick: return "pick";
    case Skill::kPlace: return "place";
    case Skill::kPour: return "pour";
    case Skill::kCut: return "cut";
    case Skill::kStir: return "stir";
  }
  return "unknown";
}

inline std::optional<Skill> parseSkill(std::string_view name) {
  for (Skill s : kAllSkills) {
    if (name == skillName(s)) return s;
  }
  return std::nullopt;
}

}  // namespace egoskill

#endif  // EGOSKILL_SKILLS_HPP
