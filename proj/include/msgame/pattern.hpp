#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace msgame {

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Quantifier : std::uint8_t { Exists, Forall };
enum class Side : std::uint8_t { Left, Right };

constexpr Side other(Side s) { return s == Side::Left ? Side::Right : Side::Left; }
constexpr Quantifier dual(Quantifier q) {
  return q == Quantifier::Exists ? Quantifier::Forall : Quantifier::Exists;
}
// Spoiler plays an existential move on the left structures, a universal one on the right.
constexpr Side mover(Quantifier q) { return q == Quantifier::Exists ? Side::Left : Side::Right; }
constexpr Quantifier quantifier_for(Side s) {
  return s == Side::Left ? Quantifier::Exists : Quantifier::Forall;
}

inline const char* to_string(Side s) { return s == Side::Left ? "left" : "right"; }
inline char to_char(Quantifier q) { return q == Quantifier::Exists ? 'E' : 'A'; }

using Pattern = std::vector<Quantifier>;

inline std::string to_string(const Pattern& p) {
  std::string out;
  out.reserve(p.size());
  for (auto q : p) out.push_back(to_char(q));
  return out;
}

inline Pattern parse_pattern(std::string_view text) {
  Pattern p;
  for (char c : text) {
    if (c == 'E' || c == 'e')
      p.push_back(Quantifier::Exists);
    else if (c == 'A' || c == 'a')
      p.push_back(Quantifier::Forall);
    else
      throw error("bad quantifier symbol '" + std::string(1, c) + "' in pattern");
  }
  return p;
}

inline Pattern flipped(const Pattern& p) {
  Pattern out;
  out.reserve(p.size());
  for (auto q : p) out.push_back(dual(q));
  return out;
}

inline Pattern concat(Pattern a, const Pattern& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Greedy leftmost embedding of `sub` into `master`; entry i is the master index used for sub[i].
inline std::optional<std::vector<int>> embed(const Pattern& sub, const Pattern& master) {
  std::vector<int> idx;
  idx.reserve(sub.size());
  std::size_t j = 0;
  for (auto q : sub) {
    while (j < master.size() && master[j] != q) ++j;
    if (j == master.size()) return std::nullopt;
    idx.push_back(static_cast<int>(j++));
  }
  return idx;
}

inline bool is_subsequence(const Pattern& sub, const Pattern& master) {
  return embed(sub, master).has_value();
}

}  // namespace msgame
