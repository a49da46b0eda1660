#pragma once

// Freely reduced words over a finite alphabet.  Text form: 'a'..'z' are
// generators 0..25 and 'A'..'Z' their inverses.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "repshift/error.hpp"
#include "repshift/group.hpp"

namespace repshift {

struct Letter {
  std::uint32_t generator = 0;
  bool inverted = false;

  friend bool operator==(Letter const&, Letter const&) = default;
  friend auto operator<=>(Letter const&, Letter const&) = default;
};

class Word {
 public:
  Word() = default;

  // Reduces on construction.
  explicit Word(std::vector<Letter> const& letters) {
    for (auto const& l : letters) {
      push(l);
    }
  }

  std::vector<Letter> const& letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  Word inverse() const {
    Word w;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
      w.letters_.push_back({it->generator, !it->inverted});
    }
    return w;
  }

  friend Word operator*(Word a, Word const& b) {
    for (auto const& l : b.letters_) {
      a.push(l);
    }
    return a;
  }

  friend bool operator==(Word const&, Word const&) = default;

  // Largest generator index used plus one (0 for the empty word).
  std::uint32_t min_rank() const {
    std::uint32_t r = 0;
    for (auto const& l : letters_) {
      r = std::max(r, l.generator + 1);
    }
    return r;
  }

 private:
  void push(Letter const& l) {
    if (!letters_.empty() && letters_.back().generator == l.generator
        && letters_.back().inverted != l.inverted) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }

  std::vector<Letter> letters_;
};

inline Word parse_word(std::string_view text, std::uint32_t rank) {
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (char c : text) {
    Letter l;
    if (c >= 'a' && c <= 'z') {
      l = {static_cast<std::uint32_t>(c - 'a'), false};
    } else if (c >= 'A' && c <= 'Z') {
      l = {static_cast<std::uint32_t>(c - 'A'), true};
    } else {
      throw InputError("illegal character '" + std::string(1, c) + "' in word \""
                       + std::string(text) + "\"");
    }
    if (l.generator >= rank) {
      throw InputError("generator '" + std::string(1, c) + "' out of range for rank "
                       + std::to_string(rank) + " in word \"" + std::string(text) + "\"");
    }
    letters.push_back(l);
  }
  return Word(letters);
}

inline std::string format_word(Word const& w) {
  std::string s;
  for (auto const& l : w.letters()) {
    s += static_cast<char>((l.inverted ? 'A' : 'a') + l.generator);
  }
  return s;
}

// Image of w under the homomorphism sending generator i to assignment[i].
inline GroupElement evaluate(Word const& w, std::span<GroupElement const> assignment,
                             FiniteGroup const& G) {
  if (w.min_rank() > assignment.size()) {
    throw InputError("evaluate: word uses generator " + std::to_string(w.min_rank() - 1)
                     + " but only " + std::to_string(assignment.size())
                     + " generator images were given");
  }
  for (auto const& g : assignment) {
    G.check(g);
  }
  auto result = G.identity();
  for (auto const& l : w.letters()) {
    auto const& g = assignment[l.generator];
    result = G.multiply(result, l.inverted ? G.invert(g) : g);
  }
  return result;
}

inline std::vector<std::int64_t> abelianized_exponents(Word const& w, std::uint32_t rank) {
  std::vector<std::int64_t> e(rank, 0);
  for (auto const& l : w.letters()) {
    if (l.generator >= rank) {
      throw InputError("abelianized_exponents: generator out of range");
    }
    e[l.generator] += l.inverted ? -1 : 1;
  }
  return e;
}

}  // namespace repshift
