#ifndef ATOMLOOP_WILDCARD_HPP
#define ATOMLOOP_WILDCARD_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "atomloop/cardinal.hpp"
#include "atomloop/errors.hpp"
#include "atomloop/rule_set.hpp"

namespace atomloop {

struct WildcardGeometry {
  std::size_t bits = 0;

  friend bool operator==(const WildcardGeometry&, const WildcardGeometry&) = default;
};

// An ℓ-letter string over {0, 1, *}. Letter 0 is the leftmost character of the
// text form and the most significant header bit.
//
// Stored as two bit vectors: `care` marks fixed letters, `value` holds the
// fixed bit (always 0 where care is 0, so equality is plain word equality).
class Wildcard {
 public:
  using Geometry = WildcardGeometry;

  enum class Letter : std::uint8_t { Zero = 0, One = 1, Star = 2 };

  Wildcard() = default;

  static Wildcard full(const Geometry& g) {
    if (g.bits == 0) throw InputError("wildcard header length must be at least 1");
    return Wildcard(g.bits);
  }

  static std::size_t header_bits(const Geometry& g) { return g.bits; }

  static Wildcard parse(std::string_view text, std::size_t bits) {
    Wildcard w = full(Geometry{bits});
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (i >= bits) throw ParseError("wildcard longer than " + std::to_string(bits) + " letters", i);
      switch (text[i]) {
        case '0': w.set(i, Letter::Zero); break;
        case '1': w.set(i, Letter::One); break;
        case '*': break;
        default:
          throw ParseError(std::string("bad wildcard symbol '") + text[i] + "'", i);
      }
    }
    if (text.size() != bits) {
      throw ParseError("wildcard has " + std::to_string(text.size()) + " letters, expected " +
                           std::to_string(bits),
                       text.size());
    }
    return w;
  }

  Geometry geometry() const { return Geometry{bits_}; }
  std::size_t length() const noexcept { return bits_; }

  Letter letter(std::size_t i) const {
    const auto [word, mask] = locate(i);
    if (!(care_[word] & mask)) return Letter::Star;
    return (value_[word] & mask) ? Letter::One : Letter::Zero;
  }

  std::size_t star_count() const {
    std::size_t fixed = 0;
    for (std::uint64_t w : care_) fixed += static_cast<std::size_t>(std::popcount(w));
    return bits_ - fixed;
  }

  std::string str() const {
    std::string out(bits_, '*');
    for (std::size_t i = 0; i < bits_; ++i) {
      switch (letter(i)) {
        case Letter::Zero: out[i] = '0'; break;
        case Letter::One: out[i] = '1'; break;
        case Letter::Star: break;
      }
    }
    return out;
  }

  friend bool operator==(const Wildcard&, const Wildcard&) = default;

  friend std::optional<Wildcard> intersect(const Wildcard& a, const Wildcard& b) {
    a.require_same_geometry(b);
    Wildcard out(a.bits_);
    for (std::size_t w = 0; w < a.care_.size(); ++w) {
      if ((a.value_[w] ^ b.value_[w]) & a.care_[w] & b.care_[w]) return std::nullopt;
      out.care_[w] = a.care_[w] | b.care_[w];
      out.value_[w] = a.value_[w] | b.value_[w];
    }
    return out;
  }

  friend Cardinal cardinality(const Wildcard& s) { return power_of_two(s.star_count()); }

  // Letterwise refinement: every letter fixed in t is fixed to the same bit in s.
  // Agrees with subset_by_cardinality (property-tested).
  friend bool is_subset(const Wildcard& s, const Wildcard& t) {
    s.require_same_geometry(t);
    for (std::size_t w = 0; w < s.care_.size(); ++w) {
      if (t.care_[w] & ~s.care_[w]) return false;
      if ((s.value_[w] ^ t.value_[w]) & t.care_[w]) return false;
    }
    return true;
  }

  // Letters packed two bits each, most significant first, with 0 < 1 < *.
  friend CanonicalKey canonical_key(const Wildcard& s) {
    CanonicalKey key;
    key.parts.assign((s.bits_ + 31) / 32, 0);
    for (std::size_t i = 0; i < s.bits_; ++i) {
      const auto code = static_cast<std::uint64_t>(s.letter(i));
      key.parts[i / 32] |= code << (62 - 2 * (i % 32));
    }
    return key;
  }

  friend std::string format_ruleset(const Wildcard& s) { return s.str(); }

  // Only meaningful for singletons; a wildcard with stars prints as itself.
  friend std::string header_string(const Wildcard& s) { return s.str(); }

  // Visits elements as singleton wildcards in canonical (lexicographic) order,
  // at most `cap` of them. Stops early when `visit` returns true and returns
  // that element.
  template <class Visit>
  friend std::optional<Wildcard> find_element(const Wildcard& s, std::uint64_t cap, Visit&& visit) {
    std::vector<std::size_t> stars;
    for (std::size_t i = 0; i < s.bits_; ++i) {
      if (s.letter(i) == Letter::Star) stars.push_back(i);
    }
    std::uint64_t total = cap;
    if (stars.size() < 64) total = std::min<std::uint64_t>(cap, std::uint64_t{1} << stars.size());
    for (std::uint64_t t = 0; t < total; ++t) {
      Wildcard e = s;
      for (std::size_t j = 0; j < stars.size(); ++j) {
        const std::size_t shift = stars.size() - 1 - j;
        const bool bit = shift < 64 && ((t >> shift) & 1U);
        e.set(stars[j], bit ? Letter::One : Letter::Zero);
      }
      if (visit(e)) return e;
    }
    return std::nullopt;
  }

 private:
  explicit Wildcard(std::size_t bits)
      : bits_(bits), care_((bits + 63) / 64, 0), value_((bits + 63) / 64, 0) {}

  static std::pair<std::size_t, std::uint64_t> locate(std::size_t i) {
    return {i / 64, std::uint64_t{1} << (i % 64)};
  }

  void set(std::size_t i, Letter l) {
    const auto [word, mask] = locate(i);
    care_[word] &= ~mask;
    value_[word] &= ~mask;
    if (l == Letter::Star) return;
    care_[word] |= mask;
    if (l == Letter::One) value_[word] |= mask;
  }

  void require_same_geometry(const Wildcard& other) const {
    if (bits_ != other.bits_) {
      throw StructuralError("wildcard length mismatch: " + std::to_string(bits_) + " vs " +
                            std::to_string(other.bits_));
    }
  }

  std::size_t bits_ = 0;
  std::vector<std::uint64_t> care_;
  std::vector<std::uint64_t> value_;
};

}  // namespace atomloop

#endif  // ATOMLOOP_WILDCARD_HPP
