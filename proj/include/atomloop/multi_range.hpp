#ifndef ATOMLOOP_MULTI_RANGE_HPP
#define ATOMLOOP_MULTI_RANGE_HPP

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "atomloop/cardinal.hpp"
#include "atomloop/errors.hpp"
#include "atomloop/rule_set.hpp"

namespace atomloop {

// Field widths ℓ_1..ℓ_d; each field value is stored in 64 bits, so 1 ≤ ℓ_i ≤ 64.
struct MultiRangeGeometry {
  std::vector<unsigned> widths;

  std::size_t total_bits() const { return std::accumulate(widths.begin(), widths.end(), std::size_t{0}); }

  std::uint64_t max_value(std::size_t field) const {
    const unsigned w = widths[field];
    return w >= 64 ? std::numeric_limits<std::uint64_t>::max() : (std::uint64_t{1} << w) - 1;
  }

  void validate() const {
    if (widths.empty()) throw InputError("multi-range geometry needs at least one field");
    for (unsigned w : widths) {
      if (w == 0 || w > 64) throw InputError("field width " + std::to_string(w) + " outside [1,64]");
    }
  }

  friend bool operator==(const MultiRangeGeometry&, const MultiRangeGeometry&) = default;
};

struct Interval {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;

  friend bool operator==(const Interval&, const Interval&) = default;
};

// Cartesian product [a_1,b_1] × … × [a_d,b_d] of closed integer intervals.
class MultiRange {
 public:
  using Geometry = MultiRangeGeometry;

  MultiRange() = default;

  static MultiRange full(const Geometry& g) {
    g.validate();
    MultiRange r;
    r.widths_ = g.widths;
    for (std::size_t i = 0; i < g.widths.size(); ++i) r.ranges_.push_back({0, g.max_value(i)});
    return r;
  }

  static std::size_t header_bits(const Geometry& g) { return g.total_bits(); }

  static MultiRange from_intervals(std::vector<Interval> ranges, const Geometry& g) {
    g.validate();
    if (ranges.size() != g.widths.size()) {
      throw InputError("multi-range has " + std::to_string(ranges.size()) + " fields, expected " +
                       std::to_string(g.widths.size()));
    }
    for (std::size_t i = 0; i < ranges.size(); ++i) {
      if (ranges[i].lo > ranges[i].hi) {
        throw InputError("field " + std::to_string(i) + ": lower bound exceeds upper bound");
      }
      if (ranges[i].hi > g.max_value(i)) {
        throw InputError("field " + std::to_string(i) + ": value " + std::to_string(ranges[i].hi) +
                         " does not fit in " + std::to_string(g.widths[i]) + " bits");
      }
    }
    MultiRange r;
    r.widths_ = g.widths;
    r.ranges_ = std::move(ranges);
    return r;
  }

  // Grammar: '[' field (',' field)* ']' with field := '[' uint ',' uint ']'.
  static MultiRange parse(std::string_view text, const Geometry& g) {
    std::size_t pos = 0;
    auto skip_ws = [&] {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto expect = [&](char c) {
      skip_ws();
      if (pos >= text.size() || text[pos] != c) {
        throw ParseError(std::string("expected '") + c + "'", pos);
      }
      ++pos;
    };
    auto number = [&]() -> std::uint64_t {
      skip_ws();
      const std::size_t start = pos;
      std::uint64_t v = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        const std::uint64_t digit = static_cast<std::uint64_t>(text[pos] - '0');
        if (v > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) {
          throw ParseError("integer overflow", start);
        }
        v = v * 10 + digit;
        ++pos;
      }
      if (pos == start) throw ParseError("expected a nonnegative integer", start);
      return v;
    };

    std::vector<Interval> ranges;
    expect('[');
    while (true) {
      const std::size_t field_start = pos;
      expect('[');
      Interval iv;
      iv.lo = number();
      expect(',');
      iv.hi = number();
      expect(']');
      ranges.push_back(iv);
      if (ranges.size() > g.widths.size()) throw ParseError("too many fields", field_start);
      skip_ws();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      expect(']');
      break;
    }
    skip_ws();
    if (pos != text.size()) throw ParseError("trailing characters", pos);
    try {
      return from_intervals(std::move(ranges), g);
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& e) {
      throw ParseError(e.what(), 0);
    }
  }

  Geometry geometry() const { return Geometry{widths_}; }
  std::size_t dimensions() const noexcept { return ranges_.size(); }
  const std::vector<Interval>& intervals() const noexcept { return ranges_; }

  std::string str() const {
    std::string out = "[";
    for (std::size_t i = 0; i < ranges_.size(); ++i) {
      if (i) out += ',';
      out += '[' + std::to_string(ranges_[i].lo) + ',' + std::to_string(ranges_[i].hi) + ']';
    }
    return out + ']';
  }

  friend bool operator==(const MultiRange&, const MultiRange&) = default;

  friend std::optional<MultiRange> intersect(const MultiRange& a, const MultiRange& b) {
    a.require_same_geometry(b);
    MultiRange out;
    out.widths_ = a.widths_;
    out.ranges_.resize(a.ranges_.size());
    for (std::size_t i = 0; i < a.ranges_.size(); ++i) {
      const std::uint64_t lo = std::max(a.ranges_[i].lo, b.ranges_[i].lo);
      const std::uint64_t hi = std::min(a.ranges_[i].hi, b.ranges_[i].hi);
      if (lo > hi) return std::nullopt;
      out.ranges_[i] = {lo, hi};
    }
    return out;
  }

  friend Cardinal cardinality(const MultiRange& s) {
    Cardinal c = 1;
    for (const Interval& iv : s.ranges_) c *= Cardinal(iv.hi - iv.lo) + 1;
    return c;
  }

  friend bool is_subset(const MultiRange& s, const MultiRange& t) {
    s.require_same_geometry(t);
    for (std::size_t i = 0; i < s.ranges_.size(); ++i) {
      if (s.ranges_[i].lo < t.ranges_[i].lo || s.ranges_[i].hi > t.ranges_[i].hi) return false;
    }
    return true;
  }

  friend CanonicalKey canonical_key(const MultiRange& s) {
    CanonicalKey key;
    key.parts.reserve(2 * s.ranges_.size());
    for (const Interval& iv : s.ranges_) {
      key.parts.push_back(iv.lo);
      key.parts.push_back(iv.hi);
    }
    return key;
  }

  friend std::string format_ruleset(const MultiRange& s) { return s.str(); }

  // Binary concatenation bin(x_1,ℓ_1)…bin(x_d,ℓ_d) of a singleton.
  friend std::string header_string(const MultiRange& s) {
    std::string out;
    for (std::size_t i = 0; i < s.ranges_.size(); ++i) {
      if (s.ranges_[i].lo != s.ranges_[i].hi) {
        throw StructuralError("header_string requires a singleton multi-range");
      }
      for (unsigned b = s.widths_[i]; b-- > 0;) out += ((s.ranges_[i].lo >> b) & 1U) ? '1' : '0';
    }
    return out;
  }

  // Visits elements as singletons in lexicographic order (last field varies
  // fastest), at most `cap` of them.
  template <class Visit>
  friend std::optional<MultiRange> find_element(const MultiRange& s, std::uint64_t cap, Visit&& visit) {
    MultiRange e = s;
    for (auto& iv : e.ranges_) iv.hi = iv.lo;
    for (std::uint64_t visited = 0; visited < cap; ++visited) {
      if (visit(e)) return e;
      std::size_t i = e.ranges_.size();
      while (i > 0) {
        --i;
        if (e.ranges_[i].lo < s.ranges_[i].hi) {
          ++e.ranges_[i].lo;
          e.ranges_[i].hi = e.ranges_[i].lo;
          break;
        }
        e.ranges_[i] = {s.ranges_[i].lo, s.ranges_[i].lo};
        if (i == 0) return std::nullopt;
      }
    }
    return std::nullopt;
  }

 private:
  void require_same_geometry(const MultiRange& other) const {
    if (widths_ != other.widths_) throw StructuralError("multi-range field widths mismatch");
  }

  std::vector<unsigned> widths_;
  std::vector<Interval> ranges_;
};

}  // namespace atomloop

#endif  // ATOMLOOP_MULTI_RANGE_HPP
