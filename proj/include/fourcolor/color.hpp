#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fourcolor {

using VertexId = std::int32_t;

/// Colors are small positive integers; 0 marks an uncolored vertex.
using Color = int;

inline constexpr Color kNoColor = 0;
inline constexpr Color kMaxColor = 5;

/// A set of colors from {1..5}, stored as a bitmask (bit c for color c).
class ColorSet {
 public:
  constexpr ColorSet() = default;
  constexpr ColorSet(std::initializer_list<Color> colors) {
    for (Color c : colors) insert(c);
  }

  static constexpr ColorSet from_bits(std::uint8_t bits) {
    ColorSet s;
    s.bits_ = bits & kAllBits;
    return s;
  }
  /// {1..k}
  static constexpr ColorSet first(int k) {
    ColorSet s;
    for (Color c = 1; c <= k; ++c) s.insert(c);
    return s;
  }

  constexpr void insert(Color c) { bits_ |= bit(c); }
  constexpr void erase(Color c) { bits_ &= static_cast<std::uint8_t>(~bit(c)); }
  constexpr bool contains(Color c) const {
    return c >= 1 && c <= kMaxColor && (bits_ & bit(c)) != 0;
  }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint8_t bits() const { return bits_; }

  /// Smallest member, or kNoColor when empty.
  constexpr Color min() const {
    return empty() ? kNoColor : static_cast<Color>(std::countr_zero(bits_));
  }

  std::vector<Color> colors() const {
    std::vector<Color> out;
    for (Color c = 1; c <= kMaxColor; ++c)
      if (contains(c)) out.push_back(c);
    return out;
  }

  constexpr ColorSet operator|(ColorSet o) const { return from_bits(bits_ | o.bits_); }
  constexpr ColorSet operator&(ColorSet o) const { return from_bits(bits_ & o.bits_); }
  /// Set difference.
  constexpr ColorSet operator-(ColorSet o) const {
    return from_bits(bits_ & static_cast<std::uint8_t>(~o.bits_));
  }
  constexpr bool operator==(const ColorSet&) const = default;
  constexpr auto operator<=>(const ColorSet&) const = default;

  constexpr bool subset_of(ColorSet o) const { return (bits_ & ~o.bits_) == 0; }

  std::string to_string() const {
    std::string s = "{";
    bool first_item = true;
    for (Color c : colors()) {
      if (!first_item) s += ',';
      s += std::to_string(c);
      first_item = false;
    }
    return s + "}";
  }

 private:
  static constexpr std::uint8_t kAllBits = 0b111110;
  static constexpr std::uint8_t bit(Color c) {
    if (c < 1 || c > kMaxColor) throw std::out_of_range("color out of range: " + std::to_string(c));
    return static_cast<std::uint8_t>(1u << c);
  }

  std::uint8_t bits_ = 0;
};

/// Vertex-indexed color assignment. Entries equal to kNoColor are uncolored.
class Coloring {
 public:
  Coloring() = default;
  explicit Coloring(std::size_t n) : colors_(n, kNoColor) {}
  explicit Coloring(std::vector<Color> colors) : colors_(std::move(colors)) {}

  std::size_t size() const { return colors_.size(); }
  Color operator[](VertexId v) const { return colors_[static_cast<std::size_t>(v)]; }
  Color& operator[](VertexId v) { return colors_[static_cast<std::size_t>(v)]; }
  const std::vector<Color>& values() const { return colors_; }

  bool is_total() const {
    return std::none_of(colors_.begin(), colors_.end(), [](Color c) { return c == kNoColor; });
  }

  /// Largest color in use (0 for an empty coloring).
  Color palette_size() const {
    Color m = kNoColor;
    for (Color c : colors_) m = std::max(m, c);
    return m;
  }

  /// Number of distinct colors in use.
  int colors_used() const {
    ColorSet s;
    for (Color c : colors_)
      if (c != kNoColor) s.insert(c);
    return s.size();
  }

  bool operator==(const Coloring&) const = default;

 private:
  std::vector<Color> colors_;
};

/// Smallest color in {1..kMaxColor} not present in `taken`.
inline Color smallest_free_color(std::span<const Color> taken) {
  ColorSet used;
  for (Color c : taken)
    if (c != kNoColor) used.insert(c);
  for (Color c = 1; c <= kMaxColor; ++c)
    if (!used.contains(c)) return c;
  return kNoColor;
}

/// A bijection on {1..5}. Built-in alignment uses {1..4} and fixes 5.
class ColorPermutation {
 public:
  ColorPermutation() {
    for (Color c = 0; c <= kMaxColor; ++c) map_[static_cast<std::size_t>(c)] = c;
  }

  /// `images[c-1]` is the image of color c, for c in 1..images.size().
  static ColorPermutation from_images(std::span<const Color> images) {
    ColorPermutation p;
    for (std::size_t i = 0; i < images.size(); ++i) p.map_[i + 1] = images[i];
    if (!p.is_bijective()) throw std::invalid_argument("color permutation is not a bijection");
    return p;
  }

  Color operator()(Color c) const {
    return c == kNoColor ? kNoColor : map_[static_cast<std::size_t>(c)];
  }

  Coloring apply(const Coloring& in) const {
    std::vector<Color> out(in.values());
    for (Color& c : out) c = (*this)(c);
    return Coloring(std::move(out));
  }

  ColorSet apply(ColorSet in) const {
    ColorSet out;
    for (Color c : in.colors()) out.insert((*this)(c));
    return out;
  }

  bool is_identity() const { return *this == ColorPermutation{}; }

  bool is_bijective() const {
    ColorSet seen;
    for (Color c = 1; c <= kMaxColor; ++c) {
      Color m = map_[static_cast<std::size_t>(c)];
      if (m < 1 || m > kMaxColor || seen.contains(m)) return false;
      seen.insert(m);
    }
    return true;
  }

  bool operator==(const ColorPermutation&) const = default;

  std::string to_string() const {
    std::string s;
    for (Color c = 1; c <= kMaxColor; ++c) {
      if (!s.empty()) s += ' ';
      s += std::to_string(c) + "->" + std::to_string((*this)(c));
    }
    return s;
  }

 private:
  std::array<Color, kMaxColor + 1> map_{};
};

/// Permutation sending src[k] to dst[k] for k = 0,1,2 and the leftover colors
/// of {1..max_color} to each other in ascending order. Colors above max_color
/// are fixed.
inline ColorPermutation align_permutation(std::array<Color, 3> src, std::array<Color, 3> dst,
                                          Color max_color = 4) {
  auto distinct_in_range = [max_color](const std::array<Color, 3>& t) {
    for (Color c : t)
      if (c < 1 || c > max_color) return false;
    return t[0] != t[1] && t[1] != t[2] && t[0] != t[2];
  };
  if (!distinct_in_range(src) || !distinct_in_range(dst))
    throw std::invalid_argument("align_permutation needs two triples of distinct colors in 1.." +
                                std::to_string(max_color));
  std::vector<Color> images(kMaxColor);
  for (Color c = 1; c <= kMaxColor; ++c) images[static_cast<std::size_t>(c - 1)] = c;
  ColorSet src_left = ColorSet::first(max_color), dst_left = ColorSet::first(max_color);
  for (int k = 0; k < 3; ++k) {
    images[static_cast<std::size_t>(src[k] - 1)] = dst[k];
    src_left.erase(src[k]);
    dst_left.erase(dst[k]);
  }
  auto from = src_left.colors(), to = dst_left.colors();
  for (std::size_t i = 0; i < from.size(); ++i) images[static_cast<std::size_t>(from[i] - 1)] = to[i];
  return ColorPermutation::from_images(images);
}

}  // namespace fourcolor
