#pragma once

// The qubit-chain groupoid G = Omega_inf x Gamma at finite truncation.
//
// Site k (1-indexed) is stored in bit k-1 of a 64-bit mask, both for flip
// words and for prefixes. A point of Omega_inf is represented by its first
// D coordinates (a Prefix); every consumer is a cylinder function, so this
// is faithful as long as D covers the horizon of whatever is evaluated.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace qchain {

inline constexpr int kMaxSites = 64;

/// Element of Gamma: a finite set of flipped sites.
class FlipWord {
 public:
  constexpr FlipWord() = default;
  /// Builds from 1-indexed site labels. Duplicates and labels outside
  /// [1, 64] are rejected with SiteOutOfRange.
  FlipWord(std::initializer_list<int> sites);
  explicit FlipWord(std::span<const int> sites);

  static constexpr FlipWord from_mask(std::uint64_t mask) {
    FlipWord w;
    w.mask_ = mask;
    return w;
  }
  /// The unit vector e_k.
  static FlipWord unit(int site);

  constexpr std::uint64_t mask() const { return mask_; }
  constexpr bool empty() const { return mask_ == 0; }
  bool contains(int site) const;
  int size() const;
  /// Largest flipped site, 0 for the empty word.
  int horizon() const;
  std::vector<int> sites() const;
  std::string to_string() const;

  constexpr FlipWord operator^(FlipWord other) const { return from_mask(mask_ ^ other.mask_); }
  constexpr FlipWord& operator^=(FlipWord other) {
    mask_ ^= other.mask_;
    return *this;
  }
  constexpr auto operator<=>(const FlipWord&) const = default;

 private:
  std::uint64_t mask_ = 0;
};

/// Group law of Gamma (symmetric difference).
FlipWord xor_words(FlipWord a, FlipWord b);

/// The first `depth` coordinates of a point of Omega_inf.
class Prefix {
 public:
  Prefix() = default;
  /// bits[i] is the value at site i+1; entries must be 0 or 1.
  explicit Prefix(std::span<const int> bits);
  Prefix(std::initializer_list<int> bits);

  static Prefix from_mask(int depth, std::uint64_t mask);
  static Prefix zeros(int depth) { return from_mask(depth, 0); }

  int depth() const { return depth_; }
  std::uint64_t mask() const { return mask_; }
  /// Value at 1-indexed site; DepthTooSmall if site > depth.
  int bit(int site) const;
  /// +1 when the site reads 0, -1 when it reads 1.
  int spin(int site) const { return 1 - 2 * bit(site); }

  /// x (+) w; requires w.horizon() <= depth.
  Prefix flipped(FlipWord w) const;
  Prefix truncated(int depth) const;
  std::string to_string() const;

  auto operator<=>(const Prefix&) const = default;

 private:
  int depth_ = 0;
  std::uint64_t mask_ = 0;
};

/// Arrow (x, x^o) of the groupoid: target x, source x (+) x^o.
class GroupoidElement {
 public:
  GroupoidElement(Prefix point, FlipWord flips);

  static GroupoidElement identity(Prefix point) { return {point, FlipWord{}}; }

  const Prefix& point() const { return point_; }
  FlipWord flips() const { return flips_; }
  Prefix target() const { return point_; }
  Prefix source() const { return point_.flipped(flips_); }
  std::string to_string() const;

  auto operator<=>(const GroupoidElement&) const = default;

 private:
  Prefix point_;
  FlipWord flips_;
};

/// a o b, defined iff source(a) == target(b) on equal depths.
GroupoidElement compose(const GroupoidElement& a, const GroupoidElement& b);
GroupoidElement inverse(const GroupoidElement& a);

/// All 2^n flip words with horizon <= n, ascending by bitmask.
std::vector<FlipWord> enumerate_gamma(int n);

/// All 2^depth prefixes of the given depth, ascending by bitmask.
std::vector<Prefix> enumerate_prefixes(int depth);

/// Tallies of the exhaustive axiom sweep at a given horizon.
struct AxiomReport {
  int horizon = 0;
  std::uint64_t pairs_checked = 0;
  std::uint64_t triples_checked = 0;
  std::uint64_t associativity_violations = 0;
  std::uint64_t identity_violations = 0;
  std::uint64_t inverse_violations = 0;
  std::uint64_t source_target_violations = 0;
  std::uint64_t group_law_violations = 0;
  std::string first_witness;

  std::uint64_t total_violations() const {
    return associativity_violations + identity_violations + inverse_violations +
           source_target_violations + group_law_violations;
  }
};

/// Exhaustively checks the groupoid axioms on all arrows with prefix depth
/// and flip horizon equal to `horizon`, plus the abelian group law on
/// Gamma_horizon.
AxiomReport check_groupoid_axioms(int horizon);

}  // namespace qchain
