#include "qchain/groupoid.hpp"

#include <bit>
#include <sstream>

#include "qchain/errors.hpp"

namespace qchain {

namespace {

std::uint64_t site_bit(int site) {
  if (site < 1 || site > kMaxSites) {
    throw SiteOutOfRange("site " + std::to_string(site) + " outside [1, 64]");
  }
  return std::uint64_t{1} << (site - 1);
}

std::uint64_t depth_mask(int depth) {
  return depth >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << depth) - 1;
}

std::uint64_t mask_from_sites(std::span<const int> sites) {
  std::uint64_t mask = 0;
  for (int s : sites) {
    const auto b = site_bit(s);
    if (mask & b) throw SiteOutOfRange("duplicate site " + std::to_string(s));
    mask |= b;
  }
  return mask;
}

}  // namespace

FlipWord::FlipWord(std::initializer_list<int> sites)
    : mask_(mask_from_sites(std::span<const int>(sites.begin(), sites.size()))) {}

FlipWord::FlipWord(std::span<const int> sites) : mask_(mask_from_sites(sites)) {}

FlipWord FlipWord::unit(int site) { return from_mask(site_bit(site)); }

bool FlipWord::contains(int site) const {
  return site >= 1 && site <= kMaxSites && (mask_ & (std::uint64_t{1} << (site - 1)));
}

int FlipWord::size() const { return std::popcount(mask_); }

int FlipWord::horizon() const { return 64 - std::countl_zero(mask_); }

std::vector<int> FlipWord::sites() const {
  std::vector<int> out;
  for (std::uint64_t m = mask_; m; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
  return out;
}

std::string FlipWord::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int s : sites()) {
    if (!first) os << ',';
    os << s;
    first = false;
  }
  os << '}';
  return os.str();
}

FlipWord xor_words(FlipWord a, FlipWord b) { return a ^ b; }

Prefix::Prefix(std::span<const int> bits) : depth_(static_cast<int>(bits.size())) {
  if (depth_ > kMaxSites) throw SiteOutOfRange("prefix longer than 64 sites");
  for (int i = 0; i < depth_; ++i) {
    if (bits[i] != 0 && bits[i] != 1) throw InvalidSpec("prefix entries must be 0 or 1");
    if (bits[i]) mask_ |= std::uint64_t{1} << i;
  }
}

Prefix::Prefix(std::initializer_list<int> bits)
    : Prefix(std::span<const int>(bits.begin(), bits.size())) {}

Prefix Prefix::from_mask(int depth, std::uint64_t mask) {
  if (depth < 0 || depth > kMaxSites) throw SiteOutOfRange("prefix depth outside [0, 64]");
  if (mask & ~depth_mask(depth)) throw DepthTooSmall("mask has bits beyond prefix depth");
  Prefix p;
  p.depth_ = depth;
  p.mask_ = mask;
  return p;
}

int Prefix::bit(int site) const {
  if (site < 1 || site > depth_) {
    throw DepthTooSmall("site " + std::to_string(site) + " not resolved by depth-" +
                        std::to_string(depth_) + " prefix");
  }
  return static_cast<int>((mask_ >> (site - 1)) & 1u);
}

Prefix Prefix::flipped(FlipWord w) const {
  if (w.horizon() > depth_) {
    throw DepthTooSmall("flip word " + w.to_string() + " exceeds prefix depth " +
                        std::to_string(depth_));
  }
  return from_mask(depth_, mask_ ^ w.mask());
}

Prefix Prefix::truncated(int depth) const {
  if (depth > depth_) throw DepthTooSmall("cannot truncate to a larger depth");
  return from_mask(depth, mask_ & depth_mask(depth));
}

std::string Prefix::to_string() const {
  std::string s = "(";
  for (int i = 1; i <= depth_; ++i) s += static_cast<char>('0' + bit(i));
  return s + ")";
}

GroupoidElement::GroupoidElement(Prefix point, FlipWord flips) : point_(point), flips_(flips) {
  if (flips.horizon() > point.depth()) {
    throw DepthTooSmall("arrow " + flips.to_string() + " needs prefix depth >= " +
                        std::to_string(flips.horizon()));
  }
}

std::string GroupoidElement::to_string() const {
  return "(" + point_.to_string() + ", " + flips_.to_string() + ")";
}

GroupoidElement compose(const GroupoidElement& a, const GroupoidElement& b) {
  if (a.point().depth() != b.point().depth()) {
    throw DepthMismatch("cannot compose arrows on prefixes of depth " +
                        std::to_string(a.point().depth()) + " and " +
                        std::to_string(b.point().depth()));
  }
  if (a.source() != b.target()) {
    throw NotComposable("source " + a.source().to_string() + " != target " +
                        b.target().to_string());
  }
  return {a.point(), a.flips() ^ b.flips()};
}

GroupoidElement inverse(const GroupoidElement& a) { return {a.source(), a.flips()}; }

std::vector<FlipWord> enumerate_gamma(int n) {
  if (n < 0 || n > 30) throw HorizonOverflow("enumerate_gamma supports 0 <= n <= 30");
  std::vector<FlipWord> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) out.push_back(FlipWord::from_mask(m));
  return out;
}

std::vector<Prefix> enumerate_prefixes(int depth) {
  if (depth < 0 || depth > 30) throw HorizonOverflow("enumerate_prefixes supports depth <= 30");
  std::vector<Prefix> out;
  out.reserve(std::size_t{1} << depth);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << depth); ++m) {
    out.push_back(Prefix::from_mask(depth, m));
  }
  return out;
}

AxiomReport check_groupoid_axioms(int horizon) {
  AxiomReport r;
  r.horizon = horizon;
  const auto words = enumerate_gamma(horizon);
  const auto points = enumerate_prefixes(horizon);

  auto note = [&r](std::uint64_t& counter, const std::string& what) {
    ++counter;
    if (r.first_witness.empty()) r.first_witness = what;
  };

  for (const auto& x : points) {
    for (auto xo : words) {
      const GroupoidElement a{x, xo};
      const auto inv = inverse(a);
      const auto id_t = GroupoidElement::identity(a.target());
      const auto id_s = GroupoidElement::identity(a.source());

      if (compose(id_t, a) != a || compose(a, id_s) != a) {
        note(r.identity_violations, "identity law at " + a.to_string());
      }
      if (compose(a, inv) != id_t || compose(inv, a) != id_s || inverse(inv) != a) {
        note(r.inverse_violations, "inverse law at " + a.to_string());
      }

      for (auto yo : words) {
        const GroupoidElement b{a.source(), yo};
        const auto ab = compose(a, b);
        ++r.pairs_checked;
        if (ab.source() != b.source() || ab.target() != a.target()) {
          note(r.source_target_violations, "source/target of " + a.to_string() + " o " +
                                               b.to_string());
        }
        for (auto zo : words) {
          const GroupoidElement c{b.source(), zo};
          ++r.triples_checked;
          if (compose(compose(a, b), c) != compose(a, compose(b, c))) {
            note(r.associativity_violations, "associativity at " + a.to_string() + ", " +
                                                 b.to_string() + ", " + c.to_string());
          }
        }
      }
    }
  }

  for (auto u : words) {
    if ((u ^ FlipWord{}) != u || (u ^ u) != FlipWord{}) {
      note(r.group_law_violations, "unit/inverse in Gamma at " + u.to_string());
    }
    for (auto v : words) {
      if ((u ^ v) != (v ^ u)) note(r.group_law_violations, "commutativity in Gamma");
      for (auto w : words) {
        if (((u ^ v) ^ w) != (u ^ (v ^ w))) note(r.group_law_violations, "associativity in Gamma");
      }
    }
  }
  return r;
}

}  // namespace qchain
