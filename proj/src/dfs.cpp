#include "qchain/dfs.hpp"

#include <algorithm>
#include <cmath>

#include "qchain/errors.hpp"
#include "qchain/numeric.hpp"

namespace qchain {

namespace {

std::uint64_t low_mask(int n) { return (std::uint64_t{1} << n) - 1; }

void check_shape(int n, int depth, int extra_bits) {
  if (n < 0 || depth < 0) throw InvalidSpec("negative horizon or depth");
  if (n > depth) {
    throw DepthTooSmall("depth " + std::to_string(depth) + " below horizon " + std::to_string(n));
  }
  if (extra_bits + depth > kMaxTableDepth) {
    throw HorizonOverflow("table of 2^" + std::to_string(extra_bits + depth) + " entries");
  }
}

std::string triple(std::uint64_t z, std::uint64_t x, std::uint64_t y, int depth) {
  return "z=" + Prefix::from_mask(depth, z).to_string() + " x=" +
         FlipWord::from_mask(x).to_string() + " y=" + FlipWord::from_mask(y).to_string();
}

}  // namespace

DfsTable::DfsTable(int n, int depth) : n_(n), depth_(depth) {
  check_shape(n, depth, n);
  values_.assign(std::size_t{1} << (n + depth), 0.0);
}

double DfsTable::operator()(const GroupoidElement& g) const {
  if (g.flips().mask() >> n_) {
    throw HorizonOverflow("flip word " + g.flips().to_string() + " outside Gamma_" + std::to_string(n_));
  }
  if (g.point().depth() < depth_) throw DepthTooSmall("point shorter than table depth");
  return at(g.flips().mask(), g.point().mask() & low_mask(depth_));
}

RealCylinderFunction DfsTable::entry(FlipWord w) const {
  if (w.mask() >> n_) throw HorizonOverflow("flip word outside Gamma_n");
  const auto first = values_.begin() + static_cast<std::ptrdiff_t>(w.mask() * prefix_count());
  return RealCylinderFunction(depth_, std::vector<double>(first, first + static_cast<std::ptrdiff_t>(prefix_count())));
}

void DfsTable::set_entry(FlipWord w, const RealCylinderFunction& f) {
  if (w.mask() >> n_) throw HorizonOverflow("flip word outside Gamma_n");
  const auto g = f.lifted(depth_);
  std::copy(g.values().begin(), g.values().end(),
            values_.begin() + static_cast<std::ptrdiff_t>(w.mask() * prefix_count()));
}

DfsTable& DfsTable::operator+=(const DfsTable& o) {
  if (o.n_ != n_ || o.depth_ != depth_) throw DepthMismatch("DFS tables of different shape");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

DfsTable& DfsTable::operator*=(double c) {
  for (auto& v : values_) v *= c;
  return *this;
}

DfsCheckReport dfs_check(const DfsTable& S) {
  DfsCheckReport r;
  const auto note = [&r](double& slot, double v, const std::string& where) {
    slot = std::max(slot, v);
    if (v > r.max_violation) {
      r.max_violation = v;
      r.witness = where;
    }
  };
  const int D = S.depth();
  for (std::uint64_t z = 0; z < S.prefix_count(); ++z) {
    note(r.zero_word, std::abs(S.at(0, z)), triple(z, 0, 0, D));
    for (std::uint64_t x = 0; x < S.word_count(); ++x) {
      note(r.inversion, std::abs(S.at(x, z ^ x) + S.at(x, z)), triple(z, x, 0, D));
      for (std::uint64_t y = 0; y < S.word_count(); ++y) {
        const double lhs = S.at(x ^ y, z);
        note(r.first_equality, std::abs(lhs - S.at(x, z ^ y) - S.at(y, z)), triple(z, x, y, D));
        note(r.second_equality, std::abs(lhs - S.at(x, z) - S.at(y, z ^ x)), triple(z, x, y, D));
      }
    }
  }
  return r;
}

DfsTable dfs_seed_extend(const DfsTable& S, const RealCylinderFunction& seed, double tol) {
  const int n = S.n();
  const int D = S.depth();
  if (D < n + 1) {
    throw DepthTooSmall("extending to Gamma_" + std::to_string(n + 1) + " needs depth >= " +
                        std::to_string(n + 1));
  }
  if (seed.depth() > D) throw DepthTooSmall("seed deeper than the table");
  double scale = 1.0;
  for (double v : S.values()) scale = std::max(scale, std::abs(v));
  if (const auto check = dfs_check(S); check.max_violation > tol * scale) {
    throw InvariantViolation("input is not a DFS function (violation " +
                             std::to_string(check.max_violation) + " at " + check.witness + ")");
  }

  const auto f = seed.lifted(D);
  const std::uint64_t low = low_mask(n);
  const std::uint64_t e = std::uint64_t{1} << n;
  DfsTable out(n + 1, D);
  for (std::uint64_t w = 0; w < S.word_count(); ++w) {
    for (std::uint64_t x = 0; x < S.prefix_count(); ++x) out.at(w, x) = S.at(w, x);
  }
  // On C_n: the seed where bit n+1 vanishes, its negative on the flipped half.
  for (std::uint64_t zbar = 0; zbar < S.prefix_count(); zbar += e) {
    out.at(e, zbar) = (zbar & e) ? -f[zbar ^ e] : f[zbar];
  }
  // Everywhere else by transporting along the unique path through C_n.
  for (std::uint64_t z = 0; z < S.prefix_count(); ++z) {
    const std::uint64_t zo = z & low;
    const std::uint64_t zbar = z & ~low;
    for (std::uint64_t xo = 0; xo < S.word_count(); ++xo) {
      out.at(xo | e, z) = S.at(zo ^ xo, zbar ^ e) - S.at(zo, zbar) + out.at(e, zbar);
    }
  }
  return out;
}

DfsTable dfs_build(int n, std::span<const RealCylinderFunction> seeds, int depth) {
  if (static_cast<int>(seeds.size()) != n) {
    throw InvalidSpec("dfs_build needs " + std::to_string(n) + " seeds, got " +
                      std::to_string(seeds.size()));
  }
  DfsTable S(0, depth);
  for (int k = 0; k < n; ++k) S = dfs_seed_extend(S, seeds[static_cast<std::size_t>(k)]);
  return S;
}

Cochain::Cochain(int order, int n, int depth) : order_(order), n_(n), depth_(depth) {
  if (order < 0) throw InvalidSpec("negative cochain order");
  check_shape(n, depth, n * order);
  values_.assign(std::size_t{1} << (n * order + depth), 0.0);
}

Cochain Cochain::from_function(const RealCylinderFunction& H, int n) {
  const auto f = H.lifted(std::max(H.depth(), n));
  Cochain c(0, n, f.depth());
  std::copy(f.values().begin(), f.values().end(), c.values_.begin());
  return c;
}

Cochain Cochain::from_table(const DfsTable& S) {
  Cochain c(1, S.n(), S.depth());
  c.values_ = S.values();
  return c;
}

std::uint64_t Cochain::pack(std::span<const std::uint64_t> words) const {
  if (static_cast<int>(words.size()) != order_) throw InvalidSpec("wrong number of cochain arguments");
  std::uint64_t args = 0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (words[i] >> n_) throw HorizonOverflow("cochain argument outside Gamma_n");
    args |= words[i] << (static_cast<std::size_t>(n_) * i);
  }
  return args;
}

DfsTable Cochain::to_table() const {
  if (order_ != 1) throw InvalidSpec("only 1-cochains read as DFS tables");
  DfsTable S(n_, depth_);
  for (std::uint64_t w = 0; w < argument_count(); ++w) {
    for (std::uint64_t x = 0; x < prefix_count(); ++x) S.at(w, x) = at(w, x);
  }
  return S;
}

RealCylinderFunction Cochain::as_function() const {
  if (order_ != 0) throw InvalidSpec("only 0-cochains are single functions");
  return RealCylinderFunction(depth_, values_);
}

double Cochain::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

Cochain cochain_delta(const Cochain& c) {
  const int k = c.order();
  if (k > 2) throw OrderUnsupported("cochain_delta implemented for orders 0, 1, 2");
  const int n = c.n();
  Cochain out(k + 1, n, c.depth());
  const std::uint64_t word_mask = low_mask(n);
  std::vector<std::uint64_t> g(static_cast<std::size_t>(k) + 1);
  std::vector<std::uint64_t> sub(static_cast<std::size_t>(k));

  for (std::uint64_t args = 0; args < out.argument_count(); ++args) {
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = (args >> (static_cast<std::size_t>(n) * i)) & word_mask;

    // Face 0 (group action), faces 1..k (merges), face k+1 (drop last).
    std::copy(g.begin() + 1, g.end(), sub.begin());
    const std::uint64_t first = c.pack(sub);
    std::vector<std::uint64_t> merged(static_cast<std::size_t>(k));
    for (int i = 1; i <= k; ++i) {
      for (int j = 0, s = 0; j <= k; ++j) {
        if (j == i) continue;
        sub[static_cast<std::size_t>(s++)] = (j == i - 1) ? (g[static_cast<std::size_t>(j)] ^ g[static_cast<std::size_t>(i)]) : g[static_cast<std::size_t>(j)];
      }
      merged[static_cast<std::size_t>(i - 1)] = c.pack(sub);
    }
    std::copy(g.begin(), g.end() - 1, sub.begin());
    const std::uint64_t last = c.pack(sub);

    for (std::uint64_t x = 0; x < c.prefix_count(); ++x) {
      CompensatedSum<double> s;
      s.add(c.at(first, x ^ g[0]));
      for (int i = 1; i <= k; ++i) s.add((i % 2 ? -1.0 : 1.0) * c.at(merged[static_cast<std::size_t>(i - 1)], x));
      s.add(((k + 1) % 2 ? -1.0 : 1.0) * c.at(last, x));
      out.at(args, x) = s.value();
    }
  }
  return out;
}

DfsTable coboundary(const RealCylinderFunction& H, int n) {
  return cochain_delta(Cochain::from_function(H, n)).to_table();
}

std::optional<Cochain> is_exact(const DfsTable& S, double tol) {
  const int n = S.n();
  const std::uint64_t low = low_mask(n);
  Cochain H(0, n, S.depth());
  for (std::uint64_t x = 0; x < S.prefix_count(); ++x) H.at(0, x) = S.at(x & low, x & ~low);
  for (std::uint64_t w = 0; w < S.word_count(); ++w) {
    for (std::uint64_t x = 0; x < S.prefix_count(); ++x) {
      const double s = S.at(w, x);
      const double d = H.at(0, x ^ w) - H.at(0, x);
      if (std::abs(d - s) > tol * std::max(1.0, std::abs(s))) return std::nullopt;
    }
  }
  return H;
}

}  // namespace qchain
