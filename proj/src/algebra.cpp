#include "qchain/algebra.hpp"

#include <cmath>

#include "qchain/errors.hpp"
#include "qchain/modular.hpp"

namespace qchain {

AlgebraElement::AlgebraElement(Terms terms) : terms_(std::move(terms)) {
  for (const auto& [w, f] : terms_) {
    if (w.horizon() > kMaxTableDepth) throw HorizonOverflow("flip word beyond table limit");
  }
  drop_zeros();
}

AlgebraElement AlgebraElement::unit() { return single(FlipWord{}, CylinderFunction::constant(1.0)); }

AlgebraElement AlgebraElement::single(FlipWord w, CylinderFunction f) {
  Terms t;
  t.emplace(w, std::move(f));
  return AlgebraElement(std::move(t));
}

CylinderFunction AlgebraElement::at(FlipWord w) const {
  const auto it = terms_.find(w);
  return it == terms_.end() ? CylinderFunction::constant(0.0) : it->second;
}

Complex AlgebraElement::operator()(const GroupoidElement& g) const {
  const auto it = terms_.find(g.flips());
  return it == terms_.end() ? Complex{} : it->second(g.point());
}

int AlgebraElement::horizon() const {
  int h = 0;
  for (const auto& [w, f] : terms_) h = std::max({h, w.horizon(), f.depth()});
  return h;
}

int AlgebraElement::flip_horizon() const {
  int h = 0;
  for (const auto& [w, f] : terms_) h = std::max(h, w.horizon());
  return h;
}

AlgebraElement AlgebraElement::lifted(int depth) const {
  if (depth < horizon()) throw DepthTooSmall("cannot lift algebra element below its horizon");
  AlgebraElement out;
  for (const auto& [w, f] : terms_) out.terms_.emplace(w, f.lifted(depth));
  return out;
}

void AlgebraElement::accumulate(FlipWord w, const CylinderFunction& f) {
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    if (!f.is_zero()) terms_.emplace(w, f);
    return;
  }
  it->second += f;
  if (it->second.is_zero()) terms_.erase(it);
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  for (const auto& [w, f] : o.terms_) accumulate(w, f);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  for (const auto& [w, f] : o.terms_) accumulate(w, -1.0 * f);
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(Complex c) {
  for (auto& [w, f] : terms_) f *= c;
  drop_zeros();
  return *this;
}

bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (auto ia = a.terms_.begin(), ib = b.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib) {
    if (ia->first != ib->first || !(ia->second == ib->second)) return false;
  }
  return true;
}

void AlgebraElement::drop_zeros() {
  std::erase_if(terms_, [](const auto& kv) { return kv.second.is_zero(); });
}

namespace {

// Visits every word in supp(F) u supp(G) with both tables at a common depth.
template <typename Fn>
void for_each_pair(const AlgebraElement& F, const AlgebraElement& G, Fn&& fn) {
  const int d = std::max(F.horizon(), G.horizon());
  std::map<FlipWord, int> words;
  for (const auto& [w, f] : F.terms()) words[w] = 0;
  for (const auto& [w, g] : G.terms()) words[w] = 0;
  for (const auto& [w, unused] : words) fn(w, F.at(w).lifted(d), G.at(w).lifted(d));
}

void check_cap(int depth, int cap) {
  if (depth > cap) {
    throw HorizonOverflow("common horizon " + std::to_string(depth) + " exceeds depth cap " +
                          std::to_string(cap));
  }
}

}  // namespace

double max_abs_difference(const AlgebraElement& F, const AlgebraElement& G) {
  double m = 0.0;
  for_each_pair(F, G, [&m](FlipWord, const CylinderFunction& f, const CylinderFunction& g) {
    m = std::max(m, max_abs_difference(f, g));
  });
  return m;
}

double scaled_difference(const AlgebraElement& F, const AlgebraElement& G) {
  double diff = 0.0;
  double scale = 1.0;
  for_each_pair(F, G, [&](FlipWord, const CylinderFunction& f, const CylinderFunction& g) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      diff = std::max(diff, std::abs(f[i] - g[i]));
      scale = std::max({scale, std::abs(f[i]), std::abs(g[i])});
    }
  });
  return diff / scale;
}

int working_depth(const AlgebraElement& F, const MeasureSpec& spec) {
  int d = F.horizon();
  for (const auto& [w, f] : F.terms()) d = std::max(d, spec.required_depth(w));
  return d;
}

AlgebraElement convolve(const AlgebraElement& F, const AlgebraElement& G, int depth_cap) {
  const int d = std::max(F.horizon(), G.horizon());
  check_cap(d, depth_cap);
  const auto Fl = F.lifted(d);
  const auto Gl = G.lifted(d);
  std::map<FlipWord, CylinderFunction> acc;
  for (const auto& [y, f] : Fl.terms()) {
    for (const auto& [w, g] : Gl.terms()) {
      auto [it, inserted] = acc.try_emplace(y ^ w, d);
      auto& out = it->second;
      const std::uint64_t shift = y.mask();
      for (std::uint64_t x = 0; x < out.size(); ++x) out[x] += f[x] * g[x ^ shift];
    }
  }
  return AlgebraElement(std::move(acc));
}

AlgebraElement involution(const AlgebraElement& F, const MeasureSpec& spec) {
  const int d = working_depth(F, spec);
  AlgebraElement::Terms out;
  for (const auto& [w, f0] : F.terms()) {
    const auto f = f0.lifted(d);
    const auto dinv = modular_delta_table(spec, w, d, -1.0);
    CylinderFunction g(d);
    for (std::uint64_t x = 0; x < g.size(); ++x) g[x] = dinv[x] * std::conj(f[x ^ w.mask()]);
    out.emplace(w, std::move(g));
  }
  return AlgebraElement(std::move(out));
}

Complex inner_product(const AlgebraElement& F, const AlgebraElement& G, const MeasureSpec& spec) {
  CompensatedSum<Complex> s;
  for (const auto& [w, f] : F.terms()) {
    const auto it = G.terms().find(w);
    if (it == G.terms().end()) continue;
    const int d = std::max(f.depth(), it->second.depth());
    auto prod = f.lifted(d).map([](Complex v) { return std::conj(v); });
    prod *= it->second.lifted(d);
    s.add(integrate(spec, prod));
  }
  return s.value();
}

double l2_norm(const AlgebraElement& F, const MeasureSpec& spec) {
  CompensatedSum<double> s;
  for (const auto& [w, f] : F.terms()) {
    s.add(integrate(spec, f.map([](Complex v) { return Complex(std::norm(v)); })).real());
  }
  return std::sqrt(s.value());
}

HahnNorm hahn_norm_branches(const AlgebraElement& F, const MeasureSpec& spec) {
  HahnNorm h;
  if (F.is_zero()) return h;
  const int d = working_depth(F, spec);
  const std::size_t size = std::size_t{1} << d;
  std::vector<double> target(size, 0.0), source(size, 0.0);
  for (const auto& [w, f0] : F.terms()) {
    const auto f = f0.lifted(d);
    const auto dinv = modular_delta_table(spec, w, d, -1.0);
    for (std::uint64_t x = 0; x < size; ++x) {
      target[x] += std::abs(f[x]);
      source[x] += dinv[x] * std::abs(f[x ^ w.mask()]);
    }
  }
  for (std::size_t x = 0; x < size; ++x) {
    h.target_branch = std::max(h.target_branch, target[x]);
    h.source_branch = std::max(h.source_branch, source[x]);
  }
  h.value = std::max(h.target_branch, h.source_branch);
  return h;
}

double hahn_norm(const AlgebraElement& F, const MeasureSpec& spec) {
  return hahn_norm_branches(F, spec).value;
}

AlgebraElement apply(const AlgebraElement& F, const AlgebraElement& psi, const MeasureSpec&) {
  return convolve(F, psi);
}

AlgebraElement pukanszky_V(FlipWord w, const MeasureSpec& spec) {
  const int d = std::max(w.horizon(), spec.required_depth(w));
  return AlgebraElement::single(w, to_complex(modular_delta_table(spec, w, d, -0.5)));
}

AlgebraElement pukanszky_L(const CylinderFunction& phi) {
  return AlgebraElement::single(FlipWord{}, phi);
}

AlgebraElement modular_conjugation(const AlgebraElement& F, const MeasureSpec& spec) {
  const int d = working_depth(F, spec);
  AlgebraElement::Terms out;
  for (const auto& [w, f0] : F.terms()) {
    const auto f = f0.lifted(d);
    const auto scale = modular_delta_table(spec, w, d, -0.5);
    CylinderFunction g(d);
    for (std::uint64_t x = 0; x < g.size(); ++x) g[x] = scale[x] * std::conj(f[x ^ w.mask()]);
    out.emplace(w, std::move(g));
  }
  return AlgebraElement(std::move(out));
}

AlgebraElement modular_operator_pow(const AlgebraElement& F, Complex t, const MeasureSpec& spec) {
  const int d = working_depth(F, spec);
  AlgebraElement::Terms out;
  for (const auto& [w, f0] : F.terms()) {
    auto g = f0.lifted(d);
    for (std::uint64_t x = 0; x < g.size(); ++x) {
      const double log_delta = log_modular_delta(spec, {Prefix::from_mask(d, x), w});
      g[x] *= std::exp(t * log_delta);
    }
    out.emplace(w, std::move(g));
  }
  return AlgebraElement(std::move(out));
}

Complex canonical_weight(const AlgebraElement& F, const MeasureSpec& spec) {
  return integrate(spec, F.at(FlipWord{}));
}

}  // namespace qchain
