#include "qchain/matrix_bridge.hpp"

#include <algorithm>
#include <sstream>

#include "qchain/errors.hpp"
#include "qchain/random.hpp"

namespace qchain {

namespace {

constexpr int kMaxDenseSites = 10;

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix sigma(int generator) {
  Matrix s(2, 2);
  if (generator == 1) {
    s << 0, 1, 1, 0;
  } else {
    s << 1, 0, 0, -1;
  }
  return s;
}

// I_{2^{k-1}} (x) s (x) I_{2^{n-k}}
Matrix site_operator(int generator, int site, int n) {
  const Matrix left = Matrix::Identity(Eigen::Index{1} << (site - 1), Eigen::Index{1} << (site - 1));
  const Matrix right = Matrix::Identity(Eigen::Index{1} << (n - site), Eigen::Index{1} << (n - site));
  return kron(kron(left, sigma(generator)), right);
}

void check_sites(int n) {
  if (n < 0 || n > kMaxDenseSites) {
    throw HorizonOverflow("dense operators limited to n <= " + std::to_string(kMaxDenseSites));
  }
}

}  // namespace

DenseOperator DenseOperator::identity(int n) {
  check_sites(n);
  return {n, Matrix::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n)};
}

DenseOperator DenseOperator::embedded() const {
  check_sites(n + 1);
  return {n + 1, kron(entries, Matrix::Identity(2, 2))};
}

PauliWord::PauliWord(std::initializer_list<Letter> letters)
    : PauliWord(std::vector<Letter>(letters)) {}

PauliWord::PauliWord(std::vector<Letter> letters) : letters_(std::move(letters)) {
  for (const auto& l : letters_) {
    if (l.site < 1 || l.site > kMaxSites) throw SiteOutOfRange("Pauli letter site out of range");
    if (l.generator != 1 && l.generator != 3) {
      throw InvalidSpec("Pauli generators are 1 or 3, got " + std::to_string(l.generator));
    }
  }
}

int PauliWord::max_site() const {
  int m = 0;
  for (const auto& l : letters_) m = std::max(m, l.site);
  return m;
}

PauliWord PauliWord::normal_ordered() const {
  auto out = letters_;
  std::stable_sort(out.begin(), out.end(),
                   [](const Letter& a, const Letter& b) { return a.site < b.site; });
  return PauliWord(std::move(out));
}

PauliWord PauliWord::reversed() const {
  return PauliWord(std::vector<Letter>(letters_.rbegin(), letters_.rend()));
}

bool PauliWord::is_diagonal() const {
  return std::all_of(letters_.begin(), letters_.end(),
                     [](const Letter& l) { return l.generator == 3; });
}

std::string PauliWord::to_string() const {
  if (letters_.empty()) return "I";
  std::ostringstream os;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    os << (i ? " " : "") << "s" << letters_[i].generator << "(" << letters_[i].site << ")";
  }
  return os.str();
}

PauliWord operator*(const PauliWord& a, const PauliWord& b) {
  auto letters = a.letters_;
  letters.insert(letters.end(), b.letters_.begin(), b.letters_.end());
  return PauliWord(std::move(letters));
}

DenseOperator pauli_operator(const PauliWord& w, int n) {
  check_sites(n);
  if (w.max_site() > n) {
    throw SiteOutOfRange("word " + w.to_string() + " acts beyond site " + std::to_string(n));
  }
  auto A = DenseOperator::identity(n);
  for (const auto& l : w.letters()) A.entries = A.entries * site_operator(l.generator, l.site, n);
  return A;
}

DenseOperator pauli_operator(const PauliSum& sum, int n) {
  check_sites(n);
  const auto dim = Eigen::Index{1} << n;
  DenseOperator A{n, Matrix::Zero(dim, dim)};
  for (const auto& [c, w] : sum) A.entries += c * pauli_operator(w, n).entries;
  return A;
}

Complex powers_state(const DenseOperator& A, double lambda) {
  Matrix rho = Matrix::Identity(1, 1);
  Matrix single(2, 2);
  single << lambda, 0, 0, 1.0 - lambda;
  for (int k = 0; k < A.n; ++k) rho = kron(rho, single);
  return (rho * A.entries).trace();
}

Rational powers_state_exact(const PauliWord& w, int n, const Rational& lambda) {
  if (!w.is_diagonal()) throw InvalidSpec("exact Powers expectation needs a diagonal word");
  check_sites(n);
  if (w.max_site() > n) throw SiteOutOfRange("word acts beyond n sites");
  // Diagonal of the word: sign (-1)^{sum of bits over sites with odd sigma_3 count}.
  std::vector<int> parity(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& l : w.letters()) parity[l.site] ^= 1;
  Rational trace(0);
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
    Rational rho(1);
    int sign = 1;
    for (int k = 1; k <= n; ++k) {
      const bool one = (i >> (n - k)) & 1u;
      rho *= one ? Rational(1 - lambda) : lambda;
      if (one && parity[k]) sign = -sign;
    }
    trace += sign * rho;
  }
  return trace;
}

AlgebraElement glimm_map(const PauliWord& w, const MeasureSpec& spec) {
  spec.as_bernoulli();
  auto F = AlgebraElement::unit();
  const auto ordered = w.normal_ordered();
  for (const auto& l : ordered.letters()) {
    const auto factor = l.generator == 1 ? pukanszky_V(FlipWord::unit(l.site), spec)
                                         : pukanszky_L(to_complex(spin_function(l.site)));
    F = convolve(F, factor);
  }
  return F;
}

AlgebraElement glimm_map(const PauliSum& sum, const MeasureSpec& spec) {
  AlgebraElement F;
  for (const auto& [c, w] : sum) F += c * glimm_map(w, spec);
  return F;
}

Complex gns_expectation(const PauliWord& w, const MeasureSpec& spec) {
  const auto psi = AlgebraElement::unit();
  return inner_product(psi, apply(glimm_map(w, spec), psi, spec), spec);
}

Complex gns_expectation(const PauliSum& sum, const MeasureSpec& spec) {
  const auto psi = AlgebraElement::unit();
  return inner_product(psi, apply(glimm_map(sum, spec), psi, spec), spec);
}

Rational gns_expectation_exact(const PauliWord& w, const MeasureSpec& spec) {
  if (!w.is_diagonal()) throw InvalidSpec("exact GNS expectation needs a diagonal word");
  const int d = w.max_site();
  BasicCylinderFunction<Rational> f(d, Rational(1));
  for (const auto& l : w.letters()) {
    for (std::uint64_t x = 0; x < f.size(); ++x) {
      if ((x >> (l.site - 1)) & 1u) f[x] = -f[x];
    }
  }
  return integrate_exact(spec, f);
}

GnsReport gns_compare_random(int n, int trials, double lambda, std::uint64_t seed) {
  check_sites(n);
  GnsReport r{n, lambda, trials, 0.0, seed, {}};
  const auto spec = MeasureSpec::bernoulli(lambda);
  const Complex i_unit(0.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, static_cast<std::uint64_t>(t)));
    PauliSum sum;
    const int terms = 1 + static_cast<int>(rng.below(6));
    for (int j = 0; j < terms; ++j) {
      std::vector<PauliWord::Letter> letters;
      Complex c = rng.complex_uniform();
      for (int k = 1; k <= n; ++k) {
        switch (rng.below(5)) {
          case 0: break;
          case 1: letters.push_back({k, 1}); break;
          case 2: letters.push_back({k, 3}); break;
          case 3:  // sigma_2 = i sigma_1 sigma_3
            letters.push_back({k, 1});
            letters.push_back({k, 3});
            c *= i_unit;
            break;
          default:  // sigma_3 sigma_1 sigma_3 = -sigma_1
            letters.push_back({k, 3});
            letters.push_back({k, 1});
            letters.push_back({k, 3});
            break;
        }
      }
      // Shuffle across sites; per-site order is what matters.
      std::stable_sort(letters.begin(), letters.end(), [](const auto& a, const auto& b) {
        return (a.site * 7919) % 13 < (b.site * 7919) % 13;
      });
      sum.emplace_back(c, PauliWord(std::move(letters)));
    }
    const Complex lhs = gns_expectation(sum, spec);
    const Complex rhs = powers_state(pauli_operator(sum, n), lambda);
    const double d = std::abs(lhs - rhs);
    if (d > r.max_abs_deviation) {
      r.max_abs_deviation = d;
      r.witness = "trial " + std::to_string(t);
    }
  }
  return r;
}

}  // namespace qchain
