#pragma once

// Finite matrix side of the Powers construction and the Glimm map into the
// groupoid algebra.
//
// Tensor convention: site 1 is the leftmost Kronecker factor, so in a
// 2^n x 2^n matrix site k corresponds to bit (n - k) of the basis index.
// Basis state |0> has sigma_3 eigenvalue +1, matching psi_k(x) = +1 for
// x_k = 0.

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "qchain/algebra.hpp"
#include "qchain/measures.hpp"
#include "qchain/rational.hpp"

namespace qchain {

using Matrix = Eigen::MatrixXcd;

/// Element of A_n = M_{2^n}.
struct DenseOperator {
  int n = 0;
  Matrix entries;

  static DenseOperator identity(int n);
  /// A (x) I_2, the embedding A_n -> A_{n+1}.
  DenseOperator embedded() const;
};

/// Product of single-site generators sigma_1^(k) / sigma_3^(k), kept in the
/// order given (letters on distinct sites commute, letters on the same site
/// keep their relative order).
class PauliWord {
 public:
  struct Letter {
    int site;
    int generator;  // 1 or 3
    bool operator==(const Letter&) const = default;
  };

  PauliWord() = default;
  PauliWord(std::initializer_list<Letter> letters);
  explicit PauliWord(std::vector<Letter> letters);

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  int max_site() const;
  /// Stable sort by site.
  PauliWord normal_ordered() const;
  /// Letters in reverse order; the adjoint of the word since each letter
  /// is Hermitian.
  PauliWord reversed() const;
  /// Only sigma_3 letters (the operator is diagonal).
  bool is_diagonal() const;
  std::string to_string() const;

  friend PauliWord operator*(const PauliWord& a, const PauliWord& b);

 private:
  std::vector<Letter> letters_;
};

/// Complex linear combination of Pauli words.
using PauliSum = std::vector<std::pair<Complex, PauliWord>>;

DenseOperator pauli_operator(const PauliWord& w, int n);
DenseOperator pauli_operator(const PauliSum& sum, int n);

/// phi(A) = Tr(rho_lambda^{(x)n} A) with rho_lambda = diag(lambda, 1 - lambda).
Complex powers_state(const DenseOperator& A, double lambda);

/// Exact Powers expectation of a diagonal word.
Rational powers_state_exact(const PauliWord& w, int n, const Rational& lambda);

/// pi_lambda(w): sigma_1^(k) -> V_{e_k}, sigma_3^(k) -> L_{psi_k}, multiplied
/// in normal order. Requires a Bernoulli spec.
AlgebraElement glimm_map(const PauliWord& w, const MeasureSpec& spec);
AlgebraElement glimm_map(const PauliSum& sum, const MeasureSpec& spec);

/// <Psi_lambda, pi_lambda(w) Psi_lambda> with Psi_lambda = E.
Complex gns_expectation(const PauliWord& w, const MeasureSpec& spec);
Complex gns_expectation(const PauliSum& sum, const MeasureSpec& spec);

/// Exact GNS expectation of a diagonal word: integral of prod psi_k against
/// the exact product measure.
Rational gns_expectation_exact(const PauliWord& w, const MeasureSpec& spec);

struct GnsReport {
  int n = 0;
  double lambda = 0.0;
  int trials = 0;
  double max_abs_deviation = 0.0;
  std::uint64_t seed = 0;
  std::string witness;
};

/// Random Pauli combinations on n sites (letters 1 and 3, with sigma_2
/// entering as i sigma_1 sigma_3), comparing the Powers trace with the GNS
/// expectation.
GnsReport gns_compare_random(int n, int trials, double lambda, std::uint64_t seed);

}  // namespace qchain
