#pragma once

// Energies on the groupoid: the Ising transition energy S (a coboundary of
// the formal chain Hamiltonian), the Bernoulli modular Hamiltonian log Delta,
// and the phase evolution e^{iSt} they generate on the algebra.

#include <cstdint>
#include <variant>
#include <vector>

#include "qchain/algebra.hpp"
#include "qchain/dfs.hpp"
#include "qchain/groupoid.hpp"
#include "qchain/measures.hpp"

namespace qchain {

/// S(x, w) = H(x (+) w) - H(x) for H = -J sum_k sbar_k sbar_{k+1}, summed
/// only over bonds touching a flipped site. Needs depth >= horizon + 1 for a
/// nonempty word.
double ising_transition_energy(double J, const GroupoidElement& g);

/// S on Gamma_n tabulated at depth D >= n + 1.
DfsTable ising_dfs_table(double J, int n, int depth);

/// log((1 - lambda) / lambda) * sum_{j in w} (2 x_j - 1).
double modular_hamiltonian_eval(double lambda, const GroupoidElement& g);

/// log((1 - lambda) / lambda) * k for |k| <= horizon, ascending.
/// DegenerateSpectrum at lambda = 1/2.
std::vector<double> modular_spectrum_points(double lambda, int horizon);

struct SpectrumReport {
  double lambda = 0.0;
  int horizon = 0;
  double log_ratio = 0.0;
  /// Lattice indices k attained by some arrow of horizon <= `horizon`,
  /// read from the float values.
  std::vector<int> attained_k;
  std::vector<double> attained_values;
  /// Largest |value - k log_ratio| over all arrows.
  double max_lattice_deviation = 0.0;
  /// Exact route: Delta(x, w) == ((1 - lambda) / lambda)^k in rationals.
  bool exact = false;
  bool exact_on_lattice = false;
  std::vector<int> exact_attained_k;
  /// Every |k| <= horizon attained.
  bool complete = false;
};

/// Enumerates every arrow with flips in Gamma_horizon over depth-horizon
/// prefixes.
SpectrumReport attained_spectrum(const MeasureSpec& spec, int horizon);

struct TransitionEnergy {
  double J = 0.0;
};

struct ModularHamiltonian {
  double lambda = 0.5;
};

/// An energy functional on arrows. A DfsTable entry acts as a tabulated
/// energy (used for perturbed, non-cocycle controls).
using Energy = std::variant<TransitionEnergy, ModularHamiltonian, DfsTable>;

double energy_value(const Energy& energy, const GroupoidElement& g);
/// Prefix depth needed to evaluate the energy on flips w.
int energy_required_depth(const Energy& energy, FlipWord w);

/// (e^{iSt} F)(x, w) = e^{i S(x, w) t} F(x, w).
AlgebraElement tt_evolve(const AlgebraElement& F, double t, const Energy& energy);

struct NormPair {
  double l2 = 0.0;
  double hahn = 0.0;
};

struct HeisenbergReport {
  double t = 0.0;
  double J = 0.0;
  double lambda = 0.0;
  /// max |e^{iSt}(F * e^{-iSt} psi) - (e^{iSt} F) * psi|
  double max_deviation = 0.0;
  /// Same comparison with the phases reversed on the left side:
  /// e^{-iSt}(F * e^{iSt} psi) against (e^{iSt} F) * psi.
  double reversed_sign_deviation = 0.0;
  NormPair norms_before;
  NormPair norms_after;
};

/// Norms are measured with `spec`.
HeisenbergReport heisenberg_equivalence_check(const AlgebraElement& F, const AlgebraElement& psi,
                                              double t, const Energy& energy,
                                              const MeasureSpec& spec);
/// Ising energy with coupling J, norms under the Ising Boltzmann measure.
HeisenbergReport heisenberg_equivalence_check(const AlgebraElement& F, const AlgebraElement& psi,
                                              double t, double J);

/// The Ising table on Gamma_n at depth D with independent uniform noise of
/// the given amplitude added to every nonempty-word entry. Not a cocycle.
DfsTable perturbed_energy_table(double J, int n, int depth, double amplitude, std::uint64_t seed);

}  // namespace qchain
