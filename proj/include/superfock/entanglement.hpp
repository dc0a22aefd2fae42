#pragma once

#include <array>
#include <utility>
#include <vector>

#include "superfock/fock_space.hpp"
#include "superfock/types.hpp"

namespace superfock {

/// Hermitian, positive semidefinite matrix with unit trace over the kept
/// tensor factor.
struct DensityMatrix {
  Operator rho;
};

/// Modes retained by a partial trace.  The reduced basis is enumerated like
/// the full one: kept fermions (in listed order) are the slow digits, kept
/// bosons the fast ones.
struct Subsystem {
  std::vector<int> fermion_modes;
  std::vector<int> boson_modes;
};

/// Occupation-basis partial trace of |state><state| onto `keep`.
/// Throws std::invalid_argument for an unnormalized state.
DensityMatrix reduce(const FockSpace& sp, const StateVector& state,
                     const Subsystem& keep);

/// von Neumann entropy in nats: -sum lambda ln lambda, 0 ln 0 = 0.
double entropy(const DensityMatrix& dm);

/// tr rho^2; equals 1 exactly for pure states.
double purity(const DensityMatrix& dm);

/// The n-th excitation pair (|1, n-1> ± |0, n>)/sqrt(2): eigenvectors of
/// the single-mode supercharge with eigenvalues ±sqrt(n), maximally
/// entangled between the fermionic and bosonic factors for every n >= 1.
std::pair<StateVector, StateVector> single_mode_eigenvectors(
    const FockSpace& sp, int n);

/// Two-pair superposition data: pair 1 carries unit coupling, pair 2
/// coupling k; the derived weight ratio is kbar^2 = k^2 (n_b2+1)/(n_b1+1).
struct TwoModeParams {
  int n_b1 = 0;
  int n_b2 = 0;
  double k = 1.0;
  Complex weight_a{1.0, 0.0};  ///< coefficient of Phi_1
  Complex weight_b{0.0, 0.0};  ///< coefficient of Phi_2

  double kbar() const;
  /// |A|^2 + |B|^2 = 1 within 1e-12, else std::invalid_argument.
  void validate_weights() const;
};

/// How a mixing angle generates the superposition weights.
enum class WeightFamily {
  RealMix,    ///< A = sin(phi), B = cos(phi): the extremizing real family
  PhasedMix,  ///< A = i sin(phi), B = cos(phi): phase-locked, E = 2 ln 2 at pi/4
};

TwoModeParams mixing_params(double kbar, double phi,
                            WeightFamily family = WeightFamily::RealMix);

/// The degenerate eigenvalue block spanned by
///   psi1 = |1, n_b1, 1, n_b2>,     psi2 = |1, n_b1, 0, n_b2+1>,
///   psi3 = |0, n_b1+1, 1, n_b2>,   psi4 = |0, n_b1+1, 0, n_b2+1>,
/// and the supercharge eigenvectors inside it (sign = ±1 picks the
/// eigenvalue branch ± sqrt((n_b1+1) + k^2 (n_b2+1))):
///   Phi1 = (sign*w, -kbar, 1, 0) / sqrt(2(1+kbar^2)),
///   Phi2 = (0, 1, kbar, sign*w) / sqrt(2(1+kbar^2)),  w = sqrt(1+kbar^2).
struct TwoModeBasis {
  std::array<StateVector, 4> psi;
  StateVector phi1;
  StateVector phi2;
  double block_energy;  ///< (n_b1+1) + k^2 (n_b2+1)
};
TwoModeBasis two_mode_eigenbasis(const FockSpace& sp, const TwoModeParams& p,
                                 int sign);

/// Spectrum of the both-fermion reduction of A Phi1 + B Phi2:
///   (|A|^2/2, |B - kbar A|^2 / (2(1+kbar^2)),
///    |A + kbar B|^2 / (2(1+kbar^2)), |B|^2/2).
std::array<double, 4> density_eigenvalues_closed_form(const TwoModeParams& p);

double two_mode_entropy_closed_form(const TwoModeParams& p);

/// Binary entropies of the two single-fermion reductions of A Phi1 + B Phi2:
///   first  = fermion of the unit-coupling pair,  P(1) = (|A|^2 w^2 + |B - kbar A|^2) / (2 w^2),
///   second = fermion of the k-coupling pair,     P(1) = (|A|^2 w^2 + |A + kbar B|^2) / (2 w^2),
/// with w^2 = 1 + kbar^2.  At kbar = 0 the second fermion decouples from
/// the transformation and its entropy touches zero at two mixing angles
/// per period, while the first stays at ln 2.
std::pair<double, double> per_fermion_entropy_closed_form(
    const TwoModeParams& p);

struct SurfaceRow {
  double kbar;
  double phi;
  double entropy_value;
};
struct SurfaceTable {
  std::vector<SurfaceRow> rows;
  /// max |closed form - reduce+entropy| over the whole grid
  double crosscheck_defect;
};
/// Entanglement of A Phi1 + B Phi2 against both fermions over a
/// (kbar, phi) grid; every value is cross-checked against the brute-force
/// partial trace (base occupations 0, so k = kbar).
SurfaceTable entanglement_surface(const std::vector<double>& kbars,
                                  const std::vector<double>& phis,
                                  WeightFamily family);

struct PerFermionRow {
  double kbar;
  double phi;
  double e1;  ///< fermion of the unit-coupling pair
  double e2;  ///< fermion of the k-coupling pair
};
struct PerFermionTable {
  std::vector<PerFermionRow> rows;
  double crosscheck_defect;
};
PerFermionTable per_fermion_entropy(const std::vector<double>& kbars,
                                    const std::vector<double>& phis);

/// Stationarity function of the real-family entropy: the exact phi
/// derivative of two_mode_entropy_closed_form,
///   pq/(1+kbar^2) ln(p^2/q^2) - sin cos ln(sin^2/cos^2),
/// p = cos - kbar sin, q = sin + kbar cos.
double extremal_equation(double kbar, double phi);

/// Roots of extremal_equation on (0, pi) by bracketing + bisection; each
/// root is a stationary point of E_kbar(phi).  Brackets without a sign
/// change are simply absent from the result.
std::vector<double> extremum_solve(double kbar);

}  // namespace superfock
