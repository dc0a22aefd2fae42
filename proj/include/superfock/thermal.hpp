#pragma once

#include <cmath>

#include "superfock/entanglement.hpp"
#include "superfock/fock_space.hpp"

namespace superfock {

/// Gibbs state over one fermionic and one bosonic mode with the total-number
/// Hamiltonian.  With x = e^beta the closed-form occupations are
///   <a+a> = 1/(1+x),  <aa+> = x/(1+x),  <b+b> = 1/(x-1),  <bb+> = x/(x-1),
/// which require x > 1, i.e. beta > 0.
struct ThermalParams {
  double beta = std::log(2.0);
  int cutoff = 40;

  double x() const { return std::exp(beta); }
  void validate() const;  // beta > 0 and cutoff >= 2, else ConfigError
};

/// e^{-beta h} / tr e^{-beta h}.  The spectrum is shifted to its ground
/// energy before exponentiating, so large beta cannot overflow; the limit is
/// the ground-state projector.  Throws ConfigError for beta <= 0 and
/// std::invalid_argument if h is not hermitian.
DensityMatrix gibbs(const Operator& h, double beta);

/// tr(rho x), the thermal expectation of a (not necessarily hermitian)
/// operator.
Complex thermal_expectation(const DensityMatrix& rho, const Operator& x);

/// Analytic truncation tail of the boson mode,
/// (cutoff+1) x^{-cutoff} / (1 - 1/x)^2: a bound on how far any truncated
/// boson-side expectation can sit from its closed form.  Assertions use
/// this plus a small machine floor (the tail sinks below double resolution
/// for x >= e at cutoff 40).
double tail_bound(const ThermalParams& p);

/// Tolerance actually asserted: tail_bound plus the floating-point floor.
double thermal_tolerance(const ThermalParams& p);

struct OccupationReport {
  double x = 0.0;
  double fermion_occ = 0.0;   // measured <a+a>
  double fermion_hole = 0.0;  // measured <aa+>
  double boson_occ = 0.0;     // measured <b+b>
  double boson_hole = 0.0;    // measured <bb+>
  double fermion_defect = 0.0;  // worst gap to 1/(1+x), x/(1+x)
  double boson_defect = 0.0;    // worst gap to 1/(x-1), x/(x-1)
  double pair_sum_defect = 0.0;  // |<aa+>+<a+a>-1| and |<bb+>-<b+b>-1|
  double tolerance = 0.0;
};

/// Evaluates all four closed-form occupations in the Gibbs state and asserts
/// them: the fermion side is exact under truncation (the state factorizes),
/// the boson side within thermal_tolerance.  Throws std::runtime_error on
/// violation.
OccupationReport mode_occupation_check(const ThermalParams& p);

struct InvarianceReport {
  double evolved_occupation = 0.0;  // <a+(s)a(s)>
  double invariance_defect = 0.0;   // gap to 1/(1+x)
  double number_commutator = 0.0;   // |<[a+a, G]>|
  double miracle_defect = 0.0;      // |<G [a+a, G]>|
  double partner_defect = 0.0;      // |<[G, G_A]>|
  double tolerance = 0.0;
};

/// Conjugates a+a by the even flow e^{iGs} and asserts that its thermal
/// expectation is unchanged.  The two cross-term expectations <[a+a,G]> and
/// <G[a+a,G]>, and the partner-charge expectation <[G, G_A]>, vanish even in
/// the truncated model: the top-level corrections cancel identically against
/// the truncated occupation deficit, so they are asserted at machine scale.
/// Throws std::runtime_error on violation.
InvarianceReport ia_invariance(const ThermalParams& p, double s);

/// Thermal drift of Q = a+b under the linear odd flow: returns
/// <Q> + s <dQ> with dQ the parity-twisted product derivative (which equals
/// the Hamiltonian up to a top-level truncation term).  Asserts the result
/// equals s (1/(1+x) + 1/(x-1)) within |s| thermal_tolerance and that it is
/// nonzero with the sign of s for s != 0.  Unlike the even flow, the odd
/// flow provably moves the thermal state.
double ib_drift(const ThermalParams& p, double s);

/// alpha_{i beta}(x) = e^{-beta h} x e^{beta h}, computed spectrally (matrix
/// elements scale by e^{-beta (E_m - E_n)}; no large intermediates).
Operator modular_shift(const Operator& h, double beta, const Operator& x);

/// |omega(x y) - omega(y alpha_{i beta}(x))| for the Gibbs state of h: the
/// equilibrium boundary condition, identically zero in exact arithmetic.
double kms_defect(const Operator& h, double beta, const Operator& x,
                  const Operator& y);

}  // namespace superfock
