#pragma once

#include <utility>

#include "superfock/fock_space.hpp"
#include "superfock/types.hpp"

namespace superfock {

/// Invariant quasiparticle pair A± = P0 (a ∓ b) together with the vacuum
/// projector P0.  Requires a single fermion/boson pair with unit coupling;
/// everything lives in the two lowest excitation blocks, so no statement
/// here is affected by the cutoff.
struct SusinoPair {
  Operator a_plus;
  Operator a_minus;
  Operator p0;
};

/// P0 = (1 - N_f) tensor |0><0|_b: rank-one projector onto the vacuum.
/// Realizes a a^dag f(b^dag b) with f = indicator of occupation zero.
Operator build_p0(const FockSpace& sp);

/// A± = P0 (a ∓ b); satisfies [A±, G] = ∓A± exactly, hence the flow
/// multiplies A± by the pure phase e^{±is}.
SusinoPair build_susinos(const FockSpace& sp);

struct StatisticsReport {
  double commutator_defect;      ///< ||[A+, A+^dag] - 1||
  double anticommutator_defect;  ///< ||{A+, A+^dag} - 1||
  double square_norm;            ///< max(||A+^2||, ||A-^2||)
  double exciton_phase_defect;   ///< A-^dag A+ vs e^{2is} phase at s = 0.9
  double literal_exciton_norm;   ///< ||A+ A-^dag||: vanishes identically
};

/// Mixed-statistics witnesses: A± are nilpotent yet neither bosonic nor
/// fermionic.  Throws std::runtime_error unless both witness norms
/// exceed 0.5.  The quadratic e^{2is}-exciton is A-^dag A+ (creation of a
/// plus-type and absorption of a minus-type excitation); the opposite
/// ordering A+ A-^dag vanishes identically because the two single-block
/// vectors are orthogonal, and its norm is recorded to document that.
StatisticsReport statistics_report(const FockSpace& sp, const SusinoPair& pair);

/// Ladder between excitation blocks: with v_k = sqrt(k/2) (|1, k-1> -
/// sign |0, k>) the operator is the dyad |v_m><v_n|.  The v_k are the
/// normalized generator eigenvectors of the k-th block scaled by sqrt(k),
/// i.e. the creation-polynomial (a^dag b^dag^{m-1}, b^dag^m) and
/// annihilation-polynomial (a b^{n-1}, b^n) monomials with coefficients
/// fixed by the eigenvector condition.  The relative sign in both factors
/// is -sign; this is the unique convention under which
///   - adjoint exchanges the labels:  A_(m,n)^dag = A_(n,m),
///   - products contract:            A_(m,n) A_(n,r) = n A_(m,r),
///   - the flow is a pure phase:     A_(m,n)(s) = e^{sign*is(sqrt n - sqrt m)} A_(m,n),
/// all exact.  At (1,1) the dyad equals A±^dag A± / 2.
/// Requires m, n >= 1 and cutoff >= m + n + 2 (ConfigError otherwise).
Operator build_a_mn(const FockSpace& sp, int m, int n, int sign);

/// Rigid rotation generated by the partner supercharge: returns
/// (A+ cos r + A- sin r, -A+ sin r + A- cos r), which conjugation by
/// e^{ir G_A} reproduces; infinitesimally [A±, G_A] = ±i A∓.
std::pair<Operator, Operator> ga_oscillation(const SusinoPair& pair, double r);

struct PerturbedReport {
  double identity_defect;  ///< H_alpha vs (G + alpha/2)^2; zero by algebra
  Complex plus_phase;      ///< fitted phase of A+(t); |phase| = 1
  Complex minus_phase;
  double plus_defect;   ///< proportionality defect of A+(t) vs A+
  double minus_defect;
  double a_defect;      ///< distance of a(t) from the best phase multiple of a
  double b_defect;
};

/// Evolution under H_alpha = H + alpha G + alpha^2/4 = (G + alpha/2)^2:
/// only the quasiparticles stay proportional to themselves; the bare mode
/// operators do not, and their defects are reported.
PerturbedReport perturbed_evolution(const FockSpace& sp, double alpha, double t);

}  // namespace superfock
