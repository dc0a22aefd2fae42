#pragma once

#include <optional>
#include <vector>

#include "superfock/fock_space.hpp"
#include "superfock/types.hpp"

namespace superfock {

enum class SuperchargeVariant { Free, WessZumino, Clifford };

struct SuperchargeSpec {
  SuperchargeVariant variant = SuperchargeVariant::Free;
  ModeConfig config;
  double wz_g = 0.0;
};

enum class FlowKind { Ia, Ib, II, III };
enum class Parity { Even, Odd };

// --- generators -------------------------------------------------------------

/// Free supercharge G = sum_i k_i (a_i b_i^dag + a_i^dag b_i); requires F = B.
Operator build_G(const FockSpace& sp);

/// Diagonal closed form H = sum_i k_i^2 (a_i^dag a_i + b_i^dag b_i); equals
/// the matrix square of build_G away from the truncation boundary.
Operator build_H(const FockSpace& sp);

/// Rotated partner G_A = i(a^dag b - a b^dag); F = B = 1.
Operator build_GA(const FockSpace& sp);

/// Closed form of [G, G_A]: 2i(b^dag b - a^dag a - 2 a^dag a b^dag b).
Operator commutator_G_GA_closed_form(const FockSpace& sp);

struct WessZuminoOperators {
  Operator q;       // (b^dag + g b^dag b) a
  Operator q_dag;
  Operator g;       // q + q^dag
  Operator h;       // matrix square of g
};
WessZuminoOperators build_wz(const FockSpace& sp, double coupling);

struct WzCompareReport {
  double discrepancy;         // literal quartic polynomial vs matrix square
  double hermiticity_defect;  // of the literal polynomial
};
/// Builds H0 + g H0 (b + b^dag) - g b^dag + g^2 (b^dag b)^2 literally and
/// compares against the matrix square on the safe subspace. Report only.
WzCompareReport wz_closed_form_compare(const FockSpace& sp, double coupling,
                                       int margin);

struct CliffordOperators {
  Operator g;              // theta a b^dag + b a^dag theta_bar
  Operator h_closed_form;  // N_b (1-N_f)(1-N_g) + N_f N_g (1+N_b)
};
/// Requires the space extended by the auxiliary fermionic slot.
CliffordOperators build_clifford(const FockSpace& extended);

/// The phase variant -i(theta a b^dag + theta_bar a^dag b); in the sign-string
/// matrix model it comes out hermitian with the same square as the principal
/// form. Returned so its defects can be recorded.
Operator build_clifford_phase_variant(const FockSpace& extended);

// --- finite flows -----------------------------------------------------------

/// e^{iGs} = cos(sqrt(H) s) + i G sin(sqrt(H) s)/sqrt(H) with H = G^2, the
/// branch at H = 0 continued by s. Exact for any hermitian G.
Operator spectral_unitary(const Operator& g, double s);

inline Operator unitary_Ia(const Operator& g, double s) {
  return spectral_unitary(g, s);
}
inline Operator unitary_III(const Operator& g, double s) {
  return spectral_unitary(g, s);
}

/// U X U^dag under the spectral unitary of g.
Operator heisenberg(const Operator& g, const Operator& x, double s);

/// Four-term closed forms of the evolved annihilators for F = B = 1, k = 1;
/// diagonal functions of the total number multiply from the left.
Operator closed_form_a_s(const FockSpace& sp, double s);
Operator closed_form_b_s(const FockSpace& sp, double s);

// --- the odd derivation and its flow ----------------------------------------

/// delta X = {G, X} for odd X, i[G, X] for even X (parity declared by caller).
Operator odd_derivation(const Operator& g, const Operator& x, Parity p);

/// delta(xy) by the parity-twisted product rules:
///   odd*even:  (dx) y + i x (dy)
///   odd*odd:   i (dx) y - i x (dy)
///   even*even: (dx) y + x (dy)
///   even*odd:  -i (dx) y + x (dy)
Operator twisted_leibniz(const Operator& x, Parity px, const Operator& dx,
                         const Operator& y, Parity py, const Operator& dy);

struct OddFlowPair {
  Operator a;
  Operator b;
};

/// Linear (non-automorphic) flow a(s) = a cos(s sqrt(i)) + (b/sqrt(i)) sin(s sqrt(i)),
/// b(s) = b cos(s sqrt(i)) - a sqrt(i) sin(s sqrt(i)), sqrt(i) = e^{i pi/4}.
OddFlowPair odd_flow_generators(const FockSpace& sp, double s);

/// Runge-Kutta integration of a' = b(s), b' = -i a(s) from the generators;
/// converges to odd_flow_generators.
OddFlowPair odd_flow_rk4(const FockSpace& sp, double s, int steps);

/// Defect of the conserved combination a(s)/sqrt(i) + b(s) =
/// e^{s/sqrt(i)} (a/sqrt(i) + b).
double odd_flow_invariant_defect(const FockSpace& sp, double s);

// --- consistency conditions ---------------------------------------------

struct ConsistencyReport {
  double alpha;  // d/ds {a(s), a(s)^dag} at s = 0
  double beta;   // d/ds [b(s), b(s)^dag]
  double gamma;  // d/ds [a(s), b(s)]
  std::optional<double> theta_alpha;  // mixed condition with theta held fixed
};

/// Defect norms of the derivative-of-relations at s = 0, projected one level
/// below the cutoff. Ia: all zero. Ib: alpha fails. II: all zero including
/// the theta condition. III: alpha/beta/gamma zero but the frozen-theta
/// condition fails.
ConsistencyReport consistency_conditions(FlowKind kind, const ModeConfig& base);

// --- transition tables -------------------------------------------------

struct TransitionRow {
  std::int64_t from;
  std::int64_t to;
  Complex amplitude;
  double probability;
};

/// Nonnegligible amplitudes of column `from` of a unitary.
std::vector<TransitionRow> transition_table(const Operator& u,
                                            std::int64_t from,
                                            double threshold = 1e-12);

}  // namespace superfock
