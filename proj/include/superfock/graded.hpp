#pragma once

#include "superfock/fock_space.hpp"
#include "superfock/types.hpp"

namespace superfock {

// Element A + theta*B of the Grassmann extension, stored as (body, soul).
// theta^2 = 0 is structural: no product ever multiplies two souls.
struct GradedElement {
  Operator body;
  Operator soul;
};

class GradedAlgebra {
 public:
  explicit GradedAlgebra(const FockSpace& space);

  // kappa(X) = P X P with P = (-1)^{N_f}; flips the sign of odd elements.
  Operator twist(const Operator& x) const;

  GradedElement unit() const;
  GradedElement embed(const Operator& body) const;   // A + theta*0
  GradedElement soul_only(const Operator& b) const;  // 0 + theta*B

  // (A + tB)(C + tD) = AC + t(kappa(A)D + BC), using tX = kappa(X)t, t^2 = 0.
  GradedElement mul(const GradedElement& x, const GradedElement& y) const;

  // (A + tB)* = A* + t*kappa(B*)  (theta is real: t* = t).
  GradedElement star(const GradedElement& x) const;

  // e^{i t G s} = 1 + t s G for odd hermitian g (nilpotency truncates the series).
  GradedElement unitary(const Operator& g, double s) const;

  // U x U*; for an exchange generator this sends (a,0) -> (a, sb), (b,0) -> (b, -sa).
  GradedElement flow(const GradedElement& x, const Operator& g, double s) const;

  std::int64_t dim() const { return parity_.rows(); }

 private:
  Operator parity_;
  Operator identity_;
};

// Quotient map onto the Hilbert-space representation, which kills the soul ideal.
inline const Operator& body_projection(const GradedElement& x) { return x.body; }

// Matrix model of theta on a space with an appended auxiliary fermionic mode:
// the sign-string annihilator of the last fermionic slot. Satisfies t^2 = 0,
// {t, a_i} = 0, [t, b_j] = 0 exactly, but adjoint(t)*t != 0, so it does not
// represent the relation theta_bar*theta = 0.
Operator theta_matrix(const FockSpace& extended_space);

// Lift an operator on `base` to base-with-one-extra-fermionic-slot, acting
// trivially on the appended slot.
Operator embed_with_aux(const FockSpace& base, const FockSpace& extended,
                        const Operator& x);

}  // namespace superfock
