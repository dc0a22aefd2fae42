#pragma once

#include <functional>

#include "superfock/types.hpp"

namespace superfock {

inline Operator comm(const Operator& x, const Operator& y) {
  return x * y - y * x;
}

inline Operator anticomm(const Operator& x, const Operator& y) {
  return x * y + y * x;
}

inline Operator dagger(const Operator& x) { return x.adjoint(); }

/// Largest absolute entry; the default defect measure.
double max_abs(const Operator& x);

/// Spectral norm (largest singular value).
double op_norm(const Operator& x);

double hermiticity_defect(const Operator& x);

/// max |(P x P)_ij|: defect of x restricted to the range of projector p.
double projected_defect(const Operator& x, const Operator& p);

/// exp(i s h) for hermitian h, via eigendecomposition.
Operator exp_i_hermitian(const Operator& h, double s);

/// f applied to a hermitian operator through its spectral decomposition.
Operator hermitian_function(const Operator& h,
                            const std::function<double(double)>& f);

/// sin(sqrt(lambda) s)/sqrt(lambda), continued by s at lambda = 0.
/// Negative eigenvalues within roundoff of zero are clamped.
double sinc_sqrt(double lambda, double s);

double cos_sqrt(double lambda, double s);

/// Residual of the best least-squares fit y ~ c*x (Frobenius), scaled by
/// |y|; 0 iff y is an exact scalar multiple of x.
double proportionality_defect(const Operator& y, const Operator& x);

}  // namespace superfock
