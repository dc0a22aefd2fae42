#include "superfock/susino.hpp"

#include <cmath>
#include <stdexcept>

#include "superfock/algebra.hpp"
#include "superfock/dynamics.hpp"

namespace superfock {

namespace {

void require_susino_space(const FockSpace& sp) {
  const ModeConfig& c = sp.config();
  if (c.n_fermion != 1 || c.n_boson != 1)
    throw ConfigError("susino operators need exactly one fermion/boson pair");
  if (c.coupling(0) != 1.0)
    throw ConfigError("susino operators are defined for unit coupling");
}

// Frobenius least-squares coefficient c with y ~ c x.
Complex fit_coefficient(const Operator& y, const Operator& x) {
  const Complex num = (x.adjoint() * y).trace();
  const Complex den = (x.adjoint() * x).trace();
  return num / den;
}

// sqrt(k/2) (|1, k-1> - sign |0, k>): block-k generator eigenvector with
// eigenvalue -sign sqrt(k), scaled so that <v_k|v_k> = k.
StateVector block_vector(const FockSpace& sp, int k, int sign) {
  StateVector v = StateVector::Zero(sp.dim());
  const double w = std::sqrt(0.5 * k);
  v(sp.index_of(BasisState{{1}, {k - 1}})) = w;
  v(sp.index_of(BasisState{{0}, {k}})) = -static_cast<double>(sign) * w;
  return v;
}

}  // namespace

Operator build_p0(const FockSpace& sp) {
  require_susino_space(sp);
  Operator p = Operator::Zero(sp.dim(), sp.dim());
  p(sp.vacuum_index(), sp.vacuum_index()) = 1.0;
  return p;
}

SusinoPair build_susinos(const FockSpace& sp) {
  const Operator p0 = build_p0(sp);
  const Operator a = sp.fermion_annihilator(0);
  const Operator b = sp.boson_annihilator(0);
  return SusinoPair{p0 * (a - b), p0 * (a + b), p0};
}

StatisticsReport statistics_report(const FockSpace& sp,
                                   const SusinoPair& pair) {
  const Operator one = sp.identity();
  const Operator& ap = pair.a_plus;
  const Operator& am = pair.a_minus;

  StatisticsReport rep;
  rep.commutator_defect = op_norm(comm(ap, dagger(ap)) - one);
  rep.anticommutator_defect = op_norm(anticomm(ap, dagger(ap)) - one);
  rep.square_norm = std::max(max_abs(ap * ap), max_abs(am * am));

  const Operator exciton = dagger(am) * ap;
  const double s = 0.9;
  const Operator flowed = heisenberg(build_G(sp), exciton, s);
  rep.exciton_phase_defect =
      max_abs(flowed - std::exp(Complex(0.0, 2.0 * s)) * exciton);
  rep.literal_exciton_norm = max_abs(ap * dagger(am));

  if (rep.commutator_defect <= 0.5 || rep.anticommutator_defect <= 0.5)
    throw std::runtime_error(
        "susino statistics witness failed: the pair looks bosonic or "
        "fermionic");
  return rep;
}

Operator build_a_mn(const FockSpace& sp, int m, int n, int sign) {
  require_susino_space(sp);
  if (m < 1 || n < 1) throw ConfigError("block labels must be >= 1");
  if (sign != 1 && sign != -1) throw ConfigError("sign must be +1 or -1");
  if (sp.config().cutoff < m + n + 2)
    throw ConfigError("cutoff too small for the requested blocks");
  return block_vector(sp, m, sign) * block_vector(sp, n, sign).adjoint();
}

std::pair<Operator, Operator> ga_oscillation(const SusinoPair& pair,
                                             double r) {
  const double c = std::cos(r), s = std::sin(r);
  return {pair.a_plus * c + pair.a_minus * s,
          -pair.a_plus * s + pair.a_minus * c};
}

PerturbedReport perturbed_evolution(const FockSpace& sp, double alpha,
                                    double t) {
  require_susino_space(sp);
  const Operator g = build_G(sp);
  const Operator one = sp.identity();
  const Operator h_alpha = g * g + alpha * g + (alpha * alpha / 4.0) * one;
  const Operator shifted = g + (alpha / 2.0) * one;

  PerturbedReport rep;
  rep.identity_defect = max_abs(h_alpha - shifted * shifted);

  const Operator u = exp_i_hermitian(h_alpha, t);
  const SusinoPair pair = build_susinos(sp);
  const auto evolve = [&](const Operator& x) {
    return Operator(u * x * u.adjoint());
  };

  const Operator ap_t = evolve(pair.a_plus);
  const Operator am_t = evolve(pair.a_minus);
  rep.plus_phase = fit_coefficient(ap_t, pair.a_plus);
  rep.minus_phase = fit_coefficient(am_t, pair.a_minus);
  rep.plus_defect = proportionality_defect(ap_t, pair.a_plus);
  rep.minus_defect = proportionality_defect(am_t, pair.a_minus);

  const Operator a = sp.fermion_annihilator(0);
  const Operator b = sp.boson_annihilator(0);
  rep.a_defect = proportionality_defect(evolve(a), a);
  rep.b_defect = proportionality_defect(evolve(b), b);
  return rep;
}

}  // namespace superfock
