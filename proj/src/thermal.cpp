#include "superfock/thermal.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>
#include <string>

#include "superfock/algebra.hpp"
#include "superfock/dynamics.hpp"

namespace superfock {

namespace {

constexpr double kMachineFloor = 1e-13;

ModeConfig thermal_config(const ThermalParams& p) {
  ModeConfig c;
  c.n_fermion = 1;
  c.n_boson = 1;
  c.cutoff = p.cutoff;
  return c;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error(what);
}

}  // namespace

void ThermalParams::validate() const {
  if (!(beta > 0.0))
    throw ConfigError("thermal: beta must be positive (x = e^beta > 1)");
  if (cutoff < 2) throw ConfigError("thermal: cutoff too small");
}

DensityMatrix gibbs(const Operator& h, double beta) {
  if (!(beta > 0.0))
    throw ConfigError("gibbs: beta must be positive");
  if (hermiticity_defect(h) > 1e-10)
    throw std::invalid_argument("gibbs: hamiltonian is not hermitian");
  Eigen::SelfAdjointEigenSolver<Operator> es(h);
  const Eigen::VectorXd lam = es.eigenvalues();
  const double ground = lam.minCoeff();
  Eigen::VectorXd w(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    w(i) = std::exp(-beta * (lam(i) - ground));
  w /= w.sum();
  DensityMatrix rho{es.eigenvectors() * w.cast<Complex>().asDiagonal() *
                    es.eigenvectors().adjoint()};
  return rho;
}

Complex thermal_expectation(const DensityMatrix& rho, const Operator& x) {
  return (rho.rho * x).trace();
}

double tail_bound(const ThermalParams& p) {
  const double q = 1.0 / p.x();
  return (p.cutoff + 1) * std::pow(q, p.cutoff) / ((1.0 - q) * (1.0 - q));
}

double thermal_tolerance(const ThermalParams& p) {
  return tail_bound(p) + kMachineFloor;
}

OccupationReport mode_occupation_check(const ThermalParams& p) {
  p.validate();
  FockSpace sp(thermal_config(p));
  const DensityMatrix rho = gibbs(sp.total_number(), p.beta);
  const Operator a = sp.fermion_annihilator(0);
  const Operator b = sp.boson_annihilator(0);

  OccupationReport rep;
  rep.x = p.x();
  rep.fermion_occ = thermal_expectation(rho, dagger(a) * a).real();
  rep.fermion_hole = thermal_expectation(rho, a * dagger(a)).real();
  rep.boson_occ = thermal_expectation(rho, dagger(b) * b).real();
  rep.boson_hole = thermal_expectation(rho, b * dagger(b)).real();
  rep.tolerance = thermal_tolerance(p);

  const double x = rep.x;
  rep.fermion_defect = std::max(std::abs(rep.fermion_occ - 1.0 / (1.0 + x)),
                                std::abs(rep.fermion_hole - x / (1.0 + x)));
  rep.boson_defect = std::max(std::abs(rep.boson_occ - 1.0 / (x - 1.0)),
                              std::abs(rep.boson_hole - x / (x - 1.0)));
  rep.pair_sum_defect =
      std::max(std::abs(rep.fermion_hole + rep.fermion_occ - 1.0),
               std::abs(rep.boson_hole - rep.boson_occ - 1.0));

  // the fermion factor of the state is untouched by the boson cutoff
  require(rep.fermion_defect < 1e-12,
          "occupation check: fermion side deviates from closed form");
  require(rep.boson_defect < rep.tolerance,
          "occupation check: boson side exceeds the truncation tail");
  require(rep.pair_sum_defect < rep.tolerance,
          "occupation check: canonical pair sums violated");
  return rep;
}

InvarianceReport ia_invariance(const ThermalParams& p, double s) {
  p.validate();
  FockSpace sp(thermal_config(p));
  const DensityMatrix rho = gibbs(sp.total_number(), p.beta);
  const Operator g = build_G(sp);
  const Operator nf = sp.fermion_number(0);

  InvarianceReport rep;
  rep.tolerance = thermal_tolerance(p);
  rep.evolved_occupation =
      thermal_expectation(rho, heisenberg(g, nf, s)).real();
  rep.invariance_defect =
      std::abs(rep.evolved_occupation - 1.0 / (1.0 + p.x()));
  rep.number_commutator = std::abs(thermal_expectation(rho, comm(nf, g)));
  rep.miracle_defect = std::abs(thermal_expectation(rho, g * comm(nf, g)));
  rep.partner_defect =
      std::abs(thermal_expectation(rho, comm(g, build_GA(sp))));

  require(rep.invariance_defect < rep.tolerance,
          "ia invariance: evolved occupation moved off its closed form");
  require(rep.number_commutator < 1e-12,
          "ia invariance: <[a+a, G]> must vanish");
  require(rep.miracle_defect < 1e-12,
          "ia invariance: <G [a+a, G]> must vanish");
  require(rep.partner_defect < 1e-12,
          "ia invariance: <[G, G_A]> must vanish");
  return rep;
}

double ib_drift(const ThermalParams& p, double s) {
  p.validate();
  FockSpace sp(thermal_config(p));
  const DensityMatrix rho = gibbs(sp.total_number(), p.beta);
  const Operator g = build_G(sp);
  const Operator a_dag = dagger(sp.fermion_annihilator(0));
  const Operator b = sp.boson_annihilator(0);

  // Q = a+b drifts by its twisted product derivative, which reproduces the
  // Hamiltonian (exactly so away from the top boson level).
  const Operator q = a_dag * b;
  const Operator dq = twisted_leibniz(
      a_dag, Parity::Odd, odd_derivation(g, a_dag, Parity::Odd), b,
      Parity::Even, odd_derivation(g, b, Parity::Even));

  const double drift = (thermal_expectation(rho, q).real() +
                        s * thermal_expectation(rho, dq).real());
  const double x = p.x();
  const double target = s * (1.0 / (1.0 + x) + 1.0 / (x - 1.0));
  require(std::abs(drift - target) <=
              std::abs(s) * tail_bound(p) + kMachineFloor,
          "ib drift: drift differs from s times the thermal energy");
  if (s != 0.0)
    require(drift * s > 0.0, "ib drift: drift must carry the sign of s");
  return drift;
}

Operator modular_shift(const Operator& h, double beta, const Operator& x) {
  if (hermiticity_defect(h) > 1e-10)
    throw std::invalid_argument("modular_shift: hamiltonian not hermitian");
  Eigen::SelfAdjointEigenSolver<Operator> es(h);
  const Eigen::VectorXd lam = es.eigenvalues();
  Operator m = es.eigenvectors().adjoint() * x * es.eigenvectors();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      m(r, c) *= std::exp(-beta * (lam(r) - lam(c)));
  return es.eigenvectors() * m * es.eigenvectors().adjoint();
}

double kms_defect(const Operator& h, double beta, const Operator& x,
                  const Operator& y) {
  const DensityMatrix rho = gibbs(h, beta);
  const Complex lhs = thermal_expectation(rho, x * y);
  const Complex rhs = thermal_expectation(rho, y * modular_shift(h, beta, x));
  return std::abs(lhs - rhs);
}

}  // namespace superfock
