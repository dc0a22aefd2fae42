#include "superfock/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "superfock/algebra.hpp"

namespace superfock {

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

double binary_entropy(double p) {
  p = std::clamp(p, 0.0, 1.0);
  return -xlogx(p) - xlogx(1.0 - p);
}

void check_mode_list(const std::vector<int>& modes, int count,
                     const char* what) {
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (modes[i] < 0 || modes[i] >= count)
      throw ConfigError(std::string(what) + " mode index out of range");
    for (std::size_t j = i + 1; j < modes.size(); ++j)
      if (modes[i] == modes[j])
        throw ConfigError(std::string(what) + " mode listed twice");
  }
}

void require_two_pairs(const FockSpace& sp, const TwoModeParams& p) {
  const ModeConfig& c = sp.config();
  if (c.n_fermion != 2 || c.n_boson != 2)
    throw ConfigError("two-mode analysis needs exactly two pairs");
  if (c.coupling(0) != 1.0 || std::abs(c.coupling(1) - p.k) > 1e-12)
    throw ConfigError("space couplings must be (1, k)");
  if (p.n_b1 < 0 || p.n_b2 < 0 || p.n_b1 + 1 > c.cutoff ||
      p.n_b2 + 1 > c.cutoff)
    throw ConfigError("base occupations violate the cutoff");
}

}  // namespace

DensityMatrix reduce(const FockSpace& sp, const StateVector& state,
                     const Subsystem& keep) {
  if (state.size() != sp.dim())
    throw ConfigError("state dimension does not match the space");
  if (std::abs(state.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("reduce needs a normalized state");
  const ModeConfig& c = sp.config();
  check_mode_list(keep.fermion_modes, c.n_fermion, "fermion");
  check_mode_list(keep.boson_modes, c.n_boson, "boson");

  std::vector<bool> fkeep(c.n_fermion, false), bkeep(c.n_boson, false);
  for (int m : keep.fermion_modes) fkeep[m] = true;
  for (int m : keep.boson_modes) bkeep[m] = true;

  const std::int64_t nb = c.cutoff + 1;
  std::int64_t kept_dim = 1;
  for (std::size_t i = 0; i < keep.fermion_modes.size(); ++i) kept_dim *= 2;
  for (std::size_t i = 0; i < keep.boson_modes.size(); ++i) kept_dim *= nb;

  // kept key (listed order) and traced key (native order) per basis vector
  std::vector<std::int64_t> kept(sp.dim()), traced(sp.dim());
  for (std::int64_t i = 0; i < sp.dim(); ++i) {
    std::int64_t kk = 0;
    for (int m : keep.fermion_modes) kk = kk * 2 + sp.fermion_occ(i, m);
    for (int m : keep.boson_modes) kk = kk * nb + sp.boson_occ(i, m);
    std::int64_t tk = 0;
    for (int m = 0; m < c.n_fermion; ++m)
      if (!fkeep[m]) tk = tk * 2 + sp.fermion_occ(i, m);
    for (int m = 0; m < c.n_boson; ++m)
      if (!bkeep[m]) tk = tk * nb + sp.boson_occ(i, m);
    kept[i] = kk;
    traced[i] = tk;
  }

  std::map<std::int64_t, std::vector<std::int64_t>> buckets;
  for (std::int64_t i = 0; i < sp.dim(); ++i)
    if (state(i) != Complex(0.0, 0.0)) buckets[traced[i]].push_back(i);

  Operator rho = Operator::Zero(kept_dim, kept_dim);
  for (const auto& [key, members] : buckets) {
    (void)key;
    for (std::int64_t i : members)
      for (std::int64_t j : members)
        rho(kept[i], kept[j]) += state(i) * std::conj(state(j));
  }
  return DensityMatrix{std::move(rho)};
}

double entropy(const DensityMatrix& dm) {
  if (hermiticity_defect(dm.rho) > 1e-10 ||
      std::abs(dm.rho.trace() - Complex(1.0)) > 1e-10)
    throw std::invalid_argument("not a density matrix");
  Eigen::SelfAdjointEigenSolver<Operator> es(dm.rho,
                                             Eigen::EigenvaluesOnly);
  double e = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double lam = es.eigenvalues()(i);
    if (lam < -1e-12) throw std::invalid_argument("negative eigenvalue");
    e -= xlogx(std::max(lam, 0.0));
  }
  return e;
}

double purity(const DensityMatrix& dm) {
  return (dm.rho * dm.rho).trace().real();
}

std::pair<StateVector, StateVector> single_mode_eigenvectors(
    const FockSpace& sp, int n) {
  const ModeConfig& c = sp.config();
  if (c.n_fermion != 1 || c.n_boson != 1)
    throw ConfigError("excitation pairs need a single fermion/boson pair");
  if (n < 1 || n > c.cutoff)
    throw ConfigError("excitation number out of range");
  const double w = 1.0 / std::sqrt(2.0);
  StateVector plus = StateVector::Zero(sp.dim());
  StateVector minus = StateVector::Zero(sp.dim());
  const std::int64_t upper = sp.index_of(BasisState{{1}, {n - 1}});
  const std::int64_t lower = sp.index_of(BasisState{{0}, {n}});
  plus(upper) = w;
  plus(lower) = w;
  minus(upper) = w;
  minus(lower) = -w;
  return {plus, minus};
}

double TwoModeParams::kbar() const {
  return k * std::sqrt((n_b2 + 1.0) / (n_b1 + 1.0));
}

void TwoModeParams::validate_weights() const {
  const double s = std::norm(weight_a) + std::norm(weight_b);
  if (std::abs(s - 1.0) > 1e-12)
    throw std::invalid_argument("superposition weights must be normalized");
}

TwoModeParams mixing_params(double kbar, double phi, WeightFamily family) {
  if (kbar < 0.0) throw ConfigError("weight ratio must be nonnegative");
  TwoModeParams p;
  p.n_b1 = 0;
  p.n_b2 = 0;
  p.k = kbar;  // zero base occupations make the ratio equal the coupling
  const double s = std::sin(phi), c = std::cos(phi);
  p.weight_a = family == WeightFamily::RealMix ? Complex(s, 0.0)
                                               : Complex(0.0, s);
  p.weight_b = Complex(c, 0.0);
  return p;
}

TwoModeBasis two_mode_eigenbasis(const FockSpace& sp, const TwoModeParams& p,
                                 int sign) {
  require_two_pairs(sp, p);
  if (sign != 1 && sign != -1) throw ConfigError("sign must be +1 or -1");

  TwoModeBasis out;
  const int n1 = p.n_b1, n2 = p.n_b2;
  const std::int64_t idx[4] = {
      sp.index_of(BasisState{{1, 1}, {n1, n2}}),
      sp.index_of(BasisState{{1, 0}, {n1, n2 + 1}}),
      sp.index_of(BasisState{{0, 1}, {n1 + 1, n2}}),
      sp.index_of(BasisState{{0, 0}, {n1 + 1, n2 + 1}})};
  for (int i = 0; i < 4; ++i) {
    out.psi[i] = StateVector::Zero(sp.dim());
    out.psi[i](idx[i]) = 1.0;
  }

  const double kb = p.kbar();
  const double w = std::sqrt(1.0 + kb * kb);
  const double norm = std::sqrt(2.0 * (1.0 + kb * kb));
  out.phi1 = (sign * w * out.psi[0] - kb * out.psi[1] + out.psi[2]) / norm;
  out.phi2 = (out.psi[1] + kb * out.psi[2] + sign * w * out.psi[3]) / norm;
  out.block_energy = (n1 + 1.0) + p.k * p.k * (n2 + 1.0);
  return out;
}

std::array<double, 4> density_eigenvalues_closed_form(const TwoModeParams& p) {
  p.validate_weights();
  const double kb = p.kbar();
  const double denom = 2.0 * (1.0 + kb * kb);
  const Complex a = p.weight_a, b = p.weight_b;
  return {std::norm(a) / 2.0, std::norm(b - kb * a) / denom,
          std::norm(a + kb * b) / denom, std::norm(b) / 2.0};
}

double two_mode_entropy_closed_form(const TwoModeParams& p) {
  double e = 0.0;
  for (double lam : density_eigenvalues_closed_form(p)) e -= xlogx(lam);
  return e;
}

std::pair<double, double> per_fermion_entropy_closed_form(
    const TwoModeParams& p) {
  p.validate_weights();
  const double kb = p.kbar();
  const double w2 = 1.0 + kb * kb;
  const Complex a = p.weight_a, b = p.weight_b;
  const double p_unit = (std::norm(a) * w2 + std::norm(b - kb * a)) / (2 * w2);
  const double p_kpair = (std::norm(a) * w2 + std::norm(a + kb * b)) / (2 * w2);
  return {binary_entropy(p_unit), binary_entropy(p_kpair)};
}

namespace {

ModeConfig two_pair_config(double k) {
  ModeConfig c;
  c.n_fermion = 2;
  c.n_boson = 2;
  c.cutoff = 2;
  c.couplings = {1.0, k};
  return c;
}

}  // namespace

SurfaceTable entanglement_surface(const std::vector<double>& kbars,
                                  const std::vector<double>& phis,
                                  WeightFamily family) {
  SurfaceTable table;
  table.crosscheck_defect = 0.0;
  const Subsystem both_fermions{{0, 1}, {}};
  for (double kb : kbars) {
    FockSpace sp(two_pair_config(kb));
    TwoModeBasis basis =
        two_mode_eigenbasis(sp, mixing_params(kb, 0.0, family), +1);
    for (double phi : phis) {
      const TwoModeParams p = mixing_params(kb, phi, family);
      const double closed = two_mode_entropy_closed_form(p);
      const StateVector psi =
          p.weight_a * basis.phi1 + p.weight_b * basis.phi2;
      const double brute = entropy(reduce(sp, psi, both_fermions));
      table.crosscheck_defect =
          std::max(table.crosscheck_defect, std::abs(closed - brute));
      table.rows.push_back(SurfaceRow{kb, phi, closed});
    }
  }
  return table;
}

PerFermionTable per_fermion_entropy(const std::vector<double>& kbars,
                                    const std::vector<double>& phis) {
  PerFermionTable table;
  table.crosscheck_defect = 0.0;
  const Subsystem first{{0}, {}}, second{{1}, {}};
  for (double kb : kbars) {
    FockSpace sp(two_pair_config(kb));
    TwoModeBasis basis =
        two_mode_eigenbasis(sp, mixing_params(kb, 0.0, WeightFamily::RealMix),
                            +1);
    for (double phi : phis) {
      const TwoModeParams p = mixing_params(kb, phi, WeightFamily::RealMix);
      const auto [e1, e2] = per_fermion_entropy_closed_form(p);
      const StateVector psi =
          p.weight_a * basis.phi1 + p.weight_b * basis.phi2;
      const double b1 = entropy(reduce(sp, psi, first));
      const double b2 = entropy(reduce(sp, psi, second));
      table.crosscheck_defect = std::max(
          {table.crosscheck_defect, std::abs(e1 - b1), std::abs(e2 - b2)});
      table.rows.push_back(PerFermionRow{kb, phi, e1, e2});
    }
  }
  return table;
}

namespace {

// x y ln(x^2/y^2) continued by 0 where a factor vanishes.
double xy_log_ratio(double x, double y) {
  if (x == 0.0 || y == 0.0) return 0.0;
  return x * y * (std::log(x * x) - std::log(y * y));
}

}  // namespace

double extremal_equation(double kbar, double phi) {
  const double s = std::sin(phi), c = std::cos(phi);
  const double p = c - kbar * s, q = s + kbar * c;
  return xy_log_ratio(p, q) / (1.0 + kbar * kbar) - xy_log_ratio(s, c);
}

std::vector<double> extremum_solve(double kbar) {
  if (kbar < 0.0) throw ConfigError("weight ratio must be nonnegative");
  constexpr int kIntervals = 4096;
  constexpr double kPi = std::numbers::pi;
  std::vector<double> roots;
  double prev_phi = kPi / kIntervals;
  double prev_f = extremal_equation(kbar, prev_phi);
  for (int j = 2; j < kIntervals; ++j) {
    const double phi = j * kPi / kIntervals;
    const double f = extremal_equation(kbar, phi);
    if (prev_f == 0.0) {
      roots.push_back(prev_phi);
    } else if (f != 0.0 && std::signbit(f) != std::signbit(prev_f)) {
      double lo = prev_phi, hi = phi, flo = prev_f;
      for (int it = 0; it < 90; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = extremal_equation(kbar, mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if (std::signbit(fm) == std::signbit(flo)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_phi = phi;
    prev_f = f;
  }
  return roots;
}

}  // namespace superfock
