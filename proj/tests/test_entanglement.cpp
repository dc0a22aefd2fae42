#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include "superfock/algebra.hpp"
#include "superfock/dynamics.hpp"
#include "superfock/entanglement.hpp"

using namespace superfock;

namespace {

constexpr double kPi = std::numbers::pi;
const double kLn2 = std::log(2.0);

ModeConfig cfg(int F, int B, int cutoff, std::vector<double> k = {}) {
  ModeConfig c;
  c.n_fermion = F;
  c.n_boson = B;
  c.cutoff = cutoff;
  c.couplings = std::move(k);
  return c;
}

std::vector<double> phi_grid() {
  std::vector<double> g;
  for (int j = 0; j <= 256; ++j) g.push_back(j * kPi / 256.0);
  return g;
}

const std::vector<double> kbar_grid{0.0, 0.25, 0.5, 0.75, 1.0};

}  // namespace

TEST_CASE("partial trace basics") {
  FockSpace sp(cfg(1, 1, 3));

  // product state reduces to a pure state on either side
  StateVector prod = StateVector::Zero(sp.dim());
  prod(sp.index_of(BasisState{{1}, {2}})) = 1.0;
  const DensityMatrix rf = reduce(sp, prod, Subsystem{{0}, {}});
  const DensityMatrix rb = reduce(sp, prod, Subsystem{{}, {0}});
  CHECK_LT(std::abs(purity(rf) - 1.0), 1e-14);
  CHECK_LT(entropy(rf), 1e-14);
  CHECK_LT(entropy(rb), 1e-14);
  CHECK_LT(std::abs(rf.rho.trace() - Complex(1.0)), 1e-14);

  // the balanced excitation pair is the tracial state on the fermion side
  StateVector bell = StateVector::Zero(sp.dim());
  bell(sp.index_of(BasisState{{1}, {0}})) = 1.0 / std::sqrt(2.0);
  bell(sp.index_of(BasisState{{0}, {1}})) = 1.0 / std::sqrt(2.0);
  const DensityMatrix rho = reduce(sp, bell, Subsystem{{0}, {}});
  CHECK_LT(max_abs(rho.rho - 0.5 * Operator::Identity(2, 2)), 1e-14);
  CHECK_LT(std::abs(entropy(rho) - kLn2), 1e-12);
  CHECK_LT(purity(rho), 1.0 + 1e-14);

  CHECK_THROWS_AS(reduce(sp, 2.0 * bell, Subsystem{{0}, {}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(reduce(sp, bell, Subsystem{{1}, {}}), ConfigError);
  CHECK_THROWS_AS(reduce(sp, bell, Subsystem{{0, 0}, {}}), ConfigError);
}

TEST_CASE("entropy of explicit spectra") {
  DensityMatrix pure{Operator::Zero(3, 3)};
  pure.rho(1, 1) = 1.0;
  CHECK_EQ(entropy(pure), 0.0);

  DensityMatrix half{0.5 * Operator::Identity(2, 2)};
  CHECK_LT(std::abs(entropy(half) - kLn2), 1e-14);

  DensityMatrix mixed{Operator::Zero(4, 4)};
  mixed.rho.diagonal() << 0.5, 0.25, 0.25, 0.0;
  CHECK_LT(std::abs(entropy(mixed) - 1.5 * kLn2), 1e-14);
  CHECK_LE(entropy(mixed), std::log(4.0) + 1e-12);  // bounded by ln(dim)

  DensityMatrix bad{Operator::Identity(2, 2)};
  CHECK_THROWS_AS(entropy(bad), std::invalid_argument);
}

TEST_CASE("excitation pairs are maximally entangled") {
  FockSpace sp(cfg(1, 1, 9));
  const Operator g = build_G(sp);
  const Subsystem fermion{{0}, {}}, boson{{}, {0}};

  for (int n = 1; n <= 8; ++n) {
    auto [plus, minus] = single_mode_eigenvectors(sp, n);
    const double root = std::sqrt(static_cast<double>(n));
    CHECK_LT((g * plus - root * plus).norm(), 1e-12);
    CHECK_LT((g * minus + root * minus).norm(), 1e-12);

    // also eigenvectors of the finite transformation
    const Operator u = spectral_unitary(g, 0.7);
    CHECK_LT((u * plus - std::exp(Complex(0, 0.7 * root)) * plus).norm(),
             1e-10);

    for (const StateVector& v : {plus, minus}) {
      const double ef = entropy(reduce(sp, v, fermion));
      const double eb = entropy(reduce(sp, v, boson));
      CHECK_LT(std::abs(ef - kLn2), 1e-10);
      CHECK_LT(std::abs(ef - eb), 1e-10);  // no side is preferred
    }
  }

  // the vacuum is the n = 0 exception: unentangled
  const StateVector vac = sp.basis_vector(sp.vacuum_index());
  CHECK_LT(entropy(reduce(sp, vac, fermion)), 1e-14);

  CHECK_THROWS_AS(single_mode_eigenvectors(sp, 0), ConfigError);
  CHECK_THROWS_AS(single_mode_eigenvectors(sp, 10), ConfigError);
}

TEST_CASE("partner supercharge eigenvectors carry the same entanglement") {
  FockSpace sp(cfg(1, 1, 6));
  const Operator ga = build_GA(sp);
  const Operator nf = sp.fermion_number(0);
  const Operator v = exp_i_hermitian(nf, kPi / 2.0);
  const Subsystem fermion{{0}, {}};

  for (int n = 1; n <= 4; ++n) {
    auto [plus, minus] = single_mode_eigenvectors(sp, n);
    const double root = std::sqrt(static_cast<double>(n));
    const StateVector rotated = v * plus;
    CHECK_LT((ga * rotated - root * rotated).norm(), 1e-12);
    CHECK_LT(std::abs(entropy(reduce(sp, rotated, fermion)) - kLn2), 1e-10);
    const StateVector rotated_minus = v * minus;
    CHECK_LT((ga * rotated_minus + root * rotated_minus).norm(), 1e-12);
  }
}

TEST_CASE("two-pair eigenvalue block") {
  const double k = 0.7;
  FockSpace sp(cfg(2, 2, 4, {1.0, k}));
  TwoModeParams p;
  p.n_b1 = 1;
  p.n_b2 = 2;
  p.k = k;

  const Operator g = build_G(sp);
  for (int sign : {+1, -1}) {
    const TwoModeBasis basis = two_mode_eigenbasis(sp, p, sign);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        CHECK_LT(std::abs(basis.psi[i].dot(basis.psi[j]) -
                          Complex(i == j ? 1.0 : 0.0)),
                 1e-14);

    const double lambda = sign * std::sqrt(basis.block_energy);
    CHECK_LT((g * basis.phi1 - lambda * basis.phi1).norm(), 1e-10);
    CHECK_LT((g * basis.phi2 - lambda * basis.phi2).norm(), 1e-10);
    CHECK_LT(std::abs(basis.phi1.norm() - 1.0), 1e-12);
    CHECK_LT(std::abs(basis.phi2.norm() - 1.0), 1e-12);
    CHECK_LT(std::abs(basis.phi1.dot(basis.phi2)), 1e-14);
    CHECK_LT(std::abs(basis.block_energy - (1 + 1 + k * k * (1 + 2))), 1e-14);
  }

  // degeneracy pattern of the two-pair Hamiltonian.  Counting raw
  // eigenvalues near 0, 1 or k^2 would also pick up cutoff artifacts
  // (a filled fermion over a top boson level has pair energy zero), so
  // the clean fourfold mixed block is counted and the twofold
  // single-pair eigenvectors are exhibited explicitly.
  FockSpace small(cfg(2, 2, 2, {1.0, k}));
  const Operator h = build_G(small) * build_G(small);
  Eigen::SelfAdjointEigenSolver<Operator> es(h, Eigen::EigenvaluesOnly);
  int mixed_count = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i) - (1.0 + k * k)) < 1e-8) ++mixed_count;
  CHECK_EQ(mixed_count, 4);

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (double sgn : {1.0, -1.0}) {
    StateVector w = StateVector::Zero(small.dim());
    w(small.index_of(BasisState{{1, 0}, {0, 0}})) = inv_sqrt2;
    w(small.index_of(BasisState{{0, 0}, {1, 0}})) = sgn * inv_sqrt2;
    CHECK_LT((h * w - w).norm(), 1e-12);
    CHECK_LT((build_G(small) * w - sgn * w).norm(), 1e-12);
  }

  CHECK_THROWS_AS(two_mode_eigenbasis(sp, p, 2), ConfigError);
  TwoModeParams deep = p;
  deep.n_b2 = 4;
  CHECK_THROWS_AS(two_mode_eigenbasis(sp, deep, 1), ConfigError);
}

TEST_CASE("closed-form reduced spectrum") {
  // balanced phase-locked weights: tracial state, maximal entanglement
  TwoModeParams p = mixing_params(0.6, kPi / 4.0, WeightFamily::PhasedMix);
  const auto lam = density_eigenvalues_closed_form(p);
  for (double l : lam) CHECK_LT(std::abs(l - 0.25), 1e-14);
  CHECK_LT(std::abs(two_mode_entropy_closed_form(p) - 2.0 * kLn2), 1e-12);

  // pure second component at unit ratio
  TwoModeParams q = mixing_params(1.0, 0.0, WeightFamily::RealMix);
  const auto lam_q = density_eigenvalues_closed_form(q);
  CHECK_LT(std::abs(lam_q[0] - 0.0), 1e-14);
  CHECK_LT(std::abs(lam_q[1] - 0.25), 1e-14);
  CHECK_LT(std::abs(lam_q[2] - 0.25), 1e-14);
  CHECK_LT(std::abs(lam_q[3] - 0.5), 1e-14);
  CHECK_LT(std::abs(two_mode_entropy_closed_form(q) - 1.5 * kLn2), 1e-12);

  // decoupled second pair
  TwoModeParams r = mixing_params(0.0, 0.0, WeightFamily::RealMix);
  const auto lam_r = density_eigenvalues_closed_form(r);
  CHECK_LT(std::abs(lam_r[0] - 0.0), 1e-14);
  CHECK_LT(std::abs(lam_r[1] - 0.5), 1e-14);
  CHECK_LT(std::abs(lam_r[2] - 0.0), 1e-14);
  CHECK_LT(std::abs(lam_r[3] - 0.5), 1e-14);
  CHECK_LT(std::abs(two_mode_entropy_closed_form(r) - kLn2), 1e-12);

  TwoModeParams bad = p;
  bad.weight_a *= 2.0;
  CHECK_THROWS_AS(density_eigenvalues_closed_form(bad),
                  std::invalid_argument);
}

TEST_CASE("closed form matches brute-force reduction on random draws") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> kdist(0.2, 1.5);
  std::uniform_int_distribution<int> ndist(0, 2);
  std::uniform_int_distribution<int> sdist(0, 1);

  double worst = 0.0;
  for (int draw = 0; draw < 100; ++draw) {
    TwoModeParams p;
    p.n_b1 = ndist(rng);
    p.n_b2 = ndist(rng);
    p.k = kdist(rng);
    Complex a(unit(rng), unit(rng)), b(unit(rng), unit(rng));
    const double norm = std::sqrt(std::norm(a) + std::norm(b));
    if (norm < 1e-3) continue;
    p.weight_a = a / norm;
    p.weight_b = b / norm;

    FockSpace sp(cfg(2, 2, 4, {1.0, p.k}));
    const TwoModeBasis basis =
        two_mode_eigenbasis(sp, p, sdist(rng) == 0 ? +1 : -1);
    const StateVector psi =
        p.weight_a * basis.phi1 + p.weight_b * basis.phi2;
    const DensityMatrix rho = reduce(sp, psi, Subsystem{{0, 1}, {}});

    Eigen::SelfAdjointEigenSolver<Operator> es(rho.rho,
                                               Eigen::EigenvaluesOnly);
    auto closed = density_eigenvalues_closed_form(p);
    std::sort(closed.begin(), closed.end());
    for (int i = 0; i < 4; ++i)
      worst = std::max(worst, std::abs(es.eigenvalues()(i) - closed[i]));
  }
  CHECK_LT(worst, 1e-10);
  MESSAGE("worst closed-form vs partial-trace eigenvalue gap: ", worst);
}

TEST_CASE("entanglement surface extremes") {
  const SurfaceTable real_table =
      entanglement_surface(kbar_grid, phi_grid(), WeightFamily::RealMix);
  CHECK_LT(real_table.crosscheck_defect, 1e-10);

  std::map<double, std::pair<double, double>> min_max;  // kbar -> (min, max)
  for (const SurfaceRow& row : real_table.rows) {
    auto it = min_max.find(row.kbar);
    if (it == min_max.end())
      min_max[row.kbar] = {row.entropy_value, row.entropy_value};
    else {
      it->second.first = std::min(it->second.first, row.entropy_value);
      it->second.second = std::max(it->second.second, row.entropy_value);
    }
  }
  CHECK_LT(std::abs(min_max[0.0].first - kLn2), 1e-6);
  CHECK_LT(std::abs(min_max[1.0].first - 1.5 * kLn2), 1e-6);
  CHECK_LT(std::abs(min_max[0.0].second - 2.0 * kLn2), 1e-6);
  // the minimum over the mixing angle grows with the weight ratio
  double prev = -1.0;
  for (double kb : kbar_grid) {
    CHECK_GT(min_max[kb].first, prev - 1e-12);
    prev = min_max[kb].first;
  }

  // phase-locked family: maximal entanglement at pi/4 for every ratio
  const SurfaceTable phased =
      entanglement_surface(kbar_grid, phi_grid(), WeightFamily::PhasedMix);
  CHECK_LT(phased.crosscheck_defect, 1e-10);
  std::map<double, double> max_phased;
  for (const SurfaceRow& row : phased.rows)
    max_phased[row.kbar] = std::max(max_phased[row.kbar], row.entropy_value);
  for (double kb : kbar_grid)
    CHECK_LT(std::abs(max_phased[kb] - 2.0 * kLn2), 1e-10);
}

TEST_CASE("stationary mixing angles") {
  // the stationarity function is the exact derivative of the closed form
  for (double kb : {0.0, 0.4, 1.0}) {
    for (double phi : {0.3, 0.8, 1.4, 2.2, 2.9}) {
      const double h = 1e-5;
      const auto e = [&](double x) {
        return two_mode_entropy_closed_form(
            mixing_params(kb, x, WeightFamily::RealMix));
      };
      const double numeric = (e(phi + h) - e(phi - h)) / (2.0 * h);
      CHECK_LT(std::abs(extremal_equation(kb, phi) - numeric), 1e-6);
    }
  }

  // decoupled ratio: interior stationary points pi/4 (max), pi/2 (min), 3pi/4
  const auto roots0 = extremum_solve(0.0);
  REQUIRE_EQ(roots0.size(), 3);
  CHECK_LT(std::abs(roots0[0] - kPi / 4.0), 1e-8);
  CHECK_LT(std::abs(roots0[1] - kPi / 2.0), 1e-8);
  CHECK_LT(std::abs(roots0[2] - 3.0 * kPi / 4.0), 1e-8);
  const auto e0 = [&](double x) {
    return two_mode_entropy_closed_form(
        mixing_params(0.0, x, WeightFamily::RealMix));
  };
  CHECK_LT(std::abs(e0(roots0[0]) - 2.0 * kLn2), 1e-10);  // the maximum
  CHECK_LT(std::abs(e0(roots0[1]) - kLn2), 1e-10);        // the minimum

  for (double kb : kbar_grid) {
    const auto roots = extremum_solve(kb);
    CHECK_GT(roots.size(), 0);
    for (double r : roots) {
      // every root is a stationary point of the entropy curve
      const double h = 1e-4;
      const auto e = [&](double x) {
        return two_mode_entropy_closed_form(
            mixing_params(kb, x, WeightFamily::RealMix));
      };
      CHECK_LT(std::abs((e(r + h) - e(r - h)) / (2.0 * h)), 1e-6);
    }
    if (kb == 1.0) {
      // symmetric curve: roots pair up around pi/2
      for (double r : roots) {
        const double mirrored = kPi - r;
        double best = 1.0;
        for (double other : roots) best = std::min(best, std::abs(other - mirrored));
        CHECK_LT(best, 1e-7);
      }
    }
  }
}

TEST_CASE("per-fermion entanglement curves") {
  const PerFermionTable table = per_fermion_entropy(kbar_grid, phi_grid());
  CHECK_LT(table.crosscheck_defect, 1e-10);

  for (const PerFermionRow& row : table.rows) {
    CHECK_LT(row.e1, kLn2 + 1e-12);
    CHECK_LT(row.e2, kLn2 + 1e-12);
  }

  // at zero ratio the second pair is untouched by the transformation: the
  // unit-pair fermion stays maximally entangled while the second fermion
  // touches zero at exactly two angles per period
  int zero_clusters = 0;
  bool in_cluster = false;
  for (const PerFermionRow& row : table.rows) {
    if (row.kbar != 0.0) continue;
    CHECK_LT(std::abs(row.e1 - kLn2), 1e-10);
    if (row.phi >= kPi - 1e-12) continue;  // half-open period
    const bool zero = row.e2 < 1e-8;
    if (zero && !in_cluster) ++zero_clusters;
    in_cluster = zero;
  }
  CHECK_EQ(zero_clusters, 2);

  // a state with only the second pair excited: its fermion carries ln 2,
  // the untouched first fermion nothing
  FockSpace sp(cfg(2, 2, 3, {1.0, 0.5}));
  StateVector w = StateVector::Zero(sp.dim());
  w(sp.index_of(BasisState{{0, 1}, {0, 1}})) = 1.0 / std::sqrt(2.0);
  w(sp.index_of(BasisState{{0, 0}, {0, 2}})) = 1.0 / std::sqrt(2.0);
  CHECK_LT(entropy(reduce(sp, w, Subsystem{{0}, {}})), 1e-12);
  CHECK_LT(std::abs(entropy(reduce(sp, w, Subsystem{{1}, {}})) - kLn2), 1e-12);

  // nonzero ratios entangle both fermions everywhere
  for (const PerFermionRow& row : table.rows)
    if (row.kbar >= 0.25) CHECK_GT(row.e2, 1e-3);
}
