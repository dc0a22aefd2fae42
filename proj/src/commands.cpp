#include "superfock/commands.hpp"

#include <json.hpp>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "superfock/algebra.hpp"
#include "superfock/dynamics.hpp"
#include "superfock/entanglement.hpp"
#include "superfock/fock_space.hpp"
#include "superfock/graded.hpp"
#include "superfock/susino.hpp"
#include "superfock/thermal.hpp"

namespace superfock {

namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;
const double kLn2 = std::log(2.0);

ModeConfig pair_config(int f, int b, int cutoff, int margin,
                       std::vector<double> k = {}) {
  ModeConfig c;
  c.n_fermion = f;
  c.n_boson = b;
  c.cutoff = cutoff;
  c.safe_margin = margin;
  c.couplings = std::move(k);
  return c;
}

/// Comma-free variant of FockSpace::label for CSV cells.
std::string csv_label(const FockSpace& sp, std::int64_t index) {
  const BasisState st = sp.state_of(index);
  std::string out = "f";
  for (std::size_t i = 0; i < st.fermion_occ.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(st.fermion_occ[i]);
  }
  out += ";b";
  for (std::size_t j = 0; j < st.boson_occ.size(); ++j) {
    if (j) out += '.';
    out += std::to_string(st.boson_occ[j]);
  }
  return out;
}

std::vector<double> phi_grid(int points) {
  std::vector<double> g;
  g.reserve(points);
  for (int j = 0; j < points; ++j) g.push_back(j * kPi / (points - 1));
  return g;
}

/// tr(x^dag y)/tr(x^dag x): least-squares coefficient of y on x.
Complex fit_coefficient(const Operator& y, const Operator& x) {
  const Complex denom = (dagger(x) * x).trace();
  return (dagger(x) * y).trace() / denom;
}

}  // namespace

void RunConfig::validate() const {
  if (n_fermion < 1 || n_boson < 1)
    throw ConfigError("config: at least one mode of each kind is required");
  if (cutoff < 2) throw ConfigError("config: cutoff must be at least 2");
  if (margin < 0 || margin > cutoff)
    throw ConfigError("config: margin must lie in [0, cutoff]");
  if (phi_points < 2)
    throw ConfigError("config: phi_points must be at least 2");
  if (format != "csv" && format != "json")
    throw ConfigError("config: format must be 'csv' or 'json'");
  if (tol < 0.0) throw ConfigError("config: tol must be non-negative");
  if (betas.empty() || flow_values.empty() || kbar_values.empty())
    throw ConfigError("config: parameter lists must be non-empty");
  for (double b : betas)
    if (!(b > 0.0)) throw ConfigError("config: betas must be positive");
  for (double kb : kbar_values)
    if (kb < 0.0) throw ConfigError("config: kbar values must be >= 0");
  ModeConfig probe = pair_config(n_fermion, n_boson, cutoff, margin,
                                 couplings);
  probe.validate();
}

RunConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!doc.is_object())
    throw ConfigError("config: top-level JSON object expected");

  RunConfig cfg;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "n_fermion")
        cfg.n_fermion = value.get<int>();
      else if (key == "n_boson")
        cfg.n_boson = value.get<int>();
      else if (key == "cutoff")
        cfg.cutoff = value.get<int>();
      else if (key == "margin")
        cfg.margin = value.get<int>();
      else if (key == "couplings")
        cfg.couplings = value.get<std::vector<double>>();
      else if (key == "anharmonic_g")
        cfg.anharmonic_g = value.get<double>();
      else if (key == "betas")
        cfg.betas = value.get<std::vector<double>>();
      else if (key == "flow_values")
        cfg.flow_values = value.get<std::vector<double>>();
      else if (key == "kbar_values")
        cfg.kbar_values = value.get<std::vector<double>>();
      else if (key == "phi_points")
        cfg.phi_points = value.get<int>();
      else if (key == "out_dir")
        cfg.out_dir = value.get<std::string>();
      else if (key == "tol")
        cfg.tol = value.get<double>();
      else if (key == "format")
        cfg.format = value.get<std::string>();
      else if (key == "seed")
        cfg.seed = value.get<std::uint64_t>();
      else
        throw ConfigError("config: unknown key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("config: cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

bool CheckReport::all_passed() const {
  for (const CheckResult& c : checks)
    if (!c.passed) return false;
  return true;
}

namespace {

/// Collects named checks; a throwing body counts as failed, not fatal.
class CheckRunner {
 public:
  explicit CheckRunner(double tol_override) : tol_override_(tol_override) {}

  /// Pass iff body() <= tolerance (override applies).
  void upper(const std::string& name, double tolerance,
             const std::function<double()>& body) {
    CheckResult r;
    r.name = name;
    r.tolerance = tol_override_ > 0.0 ? tol_override_ : tolerance;
    run(r, body, /*lower=*/false, 0.0);
  }

  /// Pass iff body() > threshold; defect records the shortfall.
  void witness(const std::string& name, double threshold,
               const std::function<double()>& body) {
    CheckResult r;
    r.name = name;
    r.tolerance = 0.0;
    run(r, body, /*lower=*/true, threshold);
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  void run(CheckResult& r, const std::function<double()>& body, bool lower,
           double threshold) {
    try {
      const double v = body();
      r.defect = lower ? std::max(0.0, threshold - v) : v;
    } catch (const std::exception&) {
      r.defect = std::numeric_limits<double>::max();
    }
    r.passed = r.defect <= r.tolerance;
    results_.push_back(r);
  }

  double tol_override_;
  std::vector<CheckResult> results_;
};

}  // namespace

CheckReport run_all_checks(const RunConfig& cfg) {
  cfg.validate();
  CheckRunner run(cfg.tol);

  // ---- canonical relations on the configured space -------------------------
  FockSpace spc(pair_config(cfg.n_fermion, cfg.n_boson, cfg.cutoff,
                            cfg.margin, cfg.couplings));
  const Operator idc = spc.identity();
  const Operator pc = spc.safe_projector(cfg.margin);

  run.upper("fermion_anticommutators", 1e-12, [&] {
    double worst = 0.0;
    for (int i = 0; i < cfg.n_fermion; ++i)
      for (int j = 0; j < cfg.n_fermion; ++j) {
        const Operator ai = spc.fermion_annihilator(i);
        const Operator aj = spc.fermion_annihilator(j);
        const double delta = i == j ? 1.0 : 0.0;
        worst = std::max(worst,
                         max_abs(anticomm(ai, dagger(aj)) - delta * idc));
        worst = std::max(worst, max_abs(anticomm(ai, aj)));
      }
    return worst;
  });

  run.upper("boson_commutators_safe", 1e-12, [&] {
    double worst = 0.0;
    for (int i = 0; i < cfg.n_boson; ++i)
      for (int j = 0; j < cfg.n_boson; ++j) {
        const Operator bi = spc.boson_annihilator(i);
        const Operator bj = spc.boson_annihilator(j);
        const double delta = i == j ? 1.0 : 0.0;
        worst = std::max(
            worst, projected_defect(comm(bi, dagger(bj)) - delta * idc, pc));
        worst = std::max(worst, max_abs(comm(bi, bj)));
      }
    return worst;
  });

  run.upper("mixed_mode_relations", 1e-12, [&] {
    double worst = 0.0;
    for (int i = 0; i < cfg.n_fermion; ++i)
      for (int j = 0; j < cfg.n_boson; ++j) {
        const Operator a = spc.fermion_annihilator(i);
        const Operator b = spc.boson_annihilator(j);
        worst = std::max(worst, max_abs(comm(a, b)));
        worst = std::max(worst, max_abs(comm(a, dagger(b))));
      }
    return worst;
  });

  run.upper("basis_roundtrip", 0.0, [&] {
    double mismatches = 0.0;
    for (std::int64_t i = 0; i < spc.dim(); ++i)
      if (spc.index_of(spc.state_of(i)) != i) mismatches += 1.0;
    return mismatches;
  });

  // ---- free supercharge algebra ---------------------------------------------
  FockSpace sp2(pair_config(2, 2, std::min(cfg.cutoff, 12), 1, {1.0, 0.7}));
  run.upper("supercharge_square_two_pair", 1e-12, [&] {
    return projected_defect(build_G(sp2) * build_G(sp2) - build_H(sp2),
                            sp2.safe_projector(1));
  });

  FockSpace sp1(pair_config(1, 1, cfg.cutoff, cfg.margin));
  const Operator g1 = build_G(sp1);
  run.upper("supercharge_square_single", 1e-12, [&] {
    return projected_defect(g1 * g1 - sp1.total_number(),
                            sp1.safe_projector(1));
  });

  run.upper("unitary_unitarity", 1e-10, [&] {
    const Operator u = unitary_Ia(g1, 1.0);
    return op_norm(Operator(dagger(u) * u - sp1.identity()));
  });

  run.upper("unitary_group_law", 1e-9, [&] {
    return op_norm(
        Operator(unitary_Ia(g1, 0.4) * unitary_Ia(g1, 0.7) -
                 unitary_Ia(g1, 1.1)));
  });

  run.upper("evolved_annihilator_closed_form", 1e-9, [&] {
    const double s = 0.37;
    const Operator p2 = sp1.safe_projector(2);
    const double da = projected_defect(
        closed_form_a_s(sp1, s) - heisenberg(g1, sp1.fermion_annihilator(0), s),
        p2);
    const double db = projected_defect(
        closed_form_b_s(sp1, s) - heisenberg(g1, sp1.boson_annihilator(0), s),
        p2);
    return std::max(da, db);
  });

  // ---- the linear odd flow ---------------------------------------------------
  run.witness("odd_flow_alpha_breaks", 0.5, [&] {
    return consistency_conditions(FlowKind::Ib,
                                  pair_config(1, 1, std::min(cfg.cutoff, 12),
                                              1))
        .alpha;
  });

  run.upper("odd_flow_invariant", 1e-10,
            [&] { return odd_flow_invariant_defect(sp1, 1.0); });

  // ---- the Grassmann extension ------------------------------------------------
  run.upper("grassmann_flow_matches", 1e-12, [&] {
    GradedAlgebra alg(sp1);
    const double s = 0.8;
    const Operator a = sp1.fermion_annihilator(0);
    const Operator b = sp1.boson_annihilator(0);
    const GradedElement fa = alg.flow(alg.embed(a), g1, s);
    const GradedElement fb = alg.flow(alg.embed(b), g1, s);
    const Operator p1 = sp1.safe_projector(1);
    double worst = max_abs(fa.body - a);
    worst = std::max(worst, max_abs(fa.soul - s * b));
    worst = std::max(worst, max_abs(fb.body - b));
    // the bosonic soul feels the truncation boundary; compare safely
    worst = std::max(worst, projected_defect(fb.soul + s * a, p1));
    return worst;
  });

  run.upper("grassmann_unitarity", 1e-13, [&] {
    GradedAlgebra alg(sp1);
    const GradedElement u = alg.unitary(g1, 0.8);
    const GradedElement prod = alg.mul(u, alg.star(u));
    return std::max(max_abs(prod.body - sp1.identity()), max_abs(prod.soul));
  });

  FockSpace ext =
      extend_with_aux_fermion(pair_config(1, 1, std::min(cfg.cutoff, 10), 1));
  run.upper("theta_matrix_relations", 1e-13, [&] {
    const Operator th = theta_matrix(ext);
    const Operator a = ext.fermion_annihilator(0);
    const Operator b = ext.boson_annihilator(0);
    double worst = max_abs(Operator(th * th));
    worst = std::max(worst, max_abs(anticomm(th, a)));
    worst = std::max(worst, max_abs(anticomm(th, dagger(a))));
    worst = std::max(worst, max_abs(comm(th, b)));
    worst = std::max(worst,
                     max_abs(anticomm(th, dagger(th)) - ext.identity()));
    return worst;
  });

  run.upper("clifford_square_closed_form", 1e-12, [&] {
    const CliffordOperators cl = build_clifford(ext);
    return projected_defect(cl.g * cl.g - cl.h_closed_form,
                            ext.safe_projector(1));
  });

  run.upper("clifford_amplitudes", 1e-10, [&] {
    const CliffordOperators cl = build_clifford(ext);
    const double s = 1.234;
    const Operator u = unitary_III(cl.g, s);
    double worst = 0.0;
    const int top = std::min(cfg.cutoff, 10) - 1;
    for (int n = 1; n <= top; ++n) {
      const auto from = ext.index_of({{0, 0}, {n}});
      const double r = std::sqrt(static_cast<double>(n));
      worst = std::max(worst, std::abs(u(from, from) -
                                       Complex(std::cos(r * s), 0.0)));
      worst = std::max(
          worst, std::abs(u(ext.index_of({{1, 1}, {n - 1}}), from) -
                          Complex(0.0, std::sin(r * s))));
    }
    return worst;
  });

  // ---- quasiparticles ---------------------------------------------------------
  FockSpace sps(pair_config(1, 1, std::max(cfg.cutoff, 8), 1));
  const Operator gs = build_G(sps);
  const SusinoPair pair = build_susinos(sps);

  run.upper("susino_invariant_commutators", 1e-12, [&] {
    return std::max(max_abs(Operator(comm(pair.a_plus, gs) + pair.a_plus)),
                    max_abs(Operator(comm(pair.a_minus, gs) - pair.a_minus)));
  });

  run.upper("susino_phase_laws", 1e-10, [&] {
    const double s = 1.1;
    const Complex ph(std::cos(s), std::sin(s));
    double worst = max_abs(
        Operator(heisenberg(gs, pair.a_plus, s) - ph * pair.a_plus));
    worst = std::max(
        worst, max_abs(Operator(heisenberg(gs, pair.a_minus, s) -
                                std::conj(ph) * pair.a_minus)));
    return worst;
  });

  run.witness("susino_statistics_witnesses", 0.5, [&] {
    const StatisticsReport rep = statistics_report(sps, pair);
    return std::min(rep.commutator_defect, rep.anticommutator_defect);
  });

  run.upper("susino_nilpotency", 1e-14, [&] {
    return statistics_report(sps, pair).square_norm;
  });

  run.upper("susino_exciton_phase", 1e-10, [&] {
    return statistics_report(sps, pair).exciton_phase_defect;
  });

  run.upper("susino_block_ladder", 1e-10, [&] {
    const Operator a12 = build_a_mn(sps, 1, 2, +1);
    const Operator a21 = build_a_mn(sps, 2, 1, +1);
    const Operator a23 = build_a_mn(sps, 2, 3, +1);
    const Operator a13 = build_a_mn(sps, 1, 3, +1);
    double worst = max_abs(Operator(dagger(a12) - a21));
    worst = std::max(worst, max_abs(Operator(a12 * a23 - 2.0 * a13)));
    const double s = 0.5;
    const double freq = std::sqrt(2.0) - 1.0;
    const Complex ph(std::cos(freq * s), std::sin(freq * s));
    worst = std::max(worst,
                     max_abs(Operator(heisenberg(gs, a12, s) - ph * a12)));
    return worst;
  });

  run.upper("perturbed_phase_invariance", 1e-10, [&] {
    const PerturbedReport rep = perturbed_evolution(sps, 0.5, 1.0);
    return std::max({rep.identity_defect, rep.plus_defect, rep.minus_defect});
  });

  run.witness("perturbed_generators_move", 0.1, [&] {
    const PerturbedReport rep = perturbed_evolution(sps, 0.5, 1.0);
    return std::min(rep.a_defect, rep.b_defect);
  });

  // ---- entanglement -------------------------------------------------------------
  run.upper("pair_entanglement_lemma", 1e-10, [&] {
    FockSpace sp(pair_config(1, 1, std::max(cfg.cutoff, 9), 1));
    const Subsystem fermion{{0}, {}}, boson{{}, {0}};
    double worst = 0.0;
    for (int n = 1; n <= 8; ++n) {
      const auto [plus, minus] = single_mode_eigenvectors(sp, n);
      for (const StateVector& v : {plus, minus}) {
        worst = std::max(worst,
                         std::abs(entropy(reduce(sp, v, fermion)) - kLn2));
        worst = std::max(worst,
                         std::abs(entropy(reduce(sp, v, boson)) - kLn2));
      }
    }
    return worst;
  });

  run.upper("two_mode_closed_form_random", 1e-10, [&] {
    std::mt19937 rng(static_cast<std::uint32_t>(cfg.seed));
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> kdist(0.2, 1.5);
    std::uniform_int_distribution<int> ndist(0, 2);
    double worst = 0.0;
    for (int draw = 0; draw < 20; ++draw) {
      TwoModeParams p;
      p.n_b1 = ndist(rng);
      p.n_b2 = ndist(rng);
      p.k = kdist(rng);
      Complex a(unit(rng), unit(rng)), b(unit(rng), unit(rng));
      const double norm = std::sqrt(std::norm(a) + std::norm(b));
      if (norm < 1e-3) continue;
      p.weight_a = a / norm;
      p.weight_b = b / norm;
      FockSpace sp(pair_config(2, 2, 4, 1, {1.0, p.k}));
      const TwoModeBasis basis = two_mode_eigenbasis(sp, p, +1);
      const StateVector psi = p.weight_a * basis.phi1 + p.weight_b * basis.phi2;
      const DensityMatrix rho = reduce(sp, psi, Subsystem{{0, 1}, {}});
      Eigen::SelfAdjointEigenSolver<Operator> es(rho.rho,
                                                 Eigen::EigenvaluesOnly);
      auto closed = density_eigenvalues_closed_form(p);
      std::sort(closed.begin(), closed.end());
      for (int i = 0; i < 4; ++i)
        worst = std::max(worst, std::abs(es.eigenvalues()(i) - closed[i]));
    }
    return worst;
  });

  const SurfaceTable surf =
      entanglement_surface({0.0, 1.0}, phi_grid(129), WeightFamily::RealMix);
  run.upper("surface_crosscheck", 1e-10,
            [&] { return surf.crosscheck_defect; });

  run.upper("surface_extremes", 1e-6, [&] {
    double min0 = 10.0, max0 = 0.0, min1 = 10.0;
    for (const SurfaceRow& row : surf.rows) {
      if (row.kbar == 0.0) {
        min0 = std::min(min0, row.entropy_value);
        max0 = std::max(max0, row.entropy_value);
      } else {
        min1 = std::min(min1, row.entropy_value);
      }
    }
    return std::max({std::abs(min0 - kLn2), std::abs(max0 - 2.0 * kLn2),
                     std::abs(min1 - 1.5 * kLn2)});
  });

  run.upper("per_fermion_bounds", 1e-10, [&] {
    const PerFermionTable t = per_fermion_entropy({0.0, 0.5}, phi_grid(65));
    double worst = t.crosscheck_defect;
    for (const PerFermionRow& row : t.rows) {
      worst = std::max(worst, std::max(0.0, row.e1 - kLn2));
      worst = std::max(worst, std::max(0.0, row.e2 - kLn2));
    }
    return worst;
  });

  run.upper("extremal_roots_stationary", 1e-6, [&] {
    double worst = 0.0;
    for (double kb : {0.0, 1.0}) {
      for (double r : extremum_solve(kb)) {
        const double h = 1e-4;
        const auto e = [&](double x) {
          return two_mode_entropy_closed_form(
              mixing_params(kb, x, WeightFamily::RealMix));
        };
        worst = std::max(worst, std::abs((e(r + h) - e(r - h)) / (2.0 * h)));
      }
    }
    return worst;
  });

  // ---- thermal -------------------------------------------------------------------
  ThermalParams tp;
  tp.beta = kLn2;
  tp.cutoff = std::max(cfg.cutoff, 40);

  run.upper("thermal_fermion_occupations", 1e-12,
            [&] { return mode_occupation_check(tp).fermion_defect; });

  run.upper("thermal_boson_occupations", thermal_tolerance(tp),
            [&] { return mode_occupation_check(tp).boson_defect; });

  run.upper("thermal_invariance", 1e-10, [&] {
    const InvarianceReport rep = ia_invariance(tp, 1.0);
    return std::max({rep.invariance_defect, rep.number_commutator,
                     rep.miracle_defect, rep.partner_defect});
  });

  run.upper("thermal_drift", 1e-9,
            [&] { return std::abs(ib_drift(tp, 1.0) - 4.0 / 3.0); });

  run.upper("kms_boundary", 1e-8, [&] {
    FockSpace sp(pair_config(1, 1, 12, 1));
    const Operator h = sp.total_number();
    const Operator a = sp.fermion_annihilator(0);
    const Operator b = sp.boson_annihilator(0);
    double worst = kms_defect(h, 0.7, dagger(a) * b, dagger(b) * a);
    worst = std::max(worst, kms_defect(h, 0.7, b, dagger(b)));
    worst = std::max(worst, kms_defect(h, 2.0, dagger(b) * b, b));
    return worst;
  });

  // ---- anharmonic model -------------------------------------------------------------
  FockSpace spw(pair_config(1, 1, std::max(cfg.cutoff, 16), 4));
  const WessZuminoOperators wz = build_wz(spw, cfg.anharmonic_g);

  run.upper("anharmonic_supersymmetry", 1e-9, [&] {
    return projected_defect(anticomm(wz.q, wz.q_dag) - wz.h,
                            spw.safe_projector(4));
  });

  run.upper("anharmonic_charge_commutes", 1e-9,
            [&] { return max_abs(comm(wz.g, wz.h)); });

  run.upper("anharmonic_spectrum_converged", 1e-8, [&] {
    const int lc = std::max(cfg.cutoff, 44);
    FockSpace lo(pair_config(1, 1, lc, 1));
    FockSpace hi(pair_config(1, 1, lc + 4, 1));
    Eigen::SelfAdjointEigenSolver<Operator> el(
        build_wz(lo, cfg.anharmonic_g).h, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Operator> eh(
        build_wz(hi, cfg.anharmonic_g).h, Eigen::EigenvaluesOnly);
    double worst = 0.0;
    for (int i = 0; i < 12; ++i)
      worst = std::max(worst,
                       std::abs(el.eigenvalues()(i) - eh.eigenvalues()(i)));
    return worst;
  });

  CheckReport report;
  report.checks = run.take();
  return report;
}

std::string CheckReport::to_json() const {
  json doc;
  doc["all_passed"] = all_passed();
  json arr = json::array();
  for (const CheckResult& c : checks) {
    json item;
    item["name"] = c.name;
    item["defect"] = c.defect;
    item["tolerance"] = c.tolerance;
    item["passed"] = c.passed;
    arr.push_back(item);
  }
  doc["checks"] = arr;
  return doc.dump(2) + "\n";
}

CsvTable evolve_table(const RunConfig& cfg) {
  cfg.validate();
  CsvTable t;
  t.header = {"flow", "s", "from_state", "to_state", "probability"};

  const auto emit = [&t](const std::string& flow, double s,
                         const FockSpace& sp, const Operator& u) {
    for (std::int64_t from = 0; from < sp.dim(); ++from)
      for (const TransitionRow& row : transition_table(u, from))
        t.rows.push_back({flow, format_double(s), csv_label(sp, from),
                          csv_label(sp, row.to),
                          format_double(row.probability)});
  };

  FockSpace sp(pair_config(1, 1, cfg.cutoff, cfg.margin));
  const Operator g = build_G(sp);
  for (double s : cfg.flow_values) emit("Ia", s, sp, unitary_Ia(g, s));

  FockSpace ext =
      extend_with_aux_fermion(pair_config(1, 1, cfg.cutoff, cfg.margin));
  const CliffordOperators cl = build_clifford(ext);
  for (double s : cfg.flow_values) emit("III", s, ext, unitary_III(cl.g, s));

  return t;
}

EntangleTables entangle_tables(const RunConfig& cfg) {
  cfg.validate();
  const std::vector<double> phis = phi_grid(cfg.phi_points);

  const SurfaceTable surf =
      entanglement_surface(cfg.kbar_values, phis, WeightFamily::RealMix);
  if (surf.crosscheck_defect > 1e-10)
    throw std::runtime_error(
        "entangle: closed form disagrees with the partial trace");
  const PerFermionTable pf = per_fermion_entropy(cfg.kbar_values, phis);
  if (pf.crosscheck_defect > 1e-10)
    throw std::runtime_error(
        "entangle: per-fermion closed form disagrees with the partial trace");

  EntangleTables out;
  out.surface.header = {"kbar", "phi", "E"};
  for (const SurfaceRow& row : surf.rows)
    out.surface.rows.push_back({format_double(row.kbar),
                                format_double(row.phi),
                                format_double(row.entropy_value)});
  out.per_fermion.header = {"kbar", "phi", "E1", "E2"};
  for (const PerFermionRow& row : pf.rows)
    out.per_fermion.rows.push_back(
        {format_double(row.kbar), format_double(row.phi),
         format_double(row.e1), format_double(row.e2)});
  return out;
}

CsvTable thermal_table(const RunConfig& cfg) {
  cfg.validate();
  CsvTable t;
  t.header = {"beta", "s",
              "omega_nf", "omega_nb", "omega_nf_evolved", "drift_ib"};

  for (double beta : cfg.betas) {
    ThermalParams p;
    p.beta = beta;
    p.cutoff = std::max(cfg.cutoff, 40);
    FockSpace sp(pair_config(1, 1, p.cutoff, 1));
    const DensityMatrix rho = gibbs(sp.total_number(), beta);
    const Operator g = build_G(sp);
    const Operator nf = sp.fermion_number(0);
    const Operator nb = sp.boson_number(0);
    const double wf = thermal_expectation(rho, nf).real();
    const double wb = thermal_expectation(rho, nb).real();
    for (double s : cfg.flow_values) {
      const double evolved =
          thermal_expectation(rho, heisenberg(g, nf, s)).real();
      const double drift = ib_drift(p, s);
      t.rows.push_back({format_double(beta), format_double(s),
                        format_double(wf), format_double(wb),
                        format_double(evolved), format_double(drift)});
    }
  }
  return t;
}

std::string susino_report_json(const RunConfig& cfg) {
  cfg.validate();
  FockSpace sp(pair_config(1, 1, std::max(cfg.cutoff, 8), cfg.margin));
  const Operator g = build_G(sp);
  const SusinoPair pair = build_susinos(sp);
  const StatisticsReport rep = statistics_report(sp, pair);

  const double s = 0.9;
  const auto exponent = [&](const Operator& x) {
    return std::arg(fit_coefficient(heisenberg(g, x, s), x)) / s;
  };

  json doc;
  doc["statistics"] = {
      {"commutator_witness", rep.commutator_defect},
      {"anticommutator_witness", rep.anticommutator_defect},
      {"square_norm", rep.square_norm},
      {"exciton_phase_defect", rep.exciton_phase_defect},
      {"literal_exciton_norm", rep.literal_exciton_norm},
  };
  doc["flow_exponents"] = {
      {"a_plus", exponent(pair.a_plus)},
      {"a_minus", exponent(pair.a_minus)},
      {"exciton", exponent(Operator(dagger(pair.a_minus) * pair.a_plus))},
      {"block_1_2", exponent(build_a_mn(sp, 1, 2, +1))},
  };

  const double alpha = 0.5, tt = 1.0;
  const PerturbedReport pr = perturbed_evolution(sp, alpha, tt);
  doc["perturbed_evolution"] = {
      {"alpha", alpha},
      {"t", tt},
      {"identity_defect", pr.identity_defect},
      {"plus_exponent", std::arg(pr.plus_phase) / tt},
      {"minus_exponent", std::arg(pr.minus_phase) / tt},
      {"plus_defect", pr.plus_defect},
      {"minus_defect", pr.minus_defect},
      {"a_defect", pr.a_defect},
      {"b_defect", pr.b_defect},
  };
  return doc.dump(2) + "\n";
}

std::string wz_report_json(const RunConfig& cfg) {
  cfg.validate();
  const double gg = cfg.anharmonic_g;
  const int lc = std::max(cfg.cutoff, 44);
  FockSpace lo(pair_config(1, 1, lc, 1));
  FockSpace hi(pair_config(1, 1, lc + 4, 1));
  const WessZuminoOperators wlo = build_wz(lo, gg);
  const WessZuminoOperators whi = build_wz(hi, gg);

  Eigen::SelfAdjointEigenSolver<Operator> el(wlo.h, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Operator> eh(whi.h, Eigen::EigenvaluesOnly);

  json spectrum = json::array();
  for (int i = 0; i < 12; ++i) spectrum.push_back(eh.eigenvalues()(i));

  int kernel = 0;
  for (Eigen::Index i = 0; i < eh.eigenvalues().size(); ++i)
    if (std::abs(eh.eigenvalues()(i)) < 1e-8) ++kernel;
  double gap = 0.0;
  for (Eigen::Index i = 0; i < eh.eigenvalues().size(); ++i)
    if (eh.eigenvalues()(i) > 1e-8) {
      gap = eh.eigenvalues()(i);
      break;
    }

  double convergence = 0.0;
  for (int i = 0; i < 12; ++i)
    convergence = std::max(
        convergence, std::abs(el.eigenvalues()(i) - eh.eigenvalues()(i)));

  const WzCompareReport cmp = wz_closed_form_compare(hi, gg, 4);

  json doc;
  doc["g"] = gg;
  doc["cutoff"] = lc;
  doc["cutoff_plus"] = lc + 4;
  doc["spectrum_low"] = spectrum;
  doc["kernel_dimension"] = kernel;
  doc["spectral_gap"] = gap;
  doc["convergence_gap"] = convergence;
  doc["supersymmetry_defect"] = projected_defect(
      anticomm(whi.q, whi.q_dag) - whi.h, hi.safe_projector(4));
  doc["charge_commutes_defect"] = max_abs(comm(whi.g, whi.h));
  doc["closed_form_discrepancy"] = cmp.discrepancy;
  doc["closed_form_hermiticity_defect"] = cmp.hermiticity_defect;
  return doc.dump(2) + "\n";
}

std::string render_table(const CsvTable& t, const std::string& format) {
  if (format == "csv") return csv_to_string(t);
  json doc;
  doc["header"] = t.header;
  json rows = json::array();
  for (const auto& row : t.rows) rows.push_back(row);
  doc["rows"] = rows;
  return doc.dump(2) + "\n";
}

namespace {

std::filesystem::path out_path(const RunConfig& cfg, const std::string& stem,
                               const std::string& ext) {
  return std::filesystem::path(cfg.out_dir) / (stem + "." + ext);
}

std::string data_ext(const RunConfig& cfg) {
  return cfg.format == "csv" ? "csv" : "json";
}

}  // namespace

int run_check(const RunConfig& cfg) {
  const CheckReport report = run_all_checks(cfg);
  write_text_file(out_path(cfg, "check_report", "json"), report.to_json());
  return report.all_passed() ? 0 : 1;
}

int run_evolve(const RunConfig& cfg) {
  write_text_file(out_path(cfg, "evolve", data_ext(cfg)),
                  render_table(evolve_table(cfg), cfg.format));
  return 0;
}

int run_entangle(const RunConfig& cfg) {
  const EntangleTables tables = entangle_tables(cfg);
  write_text_file(out_path(cfg, "entangle_surface", data_ext(cfg)),
                  render_table(tables.surface, cfg.format));
  write_text_file(out_path(cfg, "entangle_fermions", data_ext(cfg)),
                  render_table(tables.per_fermion, cfg.format));
  return 0;
}

int run_thermal(const RunConfig& cfg) {
  write_text_file(out_path(cfg, "thermal", data_ext(cfg)),
                  render_table(thermal_table(cfg), cfg.format));
  return 0;
}

int run_susino(const RunConfig& cfg) {
  write_text_file(out_path(cfg, "susino_report", "json"),
                  susino_report_json(cfg));
  return 0;
}

int run_wz(const RunConfig& cfg) {
  write_text_file(out_path(cfg, "wz_report", "json"), wz_report_json(cfg));
  return 0;
}

}  // namespace superfock
