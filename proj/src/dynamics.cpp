#include "superfock/dynamics.hpp"

#include <cmath>
#include <numbers>

#include "superfock/algebra.hpp"
#include "superfock/graded.hpp"

namespace superfock {

namespace {

constexpr Complex kI(0.0, 1.0);

void require_square_modes(const FockSpace& sp) {
  if (sp.config().n_fermion != sp.config().n_boson)
    throw ConfigError("free supercharge needs equal fermionic and bosonic mode counts");
}

void require_single_mode(const FockSpace& sp) {
  if (sp.config().n_fermion != 1 || sp.config().n_boson != 1)
    throw ConfigError("operation requires exactly one fermionic and one bosonic mode");
}

void require_extended(const FockSpace& sp) {
  if (sp.config().n_fermion != 2 || sp.config().n_boson != 1)
    throw ConfigError("operation requires one real fermionic mode plus the auxiliary slot");
}

Operator diagonal_of(const FockSpace& sp,
                     const std::function<double(const BasisState&)>& f) {
  Operator d = Operator::Zero(sp.dim(), sp.dim());
  for (std::int64_t i = 0; i < sp.dim(); ++i) d(i, i) = f(sp.state_of(i));
  return d;
}

}  // namespace

Operator build_G(const FockSpace& sp) {
  require_square_modes(sp);
  Operator g = Operator::Zero(sp.dim(), sp.dim());
  for (int i = 0; i < sp.config().n_fermion; ++i) {
    const Operator a = sp.fermion_annihilator(i);
    const Operator b = sp.boson_annihilator(i);
    g += sp.config().coupling(i) * (a * dagger(b) + dagger(a) * b);
  }
  return g;
}

Operator build_H(const FockSpace& sp) {
  require_square_modes(sp);
  return diagonal_of(sp, [&sp](const BasisState& st) {
    double h = 0.0;
    for (int i = 0; i < sp.config().n_fermion; ++i) {
      const double k = sp.config().coupling(i);
      h += k * k * (st.fermion_occ[i] + st.boson_occ[i]);
    }
    return h;
  });
}

Operator build_GA(const FockSpace& sp) {
  require_single_mode(sp);
  const Operator a = sp.fermion_annihilator(0);
  const Operator b = sp.boson_annihilator(0);
  return kI * (dagger(a) * b - a * dagger(b));
}

Operator commutator_G_GA_closed_form(const FockSpace& sp) {
  require_single_mode(sp);
  return 2.0 * kI *
         diagonal_of(sp, [](const BasisState& st) {
           const double nf = st.fermion_occ[0], nb = st.boson_occ[0];
           return nb - nf - 2.0 * nf * nb;
         });
}

WessZuminoOperators build_wz(const FockSpace& sp, double coupling) {
  require_single_mode(sp);
  const Operator a = sp.fermion_annihilator(0);
  const Operator b = sp.boson_annihilator(0);
  const Operator bd = dagger(b);
  WessZuminoOperators out;
  out.q = (bd + coupling * bd * b) * a;
  out.q_dag = dagger(out.q);
  out.g = out.q + out.q_dag;
  out.h = out.g * out.g;
  return out;
}

WzCompareReport wz_closed_form_compare(const FockSpace& sp, double coupling,
                                       int margin) {
  const WessZuminoOperators wz = build_wz(sp, coupling);
  const Operator a = sp.fermion_annihilator(0);
  const Operator b = sp.boson_annihilator(0);
  const Operator h0 = dagger(a) * a + dagger(b) * b;
  const Operator nb = dagger(b) * b;
  const Operator literal = h0 + coupling * h0 * (b + dagger(b)) -
                           coupling * dagger(b) + coupling * coupling * nb * nb;
  const Operator p = sp.safe_projector(margin);
  return {projected_defect(literal - wz.h, p), hermiticity_defect(literal)};
}

CliffordOperators build_clifford(const FockSpace& extended) {
  require_extended(extended);
  const Operator theta = theta_matrix(extended);
  const Operator a = extended.fermion_annihilator(0);
  const Operator b = extended.boson_annihilator(0);
  const Operator x = theta * a * dagger(b);
  CliffordOperators out;
  out.g = x + dagger(x);
  out.h_closed_form = diagonal_of(extended, [](const BasisState& st) {
    const double nf = st.fermion_occ[0], ng = st.fermion_occ[1],
                 nb = st.boson_occ[0];
    return nb * (1.0 - nf) * (1.0 - ng) + nf * ng * (1.0 + nb);
  });
  return out;
}

Operator build_clifford_phase_variant(const FockSpace& extended) {
  require_extended(extended);
  const Operator theta = theta_matrix(extended);
  const Operator a = extended.fermion_annihilator(0);
  const Operator b = extended.boson_annihilator(0);
  return -kI * (theta * a * dagger(b) + dagger(theta) * dagger(a) * b);
}

Operator spectral_unitary(const Operator& g, double s) {
  if (hermiticity_defect(g) > 1e-9 * (1.0 + max_abs(g)))
    throw ConfigError("spectral unitary needs a hermitian generator");
  const Operator h = g * g;
  const Operator c =
      hermitian_function(h, [s](double l) { return cos_sqrt(l, s); });
  const Operator f =
      hermitian_function(h, [s](double l) { return sinc_sqrt(l, s); });
  return c + kI * g * f;
}

Operator heisenberg(const Operator& g, const Operator& x, double s) {
  const Operator u = spectral_unitary(g, s);
  return u * x * dagger(u);
}

namespace {

struct NumberFunctions {
  Operator cn, cn1, sn, sn1;  // cos/sinc of sqrt(N) and sqrt(N+1)
};

NumberFunctions number_functions(const FockSpace& sp, double s) {
  const auto n_of = [](const BasisState& st) {
    return double(st.fermion_occ[0] + st.boson_occ[0]);
  };
  NumberFunctions f;
  f.cn = diagonal_of(sp, [&](const BasisState& st) { return cos_sqrt(n_of(st), s); });
  f.cn1 = diagonal_of(sp, [&](const BasisState& st) { return cos_sqrt(n_of(st) + 1.0, s); });
  f.sn = diagonal_of(sp, [&](const BasisState& st) { return sinc_sqrt(n_of(st), s); });
  f.sn1 = diagonal_of(sp, [&](const BasisState& st) { return sinc_sqrt(n_of(st) + 1.0, s); });
  return f;
}

}  // namespace

Operator closed_form_a_s(const FockSpace& sp, double s) {
  require_single_mode(sp);
  const Operator a = sp.fermion_annihilator(0);
  const Operator b = sp.boson_annihilator(0);
  const Operator ad = dagger(a);
  const NumberFunctions f = number_functions(sp, s);
  return f.cn * f.cn1 * a + f.sn * f.sn1 * (ad * b * b) +
         kI * f.sn * f.cn1 * (ad * a * b) - kI * f.sn1 * f.cn * (a * ad * b);
}

Operator closed_form_b_s(const FockSpace& sp, double s) {
  require_single_mode(sp);
  const Operator a = sp.fermion_annihilator(0);
  const Operator b = sp.boson_annihilator(0);
  const Operator ad = dagger(a), bd = dagger(b);
  const NumberFunctions f = number_functions(sp, s);
  return f.cn * f.cn1 * b + f.sn * f.sn1 * (b * b * bd - 2.0 * a * ad * b) +
         kI * f.sn * f.cn1 * (a * bd * b + ad * b * b) -
         kI * f.sn1 * f.cn * (a * b * bd + ad * b * b);
}

Operator odd_derivation(const Operator& g, const Operator& x, Parity p) {
  return p == Parity::Odd ? anticomm(g, x) : kI * comm(g, x);
}

Operator twisted_leibniz(const Operator& x, Parity px, const Operator& dx,
                         const Operator& y, Parity py, const Operator& dy) {
  if (px == Parity::Odd && py == Parity::Even) return dx * y + kI * x * dy;
  if (px == Parity::Odd && py == Parity::Odd) return kI * dx * y - kI * x * dy;
  if (px == Parity::Even && py == Parity::Even) return dx * y + x * dy;
  return -kI * dx * y + x * dy;  // even * odd
}

OddFlowPair odd_flow_generators(const FockSpace& sp, double s) {
  require_single_mode(sp);
  const Operator a = sp.fermion_annihilator(0);
  const Operator b = sp.boson_annihilator(0);
  const Complex sqrt_i = std::polar(1.0, std::numbers::pi / 4.0);
  const Complex arg = s * sqrt_i;
  const Complex c = std::cos(arg), sn = std::sin(arg);
  return {c * a + (sn / sqrt_i) * b, c * b - sqrt_i * sn * a};
}

OddFlowPair odd_flow_rk4(const FockSpace& sp, double s, int steps) {
  require_single_mode(sp);
  if (steps < 1) throw ConfigError("integration needs at least one step");
  Operator a = sp.fermion_annihilator(0);
  Operator b = sp.boson_annihilator(0);
  const double h = s / steps;
  const auto da = [](const Operator&, const Operator& bc) { return bc; };
  const auto db = [](const Operator& ac, const Operator&) {
    return Operator(-kI * ac);
  };
  for (int step = 0; step < steps; ++step) {
    const Operator k1a = da(a, b), k1b = db(a, b);
    const Operator a2 = a + 0.5 * h * k1a, b2 = b + 0.5 * h * k1b;
    const Operator k2a = da(a2, b2), k2b = db(a2, b2);
    const Operator a3 = a + 0.5 * h * k2a, b3 = b + 0.5 * h * k2b;
    const Operator k3a = da(a3, b3), k3b = db(a3, b3);
    const Operator a4 = a + h * k3a, b4 = b + h * k3b;
    const Operator k4a = da(a4, b4), k4b = db(a4, b4);
    a += (h / 6.0) * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
    b += (h / 6.0) * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
  }
  return {a, b};
}

double odd_flow_invariant_defect(const FockSpace& sp, double s) {
  const OddFlowPair flowed = odd_flow_generators(sp, s);
  const Operator a = sp.fermion_annihilator(0);
  const Operator b = sp.boson_annihilator(0);
  const Complex inv_sqrt_i = std::polar(1.0, -std::numbers::pi / 4.0);
  const Operator lhs = inv_sqrt_i * flowed.a + flowed.b;
  const Operator rhs = std::exp(s * inv_sqrt_i) * (inv_sqrt_i * a + b);
  return max_abs(Operator(lhs - rhs));
}

namespace {

double projected_op_norm(const Operator& x, const Operator& p) {
  return op_norm(Operator(p * x * p));
}

ConsistencyReport matrix_flow_conditions(const FockSpace& sp, const Operator& a,
                                         const Operator& b, const Operator& ap,
                                         const Operator& adp, const Operator& bp,
                                         const Operator& bdp) {
  const Operator p = sp.safe_projector(1);
  ConsistencyReport r{};
  r.alpha = projected_op_norm(anticomm(ap, dagger(a)) + anticomm(a, adp), p);
  r.beta = projected_op_norm(comm(bp, dagger(b)) + comm(b, bdp), p);
  r.gamma = projected_op_norm(comm(ap, b) + comm(a, bp), p);
  return r;
}

}  // namespace

ConsistencyReport consistency_conditions(FlowKind kind,
                                         const ModeConfig& base) {
  if (kind == FlowKind::III) {
    const FockSpace ext = extend_with_aux_fermion(base);
    const CliffordOperators cl = build_clifford(ext);
    const Operator a = ext.fermion_annihilator(0);
    const Operator b = ext.boson_annihilator(0);
    const Operator ap = kI * comm(cl.g, a);
    const Operator adp = kI * comm(cl.g, dagger(a));
    const Operator bp = kI * comm(cl.g, b);
    const Operator bdp = kI * comm(cl.g, dagger(b));
    ConsistencyReport r = matrix_flow_conditions(ext, a, b, ap, adp, bp, bdp);
    // mixed relation {theta, a} = 0 differentiated with theta held constant
    const Operator theta = theta_matrix(ext);
    r.theta_alpha =
        projected_op_norm(anticomm(theta, ap), ext.safe_projector(1));
    return r;
  }

  const FockSpace sp(base);
  const Operator g = build_G(sp);
  const Operator a = sp.fermion_annihilator(0);
  const Operator b = sp.boson_annihilator(0);

  if (kind == FlowKind::Ia) {
    return matrix_flow_conditions(sp, a, b, kI * comm(g, a),
                                  kI * comm(g, dagger(a)), kI * comm(g, b),
                                  kI * comm(g, dagger(b)));
  }
  if (kind == FlowKind::Ib) {
    return matrix_flow_conditions(sp, a, b, anticomm(g, a),
                                  anticomm(g, dagger(a)), kI * comm(g, b),
                                  kI * comm(g, dagger(b)));
  }

  // case II: soul increments in the graded algebra
  GradedAlgebra alg(sp);
  const Operator p = sp.safe_projector(1);
  const auto inc = [&](const Operator& x) {
    return Operator(g * x - alg.twist(x) * g);
  };
  const auto soul_of_bracket = [&](const Operator& xp, const Operator& y,
                                   bool anti) {
    // bracket of a pure-soul increment with an ordinary element
    const GradedElement lhs = alg.mul(alg.soul_only(xp), alg.embed(y));
    const GradedElement rhs = alg.mul(alg.embed(y), alg.soul_only(xp));
    return anti ? Operator(lhs.soul + rhs.soul) : Operator(lhs.soul - rhs.soul);
  };
  ConsistencyReport r{};
  r.alpha = projected_op_norm(soul_of_bracket(inc(a), dagger(a), true) +
                                  soul_of_bracket(inc(dagger(a)), a, true),
                              p);
  r.beta = projected_op_norm(soul_of_bracket(inc(b), dagger(b), false) -
                                 soul_of_bracket(inc(dagger(b)), b, false),
                             p);
  r.gamma = projected_op_norm(soul_of_bracket(inc(a), b, false) -
                                  soul_of_bracket(inc(b), a, false),
                              p);
  // theta' = 0 and the soul ideal kills theta a' + a' theta structurally
  const GradedElement theta = alg.soul_only(sp.identity());
  const GradedElement mixed = {
      alg.mul(theta, alg.soul_only(inc(a))).body +
          alg.mul(alg.soul_only(inc(a)), theta).body,
      alg.mul(theta, alg.soul_only(inc(a))).soul +
          alg.mul(alg.soul_only(inc(a)), theta).soul};
  r.theta_alpha = std::max(max_abs(mixed.body), max_abs(mixed.soul));
  return r;
}

std::vector<TransitionRow> transition_table(const Operator& u,
                                            std::int64_t from,
                                            double threshold) {
  if (from < 0 || from >= u.cols()) throw ConfigError("source index out of range");
  std::vector<TransitionRow> rows;
  for (std::int64_t i = 0; i < u.rows(); ++i) {
    const Complex amp = u(i, from);
    const double prob = std::norm(amp);
    if (prob > threshold) rows.push_back({from, i, amp, prob});
  }
  return rows;
}

}  // namespace superfock
