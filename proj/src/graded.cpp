#include "superfock/graded.hpp"

#include "superfock/algebra.hpp"

namespace superfock {

namespace {

void check_dims(const GradedElement& x, const GradedElement& y) {
  if (x.body.rows() != y.body.rows() || x.soul.rows() != y.soul.rows() ||
      x.body.rows() != x.soul.rows())
    throw ConfigError("graded element dimension mismatch");
}

}  // namespace

GradedAlgebra::GradedAlgebra(const FockSpace& space)
    : parity_(space.parity()), identity_(space.identity()) {}

Operator GradedAlgebra::twist(const Operator& x) const {
  return parity_ * x * parity_;
}

GradedElement GradedAlgebra::unit() const {
  return {identity_, Operator::Zero(dim(), dim())};
}

GradedElement GradedAlgebra::embed(const Operator& body) const {
  return {body, Operator::Zero(dim(), dim())};
}

GradedElement GradedAlgebra::soul_only(const Operator& b) const {
  return {Operator::Zero(dim(), dim()), b};
}

GradedElement GradedAlgebra::mul(const GradedElement& x,
                                 const GradedElement& y) const {
  check_dims(x, y);
  return {x.body * y.body, twist(x.body) * y.soul + x.soul * y.body};
}

GradedElement GradedAlgebra::star(const GradedElement& x) const {
  return {dagger(x.body), twist(dagger(x.soul))};
}

GradedElement GradedAlgebra::unitary(const Operator& g, double s) const {
  return {identity_, s * g};
}

GradedElement GradedAlgebra::flow(const GradedElement& x, const Operator& g,
                                  double s) const {
  const GradedElement u = unitary(g, s);
  return mul(mul(u, x), star(u));
}

Operator theta_matrix(const FockSpace& extended_space) {
  const int nf = extended_space.config().n_fermion;
  if (nf < 1) throw ConfigError("theta_matrix needs an auxiliary fermionic slot");
  return extended_space.fermion_annihilator(nf - 1);
}

Operator embed_with_aux(const FockSpace& base, const FockSpace& extended,
                        const Operator& x) {
  if (extended.config().n_fermion != base.config().n_fermion + 1 ||
      extended.config().n_boson != base.config().n_boson ||
      extended.config().cutoff != base.config().cutoff)
    throw ConfigError("extended space does not append one fermionic slot");
  if (x.rows() != base.dim() || x.cols() != base.dim())
    throw ConfigError("operator does not act on the base space");

  std::int64_t bd = 1;
  for (int j = 0; j < base.config().n_boson; ++j) bd *= base.config().cutoff + 1;

  Operator out = Operator::Zero(extended.dim(), extended.dim());
  for (std::int64_t i = 0; i < base.dim(); ++i) {
    const std::int64_t fi = i / bd, bi = i % bd;
    for (std::int64_t j = 0; j < base.dim(); ++j) {
      const Complex v = x(i, j);
      if (v == Complex(0.0, 0.0)) continue;
      const std::int64_t fj = j / bd, bj = j % bd;
      for (int aux = 0; aux < 2; ++aux)
        out((fi * 2 + aux) * bd + bi, (fj * 2 + aux) * bd + bj) = v;
    }
  }
  return out;
}

}  // namespace superfock
