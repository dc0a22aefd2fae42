#include "superfock/fock_space.hpp"

#include <cmath>

namespace superfock {

FockSpace::FockSpace(ModeConfig config) : config_(std::move(config)) {
  config_.validate();
  dim_ = config_.dimension();
  const int F = config_.n_fermion;
  const int B = config_.n_boson;
  fstride_.assign(F, 0);
  bstride_.assign(B, 0);
  std::int64_t s = 1;
  for (int j = B - 1; j >= 0; --j) {
    bstride_[j] = s;
    s *= (config_.cutoff + 1);
  }
  for (int i = F - 1; i >= 0; --i) {
    fstride_[i] = s;
    s *= 2;
  }
}

std::vector<BasisState> FockSpace::enumerate_basis() const {
  std::vector<BasisState> basis;
  basis.reserve(static_cast<std::size_t>(dim_));
  for (std::int64_t idx = 0; idx < dim_; ++idx) basis.push_back(state_of(idx));
  return basis;
}

BasisState FockSpace::state_of(std::int64_t index) const {
  BasisState st;
  st.fermion_occ.resize(config_.n_fermion);
  st.boson_occ.resize(config_.n_boson);
  for (int i = 0; i < config_.n_fermion; ++i)
    st.fermion_occ[i] = static_cast<int>((index / fstride_[i]) % 2);
  for (int j = 0; j < config_.n_boson; ++j)
    st.boson_occ[j] = static_cast<int>((index / bstride_[j]) % (config_.cutoff + 1));
  return st;
}

std::int64_t FockSpace::index_of(const BasisState& state) const {
  if (state.fermion_occ.size() != static_cast<std::size_t>(config_.n_fermion) ||
      state.boson_occ.size() != static_cast<std::size_t>(config_.n_boson))
    throw ConfigError("basis state slot counts do not match the mode layout");
  std::int64_t idx = 0;
  for (int i = 0; i < config_.n_fermion; ++i) {
    const int n = state.fermion_occ[i];
    if (n < 0 || n > 1) throw ConfigError("fermion occupation must be 0 or 1");
    idx += n * fstride_[i];
  }
  for (int j = 0; j < config_.n_boson; ++j) {
    const int n = state.boson_occ[j];
    if (n < 0 || n > config_.cutoff)
      throw ConfigError("boson occupation outside [0, cutoff]");
    idx += n * bstride_[j];
  }
  return idx;
}

int FockSpace::fermion_occ(std::int64_t index, int mode) const {
  return static_cast<int>((index / fstride_.at(mode)) % 2);
}

int FockSpace::boson_occ(std::int64_t index, int mode) const {
  return static_cast<int>((index / bstride_.at(mode)) % (config_.cutoff + 1));
}

Operator FockSpace::fermion_annihilator(int mode) const {
  Operator a = Operator::Zero(dim_, dim_);
  for (std::int64_t idx = 0; idx < dim_; ++idx) {
    if (fermion_occ(idx, mode) != 1) continue;
    int string = 0;
    for (int j = 0; j < mode; ++j) string += fermion_occ(idx, j);
    const double sign = (string % 2 == 0) ? 1.0 : -1.0;
    a(idx - fstride_[mode], idx) = sign;
  }
  return a;
}

Operator FockSpace::boson_annihilator(int mode) const {
  Operator b = Operator::Zero(dim_, dim_);
  for (std::int64_t idx = 0; idx < dim_; ++idx) {
    const int n = boson_occ(idx, mode);
    if (n == 0) continue;
    b(idx - bstride_[mode], idx) = std::sqrt(static_cast<double>(n));
  }
  return b;
}

Operator FockSpace::fermion_number(int mode) const {
  Operator n = Operator::Zero(dim_, dim_);
  for (std::int64_t idx = 0; idx < dim_; ++idx)
    n(idx, idx) = static_cast<double>(fermion_occ(idx, mode));
  return n;
}

Operator FockSpace::boson_number(int mode) const {
  Operator n = Operator::Zero(dim_, dim_);
  for (std::int64_t idx = 0; idx < dim_; ++idx)
    n(idx, idx) = static_cast<double>(boson_occ(idx, mode));
  return n;
}

Operator FockSpace::total_number() const {
  Operator n = Operator::Zero(dim_, dim_);
  for (std::int64_t idx = 0; idx < dim_; ++idx) {
    int total = 0;
    for (int i = 0; i < config_.n_fermion; ++i) total += fermion_occ(idx, i);
    for (int j = 0; j < config_.n_boson; ++j) total += boson_occ(idx, j);
    n(idx, idx) = static_cast<double>(total);
  }
  return n;
}

Operator FockSpace::safe_projector(int margin) const {
  if (margin < 0 || (config_.n_boson > 0 && margin > config_.cutoff))
    throw ConfigError("safe margin outside [0, cutoff]");
  Operator p = Operator::Zero(dim_, dim_);
  for (std::int64_t idx = 0; idx < dim_; ++idx) {
    bool safe = true;
    for (int j = 0; j < config_.n_boson; ++j)
      safe = safe && boson_occ(idx, j) <= config_.cutoff - margin;
    if (safe) p(idx, idx) = 1.0;
  }
  return p;
}

Operator FockSpace::parity() const {
  Operator p = Operator::Zero(dim_, dim_);
  for (std::int64_t idx = 0; idx < dim_; ++idx) {
    int nf = 0;
    for (int i = 0; i < config_.n_fermion; ++i) nf += fermion_occ(idx, i);
    p(idx, idx) = (nf % 2 == 0) ? 1.0 : -1.0;
  }
  return p;
}

StateVector FockSpace::basis_vector(std::int64_t index) const {
  StateVector v = StateVector::Zero(dim_);
  v(index) = 1.0;
  return v;
}

std::string FockSpace::label(std::int64_t index) const {
  const BasisState st = state_of(index);
  std::string out = "f";
  for (std::size_t i = 0; i < st.fermion_occ.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(st.fermion_occ[i]);
  }
  out += ";b";
  for (std::size_t j = 0; j < st.boson_occ.size(); ++j) {
    if (j) out += ',';
    out += std::to_string(st.boson_occ[j]);
  }
  return out;
}

FockSpace extend_with_aux_fermion(const ModeConfig& base) {
  ModeConfig ext = base;
  ext.n_fermion += 1;
  ext.max_dim = base.max_dim * 2;
  return FockSpace(ext);
}

}  // namespace superfock
