#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "superfock/mode_config.hpp"
#include "superfock/types.hpp"

namespace superfock {

/// Occupation tuple of one basis vector.
struct BasisState {
  std::vector<int> fermion_occ;  ///< bits, one per fermionic mode
  std::vector<int> boson_occ;    ///< 0..cutoff, one per bosonic mode
};

/// Truncated Fock space with a fixed, documented basis enumeration:
/// basis states are ordered lexicographically by the occupation tuple
/// (n_f1, ..., n_fF, n_b1, ..., n_bB), so the index is the mixed-radix
/// value of the digits with n_f1 most significant and n_bB fastest.
/// See docs/basis.md.
class FockSpace {
 public:
  explicit FockSpace(ModeConfig config);

  const ModeConfig& config() const { return config_; }
  std::int64_t dim() const { return dim_; }

  std::vector<BasisState> enumerate_basis() const;
  BasisState state_of(std::int64_t index) const;
  std::int64_t index_of(const BasisState& state) const;

  int fermion_occ(std::int64_t index, int mode) const;
  int boson_occ(std::int64_t index, int mode) const;

  /// Annihilator a_i with the Jordan-Wigner sign string over
  /// lower-indexed fermionic modes.
  Operator fermion_annihilator(int mode) const;
  /// Truncated annihilator b_j: the raising adjoint kills occupation=cutoff.
  Operator boson_annihilator(int mode) const;

  Operator fermion_number(int mode) const;
  Operator boson_number(int mode) const;
  /// Unweighted total number operator sum_i N_fi + sum_j N_bj.
  Operator total_number() const;

  /// Diagonal projector onto every boson occupation <= cutoff - margin.
  Operator safe_projector(int margin) const;
  Operator safe_projector() const { return safe_projector(config_.safe_margin); }

  /// Fermion parity (-1)^{N_f}.
  Operator parity() const;

  Operator identity() const { return Operator::Identity(dim_, dim_); }
  StateVector basis_vector(std::int64_t index) const;
  std::int64_t vacuum_index() const { return 0; }

  /// Deterministic human-readable tag, e.g. "f0,1;b3,0".
  std::string label(std::int64_t index) const;

 private:
  ModeConfig config_;
  std::int64_t dim_;
  std::vector<std::int64_t> fstride_;
  std::vector<std::int64_t> bstride_;
};

/// Same modes plus one auxiliary fermionic slot appended after the real
/// fermions; hosts the theta representations of the graded and Clifford
/// extensions.
FockSpace extend_with_aux_fermion(const ModeConfig& base);

}  // namespace superfock
