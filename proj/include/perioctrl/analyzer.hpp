#pragma once

#include <optional>
#include <string>
#include <vector>

#include "perioctrl/polymatrix.hpp"
#include "perioctrl/smith.hpp"

namespace perioctrl {

/// A torsion certificate: a row outside the row module of M(2*pi*i*v, tau)
/// that a nonzero polynomial multiplies back into it.
struct TorsionWitness {
  std::vector<UniPoly> row;
  UniPoly annihilator;
};

struct ControllabilityVerdict {
  Frequency frequency;
  std::size_t generic_rank = 0;
  std::vector<UniPoly> invariant_factors;
  bool constant_rank = false;
  bool torsion_free = false;
  bool controllable = false;
  std::optional<UniPoly> failure_factor;
  std::optional<TorsionWitness> torsion_witness;
};

struct BoxReport {
  FrequencyLattice lattice;
  long box_radius = 0;
  std::vector<ControllabilityVerdict> verdicts;
  bool overall_controllable_on_box = false;
};

struct ConstantRankResult {
  bool constant = false;
  std::size_t rank = 0;
  UniPoly gcd_of_max_minors;
};

struct TorsionResult {
  bool torsion_free = false;
  std::optional<TorsionWitness> witness;
  std::vector<UniPoly> invariant_factors;
  std::size_t rank = 0;
};

/// Rank over F(tau) by fraction-field row reduction, plus the monic gcd of
/// all r x r minors; the rank is constant over t iff that gcd is a unit.
ConstantRankResult constant_rank_test(const UniPolyMatrix& Mv);

/// Torsion-freeness of F[tau]^{1xn} / <Mv> via the invariant factors; emits
/// a witness row and annihilator when torsion exists.
TorsionResult torsion_test(const UniPolyMatrix& Mv);

/// Exact membership of a row vector in the row module generated by M.
bool in_row_module(const std::vector<UniPoly>& row, const UniPolyMatrix& M);

/// Runs both decision paths at one frequency and checks they agree; a
/// disagreement is an internal error, never a verdict.
ControllabilityVerdict analyze_mode(const MultiPolyMatrix& M, const Frequency& f);

/// All modes with max-norm at most B, verdicts in lexicographic mode order.
BoxReport analyze_box(const MultiPolyMatrix& M, const FrequencyLattice& L, long B);
BoxReport analyze_box_serial(const MultiPolyMatrix& M, const FrequencyLattice& L, long B);

struct GenericReport {
  std::size_t generic_rank = 0;
  std::string minor_gcd;  // monic-in-t string, possibly a quotient form
  bool gcd_constant_in_tau = false;
  std::string exceptional_candidates;
};

/// Screening pass with v1..vd held as indeterminates: generic rank over the
/// enlarged field and the gcd of the full-size minors. Not a decision for
/// individual frequencies.
GenericReport generic_frequency_analysis(const MultiPolyMatrix& M);

}  // namespace perioctrl
