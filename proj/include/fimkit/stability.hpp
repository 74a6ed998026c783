#pragma once

// Characters of symmetric groups, decompositions of module values into
// irreducibles, representation stability and Hilbert-function fits.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fimkit/homology.hpp"

namespace fimkit {

/// chi_lambda(mu) by the Murnaghan-Nakayama rule. Throws DimensionError when |lambda| != |mu|.
long irreducible_character(const Partition& lambda, const Partition& mu);
/// chi_lambda(1^k), by the hook length formula.
long hook_length_dimension(const Partition& lambda);

struct CharacterTable {
  int k = 0;
  std::vector<Partition> irreducibles;  // rows
  std::vector<ConjugacyClass> classes;  // columns
  std::vector<std::vector<long>> values;
};

const CharacterTable& character_table(int k);

using Multiplicities = std::map<MultiPartition, int>;

/// Multiplicities of the irreducibles of kS_n in V_n. Characteristic 0 only.
Multiplicities decompose(const TruncatedModule& V, const Shape& n);
/// dim of the irreducible labelled by lambda.
long irreducible_dimension(const MultiPartition& lambda);

struct StableFamily {
  MultiPartition tail;  // lambda with lambda(t) the padded label
  int multiplicity = 0;
  int onset = 0;        // multiplicity is constant on n_i >= onset for every i
};

struct StabilityReport {
  Verdict verdict = Verdict::Inconclusive;
  int gd = -1;
  std::vector<int> N;
  std::vector<int> threshold;  // max{2 gd, N_i + 1}
  std::vector<StableFamily> families;
  std::optional<Shape> injectivity_failure;   // inside the threshold region
  std::optional<Shape> generation_failure;
  std::optional<Shape> multiplicity_failure;
  /// Smallest c with all three conditions holding whenever every n_i >= c.
  std::optional<int> empirical_onset;
  std::string reason;
};

/// `N` defaults to the thresholds of nagpal_complex(V).
StabilityReport stability_report(const TruncatedModule& V, std::optional<std::vector<int>> N = {});

struct Polynomial {
  std::vector<Scalar> coeffs;  // constant term first

  int degree() const;
  Scalar operator()(const Scalar& x) const;
  Scalar leading() const;
  std::string to_string() const;
  static Polynomial interpolate(const std::vector<Scalar>& xs, const std::vector<Scalar>& ys);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

struct HilbertFit {
  Verdict verdict = Verdict::Inconclusive;
  std::vector<Polynomial> P;
  Shape start;                    // first grid point in each direction
  std::optional<Shape> base;      // gauge point: P_i(base_i) = 1 for i >= 2
  int gd = -1;
  bool degrees_ok = true;         // deg P_i <= gd(V)
  bool residual_zero = true;      // dim V_n = prod P_i(n_i) on the stable region
  std::optional<Shape> first_mismatch;
  std::string reason;
};

HilbertFit hilbert_fit(const TruncatedModule& V, std::optional<std::vector<int>> N = {});

}  // namespace fimkit
