#pragma once

// Homology H_s = Tor_s(kC/m, V) through a free resolution built inside the
// box, relative projectivity, torsion, and the complex of relative
// projectives F^0 -> ... -> F^l attached to V.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fimkit/functors.hpp"

namespace fimkit {

enum class Verdict { True, False, Inconclusive };
std::string to_string(Verdict v);
inline std::ostream& operator<<(std::ostream& os, Verdict v) { return os << to_string(v); }

struct HomologyResult {
  Box box;                     // H_s at n is exact for every n in this box
  std::vector<GradedDims> H;   // s = 0 .. s_max
  std::vector<int> hd;         // top degree of H_s, -1 when zero
  int gd = -1;                 // hd[0]
  std::vector<int> resolution_generators;  // free generators of P_s
};

/// H_0 .. H_{s_max}; `bound` restricts the computation to a sub-box.
HomologyResult homology(const TruncatedModule& V, int s_max, std::optional<Shape> bound = {});

/// True when some nonzero H_0 value sits on the outer face of the box.
bool touches_boundary(const GradedDims& dims);

struct RelativeProjectivity {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Shape> witness;  // lowest-degree object with H_1 != 0
  bool h2_consistent = true;     // never H_1 = 0 with H_2 != 0
  GradedDims h0, h1, h2;
  std::string reason;
};

/// With `check_h2` false a positive verdict skips the H_2 cross-check and leaves h2 zero.
RelativeProjectivity relative_projective_test(const TruncatedModule& V, std::optional<Shape> bound = {}, bool check_h2 = true);

struct TorsionReport {
  std::vector<GradedDims> kernels;  // K_i V on the box shrunk by o_i
  std::vector<int> td;              // td_i, -1 when K_i V = 0
  int td_max = -1;
  GradedDims torsion;               // kernel of V(rho_{n -> box})
  GradedDims torsion_closure;       // iterated closure of the K_i V
  int rounds = 0;                   // closure rounds until no new kernel appears
  Shape margin;                     // box bound minus the highest object carrying a kernel
  bool routes_agree = true;
  /// td_i(Sigma_i V) <= td_i(V) - 1, checked for each i with td_i >= 0.
  std::vector<std::optional<bool>> shift_drop;
};

TorsionReport torsion_analysis(const TruncatedModule& V);
/// td_i read from the kernels of the inclusions.
std::vector<int> torsion_degrees(const TruncatedModule& V);
/// V_T as the kernel of the maps to the top of the box.
SubmoduleResult torsion_part(const TruncatedModule& V);
QuotientResult torsion_free_part(const TruncatedModule& V);

struct NagpalComplex {
  Shape shift;                            // F^j = shift of V^j_F by this amount
  std::vector<TruncatedModule> pieces;    // V^0 = V, V^1, ...
  std::vector<TruncatedModule> F;         // F^0 .. F^l
  std::vector<GradedDims> homology;       // H^j: V_T, V^1_T, ..., one per piece
  std::vector<std::vector<int>> homology_td;
  std::vector<int> N;                     // N_i(V)
  int l = -1;                             // last index with F^l != 0
  int gd = -1;
  std::vector<int> gd_F;
  bool gd_bound_ok = true;                // gd(F^j) <= gd(V) - j
  bool length_ok = true;                  // l <= gd(V)
  bool complete = false;                  // reached a zero piece inside the box
  std::vector<Verdict> F_relative_projective;
};

/// `shift` = amount applied to every torsion-free part; searched upward from
/// zero along the diagonal when absent.
NagpalComplex nagpal_complex(const TruncatedModule& V, std::optional<Shape> shift = {});

struct ShiftedRelativeProjectivity {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<bool> predicted;  // n_i > N_i(V) for all i
  bool sufficient_ok = true;      // predicted implies relative projective
  bool consistent = true;         // relative projective exactly when predicted
};

ShiftedRelativeProjectivity shifted_relative_projectivity(const TruncatedModule& V, const Shape& n,
                                                          const std::optional<std::vector<int>>& N = {});

struct ProjectiveDimension {
  Verdict finite = Verdict::Inconclusive;
  std::string reason;
  std::vector<Shape> non_projective_tops;  // objects where H_0(V)_n is not projective over kS_n
};

ProjectiveDimension projective_dim_classifier(const TruncatedModule& V);

/// H_0(V)_n as a representation of S_n.
GroupRep top_representation(const TruncatedModule& V, const Shape& n);
/// W is projective over kS_n iff the counit kS_n (x) W -> W splits equivariantly.
bool is_projective_representation(const GroupRep& W);

}  // namespace fimkit
