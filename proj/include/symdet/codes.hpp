#pragma once

// The affine code (evaluation on every matrix of rank <= t) and the
// projective code (one representative per scaling class) over S_m.

#include <vector>

#include "symdet/count.hpp"
#include "symdet/gf.hpp"
#include "symdet/quadform.hpp"
#include "symdet/symmat.hpp"

namespace symdet {

enum class Variant { Affine, Projective };

const char* to_string(Variant v);

struct CodeId {
  int q = 3;
  int m = 1;
  int t = 1;
  Variant variant = Variant::Affine;
};

/// Throws InvalidArgument unless 1 <= t <= m <= 8 and q is a supported prime.
void validate(const CodeId& id);

struct CodeParams {
  Count length = 0;
  int dimension = 0;
};

CodeParams code_params(const CodeId& id);

/// f(A) = tr(F A) = sum_{i,j} F_ij A_ij for symmetric F, A.
Fe trace_pairing(const FieldSpec& f, const SymMatrix& coeff, const SymMatrix& a);

/// Symmetric G with tr(G A) = tr(F A) for all symmetric A: G_ij = (F_ij + F_ji) / 2.
SymMatrix symmetrize(const FieldSpec& f, const SquareMatrix& raw);

/// Canonical projective representative: first non-zero packed coordinate is 1.
bool is_projective_representative(const SymMatrix& a);

/// Evaluation points in packed lexicographic order (the code's coordinate order).
std::vector<SymMatrix> evaluation_points(const FieldSpec& f, const CodeId& id,
                                         std::uint64_t budget = kDefaultBudget);

Count weight_on_points(const FieldSpec& f, const SymMatrix& coeff, const std::vector<SymMatrix>& points);

/// Hamming weight of c_F by enumeration.
Count codeword_weight_bf(const FieldSpec& f, const SymMatrix& coeff, const CodeId& id,
                         std::uint64_t budget = kDefaultBudget);

/// Generator matrix rows for the basis functionals X_ii and X_ij + X_ji in
/// packed order, evaluated at evaluation_points(id).
std::vector<std::vector<Fe>> generator_matrix(const FieldSpec& f, const CodeId& id,
                                              std::uint64_t budget = kDefaultBudget);

/// w_k^delta(r, m) for every k in 0..m, both delta classes and every r, from
/// one enumeration of S_m.
class RestrictedWeightTable {
 public:
  explicit RestrictedWeightTable(int m = 0);

  int dim() const { return m_; }
  Count restricted(int k, int delta_class, int r) const;
  /// W_k^delta(t, m) = sum_{r=1}^t w_k^delta(r, m).
  Count weight(int k, int delta_class, int t) const;

  void add(int k, int delta_class, int r, Count n);
  void merge(const RestrictedWeightTable& other);

 private:
  int m_;
  std::vector<Count> w_;
};

RestrictedWeightTable restricted_weight_table_bf(const FieldSpec& f, int m, const ScanOptions& opt = {});

/// w_k^delta(r, m) by enumeration, with delta the class representative.
Count restricted_weight_bf(const FieldSpec& f, int k, int delta_class, int r, int m,
                           std::uint64_t budget = kDefaultBudget);

struct WeightRecord {
  int k = 0;
  int delta_class = 1;
  int t = 0;
  int m = 0;
  Count weight = 0;
  std::vector<Count> restricted;  // index r = 1..t stored at r - 1
};

WeightRecord weight_record_bf(const FieldSpec& f, int k, int delta_class, int t, int m,
                              std::uint64_t budget = kDefaultBudget);

struct SpectrumClass {
  int k = 0;            // rank of the coefficient matrix
  int delta_class = 0;  // 0 for the zero word
  Count weight = 0;
  Count multiplicity = 0;
};

struct Spectrum {
  std::vector<SpectrumClass> classes;             // zero word first, then (k, +1), (k, -1)
  std::vector<std::pair<Count, Count>> weights;   // distinct weight -> multiplicity, ascending
};

/// Weights of the canonical classes by enumeration; multiplicities count the
/// coefficient matrices F in S(k, m) of each discriminant class.
Spectrum spectrum(const FieldSpec& f, const CodeId& id, const ScanOptions& opt = {});

}  // namespace symdet
