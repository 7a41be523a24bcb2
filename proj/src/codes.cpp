#include "symdet/codes.hpp"

#include <map>
#include <string>

namespace symdet {

const char* to_string(Variant v) { return v == Variant::Affine ? "affine" : "projective"; }

void validate(const CodeId& id) {
  FieldSpec check(id.q);
  if (id.m < 1 || id.m > kMaxDim) throw Error(ErrorKind::InvalidArgument, "m must be in 1..8");
  if (id.t < 1 || id.t > id.m) throw Error(ErrorKind::InvalidArgument, "t must be in 1..m");
}

CodeParams code_params(const CodeId& id) {
  validate(id);
  CodeParams p;
  p.dimension = packed_size(id.m);
  p.length = id.variant == Variant::Affine ? cone_size(id.q, id.t, id.m) : projective_size(id.q, id.t, id.m);
  return p;
}

Fe trace_pairing(const FieldSpec& f, const SymMatrix& coeff, const SymMatrix& a) {
  if (coeff.dim() != a.dim()) throw Error(ErrorKind::DimensionMismatch, "trace pairing");
  const int m = a.dim();
  Fe diag{0};
  Fe off{0};
  for (int i = 0; i < m; ++i) {
    diag = f.add(diag, f.mul(coeff(i, i), a(i, i)));
    for (int j = i + 1; j < m; ++j) off = f.add(off, f.mul(coeff(i, j), a(i, j)));
  }
  return f.add(diag, f.add(off, off));
}

SymMatrix symmetrize(const FieldSpec& f, const SquareMatrix& raw) {
  const int m = raw.dim();
  const Fe half = f.inv(Fe{2});
  SymMatrix g(m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) g.set(i, j, f.mul(half, f.add(raw(i, j), raw(j, i))));
  return g;
}

bool is_projective_representative(const SymMatrix& a) {
  for (auto v : a.packed_view())
    if (v != 0) return v == 1;
  return false;
}

std::vector<SymMatrix> evaluation_points(const FieldSpec& f, const CodeId& id, std::uint64_t budget) {
  std::vector<SymMatrix> pts;
  for_each_matrix(
      f, id.m, EnumMode::rank_le(id.t),
      [&](const SymMatrix& a) {
        if (id.variant == Variant::Affine || is_projective_representative(a)) pts.push_back(a);
      },
      budget);
  return pts;
}

Count weight_on_points(const FieldSpec& f, const SymMatrix& coeff, const std::vector<SymMatrix>& points) {
  Count w = 0;
  for (const auto& a : points)
    if (trace_pairing(f, coeff, a).value != 0) ++w;
  return w;
}

Count codeword_weight_bf(const FieldSpec& f, const SymMatrix& coeff, const CodeId& id, std::uint64_t budget) {
  if (coeff.dim() != id.m) throw Error(ErrorKind::DimensionMismatch, "coefficient matrix size");
  Count w = 0;
  for_each_matrix(
      f, id.m, EnumMode::rank_le(id.t),
      [&](const SymMatrix& a) {
        if (id.variant == Variant::Projective && !is_projective_representative(a)) return;
        if (trace_pairing(f, coeff, a).value != 0) ++w;
      },
      budget);
  return w;
}

std::vector<std::vector<Fe>> generator_matrix(const FieldSpec& f, const CodeId& id, std::uint64_t budget) {
  const auto pts = evaluation_points(f, id, budget);
  std::vector<std::vector<Fe>> rows;
  for (int i = 0; i < id.m; ++i)
    for (int j = i; j < id.m; ++j) {
      std::vector<Fe> row;
      row.reserve(pts.size());
      for (const auto& a : pts) row.push_back(i == j ? a(i, i) : f.add(a(i, j), a(i, j)));
      rows.push_back(std::move(row));
    }
  return rows;
}

RestrictedWeightTable::RestrictedWeightTable(int m) : m_(m), w_(std::size_t((m + 1) * 2 * (m + 1)), 0) {}

Count RestrictedWeightTable::restricted(int k, int delta_class, int r) const {
  if (k < 0 || k > m_ || r < 0 || r > m_) return 0;
  return w_[std::size_t((k * 2 + class_index(delta_class)) * (m_ + 1) + r)];
}

Count RestrictedWeightTable::weight(int k, int delta_class, int t) const {
  Count total = 0;
  for (int r = 1; r <= t; ++r) total += restricted(k, delta_class, r);
  return total;
}

void RestrictedWeightTable::add(int k, int delta_class, int r, Count n) {
  w_[std::size_t((k * 2 + class_index(delta_class)) * (m_ + 1) + r)] += n;
}

void RestrictedWeightTable::merge(const RestrictedWeightTable& o) {
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] += o.w_[i];
}

RestrictedWeightTable restricted_weight_table_bf(const FieldSpec& f, int m, const ScanOptions& opt) {
  const Fe deltas[2] = {Fe{1}, f.canonical_nonsquare()};
  const int classes[2] = {1, -1};
  return scan_reduce(f, m, opt, RestrictedWeightTable(m), [&](RestrictedWeightTable& acc, const SymMatrix& a) {
    const int r = rank_disc(f, a).rank;
    Fe prefix{0};
    for (int k = 1; k <= m; ++k) {
      const Fe d = a(k - 1, k - 1);
      for (int c = 0; c < 2; ++c)
        if (f.add(prefix, f.mul(deltas[c], d)).value != 0) acc.add(k, classes[c], r, 1);
      prefix = f.add(prefix, d);
    }
  });
}

Count restricted_weight_bf(const FieldSpec& f, int k, int delta_class, int r, int m, std::uint64_t budget) {
  if (k < 0 || k > m) throw Error(ErrorKind::InvalidArgument, "k outside 0..m");
  const Fe delta = f.class_representative(delta_class);
  Count w = 0;
  for_each_matrix(
      f, m, EnumMode::rank_eq(r),
      [&](const SymMatrix& a) {
        if (diagonal_functional(f, k, delta, a).value != 0) ++w;
      },
      budget);
  return w;
}

WeightRecord weight_record_bf(const FieldSpec& f, int k, int delta_class, int t, int m, std::uint64_t budget) {
  const auto table = restricted_weight_table_bf(f, m, ScanOptions{budget, 1});
  WeightRecord rec{k, delta_class, t, m, table.weight(k, delta_class, t), {}};
  for (int r = 1; r <= t; ++r) rec.restricted.push_back(table.restricted(k, delta_class, r));
  return rec;
}

Spectrum spectrum(const FieldSpec& f, const CodeId& id, const ScanOptions& opt) {
  validate(id);
  const auto table = restricted_weight_table_bf(f, id.m, opt);
  const auto counts = enumerate_census(f, id.m, opt);
  const Count scale = id.variant == Variant::Affine ? 1 : Count(f.q() - 1);

  Spectrum out;
  out.classes.push_back({0, 0, 0, 1});
  for (int k = 1; k <= id.m; ++k)
    for (int cls : {1, -1}) {
      const Count mult = (cls > 0 ? counts.square_disc : counts.nonsquare_disc)[std::size_t(k)];
      out.classes.push_back({k, cls, exact_div(table.weight(k, cls, id.t), scale), mult});
    }
  std::map<Count, Count> agg;
  for (const auto& c : out.classes)
    if (c.multiplicity > 0) agg[c.weight] += c.multiplicity;
  out.weights.assign(agg.begin(), agg.end());
  return out;
}

}  // namespace symdet
