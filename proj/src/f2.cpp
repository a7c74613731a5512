#include "wn/f2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace wn {

std::string F2Vec::to_string() const {
  std::string s(size_t(len), '0');
  for (int i = 0; i < len; ++i)
    if (get(i)) s[size_t(i)] = '1';
  return s;
}

F2Vec F2Vec::parse(const std::string& s) {
  if (s.empty() || s.size() > 32)
    throw std::invalid_argument("bad bit string length");
  F2Vec v{int(s.size()), 0};
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      v.bits |= std::uint32_t(1) << i;
    else if (s[i] != '0')
      throw std::invalid_argument("bit string must be 0s and 1s");
  }
  return v;
}

static void require_len(int a, int b) {
  if (a != b) throw std::invalid_argument("F2 ambient length mismatch");
}

// In-place RREF on 64-bit rows (lower 32 bits are the ambient coordinates in
// plain use; Zassenhaus and decompose use the upper half as tracking).
static void rref(std::vector<std::uint64_t>& rows) {
  size_t r = 0;
  for (int col = 0; col < 64 && r < rows.size(); ++col) {
    std::uint64_t mask = std::uint64_t(1) << col;
    size_t pivot = r;
    while (pivot < rows.size() && !(rows[pivot] & mask)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    for (size_t i = 0; i < rows.size(); ++i)
      if (i != r && (rows[i] & mask)) rows[i] ^= rows[r];
    ++r;
  }
  rows.resize(r);
  while (!rows.empty() && rows.back() == 0) rows.pop_back();
}

F2Subspace F2Subspace::full(int m) {
  std::vector<std::uint32_t> rows;
  for (int i = 0; i < m; ++i) rows.push_back(std::uint32_t(1) << i);
  return F2Subspace(m, std::move(rows));
}

F2Subspace F2Subspace::span(int m, std::span<const std::uint32_t> gens) {
  std::vector<std::uint64_t> rows(gens.begin(), gens.end());
  rref(rows);
  std::vector<std::uint32_t> out(rows.begin(), rows.end());
  return F2Subspace(m, std::move(out));
}

std::uint32_t F2Subspace::reduce(std::uint32_t bits) const {
  for (std::uint32_t row : rows_) {
    std::uint32_t pivot = row & (~row + 1);  // lowest set bit
    if (bits & pivot) bits ^= row;
  }
  return bits;
}

bool F2Subspace::contains(F2Vec v) const {
  require_len(v.len, ambient_);
  return reduce(v.bits) == 0;
}

std::vector<F2Vec> F2Subspace::elements() const {
  if (dim() > 25) throw std::invalid_argument("subspace too large to enumerate");
  std::vector<F2Vec> out;
  out.reserve(size_t(1) << dim());
  for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << dim()); ++mask) {
    std::uint32_t bits = 0;
    for (int i = 0; i < dim(); ++i)
      if ((mask >> i) & 1) bits ^= rows_[size_t(i)];
    out.push_back({ambient_, bits});
  }
  return out;
}

F2Subspace sum(const F2Subspace& a, const F2Subspace& b) {
  require_len(a.ambient_, b.ambient_);
  std::vector<std::uint64_t> rows(a.rows_.begin(), a.rows_.end());
  rows.insert(rows.end(), b.rows_.begin(), b.rows_.end());
  rref(rows);
  std::vector<std::uint32_t> out(rows.begin(), rows.end());
  return F2Subspace(a.ambient_, std::move(out));
}

F2Subspace intersect(const F2Subspace& a, const F2Subspace& b) {
  require_len(a.ambient_, b.ambient_);
  // Zassenhaus: rows [x | x] for x in A, [y | 0] for y in B. After
  // elimination, rows with zero left half carry an intersection basis in the
  // right half.
  std::vector<std::uint64_t> rows;
  for (std::uint32_t x : a.rows_)
    rows.push_back(std::uint64_t(x) | (std::uint64_t(x) << 32));
  for (std::uint32_t y : b.rows_) rows.push_back(std::uint64_t(y));
  rref(rows);
  std::vector<std::uint32_t> inter;
  for (std::uint64_t r : rows)
    if ((r & 0xffffffffULL) == 0 && (r >> 32) != 0)
      inter.push_back(std::uint32_t(r >> 32));
  return F2Subspace::span(a.ambient_, inter);
}

bool contains(const F2Subspace& a, F2Vec v) { return a.contains(v); }

std::optional<std::pair<F2Vec, F2Vec>> decompose(F2Vec v, const F2Subspace& A,
                                                 const F2Subspace& B) {
  require_len(v.len, A.ambient());
  require_len(v.len, B.ambient());
  if (A.dim() + B.dim() > 32)
    throw std::invalid_argument("decompose: too many generators to track");
  // Track which generators were combined in the upper 32 bits.
  std::vector<std::uint64_t> rows;
  int k = 0;
  for (std::uint32_t x : A.basis())
    rows.push_back(std::uint64_t(x) | (std::uint64_t(1) << (32 + k++)));
  for (std::uint32_t y : B.basis())
    rows.push_back(std::uint64_t(y) | (std::uint64_t(1) << (32 + k++)));
  // Reduce v by rows whose pivot it hits.
  rref(rows);
  std::uint64_t acc = std::uint64_t(v.bits);
  for (std::uint64_t row : rows) {
    std::uint64_t pivot = (row & 0xffffffffULL) & (~(row & 0xffffffffULL) + 1);
    if (pivot && (acc & pivot)) acc ^= row;
  }
  if (acc & 0xffffffffULL) return std::nullopt;
  std::uint32_t coeffs = std::uint32_t(acc >> 32);
  std::uint32_t abits = 0, bbits = 0;
  int idx = 0;
  for (std::uint32_t x : A.basis()) {
    if ((coeffs >> idx) & 1) abits ^= x;
    ++idx;
  }
  for (std::uint32_t y : B.basis()) {
    if ((coeffs >> idx) & 1) bbits ^= y;
    ++idx;
  }
  return std::make_pair(F2Vec{v.len, abits}, F2Vec{v.len, bbits});
}

std::vector<F2Vec> F2AffineSet::elements() const {
  if (empty()) return {};
  auto base = dir_.elements();
  for (auto& e : base) e = e + offset_;
  return base;
}

F2Vec permute_coordinates(const Aut& s, F2Vec v) {
  if (v.len != s.degree())
    throw std::invalid_argument("vector length does not match 2^depth");
  F2Vec out{v.len, 0};
  for (int i = 0; i < v.len; ++i)
    if (v.get(i)) out.bits |= std::uint32_t(1) << s.apply(i);
  return out;
}

F2Subspace fix_subspace(const Aut& s, int m) {
  return fix_subspace_of_set(std::span<const Aut>(&s, 1), m);
}

F2Subspace fix_subspace_of_set(std::span<const Aut> autos, int m) {
  for (const Aut& a : autos)
    if (a.degree() != m)
      throw std::invalid_argument("fix subspace: degree mismatch");
  // Orbit partition of {0..m-1} under the generated group; indicators span Fix.
  std::vector<int> parent(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) parent[size_t(i)] = i;
  auto find = [&](int x) {
    while (parent[size_t(x)] != x) {
      parent[size_t(x)] = parent[size_t(parent[size_t(x)])];
      x = parent[size_t(x)];
    }
    return x;
  };
  for (const Aut& a : autos)
    for (int i = 0; i < m; ++i) {
      int ra = find(i), rb = find(a.apply(i));
      if (ra != rb) parent[size_t(ra)] = rb;
    }
  std::vector<std::uint32_t> indicators;
  for (int root = 0; root < m; ++root) {
    if (find(root) != root) continue;
    std::uint32_t row = 0;
    for (int i = 0; i < m; ++i)
      if (find(i) == root) row |= std::uint32_t(1) << i;
    indicators.push_back(row);
  }
  return F2Subspace::span(m, indicators);
}

F2AffineSet solve_twisted(const Aut& t, F2Vec c) {
  const int m = t.degree();
  if (c.len != m)
    throw std::invalid_argument("solve_twisted: length must be 2^depth");
  // u + t(u) = c is linear; image of (I + t) is spanned by e_i + e_{t(i)}.
  // Row-reduce with tracking to pull back a particular solution.
  std::vector<std::uint64_t> rows;
  for (int i = 0; i < m; ++i) {
    std::uint32_t img = (std::uint32_t(1) << i) ^ (std::uint32_t(1) << t.apply(i));
    rows.push_back(std::uint64_t(img) | (std::uint64_t(1) << (32 + i)));
  }
  rref(rows);
  std::uint64_t acc = std::uint64_t(c.bits);
  for (std::uint64_t row : rows) {
    std::uint64_t pivot = (row & 0xffffffffULL) & (~(row & 0xffffffffULL) + 1);
    if (pivot && (acc & pivot)) acc ^= row;
  }
  if (acc & 0xffffffffULL) return F2AffineSet::empty_set();
  // acc's upper half names coordinates i whose generators e_i + e_{t(i)}
  // sum to c; u = sum of those e_i works since (I+t)e_i = e_i + e_{t(i)}.
  F2Vec u{m, std::uint32_t(acc >> 32)};
  return F2AffineSet(u, fix_subspace(t, m));
}

}  // namespace wn
