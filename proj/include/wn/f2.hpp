#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wn/tree_automorphism.hpp"

namespace wn {

// A vector in F_2^m, m <= 32. Coordinate i (1-based in formulas) is bit i-1.
// Addition is XOR.
struct F2Vec {
  int len = 0;
  std::uint32_t bits = 0;

  bool get(int i) const { return (bits >> i) & 1; }
  F2Vec operator+(const F2Vec& o) const { return {len, bits ^ o.bits}; }
  bool operator==(const F2Vec&) const = default;

  // Prints left-to-right by coordinate: "1010".
  std::string to_string() const;
  static F2Vec parse(const std::string& s);
};

// A linear subspace of F_2^m, kept as a reduced row-echelon basis with
// pivots in increasing coordinate order.
class F2Subspace {
 public:
  F2Subspace() = default;
  static F2Subspace zero(int m) { return F2Subspace(m, {}); }
  static F2Subspace full(int m);
  static F2Subspace span(int m, std::span<const std::uint32_t> rows);

  int ambient() const { return ambient_; }
  int dim() const { return int(rows_.size()); }
  const std::vector<std::uint32_t>& basis() const { return rows_; }

  bool contains(F2Vec v) const;
  // Reduces v against the basis; zero iff contained.
  std::uint32_t reduce(std::uint32_t bits) const;

  // All 2^dim member vectors; dim must be modest.
  std::vector<F2Vec> elements() const;

  bool operator==(const F2Subspace&) const = default;

  friend F2Subspace sum(const F2Subspace& a, const F2Subspace& b);
  friend F2Subspace intersect(const F2Subspace& a, const F2Subspace& b);

 private:
  F2Subspace(int m, std::vector<std::uint32_t> rows)
      : ambient_(m), rows_(std::move(rows)) {}

  int ambient_ = 0;
  std::vector<std::uint32_t> rows_;  // RREF, pivot-ordered
};

F2Subspace sum(const F2Subspace& a, const F2Subspace& b);
F2Subspace intersect(const F2Subspace& a, const F2Subspace& b);
bool contains(const F2Subspace& a, F2Vec v);

// If v in A + B, a witness pair (a, b) with a in A, b in B, a + b = v.
std::optional<std::pair<F2Vec, F2Vec>> decompose(F2Vec v, const F2Subspace& A,
                                                 const F2Subspace& B);

// Either empty or the coset offset + direction.
class F2AffineSet {
 public:
  static F2AffineSet empty_set() { return F2AffineSet(); }
  F2AffineSet(F2Vec offset, F2Subspace direction)
      : nonempty_(true), offset_(offset), dir_(std::move(direction)) {}

  bool empty() const { return !nonempty_; }
  F2Vec offset() const { return offset_; }
  const F2Subspace& direction() const { return dir_; }

  bool contains(F2Vec v) const {
    return nonempty_ && dir_.reduce((v + offset_).bits) == 0;
  }
  std::vector<F2Vec> elements() const;

 private:
  F2AffineSet() = default;
  bool nonempty_ = false;
  F2Vec offset_{};
  F2Subspace dir_{};
};

// s(v) = (v_{s^{-1}(1)}, ..., v_{s^{-1}(m)}): the coordinate-permutation
// action of s's leaf permutation. v.len must equal 2^depth(s).
F2Vec permute_coordinates(const Aut& s, F2Vec v);

// Fix(s) = {v : s(v) = v}: vectors constant on the cycles of s. Basis rows
// are the cycle indicator vectors, row-reduced. m must be 2^depth(s).
F2Subspace fix_subspace(const Aut& s, int m);

// Intersection of Fix over the set; equals the indicator span of the orbit
// partition of the generated group. Empty set gives the full space.
F2Subspace fix_subspace_of_set(std::span<const Aut> autos, int m);

// Solution set of u + t(u) = c. Nonempty solutions form a coset of Fix(t).
F2AffineSet solve_twisted(const Aut& t, F2Vec c);

}  // namespace wn
