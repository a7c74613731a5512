#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wn/f2.hpp"
#include "wn/tree_automorphism.hpp"

namespace wn {

inline constexpr std::size_t kDefaultClosureBound = std::size_t(1) << 20;

// A finite subgroup of W_n: generators plus the fully enumerated element set.
// Elements are kept sorted, which is the canonical identity used for
// equality, hashing and dedup. Immutable after construction.
class Subgroup {
 public:
  static Subgroup trivial(int depth);
  static Subgroup closure(int depth, std::vector<Aut> gens,
                          std::size_t bound = kDefaultClosureBound);
  // elems must already be closed and sorted; used by algorithms that build
  // subgroups from known element sets.
  static Subgroup from_sorted_elements(int depth, std::vector<Aut> elems,
                                       std::vector<Aut> gens);

  int depth() const { return depth_; }
  std::size_t size() const { return elems_.size(); }
  const std::vector<Aut>& generators() const { return gens_; }
  const std::vector<Aut>& elements() const { return elems_; }

  bool contains(const Aut& a) const;
  bool is_subgroup_of(const Subgroup& g) const;
  bool is_cyclic() const;
  bool has_transitive_element() const;

  bool operator==(const Subgroup& o) const {
    return depth_ == o.depth_ && elems_ == o.elems_;
  }
  // Canonical byte key over the sorted element set.
  std::string key() const;

 private:
  Subgroup(int depth, std::vector<Aut> gens, std::vector<Aut> elems)
      : depth_(depth), gens_(std::move(gens)), elems_(std::move(elems)) {}

  int depth_;
  std::vector<Aut> gens_;
  std::vector<Aut> elems_;
};

struct FrattiniData {
  Subgroup phi;
  int rank;  // m(G) with |G| / |phi| = 2^m(G)
};

// Phi(G) = closure of squares and commutators of G (a 2-group).
FrattiniData frattini(const Subgroup& g);

// The index-2 subgroups: preimages of the hyperplanes of G/Phi(G).
std::vector<Subgroup> maximal_subgroups(const Subgroup& g);

// Burnside rank by direct search over generating subsets. |g| <= 64.
int min_generator_count(const Subgroup& g);

Subgroup intersect_with_kernel(const Subgroup& g);
bool has_trivial_kernel_intersection(const Subgroup& g);

// All of K_n as a subgroup of W_n.
Subgroup kernel_subgroup(int depth);

// C_{K_n}(S) via Fix of the projections; the returned subspace holds the
// vectors u with (u, 1) in the centralizer.
F2Subspace centralizer_in_kernel_subspace(int depth, std::span<const Aut> elems);
Subgroup centralizer_in_kernel(int depth, std::span<const Aut> elems);
Subgroup centralizer_in_kernel(const Subgroup& g);

Subgroup project_subgroup(const Subgroup& g);
Subgroup conjugate_subgroup(const Subgroup& g, const Aut& c);

// Deterministic per seed; generator count uniform in {1..max_gens},
// generators uniform over W_n via random portraits.
Subgroup random_subgroup(int n, int max_gens, std::uint64_t seed);

// Every subgroup of W_n exactly once, by incremental extension. n <= 3.
std::vector<Subgroup> enumerate_all_subgroups(int n);

// Every subgroup of g exactly once.
std::vector<Subgroup> subgroups_of(const Subgroup& g);

}  // namespace wn
