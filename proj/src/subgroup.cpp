#include "wn/subgroup.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace wn {

Subgroup Subgroup::trivial(int depth) {
  return Subgroup(depth, {}, {Aut::identity(depth)});
}

Subgroup Subgroup::closure(int depth, std::vector<Aut> gens, std::size_t bound) {
  for (const Aut& g : gens)
    if (g.depth() != depth) throw DepthMismatch();
  std::unordered_set<Aut, AutHash> set;
  std::vector<Aut> queue;
  Aut id = Aut::identity(depth);
  set.insert(id);
  queue.push_back(id);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    Aut x = queue[qi];
    for (const Aut& g : gens) {
      Aut y = x * g;
      if (set.insert(y).second) {
        if (set.size() > bound)
          throw std::length_error("subgroup closure exceeds configured bound");
        queue.push_back(y);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return Subgroup(depth, std::move(gens), std::move(queue));
}

Subgroup Subgroup::from_sorted_elements(int depth, std::vector<Aut> elems,
                                        std::vector<Aut> gens) {
  return Subgroup(depth, std::move(gens), std::move(elems));
}

bool Subgroup::contains(const Aut& a) const {
  return std::binary_search(elems_.begin(), elems_.end(), a);
}

bool Subgroup::is_subgroup_of(const Subgroup& g) const {
  if (depth_ != g.depth_ || size() > g.size()) return false;
  return std::includes(g.elems_.begin(), g.elems_.end(), elems_.begin(),
                       elems_.end());
}

bool Subgroup::is_cyclic() const {
  for (const Aut& a : elems_)
    if (std::size_t(a.order()) == size()) return true;
  return false;
}

bool Subgroup::has_transitive_element() const {
  for (const Aut& a : elems_)
    if (a.is_transitive()) return true;
  return false;
}

std::string Subgroup::key() const {
  std::string k;
  k.reserve(1 + elems_.size() * std::size_t(1 << depth_));
  k.push_back(char(depth_));
  for (const Aut& a : elems_)
    for (int i = 0; i < a.degree(); ++i) k.push_back(char(a.apply(i)));
  return k;
}

FrattiniData frattini(const Subgroup& g) {
  std::unordered_set<Aut, AutHash> gens;
  const auto& e = g.elements();
  for (const Aut& x : e) gens.insert(x * x);
  for (const Aut& x : e) {
    Aut xi = x.inverse();
    for (const Aut& y : e) gens.insert(xi * y.inverse() * x * y);
  }
  gens.erase(Aut::identity(g.depth()));
  Subgroup phi = Subgroup::closure(g.depth(),
                                   std::vector<Aut>(gens.begin(), gens.end()));
  int rank = 0;
  for (std::size_t q = g.size() / phi.size(); q > 1; q >>= 1) ++rank;
  return {std::move(phi), rank};
}

std::vector<Subgroup> maximal_subgroups(const Subgroup& g) {
  if (g.size() < 2)
    throw std::invalid_argument("trivial group has no maximal subgroups");
  FrattiniData fr = frattini(g);
  const int m = fr.rank;
  // Greedy basis of the elementary abelian quotient G/Phi(G).
  std::vector<Aut> basis;
  Subgroup grown = fr.phi;
  for (const Aut& e : g.elements()) {
    if (grown.contains(e)) continue;
    basis.push_back(e);
    std::vector<Aut> gg = grown.generators();
    gg.push_back(e);
    grown = Subgroup::closure(g.depth(), std::move(gg));
    if (grown.size() == g.size()) break;
  }
  // Coordinates of every element: which product of basis elements lands in
  // the same Phi-coset.
  std::unordered_map<Aut, std::uint32_t, AutHash> coord;
  for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << m); ++mask) {
    Aut rep = Aut::identity(g.depth());
    for (int i = 0; i < m; ++i)
      if ((mask >> i) & 1) rep = rep * basis[std::size_t(i)];
    for (const Aut& p : fr.phi.elements()) coord[rep * p] = mask;
  }
  std::vector<Subgroup> out;
  for (std::uint32_t dual = 1; dual < (std::uint32_t(1) << m); ++dual) {
    std::vector<Aut> elems;
    for (const Aut& e : g.elements())
      if (std::popcount(coord.at(e) & dual) % 2 == 0) elems.push_back(e);
    // Generators: lifts of a hyperplane basis, plus Phi's generators.
    std::vector<Aut> gens = fr.phi.generators();
    for (int i = 0; i < m; ++i) {
      std::uint32_t w = std::uint32_t(1) << i;
      if (std::popcount(w & dual) % 2 == 0) {
        gens.push_back(basis[std::size_t(i)]);
      } else {
        // pair it with another odd coordinate to stay inside the hyperplane
        for (int j = i + 1; j < m; ++j)
          if (std::popcount((std::uint32_t(1) << j) & dual) % 2 == 1) {
            gens.push_back(basis[std::size_t(i)] * basis[std::size_t(j)]);
            break;
          }
      }
    }
    out.push_back(Subgroup::from_sorted_elements(g.depth(), std::move(elems),
                                                 std::move(gens)));
  }
  return out;
}

int min_generator_count(const Subgroup& g) {
  if (g.size() == 1) return 0;
  if (g.size() > 64)
    throw std::invalid_argument("min_generator_count capped at order 64");
  // BFS over subgroups of g; depth = number of generators used so far.
  std::unordered_set<std::string> seen;
  std::deque<std::pair<Subgroup, int>> queue;
  Subgroup triv = Subgroup::trivial(g.depth());
  seen.insert(triv.key());
  queue.emplace_back(triv, 0);
  while (!queue.empty()) {
    auto [s, d] = queue.front();
    queue.pop_front();
    if (s.size() == g.size()) return d;
    for (const Aut& e : g.elements()) {
      if (s.contains(e)) continue;
      std::vector<Aut> gens = s.generators();
      gens.push_back(e);
      Subgroup t = Subgroup::closure(g.depth(), std::move(gens));
      if (seen.insert(t.key()).second) queue.emplace_back(std::move(t), d + 1);
    }
  }
  throw std::logic_error("unreachable: full group not found");
}

Subgroup intersect_with_kernel(const Subgroup& g) {
  std::vector<Aut> elems, gens;
  for (const Aut& e : g.elements())
    if (e.is_in_kernel()) {
      elems.push_back(e);
      if (!e.is_identity()) gens.push_back(e);
    }
  return Subgroup::from_sorted_elements(g.depth(), std::move(elems),
                                        std::move(gens));
}

bool has_trivial_kernel_intersection(const Subgroup& g) {
  for (const Aut& e : g.elements())
    if (e.is_in_kernel() && !e.is_identity()) return false;
  return true;
}

Subgroup kernel_subgroup(int depth) {
  if (depth < 1) throw std::invalid_argument("kernel needs depth >= 1");
  int half = 1 << (depth - 1);
  std::vector<Aut> elems, gens;
  for (std::uint32_t u = 0; u < (std::uint32_t(1) << half); ++u)
    elems.push_back(Aut::from_kernel_vector(depth, u));
  for (int j = 0; j < half; ++j)
    gens.push_back(Aut::from_kernel_vector(depth, std::uint32_t(1) << j));
  std::sort(elems.begin(), elems.end());
  return Subgroup::from_sorted_elements(depth, std::move(elems), std::move(gens));
}

F2Subspace centralizer_in_kernel_subspace(int depth, std::span<const Aut> elems) {
  std::vector<Aut> projections;
  for (const Aut& e : elems) {
    if (e.depth() != depth) throw DepthMismatch();
    projections.push_back(e.project());
  }
  return fix_subspace_of_set(projections, 1 << (depth - 1));
}

Subgroup centralizer_in_kernel(int depth, std::span<const Aut> elems) {
  F2Subspace fix = centralizer_in_kernel_subspace(depth, elems);
  std::vector<Aut> members, gens;
  for (F2Vec u : fix.elements())
    members.push_back(Aut::from_kernel_vector(depth, u.bits));
  for (std::uint32_t row : fix.basis())
    gens.push_back(Aut::from_kernel_vector(depth, row));
  std::sort(members.begin(), members.end());
  return Subgroup::from_sorted_elements(depth, std::move(members),
                                        std::move(gens));
}

Subgroup centralizer_in_kernel(const Subgroup& g) {
  return centralizer_in_kernel(g.depth(), g.elements());
}

Subgroup project_subgroup(const Subgroup& g) {
  std::vector<Aut> elems, gens;
  for (const Aut& e : g.elements()) elems.push_back(e.project());
  for (const Aut& e : g.generators()) gens.push_back(e.project());
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  return Subgroup::from_sorted_elements(g.depth() - 1, std::move(elems),
                                        std::move(gens));
}

Subgroup conjugate_subgroup(const Subgroup& g, const Aut& c) {
  std::vector<Aut> elems, gens;
  for (const Aut& e : g.elements()) elems.push_back(e.conjugated_by(c));
  for (const Aut& e : g.generators()) gens.push_back(e.conjugated_by(c));
  std::sort(elems.begin(), elems.end());
  return Subgroup::from_sorted_elements(g.depth(), std::move(elems),
                                        std::move(gens));
}

Subgroup random_subgroup(int n, int max_gens, std::uint64_t seed) {
  if (max_gens < 1) throw std::invalid_argument("max_gens must be >= 1");
  std::mt19937_64 rng(seed);
  int count = 1 + int(rng() % std::uint64_t(max_gens));
  std::vector<Aut> gens;
  const int nbits = (1 << n) - 1;
  for (int k = 0; k < count; ++k) {
    std::vector<bool> bits(static_cast<std::size_t>(nbits));
    for (int i = 0; i < nbits; ++i) bits[std::size_t(i)] = rng() & 1;
    gens.push_back(Aut::from_portrait(n, bits));
  }
  return Subgroup::closure(n, std::move(gens));
}

// Shared extension loop: every subgroup of `universe`, each exactly once.
static std::vector<Subgroup> subgroups_within(const Subgroup& universe) {
  const int depth = universe.depth();
  std::vector<Subgroup> out;
  std::unordered_set<std::string> seen;
  Subgroup triv = Subgroup::trivial(depth);
  seen.insert(triv.key());
  out.push_back(std::move(triv));
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Subgroup s = out[i];  // copy: out may reallocate below
    // One candidate per right coset of s: <s, g> = <s, xg> for x in s.
    std::unordered_set<Aut, AutHash> covered(s.elements().begin(),
                                             s.elements().end());
    for (const Aut& g : universe.elements()) {
      if (covered.count(g)) continue;
      for (const Aut& x : s.elements()) covered.insert(x * g);
      std::vector<Aut> gens = s.generators();
      gens.push_back(g);
      Subgroup t = Subgroup::closure(depth, std::move(gens));
      if (seen.insert(t.key()).second) out.push_back(std::move(t));
    }
  }
  return out;
}

std::vector<Subgroup> enumerate_all_subgroups(int n) {
  if (n < 1 || n > 3)
    throw std::invalid_argument("exhaustive subgroup enumeration needs n <= 3");
  std::vector<Aut> gens;
  for (int i = 1; i <= n; ++i) gens.push_back(Aut::standard_generator(i, n));
  return subgroups_within(Subgroup::closure(n, std::move(gens)));
}

std::vector<Subgroup> subgroups_of(const Subgroup& g) {
  return subgroups_within(g);
}

}  // namespace wn
