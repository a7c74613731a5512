#include "wn/conjugacy.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace wn {

std::vector<F2AffineSet> elementwise_witnesses(const Aut& h, const Subgroup& G) {
  if (h.depth() != G.depth()) throw DepthMismatch();
  const int half = h.degree() / 2;
  Aut t = h.project();
  F2Vec w{half, h.kernel_vector()};
  std::vector<F2AffineSet> out;
  for (const Aut& g : G.elements()) {
    if (!(g.project() == t)) continue;
    F2Vec c = w + F2Vec{half, g.kernel_vector()};
    F2AffineSet sol = solve_twisted(t, c);
    if (!sol.empty()) out.push_back(std::move(sol));
  }
  return out;
}

ConjugacyCertificate is_elementwise_conjugate(const Subgroup& H,
                                              const Subgroup& G) {
  if (H.depth() != G.depth()) throw DepthMismatch();
  const int half = (1 << H.depth()) / 2;
  ConjugacyCertificate cert;
  cert.mode = ConjMode::kElementwise;
  cert.verdict = true;

  // h = (w, t) has a witness iff some g = (w', t) in G gives a solvable
  // u + t(u) = w + w', i.e. w + w' lies in the image of u -> u + t(u).
  // Bucket G by projection and keep each bucket reduced modulo that image,
  // making the decision O(|H| + |G|) subspace reductions.
  std::unordered_map<Aut, std::vector<std::uint32_t>, AutHash> g_bucket;
  for (const Aut& g : G.elements())
    g_bucket[g.project()].push_back(g.kernel_vector());

  struct Residues {
    F2Subspace image;  // of u -> u + t(u)
    std::unordered_map<std::uint32_t, std::uint32_t> rep;  // residue -> w'
  };
  std::unordered_map<Aut, Residues, AutHash> cache;

  for (const Aut& h : H.elements()) {
    Aut t = h.project();
    auto cit = cache.find(t);
    if (cit == cache.end()) {
      Residues r;
      std::vector<std::uint32_t> rows;
      for (int i = 0; i < half; ++i)
        rows.push_back((std::uint32_t(1) << i) ^
                       (std::uint32_t(1) << t.apply(i)));
      r.image = F2Subspace::span(half, rows);
      if (auto bit = g_bucket.find(t); bit != g_bucket.end())
        for (std::uint32_t w : bit->second) r.rep.emplace(r.image.reduce(w), w);
      cit = cache.emplace(t, std::move(r)).first;
    }
    const Residues& r = cit->second;
    std::uint32_t w = h.kernel_vector();
    auto rit = r.rep.find(r.image.reduce(w));
    if (rit == r.rep.end()) {
      cert.verdict = false;
      cert.element_witnesses.clear();
      cert.failure_witness = h;
      return cert;
    }
    F2AffineSet sol = solve_twisted(t, F2Vec{half, w ^ rit->second});
    cert.element_witnesses.emplace_back(h, sol.offset());
  }
  return cert;
}

ConjugacyCertificate is_globally_conjugate(const Subgroup& H,
                                           const Subgroup& G) {
  if (H.depth() != G.depth()) throw DepthMismatch();
  const int depth = H.depth();
  const int half = (1 << depth) / 2;
  ConjugacyCertificate cert;
  cert.mode = ConjMode::kGlobal;

  auto conjugates_into_g = [&](std::uint32_t u) {
    Aut b = Aut::from_kernel_vector(depth, u);
    for (const Aut& h : H.generators())
      if (!G.contains(h.conjugated_by(b))) return false;
    return true;
  };

  // Every candidate must at least conjugate one fixed nonidentity element of
  // H into G, so its elementwise witness cosets are the whole search space.
  const Aut* anchor = nullptr;
  for (const Aut& h : H.generators())
    if (!h.is_identity()) {
      anchor = &h;
      break;
    }
  if (anchor == nullptr) {
    // H is trivial; b = 0 works.
    cert.verdict = true;
    cert.global_witness = F2Vec{half, 0};
    return cert;
  }
  std::vector<std::uint32_t> candidates;
  for (const F2AffineSet& coset : elementwise_witnesses(*anchor, G))
    for (F2Vec u : coset.elements()) candidates.push_back(u.bits);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  for (std::uint32_t u : candidates) {
    if (conjugates_into_g(u)) {
      cert.verdict = true;
      cert.global_witness = F2Vec{half, u};
      return cert;
    }
  }
  cert.verdict = false;
  cert.search_exhausted = true;
  return cert;
}

PropertyPReport property_p(const Subgroup& H, const Subgroup& G) {
  PropertyPReport r;
  auto ew = is_elementwise_conjugate(H, G);
  auto gl = is_globally_conjugate(H, G);
  r.elementwise = ew.verdict;
  r.global = gl.verdict;
  r.p_holds = (r.elementwise == r.global);
  r.same_order = H.size() == G.size();
  r.trivial_kernel_intersection = has_trivial_kernel_intersection(H);
  r.h_cyclic = H.is_cyclic();
  r.h_has_transitive = H.has_transitive_element();
  r.global_witness = gl.global_witness;
  return r;
}

TheoremCheck theorem_1_4_check(const Subgroup& H, const Subgroup& G) {
  TheoremCheck tc;
  tc.hyp_same_order = H.size() == G.size();
  tc.hyp_trivial_kernel = has_trivial_kernel_intersection(H);
  if (!tc.hyp_same_order || !tc.hyp_trivial_kernel) {
    tc.verdict = Verdict::kVacuous;
    return tc;
  }
  tc.elementwise = is_elementwise_conjugate(H, G).verdict;
  if (!tc.elementwise) {
    tc.global = false;
    tc.verdict = Verdict::kHolds;
    return tc;
  }
  auto gl = is_globally_conjugate(H, G);
  tc.global = gl.verdict;
  tc.global_witness = gl.global_witness;
  tc.verdict = tc.global ? Verdict::kHolds : Verdict::kCounterexample;
  return tc;
}

CriterionResult lemma_3_3_criterion(const Subgroup& H, const Subgroup& G,
                                    const Subgroup& H1, const Subgroup& H2,
                                    const Aut& a) {
  CriterionResult res;
  if (!a.is_in_kernel()) return res;
  if (H.is_cyclic() || G.is_cyclic()) return res;
  if (!has_trivial_kernel_intersection(H)) return res;
  if (H.size() != G.size()) return res;
  if (H1 == H2) return res;
  if (H1.size() * 2 != H.size() || H2.size() * 2 != H.size()) return res;
  if (!H1.is_subgroup_of(H) || !H2.is_subgroup_of(H)) return res;
  if (!is_elementwise_conjugate(H, G).verdict) return res;
  {
    std::vector<Aut> gens = H1.generators();
    for (const Aut& g : H2.generators()) gens.push_back(g.conjugated_by(a));
    if (!(Subgroup::closure(H.depth(), std::move(gens)) == G)) return res;
  }
  res.hypotheses_ok = true;

  const int half = (1 << H.depth()) / 2;
  F2Vec u{half, a.kernel_vector()};
  F2Subspace c_h1 = centralizer_in_kernel_subspace(H.depth(), H1.elements());
  for (const Aut& x : H2.elements()) {
    if (H1.contains(x)) continue;
    F2Subspace c_x = fix_subspace(x.project(), half);
    if (sum(c_h1, c_x).contains(u)) {
      res.criterion = true;
      return res;
    }
  }
  res.criterion = false;
  return res;
}

std::pair<F2Vec, F2Vec> lemma_3_6_residual(const Aut& x, const Aut& y,
                                           const Aut& a, const Aut& b) {
  require_same_depth(x, y);
  require_same_depth(x, a);
  require_same_depth(x, b);
  if (!a.is_in_kernel() || !b.is_in_kernel())
    throw std::invalid_argument("a, b must lie in the kernel");
  if (!(x * y.conjugated_by(a) == (x * y).conjugated_by(b)))
    throw std::invalid_argument("relation x y^a = (xy)^b does not hold");
  const int half = x.degree() / 2;
  Aut s = x.project(), t = y.project();
  Aut st = s * t;
  F2Vec u{half, a.kernel_vector()};
  F2Vec z{half, b.kernel_vector()};
  F2Vec lhs = permute_coordinates(s, u) + permute_coordinates(st, u);
  F2Vec rhs = z + permute_coordinates(st, z);
  return {lhs, rhs};
}

static Subgroup adjoin(const Subgroup& X, const Aut& alpha) {
  std::vector<Aut> gens = X.generators();
  gens.push_back(alpha);
  return Subgroup::closure(X.depth(), std::move(gens));
}

// Cycle id of every point under a single permutation.
static std::vector<int> cycle_ids(const Aut& a) {
  std::vector<int> id(std::size_t(a.degree()), -1);
  int next = 0;
  for (int i = 0; i < a.degree(); ++i) {
    if (id[std::size_t(i)] != -1) continue;
    int j = i;
    do {
      id[std::size_t(j)] = next;
      j = a.apply(j);
    } while (j != i);
    ++next;
  }
  return id;
}

PropCheck prop_4_1_check(const Subgroup& X, const Aut& alpha, F2Vec v) {
  if (X.contains(alpha)) throw std::invalid_argument("alpha must lie outside X");
  const int m = alpha.degree();
  if (v.len != m) throw std::invalid_argument("vector length must be 2^n");
  PropCheck pc;
  Subgroup Y = adjoin(X, alpha);

  // (a) v_i + v_{alpha(i)} = v_{beta(i)} + v_{beta alpha(i)}
  for (const Aut& beta : X.elements())
    for (int i = 0; i < m; ++i) {
      bool lhs = v.get(i) ^ v.get(alpha.apply(i));
      bool rhs = v.get(beta.apply(i)) ^ v.get(beta.apply(alpha.apply(i)));
      if (lhs != rhs) return pc;
    }
  // (b) shared alpha-orbit and shared beta-orbit force equal coordinates
  auto alpha_orbit = cycle_ids(alpha);
  for (const Aut& beta : X.elements()) {
    auto beta_orbit = cycle_ids(beta);
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        if (alpha_orbit[std::size_t(i)] == alpha_orbit[std::size_t(j)] &&
            beta_orbit[std::size_t(i)] == beta_orbit[std::size_t(j)] &&
            v.get(i) != v.get(j))
          return pc;
  }
  // (c) v in Fix(Phi(Y))
  FrattiniData fy = frattini(Y);
  if (!fix_subspace_of_set(fy.phi.elements(), m).contains(v)) return pc;

  pc.conditions_hold = true;
  F2Subspace fix_alpha = fix_subspace(alpha, m);
  F2Subspace fix_x = fix_subspace_of_set(X.elements(), m);
  pc.witness = decompose(v, fix_alpha, fix_x);
  pc.conclusion_holds = pc.witness.has_value();
  return pc;
}

PropCheck prop_4_4_check(const Subgroup& X, const Aut& alpha, F2Vec v,
                         const KernelVectorMap& u_map) {
  if (X.contains(alpha)) throw std::invalid_argument("alpha must lie outside X");
  const int m = alpha.degree();
  if (v.len != m) throw std::invalid_argument("vector length must be 2^n");
  PropCheck pc;
  Subgroup Y = adjoin(X, alpha);
  FrattiniData fy = frattini(Y);
  F2Subspace fix_phi = fix_subspace_of_set(fy.phi.elements(), m);

  if (!fix_phi.contains(v)) return pc;  // condition (2)
  for (const Aut& beta : X.elements()) {
    auto it = u_map.find(beta);
    if (it == u_map.end())
      throw std::invalid_argument("u_map is missing an element of X");
    F2Vec u = it->second;
    if (!fix_phi.contains(u)) return pc;
    Aut ab = alpha * beta;
    F2Vec lhs = permute_coordinates(alpha, v) + permute_coordinates(ab, v);
    F2Vec rhs = u + permute_coordinates(ab, u);
    if (!(lhs == rhs)) return pc;  // condition (1)
  }

  pc.conditions_hold = true;
  F2Subspace fix_alpha = fix_subspace(alpha, m);
  F2Subspace fix_x = fix_subspace_of_set(X.elements(), m);
  pc.witness = decompose(v, fix_alpha, fix_x);
  pc.conclusion_holds = pc.witness.has_value();
  return pc;
}

F2Subspace v_y_subspace(const Subgroup& X, const Aut& alpha) {
  if (X.contains(alpha)) throw std::invalid_argument("alpha must lie outside X");
  const int m = alpha.degree();
  Subgroup Y = adjoin(X, alpha);
  FrattiniData fy = frattini(Y);
  if (!fy.phi.is_subgroup_of(X) || Y.size() != 2 * X.size())
    throw std::invalid_argument(
        "v_y_subspace needs X maximal in <X, alpha> (containing its Frattini "
        "subgroup)");

  // Orbits of Y on the coordinates, smallest index as representative.
  std::vector<int> orbit_rep(std::size_t(m), -1);
  for (int i = 0; i < m; ++i) {
    if (orbit_rep[std::size_t(i)] != -1) continue;
    for (const Aut& sigma : Y.elements()) orbit_rep[std::size_t(sigma.apply(i))] = i;
  }

  // Union-find over coordinates: each block {sigma(rep) : sigma in A_t u
  // alpha A_t} carries one unknown, overlapping blocks merge.
  std::vector<int> parent(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) parent[std::size_t(i)] = i;
  auto find = [&](int x) {
    while (parent[std::size_t(x)] != x) {
      parent[std::size_t(x)] = parent[std::size_t(parent[std::size_t(x)])];
      x = parent[std::size_t(x)];
    }
    return x;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::size_t(a)] = b;
  };

  // Cosets A_t of Phi(Y) inside X.
  std::unordered_set<Aut, AutHash> assigned;
  std::vector<std::vector<Aut>> cosets;
  for (const Aut& x : X.elements()) {
    if (assigned.count(x)) continue;
    std::vector<Aut> coset;
    for (const Aut& p : fy.phi.elements()) {
      Aut e = x * p;
      assigned.insert(e);
      coset.push_back(e);
    }
    cosets.push_back(std::move(coset));
  }

  for (int i = 0; i < m; ++i) {
    if (orbit_rep[std::size_t(i)] != i) continue;
    for (const auto& coset : cosets) {
      int first = -1;
      for (const Aut& sigma : coset) {
        int p1 = sigma.apply(i);
        int p2 = (alpha * sigma).apply(i);
        if (first == -1) first = p1;
        unite(first, p1);
        unite(first, p2);
      }
    }
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

}  // namespace wn
