#include <doctest.h>

#include <optional>
#include <random>
#include <set>
#include <vector>

#include "wn/conjugacy.hpp"
#include "wn/f2.hpp"
#include "wn/subgroup.hpp"
#include "wn/tree_automorphism.hpp"

using namespace wn;

namespace {

Aut random_aut(int n, std::mt19937_64& rng) {
  std::vector<bool> bits(std::size_t((1 << n) - 1));
  for (auto&& b : bits) b = rng() & 1;
  return Aut::from_portrait(n, bits);
}

std::vector<Aut> all_kernel(int n) {
  const int half = (1 << n) / 2;
  std::vector<Aut> out;
  for (std::uint32_t u = 0; u < (std::uint32_t(1) << half); ++u)
    out.push_back(Aut::from_kernel_vector(n, u));
  return out;
}

std::vector<Aut> wn_elements(int n) {
  std::vector<Aut> gens;
  for (int i = 1; i <= n; ++i) gens.push_back(Aut::standard_generator(i, n));
  return Subgroup::closure(n, gens).elements();
}

// Brute-force elementwise decision over the kernel.
bool brute_elementwise(const Subgroup& H, const Subgroup& G,
                       const std::vector<Aut>& kernel) {
  for (const Aut& h : H.elements()) {
    bool found = false;
    for (const Aut& a : kernel)
      if (G.contains(h.conjugated_by(a))) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

// Brute-force global decision over the kernel.
std::optional<Aut> brute_global(const Subgroup& H, const Subgroup& G,
                                const std::vector<Aut>& kernel) {
  for (const Aut& a : kernel) {
    bool all = true;
    for (const Aut& h : H.elements())
      if (!G.contains(h.conjugated_by(a))) {
        all = false;
        break;
      }
    if (all) return a;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("elementwise witness sets match brute force, exhaustive n=2,3") {
  for (int n = 2; n <= 3; ++n) {
    auto kernel = all_kernel(n);
    const int half = (1 << n) / 2;
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < (n == 2 ? 10 : 6); ++trial) {
      Subgroup G = random_subgroup(n, 2, rng());
      for (const Aut& h : wn_elements(n)) {
        auto sets = elementwise_witnesses(h, G);
        for (const Aut& a : kernel) {
          bool brute = G.contains(h.conjugated_by(a));
          bool witnessed = false;
          for (const auto& s : sets)
            if (s.contains(F2Vec{half, a.kernel_vector()})) {
              witnessed = true;
              break;
            }
          CHECK(witnessed == brute);
        }
      }
    }
  }
}

TEST_CASE("elementwise witness sets match brute force, sampled n=4") {
  auto kernel = all_kernel(4);
  std::mt19937_64 rng(52);
  int pairs = 0;
  while (pairs < 1000) {
    Subgroup G = random_subgroup(4, 2, rng());
    for (int i = 0; i < 25; ++i, ++pairs) {
      Aut h = random_aut(4, rng);
      auto sets = elementwise_witnesses(h, G);
      for (const Aut& a : kernel) {
        bool brute = G.contains(h.conjugated_by(a));
        bool witnessed = false;
        for (const auto& s : sets)
          if (s.contains(F2Vec{8, a.kernel_vector()})) {
            witnessed = true;
            break;
          }
        CHECK(witnessed == brute);
      }
    }
  }
}

TEST_CASE("subgroup deciders agree with brute force and verify witnesses") {
  for (int n = 2; n <= 3; ++n) {
    auto kernel = all_kernel(n);
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 40; ++trial) {
      Subgroup H = random_subgroup(n, 2, rng());
      Subgroup G = (trial % 3 == 0)
                       ? conjugate_subgroup(H, kernel[rng() % kernel.size()])
                       : random_subgroup(n, 2, rng());
      auto ew = is_elementwise_conjugate(H, G);
      CHECK(ew.verdict == brute_elementwise(H, G, kernel));
      if (ew.verdict) {
        // one verified witness per element
        CHECK(ew.element_witnesses.size() == H.size());
        for (const auto& [h, u] : ew.element_witnesses)
          CHECK(G.contains(
              h.conjugated_by(Aut::from_kernel_vector(n, u.bits))));
      } else {
        REQUIRE(ew.failure_witness.has_value());
        bool any = false;
        for (const Aut& a : kernel)
          if (G.contains(ew.failure_witness->conjugated_by(a))) any = true;
        CHECK(!any);
      }

      auto gl = is_globally_conjugate(H, G);
      CHECK(gl.verdict == brute_global(H, G, kernel).has_value());
      if (gl.verdict) {
        REQUIRE(gl.global_witness.has_value());
        Aut b = Aut::from_kernel_vector(n, gl.global_witness->bits);
        for (const Aut& h : H.elements())
          CHECK(G.contains(h.conjugated_by(b)));
      } else {
        CHECK(gl.search_exhausted);
      }

      auto p = property_p(H, G);
      CHECK(p.elementwise == ew.verdict);
      CHECK(p.global == gl.verdict);
      CHECK(p.p_holds == (ew.verdict == gl.verdict));
    }
  }
}

TEST_CASE("verdicts are invariant under kernel conjugation of H") {
  std::mt19937_64 rng(54);
  auto kernel = all_kernel(3);
  for (int trial = 0; trial < 25; ++trial) {
    Subgroup H = random_subgroup(3, 2, rng());
    Subgroup G = random_subgroup(3, 2, rng());
    auto base = property_p(H, G);
    for (int k = 0; k < 3; ++k) {
      Subgroup Hc = conjugate_subgroup(H, kernel[rng() % kernel.size()]);
      auto moved = property_p(Hc, G);
      CHECK(moved.elementwise == base.elementwise);
      CHECK(moved.global == base.global);
      CHECK(moved.p_holds == base.p_holds);
    }
  }
}

TEST_CASE("trivial H is globally conjugate into anything") {
  Subgroup H = Subgroup::trivial(3);
  Subgroup G = random_subgroup(3, 2, 7);
  auto gl = is_globally_conjugate(H, G);
  CHECK(gl.verdict);
  CHECK(gl.global_witness->bits == 0);
}

TEST_CASE("theorem check classifies hypotheses and verdicts") {
  // hypothesis failure: |H| != |G|
  Subgroup H = Subgroup::closure(2, {Aut::odometer(2)});
  Subgroup small = Subgroup::trivial(2);
  CHECK(theorem_1_4_check(H, small).verdict == Verdict::kVacuous);
  // hypothesis failure: H meets the kernel
  Subgroup kern = kernel_subgroup(2);
  CHECK(theorem_1_4_check(kern, kern).verdict == Verdict::kVacuous);
  // a genuine instance: a kernel-free cyclic group and a conjugate partner
  Subgroup Hc = Subgroup::closure(3, {Aut::from_parts(0, Aut::odometer(2))});
  Subgroup Gc = conjugate_subgroup(Hc, Aut::from_kernel_vector(3, 5));
  TheoremCheck tc = theorem_1_4_check(Hc, Gc);
  CHECK(tc.hyp_same_order);
  CHECK(tc.hyp_trivial_kernel);
  CHECK(tc.elementwise);
  CHECK(tc.global);
  CHECK(tc.verdict == Verdict::kHolds);
}

TEST_CASE("criterion checker validates its hypotheses") {
  // cyclic H fails the hypotheses outright
  Subgroup H = Subgroup::closure(2, {Aut::odometer(2)});
  auto ms = Subgroup::closure(2, {Aut::odometer(2).pow(2)});
  auto res = lemma_3_3_criterion(H, H, ms, ms, Aut::identity(2));
  CHECK(!res.hypotheses_ok);
}

TEST_CASE("product-conjugation residual identity holds when the relation does") {
  std::mt19937_64 rng(55);
  auto kernel = all_kernel(3);
  int verified = 0;
  for (int trial = 0; trial < 400 && verified < 100; ++trial) {
    Aut x = random_aut(3, rng), y = random_aut(3, rng);
    Aut a = kernel[rng() % kernel.size()];
    Aut lhs = x * y.conjugated_by(a);
    // find b by brute force
    std::optional<Aut> b;
    for (const Aut& cand : kernel)
      if ((x * y).conjugated_by(cand) == lhs) {
        b = cand;
        break;
      }
    if (!b) continue;
    auto [l, r] = lemma_3_6_residual(x, y, a, *b);
    CHECK(l == r);
    ++verified;
  }
  CHECK(verified == 100);
  // precondition violations throw
  Aut x = Aut::odometer(3), y = Aut::standard_generator(1, 3);
  CHECK_THROWS_AS(lemma_3_6_residual(x, y, x, Aut::identity(3)),
                  std::invalid_argument);
}

TEST_CASE("orbit-condition check produces verified decompositions") {
  std::mt19937_64 rng(56);
  for (int trial = 0; trial < 20; ++trial) {
    Subgroup X = random_subgroup(2, 2, rng());
    std::optional<Aut> alpha;
    for (int t = 0; t < 16; ++t) {
      Aut cand = random_aut(2, rng);
      if (!X.contains(cand)) {
        alpha = cand;
        break;
      }
    }
    if (!alpha) continue;
    for (std::uint32_t v = 0; v < 16; ++v) {
      PropCheck pc = prop_4_1_check(X, *alpha, F2Vec{4, v});
      if (!pc.conditions_hold) continue;
      CHECK(pc.conclusion_holds);
      REQUIRE(pc.witness.has_value());
      CHECK(fix_subspace(*alpha, 4).contains(pc.witness->first));
      CHECK(fix_subspace_of_set(X.elements(), 4).contains(pc.witness->second));
      CHECK((pc.witness->first + pc.witness->second).bits == v);
    }
    CHECK_THROWS_AS(prop_4_1_check(X, X.elements().front(), F2Vec{4, 0}),
                    std::invalid_argument);
  }
}

TEST_CASE("twisted-condition check demands a complete auxiliary map") {
  Subgroup X = Subgroup::closure(2, {Aut::standard_generator(2, 2)});
  Aut alpha = Aut::standard_generator(1, 2);
  KernelVectorMap incomplete;
  incomplete[Aut::identity(2)] = F2Vec{4, 0};
  CHECK_THROWS_AS(prop_4_4_check(X, alpha, F2Vec{4, 0}, incomplete),
                  std::invalid_argument);
}

TEST_CASE("block-constant subspace preconditions and membership") {
  // X = <(1,3)(2,4)>, alpha = (1,2): Y is the D4 subgroup they generate.
  Subgroup X = Subgroup::closure(2, {Aut::standard_generator(2, 2)});
  Aut alpha = Aut::standard_generator(1, 2);
  Subgroup Y = Subgroup::closure(2, {Aut::standard_generator(2, 2), alpha});
  if (frattini(Y).phi.is_subgroup_of(X) && Y.size() == 2 * X.size()) {
    F2Subspace vy = v_y_subspace(X, alpha);
    for (const F2Vec& v : vy.elements()) {
      CHECK(permute_coordinates(alpha, v) == v);
      CHECK(fix_subspace_of_set(frattini(Y).phi.elements(), 4).contains(v));
    }
  }
  // alpha inside X must throw
  CHECK_THROWS_AS(v_y_subspace(X, Aut::standard_generator(2, 2)),
                  std::invalid_argument);
}
