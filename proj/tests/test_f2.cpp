#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "wn/f2.hpp"
#include "wn/tree_automorphism.hpp"

using namespace wn;

namespace {

Aut random_aut(int n, std::mt19937_64& rng) {
  std::vector<bool> bits(std::size_t((1 << n) - 1));
  for (auto&& b : bits) b = rng() & 1;
  return Aut::from_portrait(n, bits);
}

// All members of the span of `rows`, by brute-force subset sums.
std::set<std::uint32_t> brute_span(const std::vector<std::uint32_t>& rows) {
  std::set<std::uint32_t> out{0};
  for (std::uint32_t r : rows) {
    std::set<std::uint32_t> next = out;
    for (std::uint32_t v : out) next.insert(v ^ r);
    out = next;
  }
  return out;
}

std::set<std::uint32_t> element_bits(const F2Subspace& s) {
  std::set<std::uint32_t> out;
  for (const F2Vec& v : s.elements()) out.insert(v.bits);
  return out;
}

F2Subspace random_subspace(int m, int nrows, std::mt19937_64& rng) {
  std::vector<std::uint32_t> rows;
  for (int i = 0; i < nrows; ++i)
    rows.push_back(std::uint32_t(rng()) & ((std::uint32_t(1) << m) - 1));
  return F2Subspace::span(m, rows);
}

}  // namespace

TEST_CASE("vector parse/print round-trip and addition") {
  F2Vec v = F2Vec::parse("1010");
  CHECK(v.len == 4);
  CHECK(v.get(0));
  CHECK(!v.get(1));
  CHECK(v.to_string() == "1010");
  F2Vec w = F2Vec::parse("0110");
  CHECK((v + w).to_string() == "1100");
  CHECK((v + v).to_string() == "0000");
}

TEST_CASE("span equals brute-force subset sums") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    int m = 4 + int(rng() % 5);
    std::vector<std::uint32_t> rows;
    for (int i = 0; i < 4; ++i)
      rows.push_back(std::uint32_t(rng()) & ((std::uint32_t(1) << m) - 1));
    F2Subspace s = F2Subspace::span(m, rows);
    std::set<std::uint32_t> brute = brute_span(rows);
    CHECK(element_bits(s) == brute);
    CHECK((std::size_t(1) << s.dim()) == brute.size());
    for (std::uint32_t v = 0; v < (std::uint32_t(1) << m); ++v)
      CHECK(s.contains(F2Vec{m, v}) == (brute.count(v) > 0));
  }
}

TEST_CASE("reduce is a canonical coset representative") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    F2Subspace s = random_subspace(8, 3, rng);
    std::uint32_t v = std::uint32_t(rng()) & 0xff;
    std::uint32_t r = s.reduce(v);
    CHECK(s.contains(F2Vec{8, v ^ r}));  // v - rep lies in the subspace
    for (const F2Vec& w : s.elements())
      CHECK(s.reduce(v ^ w.bits) == r);  // constant on the coset
  }
}

TEST_CASE("sum and intersection against element sets") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    F2Subspace a = random_subspace(8, 3, rng);
    F2Subspace b = random_subspace(8, 3, rng);
    std::set<std::uint32_t> ea = element_bits(a), eb = element_bits(b);
    std::set<std::uint32_t> esum;
    for (std::uint32_t x : ea)
      for (std::uint32_t y : eb) esum.insert(x ^ y);
    std::set<std::uint32_t> einter;
    std::set_intersection(ea.begin(), ea.end(), eb.begin(), eb.end(),
                          std::inserter(einter, einter.begin()));
    CHECK(element_bits(sum(a, b)) == esum);
    CHECK(element_bits(intersect(a, b)) == einter);
  }
}

TEST_CASE("decompose returns a verified witness exactly on the sum") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    F2Subspace a = random_subspace(8, 2, rng);
    F2Subspace b = random_subspace(8, 2, rng);
    F2Subspace s = sum(a, b);
    for (std::uint32_t v = 0; v < 256; ++v) {
      auto w = decompose(F2Vec{8, v}, a, b);
      if (s.contains(F2Vec{8, v})) {
        REQUIRE(w.has_value());
        CHECK(a.contains(w->first));
        CHECK(b.contains(w->second));
        CHECK((w->first + w->second).bits == v);
      } else {
        CHECK(!w.has_value());
      }
    }
  }
}

TEST_CASE("coordinate permutation is the right group action") {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 100; ++trial) {
    Aut s = random_aut(3, rng), t = random_aut(3, rng);
    F2Vec v{8, std::uint32_t(rng()) & 0xff};
    // action axiom: (st)(v) = s(t(v))
    CHECK(permute_coordinates(s * t, v) ==
          permute_coordinates(s, permute_coordinates(t, v)));
    // definition: s(v)_{s(i)} = v_i
    F2Vec sv = permute_coordinates(s, v);
    for (int i = 0; i < 8; ++i) CHECK(sv.get(s.apply(i)) == v.get(i));
    // linear
    F2Vec w{8, std::uint32_t(rng()) & 0xff};
    CHECK(permute_coordinates(s, v + w) ==
          permute_coordinates(s, v) + permute_coordinates(s, w));
  }
}

TEST_CASE("fix subspace matches brute force") {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 50; ++trial) {
    Aut s = random_aut(3, rng);
    F2Subspace fix = fix_subspace(s, 8);
    for (std::uint32_t v = 0; v < 256; ++v)
      CHECK(fix.contains(F2Vec{8, v}) ==
            (permute_coordinates(s, F2Vec{8, v}).bits == v));
  }
}

TEST_CASE("fix subspace of a set is the common fix") {
  std::mt19937_64 rng(27);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Aut> set{random_aut(3, rng), random_aut(3, rng)};
    F2Subspace fix = fix_subspace_of_set(set, 8);
    for (std::uint32_t v = 0; v < 256; ++v) {
      bool all = true;
      for (const Aut& a : set)
        all = all && permute_coordinates(a, F2Vec{8, v}).bits == v;
      CHECK(fix.contains(F2Vec{8, v}) == all);
    }
  }
  // empty set fixes everything
  CHECK(fix_subspace_of_set({}, 4).dim() == 4);
}

TEST_CASE("twisted solver matches brute force for every target") {
  std::mt19937_64 rng(28);
  for (int trial = 0; trial < 20; ++trial) {
    Aut t = random_aut(3, rng);
    for (std::uint32_t c = 0; c < 256; ++c) {
      F2AffineSet sol = solve_twisted(t, F2Vec{8, c});
      std::set<std::uint32_t> brute;
      for (std::uint32_t u = 0; u < 256; ++u) {
        F2Vec uu{8, u};
        if ((uu + permute_coordinates(t, uu)).bits == c) brute.insert(u);
      }
      if (brute.empty()) {
        CHECK(sol.empty());
      } else {
        REQUIRE(!sol.empty());
        std::set<std::uint32_t> got;
        for (const F2Vec& u : sol.elements()) got.insert(u.bits);
        CHECK(got == brute);
        // nonempty solution sets are cosets of Fix(t)
        CHECK(sol.direction() == fix_subspace(t, 8));
      }
    }
  }
}

TEST_CASE("affine set membership agrees with its element list") {
  std::mt19937_64 rng(29);
  F2Subspace dir = random_subspace(6, 2, rng);
  F2AffineSet set(F2Vec{6, 0x15}, dir);
  std::set<std::uint32_t> elems;
  for (const F2Vec& v : set.elements()) elems.insert(v.bits);
  for (std::uint32_t v = 0; v < 64; ++v)
    CHECK(set.contains(F2Vec{6, v}) == (elems.count(v) > 0));
  CHECK(F2AffineSet::empty_set().empty());
  CHECK(!F2AffineSet::empty_set().contains(F2Vec{6, 0}));
}
