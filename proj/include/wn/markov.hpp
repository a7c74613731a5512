#pragma once

#include <optional>
#include <vector>

#include "wn/subgroup.hpp"
#include "wn/tree_automorphism.hpp"

namespace wn {

// The explicitly generated groups M_n for the quadratic family with generic
// parameter. The index-2 variant for square parameters is out of scope here.
struct MarkovGroupSpec {
  int depth = 1;
  std::vector<Aut> generators;
  // Absent when the closure bound was exceeded (order unknown).
  std::optional<Subgroup> group;
};

// m_1 = id; m_{n+1} = x_n^2 m_n x_n^{-1}, all operands embedded at depth n.
Aut m_element(int n);

// M_1 = <(1,2)>, M_2 = <(1,3,2,4),(1,2)>, and
// M_n = <x_n, m_n, x_{n-1}^2, ..., x_2^2> for n >= 3.
MarkovGroupSpec markov_group(int n, std::size_t bound = kDefaultClosureBound);

bool contains_transitive(const MarkovGroupSpec& spec);

}  // namespace wn
