#include "wn/markov.hpp"

#include <stdexcept>

namespace wn {

Aut m_element(int n) {
  if (n < 1) throw std::invalid_argument("m_element needs n >= 1");
  Aut m = Aut::identity(n);
  for (int k = 1; k < n; ++k) {
    Aut x = Aut::odometer(k).include_at(n);
    m = x * x * m * x.inverse();
  }
  return m;
}

MarkovGroupSpec markov_group(int n, std::size_t bound) {
  if (n < 1 || n > kMaxDepth)
    throw std::invalid_argument("markov_group depth out of range");
  MarkovGroupSpec spec;
  spec.depth = n;
  if (n == 1) {
    spec.generators = {Aut::standard_generator(1, 1)};
  } else if (n == 2) {
    spec.generators = {Aut::odometer(2), Aut::standard_generator(1, 2)};
  } else {
    spec.generators.push_back(Aut::odometer(n));
    spec.generators.push_back(m_element(n));
    for (int i = n - 1; i >= 2; --i) {
      Aut x = Aut::odometer(i).include_at(n);
      spec.generators.push_back(x * x);
    }
  }
  try {
    spec.group = Subgroup::closure(n, spec.generators, bound);
  } catch (const std::length_error&) {
    spec.group = std::nullopt;
  }
  return spec;
}

bool contains_transitive(const MarkovGroupSpec& spec) {
  if (spec.group) return spec.group->has_transitive_element();
  for (const Aut& g : spec.generators)
    if (g.is_transitive()) return true;
  return false;
}

}  // namespace wn
