#include "wn/tree_automorphism.hpp"

#include <algorithm>

namespace wn {

void require_same_depth(const Aut& a, const Aut& b) {
  if (a.depth() != b.depth()) throw DepthMismatch();
}

static void check_depth(int depth) {
  if (depth < 0 || depth > kMaxDepth)
    throw std::invalid_argument("depth out of range [0, " +
                                std::to_string(kMaxDepth) + "]");
}

Aut Aut::identity(int depth) {
  check_depth(depth);
  Aut a(depth);
  for (int i = 0; i < a.degree(); ++i) a.img_[i] = std::uint8_t(i);
  return a;
}

Aut Aut::from_images(int depth, std::span<const int> images) {
  check_depth(depth);
  const int d = 1 << depth;
  if (int(images.size()) != d)
    throw std::invalid_argument("image list has wrong length");
  std::array<bool, kMaxDegree> seen{};
  Aut a(depth);
  for (int i = 0; i < d; ++i) {
    int v = images[i];
    if (v < 0 || v >= d || seen[v])
      throw std::invalid_argument("image list is not a permutation");
    seen[v] = true;
    a.img_[i] = std::uint8_t(v);
  }
  // Block structure: at every level the contiguous blocks map onto blocks.
  for (int block = 2; block <= d; block <<= 1) {
    for (int start = 0; start < d; start += block) {
      int target = a.img_[start] / block;
      for (int i = start; i < start + block; ++i)
        if (a.img_[i] / block != target)
          throw std::invalid_argument(
              "permutation does not preserve the tree's block structure");
    }
  }
  return a;
}

Aut Aut::from_parts(std::uint32_t v, const Aut& s) {
  int depth = s.depth() + 1;
  check_depth(depth);
  Aut a(depth);
  for (int j = 0; j < s.degree(); ++j) {
    int k = s.apply(j);
    int bit = int(v >> k) & 1;
    a.img_[2 * j] = std::uint8_t(2 * k + bit);
    a.img_[2 * j + 1] = std::uint8_t(2 * k + (bit ^ 1));
  }
  return a;
}

Aut Aut::from_kernel_vector(int depth, std::uint32_t u) {
  if (depth < 1) throw std::invalid_argument("kernel vectors need depth >= 1");
  return from_parts(u, identity(depth - 1));
}

Aut Aut::standard_generator(int i, int n) {
  check_depth(n);
  if (i < 1 || i > n) throw std::invalid_argument("generator index out of range");
  // a_i swaps the two halves of the leftmost depth-i subtree.
  Aut a = identity(n);
  int half = 1 << (i - 1);
  for (int l = 0; l < half; ++l) {
    a.img_[l] = std::uint8_t(l + half);
    a.img_[l + half] = std::uint8_t(l);
  }
  return a;
}

Aut Aut::odometer(int n) {
  Aut x = identity(n);
  for (int i = 1; i <= n; ++i) x = x * standard_generator(i, n);
  return x;
}

Aut Aut::operator*(const Aut& y) const {
  require_same_depth(*this, y);
  Aut z(depth_);
  for (int i = 0; i < degree(); ++i) z.img_[i] = img_[y.img_[i]];
  return z;
}

Aut Aut::inverse() const {
  Aut z(depth_);
  for (int i = 0; i < degree(); ++i) z.img_[img_[i]] = std::uint8_t(i);
  return z;
}

Aut Aut::pow(long k) const {
  Aut base = k < 0 ? inverse() : *this;
  unsigned long e = k < 0 ? -(unsigned long)k : (unsigned long)k;
  Aut acc = identity(depth_);
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

Aut Aut::conjugated_by(const Aut& g) const {
  return g * (*this) * g.inverse();
}

int Aut::order() const {
  int k = 1;
  Aut p = *this;
  while (!p.is_identity()) {
    p = p * (*this);
    ++k;
  }
  return k;
}

Aut Aut::project() const {
  if (depth_ < 1) throw std::invalid_argument("cannot project depth 0");
  Aut s(depth_ - 1);
  for (int j = 0; j < s.degree(); ++j) s.img_[j] = std::uint8_t(img_[2 * j] / 2);
  return s;
}

std::uint32_t Aut::kernel_vector() const {
  if (depth_ < 1) throw std::invalid_argument("cannot decompose depth 0");
  std::uint32_t v = 0;
  for (int j = 0; j < degree() / 2; ++j) {
    int image = img_[2 * j];
    if (image & 1) v |= std::uint32_t(1) << (image / 2);
  }
  return v;
}

Aut Aut::include_at(int n) const {
  check_depth(n);
  if (n < depth_) throw std::invalid_argument("cannot include into smaller depth");
  Aut a = identity(n);
  for (int i = 0; i < degree(); ++i) a.img_[i] = img_[i];
  return a;
}

bool Aut::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (img_[i] != i) return false;
  return true;
}

bool Aut::is_in_kernel() const {
  if (depth_ < 1) return true;
  return project().is_identity();
}

bool Aut::is_transitive() const {
  int i = 0, steps = 0;
  do {
    i = img_[i];
    ++steps;
  } while (i != 0);
  return steps == degree();
}

std::vector<bool> Aut::portrait() const {
  // Breadth-first: the (v, s) split peels off the bottom level, so the
  // portrait is portrait(s) followed by the bits of v in vertex order.
  std::vector<bool> bits;
  if (depth_ == 0) return bits;
  bits = project().portrait();
  std::uint32_t v = kernel_vector();
  for (int j = 0; j < degree() / 2; ++j) bits.push_back((v >> j) & 1);
  return bits;
}

Aut Aut::from_portrait(int depth, const std::vector<bool>& bits) {
  check_depth(depth);
  if (int(bits.size()) != (1 << depth) - 1)
    throw std::invalid_argument("portrait has wrong length");
  Aut s;
  int consumed = 0;
  for (int d = 1; d <= depth; ++d) {
    std::uint32_t v = 0;
    int half = 1 << (d - 1);
    for (int j = 0; j < half; ++j)
      if (bits[consumed + j]) v |= std::uint32_t(1) << j;
    consumed += half;
    s = from_parts(v, s);
  }
  return s;
}

std::size_t Aut::hash() const {
  // FNV-1a over depth and the live image bytes.
  std::size_t h = 14695981039346656037ULL;
  auto mix = [&h](std::uint8_t b) {
    h ^= b;
    h *= 1099511628211ULL;
  };
  mix(std::uint8_t(depth_));
  for (int i = 0; i < degree(); ++i) mix(img_[i]);
  return h;
}

}  // namespace wn
