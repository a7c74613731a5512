#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <span>
#include <stdexcept>
#include <vector>

namespace wn {

// Configured depth ceiling. Leaf arrays stay within a single cache line and
// kernel vectors fit in 32 bits.
inline constexpr int kMaxDepth = 5;
inline constexpr int kMaxDegree = 1 << kMaxDepth;

class DepthMismatch : public std::invalid_argument {
 public:
  DepthMismatch() : std::invalid_argument("tree automorphism depth mismatch") {}
};

// An automorphism of the depth-n rooted binary tree, stored as its leaf
// permutation under the contiguous labeling: the level-(n-1) vertex j
// (1-based) covers leaves 2j-1 and 2j.
//
// Leaves are 0-based internally; textual formats are 1-based. Depth 0 is the
// trivial group (one leaf, one element) and appears as the projection of
// depth-1 elements.
//
// Immutable value type; safe to share across threads.
class Aut {
 public:
  Aut() : depth_(0) { img_[0] = 0; }

  static Aut identity(int depth);

  // Builds from 0-based leaf images; validates that every level's block
  // partition is preserved (the characterization of tree automorphisms under
  // the contiguous labeling). Throws std::invalid_argument otherwise.
  static Aut from_images(int depth, std::span<const int> images);

  // Semidirect composition (v, s): bit j of v is the bottom swap applied at
  // the level-(n-1) vertex j after s has moved the block there. depth = s.depth()+1.
  static Aut from_parts(std::uint32_t v, const Aut& s);

  // The element (u, 1) of the kernel of the projection.
  static Aut from_kernel_vector(int depth, std::uint32_t u);

  // a_i = (1, 2^{i-1}+1)(2, 2^{i-1}+2)...(2^{i-1}, 2^i), embedded at depth n.
  static Aut standard_generator(int i, int n);

  // x_n = a_1 a_2 ... a_n; acts as a single 2^n-cycle on the leaves.
  static Aut odometer(int n);

  int depth() const { return depth_; }
  int degree() const { return 1 << depth_; }
  int apply(int leaf) const { return img_[leaf]; }

  // (x*y)(leaf) = x(y(leaf)): y acts first.
  Aut operator*(const Aut& y) const;
  Aut inverse() const;
  Aut pow(long k) const;
  // g * x * g^{-1}.
  Aut conjugated_by(const Aut& g) const;
  // Least k >= 1 with x^k = id; always a power of 2.
  int order() const;

  // The s of (v, s): the induced automorphism one level up. depth must be >= 1.
  Aut project() const;
  // The v of (v, s), as a packed vector of length 2^{depth-1}.
  std::uint32_t kernel_vector() const;

  // Extends to depth n by fixing all leaves >= 2^depth.
  Aut include_at(int n) const;

  bool is_identity() const;
  bool is_in_kernel() const;   // projects to the identity
  bool is_transitive() const;  // a single 2^n-cycle

  // Portrait: the 2^n - 1 node swap bits in breadth-first node order,
  // root first. Round-trips with from_portrait.
  std::vector<bool> portrait() const;
  static Aut from_portrait(int depth, const std::vector<bool>& bits);

  bool operator==(const Aut& o) const {
    return depth_ == o.depth_ &&
           std::memcmp(img_.data(), o.img_.data(), size_t(degree())) == 0;
  }
  bool operator<(const Aut& o) const {
    if (depth_ != o.depth_) return depth_ < o.depth_;
    return std::memcmp(img_.data(), o.img_.data(), size_t(degree())) < 0;
  }

  std::size_t hash() const;

 private:
  explicit Aut(int depth) : depth_(depth) {}

  int depth_;
  std::array<std::uint8_t, kMaxDegree> img_;
};

struct AutHash {
  std::size_t operator()(const Aut& a) const { return a.hash(); }
};

void require_same_depth(const Aut& a, const Aut& b);

}  // namespace wn
