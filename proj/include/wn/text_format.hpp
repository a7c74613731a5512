#pragma once

#include <string>
#include <vector>

#include "wn/tree_automorphism.hpp"

namespace wn {

// Textual element formats, all 1-based and lossless:
//   disjoint cycles   "(1,3)(2,4)"   (identity prints as "()")
//   one-line images   "[3,4,1,2]"
//   portrait hex      2^n - 1 node bits, breadth-first, root = MSB

std::string to_cycles(const Aut& a);
std::string to_images(const Aut& a);
std::string to_portrait_hex(const Aut& a);

// Throws std::invalid_argument on malformed input or non-automorphisms.
Aut parse_cycles(int depth, const std::string& s);
Aut parse_images(int depth, const std::string& s);
Aut parse_portrait_hex(int depth, const std::string& s);

// Accepts any of the three formats, dispatching on the leading character.
Aut parse_element(int depth, const std::string& s);

// Comma-separated cycle-notation list: "(1,3,2,4),(1,2)". Whitespace
// insensitive; commas inside parentheses belong to cycles.
std::vector<Aut> parse_generator_list(int depth, const std::string& s);
std::string format_generator_list(const std::vector<Aut>& gens);

}  // namespace wn
