#include "wn/text_format.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace wn {

std::string to_cycles(const Aut& a) {
  const int d = a.degree();
  std::vector<bool> seen(size_t(d), false);
  std::string out;
  for (int start = 0; start < d; ++start) {
    if (seen[size_t(start)] || a.apply(start) == start) {
      seen[size_t(start)] = true;
      continue;
    }
    out += '(';
    int i = start;
    bool first = true;
    do {
      if (!first) out += ',';
      out += std::to_string(i + 1);
      seen[size_t(i)] = true;
      i = a.apply(i);
      first = false;
    } while (i != start);
    out += ')';
  }
  return out.empty() ? "()" : out;
}

std::string to_images(const Aut& a) {
  std::string out = "[";
  for (int i = 0; i < a.degree(); ++i) {
    if (i) out += ',';
    out += std::to_string(a.apply(i) + 1);
  }
  return out + "]";
}

std::string to_portrait_hex(const Aut& a) {
  auto bits = a.portrait();
  // Root is the most significant bit of the whole string.
  const int nbits = int(bits.size());
  const int digits = std::max(1, (nbits + 3) / 4);
  std::string out(size_t(digits), '0');
  for (int i = 0; i < nbits; ++i) {
    if (!bits[size_t(i)]) continue;
    int pos = nbits - 1 - i;  // value of this bit as a power of two
    int digit = digits - 1 - pos / 4;
    int val = out[size_t(digit)] <= '9' ? out[size_t(digit)] - '0'
                                        : out[size_t(digit)] - 'a' + 10;
    val |= 1 << (pos % 4);
    out[size_t(digit)] = val < 10 ? char('0' + val) : char('a' + val - 10);
  }
  return out;
}

static std::string strip_ws(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

Aut parse_cycles(int depth, const std::string& raw) {
  std::string s = strip_ws(raw);
  const int d = 1 << depth;
  std::vector<int> img(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) img[size_t(i)] = i;
  size_t pos = 0;
  if (s == "()" || s == "id") return Aut::identity(depth);
  while (pos < s.size()) {
    if (s[pos] != '(') throw std::invalid_argument("expected '(' in cycle notation");
    ++pos;
    std::vector<int> cyc;
    while (pos < s.size() && s[pos] != ')') {
      size_t end = pos;
      while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
      if (end == pos) throw std::invalid_argument("expected number in cycle");
      int v = std::stoi(s.substr(pos, end - pos));
      if (v < 1 || v > d) throw std::invalid_argument("cycle entry out of range");
      cyc.push_back(v - 1);
      pos = end;
      if (pos < s.size() && s[pos] == ',') ++pos;
    }
    if (pos >= s.size()) throw std::invalid_argument("unterminated cycle");
    ++pos;  // ')'
    for (size_t i = 0; i < cyc.size(); ++i) {
      int from = cyc[i];
      int to = cyc[(i + 1) % cyc.size()];
      if (img[size_t(from)] != from)
        throw std::invalid_argument("cycles are not disjoint");
      img[size_t(from)] = to;
    }
  }
  return Aut::from_images(depth, img);
}

Aut parse_images(int depth, const std::string& raw) {
  std::string s = strip_ws(raw);
  const int d = 1 << depth;
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw std::invalid_argument("image list must be bracketed");
  std::vector<int> img;
  std::stringstream ss(s.substr(1, s.size() - 2));
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    int v = std::stoi(tok);
    if (v < 1 || v > d) throw std::invalid_argument("image out of range");
    img.push_back(v - 1);
  }
  return Aut::from_images(depth, img);
}

Aut parse_portrait_hex(int depth, const std::string& raw) {
  std::string s = strip_ws(raw);
  const int nbits = (1 << depth) - 1;
  const int digits = std::max(1, (nbits + 3) / 4);
  if (int(s.size()) != digits)
    throw std::invalid_argument("portrait hex has wrong length");
  std::vector<bool> bits(size_t(nbits), false);
  for (int i = 0; i < nbits; ++i) {
    int pos = nbits - 1 - i;
    char c = s[size_t(digits - 1 - pos / 4)];
    int val;
    if (c >= '0' && c <= '9')
      val = c - '0';
    else if (c >= 'a' && c <= 'f')
      val = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F')
      val = c - 'A' + 10;
    else
      throw std::invalid_argument("bad hex digit");
    bits[size_t(i)] = (val >> (pos % 4)) & 1;
  }
  return Aut::from_portrait(depth, bits);
}

Aut parse_element(int depth, const std::string& raw) {
  std::string s = strip_ws(raw);
  if (s.empty()) throw std::invalid_argument("empty element string");
  if (s[0] == '(' || s == "id") return parse_cycles(depth, s);
  if (s[0] == '[') return parse_images(depth, s);
  return parse_portrait_hex(depth, s);
}

std::vector<Aut> parse_generator_list(int depth, const std::string& raw) {
  std::string s = strip_ws(raw);
  std::vector<Aut> out;
  size_t start = 0;
  int paren = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size() && (s[i] == '(' || s[i] == '[')) ++paren;
    if (i < s.size() && (s[i] == ')' || s[i] == ']')) --paren;
    if (i == s.size() || (s[i] == ',' && paren == 0)) {
      std::string piece = s.substr(start, i - start);
      if (!piece.empty()) out.push_back(parse_element(depth, piece));
      start = i + 1;
    }
  }
  return out;
}

std::string format_generator_list(const std::vector<Aut>& gens) {
  std::string out;
  for (size_t i = 0; i < gens.size(); ++i) {
    if (i) out += ',';
    out += to_cycles(gens[i]);
  }
  return out;
}

}  // namespace wn
