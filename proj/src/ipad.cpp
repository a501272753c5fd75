#include "ipad.hpp"

#include <algorithm>
#include <sstream>

namespace pcg {

std::string Ipad::str() const {
  std::ostringstream out;
  out << '[' << top.str() << ';';
  int run = 0;
  for (size_t i = 0; i < layer.size(); ++i) {
    ++run;
    bool last_of_run = (i + 1 == layer.size()) || !(layer[i + 1] == layer[i]);
    if (last_of_run) {
      out << ' ' << layer[i].str();
      if (run > 1) out << '^' << run;
      run = 0;
    }
  }
  out << ']';
  return out.str();
}

Ipad ipad_of(const Group& g) {
  Ipad out;
  out.top = g.abelianization();
  for (const SubgroupSet& m : g.maximal_subgroups())
    out.layer.push_back(g.abelian_invariants(m));
  std::sort(out.layer.begin(), out.layer.end());
  return out;
}

namespace {

// perfect matching in a small bipartite graph via bitmask DP
bool has_perfect_matching(const std::vector<std::vector<bool>>& adj) {
  size_t n = adj.size();
  std::vector<uint32_t> masks(n, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (adj[i][j]) masks[i] |= (1u << j);
  std::vector<char> reach(1u << n, 0);
  reach[0] = 1;
  for (uint32_t s = 0; s < (1u << n); ++s) {
    if (!reach[s]) continue;
    size_t i = static_cast<size_t>(__builtin_popcount(s));
    if (i == n) return true;
    uint32_t avail = masks[i] & ~s;
    while (avail) {
      uint32_t bit = avail & (~avail + 1);
      reach[s | bit] = 1;
      avail ^= bit;
    }
  }
  return reach[(1u << n) - 1];
}

}  // namespace

bool ipad_le(const Ipad& a, const Ipad& b) {
  if (a.layer.size() != b.layer.size())
    throw ValidationError("IPADs of different shapes are not comparable");
  if (!a.top.quotient_of(b.top)) return false;
  size_t n = a.layer.size();
  if (n > 20) throw ValidationError("IPAD layer too large");
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) adj[i][j] = a.layer[i].quotient_of(b.layer[j]);
  return has_perfect_matching(adj);
}

namespace {

AbelianType parse_type(const std::string& s, int p) {
  AbelianType t;
  t.p = p;
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw ValidationError("malformed abelian type '" + s + "'");
  std::string body = s.substr(1, s.size() - 2);
  if (body.empty()) return t;
  std::istringstream in(body);
  std::string item;
  while (std::getline(in, item, ',')) {
    long long v = 0;
    try {
      v = std::stoll(item);
    } catch (const std::exception&) {
      throw ValidationError("malformed abelian type '" + s + "'");
    }
    int e = 0;
    while (v > 1 && v % p == 0) {
      v /= p;
      ++e;
    }
    if (v != 1 || e == 0) throw ValidationError("entry is not a power of p in '" + s + "'");
    t.exps.push_back(e);
  }
  if (!std::is_sorted(t.exps.begin(), t.exps.end()))
    throw ValidationError("abelian type not sorted in '" + s + "'");
  return t;
}

}  // namespace

Ipad parse_ipad(const std::string& text, int p) {
  // "[TOP; T1^k T2 ...]"
  std::string s = text;
  if (s.size() < 4 || s.front() != '[' || s.back() != ']')
    throw ValidationError("malformed IPAD '" + text + "'");
  s = s.substr(1, s.size() - 2);
  size_t semi = s.find(';');
  if (semi == std::string::npos) throw ValidationError("malformed IPAD '" + text + "'");
  Ipad out;
  out.top = parse_type(s.substr(0, semi), p);
  std::istringstream in(s.substr(semi + 1));
  std::string tok;
  while (in >> tok) {
    int mult = 1;
    size_t caret = tok.find('^');
    std::string ty = tok;
    if (caret != std::string::npos) {
      ty = tok.substr(0, caret);
      try {
        mult = std::stoi(tok.substr(caret + 1));
      } catch (const std::exception&) {
        throw ValidationError("malformed IPAD '" + text + "'");
      }
    }
    AbelianType t = parse_type(ty, p);
    for (int k = 0; k < mult; ++k) out.layer.push_back(t);
  }
  std::sort(out.layer.begin(), out.layer.end());
  if (out.layer.empty()) throw ValidationError("IPAD has an empty layer: '" + text + "'");
  return out;
}

}  // namespace pcg
