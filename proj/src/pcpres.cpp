#include "pcpres.hpp"

#include <algorithm>
#include <sstream>

namespace pcg {

Word word_from_elt(const Elt& e) {
  Word w;
  for (size_t i = 0; i < e.size(); ++i)
    if (e[i]) w.push_back({static_cast<int>(i), e[i]});
  return w;
}

Word word_inverse(const Word& w) {
  Word r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back({it->gen, -it->exp});
  return r;
}

PcPresentation::PcPresentation(int p, std::vector<int> weights)
    : p_(p), n_(static_cast<int>(weights.size())), weights_(std::move(weights)) {
  if (p < 3 || p % 2 == 0) throw ValidationError("p must be an odd prime");
  for (int q = 3; q * q <= p; q += 2)
    if (p % q == 0) throw ValidationError("p must be an odd prime");
  if (n_ == 0) throw ValidationError("need at least one generator");
  class_ = 1;
  for (int i = 0; i < n_; ++i) {
    if (weights_[i] < 1) throw ValidationError("weights start at 1");
    if (i && weights_[i] < weights_[i - 1])
      throw ValidationError("weights must be non-decreasing");
    class_ = std::max(class_, weights_[i]);
  }
  if (weights_[0] != 1) throw ValidationError("first generator must have weight 1");
  rank_ = 0;
  while (rank_ < n_ && weights_[rank_] == 1) ++rank_;
  exponent_bound_ = 1;
  for (int i = 0; i < class_; ++i) exponent_bound_ *= p_;
  power_.assign(n_, Word{});
  comm_.assign(n_, {});
  for (int j = 0; j < n_; ++j) comm_[j].assign(j, Word{});
  defs_.assign(n_, GenDef{});
}

void PcPresentation::validate_word(const Word& w, int min_gen, int min_weight) const {
  int prev = -1;
  for (const auto& f : w) {
    if (f.gen < 0 || f.gen >= n_) throw ValidationError("generator index out of range");
    if (f.gen <= prev) throw ValidationError("word not in normal form (order)");
    if (f.exp < 1 || f.exp >= p_) throw ValidationError("word not in normal form (exponent)");
    if (f.gen < min_gen) throw ValidationError("relation right-hand side not deep enough");
    if (weights_[f.gen] < min_weight)
      throw ValidationError("relation right-hand side violates weights");
    prev = f.gen;
  }
}

void PcPresentation::set_power(int i, Word w) {
  validate_word(w, i + 1, weights_[i] + 1);
  power_[i] = std::move(w);
}

void PcPresentation::set_comm(int j, int i, Word w) {
  if (j <= i) throw ValidationError("commutator needs j > i");
  validate_word(w, j + 1, weights_[j] + weights_[i]);
  comm_[j][i] = std::move(w);
}

bool PcPresentation::has_defs() const {
  for (int k = rank_; k < n_; ++k)
    if (defs_[k].kind == GenDef::kNone) return false;
  return true;
}

bool PcPresentation::defs_triangular() const {
  if (!has_defs()) return false;
  for (int k = rank_; k < n_; ++k) {
    const GenDef& d = defs_[k];
    if (d.j >= k || (d.kind == GenDef::kCommutator && d.i >= k)) return false;
    const Word& rhs = d.kind == GenDef::kPower ? power_[d.j] : comm_[d.j][d.i];
    bool seen = false;
    for (const auto& f : rhs) {
      if (f.gen == k) {
        if (f.exp != 1) return false;
        seen = true;
      } else if (f.gen > k) {
        return false;
      }
    }
    if (!seen) return false;
  }
  return true;
}

void PcPresentation::derive_defs() {
  std::vector<bool> defined(n_, false);
  for (int i = 0; i < rank_; ++i) defined[i] = true;
  defs_.assign(n_, GenDef{});
  bool progress = true;
  auto try_rel = [&](const Word& w, GenDef def) {
    int target = -1;
    for (const auto& f : w) {
      if (defined[f.gen]) continue;
      if (target >= 0 || f.exp != 1) return;  // need exactly one new letter, exp 1
      target = f.gen;
    }
    if (target < 0) return;
    defined[target] = true;
    defs_[target] = def;
    progress = true;
  };
  while (progress) {
    progress = false;
    for (int i = 0; i < n_; ++i)
      if (defined[i]) try_rel(power_[i], GenDef{GenDef::kPower, i, -1});
    for (int j = 0; j < n_; ++j)
      for (int i = 0; i < j; ++i)
        if (defined[j] && defined[i]) try_rel(comm_[j][i], GenDef{GenDef::kCommutator, j, i});
  }
  if (!has_defs()) throw ValidationError("could not derive generator definitions");
}

Elt PcPresentation::gen_elt(int i) const {
  Elt e(n_, 0);
  e[i] = 1;
  return e;
}

void PcPresentation::mul_one(Elt& u, int g) const {
  // Strip letters deeper than g, merge the new letter, then reinsert the
  // stripped part conjugated by a_g.
  static thread_local std::vector<std::pair<int, int>> tail_storage;
  size_t mark = tail_storage.size();
  for (int j = g + 1; j < n_; ++j)
    if (u[j]) {
      tail_storage.push_back({j, u[j]});
      u[j] = 0;
    }
  if (u[g] + 1 == p_) {
    u[g] = 0;
    mul_word(u, power_[g]);
  } else {
    u[g] = static_cast<uint8_t>(u[g] + 1);
  }
  size_t end = tail_storage.size();
  for (size_t t = mark; t < end; ++t) {
    auto [j, e] = tail_storage[t];
    const Word& cm = comm_[j][g];
    for (int rep = 0; rep < e; ++rep) {
      mul_one(u, j);
      if (!cm.empty()) mul_word(u, cm);
    }
  }
  tail_storage.resize(mark);
}

void PcPresentation::mul_gen(Elt& u, int g, long long e) const {
  if (g < 0 || g >= n_) throw ValidationError("invalid generator index");
  e %= exponent_bound_;
  if (e < 0) e += exponent_bound_;
  for (long long k = 0; k < e; ++k) mul_one(u, g);
}

void PcPresentation::mul_word(Elt& u, const Word& w) const {
  for (const auto& f : w) mul_gen(u, f.gen, f.exp);
}

void PcPresentation::mul(Elt& u, const Elt& v) const {
  for (int i = 0; i < n_; ++i)
    if (v[i]) mul_gen(u, i, v[i]);
}

Elt PcPresentation::collect(const Word& w) const {
  Elt u = identity();
  mul_word(u, w);
  return u;
}

Elt PcPresentation::multiply(const Elt& a, const Elt& b) const {
  Elt u = a;
  mul(u, b);
  return u;
}

Elt PcPresentation::inverse(const Elt& u) const {
  Elt v = identity();
  Elt acc = u;
  for (int i = 0; i < n_; ++i) {
    if (!acc[i]) continue;
    int e = p_ - acc[i];
    mul_gen(v, i, e);
    mul_gen(acc, i, e);
  }
  return v;
}

Elt PcPresentation::power_elt(const Elt& u, long long e) const {
  e %= exponent_bound_;
  if (e < 0) e += exponent_bound_;
  Elt r = identity();
  for (long long k = 0; k < e; ++k) mul(r, u);
  return r;
}

Elt PcPresentation::commutator(const Elt& a, const Elt& b) const {
  Elt r = inverse(a);
  mul(r, inverse(b));
  mul(r, a);
  mul(r, b);
  return r;
}

Elt PcPresentation::conjugate(const Elt& a, const Elt& b) const {
  Elt r = inverse(b);
  mul(r, a);
  mul(r, b);
  return r;
}

bool PcPresentation::is_consistent() const {
  // a_k (a_j a_i) == (a_k a_j) a_i for k > j > i
  for (int k = 2; k < n_; ++k)
    for (int j = 1; j < k; ++j)
      for (int i = 0; i < j; ++i) {
        Elt rhs = gen_elt(j);
        mul_gen(rhs, i, 1);
        Elt lhs = gen_elt(k);
        mul(lhs, rhs);
        Elt l2 = gen_elt(k);
        mul_gen(l2, j, 1);
        mul_gen(l2, i, 1);
        if (lhs != l2) return false;
      }
  // (a_j^p) a_i == a_j^{p-1} (a_j a_i)  and  a_j (a_i^p) == (a_j a_i) a_i^{p-1}
  for (int j = 1; j < n_; ++j)
    for (int i = 0; i < j; ++i) {
      Elt lhs = collect(power_[j]);
      mul_gen(lhs, i, 1);
      Elt rhs = gen_elt(j);
      mul_gen(rhs, i, 1);
      Elt l2 = identity();
      mul_gen(l2, j, p_ - 1);
      mul(l2, rhs);
      if (lhs != l2) return false;

      lhs = gen_elt(j);
      mul_word(lhs, power_[i]);
      l2 = gen_elt(j);
      mul_gen(l2, i, 1);
      mul_gen(l2, i, p_ - 1);
      if (lhs != l2) return false;
    }
  // a_i^p a_i == a_i a_i^p
  for (int i = 0; i < n_; ++i) {
    Elt lhs = collect(power_[i]);
    mul_gen(lhs, i, 1);
    Elt rhs = gen_elt(i);
    mul_word(rhs, power_[i]);
    if (lhs != rhs) return false;
  }
  return true;
}

static Word parse_word(std::istringstream& in, int line_no) {
  Word w;
  std::string tok;
  while (in >> tok) {
    size_t caret = tok.find('^');
    std::string gen_part = caret == std::string::npos ? tok : tok.substr(0, caret);
    if (gen_part.size() < 2 || gen_part[0] != 'g')
      throw ValidationError("bad word factor on line " + std::to_string(line_no));
    long long gen = 0, exp = 1;
    try {
      gen = std::stoll(gen_part.substr(1));
      if (caret != std::string::npos) exp = std::stoll(tok.substr(caret + 1));
    } catch (const std::exception&) {
      throw ValidationError("bad word factor on line " + std::to_string(line_no));
    }
    w.push_back({static_cast<int>(gen - 1), exp});
  }
  return w;
}

PcPresentation PcPresentation::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  int p = 0, n = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    if (!(ls >> p >> n)) throw ValidationError("expected 'p n' on first line");
    break;
  }
  if (p == 0) throw ValidationError("empty presentation file");
  if (n < 1) throw ValidationError("need at least one generator");
  std::vector<int> weights(n, 0);
  struct PendingRel {
    char kind;
    int j, i;
    Word w;
    int line_no;
  };
  std::vector<PendingRel> rels;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    if (kind == "w") {
      int i = 0, wt = 0;
      if (!(ls >> i >> wt) || i < 1 || i > n)
        throw ValidationError("bad weight line " + std::to_string(line_no));
      weights[i - 1] = wt;
    } else if (kind == "p") {
      int i = 0;
      std::string colon;
      if (!(ls >> i >> colon) || colon != ":" || i < 1 || i > n)
        throw ValidationError("bad power line " + std::to_string(line_no));
      rels.push_back({'p', i - 1, -1, parse_word(ls, line_no), line_no});
    } else if (kind == "c") {
      int j = 0, i = 0;
      std::string colon;
      if (!(ls >> j >> i >> colon) || colon != ":" || j < 1 || j > n || i < 1 || i > n)
        throw ValidationError("bad commutator line " + std::to_string(line_no));
      rels.push_back({'c', j - 1, i - 1, parse_word(ls, line_no), line_no});
    } else {
      throw ValidationError("unknown line kind '" + kind + "' on line " +
                            std::to_string(line_no));
    }
  }
  for (int i = 0; i < n; ++i)
    if (weights[i] == 0) throw ValidationError("missing weight for generator " +
                                               std::to_string(i + 1));
  PcPresentation pres(p, weights);
  for (auto& r : rels) {
    try {
      if (r.kind == 'p')
        pres.set_power(r.j, std::move(r.w));
      else
        pres.set_comm(r.j, r.i, std::move(r.w));
    } catch (const ValidationError& e) {
      throw ValidationError(std::string(e.what()) + " (line " +
                            std::to_string(r.line_no) + ")");
    }
  }
  return pres;
}

static void format_word(std::ostringstream& out, const Word& w) {
  bool first = true;
  for (const auto& f : w) {
    if (!first) out << ' ';
    first = false;
    out << 'g' << (f.gen + 1) << '^' << f.exp;
  }
}

std::string PcPresentation::format() const {
  std::ostringstream out;
  out << p_ << ' ' << n_ << '\n';
  for (int i = 0; i < n_; ++i) out << "w " << (i + 1) << ' ' << weights_[i] << '\n';
  for (int i = 0; i < n_; ++i) {
    if (power_[i].empty()) continue;
    out << "p " << (i + 1) << " : ";
    format_word(out, power_[i]);
    out << '\n';
  }
  for (int j = 0; j < n_; ++j)
    for (int i = 0; i < j; ++i) {
      if (comm_[j][i].empty()) continue;
      out << "c " << (j + 1) << ' ' << (i + 1) << " : ";
      format_word(out, comm_[j][i]);
      out << '\n';
    }
  return out.str();
}

}  // namespace pcg
