#include "frobdens/group.hpp"

#include "frobdens/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

namespace frobdens {

namespace {

constexpr std::size_t kTableLimit = 1024;
constexpr std::size_t kExhaustiveLimit = 64;
constexpr int kRandomTriples = 10000;

std::vector<std::size_t> divisors(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t k = 1; k * k <= n; ++k) {
    if (n % k == 0) {
      out.push_back(k);
      if (k * k != n) out.push_back(n / k);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_prime_small(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

std::int64_t pow_mod(std::int64_t b, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  b %= m;
  if (b < 0) b += m;
  while (e > 0) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

std::vector<char> membership(std::size_t n, const ElementSet& s) {
  std::vector<char> in(n, 0);
  for (ElemId a : s) in.at(a) = 1;
  return in;
}

ElementSet sorted_unique(std::vector<ElemId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

/// A small generating set for the subgroup spanned by `s`, picked greedily in id order.
std::vector<ElemId> greedy_generators(const FiniteGroup& g, const ElementSet& s) {
  std::vector<ElemId> gens;
  std::vector<char> in(g.size(), 0);
  in[g.identity()] = 1;
  for (ElemId a : s) {
    if (in.at(a)) continue;
    gens.push_back(a);
    for (ElemId b : subgroup_generated(g, gens)) in[b] = 1;
  }
  return gens;
}

}  // namespace

std::size_t CodeHash::operator()(const Code& c) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto v : c) {
    h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(v));
    h *= 1099511628211ull;
  }
  return h;
}

// ---------------------------------------------------------------------------
// FiniteGroup

std::shared_ptr<const FiniteGroup> FiniteGroup::generate(std::string label, Code identity,
                                                         std::vector<Code> generators, Op op,
                                                         Formatter fmt) {
  for (const auto& gen : generators) {
    if (gen.size() != identity.size())
      throw Error(ErrorCode::MalformedGenerator, "generator encoding has wrong length");
  }
  std::shared_ptr<FiniteGroup> g(new FiniteGroup());
  g->label_ = std::move(label);
  g->op_ = std::move(op);
  g->fmt_ = std::move(fmt);
  g->codes_.push_back(identity);
  g->index_.emplace(identity, 0);
  for (std::size_t head = 0; head < g->codes_.size(); ++head) {
    for (const auto& gen : generators) {
      Code c = g->op_(g->codes_[head], gen);
      if (g->index_.count(c)) continue;
      if (g->codes_.size() >= kGroupSizeCap)
        throw Error(ErrorCode::SizeCapExceeded,
                    g->label_ + " exceeds " + std::to_string(kGroupSizeCap) + " elements");
      g->index_.emplace(c, static_cast<ElemId>(g->codes_.size()));
      g->codes_.push_back(std::move(c));
    }
  }
  g->identity_ = 0;
  g->finish(std::move(generators));
  return g;
}

std::shared_ptr<const FiniteGroup> FiniteGroup::from_elements(std::string label,
                                                              std::vector<Code> elements, Op op,
                                                              Formatter fmt) {
  if (elements.empty()) throw Error(ErrorCode::BadInput, "empty element list");
  if (elements.size() > kGroupSizeCap)
    throw Error(ErrorCode::SizeCapExceeded,
                label + " exceeds " + std::to_string(kGroupSizeCap) + " elements");
  std::shared_ptr<FiniteGroup> g(new FiniteGroup());
  g->label_ = std::move(label);
  g->op_ = std::move(op);
  g->fmt_ = std::move(fmt);
  g->codes_ = std::move(elements);
  for (std::size_t i = 0; i < g->codes_.size(); ++i) {
    if (!g->index_.emplace(g->codes_[i], static_cast<ElemId>(i)).second)
      throw Error(ErrorCode::BadInput, "duplicate element encoding");
  }
  bool found = false;
  for (std::size_t i = 0; i < g->codes_.size() && !found; ++i) {
    if (g->op_(g->codes_[i], g->codes_[i]) == g->codes_[i]) {
      g->identity_ = static_cast<ElemId>(i);
      found = true;
    }
  }
  if (!found) throw Error(ErrorCode::InvariantBreach, g->label_ + " has no identity");
  g->finish({});
  return g;
}

void FiniteGroup::finish(std::vector<Code> generator_codes) {
  const std::size_t n = codes_.size();
  if (n <= kTableLimit) {
    table_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        auto it = index_.find(op_(codes_[a], codes_[b]));
        if (it == index_.end())
          throw Error(ErrorCode::InvariantBreach, label_ + " is not closed under its operation");
        table_[a * n + b] = it->second;
      }
  }

  for (std::size_t a = 0; a < n; ++a) {
    if (mul(identity_, a) != a || mul(a, identity_) != a)
      throw Error(ErrorCode::InvariantBreach, label_ + ": identity is not two-sided");
  }

  order_.assign(n, 0);
  inverse_.assign(n, 0);
  const auto divs = divisors(n);
  for (std::size_t a = 0; a < n; ++a) {
    // Walk powers for small orders, then test only divisors of |G|.
    ElemId cur = static_cast<ElemId>(a);
    for (std::size_t k = 1; k <= 64 && k <= n; ++k) {
      if (cur == identity_) {
        order_[a] = k;
        break;
      }
      cur = mul(cur, static_cast<ElemId>(a));
    }
    for (std::size_t k : divs) {
      if (order_[a] != 0) break;
      if (k > 64 && pow(static_cast<ElemId>(a), static_cast<long long>(k)) == identity_) order_[a] = k;
    }
    if (order_[a] == 0)
      throw Error(ErrorCode::InvariantBreach, label_ + ": element order does not divide |G|");
    inverse_[a] = pow(static_cast<ElemId>(a), static_cast<long long>(order_[a] - 1));
  }

  auto assoc = [&](ElemId a, ElemId b, ElemId c) {
    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
      throw Error(ErrorCode::InvariantBreach, label_ + " is not associative");
  };
  if (n <= kExhaustiveLimit) {
    for (ElemId a = 0; a < n; ++a)
      for (ElemId b = 0; b < n; ++b)
        for (ElemId c = 0; c < n; ++c) assoc(a, b, c);
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<ElemId> pick(0, static_cast<ElemId>(n - 1));
    for (int t = 0; t < kRandomTriples; ++t) assoc(pick(rng), pick(rng), pick(rng));
  }

  if (!generator_codes.empty()) {
    for (const auto& c : generator_codes) generators_.push_back(index_of(c));
  } else {
    ElementSet all(n);
    std::iota(all.begin(), all.end(), 0);
    generators_ = greedy_generators(*this, all);
  }
}

std::optional<ElemId> FiniteGroup::find(const Code& c) const {
  auto it = index_.find(c);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ElemId FiniteGroup::index_of(const Code& c) const {
  auto it = index_.find(c);
  if (it == index_.end())
    throw Error(ErrorCode::ElementNotInGroup, "element not in " + label_);
  return it->second;
}

void FiniteGroup::require(ElemId a) const {
  if (!contains(a))
    throw Error(ErrorCode::ElementNotInGroup, "element id " + std::to_string(a) + " not in " + label_);
}

ElemId FiniteGroup::mul(ElemId a, ElemId b) const {
  const std::size_t n = codes_.size();
  if (!table_.empty()) return table_[static_cast<std::size_t>(a) * n + b];
  auto it = index_.find(op_(codes_.at(a), codes_.at(b)));
  if (it == index_.end())
    throw Error(ErrorCode::InvariantBreach, label_ + " is not closed under its operation");
  return it->second;
}

ElemId FiniteGroup::pow(ElemId a, long long k) const {
  if (k < 0) {
    a = inverse(a);
    k = -k;
  }
  ElemId result = identity_;
  ElemId base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    k >>= 1;
    if (k > 0) base = mul(base, base);
  }
  return result;
}

bool FiniteGroup::is_abelian() const {
  for (ElemId a : generators_)
    for (ElemId b : generators_)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// GroupMorphism

GroupMorphism::GroupMorphism(GroupPtr source, GroupPtr target, std::vector<ElemId> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_->size())
    throw Error(ErrorCode::NotHomomorphism, "image table is not total on the source");
  for (ElemId b : images_) {
    if (!target_->contains(b))
      throw Error(ErrorCode::NotHomomorphism, "image outside the target group");
  }
  if (images_[source_->identity()] != target_->identity())
    throw Error(ErrorCode::NotHomomorphism, "identity does not map to identity");
  const std::size_t n = source_->size();
  if (n <= kExhaustiveLimit) {
    for (ElemId a = 0; a < n; ++a)
      for (ElemId b = 0; b < n; ++b)
        if (images_[source_->mul(a, b)] != target_->mul(images_[a], images_[b]))
          throw Error(ErrorCode::NotHomomorphism, "map(ab) != map(a)map(b)");
  } else {
    // Multiplicativity against a generating set extends to all pairs.
    for (ElemId a = 0; a < n; ++a)
      for (ElemId t : source_->generators())
        if (images_[source_->mul(a, t)] != target_->mul(images_[a], images_[t]))
          throw Error(ErrorCode::NotHomomorphism, "map(ab) != map(a)map(b)");
  }
}

ElementSet GroupMorphism::kernel() const { return preimage(target_->identity()); }

ElementSet GroupMorphism::preimage(ElemId x) const {
  target_->require(x);
  ElementSet out;
  for (ElemId a = 0; a < images_.size(); ++a)
    if (images_[a] == x) out.push_back(a);
  return out;
}

bool GroupMorphism::is_surjective() const {
  std::vector<char> hit(target_->size(), 0);
  for (ElemId b : images_) hit[b] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

// ---------------------------------------------------------------------------
// Concrete groups

Code parse_cycles(const std::string& text, int n) {
  Code perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)) || !t.empty()) t += c;
  if (t.empty() || t == "e" || t == "()" || t == "identity" || t == "1") return perm;

  // Cycles compose right to left, matching permutation multiplication.
  std::vector<std::vector<int>> cycles;
  std::size_t pos = 0;
  while (pos < t.size()) {
    if (std::isspace(static_cast<unsigned char>(t[pos]))) {
      ++pos;
      continue;
    }
    if (t[pos] != '(') throw Error(ErrorCode::MalformedGenerator, "bad cycle notation: " + text);
    auto close = t.find(')', pos);
    if (close == std::string::npos)
      throw Error(ErrorCode::MalformedGenerator, "unclosed cycle: " + text);
    std::istringstream in(t.substr(pos + 1, close - pos - 1));
    std::vector<int> cyc;
    std::string tok;
    while (in >> tok) {
      for (auto& ch : tok)
        if (ch == ',') ch = ' ';
      std::istringstream sub(tok);
      int v;
      while (sub >> v) {
        if (v < 1 || v > n)
          throw Error(ErrorCode::MalformedGenerator, "point out of range in " + text);
        cyc.push_back(v - 1);
      }
    }
    std::vector<int> seen = cyc;
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
      throw Error(ErrorCode::MalformedGenerator, "repeated point in cycle " + text);
    cycles.push_back(std::move(cyc));
    pos = close + 1;
  }
  for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
    Code c(n);
    std::iota(c.begin(), c.end(), 0);
    for (std::size_t k = 0; k < it->size(); ++k) c[(*it)[k]] = (*it)[(k + 1) % it->size()];
    Code next(n);
    for (int i = 0; i < n; ++i) next[i] = c[perm[i]];
    perm = std::move(next);
  }
  return perm;
}

std::string format_cycles(const Code& perm) {
  std::vector<char> seen(perm.size(), 0);
  std::string out;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i] || perm[i] == static_cast<std::int32_t>(i)) continue;
    out += "(";
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = 1;
      if (!first) out += " ";
      out += std::to_string(j + 1);
      first = false;
      j = static_cast<std::size_t>(perm[j]);
    }
    out += ")";
  }
  return out.empty() ? "e" : out;
}

std::vector<int> cycle_type(const Code& perm) {
  std::vector<char> seen(perm.size(), 0);
  std::vector<int> out;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
      seen[j] = 1;
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.begin(), out.end());
  return out;
}

GroupPtr permutation_group(int n, const std::vector<Code>& generators, std::string label) {
  if (n < 1) throw Error(ErrorCode::MalformedGenerator, "permutation degree must be positive");
  for (const auto& gen : generators) {
    if (gen.size() != static_cast<std::size_t>(n))
      throw Error(ErrorCode::MalformedGenerator, "permutation has wrong degree");
    std::vector<char> hit(n, 0);
    for (auto v : gen) {
      if (v < 0 || v >= n || hit[v])
        throw Error(ErrorCode::MalformedGenerator, "not a permutation");
      hit[v] = 1;
    }
  }
  Code id(n);
  std::iota(id.begin(), id.end(), 0);
  auto compose = [](const Code& a, const Code& b) {
    Code c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[static_cast<std::size_t>(b[i])];
    return c;
  };
  if (label.empty()) label = "Perm(" + std::to_string(n) + ")";
  return FiniteGroup::generate(std::move(label), id, generators, compose, format_cycles);
}

GroupPtr symmetric_group(int n) {
  std::vector<Code> gens;
  if (n >= 2) {
    gens.push_back(parse_cycles("(1 2)", n));
    if (n >= 3) {
      std::string cyc = "(";
      for (int i = 1; i <= n; ++i) cyc += std::to_string(i) + (i < n ? " " : ")");
      gens.push_back(parse_cycles(cyc, n));
    }
  }
  return permutation_group(n, gens, "S_" + std::to_string(n));
}

GroupPtr alternating_group(int n) {
  std::vector<Code> gens;
  for (int k = 3; k <= n; ++k)
    gens.push_back(parse_cycles("(1 2 " + std::to_string(k) + ")", n));
  return permutation_group(n, gens, "A_" + std::to_string(n));
}

GroupPtr units_group(std::int64_t m, const std::vector<std::int64_t>& generators) {
  if (m < 1) throw Error(ErrorCode::MalformedGenerator, "modulus must be positive");
  std::vector<Code> gens;
  for (auto r : generators) {
    std::int64_t red = ((r % m) + m) % m;
    if (std::gcd(red, m) != 1)
      throw Error(ErrorCode::MalformedGenerator,
                  std::to_string(r) + " is not a unit mod " + std::to_string(m));
    gens.push_back(Code{static_cast<std::int32_t>(red)});
  }
  auto op = [m](const Code& a, const Code& b) {
    return Code{static_cast<std::int32_t>(static_cast<std::int64_t>(a[0]) * b[0] % m)};
  };
  auto fmt = [](const Code& a) { return std::to_string(a[0]); };
  return FiniteGroup::generate("(Z/" + std::to_string(m) + ")^x",
                               Code{static_cast<std::int32_t>(1 % m)}, gens, op, fmt);
}

GroupPtr full_units_group(std::int64_t m) {
  if (m < 1) throw Error(ErrorCode::MalformedGenerator, "modulus must be positive");
  std::vector<char> in(static_cast<std::size_t>(m), 0);
  std::vector<std::int64_t> members{1 % m};
  in[1 % m] = 1;
  std::vector<std::int64_t> gens;
  std::size_t count = 0;
  for (std::int64_t r = 1; r < m; ++r)
    if (std::gcd(r, m) == 1) ++count;
  if (count > kGroupSizeCap)
    throw Error(ErrorCode::SizeCapExceeded, "(Z/" + std::to_string(m) + ")^x is too large");
  for (std::int64_t r = 2; r < m; ++r) {
    if (std::gcd(r, m) != 1 || in[r]) continue;
    gens.push_back(r);
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (auto gnr : gens) {
        std::int64_t c = members[head] * gnr % m;
        if (!in[c]) {
          in[c] = 1;
          members.push_back(c);
        }
      }
    }
  }
  return units_group(m, gens);
}

GroupPtr cyclic_group(int n) {
  if (n < 1) throw Error(ErrorCode::MalformedGenerator, "cyclic order must be positive");
  std::vector<Code> gens;
  if (n > 1) gens.push_back(Code{1});
  auto op = [n](const Code& a, const Code& b) { return Code{(a[0] + b[0]) % n}; };
  auto fmt = [](const Code& a) { return std::to_string(a[0]); };
  return FiniteGroup::generate("Z/" + std::to_string(n), Code{0}, gens, op, fmt);
}

// ---------------------------------------------------------------------------
// Conjugacy calculus

ElementSet conjugacy_class(const FiniteGroup& g, ElemId a) {
  g.require(a);
  std::vector<ElemId> out;
  out.reserve(g.size());
  for (ElemId h = 0; h < g.size(); ++h) out.push_back(g.mul(g.mul(h, a), g.inverse(h)));
  return sorted_unique(std::move(out));
}

ElementSet centralizer(const FiniteGroup& g, ElemId a) {
  g.require(a);
  ElementSet out;
  for (ElemId h = 0; h < g.size(); ++h)
    if (g.mul(h, a) == g.mul(a, h)) out.push_back(h);
  return out;
}

ElementSet centralizer_in(const FiniteGroup& g, const ElementSet& h, ElemId a) {
  g.require(a);
  ElementSet out;
  for (ElemId b : h)
    if (g.mul(b, a) == g.mul(a, b)) out.push_back(b);
  return out;
}

std::size_t element_order(const FiniteGroup& g, ElemId a) {
  g.require(a);
  return g.order(a);
}

std::vector<ElementSet> conjugacy_classes(const FiniteGroup& g) {
  std::vector<char> done(g.size(), 0);
  std::vector<ElementSet> out;
  for (ElemId a = 0; a < g.size(); ++a) {
    if (done[a]) continue;
    auto cls = conjugacy_class(g, a);
    for (ElemId b : cls) done[b] = 1;
    out.push_back(std::move(cls));
  }
  return out;
}

ElementSet cyclic_subgroup(const FiniteGroup& g, ElemId a) {
  g.require(a);
  std::vector<ElemId> out;
  ElemId cur = g.identity();
  for (std::size_t k = 0; k < g.order(a); ++k) {
    out.push_back(cur);
    cur = g.mul(cur, a);
  }
  return sorted_unique(std::move(out));
}

ElementSet subgroup_generated(const FiniteGroup& g, const std::vector<ElemId>& gens) {
  for (ElemId t : gens) g.require(t);
  std::vector<char> in(g.size(), 0);
  std::vector<ElemId> members{g.identity()};
  in[g.identity()] = 1;
  for (std::size_t head = 0; head < members.size(); ++head) {
    for (ElemId t : gens) {
      ElemId c = g.mul(members[head], t);
      if (!in[c]) {
        in[c] = 1;
        members.push_back(c);
      }
    }
  }
  return sorted_unique(std::move(members));
}

bool is_subgroup(const FiniteGroup& g, const ElementSet& h) {
  for (ElemId a : h) g.require(a);
  auto hs = sorted_unique(h);
  if (!std::binary_search(hs.begin(), hs.end(), g.identity())) return false;
  return subgroup_generated(g, greedy_generators(g, hs)) == hs;
}

bool is_normal(const FiniteGroup& g, const ElementSet& h) {
  if (!is_subgroup(g, h)) return false;
  auto in = membership(g.size(), h);
  const auto h_gens = greedy_generators(g, sorted_unique(h));
  for (ElemId t : g.generators())
    for (ElemId s : h_gens)
      if (!in[g.mul(g.mul(t, s), g.inverse(t))]) return false;
  return true;
}

ElementSet normal_closure(const FiniteGroup& g, const ElementSet& s) {
  std::vector<ElemId> conj;
  for (ElemId a : s) {
    auto cls = conjugacy_class(g, a);
    conj.insert(conj.end(), cls.begin(), cls.end());
  }
  return subgroup_generated(g, greedy_generators(g, sorted_unique(std::move(conj))));
}

Quotient quotient(const GroupPtr& g, const ElementSet& h) {
  auto hs = sorted_unique(h);
  if (!is_normal(*g, hs)) throw Error(ErrorCode::NotNormal, "subgroup is not normal in " + g->label());
  constexpr ElemId kUnset = ~ElemId{0};
  auto rep = std::make_shared<std::vector<ElemId>>(g->size(), kUnset);
  for (ElemId a = 0; a < g->size(); ++a) {
    if ((*rep)[a] != kUnset) continue;
    for (ElemId b : hs) (*rep)[g->mul(a, b)] = a;
  }
  std::vector<Code> gens;
  for (ElemId t : g->generators()) gens.push_back(Code{static_cast<std::int32_t>((*rep)[t])});
  auto op = [g, rep](const Code& a, const Code& b) {
    return Code{static_cast<std::int32_t>(
        (*rep)[g->mul(static_cast<ElemId>(a[0]), static_cast<ElemId>(b[0]))])};
  };
  auto fmt = [g](const Code& a) { return "[" + g->format(static_cast<ElemId>(a[0])) + "]"; };
  auto q = FiniteGroup::generate(g->label() + "/H",
                                 Code{static_cast<std::int32_t>((*rep)[g->identity()])}, gens,
                                 op, fmt);
  std::vector<ElemId> images(g->size());
  for (ElemId a = 0; a < g->size(); ++a)
    images[a] = q->index_of(Code{static_cast<std::int32_t>((*rep)[a])});
  return Quotient{q, GroupMorphism(g, q, std::move(images))};
}

FiberClassPartition fiber_h_classes(const GroupMorphism& pi, ElemId x) {
  pi.target()->require(x);
  const auto& g = *pi.source();
  const auto h = pi.kernel();
  FiberClassPartition out{x, {}};
  std::vector<char> done(g.size(), 0);
  for (ElemId y : pi.preimage(x)) {
    if (done[y]) continue;
    std::vector<ElemId> orbit;
    for (ElemId k : h) orbit.push_back(g.mul(g.mul(k, y), g.inverse(k)));
    auto cls = sorted_unique(std::move(orbit));
    for (ElemId z : cls) done[z] = 1;
    out.classes.push_back(std::move(cls));
  }
  return out;
}

FiberedProduct fibered_product(const GroupMorphism& pi1, const GroupMorphism& pi2) {
  if (pi1.target() != pi2.target())
    throw Error(ErrorCode::TargetMismatch, "projections have different targets");
  const GroupPtr g1 = pi1.source();
  const GroupPtr g2 = pi2.source();
  std::vector<Code> elements;
  for (ElemId a = 0; a < g1->size(); ++a)
    for (ElemId b = 0; b < g2->size(); ++b)
      if (pi1(a) == pi2(b)) {
        if (elements.size() >= kGroupSizeCap)
          throw Error(ErrorCode::SizeCapExceeded, "fibered product is too large");
        elements.push_back(Code{static_cast<std::int32_t>(a), static_cast<std::int32_t>(b)});
      }
  auto op = [g1, g2](const Code& a, const Code& b) {
    return Code{static_cast<std::int32_t>(g1->mul(a[0], b[0])),
                static_cast<std::int32_t>(g2->mul(a[1], b[1]))};
  };
  auto fmt = [g1, g2](const Code& a) {
    return "(" + g1->format(a[0]) + ", " + g2->format(a[1]) + ")";
  };
  auto fp = FiniteGroup::from_elements(g1->label() + " x_Q " + g2->label(), std::move(elements),
                                       op, fmt);
  std::vector<ElemId> first(fp->size()), second(fp->size());
  for (ElemId e = 0; e < fp->size(); ++e) {
    first[e] = static_cast<ElemId>(fp->code(e)[0]);
    second[e] = static_cast<ElemId>(fp->code(e)[1]);
  }
  return FiberedProduct{fp, GroupMorphism(fp, g1, std::move(first)),
                        GroupMorphism(fp, g2, std::move(second))};
}

FiberedProduct direct_product(const GroupPtr& g1, const GroupPtr& g2) {
  auto trivial = cyclic_group(1);
  return fibered_product(GroupMorphism(g1, trivial, std::vector<ElemId>(g1->size(), 0)),
                         GroupMorphism(g2, trivial, std::vector<ElemId>(g2->size(), 0)));
}

std::optional<ElemId> pair_element(const FiberedProduct& fp, ElemId a, ElemId b) {
  return fp.group->find(Code{static_cast<std::int32_t>(a), static_cast<std::int32_t>(b)});
}

SemidirectTower semidirect_tower(int d, std::int64_t p, std::int64_t chi_generator, int level) {
  if (d < 1 || level < 0) throw Error(ErrorCode::BadInput, "tower needs d >= 1 and level >= 0");
  if (!is_prime_small(p)) throw Error(ErrorCode::BadInput, std::to_string(p) + " is not prime");
  std::int64_t c = ((chi_generator % p) + p) % p;
  if (c == 0 || pow_mod(c, d, p) != 1)
    throw Error(ErrorCode::NotHomomorphism,
                "chi(1) = " + std::to_string(chi_generator) + " does not satisfy chi(1)^d = 1 mod p");
  std::int64_t size = d;
  for (int k = 0; k < level; ++k) {
    size *= p;
    if (size > static_cast<std::int64_t>(kGroupSizeCap))
      throw Error(ErrorCode::SizeCapExceeded, "d * p^i exceeds the group size cap");
  }

  std::vector<std::int64_t> chi(d);
  for (int a = 0; a < d; ++a) chi[a] = pow_mod(c, a, p);

  std::vector<Code> elements;
  elements.reserve(static_cast<std::size_t>(size));
  for (int a = 0; a < d; ++a) {
    Code v(level, 0);
    while (true) {
      Code e{a};
      e.insert(e.end(), v.begin(), v.end());
      elements.push_back(std::move(e));
      int k = level - 1;
      while (k >= 0 && ++v[k] == p) v[k--] = 0;
      if (k < 0) break;
    }
  }
  auto op = [d, p, chi](const Code& x, const Code& y) {
    Code z(x.size());
    z[0] = (x[0] + y[0]) % d;
    const std::int64_t t = chi[x[0]];
    for (std::size_t k = 1; k < x.size(); ++k) z[k] = static_cast<std::int32_t>((x[k] + t * y[k]) % p);
    return z;
  };
  auto fmt = [](const Code& x) {
    std::string s = "(" + std::to_string(x[0]) + ";";
    for (std::size_t k = 1; k < x.size(); ++k) s += (k > 1 ? "," : "") + std::to_string(x[k]);
    return s + ")";
  };
  auto base = cyclic_group(d);
  auto group = FiniteGroup::from_elements(
      "H_" + std::to_string(level) + "(d=" + std::to_string(d) + ",p=" + std::to_string(p) + ")",
      std::move(elements), op, fmt);
  std::vector<ElemId> images(group->size());
  for (ElemId e = 0; e < group->size(); ++e) images[e] = base->index_of(Code{group->code(e)[0]});
  std::vector<ElemId> section(base->size());
  for (ElemId a = 0; a < base->size(); ++a) {
    Code e{base->code(a)[0]};
    e.resize(static_cast<std::size_t>(level) + 1, 0);
    section[a] = group->index_of(e);
  }
  return SemidirectTower{base,  group, GroupMorphism(group, base, std::move(images)),
                         std::move(section), d, p, c, level};
}

// ---------------------------------------------------------------------------
// Characters

CharacterFn CharacterFn::from_rational(GroupPtr g, std::vector<Rational> values) {
  if (values.size() != g->size())
    throw Error(ErrorCode::BadInput, "character table is not defined on every element");
  CharacterFn out;
  out.group = std::move(g);
  for (const auto& v : values) out.values.emplace_back(to_double(v), 0.0);
  out.exact = std::move(values);
  return out;
}

CharacterFn CharacterFn::from_complex(GroupPtr g, std::vector<std::complex<double>> values) {
  if (values.size() != g->size())
    throw Error(ErrorCode::BadInput, "character table is not defined on every element");
  CharacterFn out;
  out.group = std::move(g);
  out.values = std::move(values);
  return out;
}

InnerProduct inner_product(const CharacterFn& phi, const CharacterFn& psi) {
  if (phi.group != psi.group)
    throw Error(ErrorCode::GroupMismatch, "characters live on different groups");
  const std::size_t n = phi.group->size();
  std::complex<double> sum = 0.0;
  for (std::size_t a = 0; a < n; ++a) sum += phi.values[a] * std::conj(psi.values[a]);
  InnerProduct out{sum / static_cast<double>(n), std::nullopt};
  if (phi.exact && psi.exact) {
    Rational s = 0;
    for (std::size_t a = 0; a < n; ++a) s += (*phi.exact)[a] * (*psi.exact)[a];
    out.exact = s / Rational(n);
  }
  return out;
}

CharacterFn trivial_character(const GroupPtr& g) {
  return CharacterFn::from_rational(g, std::vector<Rational>(g->size(), Rational(1)));
}

CharacterFn regular_character(const GroupPtr& g) { return point_mass_character(g, g->identity()); }

CharacterFn point_mass_character(const GroupPtr& g, ElemId x) {
  g->require(x);
  std::vector<Rational> v(g->size(), Rational(0));
  v[x] = Rational(g->size());
  return CharacterFn::from_rational(g, std::move(v));
}

CharacterFn inflate(const CharacterFn& psi, const GroupMorphism& pi) {
  if (psi.group != pi.target())
    throw Error(ErrorCode::GroupMismatch, "character is not defined on the morphism target");
  const auto& src = pi.source();
  if (psi.exact) {
    std::vector<Rational> v(src->size());
    for (ElemId a = 0; a < src->size(); ++a) v[a] = (*psi.exact)[pi(a)];
    return CharacterFn::from_rational(src, std::move(v));
  }
  std::vector<std::complex<double>> v(src->size());
  for (ElemId a = 0; a < src->size(); ++a) v[a] = psi.values[pi(a)];
  return CharacterFn::from_complex(src, std::move(v));
}

bool is_density_character(const CharacterFn& psi) {
  const std::size_t n = psi.group->size();
  const auto one = trivial_character(psi.group);
  if (psi.exact) {
    for (const auto& v : *psi.exact)
      if (v < 0 || v > Rational(n)) return false;
    return *inner_product(psi, one).exact == 1;
  }
  constexpr double tol = 1e-12;
  const double scale = static_cast<double>(n);
  for (const auto& v : psi.values) {
    if (std::abs(v.imag()) > tol * scale) return false;
    if (v.real() < -tol * scale || v.real() > scale * (1 + tol)) return false;
  }
  return std::abs(inner_product(psi, one).value - 1.0) <= tol * scale;
}

CharacterFn cyclic_character(const GroupPtr& zd, int k) {
  const int d = static_cast<int>(zd->size());
  std::vector<std::complex<double>> v(d);
  std::vector<Rational> ex(d);
  bool rational = true;
  for (ElemId e = 0; e < zd->size(); ++e) {
    const int a = zd->code(e)[0];
    const int t = static_cast<int>((static_cast<long long>(k) * a) % d + d) % d;
    const double ang = 2.0 * std::numbers::pi * t / d;
    v[e] = {std::cos(ang), std::sin(ang)};
    if (t == 0) {
      v[e] = 1.0;
      ex[e] = 1;
    } else if (2 * t == d) {
      v[e] = -1.0;
      ex[e] = -1;
    } else {
      rational = false;
    }
  }
  if (rational) return CharacterFn::from_rational(zd, std::move(ex));
  return CharacterFn::from_complex(zd, std::move(v));
}

}  // namespace frobdens
