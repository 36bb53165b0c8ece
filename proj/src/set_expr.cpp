#include "frobdens/set_expr.hpp"

#include "frobdens/error.hpp"

#include <algorithm>
#include <numeric>

namespace frobdens {

namespace {

std::string join_ids(const std::vector<std::uint32_t>& ids) {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? "," : "") + std::to_string(ids[i]);
  return s;
}

}  // namespace

SetExprPtr SetExpr::all() { return SetExprPtr(new SetExpr(Kind::All)); }
SetExprPtr SetExpr::empty() { return SetExprPtr(new SetExpr(Kind::Empty)); }

SetExprPtr SetExpr::congruence(std::int64_t modulus, std::vector<std::int64_t> residues) {
  if (modulus < 1) throw Error(ErrorCode::BadInput, "congruence modulus must be positive");
  auto e = std::shared_ptr<SetExpr>(new SetExpr(Kind::Congruence));
  e->modulus_ = modulus;
  e->residue_mask_.assign(static_cast<std::size_t>(modulus), 0);
  for (auto& r : residues) {
    r = ((r % modulus) + modulus) % modulus;
    e->residue_mask_[static_cast<std::size_t>(r)] = 1;
  }
  std::sort(residues.begin(), residues.end());
  residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
  e->residues_ = std::move(residues);
  e->label_ = "congruence(" + std::to_string(modulus) + ":";
  for (std::size_t i = 0; i < e->residues_.size(); ++i)
    e->label_ += (i ? "," : "") + std::to_string(e->residues_[i]);
  e->label_ += ")";
  return e;
}

SetExprPtr SetExpr::chebotarev_abelian(std::int64_t conductor, const std::vector<std::int64_t>& kernel,
                                       std::int64_t sigma) {
  if (conductor < 1) throw Error(ErrorCode::BadInput, "conductor must be positive");
  auto unit = [conductor](std::int64_t r) {
    r = ((r % conductor) + conductor) % conductor;
    if (std::gcd(r, conductor) != 1)
      throw Error(ErrorCode::MalformedGenerator, std::to_string(r) + " is not a unit mod " + std::to_string(conductor));
    return r;
  };
  std::vector<std::int64_t> sub{1 % conductor};
  std::vector<char> in(static_cast<std::size_t>(conductor), 0);
  in[static_cast<std::size_t>(1 % conductor)] = 1;
  std::vector<std::int64_t> gens;
  for (auto k : kernel) gens.push_back(unit(k));
  for (std::size_t head = 0; head < sub.size(); ++head)
    for (auto g : gens) {
      const std::int64_t c = sub[head] * g % conductor;
      if (!in[static_cast<std::size_t>(c)]) {
        in[static_cast<std::size_t>(c)] = 1;
        sub.push_back(c);
      }
    }
  const std::int64_t s = unit(sigma);
  std::vector<std::int64_t> coset;
  for (auto u : sub) coset.push_back(s * u % conductor);
  auto base = congruence(conductor, coset);
  auto e = std::shared_ptr<SetExpr>(new SetExpr(*base));
  e->label_ = "chebotarev(m=" + std::to_string(conductor) + ",sigma=" + std::to_string(s) + ")";
  return e;
}

SetExprPtr SetExpr::chebotarev(const FieldScenario& sc, const std::vector<ElemId>& elements) {
  auto e = std::shared_ptr<SetExpr>(new SetExpr(Kind::Chebotarev));
  for (ElemId y : elements) {
    sc.galois_l()->require(y);
    e->classes_.push_back(sc.g_class_of(y));
  }
  std::sort(e->classes_.begin(), e->classes_.end());
  e->classes_.erase(std::unique(e->classes_.begin(), e->classes_.end()), e->classes_.end());
  e->label_ = "chebotarev(G-classes " + join_ids(e->classes_) + ")";
  return e;
}

SetExprPtr SetExpr::fiber(const FieldScenario& sc, const std::vector<ElemId>& elements) {
  auto e = std::shared_ptr<SetExpr>(new SetExpr(Kind::Fiber));
  for (ElemId y : elements) {
    sc.galois_l()->require(y);
    e->classes_.push_back(sc.h_class_of(y));
  }
  std::sort(e->classes_.begin(), e->classes_.end());
  e->classes_.erase(std::unique(e->classes_.begin(), e->classes_.end()), e->classes_.end());
  e->label_ = "fiber(H-classes " + join_ids(e->classes_) + ")";
  return e;
}

SetExprPtr SetExpr::frobenius_is(ElemId x) {
  auto e = std::shared_ptr<SetExpr>(new SetExpr(Kind::FrobeniusIs));
  e->x_ = x;
  e->label_ = "P^x(x=#" + std::to_string(x) + ")";
  return e;
}

SetExprPtr SetExpr::frobenius_over(const FieldScenario& sc, ElementSet subgroup, ElemId x) {
  const auto& gk = *sc.galois_k();
  gk.require(x);
  if (!is_subgroup(gk, subgroup)) throw Error(ErrorCode::BadInput, "frobenius_over needs a subgroup of Gal(K/Q)");
  auto e = std::shared_ptr<SetExpr>(new SetExpr(Kind::FrobeniusOver));
  e->x_ = x;
  std::vector<char> in_a(gk.size(), 0);
  for (ElemId a : subgroup) in_a[a] = 1;
  e->over_mask_.assign(gk.size(), 0);
  for (ElemId z = 0; z < gk.size(); ++z) {
    // Residue degree of the prime below in K^A is the order of z modulo A.
    ElemId power = z;
    while (!in_a[power]) power = gk.mul(power, z);
    e->over_mask_[z] = power == x ? 1 : 0;
  }
  e->label_ = "P^x_over(|A|=" + std::to_string(subgroup.size()) + ",x=#" + std::to_string(x) + ")";
  return e;
}

SetExprPtr SetExpr::union_of(std::vector<SetExprPtr> parts) {
  auto e = std::shared_ptr<SetExpr>(new SetExpr(Kind::Union));
  e->parts_ = std::move(parts);
  return e;
}

SetExprPtr SetExpr::intersect_of(std::vector<SetExprPtr> parts) {
  auto e = std::shared_ptr<SetExpr>(new SetExpr(Kind::Intersect));
  e->parts_ = std::move(parts);
  return e;
}

SetExprPtr SetExpr::complement(SetExprPtr inner) {
  auto e = std::shared_ptr<SetExpr>(new SetExpr(Kind::Complement));
  e->parts_.push_back(std::move(inner));
  return e;
}

SetExprPtr SetExpr::minus_finite(SetExprPtr inner, std::vector<std::uint64_t> primes) {
  auto e = std::shared_ptr<SetExpr>(new SetExpr(Kind::MinusFinite));
  e->parts_.push_back(std::move(inner));
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  e->finite_ = std::move(primes);
  return e;
}

bool SetExpr::contains(const FieldScenario& sc, std::uint64_t p, std::uint32_t h_class) const {
  switch (kind_) {
    case Kind::All:
      return true;
    case Kind::Empty:
      return false;
    case Kind::Congruence:
      return residue_mask_[static_cast<std::size_t>(p % static_cast<std::uint64_t>(modulus_))] != 0;
    case Kind::Chebotarev:
    case Kind::Fiber:
    case Kind::FrobeniusIs:
    case Kind::FrobeniusOver:
      return *decide(sc, h_class);
    case Kind::Union:
      return std::any_of(parts_.begin(), parts_.end(),
                         [&](const SetExprPtr& e) { return e->contains(sc, p, h_class); });
    case Kind::Intersect:
      return std::all_of(parts_.begin(), parts_.end(),
                         [&](const SetExprPtr& e) { return e->contains(sc, p, h_class); });
    case Kind::Complement:
      return !parts_[0]->contains(sc, p, h_class);
    case Kind::MinusFinite:
      return !std::binary_search(finite_.begin(), finite_.end(), p) &&
             parts_[0]->contains(sc, p, h_class);
  }
  return false;
}

std::optional<bool> SetExpr::decide(const FieldScenario& sc, std::uint32_t h_class) const {
  const auto& cls = sc.h_classes().at(h_class);
  switch (kind_) {
    case Kind::All:
      return true;
    case Kind::Empty:
      return false;
    case Kind::Congruence: {
      if (modulus_ == 1) return residue_mask_[0] != 0;
      if (sc.kind() != FieldKind::Abelian || sc.conductor() % modulus_ != 0) return std::nullopt;
      std::optional<bool> verdict;
      for (ElemId y : cls.elements)
        for (auto r : sc.residues_of(y)) {
          const bool in = residue_mask_[static_cast<std::size_t>(r % modulus_)] != 0;
          if (verdict && *verdict != in) return std::nullopt;
          verdict = in;
        }
      return verdict;
    }
    case Kind::Chebotarev:
      return std::binary_search(classes_.begin(), classes_.end(), sc.g_class_of(cls.elements.front()));
    case Kind::Fiber:
      return std::binary_search(classes_.begin(), classes_.end(), h_class);
    case Kind::FrobeniusIs:
      return cls.base == x_;
    case Kind::FrobeniusOver:
      return over_mask_.at(cls.base) != 0;
    case Kind::Union: {
      bool unknown = false;
      for (const auto& e : parts_) {
        auto v = e->decide(sc, h_class);
        if (!v) unknown = true;
        else if (*v) return true;
      }
      if (unknown) return std::nullopt;
      return false;
    }
    case Kind::Intersect: {
      bool unknown = false;
      for (const auto& e : parts_) {
        auto v = e->decide(sc, h_class);
        if (!v) unknown = true;
        else if (!*v) return false;
      }
      if (unknown) return std::nullopt;
      return true;
    }
    case Kind::Complement: {
      auto v = parts_[0]->decide(sc, h_class);
      if (!v) return std::nullopt;
      return !*v;
    }
    case Kind::MinusFinite:
      return parts_[0]->decide(sc, h_class);
  }
  return std::nullopt;
}

std::string SetExpr::to_string() const {
  auto list = [this](const char* name) {
    std::string s = std::string(name) + "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? ", " : "") + parts_[i]->to_string();
    return s + ")";
  };
  switch (kind_) {
    case Kind::All:
      return "all";
    case Kind::Empty:
      return "empty";
    case Kind::Union:
      return list("union");
    case Kind::Intersect:
      return list("intersect");
    case Kind::Complement:
      return list("complement");
    case Kind::MinusFinite:
      return parts_[0]->to_string() + " minus " + std::to_string(finite_.size()) + " primes";
    default:
      return label_;
  }
}

SetExprPtr restrict_to_frobenius(const SetExprPtr& s, ElemId x) {
  return SetExpr::intersect_of({s, SetExpr::frobenius_is(x)});
}

}  // namespace frobdens
