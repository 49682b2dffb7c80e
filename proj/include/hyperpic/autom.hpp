#ifndef HYPERPIC_AUTOM_HPP
#define HYPERPIC_AUTOM_HPP

// Reduced automorphism groups of smooth binary forms: the PGL_2-stabilizer of
// the root divisor, its classification, and the (p, l) strata.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperpic/binform.hpp"

namespace hyperpic {

enum class GroupKind { Cyclic, Dihedral, A4, S4, A5, Wild };

struct Classification {
  GroupKind kind;
  u64 n;  // cyclic: order; dihedral: half the order; otherwise the group order

  std::string name() const {
    switch (kind) {
      case GroupKind::Cyclic: return "cyclic";
      case GroupKind::Dihedral: return "dihedral";
      case GroupKind::A4: return "A4";
      case GroupKind::S4: return "S4";
      case GroupKind::A5: return "A5";
      case GroupKind::Wild: return "wild";
    }
    return "?";
  }

  /// e.g. "cyclic 5", "dihedral 12", "A4"
  std::string label() const {
    switch (kind) {
      case GroupKind::Cyclic: return "cyclic " + std::to_string(n);
      case GroupKind::Dihedral: return "dihedral " + std::to_string(2 * n);
      case GroupKind::Wild: return "wild " + std::to_string(n);
      default: return name();
    }
  }

  friend bool operator==(const Classification&, const Classification&) = default;
};

/// Element order -> number of elements of that order.
using OrderProfile = std::map<u64, u64>;

class ReducedAutGroup {
 public:
  /// Elements must form a group; they are sorted canonically here.
  ReducedAutGroup(const Field& f, std::vector<MoebiusMap> elems) : f_(&f), elems_(std::move(elems)) {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    for (const auto& m : elems_) {
      const u64 o = m.order(elems_.size());
      orders_.push_back(o);
      ++profile_[o];
    }
  }

  const Field& field() const { return *f_; }
  const std::vector<MoebiusMap>& elements() const { return elems_; }
  u64 order() const { return elems_.size(); }
  const OrderProfile& order_profile() const { return profile_; }
  /// Order of elements()[i].
  u64 element_order(std::size_t i) const { return orders_.at(i); }

  bool contains(const MoebiusMap& m) const { return std::binary_search(elems_.begin(), elems_.end(), m); }

  /// Identity present, closed under products and inverses.
  bool is_closed() const {
    if (elems_.empty() || !contains(MoebiusMap::identity(*f_))) return false;
    for (const auto& a : elems_) {
      if (!contains(a.inverse())) return false;
      for (const auto& b : elems_) {
        if (!contains(a * b)) return false;
      }
    }
    return true;
  }

  friend bool operator==(const ReducedAutGroup& a, const ReducedAutGroup& b) {
    return a.f_ == b.f_ && a.elems_ == b.elems_;
  }

 private:
  const Field* f_;
  std::vector<MoebiusMap> elems_;
  std::vector<u64> orders_;
  OrderProfile profile_;
};

namespace detail {

inline std::vector<u64> sorted_keys(const std::vector<ProjPoint>& pts) {
  std::vector<u64> k;
  k.reserve(pts.size());
  for (const auto& p : pts) k.push_back(p.key());
  std::sort(k.begin(), k.end());
  return k;
}

// True iff m maps the point set (given with its sorted keys) into itself.
inline bool preserves(const MoebiusMap& m, const std::vector<ProjPoint>& pts, const std::vector<u64>& keys) {
  for (const auto& p : pts) {
    if (!std::binary_search(keys.begin(), keys.end(), m(p).key())) return false;
  }
  return true;
}

inline std::vector<ProjPoint> smooth_roots(const BinaryForm& f, const Field*& split) {
  if (f.degree() < 3) throw DomainError("stabilizers need a form of degree at least 3");
  if (!is_smooth(f)) throw DomainError("form " + to_string(f) + " is not smooth");
  RootDivisor rd = roots(f);
  split = rd.field;
  return rd.points;  // distinct, since f is smooth
}

}  // namespace detail

/// The finite group of Moebius maps permuting the roots of a smooth form.
/// Every such map is pinned down by the images of three roots, so it is
/// defined over the splitting field; all ordered root triples are tried.
inline ReducedAutGroup stabilizer(const BinaryForm& f) {
  const Field* k = nullptr;
  const std::vector<ProjPoint> pts = detail::smooth_roots(f, k);
  const std::vector<u64> keys = detail::sorted_keys(pts);
  const std::array<ProjPoint, 3> src{pts[0], pts[1], pts[2]};
  const std::size_t n = pts.size();
  // det[P_a, P_b]; the cross-ratio of (a, b, c; d) is the point
  // (det[d,a] det[b,c] : det[d,c] det[b,a]), so a candidate triple must send
  // the fourth root to some root with the same cross-ratio.
  std::vector<std::vector<Fq>> det(n, std::vector<Fq>(n, Fq::zero(*k)));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) det[a][b] = pts[a].x() * pts[b].y() - pts[a].y() * pts[b].x();
  auto cross = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    return std::make_pair(det[d][a] * det[b][c], det[d][c] * det[b][a]);
  };
  const auto ref = n > 3 ? cross(0, 1, 2, 3) : std::make_pair(Fq::zero(*k), Fq::zero(*k));
  auto fourth_matches = [&](std::size_t i, std::size_t j, std::size_t l) {
    if (n <= 3) return true;
    for (std::size_t d = 0; d < n; ++d) {
      if (d == i || d == j || d == l) continue;
      const auto c = cross(i, j, l, d);
      if (c.first * ref.second == c.second * ref.first) return true;
    }
    return false;
  };
  std::vector<MoebiusMap> found;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      for (std::size_t l = 0; l < n; ++l) {
        if (l == i || l == j || !fourth_matches(i, j, l)) continue;
        const MoebiusMap m = moebius_from_triples(src, {pts[i], pts[j], pts[l]});
        if (detail::preserves(m, pts, keys)) found.push_back(m);
      }
    }
  }
  ReducedAutGroup g(*k, std::move(found));
  if (!g.is_closed()) throw InternalError("stabilizer of " + to_string(f) + " is not closed");
  return g;
}

/// Identifies the group from its order and element-order profile. Groups whose
/// order is divisible by the characteristic and that match no tame template
/// are tagged Wild; a tame mismatch is an internal error.
inline Classification classify(const ReducedAutGroup& g) {
  const u64 n = g.order();
  const OrderProfile& prof = g.order_profile();
  auto count = [&](u64 o) -> u64 {
    auto it = prof.find(o);
    return it == prof.end() ? 0 : it->second;
  };
  if (count(n) > 0) return {GroupKind::Cyclic, n};
  if (n % 2 == 0 && n >= 4) {
    const u64 h = n / 2;
    const u64 involutions = h + (h % 2 == 0 ? 1 : 0);
    if ((h == 2 || count(h) > 0) && count(2) == involutions) return {GroupKind::Dihedral, h};
  }
  if (prof == OrderProfile{{1, 1}, {2, 3}, {3, 8}}) return {GroupKind::A4, 12};
  if (prof == OrderProfile{{1, 1}, {2, 9}, {3, 8}, {4, 6}}) return {GroupKind::S4, 24};
  if (prof == OrderProfile{{1, 1}, {2, 15}, {3, 20}, {5, 24}}) return {GroupKind::A5, 60};
  if (n % g.field().characteristic() == 0) return {GroupKind::Wild, n};
  throw InternalError("group of order " + std::to_string(n) + " matches no finite subgroup of PGL_2");
}

struct StratumEntry {
  u64 p;
  int l;
  MoebiusMap witness;
};

struct StratumSignature {
  const Field* field;            // splitting field of the roots
  std::vector<ProjPoint> roots;  // ascending; pairing indices refer to this list
  std::vector<StratumEntry> entries;  // ascending by (p, l)
  bool extra_involution = false;
  std::optional<std::vector<std::pair<int, int>>> pairing;

  bool has(u64 p, int l) const {
    return std::any_of(entries.begin(), entries.end(), [&](const StratumEntry& e) { return e.p == p && e.l == l; });
  }
};

/// Number of roots among the fixed points of m, computed over a quadratic
/// extension of the roots' field when the fixed points are not rational there.
inline int fixed_roots(const MoebiusMap& m, const std::vector<ProjPoint>& pts) {
  const Field& k = m.field();
  std::vector<ProjPoint> fix;
  const Field* ext = &k;
  try {
    fix = fixed_points(m, k);
  } catch (const FieldError&) {
    ext = &make_field(k.characteristic(), 2 * k.degree());
    fix = fixed_points(m, *ext);
  }
  int l = 0;
  for (const auto& x : fix) {
    for (const auto& r : pts) {
      if (r.embedded(*ext) == x) ++l;
    }
  }
  return l;
}

/// For every element of prime order p in the stabilizer, l = number of its
/// fixed points that are roots. Distinct (p, l) are reported with the first
/// witness in canonical order. Wild elements (p = char) are rejected.
inline StratumSignature stratify(const BinaryForm& f) {
  const ReducedAutGroup g = stabilizer(f);
  const Field& k = g.field();
  StratumSignature sig{&k, {}, {}, false, std::nullopt};
  sig.roots = roots(f).points;
  const u64 ch = k.characteristic();
  std::map<std::pair<u64, int>, MoebiusMap> seen;
  for (std::size_t i = 0; i < g.elements().size(); ++i) {
    const u64 p = g.element_order(i);
    if (!arith::is_prime(p)) continue;
    if (p == ch) {
      throw DomainError("wild case: " + to_string(f) + " has an automorphism of order p = char = " +
                        std::to_string(ch) + "; the (p, l) strata assume tame ramification");
    }
    const MoebiusMap& s = g.elements()[i];
    const int l = fixed_roots(s, sig.roots);
    seen.emplace(std::make_pair(p, l), s);  // keeps the first witness
  }
  for (const auto& [pl, w] : seen) {
    if (pl.first == 2 && pl.second == 1) throw InternalError("an involution with exactly one fixed root");
    sig.entries.push_back({pl.first, pl.second, w});
  }
  auto it = seen.find({2, 0});
  if (it != seen.end()) {
    sig.extra_involution = true;
    std::vector<std::pair<int, int>> pairs;
    const auto& r = sig.roots;
    for (std::size_t a = 0; a < r.size(); ++a) {
      const auto pos = std::lower_bound(r.begin(), r.end(), it->second(r[a])) - r.begin();
      if (static_cast<std::size_t>(pos) > a) pairs.emplace_back(static_cast<int>(a), static_cast<int>(pos));
    }
    if (pairs.size() * 2 != r.size()) throw InternalError("extra involution does not pair all roots");
    sig.pairing = std::move(pairs);
  }
  return sig;
}

struct StratumRow {
  u64 p;
  int l;
  int dim;
  friend bool operator==(const StratumRow&, const StratumRow&) = default;
};

struct StratumTable {
  int genus;
  std::vector<StratumRow> rows;  // ascending by (p, l)
  int max_dim;
};

/// Rows (p, l, (2g+2-l)/p - 1) for primes p <= 2g+2, l in {0,1,2}, p | 2g+2-l.
inline StratumTable stratum_table(int g) {
  if (g < 2) throw DomainError("genus must be at least 2");
  StratumTable t{g, {}, -1};
  const int n = 2 * g + 2;
  for (int p = 2; p <= n; ++p) {
    if (!arith::is_prime(static_cast<u64>(p))) continue;
    for (int l = 0; l <= 2; ++l) {
      if ((n - l) % p != 0) continue;
      const int dim = (n - l) / p - 1;
      t.rows.push_back({static_cast<u64>(p), l, dim});
      t.max_dim = std::max(t.max_dim, dim);
    }
  }
  for (const auto& r : t.rows) {
    if (!(r.p == 2 && r.l == 0) && r.dim > g - 1) throw InternalError("stratum other than (2,0) of dimension >= g");
  }
  return t;
}

}  // namespace hyperpic

#endif  // HYPERPIC_AUTOM_HPP
