#ifndef HYPERPIC_EXPERIMENTS_HPP
#define HYPERPIC_EXPERIMENTS_HPP

// Desk-scale checks over finite fields: a brute-force stabilizer oracle, the
// degree-15 pencil experiment, a Monte-Carlo codimension fit, and an h^0
// count from Laurent expansions at the points over infinity.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "hyperpic/autom.hpp"
#include "hyperpic/picard.hpp"

namespace hyperpic {

using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

struct ExperimentReport {
  std::string name;
  json params = json::object();
  json observed = json::object();
  json expected = json::object();
  std::string provenance;
  bool pass = false;
  double runtime_ms = 0;

  /// Everything except the wall-clock runtime; stable across runs.
  json canonical() const {
    return json{{"name", name},         {"version", kVersion}, {"params", params}, {"observed", observed},
                {"expected", expected}, {"provenance", provenance}, {"pass", pass}};
  }

  json to_json() const {
    json j = canonical();
    j["runtime_ms"] = runtime_ms;
    return j;
  }
};

namespace detail {

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

/// Runs fn(i) for i in [0, n) on up to `threads` workers; results in index order.
template <class Fn>
auto parallel_map(std::size_t n, unsigned threads, Fn fn) -> std::vector<decltype(fn(std::size_t{0}))> {
  using T = decltype(fn(std::size_t{0}));
  std::vector<std::optional<T>> slots(n);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) slots[i].emplace(fn(i));
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < n; i += threads) slots[i].emplace(fn(i));
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  std::vector<T> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

inline Fq random_element(const Field& f, Rng& rng) { return Fq::from_index(f, rng.below(f.order())); }

inline Fq random_unit(const Field& f, Rng& rng) { return Fq::from_index(f, 1 + rng.below(f.order() - 1)); }

inline BinaryForm random_form(const Field& f, int n, Rng& rng) {
  for (;;) {
    std::vector<Fq> c;
    for (int i = 0; i <= n; ++i) c.push_back(random_element(f, rng));
    if (std::any_of(c.begin(), c.end(), [](const Fq& a) { return !a.is_zero(); })) return BinaryForm(f, std::move(c));
  }
}

inline BinaryForm random_smooth_form(const Field& f, int n, Rng& rng) {
  for (;;) {
    BinaryForm b = random_form(f, n, rng);
    if (is_smooth(b)) return b;
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Brute-force stabilizer

inline constexpr u64 kDefaultOracleBudget = 50'000'000;

/// All of PGL_2(F_Q) in canonical form (first nonzero entry 1).
inline std::vector<MoebiusMap> pgl2_elements(const Field& k) {
  const u64 q = k.order();
  std::vector<Fq> el;
  for (u64 i = 0; i < q; ++i) el.push_back(Fq::from_index(k, i));
  const Fq one = Fq::one(k), zero = Fq::zero(k);
  std::vector<MoebiusMap> out;
  out.reserve(q * q * q - q);
  for (const auto& b : el)
    for (const auto& c : el)
      for (const auto& d : el)
        if (!(d - b * c).is_zero()) out.emplace_back(one, b, c, d);
  for (const auto& c : el)
    for (const auto& d : el)
      if (!c.is_zero()) out.emplace_back(zero, one, c, d);
  return out;
}

/// Sweeps every element of PGL_2 over the working field (default: the form's
/// own field) and keeps those permuting the roots. Roots are found by
/// evaluating the form at every point of P^1, with no factoring involved.
inline ReducedAutGroup stab_oracle(const BinaryForm& f, const Field* work = nullptr,
                                   u64 budget = kDefaultOracleBudget) {
  const Field& k = work ? *work : f.field();
  const u64 q = k.order();
  if (static_cast<double>(q) * (static_cast<double>(q) * q - 1) > static_cast<double>(budget)) {
    throw BudgetError("PGL_2(F_" + k.to_string() + ") exceeds the oracle budget");
  }
  if (!is_smooth(f)) throw DomainError("form " + to_string(f) + " is not smooth");
  const BinaryForm fk = f.embedded(k);
  std::vector<ProjPoint> pts;
  for (const auto& p : projective_line(k)) {
    if (fk.eval(p).is_zero()) pts.push_back(p);
  }
  if (static_cast<int>(pts.size()) != f.degree()) {
    throw DomainError("form " + to_string(f) + " does not split over F_" + k.to_string());
  }
  const auto keys = detail::sorted_keys(pts);
  std::vector<MoebiusMap> found;
  for (const auto& m : pgl2_elements(k)) {
    if (detail::preserves(m, pts, keys)) found.push_back(m);
  }
  return ReducedAutGroup(k, std::move(found));
}

/// Equality of two groups after embedding both into a common field.
inline bool same_group(const ReducedAutGroup& a, const ReducedAutGroup& b) {
  const Field& k = common_extension(a.field(), b.field());
  auto lift = [&](const ReducedAutGroup& g) {
    std::vector<MoebiusMap> v;
    for (const auto& m : g.elements()) v.push_back(m.embedded(k));
    std::sort(v.begin(), v.end());
    return v;
  };
  return lift(a) == lift(b);
}

struct OracleCorpus {
  int genus;
  const Field* base;  // forms are defined here
  const Field* work;  // all roots lie here; the oracle sweeps PGL_2 over it
  std::vector<BinaryForm> forms;
};

/// Seeded smooth forms of degree 2g+2 over F_q whose roots are all rational.
/// When P^1(F_q) has fewer than 2g+2 points, roots are drawn instead as
/// Frobenius-stable sets in P^1(F_{q^2}), so the forms stay defined over F_q.
inline OracleCorpus oracle_corpus(int g, const Field& base, std::size_t count, u64 seed) {
  const int n = 2 * g + 2;
  OracleCorpus c{g, &base, &base, {}};
  Rng rng(mix_seed(seed, mix_seed(base.order(), static_cast<u64>(g))));
  if (static_cast<u64>(n) <= base.order() + 1) {
    std::vector<ProjPoint> line = projective_line(base);
    for (std::size_t t = 0; t < count; ++t) {
      for (int i = 0; i < n; ++i) std::swap(line[i], line[i + rng.below(line.size() - i)]);
      std::vector<ProjPoint> pick(line.begin(), line.begin() + n);
      c.forms.push_back(BinaryForm::from_roots(pick, detail::random_unit(base, rng)));
    }
    return c;
  }
  const Field& ext = make_field(base.characteristic(), 2 * base.degree());
  c.work = &ext;
  std::vector<std::vector<ProjPoint>> orbits;
  for (const auto& p : projective_line(base)) orbits.push_back({p.embedded(ext)});
  for (u64 i = 0; i < ext.order(); ++i) {
    const Fq z = Fq::from_index(ext, i);
    if (descend(z, base)) continue;
    const Fq zq = z.pow(base.order());
    if (zq < z) continue;  // list each conjugate pair once
    orbits.push_back({ProjPoint::affine(z), ProjPoint::affine(zq)});
  }
  for (std::size_t t = 0; t < count; ++t) {
    for (std::size_t i = 0; i + 1 < orbits.size(); ++i) std::swap(orbits[i], orbits[i + rng.below(orbits.size() - i)]);
    std::vector<ProjPoint> pick;
    for (const auto& o : orbits) {
      if (pick.size() + o.size() <= static_cast<std::size_t>(n)) pick.insert(pick.end(), o.begin(), o.end());
      if (pick.size() == static_cast<std::size_t>(n)) break;
    }
    const BinaryForm fe = BinaryForm::from_roots(pick, Fq::one(ext));
    std::vector<Fq> coeffs;
    for (const auto& a : fe.coeffs()) {
      auto d = descend(a, base);
      if (!d) throw InternalError("Frobenius-stable root set gave a form not defined over the base field");
      coeffs.push_back(*d);
    }
    c.forms.push_back(BinaryForm(base, std::move(coeffs)).scaled(detail::random_unit(base, rng)));
  }
  return c;
}

/// Compares stabilizer() with stab_oracle() on a seeded corpus.
inline ExperimentReport verify_stab_oracle(int g, u64 q, std::size_t count, u64 seed, unsigned threads = 1) {
  detail::Stopwatch sw;
  const Field& base = field_of_order(q);
  const OracleCorpus corpus = oracle_corpus(g, base, count, seed);
  struct Outcome {
    bool match;
    u64 order;
    std::string label;
  };
  const auto res = detail::parallel_map(corpus.forms.size(), threads, [&](std::size_t i) {
    const ReducedAutGroup a = stabilizer(corpus.forms[i]);
    const ReducedAutGroup b = stab_oracle(corpus.forms[i], corpus.work);
    return Outcome{same_group(a, b), a.order(), classify(a).label()};
  });
  ExperimentReport r;
  r.name = "stab-oracle";
  r.params = {{"genus", g}, {"q", q}, {"samples", count}, {"seed", seed}, {"oracle_field", corpus.work->to_string()}};
  u64 mismatches = 0;
  std::map<std::string, u64> labels;
  for (const auto& o : res) {
    mismatches += !o.match;
    ++labels[o.label];
  }
  json hist = json::object();
  for (const auto& [k, v] : labels) hist[k] = v;
  r.observed = {{"forms", res.size()}, {"mismatches", mismatches}, {"classifications", hist}};
  r.expected = {{"mismatches", 0}};
  r.provenance = "DERIVED: exhaustive PGL_2 sweep as independent oracle";
  r.pass = mismatches == 0 && !res.empty();
  r.runtime_ms = sw.ms();
  return r;
}

// ---------------------------------------------------------------------------
// Degree-15 divisor of sextics with an extra involution

/// The 15 ways to split {0..5} into three pairs.
inline std::vector<std::array<std::pair<int, int>, 3>> sextic_pairings() {
  std::vector<std::array<std::pair<int, int>, 3>> out;
  for (int a = 1; a < 6; ++a) {
    std::vector<int> rest;
    for (int i = 1; i < 6; ++i)
      if (i != a) rest.push_back(i);
    for (int b = 1; b < 4; ++b) {
      std::vector<int> last;
      for (int i = 1; i < 4; ++i)
        if (i != b) last.push_back(rest[i]);
      out.push_back({{{0, a}, {rest[0], rest[b]}, {last[0], last[1]}}});
    }
  }
  return out;
}

namespace detail {

// Coefficients (Y^2, XY, X^2) of l_a l_b where l = y X - x Y.
inline std::array<Fq, 3> quad_of(const ProjPoint& a, const ProjPoint& b) {
  return {a.x() * b.x(), -(a.x() * b.y() + a.y() * b.x()), a.y() * b.y()};
}

inline Fq det3(const std::array<Fq, 3>& r0, const std::array<Fq, 3>& r1, const std::array<Fq, 3>& r2) {
  return r0[0] * (r1[1] * r2[2] - r1[2] * r2[1]) - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0]) +
         r0[2] * (r1[0] * r2[1] - r1[1] * r2[0]);
}

// det(q_ab, q_cd, q_ef): for distinct points, zero iff one involution swaps
// all three pairs.
inline Fq pairing_det(const std::vector<ProjPoint>& r, const std::array<std::pair<int, int>, 3>& pr) {
  return det3(quad_of(r[pr[0].first], r[pr[0].second]), quad_of(r[pr[1].first], r[pr[1].second]),
              quad_of(r[pr[2].first], r[pr[2].second]));
}

}  // namespace detail

/// c^30 prod over the 15 pairings of det^2, for f = c prod l_i. A symmetric
/// expression in the roots, invariant under rescaling each l_i, so it is a
/// polynomial of degree 30 in the coefficients of f with values in its field.
inline Fq involution_invariant(const BinaryForm& f) {
  if (f.degree() != 6) throw DomainError("the pairing invariant is defined for sextics");
  const RootDivisor rd = roots(f);
  const Field& k = *rd.field;
  const BinaryForm fk = f.embedded(k);
  const BinaryForm unit = BinaryForm::from_roots(rd.points, Fq::one(k));
  Fq c = Fq::zero(k);
  for (int i = 0; i <= 6; ++i) {
    if (!unit.coeff(i).is_zero()) {
      c = fk.coeff(i) / unit.coeff(i);
      break;
    }
  }
  Fq acc = c.pow(30);
  for (const auto& pr : sextic_pairings()) {
    const Fq d = detail::pairing_det(rd.points, pr);
    acc *= d * d;
  }
  auto down = descend(acc, f.field());
  if (!down) throw InternalError("pairing invariant not defined over the base field");
  return *down;
}

/// Some pairing of the six (distinct) roots is realized by an involution:
/// the map swapping the first two pairs also swaps the third.
inline bool has_pairing_involution(const std::vector<ProjPoint>& r) {
  for (const auto& pr : sextic_pairings()) {
    const auto [a, b] = pr[0];
    const auto [c, d] = pr[1];
    const auto [e, f] = pr[2];
    const MoebiusMap s = moebius_from_triples({r[a], r[b], r[c]}, {r[b], r[a], r[d]});
    if (s(r[e]) == r[f]) return true;
  }
  return false;
}

struct Deg15Trial {
  int count = -1;           // distinct intersection points over the closure; -1 if the pencil lies in D
  int invariant_degree = -1;
  u64 rational_hits = 0;    // t in F_q with f_t smooth, split within the cap, and in D
  u64 rational_mismatches = 0;
  bool coordinate_line_ok = false;
};

namespace detail {

inline BinaryForm pencil_member(const BinaryForm& f0, const BinaryForm& f1, const Fq& t) {
  std::vector<Fq> c;
  for (int i = 0; i <= 6; ++i) c.push_back(f0.coeff(i) + t * f1.coeff(i));
  return BinaryForm(f0.field(), std::move(c));
}

inline bool proportional(const BinaryForm& a, const BinaryForm& b) { return projectively_equal(a, b); }

// F(t) = invariant(f0 + t f1) through 31 + 9 nodes; the extra nodes make the
// degree bound an actual check.
inline Poly pencil_invariant(const BinaryForm& f0, const BinaryForm& f1) {
  const Field& k = f0.field();
  std::vector<Fq> xs, ys;
  for (u64 i = 0; i < 40; ++i) {
    const Fq t = Fq::from_index(k, i);
    std::vector<Fq> c;
    bool nonzero = false;
    for (int j = 0; j <= 6; ++j) {
      c.push_back(f0.coeff(j) + t * f1.coeff(j));
      nonzero = nonzero || !c.back().is_zero();
    }
    xs.push_back(t);
    ys.push_back(nonzero ? involution_invariant(BinaryForm(k, c)) : Fq::zero(k));
  }
  Poly p = interpolate(xs, ys);
  if (p.degree() > 30) throw InternalError("pencil invariant has degree above 30");
  return p;
}

// Five random points, the involution swapping P1<->P2 and P3<->P4, and the
// scan of P^1(F_q) for every P6 completing the pairing (12)(34)(56).
inline bool coordinate_line_check(const Field& k, Rng& rng) {
  std::vector<ProjPoint> line = projective_line(k);
  for (int i = 0; i < 5; ++i) std::swap(line[i], line[i + rng.below(line.size() - i)]);
  std::vector<ProjPoint> p(line.begin(), line.begin() + 5);
  const MoebiusMap a = moebius_from_triples({p[0], p[1], p[2]}, {p[1], p[0], p[3]});
  if (!(a(p[3]) == p[2])) return false;
  const ProjPoint p6 = a(p[4]);
  std::vector<ProjPoint> hits;
  const std::array<std::pair<int, int>, 3> pr{{{0, 1}, {2, 3}, {4, 5}}};
  for (const auto& cand : projective_line(k)) {
    std::vector<ProjPoint> r = p;
    r.push_back(cand);
    if (detail::pairing_det(r, pr).is_zero()) hits.push_back(cand);
  }
  return hits.size() == 1 && hits[0] == p6;
}

}  // namespace detail

inline Deg15Trial deg15_trial(const Field& k, u64 seed, std::size_t index) {
  Rng rng(mix_seed(seed, index));
  BinaryForm f0 = detail::random_form(k, 6, rng);
  BinaryForm f1 = detail::random_form(k, 6, rng);
  while (detail::proportional(f0, f1)) f1 = detail::random_form(k, 6, rng);
  Deg15Trial t;
  const Poly F = detail::pencil_invariant(f0, f1);
  t.invariant_degree = F.degree();
  if (!F.is_zero()) {
    int distinct = 0;
    if (F.degree() > 0)
      for (int d : factor_degrees(F)) distinct += d;
    t.count = distinct + (F.degree() < 30 ? 1 : 0);
  }
  for (u64 i = 0; i < k.order(); ++i) {
    const Fq tv = Fq::from_index(k, i);
    const BinaryForm ft = detail::pencil_member(f0, f1, tv);
    if (!is_smooth(ft)) continue;
    std::optional<RootDivisor> rd;
    try {
      rd = roots(ft);
    } catch (const BudgetError&) {
      continue;
    }
    const bool inv = has_pairing_involution(rd->points);
    const bool on = F.eval(tv).is_zero();
    t.rational_hits += inv;
    t.rational_mismatches += inv != on;
  }
  t.coordinate_line_ok = detail::coordinate_line_check(k, rng);
  return t;
}

/// Random pencils of sextics meet the divisor of forms with an extra
/// involution in 15 points over the algebraic closure.
inline ExperimentReport verify_deg15(u64 q, std::size_t trials, u64 seed, unsigned threads = 1) {
  detail::Stopwatch sw;
  const Field& k = field_of_order(q);
  if (q < 41) throw DomainError("verify_deg15 needs q >= 41 interpolation nodes");
  if (k.characteristic() <= 5) throw DomainError("verify_deg15 needs characteristic other than 3 and 5");
  const auto res = detail::parallel_map(trials, threads, [&](std::size_t i) { return deg15_trial(k, seed, i); });
  std::map<int, u64> hist;
  u64 hits15 = 0, mismatches = 0, line_ok = 0, rational = 0;
  json counts = json::array();
  for (const auto& t : res) {
    ++hist[t.count];
    hits15 += t.count == 15;
    mismatches += t.rational_mismatches;
    line_ok += t.coordinate_line_ok;
    rational += t.rational_hits;
    counts.push_back(t.count);
  }
  int modal = -1;
  u64 best = 0;
  for (const auto& [c, n] : hist) {
    if (n > best) {
      best = n;
      modal = c;
    }
  }
  // the pencil through X^6 - Y^6 meets the divisor at t = 0
  Rng rng(mix_seed(seed, 0x15ULL));
  const BinaryForm special = BinaryForm::from_ints(k, {-1, 0, 0, 0, 0, 0, 1});
  BinaryForm other = detail::random_form(k, 6, rng);
  while (detail::proportional(special, other)) other = detail::random_form(k, 6, rng);
  const bool special_ok = detail::pencil_invariant(special, other).eval(Fq::zero(k)).is_zero() &&
                          stratify(special).extra_involution;

  json h = json::object();
  for (const auto& [c, n] : hist) h[std::to_string(c)] = n;
  ExperimentReport r;
  r.name = "deg15";
  r.params = {{"q", q}, {"trials", trials}, {"seed", seed}};
  r.observed = {{"counts", counts},
                {"histogram", h},
                {"modal_count", modal},
                {"trials_with_15", hits15},
                {"rational_hits", rational},
                {"rational_mismatches", mismatches},
                {"coordinate_line_ok", line_ok},
                {"special_pencil_ok", special_ok}};
  r.expected = {{"modal_count", 15}, {"rational_mismatches", 0}, {"coordinate_line_ok", trials}};
  r.provenance = "PAPER: the divisor has degree 15";
  r.pass = modal == 15 && 4 * hits15 >= 3 * trials && mismatches == 0 && line_ok == trials && special_ok;
  r.runtime_ms = sw.ms();
  return r;
}

// ---------------------------------------------------------------------------
// Codimension of the locus with extra automorphisms

struct CodimSample {
  bool nontrivial = false;
  bool skipped = false;  // splitting field beyond the representable bound
};

inline CodimSample codim_sample(const Field& k, int g, u64 seed, std::size_t i) {
  Rng rng(mix_seed(seed, mix_seed(k.order(), i)));
  const BinaryForm f = detail::random_smooth_form(k, 2 * g + 2, rng);
  try {
    return {stabilizer(f).order() > 1, false};
  } catch (const BudgetError&) {
    return {false, true};
  }
}

/// phi(q) = fraction of random smooth forms over F_q with a nontrivial
/// geometric stabilizer; phi(q) ~ q^{-e} with e the codimension g - 1.
inline ExperimentReport estimate_codim(int g, const std::vector<u64>& qs, std::size_t samples, u64 seed,
                                       unsigned threads = 1) {
  detail::Stopwatch sw;
  require_genus(g);
  if (qs.size() < 2) throw DomainError("the codimension fit needs at least two field sizes");
  ExperimentReport r;
  r.name = "codim";
  r.params = {{"genus", g}, {"q", qs}, {"samples", samples}, {"seed", seed}};
  std::vector<double> phi;
  json per_q = json::array();
  for (u64 q : qs) {
    const Field& k = field_of_order(q);
    const auto res = detail::parallel_map(samples, threads, [&](std::size_t i) { return codim_sample(k, g, seed, i); });
    u64 hits = 0, skipped = 0;
    for (const auto& s : res) {
      hits += s.nontrivial;
      skipped += s.skipped;
    }
    const u64 used = samples - skipped;
    phi.push_back(used ? static_cast<double>(hits) / static_cast<double>(used) : 0.0);
    per_q.push_back({{"q", q}, {"nontrivial", hits}, {"skipped", skipped}, {"used", used}, {"phi", phi.back()}});
  }
  const double lo = (g - 1) / 2.0, hi = 3.0 * (g - 1) / 2.0;
  r.observed = {{"fields", per_q}};
  r.expected = {{"exponent", g - 1}, {"band", {lo, hi}}};
  r.provenance = "PAPER: the extra-involution locus has codimension g-1";
  if (phi.front() <= 0 || phi[1] <= 0) {
    r.observed["exponent"] = nullptr;
    r.observed["note"] = "sample too small: no nontrivial stabilizer observed for some q";
    r.pass = false;
  } else {
    const double e = -std::log(phi[1] / phi[0]) / std::log(static_cast<double>(qs[1]) / static_cast<double>(qs[0]));
    r.observed["exponent"] = e;
    r.pass = e >= lo && e <= hi;
  }
  r.runtime_ms = sw.ms();
  return r;
}

// ---------------------------------------------------------------------------
// h^0(k g^1_2) from pole orders at the points over infinity

namespace detail {

// Rank of a matrix over a field (rows are destroyed).
inline int matrix_rank(std::vector<std::vector<Fq>> m) {
  if (m.empty()) return 0;
  const std::size_t cols = m[0].size();
  int rank = 0;
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(m.size()); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c].is_zero()) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    const Fq inv = m[rank][c].inv();
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == static_cast<std::size_t>(rank) || m[r][c].is_zero()) continue;
      const Fq s = m[r][c] * inv;
      for (std::size_t j = c; j < cols; ++j) m[r][j] -= s * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

struct H0Result {
  int dimension;          // nullity of the pole conditions
  int expected_basis;     // size of {x^i : i <= k} + {y x^j : j <= k-g-1}
  bool basis_verified;    // that basis satisfies the conditions
};

/// Functions A(x) + B(x) y on y^2 = f(x, 1) with poles of order <= k at both
/// points over infinity. With t = 1/x, y = +-t^{-(g+1)} s(t), s^2 = h(t) the
/// reversed polynomial. Requires c_{2g+2} != 0; works over a quadratic
/// extension when c_{2g+2} is not a square.
inline H0Result h0_oracle(int g, int k, const BinaryForm& f) {
  require_genus(g);
  if (k < 0) throw DomainError("k must be non-negative");
  if (f.degree() != 2 * g + 2) throw DomainError("form degree does not match the genus");
  if (!is_smooth(f)) throw DomainError("form " + to_string(f) + " is not smooth");
  if (f.coeff(2 * g + 2).is_zero()) throw DomainError("leading coefficient c_{2g+2} must be nonzero");
  const Field* K = &f.field();
  if (!f.coeff(2 * g + 2).is_square()) K = &make_field(K->characteristic(), 2 * K->degree());
  const BinaryForm fk = f.embedded(*K);
  // h(t) = t^{2g+2} f(1/t) has h_i = c_{2g+2-i}
  const int n = 2 * g + 2;
  auto h = [&](int i) { return i <= n ? fk.coeff(n - i) : Fq::zero(*K); };
  std::vector<Fq> s(g + 1, Fq::zero(*K));
  s[0] = *h(0).sqrt();
  const Fq inv2s0 = (Fq(*K, 2) * s[0]).inv();
  for (int i = 1; i <= g; ++i) {
    Fq acc = h(i);
    for (int j = 1; j < i; ++j) acc -= s[j] * s[i - j];
    s[i] = acc * inv2s0;
  }
  const int da = k + g + 1, db = k;
  const int cols = (da + 1) + (db + 1);
  // Coefficient of t^{-e} in A(1/t) + sign * t^{-(g+1)} B(1/t) s(t):
  // A_e, plus sign * B_j s_{j+g+1-e} for j + g + 1 - e in [0, g].
  std::vector<std::vector<Fq>> rows;
  for (int sign : {1, -1}) {
    for (int e = k + 1; e <= k + g + 1; ++e) {
      std::vector<Fq> row(cols, Fq::zero(*K));
      if (e <= da) row[e] = Fq::one(*K);
      for (int j = 0; j <= db; ++j) {
        const int idx = j + g + 1 - e;
        if (idx >= 0 && idx <= g) row[da + 1 + j] = sign > 0 ? s[idx] : -s[idx];
      }
      rows.push_back(std::move(row));
    }
  }
  H0Result res{};
  res.dimension = cols - detail::matrix_rank(rows);
  // the explicit basis as coefficient vectors
  std::vector<std::vector<Fq>> basis;
  for (int i = 0; i <= k; ++i) {
    std::vector<Fq> v(cols, Fq::zero(*K));
    v[i] = Fq::one(*K);
    basis.push_back(std::move(v));
  }
  for (int j = 0; j <= k - g - 1; ++j) {
    std::vector<Fq> v(cols, Fq::zero(*K));
    v[da + 1 + j] = Fq::one(*K);
    basis.push_back(std::move(v));
  }
  res.expected_basis = static_cast<int>(basis.size());
  bool ok = detail::matrix_rank(basis) == res.expected_basis;
  for (const auto& v : basis) {
    for (const auto& row : rows) {
      Fq dot = Fq::zero(*K);
      for (int c = 0; c < cols; ++c) dot += row[c] * v[c];
      ok = ok && dot.is_zero();
    }
  }
  res.basis_verified = ok && res.expected_basis == res.dimension;
  return res;
}

/// y^2 = x^{2g+2} - 1 over F_q, against the rank rule for k = 0..g+3.
inline ExperimentReport verify_h0(int g, u64 q) {
  detail::Stopwatch sw;
  const Field& k = field_of_order(q);
  const BinaryForm f = coarse_form_f2(k, g);
  ExperimentReport r;
  r.name = "h0";
  r.params = {{"genus", g}, {"q", q}, {"form", to_string(f)}};
  json obs = json::array(), exp = json::array();
  bool pass = true;
  for (int kk = 0; kk <= g + 3; ++kk) {
    const H0Result h = h0_oracle(g, kk, f);
    const i64 want = g12_sections(g, kk);
    obs.push_back({{"k", kk}, {"h0", h.dimension}, {"basis_verified", h.basis_verified}});
    exp.push_back({{"k", kk}, {"h0", want}});
    pass = pass && h.dimension == want && h.basis_verified;
  }
  r.observed = {{"values", obs}};
  r.expected = {{"values", exp}};
  r.provenance = "PAPER: h0(k g12) = k+1 for k <= g; DERIVED: 2k-g+1 above";
  r.pass = pass;
  r.runtime_ms = sw.ms();
  return r;
}

}  // namespace hyperpic

#endif  // HYPERPIC_EXPERIMENTS_HPP
