#ifndef HYPERPIC_CLI_HPP
#define HYPERPIC_CLI_HPP

// Subcommand front end. run() is the whole program minus main(), so tests can
// drive it in process. Exit codes: 0 pass, 1 experiment failure, 2 usage or
// input error.

#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hyperpic/experiments.hpp"

namespace hyperpic::cli {

enum Exit { kPass = 0, kFail = 1, kUsage = 2 };

// ---------------------------------------------------------------------------
// JSON encodings

inline json to_json(const MoebiusMap& m) {
  const auto& e = m.entries();
  return json::array({json::array({e[0].index(), e[1].index()}), json::array({e[2].index(), e[3].index()})});
}

inline json to_json(const BinaryForm& f) {
  json c = json::array();
  for (const auto& a : f.coeffs()) c.push_back(a.index());
  return {{"genus", f.genus()}, {"field", f.field().to_string()}, {"coeffs", c}};
}

inline json points_json(const std::vector<ProjPoint>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back(to_string(p));
  return a;
}

inline json aut_json(const BinaryForm& f) {
  const ReducedAutGroup g = stabilizer(f);
  const Classification c = classify(g);
  json elems = json::array(), orders = json::object();
  for (const auto& m : g.elements()) elems.push_back(to_json(m));
  for (const auto& [o, n] : g.order_profile()) orders[std::to_string(o)] = n;
  return {{"form", to_json(f)},
          {"splitting_field", g.field().to_string()},
          {"order", g.order()},
          {"classification", c.name()},
          {"label", c.label()},
          {"element_orders", orders},
          {"elements", elems}};
}

inline json stratify_json(const BinaryForm& f) {
  const StratumSignature s = stratify(f);
  json strata = json::array();
  for (const auto& e : s.entries) strata.push_back({{"p", e.p}, {"l", e.l}, {"witness", to_json(e.witness)}});
  json pairing = nullptr;
  if (s.pairing) {
    pairing = json::array();
    for (auto [a, b] : *s.pairing) pairing.push_back(json::array({a, b}));
  }
  return {{"form", to_json(f)},          {"splitting_field", s.field->to_string()},
          {"roots", points_json(s.roots)}, {"strata", strata},
          {"extra_involution", s.extra_involution}, {"pairing", pairing}};
}

inline json strata_rows(int g) {
  const StratumTable t = stratum_table(g);
  json rows = json::array();
  for (const auto& r : t.rows) rows.push_back({{"g", g}, {"p", r.p}, {"l", r.l}, {"dim", r.dim}, {"max_dim", t.max_dim}});
  return rows;
}

inline json picard_row(int g) {
  const PicGroup h = pic_group(g, PicFlavor::StackH);
  const HodgeClass hc = hodge(g);
  const TautologicalFacts tf = tautological_family(g);
  return {{"g", g},
          {"N_H", h.order},
          {"chi0", "det^" + std::to_string(*h.det_exponent)},
          {"N_D", pic_group(g, PicFlavor::StackD).order},
          {"d_to_h_index", d_to_h_index(g).index},
          {"Cl", pic_group(g, PicFlavor::CoarseCl).order},
          {"Pic", pic_group(g, PicFlavor::CoarsePic).order},
          {"hodge_exponent", hc.cls.exponent()},
          {"hodge_index", hc.index},
          {"taut_over_open", tf.exists_over_some_open_subset},
          {"taut_over_Hg0", tf.exists_over_Hg0}};
}

// ---------------------------------------------------------------------------
// Output

inline std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

// Tabular view: "rows" if present, otherwise one key/value row per top-level field.
inline std::pair<std::vector<std::string>, std::vector<std::vector<std::string>>> tabulate(const json& doc) {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> body;
  const json* rows = doc.contains("result") && doc["result"].contains("rows") ? &doc["result"]["rows"] : nullptr;
  if (rows && rows->is_array() && !rows->empty()) {
    for (const auto& [k, v] : rows->front().items()) header.push_back(k);
    for (const auto& r : *rows) {
      std::vector<std::string> line;
      for (const auto& k : header) line.push_back(r.contains(k) ? scalar_text(r[k]) : "");
      body.push_back(std::move(line));
    }
    return {header, body};
  }
  header = {"key", "value"};
  std::function<void(const std::string&, const json&)> walk = [&](const std::string& prefix, const json& v) {
    if (v.is_object()) {
      for (const auto& [k, x] : v.items()) walk(prefix.empty() ? k : prefix + "." + k, x);
    } else {
      body.push_back({prefix, scalar_text(v)});
    }
  };
  walk("", doc);
  return {header, body};
}

inline void emit(const json& doc, const std::string& format, std::ostream& os) {
  if (format == "json") {
    os << doc.dump(2) << "\n";
    return;
  }
  const auto [header, body] = tabulate(doc);
  if (format == "csv") {
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << csv_field(header[i]);
    os << "\n";
    for (const auto& r : body) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_field(r[i]);
      os << "\n";
    }
    return;
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& r : body)
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      os << (i ? "  " : "") << std::left << std::setw(static_cast<int>(width[i])) << r[i];
    }
    os << "\n";
  };
  line(header);
  for (const auto& r : body) line(r);
}

// ---------------------------------------------------------------------------
// Argument helpers

/// "5" or "lo:hi" (inclusive).
inline std::vector<i64> parse_range(const std::string& s) {
  auto to_int = [&](const std::string& t) -> i64 {
    std::size_t pos = 0;
    const i64 v = std::stoll(t, &pos);
    if (pos != t.size()) throw DomainError("bad integer '" + t + "'");
    return v;
  };
  try {
    const auto colon = s.find(':');
    if (colon == std::string::npos) return {to_int(s)};
    const i64 lo = to_int(s.substr(0, colon)), hi = to_int(s.substr(colon + 1));
    if (hi < lo || hi - lo > 10000) throw DomainError("bad range '" + s + "'");
    std::vector<i64> v;
    for (i64 x = lo; x <= hi; ++x) v.push_back(x);
    return v;
  } catch (const std::logic_error& e) {
    throw DomainError("bad integer or range '" + s + "': " + e.what());
  }
}

inline std::vector<u64> parse_q_list(const std::string& s) {
  std::vector<u64> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t pos = 0;
      const u64 v = std::stoull(tok, &pos);
      if (pos != tok.size()) throw DomainError("");
      out.push_back(v);
    } catch (const std::exception&) {
      throw DomainError("bad field size '" + tok + "'");
    }
  }
  if (out.empty()) throw DomainError("empty field size list");
  return out;
}

struct Options {
  std::string form;
  int genus = -1;
  std::optional<u64> seed;
  std::string q;
  std::size_t trials = 20;
  std::size_t samples = 0;
  unsigned threads = 1;
  std::string output;
  std::string format = "json";
  int gmin = -1, gmax = -1;
  std::string a = "0", b = "0";
  std::string field1, field2;
  bool no_timing = false;
  std::string experiment;
};

inline json envelope(const std::string& command, const Options& o, json params, std::string provenance, json result) {
  return {{"command", command},
          {"version", kVersion},
          {"seed", o.seed ? json(*o.seed) : json(nullptr)},
          {"params", std::move(params)},
          {"provenance", std::move(provenance)},
          {"result", std::move(result)}};
}

inline std::vector<int> genus_range(const Options& o) {
  if (o.genus >= 0) {
    if (o.gmin >= 0 || o.gmax >= 0) throw DomainError("give either --genus or --gmin/--gmax");
    return {o.genus};
  }
  if (o.gmin < 0 || o.gmax < 0) throw DomainError("need --genus or both --gmin and --gmax");
  if (o.gmax < o.gmin) throw DomainError("--gmax is below --gmin");
  std::vector<int> v;
  for (int g = o.gmin; g <= o.gmax; ++g) v.push_back(g);
  return v;
}

inline BinaryForm form_arg(const Options& o) {
  if (o.form.empty()) throw DomainError("--form is required");
  BinaryForm f = parse_form(o.form);
  if (o.genus >= 0 && f.degree() != 2 * o.genus + 2) {
    throw DomainError("form has degree " + std::to_string(f.degree()) + ", expected " +
                      std::to_string(2 * o.genus + 2) + " for genus " + std::to_string(o.genus));
  }
  return f;
}

inline u64 require_seed(const Options& o) {
  if (!o.seed) throw DomainError("--seed is required for randomized experiments");
  return *o.seed;
}

// ---------------------------------------------------------------------------
// Dispatch

/// Returns (document, passed).
inline std::pair<json, bool> dispatch(const std::string& cmd, const Options& o) {
  if (cmd == "aut") {
    const BinaryForm f = form_arg(o);
    return {envelope(cmd, o, {{"form", o.form}}, "DERIVED: triple interpolation over the splitting field", aut_json(f)),
            true};
  }
  if (cmd == "stratify") {
    const BinaryForm f = form_arg(o);
    return {envelope(cmd, o, {{"form", o.form}}, "PAPER: (p, l) strata of forms with extra automorphisms",
                     stratify_json(f)),
            true};
  }
  if (cmd == "strata-table") {
    json rows = json::array();
    for (int g : genus_range(o))
      for (auto& r : strata_rows(g)) rows.push_back(r);
    return {envelope(cmd, o, {{"gmin", genus_range(o).front()}, {"gmax", genus_range(o).back()}},
                     "PAPER: dim = (2g+2-l)/p - 1", {{"rows", rows}}),
            true};
  }
  if (cmd == "picard-table") {
    json rows = json::array();
    for (int g : genus_range(o)) rows.push_back(picard_row(g));
    return {envelope(cmd, o, {{"gmin", genus_range(o).front()}, {"gmax", genus_range(o).back()}},
                     "PAPER: Picard group orders and generators", {{"rows", rows}}),
            true};
  }
  if (cmd == "tab") {
    json rows = json::array();
    for (int g : genus_range(o)) {
      for (i64 a : parse_range(o.a)) {
        for (i64 b : parse_range(o.b)) {
          const BundleSpec s = bundle_spec(g, a, b);
          json row = {{"g", g}, {"a", a}, {"b", b}, {"m", s.m}, {"rank", s.rank ? json(*s.rank) : json(nullptr)}};
          if (s.flagged()) {
            row["exponent"] = nullptr;
            row["N"] = stack_order(g);
          } else {
            const PicClass c = t_ab(g, a, b);
            row["exponent"] = c.exponent();
            row["N"] = c.group_order();
          }
          rows.push_back(row);
        }
      }
    }
    return {envelope(cmd, o, {{"a", o.a}, {"b", o.b}}, "PAPER: exponents of T_{a,b} in Z/N", {{"rows", rows}}), true};
  }
  if (cmd == "hodge") {
    json rows = json::array();
    for (int g : genus_range(o)) {
      const HodgeClass h = hodge(g);
      rows.push_back({{"g", g},
                      {"N", h.cls.group_order()},
                      {"exponent", h.cls.exponent()},
                      {"index", h.index},
                      {"generates", h.cls.generates()},
                      {"t10_exponent", h.literal.exponent()}});
    }
    return {envelope(cmd, o, json::object(), "PAPER: Hodge class G^{g/2} or G^g; index 2 iff 4 | g", {{"rows", rows}}),
            true};
  }
  if (cmd == "taut") {
    json rows = json::array();
    for (int g : genus_range(o)) {
      const TautologicalFacts t = tautological_family(g);
      rows.push_back({{"g", g},
                      {"exists_over_some_open_subset", t.exists_over_some_open_subset},
                      {"exists_over_Hg0", t.exists_over_Hg0},
                      {"reason", t.reason}});
    }
    return {envelope(cmd, o, json::object(), "PAPER: tautological families", {{"rows", rows}}), true};
  }
  if (cmd == "pic-coarse-trivial") {
    json rows = json::array();
    bool ok = true;
    for (int g : genus_range(o)) {
      const Field* k1 = o.field1.empty() ? nullptr : &parse_field(o.field1);
      const Field* k2 = o.field2.empty() ? nullptr : &parse_field(o.field2);
      const CoarseTrivialReport r = pic_coarse_trivial(g, k1, k2);
      json surv = json::array();
      for (i64 c : r.surviving_c) surv.push_back(c);
      rows.push_back({{"g", g},
                      {"N", r.n},
                      {"field1", r.field1},
                      {"field2", r.field2},
                      {"f1_fixed", r.f1_fixed},
                      {"f2_fixed", r.f2_fixed},
                      {"surviving_c", surv.dump()},
                      {"pic_trivial", r.trivial()}});
      ok = ok && r.trivial();
    }
    return {envelope(cmd, o, json::object(), "PAPER: diag(mu_{2g+1},1), diag(mu_{2g+2},1) stabilize f1, f2",
                     {{"rows", rows}}),
            ok};
  }
  if (cmd == "verify") {
    ExperimentReport r;
    const std::string& e = o.experiment;
    if (e == "deg15") {
      const u64 q = o.q.empty() ? 101 : parse_q_list(o.q).at(0);
      r = verify_deg15(q, o.trials, require_seed(o), o.threads);
    } else if (e == "codim") {
      const int g = o.genus >= 0 ? o.genus : 2;
      r = estimate_codim(g, parse_q_list(o.q.empty() ? "11,23" : o.q), o.samples ? o.samples : 100000, require_seed(o),
                         o.threads);
    } else if (e == "h0") {
      const int g = o.genus >= 0 ? o.genus : 2;
      u64 q = 0;
      if (!o.q.empty()) {
        q = parse_q_list(o.q).at(0);
      } else {
        q = small_field_with_roots_of_unity(2 * g + 2, 2 * g + 2).order();
      }
      r = verify_h0(g, q);
    } else if (e == "stab-oracle") {
      const int g = o.genus >= 0 ? o.genus : 2;
      r = verify_stab_oracle(g, o.q.empty() ? 11 : parse_q_list(o.q).at(0), o.samples ? o.samples : 200,
                             require_seed(o), o.threads);
    } else {
      throw DomainError("unknown experiment '" + e + "' (deg15, codim, h0, stab-oracle)");
    }
    json doc = o.no_timing ? r.canonical() : r.to_json();
    doc["command"] = "verify " + e;
    doc["seed"] = o.seed ? json(*o.seed) : json(nullptr);
    return {doc, r.pass};
  }
  throw DomainError("unknown command '" + cmd + "'");
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Automorphisms, strata and Picard groups of hyperelliptic curves over finite fields"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  Options o;
  std::string seed_text;

  auto common = [&](CLI::App* s) {
    s->add_option("--output", o.output, "write the report to this file");
    s->add_option("--format", o.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  };
  auto genus_opts = [&](CLI::App* s) {
    s->add_option("--genus", o.genus, "genus g >= 2")->check(CLI::Range(2, 100000));
    s->add_option("--gmin", o.gmin, "first genus of a range")->check(CLI::Range(2, 100000));
    s->add_option("--gmax", o.gmax, "last genus of a range")->check(CLI::Range(2, 100000));
  };

  for (const char* name : {"aut", "stratify"}) {
    auto* s = app.add_subcommand(name, std::string(name) == "aut" ? "stabilizer and classification of a form"
                                                                  : "(p, l) strata of a form");
    s->add_option("--form", o.form, "form literal c0,...,cn@p^k")->required();
    s->add_option("--genus", o.genus, "expected genus")->check(CLI::Range(2, 100000));
    common(s);
  }
  for (const char* name : {"strata-table", "picard-table", "hodge", "taut"}) {
    auto* s = app.add_subcommand(name, std::string("table: ") + name);
    genus_opts(s);
    common(s);
  }
  {
    auto* s = app.add_subcommand("tab", "exponents of T_{a,b}");
    genus_opts(s);
    s->add_option("--a", o.a, "integer or lo:hi");
    s->add_option("--b", o.b, "integer or lo:hi");
    common(s);
  }
  {
    auto* s = app.add_subcommand("pic-coarse-trivial", "check that Pic of the coarse space vanishes");
    genus_opts(s);
    s->add_option("--field1", o.field1, "field p^k for f1 (default: smallest admissible)");
    s->add_option("--field2", o.field2, "field p^k for f2 (default: smallest admissible)");
    common(s);
  }
  {
    auto* s = app.add_subcommand("verify", "run an experiment: deg15, codim, h0, stab-oracle");
    s->add_option("experiment", o.experiment, "experiment name")
        ->required()
        ->check(CLI::IsMember({"deg15", "codim", "h0", "stab-oracle"}));
    s->add_option("--genus", o.genus, "genus")->check(CLI::Range(2, 100000));
    s->add_option("--q", o.q, "field size, or comma-separated sizes for codim");
    s->add_option("--trials", o.trials, "pencils for deg15")->check(CLI::PositiveNumber);
    s->add_option("--samples", o.samples, "sample count")->check(CLI::PositiveNumber);
    s->add_option("--seed", seed_text, "random seed (required for randomized experiments)");
    s->add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1, 1024));
    s->add_flag("--no-timing", o.no_timing, "omit runtime_ms so reports compare byte for byte");
    common(s);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kPass;
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    app.exit(e, msg, msg);
    err << msg.str();
    return kUsage;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (!seed_text.empty()) {
      std::size_t pos = 0;
      o.seed = std::stoull(seed_text, &pos);
      if (pos != seed_text.size()) throw DomainError("bad seed '" + seed_text + "'");
    }
    const auto [doc, passed] = dispatch(cmd, o);
    if (o.output.empty()) {
      emit(doc, o.format, out);
    } else {
      std::ofstream f(o.output);
      if (!f) throw DomainError("cannot write '" + o.output + "'");
      emit(doc, o.format, f);
    }
    return passed ? kPass : kFail;
  } catch (const BudgetError& e) {
    err << "budget: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace hyperpic::cli

#endif  // HYPERPIC_CLI_HPP
