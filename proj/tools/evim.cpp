// evim: eventual-image analysis of endomorphisms in four finite-character
// categories. Subcommands:
//   analyze  <doc.json>   both algorithms + instance extras
//   verify   <doc.json>   property suites (timescale, commuting, vu-uv,
//                         coalgebra / limit-colimit / universal oracles)
//   compare  <doc.json>   two endomorphisms: shift equivalence, eventual
//                         equivalence witness, conjugacy invariants
// Input documents and reports are JSON; rationals travel as "p/q" strings.

#include <CLI11.hpp>
#include <evim/evim.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using njson = nlohmann::ordered_json;
using namespace evim;

namespace {

struct Options {
  std::string path;
  std::string format = "pretty";
  std::uint64_t seed = 20240405;
  std::vector<std::string> suites;
  std::size_t universal_bound = 3;
  std::uint64_t oracle_guard = 1024;
  bool inject_wrong_idempotent = false;
};

struct cli_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const njson& field(const njson& j, const std::string& key) {
  auto it = j.find(key);
  if (it == j.end()) throw cli_error("missing field \"" + key + "\"");
  return *it;
}

Rat parse_rat_value(const njson& j, const std::string& where) {
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
  if (j.is_string()) {
    auto r = parse_rat(j.get<std::string>());
    if (r) return *r;
    throw cli_error(where + ": malformed rational \"" + j.get<std::string>() + "\"");
  }
  throw cli_error(where + ": rationals must be integers or \"p/q\" strings, not floats");
}

RatMatrix parse_matrix(const njson& j, const std::string& where) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw cli_error(where + ": expected an array of row arrays");
  const std::size_t rows = j.size(), cols = j[0].size();
  RatMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw cli_error(where + ": row " + std::to_string(i) + " has the wrong length");
    for (std::size_t k = 0; k < cols; ++k)
      m.at(i, k) = parse_rat_value(j[i][k], where + "[" + std::to_string(i) + "][" +
                                                std::to_string(k) + "]");
  }
  return m;
}

std::vector<std::size_t> parse_table(const njson& j, const std::string& where) {
  if (!j.is_array()) throw cli_error(where + ": expected an array");
  std::vector<std::size_t> t;
  for (const auto& e : j) {
    if (!e.is_number_unsigned() && !e.is_number_integer())
      throw cli_error(where + ": table entries must be nonnegative integers");
    long long v = e.get<long long>();
    if (v < 0) throw cli_error(where + ": table entries must be nonnegative");
    t.push_back(static_cast<std::size_t>(v));
  }
  return t;
}

njson matrix_json(const RatMatrix& m) {
  njson rows = njson::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    njson row = njson::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rat_str(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

njson table_json(const std::vector<std::size_t>& t) {
  njson a = njson::array();
  for (std::size_t v : t) a.push_back(v);
  return a;
}

njson verdict_json(const std::string& name, const Verdict& v) {
  return njson{{"name", name}, {"outcome", v.kind_name()}, {"detail", v.detail}};
}

// ----- per-category adapters -----

struct FinSetAdapter {
  using Cat = FinSetCat;
  static FinSetObj parse_obj(const njson& j) {
    return {field(j, "size").get<std::size_t>()};
  }
  static FinFunction parse_mor(const njson& j, const FinSetObj& dom, const FinSetObj& cod) {
    return FinFunction(dom.size, cod.size, parse_table(field(j, "table"), "map.table"));
  }
  static njson obj_json(const FinSetObj& x) { return njson{{"size", x.size}}; }
  static njson mor_json(const FinFunction& f) { return njson{{"table", table_json(f.table)}}; }
  static void extras(njson& out, const FinFunction& f,
                     const EventualImageData<FinSetCat>& d) {
    out["periodic_points"] = table_json(periodic_points(f));
    if (f.dom_size <= 12) out["factorial_power"] = table_json(factorial_power(f).table);
    out["automorphism_cycle_type"] = table_json(cycle_type(FinFunction(d.automorphism.table)));
  }
};

struct FDVectAdapter {
  using Cat = FDVectCat;
  static VectObj parse_obj(const njson& j) { return {field(j, "dim").get<std::size_t>()}; }
  static RatMatrix parse_mor(const njson& j, const VectObj& dom, const VectObj& cod) {
    RatMatrix m = parse_matrix(field(j, "matrix"), "map.matrix");
    if (m.rows() != cod.dim || m.cols() != dom.dim)
      throw cli_error("map.matrix: expected shape " + std::to_string(cod.dim) + "x" +
                      std::to_string(dom.dim));
    return m;
  }
  static njson obj_json(const VectObj& x) { return njson{{"dim", x.dim}}; }
  static njson mor_json(const RatMatrix& m) { return njson{{"matrix", matrix_json(m)}}; }
  static void extras(njson& out, const RatMatrix& f, const EventualImageData<FDVectCat>& d) {
    auto fit = fitting(f);
    out["eventual_image_basis"] = matrix_json(fit.ei);
    out["eventual_kernel_basis"] = matrix_json(fit.ek);
    out["char_poly"] = char_poly(f).str();
    RatPoly witness = f_infinity_witness(f);
    out["idempotent_span_witness"] = witness.str();
    out["idempotent_span_witness_degree"] = witness.degree();
    njson factors = njson::array();
    for (const auto& p : invariant_factors(d.automorphism)) factors.push_back(p.str());
    out["automorphism_invariant_factors"] = std::move(factors);
  }
};

struct FinMetAdapter {
  using Cat = FinMetCat;
  static FinMetric parse_obj(const njson& j) {
    const std::size_t n = field(j, "size").get<std::size_t>();
    RatMatrix d = parse_matrix(field(j, "distances"), "object.distances");
    if (d.rows() != n || d.cols() != n)
      throw cli_error("object.distances: expected a " + std::to_string(n) + "x" +
                      std::to_string(n) + " matrix");
    return FinMetric(std::move(d));
  }
  static ShortMap parse_mor(const njson& j, const FinMetric& dom, const FinMetric& cod) {
    return ShortMap(dom, cod, parse_table(field(j, "table"), "map.table"));
  }
  static njson obj_json(const FinMetric& x) {
    return njson{{"size", x.n}, {"distances", matrix_json(x.d)}};
  }
  static njson mor_json(const ShortMap& f) { return njson{{"table", table_json(f.table)}}; }
  static void extras(njson& out, const ShortMap& f, const EventualImageData<FinMetCat>& d) {
    out["recurrent_points"] = table_json(recurrent_points(f));
    auto [qm, cover] = quotient_metric(f);
    out["quotient_metric"] = njson{{"size", qm.n},
                                   {"distances", matrix_json(qm.d)},
                                   {"covering", table_json(cover)}};
    out["idempotent_in_closure"] = table_json(unique_idempotent_in_closure(f).table);
    out["carrier_distances"] = matrix_json(d.carrier().d);
  }
};

struct FinPosetAdapter {
  using Cat = FinPosetCat;
  static FinPoset parse_obj(const njson& j) {
    const std::size_t n = field(j, "size").get<std::size_t>();
    const njson& rows = field(j, "order");
    if (!rows.is_array() || rows.size() != n)
      throw cli_error("object.order: expected " + std::to_string(n) + " rows");
    std::vector<std::uint8_t> rel(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (!rows[i].is_array() || rows[i].size() != n)
        throw cli_error("object.order: row " + std::to_string(i) + " has the wrong length");
      for (std::size_t k = 0; k < n; ++k) {
        const auto& e = rows[i][k];
        if (e.is_boolean())
          rel[i * n + k] = e.get<bool>() ? 1 : 0;
        else if (e.is_number_integer() || e.is_number_unsigned())
          rel[i * n + k] = e.get<long long>() ? 1 : 0;
        else
          throw cli_error("object.order: entries must be 0/1 or booleans");
      }
    }
    return FinPoset(n, std::move(rel));
  }
  static MonotoneMap parse_mor(const njson& j, const FinPoset& dom, const FinPoset& cod) {
    return MonotoneMap(dom, cod, parse_table(field(j, "table"), "map.table"));
  }
  static njson obj_json(const FinPoset& x) {
    njson rows = njson::array();
    for (std::size_t i = 0; i < x.n; ++i) {
      njson row = njson::array();
      for (std::size_t j = 0; j < x.n; ++j) row.push_back(x.leq(i, j) ? 1 : 0);
      rows.push_back(std::move(row));
    }
    return njson{{"size", x.n}, {"order", std::move(rows)}};
  }
  static njson mor_json(const MonotoneMap& f) { return njson{{"table", table_json(f.table)}}; }
  static void extras(njson& out, const MonotoneMap& f,
                     const EventualImageData<FinPosetCat>& d) {
    out["periodic_points"] = table_json(periodic_points(FinFunction(f.table)));
    out["automorphism_cycle_type"] = table_json(cycle_type(FinFunction(d.automorphism.table)));
    out["carrier_order"] = obj_json(d.carrier())["order"];
  }
};

// ----- report assembly -----

template <typename A>
njson bundle_json(const EventualImageData<typename A::Cat>& d) {
  njson out;
  out["carrier"] = A::obj_json(d.carrier());
  out["stabilization_index"] = d.stabilization_index;
  out["iota"] = A::mor_json(d.iota);
  out["pi"] = A::mor_json(d.pi);
  out["idempotent"] = A::mor_json(d.idempotent);
  out["automorphism"] = A::mor_json(d.automorphism);
  out["automorphism_inverse"] = A::mor_json(d.automorphism_inverse);
  if (d.idempotent_exponent)
    out["idempotent_exponent"] = *d.idempotent_exponent;
  else
    out["idempotent_exponent"] = nullptr;
  return out;
}

int emit(const njson& report, const Options& opt, double elapsed_ms) {
  bool all_ok = true;
  if (report.contains("checks"))
    for (const auto& c : report["checks"]) {
      const std::string outcome = c["outcome"].get<std::string>();
      if (outcome == "fail" || outcome == "hypothesis-fail") all_ok = false;
    }
  if (opt.format == "json") {
    std::cout << report.dump(2) << "\n";
  } else {
    if (report.contains("analysis")) {
      const auto& a = report["analysis"];
      std::cout << "category:            " << report["input"]["category"].get<std::string>()
                << "\n"
                << "stabilization index: " << a["stabilization_index"] << "\n"
                << "carrier:             " << a["carrier"].dump() << "\n"
                << "iota:                " << a["iota"].dump() << "\n"
                << "pi:                  " << a["pi"].dump() << "\n"
                << "idempotent:          " << a["idempotent"].dump() << "\n"
                << "automorphism:        " << a["automorphism"].dump() << "\n";
      if (a.contains("extras"))
        std::cout << "extras:              " << a["extras"].dump() << "\n";
    }
    if (report.contains("checks"))
      for (const auto& c : report["checks"]) {
        const std::string outcome = c["outcome"].get<std::string>();
        const char* tag = outcome == "pass"
                              ? "PASS "
                              : (outcome == "skipped" || outcome == "not-applicable" ||
                                         outcome == "absent"
                                     ? "SKIP "
                                     : "FAIL ");
        std::cout << tag << c["name"].get<std::string>() << ": "
                  << c["detail"].get<std::string>() << "\n";
      }
    std::cout << "elapsed: " << elapsed_ms << " ms\n";
  }
  return all_ok ? 0 : 1;
}

bool suite_selected(const Options& opt, const std::string& name) {
  if (opt.suites.empty()) return true;
  for (const auto& s : opt.suites)
    if (s == name || s == "all") return true;
  return false;
}

// ----- drivers -----

template <typename A>
njson run_analyze(const njson& doc, const Options&) {
  using C = typename A::Cat;
  auto x = A::parse_obj(field(doc, "object"));
  auto f = A::parse_mor(field(doc, "map"), x, x);
  njson report;
  report["input"] = doc;
  auto chain = eventual_image_chain<C>(f);
  auto power = eventual_image_idempotent_power<C>(f);
  njson analysis = bundle_json<A>(chain);
  analysis["power_route"] =
      njson{{"stabilization_index", power.stabilization_index},
            {"idempotent_exponent",
             power.idempotent_exponent ? njson(*power.idempotent_exponent) : njson(nullptr)}};
  njson extras;
  A::extras(extras, f, chain);
  analysis["extras"] = std::move(extras);
  report["analysis"] = std::move(analysis);
  njson checks = njson::array();
  checks.push_back(verdict_json("splitting_identities", verify_bundle<C>(chain)));
  checks.push_back(verdict_json("algorithms_agree", algorithms_agree<C>(f)));
  report["checks"] = std::move(checks);
  return report;
}

template <typename A>
njson run_verify(const njson& doc, const Options& opt) {
  using C = typename A::Cat;
  auto x = A::parse_obj(field(doc, "object"));
  auto f = A::parse_mor(field(doc, "map"), x, x);
  njson report;
  report["input"] = doc;
  auto bundle = eventual_image_chain<C>(f);
  if (opt.inject_wrong_idempotent) bundle.idempotent = C::compose(bundle.idempotent, f);
  njson checks = njson::array();
  if (suite_selected(opt, "splitting"))
    checks.push_back(verdict_json("splitting_identities", verify_bundle<C>(bundle)));
  if (suite_selected(opt, "agreement"))
    checks.push_back(verdict_json("algorithms_agree", algorithms_agree<C>(f)));
  if (suite_selected(opt, "timescale"))
    for (std::uint64_t n = 1; n <= 6; ++n)
      checks.push_back(
          verdict_json("timescale_n" + std::to_string(n), check_timescale<C>(f, n)));
  if (suite_selected(opt, "commuting")) {
    typename C::Mor g =
        doc.contains("map2") ? A::parse_mor(doc["map2"], x, x) : C::compose(f, f);
    checks.push_back(verdict_json("commuting_product", check_commuting_product<C>(f, g)));
  }
  if (suite_selected(opt, "vu-uv")) {
    if (doc.contains("morphism") && doc.contains("morphism2") && doc.contains("object2")) {
      auto y = A::parse_obj(doc["object2"]);
      auto u = A::parse_mor(doc["morphism"], x, y);
      auto v = A::parse_mor(doc["morphism2"], y, x);
      checks.push_back(verdict_json("vu_uv", check_vu_uv<C>(u, v)));
    } else {
      checks.push_back(verdict_json("vu_uv", check_vu_uv<C>(f, f)));
    }
  }
  if (suite_selected(opt, "coalgebra"))
    checks.push_back(
        verdict_json("subobject_oracle", subobject_oracle<C>(f, opt.oracle_guard)));
  if (suite_selected(opt, "limit-colimit"))
    checks.push_back(verdict_json("limit_colimit_oracle", limit_colimit_oracle<C>(f)));
  if (suite_selected(opt, "universal"))
    checks.push_back(verdict_json(
        "universal_property_oracle", universal_property_oracle<C>(f, opt.universal_bound)));
  report["checks"] = std::move(checks);
  return report;
}

template <typename A>
njson run_compare(const njson& doc, const Options&) {
  using C = typename A::Cat;
  auto x = A::parse_obj(field(doc, "object"));
  auto f = A::parse_mor(field(doc, "map"), x, x);
  auto y = doc.contains("object2") ? A::parse_obj(doc["object2"]) : x;
  auto g = A::parse_mor(field(doc, "map2"), y, y);
  njson report;
  report["input"] = doc;
  njson checks = njson::array();

  if (doc.contains("morphism") && doc.contains("morphism2") && doc.contains("n")) {
    auto u = A::parse_mor(doc["morphism"], x, y);
    auto v = A::parse_mor(doc["morphism2"], y, x);
    std::uint64_t n = doc["n"].get<std::uint64_t>();
    checks.push_back(
        verdict_json("shift_equivalence", shift_equivalence_verify<C>(f, g, u, v, n)));
  }

  auto witness = eventual_equivalence_witness<C>(f, g);
  if (witness) {
    checks.push_back(njson{{"name", "eventual_equivalence"},
                           {"outcome", "pass"},
                           {"detail", "witness found; v.u = f^infty and u.v = g^infty verified"},
                           {"u", A::mor_json(witness->first)},
                           {"v", A::mor_json(witness->second)}});
  } else {
    checks.push_back(
        njson{{"name", "eventual_equivalence"},
              {"outcome", "absent"},
              {"detail", "eventual automorphisms are not isomorphic; no witness exists"}});
  }

  auto df = eventual_image_chain<C>(f);
  auto dg = eventual_image_chain<C>(g);
  if constexpr (std::is_same_v<C, FinSetCat> || std::is_same_v<C, FinPosetCat>) {
    auto tf = cycle_type(FinFunction(df.automorphism.table));
    auto tg = cycle_type(FinFunction(dg.automorphism.table));
    checks.push_back(njson{{"name", "conjugacy_invariant"},
                           {"outcome", tf == tg ? "pass" : "fail"},
                           {"detail", "cycle types " + detail::table_str(tf) + " vs " +
                                          detail::table_str(tg)}});
  } else if constexpr (std::is_same_v<C, FDVectCat>) {
    checks.push_back(
        verdict_json("conjugacy_invariant", similar(df.automorphism, dg.automorphism)));
    checks.push_back(verdict_json("williams_char_poly", williams_check(f, g)));
  } else {
    auto k = C::conjugator(df.automorphism, dg.automorphism);
    checks.push_back(njson{{"name", "conjugacy_invariant"},
                           {"outcome", k ? "pass" : "fail"},
                           {"detail", k ? "equivariant isometry " + C::describe_mor(*k)
                                        : "no equivariant isometry between the eventual "
                                          "automorphisms"}});
  }
  report["checks"] = std::move(checks);
  return report;
}

template <typename A>
njson dispatch(const std::string& cmd, const njson& doc, const Options& opt) {
  if (cmd == "analyze") return run_analyze<A>(doc, opt);
  if (cmd == "verify") return run_verify<A>(doc, opt);
  return run_compare<A>(doc, opt);
}

njson run(const std::string& cmd, const njson& doc, const Options& opt) {
  const std::string cat = field(doc, "category").get<std::string>();
  if (cat == "finset") return dispatch<FinSetAdapter>(cmd, doc, opt);
  if (cat == "fdvect") return dispatch<FDVectAdapter>(cmd, doc, opt);
  if (cat == "finmet") return dispatch<FinMetAdapter>(cmd, doc, opt);
  if (cat == "finposet") return dispatch<FinPosetAdapter>(cmd, doc, opt);
  throw cli_error("unknown category \"" + cat + "\"");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact eventual-image computations in FinSet, FDVect(Q), FinMet and FinPoset"};
  app.require_subcommand(1);

  Options opt;
  if (const char* env = std::getenv("EVIMG_SEED")) opt.seed = std::strtoull(env, nullptr, 10);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("path", opt.path, "input document (JSON)")->required();
    sub->add_option("--format", opt.format, "report format: pretty or json")
        ->check(CLI::IsMember({"pretty", "json"}));
    sub->add_option("--seed", opt.seed, "seed for randomized witness searches");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "run both algorithms and instance extras");
  add_common(analyze);
  CLI::App* verify = app.add_subcommand("verify", "run property suites");
  add_common(verify);
  verify->add_option("--suites", opt.suites,
                     "subset of: splitting agreement timescale commuting vu-uv coalgebra "
                     "limit-colimit universal")
      ->delimiter(',');
  verify->add_option("--k", opt.universal_bound, "universal-property oracle bound");
  verify->add_option("--oracle-guard", opt.oracle_guard,
                     "max subobjects the coalgebra oracle may enumerate");
  verify->add_flag("--inject-wrong-idempotent", opt.inject_wrong_idempotent,
                   "debug: corrupt the idempotent before checking")
      ->group("");
  CLI::App* compare = app.add_subcommand("compare", "compare two endomorphisms");
  add_common(compare);

  CLI11_PARSE(app, argc, argv);
  fdvect_witness_seed() = opt.seed;

  const std::string cmd = app.get_subcommands().front()->get_name();
  const auto start = std::chrono::steady_clock::now();
  njson report;
  try {
    std::ifstream in(opt.path);
    if (!in) {
      std::cerr << "error: cannot open " << opt.path << "\n";
      return 2;
    }
    njson doc = njson::parse(in);  // throws with position diagnostics
    report = run(cmd, doc, opt);
  } catch (const njson::parse_error& e) {
    std::cerr << "parse error in " << opt.path << ": " << e.what() << "\n";
    return 2;
  } catch (const njson::exception& e) {
    std::cerr << "malformed document " << opt.path << ": " << e.what() << "\n";
    return 2;
  } catch (const cli_error& e) {
    std::cerr << "invalid document: " << e.what() << "\n";
    return 2;
  } catch (const invalid_input& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const guard_exceeded& e) {
    std::cerr << "guard exceeded: " << e.what() << "\n";
    return 2;
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
          .count();
  return emit(report, opt, ms);
}
