#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdint>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "fatpoints/conjecture.hpp"
#include "fatpoints/corpus.hpp"
#include "fatpoints/divisor.hpp"
#include "fatpoints/literals.hpp"
#include "fatpoints/oracle.hpp"
#include "fatpoints/random.hpp"
#include "fatpoints/rational_curve.hpp"
#include "fatpoints/superabundance.hpp"

using namespace fatpoints;
using Json = nlohmann::ordered_json;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kComputation = 2, kMismatch = 3 };

/// Thrown for malformed option values that CLI11 cannot validate on its own.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::uint32_t p = kMersenne31;
  std::string seeds;
  std::optional<std::uint64_t> master;
  bool no_frame = false;
  bool json = false;

  std::uint64_t master_seed() const { return master ? *master : master_seed_from_env(); }

  OracleConfig oracle() const {
    OracleConfig cfg = OracleConfig::standard(master_seed(), 3, PrimeField(p));
    if (!seeds.empty()) cfg.seeds = parse_seed_list(seeds);
    cfg.frame = !no_frame;
    return cfg;
  }

  static std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
      try {
        std::size_t used = 0;
        out.push_back(std::stoull(item, &used, 0));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw UsageError("bad seed \"" + item + "\" in --seeds");
      }
    }
    if (out.empty()) throw UsageError("--seeds needs at least one seed");
    return out;
  }
};

std::vector<std::int64_t> to_vector(const IntVector<std::int64_t>& v) { return {v.data(), v.data() + v.size()}; }

SplittingType parse_split(const std::string& text) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument(text);
    return {std::stoll(text.substr(0, comma)), std::stoll(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw UsageError("--split expects \"a,b\", got \"" + text + "\"");
  }
}

CremonaBase parse_base(const std::string& text, Eigen::Index points) {
  CremonaBase base{};
  std::stringstream in(text);
  std::string item;
  std::size_t n = 0;
  while (std::getline(in, item, ',')) {
    if (n == 3) throw UsageError("--base expects three point indices");
    long long i = 0;
    try {
      i = std::stoll(item);
    } catch (const std::exception&) {
      throw UsageError("bad point index \"" + item + "\" in --base");
    }
    if (i < 1 || i > points) throw UsageError("point index " + item + " is outside 1.." + std::to_string(points));
    base[n++] = static_cast<Eigen::Index>(i - 1);
  }
  if (n != 3) throw UsageError("--base expects three point indices");
  return base;
}

Parametrization parse_param(const std::string& text, PrimeField field) {
  std::vector<BinaryForm> forms;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ';')) {
    std::vector<std::uint32_t> coeffs;
    std::stringstream cs(part);
    std::string c;
    while (std::getline(cs, c, ',')) {
      const auto first = c.find_first_not_of(' '), last = c.find_last_not_of(' ');
      const std::string token = first == std::string::npos ? "" : c.substr(first, last - first + 1);
      std::int64_t v = 0;
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
      if (token.empty() || ec != std::errc() || ptr != token.data() + token.size())
        throw UsageError("bad coefficient \"" + c + "\" in --param");
      coeffs.push_back(field.from_int(v));
    }
    forms.emplace_back(field, std::move(coeffs));
  }
  if (forms.size() != 3) throw UsageError("--param expects three coefficient lists separated by ';'");
  return make_parametrization(forms[0], forms[1], forms[2]);
}

Json split_json(const std::optional<SplittingType>& s) {
  if (!s) return nullptr;
  return Json{{"a", s->a}, {"b", s->b}, {"gap", s->gap()}};
}

Json mu_json(const MuRank& mu, const FatPointScheme& z, std::int64_t k) {
  const ExpectedCokernel exp = exp_cok_mu(z, k);
  return Json{{"k", mu.k},
              {"rank", mu.rank},
              {"cok_dim", mu.cok_dim},
              {"ker_dim", mu.ker_dim},
              {"h0_k", mu.h0_k},
              {"h0_next", mu.h0_next},
              {"exp_cok_dim", exp.dim},
              {"exp_onto", exp.exp_onto},
              {"exp_inj", exp.exp_inj},
              {"maximal_rank", mu.cok_dim == 0 || mu.ker_dim == 0},
              {"rank_per_seed", mu.rank_per_seed},
              {"agreement", mu.agreement}};
}

Json delta_json(const DeltaReport& r) {
  return Json{{"delta_h", r.delta_h}, {"A_h", r.a_h}, {"B_h", r.b_h}, {"clamped", r.clamped}, {"total", r.total}};
}

Json verdict_json(const Verdict& v) {
  Json witnesses = Json::array();
  for (const Witness& w : v.witnesses) {
    Json j{{"class", render_class(w.curve.cls)},
           {"split", split_json(w.curve.split)},
           {"split_source", to_string(w.source)},
           {"gamma", w.gamma},
           {"delta0", w.delta0}};
    if (w.delta) {
      j["multiplicity"] = w.multiplicity;
      j["delta"] = delta_json(*w.delta);
    }
    witnesses.push_back(std::move(j));
  }
  auto classes = [](const std::vector<DivisorClass>& cs) {
    Json out = Json::array();
    for (const DivisorClass& c : cs) out.push_back(render_class(c));
    return out;
  };
  Json out{{"conjecture", v.conjecture},
           {"applicable", v.applicable},
           {"reason", v.reason},
           {"prediction", to_string(v.prediction)},
           {"k", v.k},
           {"length", v.length},
           {"exp_cok_dim", v.expected.dim},
           {"exp_onto", v.expected.exp_onto},
           {"exp_inj", v.expected.exp_inj},
           {"h0", v.h0},
           {"h1", v.h1},
           {"h0_from_oracle", v.h0_from_oracle},
           {"candidates", v.candidates},
           {"witnesses", witnesses},
           {"inconclusive", classes(v.inconclusive)},
           {"gamma_bound_violations", classes(v.gamma_bound_violations)},
           {"delta_sum", v.delta_sum},
           {"exhaustive", v.exhaustive},
           {"multiplicity_guard_ok", v.multiplicity_guard_ok}};
  out["oracle"] = v.oracle ? Json{{"rank", v.oracle->rank}, {"cok_dim", v.oracle->cok_dim}, {"ker_dim", v.oracle->ker_dim},
                                  {"agreement", v.oracle->agreement}}
                           : Json(nullptr);
  out["oracle_agreement"] = v.oracle_agreement ? Json(*v.oracle_agreement) : Json(nullptr);
  out["notes"] = v.notes;
  return out;
}

void emit(const Json& j, const RunConfig& rc) {
  if (rc.json) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  for (const auto& [key, value] : j.items()) {
    std::cout << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  }
}

SplittingType resolve_split(const DivisorClass& c, const std::string& given, const RunConfig& rc, std::string& source) {
  if (!given.empty()) {
    source = "given";
    return parse_split(given);
  }
  const SplittingBounds b = splitting_bounds(c.degree, c.points() == 0 ? 0 : std::max<std::int64_t>(c.mult.maxCoeff(), 0));
  if (b.determined) {
    source = "forced";
    return *b.forced;
  }
  source = "construction";
  return generic_splitting_type(c, PrimeField(rc.p), rc.master_seed()).type;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fat point schemes in the projective plane: Hilbert functions, multiplication maps, "
               "splitting types, superabundance and the two maximal rank conjectures."};
  app.require_subcommand(1);
  RunConfig rc;
  app.add_option("--p", rc.p, "prime modulus for the oracle and constructions")->default_val(kMersenne31);
  app.add_option("--seeds", rc.seeds, "comma separated oracle seeds (default: 3 derived from the master seed)");
  app.add_option("--seed", rc.master, "master seed (default: FATPOINTS_SEED or a built-in constant)");
  app.add_flag("--no-frame", rc.no_frame, "do not place the first three points at the coordinate vertices");
  app.add_flag("--json", rc.json, "print JSON instead of key: value lines");

  std::string scheme, cls, cls2, split, base, param, corpus = "corpus/examples.json";
  std::int64_t k = 0, dmax = 0, order = 0;
  bool no_oracle = false, extended = false;
  int trials = 3;
  int exit_code = kOk;

  auto add_scheme = [&](CLI::App* s) { s->add_option("--scheme", scheme, "multiplicities, e.g. \"15^4,13^2,9,2^4\"")->required(); };
  auto add_class = [&](CLI::App* s) { s->add_option("--class", cls, "divisor class, e.g. \"19; 7^7,4,1\"")->required(); };
  auto add_k = [&](CLI::App* s) { s->add_option("--k", k, "degree")->required(); };

  // oracle
  CLI::App* oracle = app.add_subcommand("oracle", "generic Hilbert function and mu ranks over F_p");
  oracle->require_subcommand(1);
  CLI::App* o_hilbert = oracle->add_subcommand("hilbert", "h0(I_Z(k)) for general points");
  add_scheme(o_hilbert);
  add_k(o_hilbert);
  o_hilbert->callback([&] {
    const FatPointScheme z = parse_scheme(scheme);
    const OracleConfig cfg = rc.oracle();
    const HilbertResult h = hilbert(z, k, cfg);
    emit(Json{{"h0", h.h0}, {"k", k}, {"p", cfg.field.modulus()}, {"seeds", cfg.seeds}, {"per_seed", h.per_seed},
              {"agreement", h.agreement}, {"shgh", shgh_hilbert(z, k)}, {"h1", h1_from_h0(z, k, h.h0)}},
         rc);
  });
  CLI::App* o_mu = oracle->add_subcommand("mu", "rank of I(Z)_k (x) R_1 -> I(Z)_{k+1}");
  add_scheme(o_mu);
  add_k(o_mu);
  o_mu->callback([&] {
    const FatPointScheme z = parse_scheme(scheme);
    const OracleConfig cfg = rc.oracle();
    Json j = mu_json(mu_rank(z, k, cfg), z, k);
    j["p"] = cfg.field.modulus();
    j["seeds"] = cfg.seeds;
    emit(j, rc);
  });
  CLI::App* o_at = oracle->add_subcommand("alphatau", "initial degree and regularity index");
  add_scheme(o_at);
  o_at->callback([&] {
    const AlphaTau at = alpha_tau(parse_scheme(scheme), rc.oracle());
    emit(Json{{"alpha", at.alpha}, {"tau", at.tau}}, rc);
  });

  // divisor
  CLI::App* divisor = app.add_subcommand("divisor", "intersection theory on the blow-up");
  divisor->require_subcommand(1);
  CLI::App* d_pair = divisor->add_subcommand("pair", "intersection number of two classes");
  add_class(d_pair);
  d_pair->add_option("--with", cls2, "second class")->required();
  d_pair->callback([&] {
    const DivisorClass a = parse_class(cls), b = parse_class(cls2);
    if (a.points() != b.points()) throw UsageError("classes have different numbers of points");
    emit(Json{{"intersection", intersect(a, b)}}, rc);
  });
  CLI::App* d_genus = divisor->add_subcommand("genus", "arithmetic genus, self-intersection, K.C");
  add_class(d_genus);
  d_genus->callback([&] {
    const DivisorClass c = parse_class(cls);
    emit(Json{{"arithmetic_genus", arithmetic_genus(c)},
              {"self_intersection", self_intersection(c)},
              {"canonical_pairing", intersect(canonical_class<std::int64_t>(c.points()), c)},
              {"exceptional", is_exceptional(c)}},
         rc);
  });
  CLI::App* d_cremona = divisor->add_subcommand("cremona", "quadratic transform based at three points");
  add_class(d_cremona);
  d_cremona->add_option("--base", base, "three 1-based point indices, e.g. 1,2,3")->required();
  d_cremona->callback([&] {
    const DivisorClass c = parse_class(cls);
    emit(Json{{"class", render_class(cremona_transform(c, parse_base(base, c.points())))}}, rc);
  });
  CLI::App* d_reduce = divisor->add_subcommand("reduce", "Cremona reduction to minimal degree");
  add_class(d_reduce);
  d_reduce->callback([&] {
    const DivisorClass c = parse_class(cls);
    const auto red = cremona_reduce(c);
    Json steps = Json::array();
    for (const CremonaBase& b : red.steps) steps.push_back({b[0] + 1, b[1] + 1, b[2] + 1});
    emit(Json{{"terminal", render_class(red.terminal)}, {"steps", steps}, {"standard", is_standard_terminal(red.terminal)},
              {"plausible", plan_construction(c).has_value()}},
         rc);
  });

  // curve
  CLI::App* curve = app.add_subcommand("curve", "rational curves and splitting types");
  curve->require_subcommand(1);
  CLI::App* c_split = curve->add_subcommand("split", "splitting type of a class or of a given parametrization");
  auto* c_split_class = c_split->add_option("--class", cls, "divisor class (constructs random members)");
  c_split->add_option("--param", param, "three forms \"f0;f1;f2\", coefficients in ascending powers of t")->excludes(c_split_class);
  c_split->add_option("--trials", trials, "constructions for a class")->default_val(3);
  c_split->callback([&] {
    if (cls.empty() == param.empty()) throw UsageError("curve split needs exactly one of --class and --param");
    const PrimeField field(rc.p);
    if (!param.empty()) {
      const SplittingScan scan = splitting_scan(parse_param(param, field));
      emit(Json{{"a", scan.type.a}, {"b", scan.type.b}, {"gap", scan.type.gap()}, {"degree", scan.type.a + scan.type.b},
                {"kernel_dims", scan.kernel_dims}},
           rc);
      return;
    }
    const DivisorClass c = parse_class(cls);
    const GenericSplitting g = generic_splitting_type(c, field, rc.master_seed(), trials);
    Json per = Json::array();
    for (const SplittingType& s : g.per_trial) per.push_back({s.a, s.b});
    const SplittingBounds b = splitting_bounds(c.degree, c.points() == 0 ? 0 : c.mult.maxCoeff());
    emit(Json{{"a", g.type.a}, {"b", g.type.b}, {"gap", g.type.gap()}, {"degree", c.degree}, {"trials", per},
              {"agreement", g.agreement}, {"bounds", {{"lo", b.lo}, {"hi", b.hi}, {"determined", b.determined}}}},
         rc);
  });
  CLI::App* c_construct = curve->add_subcommand("construct", "random rational curve in a class");
  add_class(c_construct);
  c_construct->callback([&] {
    const DivisorClass c = parse_class(cls);
    const ConstructedCurve cc = construct_in_class(c, PrimeField(rc.p), rc.master_seed());
    Json forms = Json::array();
    for (const BinaryForm& f : cc.param.f) forms.push_back(f.coeffs());
    Json points = Json::array();
    for (const ProjectivePoint& q : cc.points) points.push_back({q[0], q[1], q[2]});
    emit(Json{{"class", render_class(c)}, {"param", forms}, {"points", points}, {"attempts", cc.attempts},
              {"split", split_json(splitting_type(cc.param))}},
         rc);
  });

  // sab
  CLI::App* sab = app.add_subcommand("sab", "superabundance gamma, delta0, delta");
  sab->require_subcommand(1);
  auto sab_common = [&](CLI::App* s) {
    add_scheme(s);
    add_class(s);
    add_k(s);
  };
  CLI::App* s_gamma = sab->add_subcommand("gamma", "gamma(C, Z, k)");
  sab_common(s_gamma);
  s_gamma->callback([&] {
    const FatPointScheme z = parse_scheme(scheme);
    const DivisorClass c = parse_class(cls);
    if (c.points() != z.points()) throw UsageError("class and scheme have different numbers of points");
    const GammaReport g = gamma_report(c, z, k);
    emit(Json{{"gamma", g.value}, {"intersection_length", g.intersection_length}, {"h0_omega", g.h0_omega},
              {"degree_ok", g.degree_ok}, {"multiplicity_ok", g.multiplicity_ok}},
         rc);
  });
  for (const char* name : {"delta0", "delta", "recursive"}) {
    CLI::App* s = sab->add_subcommand(name, std::string(name) == "delta0"  ? "delta0(C, Z, k)"
                                            : std::string(name) == "delta" ? "iterated delta_h(C, Z, k) and their sum"
                                                                           : "sum_{h<=p} delta_h against gamma((p+1)C)");
    sab_common(s);
    s->add_option("--split", split, "splitting type \"a,b\" (default: forced or constructed)");
    if (std::string(name) == "recursive") s->add_option("--order", order, "p, the neighbourhood order")->required();
    s->callback([&, which = std::string(name)] {
      const FatPointScheme z = parse_scheme(scheme);
      const DivisorClass c = parse_class(cls);
      if (c.points() != z.points()) throw UsageError("class and scheme have different numbers of points");
      std::string source;
      const SplittingType st = resolve_split(c, split, rc, source);
      Json j{{"split", split_json(st)}, {"split_source", source}};
      if (which == "delta0") {
        j["delta0"] = delta0(c, st, z, k);
        j["excess"] = excess(c, z, k);
      } else if (which == "delta") {
        j.update(delta_json(delta(c, st, z, k)));
      } else {
        const RecursiveCheck r = check_recursive(c, st, z, k, order);
        j["lhs"] = r.lhs;
        j["gamma"] = r.rhs;
        j["applicable"] = r.applicable;
        j["equal"] = r.equal;
        j["failed_preconditions"] = r.failed_preconditions;
      }
      emit(j, rc);
    });
  }

  // conj
  CLI::App* conj = app.add_subcommand("conj", "verdicts of the surjectivity and injectivity conjectures");
  conj->require_subcommand(1);
  for (const char* name : {"one", "two"}) {
    CLI::App* s = conj->add_subcommand(name, std::string(name) == "one" ? "surjectivity conjecture" : "injectivity conjecture");
    add_scheme(s);
    add_k(s);
    s->add_option("--dmax", dmax, "candidate degree bound (default k+2)");
    s->add_flag("--no-oracle", no_oracle, "skip the oracle cross-check");
    s->callback([&, first = std::string(name) == "one"] {
      ConjectureOptions opts;
      opts.dmax = dmax;
      opts.run_oracle = !no_oracle;
      opts.oracle = rc.oracle();
      opts.construction_seed = rc.master_seed();
      const FatPointScheme z = parse_scheme(scheme);
      const Verdict v = first ? conjecture1_verdict(z, k, opts) : conjecture2_verdict(z, k, opts);
      emit(verdict_json(v), rc);
      if (v.oracle_agreement && !*v.oracle_agreement) exit_code = kMismatch;
    });
  }
  CLI::App* c_quasi = conj->add_subcommand("quasi", "quasi-uniform check: -F.C + b - 1 < 0 for every candidate");
  add_scheme(c_quasi);
  add_k(c_quasi);
  c_quasi->add_option("--dmax", dmax, "candidate degree bound (default k)");
  c_quasi->callback([&] {
    const QuasiUniformReport r = quasi_uniform_check(parse_scheme(scheme), k, dmax >= 1 ? dmax : k);
    Json violations = Json::array();
    for (const auto& v : r.violations) violations.push_back({{"class", render_class(v.cls)}, {"value", v.value}});
    emit(Json{{"boundary_case", r.boundary_case}, {"checked", r.checked}, {"violations", violations}, {"ok", r.ok()}}, rc);
    if (!r.ok()) exit_code = kMismatch;
  });

  // reproduce
  CLI::App* reproduce = app.add_subcommand("reproduce", "run the example corpus against its stored values");
  reproduce->add_option("--corpus", corpus, "corpus JSON file")->default_val("corpus/examples.json");
  reproduce->add_flag("--extended", extended, "include long-running rows");
  reproduce->callback([&] {
    CorpusOptions opts;
    opts.extended = extended;
    opts.oracle = rc.oracle();
    opts.construction_seed = rc.master_seed();
    const CorpusReport report = reproduce_corpus_file(corpus, opts);
    if (rc.json) {
      Json rows = Json::array();
      for (const CorpusRow& row : report.rows) {
        Json checks = Json::array();
        for (const CorpusCheck& c : row.checks)
          checks.push_back({{"label", c.label}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
        rows.push_back({{"name", row.name}, {"scheme", row.scheme}, {"k", row.k}, {"skipped", row.skipped},
                        {"pass", row.pass()}, {"error", row.error}, {"checks", checks}});
      }
      std::cout << Json{{"pass", report.pass()}, {"rows", rows}}.dump(2) << "\n";
    } else {
      std::cout << render_report(report);
    }
    if (!report.pass()) exit_code = kMismatch;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const CorpusError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kComputation;
  }
  return exit_code;
}
