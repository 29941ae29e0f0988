#include "fatpoints/corpus.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fatpoints/conjecture.hpp"
#include "fatpoints/enumerate.hpp"
#include "fatpoints/literals.hpp"
#include "fatpoints/rational_curve.hpp"
#include "fatpoints/superabundance.hpp"

namespace fatpoints {

using nlohmann::json;

bool CorpusRow::pass() const {
  if (skipped) return true;
  if (!error.empty()) return false;
  return std::all_of(checks.begin(), checks.end(), [](const CorpusCheck& c) { return c.pass; });
}

bool CorpusReport::pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const CorpusRow& r) { return r.pass(); });
}

namespace {

std::string str(std::int64_t v) { return std::to_string(v); }
std::string str(const SplittingType& s) { return "(" + str(s.a) + "," + str(s.b) + ")"; }
std::string str(const std::vector<std::int64_t>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + str(v[i]);
  return out + "]";
}

class RowRunner {
 public:
  RowRunner(const json& entry, const CorpusOptions& opts, CorpusRow& row)
      : entry_(entry), opts_(opts), row_(row), z_(parse_scheme(entry.at("scheme").get<std::string>())) {
    row_.k = entry.at("k").get<std::int64_t>();
  }

  void run() {
    if (entry_.contains("hilbert")) hilbert_checks();
    if (entry_.contains("alpha_tau")) alpha_tau_checks();
    if (entry_.contains("mu")) mu_checks();
    if (entry_.contains("curves")) {
      for (const json& c : entry_.at("curves")) curve_checks(c);
    }
    if (entry_.contains("verdict")) verdict_checks(entry_.at("verdict"));
    if (entry_.contains("guard")) guard_checks(entry_.at("guard"));
  }

 private:
  void check(std::string label, std::string expected, std::string actual) {
    const bool ok = expected == actual;
    row_.checks.push_back({std::move(label), std::move(expected), std::move(actual), ok});
  }
  void check_at_least(std::string label, std::int64_t bound, std::int64_t actual) {
    row_.checks.push_back({std::move(label), ">= " + str(bound), str(actual), actual >= bound});
  }

  void hilbert_checks() {
    for (const json& pair : entry_.at("hilbert")) {
      const auto t = pair.at(0).get<std::int64_t>();
      check("h0(I_Z(" + str(t) + "))", str(pair.at(1).get<std::int64_t>()), str(hilbert(z_, t, opts_.oracle).h0));
    }
  }

  void alpha_tau_checks() {
    const AlphaTau at = alpha_tau(z_, opts_.oracle);
    const auto& want = entry_.at("alpha_tau");
    check("alpha", str(want.at(0).get<std::int64_t>()), str(at.alpha));
    check("tau", str(want.at(1).get<std::int64_t>()), str(at.tau));
  }

  void mu_checks() {
    const json& want = entry_.at("mu");
    const MuRank mu = mu_rank(z_, row_.k, opts_.oracle);
    const std::string at = "(mu_" + str(row_.k) + ")";
    if (want.contains("rank")) check("rank " + at, str(want.at("rank").get<std::int64_t>()), str(mu.rank));
    if (want.contains("cok")) check("dim cok " + at, str(want.at("cok").get<std::int64_t>()), str(mu.cok_dim));
    if (want.contains("cok_min")) check_at_least("dim cok " + at, want.at("cok_min").get<std::int64_t>(), mu.cok_dim);
    if (want.contains("ker_min")) check_at_least("dim ker " + at, want.at("ker_min").get<std::int64_t>(), mu.ker_dim);
    if (want.contains("exp_cok")) check("exp-dim cok " + at, str(want.at("exp_cok").get<std::int64_t>()), str(exp_cok_mu(z_, row_.k).dim));
  }

  SplittingType resolve_split(const DivisorClass& c) {
    const SplittingBounds b = splitting_bounds(c.degree, c.points() == 0 ? 0 : c.mult.maxCoeff());
    if (b.determined) return *b.forced;
    return generic_splitting_type(c, opts_.oracle.field, opts_.construction_seed, opts_.construction_trials).type;
  }

  void curve_checks(const json& want) {
    const std::string literal = want.at("class").get<std::string>();
    const DivisorClass c = parse_class(literal);
    const std::string tag = "[" + literal + "] ";
    if (want.contains("gamma")) check(tag + "gamma", str(want.at("gamma").get<std::int64_t>()), str(gamma(c, z_, row_.k)));
    if (!want.contains("split")) return;

    const SplittingType split = resolve_split(c);
    check(tag + "splitting type", str(SplittingType{want.at("split").at(0).get<std::int64_t>(), want.at("split").at(1).get<std::int64_t>()}),
          str(split));
    if (want.contains("delta0")) check(tag + "delta0", str(want.at("delta0").get<std::int64_t>()), str(delta0(c, split, z_, row_.k)));
    if (want.contains("delta_ladder")) {
      const DeltaReport rep = delta(c, split, z_, row_.k);
      const auto ladder = want.at("delta_ladder").get<std::vector<std::int64_t>>();
      std::vector<std::int64_t> got(rep.delta_h.begin(), rep.delta_h.begin() + std::min(ladder.size(), rep.delta_h.size()));
      check(tag + "delta_h, h = 0.." + str(static_cast<std::int64_t>(ladder.size()) - 1), str(ladder), str(got));
    }
    if (want.contains("recursive")) {
      const json& r = want.at("recursive");
      const RecursiveCheck rc = check_recursive(c, split, z_, row_.k, r.at("p").get<std::int64_t>());
      check(tag + "gamma((p+1)C)", str(r.at("gamma").get<std::int64_t>()), str(rc.rhs));
      check(tag + "sum delta_h = gamma((p+1)C)", "true", rc.equal && rc.applicable ? "true" : "false");
    }
    if (want.contains("orbit_delta_sum")) {
      // Each orbit member is counted with the levels h < n, n = orbit_multiplicity.
      const std::int64_t n = want.value("orbit_multiplicity", std::int64_t{1});
      std::int64_t total = 0;
      const auto orbit = symmetric_orbit(c, z_);
      for (const DivisorClass& member : orbit) {
        const DeltaReport rep = delta(member, split, z_, row_.k);
        for (std::int64_t h = 0; h < n && h < static_cast<std::int64_t>(rep.delta_h.size()); ++h) total += rep.delta_h[h];
      }
      check(tag + "orbit size", str(want.at("orbit_size").get<std::int64_t>()), str(static_cast<std::int64_t>(orbit.size())));
      check(tag + "sum of delta over orbit", str(want.at("orbit_delta_sum").get<std::int64_t>()), str(total));
    }
  }

  void verdict_checks(const json& want) {
    ConjectureOptions co;
    co.oracle = opts_.oracle;
    co.construction_seed = opts_.construction_seed;
    co.construction_trials = opts_.construction_trials;
    const int which = want.at("conjecture").get<int>();
    const Verdict v = which == 1 ? conjecture1_verdict(z_, row_.k, co) : conjecture2_verdict(z_, row_.k, co);
    const std::string tag = "conjecture " + str(which) + " ";
    check(tag + "prediction", want.at("prediction").get<std::string>(), to_string(v.prediction));
    check(tag + "oracle agreement", "true", v.oracle_agreement.value_or(false) ? "true" : "false");
    if (want.contains("delta_sum")) check(tag + "sum delta", str(want.at("delta_sum").get<std::int64_t>()), str(v.delta_sum));

    auto has_witness = [&](const DivisorClass& c) {
      return std::any_of(v.witnesses.begin(), v.witnesses.end(), [&](const Witness& w) { return w.curve.cls == c; });
    };
    if (want.contains("witness")) {
      const DivisorClass c = parse_class(want.at("witness").get<std::string>());
      const bool whole_orbit = want.value("witness_orbit", false);
      bool found = true;
      if (whole_orbit) {
        for (const DivisorClass& member : symmetric_orbit(c, z_)) found = found && has_witness(member);
      } else {
        found = has_witness(c);
      }
      check(tag + "witness " + render_class(c) + (whole_orbit ? " (whole orbit)" : ""), "present", found ? "present" : "absent");
    }

    // A witness whose delta0 exceeds the expected cokernel forces non-maximal rank.
    if (v.oracle) {
      const bool forced = std::any_of(v.witnesses.begin(), v.witnesses.end(),
                                      [&](const Witness& w) { return w.delta0 > v.expected.dim; });
      if (forced) {
        const bool not_max = which == 1 ? v.oracle->cok_dim > 0 : v.oracle->ker_dim > 0;
        check(tag + "delta0 > exp-dim cok implies non-maximal rank", "true", not_max ? "true" : "false");
      }
    }
  }

  void guard_checks(const json& want) {
    const DivisorClass c = parse_class(want.at("class").get<std::string>());
    const std::string tag = "[" + render_class(c) + "] ";
    if (c.points() != z_.points()) throw CorpusError("guard class and scheme have different numbers of points");
    bool violates = c.degree > row_.k + 2;
    for (Eigen::Index i = 0; i < c.points(); ++i) violates = violates || c.mult[i] > z_.mult[i] + 1;
    check(tag + "violates d <= k+2 or r_i <= m_i+1", "true", violates ? "true" : "false");

    EnumerationOptions eo;
    eo.dmax = std::max(row_.k + 2, c.degree);
    eo.k = row_.k;
    const auto candidates = enumerate_candidates(z_, eo);
    bool listed = false;
    for (const DivisorClass& member : symmetric_orbit(c, z_)) {
      listed = listed || std::find(candidates.begin(), candidates.end(), member) != candidates.end();
    }
    check(tag + "excluded from the candidates", "true", listed ? "false" : "true");
    if (want.value("maximal_rank", false)) {
      const MuRank mu = mu_rank(z_, row_.k, opts_.oracle);
      check("mu_" + str(row_.k) + " has maximal rank", "true", mu.cok_dim == 0 || mu.ker_dim == 0 ? "true" : "false");
    }
  }

  const json& entry_;
  const CorpusOptions& opts_;
  CorpusRow& row_;
  FatPointScheme z_;
};

}  // namespace

CorpusReport reproduce_corpus(const std::string& json_text, const CorpusOptions& opts) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw CorpusError(std::string("corpus is not valid JSON: ") + e.what());
  }
  if (!doc.contains("examples") || !doc.at("examples").is_array()) throw CorpusError("corpus needs an \"examples\" array");

  CorpusReport report;
  for (const json& entry : doc.at("examples")) {
    CorpusRow row;
    try {
      row.name = entry.at("name").get<std::string>();
      row.scheme = entry.at("scheme").get<std::string>();
      row.k = entry.at("k").get<std::int64_t>();
    } catch (const json::exception& e) {
      throw CorpusError(std::string("corpus row lacks name, scheme or k: ") + e.what());
    }
    if (entry.value("extended", false) && !opts.extended) {
      row.skipped = true;
      report.rows.push_back(std::move(row));
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    try {
      RowRunner(entry, opts, row).run();
    } catch (const json::exception& e) {
      throw CorpusError("malformed corpus row \"" + row.name + "\": " + e.what());
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.rows.push_back(std::move(row));
  }
  return report;
}

CorpusReport reproduce_corpus_file(const std::string& path, const CorpusOptions& opts) {
  std::ifstream in(path);
  if (!in) throw CorpusError("cannot open corpus file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return reproduce_corpus(text.str(), opts);
}

std::string render_report(const CorpusReport& report) {
  std::ostringstream out;
  char line[256];
  for (const CorpusRow& row : report.rows) {
    const char* status = row.skipped ? "SKIP" : row.pass() ? "PASS" : "FAIL";
    const auto passed = std::count_if(row.checks.begin(), row.checks.end(), [](const CorpusCheck& c) { return c.pass; });
    std::snprintf(line, sizeof line, "%-4s  %-44s  %3zu/%-3zu checks  %8.2fs\n", status, row.name.c_str(),
                  static_cast<std::size_t>(passed), row.checks.size(), row.seconds);
    out << line;
  }
  for (const CorpusRow& row : report.rows) {
    if (row.pass()) continue;
    out << "\n" << row.name << " (Z = " << row.scheme << ", k = " << row.k << "):\n";
    if (!row.error.empty()) out << "  error: " << row.error << "\n";
    for (const CorpusCheck& c : row.checks) {
      if (!c.pass) out << "  " << c.label << ": expected " << c.expected << ", got " << c.actual << "\n";
    }
  }
  return out.str();
}

}  // namespace fatpoints
