#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fatpoints/oracle.hpp"
#include "fatpoints/random.hpp"

namespace fatpoints {

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CorpusCheck {
  std::string label;
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct CorpusRow {
  std::string name;
  std::string scheme;
  std::int64_t k = 0;
  bool skipped = false;  // extended row without --extended
  /// Set when the row threw; the row then fails.
  std::string error;
  std::vector<CorpusCheck> checks;
  double seconds = 0;

  bool pass() const;
};

struct CorpusReport {
  std::vector<CorpusRow> rows;
  bool pass() const;
};

struct CorpusOptions {
  bool extended = false;
  OracleConfig oracle = OracleConfig::standard(kDefaultMasterSeed);
  std::uint64_t construction_seed = kDefaultMasterSeed;
  int construction_trials = 3;
};

/// Runs every row of a corpus document (JSON text) and compares against its stored values.
/// Throws CorpusError on malformed documents.
CorpusReport reproduce_corpus(const std::string& json_text, const CorpusOptions& opts);

/// Reads the file and calls reproduce_corpus.
CorpusReport reproduce_corpus_file(const std::string& path, const CorpusOptions& opts);

/// Fixed-width table: one line per row, followed by the failing checks of each failed row.
std::string render_report(const CorpusReport& report);

}  // namespace fatpoints
