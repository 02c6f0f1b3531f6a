#pragma once

#include "approx/membership.hpp"
#include "approx/transform.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace approx {

struct CheckReport {
  std::string program;
  ApproxTy family;
  Verdict verdict;
  std::optional<std::string> bound;  // closed scalar programs only

  Json to_json() const;
};

/// e in appr(err, approx) at the result's family, by sampling.
CheckReport check_soundness(const std::string& program, const Expr& e, const CompileResult& r, const SampleConfig& cfg);

/// Per-file options read from `<stem>.opts.json` next to a program.
struct FileOptions {
  CompileOpts compile;
  std::optional<Rational> real_bound;
};

FileOptions load_sidecar(const std::filesystem::path& program, const CompileOpts& base);

struct FileReport {
  std::string file;
  std::string status;  // pass, fail, inconclusive, error
  std::string message;
  std::vector<std::string> rules;
  std::optional<CheckReport> report;

  Json to_json() const;
};

struct CorpusReport {
  std::vector<FileReport> files;

  /// 1 on any failure, else 2 on any per-file error, else 0.
  int exit_code() const;
  Json to_json() const;
};

FileReport check_file(const std::filesystem::path& program, const CompileOpts& base, const SampleConfig& cfg);
CorpusReport check_rule_corpus(const std::filesystem::path& dir, const CompileOpts& opts, const SampleConfig& cfg);

}  // namespace approx
