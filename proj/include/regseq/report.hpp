// report.hpp: versioned JSON documents for run and search results.

#pragma once

#include <optional>
#include <string>

#include "regseq/machine.hpp"
#include "regseq/search.hpp"

namespace regseq::report {

inline constexpr int kSchemaVersion = 1;

/// Top-level key holding the fields that legitimately differ between
/// otherwise identical runs (timing, worker count, step totals).
inline constexpr const char* kRunInfoKey = "run_info";

struct RunReport {
  std::string program;
  std::string inputs;  // '0'/'1', leftmost is in:1
  Outcome outcome;
  std::optional<Trace> trace;
};

std::string to_json(const RunReport& r, int indent = 2);
RunReport run_report_from_json(const std::string& text);

struct SearchReportFile {
  MinimalityProfile profile;
  std::string started_at;   // ISO 8601 UTC
  std::string finished_at;
};

std::string to_json(const SearchReportFile& r, int indent = 2);
SearchReportFile search_report_from_json(const std::string& text);

/// Drops the run_info section and re-serialises; equal output means the two
/// reports agree on everything but timing and scheduling.
std::string strip_run_info(const std::string& json_text);

/// One-line summary: "minimal_length=<L> witness=<text>" or "minimal_length=none max_len=<L>".
std::string summary_line(const MinimalityProfile& p);

/// Combined verdict of two minimality profiles for the same target: one
/// searched without auxiliary registers, one with at least one.
struct Separation {
  bool certified = false;
  std::string statement;
};

/// Certified when `without_aux` shows no program at every length 1..budget and
/// `with_aux` carries a re-verified witness of length <= budget.
Separation separation(const MinimalityProfile& without_aux, const MinimalityProfile& with_aux,
                      std::size_t budget);

/// Current UTC time, second precision.
std::string utc_now();

}  // namespace regseq::report
