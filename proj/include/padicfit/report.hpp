#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "padicfit/harness.hpp"
#include "padicfit/stats.hpp"

namespace padicfit {

// Machine-readable report formats. Every file is UTF-8 with LF endings and
// carries exact fractions next to any decimal rendering, so downstream
// statistics never have to re-round. Writers are deterministic: the same
// inputs produce byte-identical output.

// records.tsv: language_code, variant, k (empty for global), n, correct,
// accuracy (exact fraction), accuracy_decimal.
void write_records_tsv(std::ostream& out, std::span<const EvaluationRecord> records);
std::vector<EvaluationRecord> read_records_tsv(std::istream& in);

// summary.json: family x algorithm mean-accuracy rows plus per-algorithm
// accuracy distributions over languages (local/hybrid collapsed to best k).
void write_summary_json(std::ostream& out, std::span<const EvaluationRecord> records,
                        const FamilyCatalog& catalog);

// tests.tsv: family, comparison, n_languages, w_plus, p_raw, p_corrected.
void write_tests_tsv(std::ostream& out, std::span<const TestResult> results);

// Plan files: header "family\tvariant_a\tvariant_b\tcorrection\tm" with
// correction in {sidak, bonferroni}.
std::vector<PlanEntry> read_plan_tsv(std::istream& in);

}  // namespace padicfit
