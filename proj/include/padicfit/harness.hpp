#pragma once

#include <span>
#include <string>
#include <vector>

#include "padicfit/corpus.hpp"
#include "padicfit/regress.hpp"

namespace padicfit {

// Outcome of one leave-one-out run: accuracy is the exact fraction
// correct/n (L0 exact-match scoring; a failed prediction scores 0).
struct EvaluationRecord {
  std::string language_code;
  AlgorithmSpec spec;
  std::size_t n = 0;
  std::size_t correct = 0;
  Rational accuracy;
};

struct FamilySummary {
  std::string family;
  std::string algorithm;  // variant label, k collapsed away
  Rational mean_accuracy;
  std::size_t language_count = 0;
};

/// Leave-one-out cross validation of one configuration on one language.
/// Folds may run in parallel; the result is identical for any thread count.
/// Throws CorpusTooSmallError for corpora with fewer than 2 pairs.
EvaluationRecord loocv(const LanguageCorpus& corpus, const AlgorithmSpec& spec,
                       unsigned threads = 1);

struct SweepResult {
  std::vector<EvaluationRecord> records;  // sorted by (language_code, variant, k)
  std::vector<std::string> warnings;      // corpora skipped as too small
};

/// Every corpus crossed with every configuration. Cells run on the worker
/// pool; output order and content are schedule-independent.
SweepResult sweep(std::span<const LanguageCorpus> corpora,
                  std::span<const AlgorithmSpec> variants, unsigned threads = 1);

/// The record with maximal accuracy for (language, variant), ties broken by
/// smallest k. Throws NoRecordsError when nothing matches.
EvaluationRecord best_k(std::span<const EvaluationRecord> records,
                        const std::string& language, Variant variant);

/// Unweighted mean of per-language accuracies for each (family, algorithm)
/// cell, local/hybrid variants collapsed through best_k. Includes the
/// synthetic family "All" covering every recorded language.
std::vector<FamilySummary> family_summary(std::span<const EvaluationRecord> records,
                                          const FamilyCatalog& catalog);

/// All five variants, local/hybrid ones expanded over k in [k_min, k_max].
std::vector<AlgorithmSpec> default_variants(const PadicPrime& p,
                                            unsigned k_min = AlgorithmSpec::kDefaultMinK,
                                            unsigned k_max = AlgorithmSpec::kDefaultMaxK);

namespace detail {
/// language -> per-variant best record index (best_k collapse), shared by
/// summaries and the statistics pipeline.
std::map<std::pair<std::string, Variant>, const EvaluationRecord*> collapse_best(
    std::span<const EvaluationRecord> records);
}  // namespace detail

}  // namespace padicfit
