#pragma once

#include <span>
#include <string>
#include <vector>

#include "padicfit/harness.hpp"

namespace padicfit {

enum class Correction { SidakStyle, Bonferroni };

std::string_view correction_label(Correction c);
Correction parse_correction(std::string_view label);  // DomainError on unknown

// Per-language accuracy differences (A - B) for one family comparison.
struct PairedComparison {
  std::string label_a;
  std::string label_b;
  std::vector<Rational> differences;
};

struct TestResult {
  std::string family;
  std::string label_a;
  std::string label_b;
  Rational w_plus;
  std::size_t n_nonzero = 0;
  std::size_t n_languages = 0;
  double p_raw = 1.0;
  double p_corrected = 1.0;
  Correction correction = Correction::SidakStyle;
  unsigned multiplicity = 1;
};

enum class WilcoxonMode { Auto, Exact, NormalApprox };

struct WilcoxonResult {
  Rational w_plus;
  std::size_t n_nonzero = 0;
  double p_value = 1.0;
};

/// One-sided Wilcoxon signed-rank test (alternative: differences tend
/// positive) with Pratt zero handling: |d_i| are midranked including zeros,
/// zeros are then dropped, W+ is the rank sum of the positive entries, and
/// p = P(W+ >= observed) under random signs. Exact for up to 20 nonzero
/// entries (full sign-assignment distribution), normal approximation with
/// tie and continuity corrections above. All-zero input gives p = 1.
/// Throws EmptyInputError on an empty list.
WilcoxonResult wilcoxon_pratt(std::span<const Rational> differences,
                              WilcoxonMode mode = WilcoxonMode::Auto);

double wilcoxon_pratt_one_sided(std::span<const Rational> differences,
                                WilcoxonMode mode = WilcoxonMode::Auto);

/// p -> 1 - (1-p)^m. Throws DomainError for p outside [0,1] or m < 1.
double sidak_style_correct(double p, unsigned m);

/// p -> min(1, m p). Throws DomainError for p outside [0,1] or m < 1.
double bonferroni_correct(double p, unsigned m);

struct PlanEntry {
  std::string family;  // "All" means every recorded language
  Variant a;
  Variant b;
  Correction correction;
  unsigned multiplicity;
};

/// Runs each planned comparison: per-language accuracies (best_k collapse
/// for local/hybrid variants) are differenced A - B over the family's
/// languages, tested one-sided, and corrected. Languages missing either
/// side are dropped with a warning; a comparison with no overlapping
/// languages throws NoOverlappingLanguagesError. Output follows plan order.
std::vector<TestResult> compare_families(std::span<const EvaluationRecord> records,
                                         const FamilyCatalog& catalog,
                                         std::span<const PlanEntry> plan,
                                         std::vector<std::string>* warnings = nullptr);

/// The standard battery: for every family (catalog families with records,
/// plus "All"), four p-adic-vs-Euclidean tests, all corrected with
/// 1-(1-p)^m at m = 4 x family count.
std::vector<PlanEntry> default_family_plan(std::span<const EvaluationRecord> records,
                                           const FamilyCatalog& catalog);

/// Global-vs-local follow-up: families are split by the observed direction
/// of mean(local p-adic) - mean(global p-adic); each side is tested
/// one-sided in its favoured direction with Bonferroni multiplicity equal
/// to its own group size.
std::vector<PlanEntry> global_vs_local_plan(std::span<const EvaluationRecord> records,
                                            const FamilyCatalog& catalog);

}  // namespace padicfit
