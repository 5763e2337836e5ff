#include "padicfit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>

#include "padicfit/errors.hpp"

namespace padicfit {
namespace {

double clamp01(double p) {
  return std::min(1.0, std::max(0.0, p));
}

void check_p(double p, unsigned m, const char* who) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError(std::string(who) + ": p-value outside [0, 1]");
  }
  if (m < 1) {
    throw DomainError(std::string(who) + ": multiplicity must be at least 1");
  }
}

// Exact tail P(W+ >= w2/2) of the null sign-assignment distribution over
// the given doubled ranks, by dynamic programming over the rank-sum
// distribution (equivalent to enumerating all 2^n sign patterns).
double exact_tail(const std::vector<long>& doubled_ranks, long w2) {
  long total = 0;
  for (long r : doubled_ranks) total += r;
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(total) + 1, 0);
  counts[0] = 1;
  for (long r : doubled_ranks) {
    for (long s = total; s >= r; --s) {
      counts[static_cast<std::size_t>(s)] += counts[static_cast<std::size_t>(s - r)];
    }
  }
  long double tail = 0;
  for (long s = std::max(w2, 0L); s <= total; ++s) {
    tail += counts[static_cast<std::size_t>(s)];
  }
  const long double denom = std::pow(2.0L, static_cast<int>(doubled_ranks.size()));
  return clamp01(static_cast<double>(tail / denom));
}

}  // namespace

std::string_view correction_label(Correction c) {
  switch (c) {
    case Correction::SidakStyle: return "sidak";
    case Correction::Bonferroni: return "bonferroni";
  }
  throw DomainError("unknown correction");
}

Correction parse_correction(std::string_view label) {
  std::string lower(label);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "sidak" || lower == "sidak_style" || lower == "sidak80") {
    return Correction::SidakStyle;
  }
  if (lower == "bonferroni") {
    return Correction::Bonferroni;
  }
  throw DomainError("unknown correction: " + std::string(label));
}

WilcoxonResult wilcoxon_pratt(std::span<const Rational> differences, WilcoxonMode mode) {
  if (differences.empty()) {
    throw EmptyInputError("wilcoxon: empty difference list");
  }

  // Rank all |d_i| ascending, zeros included (Pratt), with midranks for
  // ties. Doubled ranks keep everything integral: the midrank of a tie
  // group spanning 1-based positions [lo, hi] is (lo + hi)/2.
  struct Item {
    Rational magnitude;
    int sign;
  };
  std::vector<Item> items;
  items.reserve(differences.size());
  for (const Rational& d : differences) {
    items.push_back(Item{Rational(abs(d)), sgn(d)});
  }
  std::sort(items.begin(), items.end(),
            [](const Item& a, const Item& b) { return a.magnitude < b.magnitude; });

  const std::size_t total_n = items.size();
  std::size_t n_zero = 0;
  std::vector<long> nonzero_ranks2;      // doubled midranks of nonzero entries
  std::vector<long> positive_ranks2;
  std::vector<std::size_t> tie_sizes;    // nonzero tie groups, for the variance
  std::size_t i = 0;
  while (i < total_n) {
    std::size_t j = i;
    while (j < total_n && items[j].magnitude == items[i].magnitude) ++j;
    const long rank2 = static_cast<long>(i + 1 + j);  // (i+1) + j, doubled midrank
    if (items[i].sign == 0) {
      n_zero = j - i;
    } else {
      tie_sizes.push_back(j - i);
      for (std::size_t t = i; t < j; ++t) {
        nonzero_ranks2.push_back(rank2);
        if (items[t].sign > 0) positive_ranks2.push_back(rank2);
      }
    }
    i = j;
  }

  WilcoxonResult out;
  out.n_nonzero = nonzero_ranks2.size();
  long w2 = 0;
  for (long r : positive_ranks2) w2 += r;
  out.w_plus = make_rational(w2, 2);

  if (out.n_nonzero == 0) {
    out.p_value = 1.0;  // no evidence in either direction
    return out;
  }

  const bool exact = mode == WilcoxonMode::Exact ||
                     (mode == WilcoxonMode::Auto && out.n_nonzero <= 20);
  if (exact) {
    out.p_value = exact_tail(nonzero_ranks2, w2);
    return out;
  }

  // Normal approximation with Pratt zero adjustment, tie correction over
  // the nonzero groups, and a continuity correction of 1/2.
  const double N = static_cast<double>(total_n);
  const double z0 = static_cast<double>(n_zero);
  const double mean = (N * (N + 1) - z0 * (z0 + 1)) / 4.0;
  double var = (N * (N + 1) * (2 * N + 1) - z0 * (z0 + 1) * (2 * z0 + 1)) / 24.0;
  for (std::size_t t : tie_sizes) {
    const double td = static_cast<double>(t);
    var -= (td * td * td - td) / 48.0;
  }
  const double w = static_cast<double>(w2) / 2.0;
  const double z = (w - 0.5 - mean) / std::sqrt(var);
  out.p_value = clamp01(0.5 * std::erfc(z / std::sqrt(2.0)));
  return out;
}

double wilcoxon_pratt_one_sided(std::span<const Rational> differences, WilcoxonMode mode) {
  return wilcoxon_pratt(differences, mode).p_value;
}

double sidak_style_correct(double p, unsigned m) {
  check_p(p, m, "sidak_style_correct");
  return clamp01(-std::expm1(static_cast<double>(m) * std::log1p(-p)));
}

double bonferroni_correct(double p, unsigned m) {
  check_p(p, m, "bonferroni_correct");
  return std::min(1.0, static_cast<double>(m) * p);
}

namespace {

std::vector<std::string> family_members(const FamilyCatalog& catalog,
                                        std::span<const EvaluationRecord> records,
                                        const std::string& family) {
  if (family == "All") {
    std::set<std::string> all;
    for (const EvaluationRecord& r : records) all.insert(r.language_code);
    return {all.begin(), all.end()};
  }
  const auto it = catalog.families.find(family);
  if (it == catalog.families.end()) return {};
  return it->second;
}

}  // namespace

std::vector<TestResult> compare_families(std::span<const EvaluationRecord> records,
                                         const FamilyCatalog& catalog,
                                         std::span<const PlanEntry> plan,
                                         std::vector<std::string>* warnings) {
  const auto best = detail::collapse_best(records);
  std::vector<TestResult> out;
  out.reserve(plan.size());

  for (const PlanEntry& entry : plan) {
    PairedComparison cmp;
    cmp.label_a = std::string(variant_label(entry.a));
    cmp.label_b = std::string(variant_label(entry.b));
    for (const std::string& language : family_members(catalog, records, entry.family)) {
      const auto ita = best.find({language, entry.a});
      const auto itb = best.find({language, entry.b});
      if (ita == best.end() || itb == best.end()) {
        // A language with no records at all was simply not evaluated; only
        // one-sided gaps are worth flagging.
        if (warnings != nullptr && (ita == best.end()) != (itb == best.end())) {
          warnings->push_back(entry.family + "/" + language + ": missing " +
                              (ita == best.end() ? cmp.label_a : cmp.label_b) +
                              " record, language dropped");
        }
        continue;
      }
      cmp.differences.push_back(Rational(ita->second->accuracy - itb->second->accuracy));
    }
    if (cmp.differences.empty()) {
      throw NoOverlappingLanguagesError(entry.family + ": no language has records for both " +
                                        cmp.label_a + " and " + cmp.label_b);
    }

    const WilcoxonResult w = wilcoxon_pratt(cmp.differences);
    TestResult result;
    result.family = entry.family;
    result.label_a = cmp.label_a;
    result.label_b = cmp.label_b;
    result.w_plus = w.w_plus;
    result.n_nonzero = w.n_nonzero;
    result.n_languages = cmp.differences.size();
    result.p_raw = w.p_value;
    result.correction = entry.correction;
    result.multiplicity = entry.multiplicity;
    result.p_corrected = entry.correction == Correction::SidakStyle
                             ? sidak_style_correct(w.p_value, entry.multiplicity)
                             : bonferroni_correct(w.p_value, entry.multiplicity);
    out.push_back(std::move(result));
  }
  return out;
}

namespace {

std::vector<std::string> plan_families(std::span<const EvaluationRecord> records,
                                       const FamilyCatalog& catalog) {
  std::set<std::string> recorded;
  for (const EvaluationRecord& r : records) recorded.insert(r.language_code);

  std::vector<std::string> families{"All"};
  for (const auto& [family, members] : catalog.families) {
    if (family == "All") continue;
    const bool has_records = std::any_of(members.begin(), members.end(),
                                         [&](const std::string& language) {
                                           return recorded.count(language) > 0;
                                         });
    if (has_records) families.push_back(family);
  }
  return families;
}

}  // namespace

std::vector<PlanEntry> default_family_plan(std::span<const EvaluationRecord> records,
                                           const FamilyCatalog& catalog) {
  const std::vector<std::string> families = plan_families(records, catalog);
  const unsigned m = static_cast<unsigned>(4 * families.size());
  std::vector<PlanEntry> plan;
  plan.reserve(families.size() * 4);
  for (const std::string& family : families) {
    plan.push_back({family, Variant::GlobalPadic, Variant::GlobalSiegel,
                    Correction::SidakStyle, m});
    plan.push_back({family, Variant::LocalPadic, Variant::LocalSiegel,
                    Correction::SidakStyle, m});
    plan.push_back({family, Variant::LocalPadic, Variant::HybridSiegel,
                    Correction::SidakStyle, m});
    plan.push_back({family, Variant::LocalSiegel, Variant::HybridSiegel,
                    Correction::SidakStyle, m});
  }
  return plan;
}

std::vector<PlanEntry> global_vs_local_plan(std::span<const EvaluationRecord> records,
                                            const FamilyCatalog& catalog) {
  const auto best = detail::collapse_best(records);
  std::vector<std::string> local_better;
  std::vector<std::string> global_better;

  for (const std::string& family : plan_families(records, catalog)) {
    Rational local_sum(0);
    Rational global_sum(0);
    std::size_t count = 0;
    for (const std::string& language : family_members(catalog, records, family)) {
      const auto itl = best.find({language, Variant::LocalPadic});
      const auto itg = best.find({language, Variant::GlobalPadic});
      if (itl == best.end() || itg == best.end()) continue;
      local_sum += itl->second->accuracy;
      global_sum += itg->second->accuracy;
      ++count;
    }
    if (count == 0) continue;
    (local_sum > global_sum ? local_better : global_better).push_back(family);
  }

  std::vector<PlanEntry> plan;
  for (const std::string& family : local_better) {
    plan.push_back({family, Variant::LocalPadic, Variant::GlobalPadic,
                    Correction::Bonferroni, static_cast<unsigned>(local_better.size())});
  }
  for (const std::string& family : global_better) {
    plan.push_back({family, Variant::GlobalPadic, Variant::LocalPadic,
                    Correction::Bonferroni, static_cast<unsigned>(global_better.size())});
  }
  return plan;
}

}  // namespace padicfit
