#include "padicfit/harness.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "padicfit/errors.hpp"
#include "padicfit/parallel.hpp"
#include "padicfit/wordcode.hpp"

namespace padicfit {

EvaluationRecord loocv(const LanguageCorpus& corpus, const AlgorithmSpec& spec,
                       unsigned threads) {
  const std::size_t n = corpus.pairs.size();
  if (n < 2) {
    throw CorpusTooSmallError(corpus.language_code + ": leave-one-out needs at least 2 pairs");
  }

  // Encode once; folds share the encoded points.
  std::vector<DataPoint> all;
  all.reserve(n);
  for (const NounPair& pair : corpus.pairs) {
    all.push_back(DataPoint{encode(pair.singular), encode(pair.plural), pair.singular,
                            pair.plural});
  }

  std::vector<unsigned char> fold_correct(n, 0);
  detail::parallel_for(n, threads, [&](std::size_t i) {
    std::vector<DataPoint> training;
    training.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) training.push_back(all[j]);
    }
    try {
      fold_correct[i] =
          predict_word(spec, training, corpus.pairs[i].singular) == corpus.pairs[i].plural;
    } catch (const FitFailedError&) {
    } catch (const PredictionNotAWordError&) {
    }
  });

  const std::size_t correct =
      static_cast<std::size_t>(std::accumulate(fold_correct.begin(), fold_correct.end(), 0UL));
  return EvaluationRecord{corpus.language_code, spec, n, correct,
                          make_rational(correct, n)};
}

SweepResult sweep(std::span<const LanguageCorpus> corpora,
                  std::span<const AlgorithmSpec> variants, unsigned threads) {
  SweepResult out;

  std::vector<const LanguageCorpus*> usable;
  usable.reserve(corpora.size());
  for (const LanguageCorpus& corpus : corpora) {
    if (corpus.pairs.size() < 2) {
      out.warnings.push_back("skipping " + corpus.language_code + ": only " +
                             std::to_string(corpus.pairs.size()) +
                             " pairs, leave-one-out needs at least 2");
    } else {
      usable.push_back(&corpus);
    }
  }

  const std::size_t cells = usable.size() * variants.size();
  std::vector<EvaluationRecord> records(cells);
  detail::parallel_for(cells, threads, [&](std::size_t idx) {
    const LanguageCorpus& corpus = *usable[idx / variants.size()];
    const AlgorithmSpec& spec = variants[idx % variants.size()];
    records[idx] = loocv(corpus, spec, 1);
  });

  std::sort(records.begin(), records.end(),
            [](const EvaluationRecord& a, const EvaluationRecord& b) {
              if (a.language_code != b.language_code) return a.language_code < b.language_code;
              return a.spec < b.spec;
            });
  out.records = std::move(records);
  return out;
}

EvaluationRecord best_k(std::span<const EvaluationRecord> records,
                        const std::string& language, Variant variant) {
  const EvaluationRecord* best = nullptr;
  for (const EvaluationRecord& r : records) {
    if (r.language_code != language || r.spec.variant != variant) continue;
    if (best == nullptr || r.accuracy > best->accuracy ||
        (r.accuracy == best->accuracy && r.spec.k.value_or(0) < best->spec.k.value_or(0))) {
      best = &r;
    }
  }
  if (best == nullptr) {
    throw NoRecordsError("no records for " + language + " / " +
                         std::string(variant_label(variant)));
  }
  return *best;
}

namespace detail {

std::map<std::pair<std::string, Variant>, const EvaluationRecord*> collapse_best(
    std::span<const EvaluationRecord> records) {
  std::map<std::pair<std::string, Variant>, const EvaluationRecord*> best;
  for (const EvaluationRecord& r : records) {
    auto [it, inserted] = best.try_emplace({r.language_code, r.spec.variant}, &r);
    if (inserted) continue;
    const EvaluationRecord* cur = it->second;
    if (r.accuracy > cur->accuracy ||
        (r.accuracy == cur->accuracy && r.spec.k.value_or(0) < cur->spec.k.value_or(0))) {
      it->second = &r;
    }
  }
  return best;
}

}  // namespace detail

std::vector<FamilySummary> family_summary(std::span<const EvaluationRecord> records,
                                          const FamilyCatalog& catalog) {
  const auto best = detail::collapse_best(records);

  std::set<std::string> all_languages;
  for (const EvaluationRecord& r : records) all_languages.insert(r.language_code);

  // Family rows in catalog order with the synthetic "All" family first
  // (map order: "All" sorts ahead of capitalised family names anyway, but be
  // explicit rather than rely on data not containing a smaller key).
  std::vector<std::pair<std::string, std::vector<std::string>>> groups;
  groups.emplace_back("All",
                      std::vector<std::string>(all_languages.begin(), all_languages.end()));
  for (const auto& [family, members] : catalog.families) {
    if (family == "All") continue;  // reserved synthetic name
    groups.emplace_back(family, members);
  }

  std::vector<FamilySummary> out;
  for (const auto& [family, members] : groups) {
    for (Variant v : {Variant::GlobalPadic, Variant::GlobalSiegel, Variant::LocalPadic,
                      Variant::LocalSiegel, Variant::HybridSiegel}) {
      Rational sum(0);
      std::size_t count = 0;
      for (const std::string& language : members) {
        const auto it = best.find({language, v});
        if (it == best.end()) continue;
        sum += it->second->accuracy;
        ++count;
      }
      if (count == 0) continue;
      out.push_back(FamilySummary{family, std::string(variant_label(v)),
                                  make_rational(sum.get_num(), sum.get_den() * count), count});
    }
  }
  return out;
}

std::vector<AlgorithmSpec> default_variants(const PadicPrime& p, unsigned k_min,
                                            unsigned k_max) {
  if (k_min < 1 || k_min > k_max) {
    throw DomainError("invalid neighbourhood range");
  }
  std::vector<AlgorithmSpec> out;
  out.push_back(AlgorithmSpec::global(Variant::GlobalPadic, p));
  out.push_back(AlgorithmSpec::global(Variant::GlobalSiegel, p));
  for (Variant v : {Variant::LocalPadic, Variant::LocalSiegel, Variant::HybridSiegel}) {
    for (unsigned k = k_min; k <= k_max; ++k) {
      out.push_back(AlgorithmSpec::local(v, k, p));
    }
  }
  return out;
}

}  // namespace padicfit
