#include "padicfit/report.hpp"

#include <cstdio>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "padicfit/errors.hpp"

namespace padicfit {
namespace {

constexpr std::string_view kRecordsHeader =
    "language_code\tvariant\tk\tn\tcorrect\taccuracy\taccuracy_decimal";
constexpr std::string_view kTestsHeader =
    "family\tcomparison\tn_languages\tw_plus\tp_raw\tp_corrected";
constexpr std::string_view kPlanHeader = "family\tvariant_a\tvariant_b\tcorrection\tm";

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::string format_p(double p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", p);
  return buf;
}

unsigned long parse_count(const std::string& text, std::size_t line_no) {
  try {
    const BigInt v = parse_bigint(text);
    if (v < 0 || !v.fits_ulong_p()) {
      throw DomainError("out of range");
    }
    return v.get_ui();
  } catch (const DomainError&) {
    throw MalformedRowError(line_no, "invalid count: " + text);
  }
}

}  // namespace

void write_records_tsv(std::ostream& out, std::span<const EvaluationRecord> records) {
  out << kRecordsHeader << '\n';
  for (const EvaluationRecord& r : records) {
    out << r.language_code << '\t' << r.spec.label() << '\t';
    if (r.spec.k) out << *r.spec.k;
    out << '\t' << r.n << '\t' << r.correct << '\t' << r.accuracy.get_str() << '\t'
        << decimal_string(r.accuracy) << '\n';
  }
}

std::vector<EvaluationRecord> read_records_tsv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line) || line != kRecordsHeader) {
    throw MalformedRowError(1, "missing or invalid records header");
  }
  ++line_no;

  std::vector<EvaluationRecord> out;
  while (std::getline(in, line)) {
    ++line_no;
    const std::vector<std::string> fields = split_tabs(line);
    if (fields.size() != 7) {
      throw MalformedRowError(line_no, "expected 7 columns, got " +
                                           std::to_string(fields.size()));
    }
    EvaluationRecord r;
    r.language_code = fields[0];
    Variant variant;
    try {
      variant = parse_variant(fields[1]);
    } catch (const DomainError& e) {
      throw MalformedRowError(line_no, e.what());
    }
    if (fields[2].empty()) {
      r.spec = AlgorithmSpec::global(variant);
    } else {
      r.spec = AlgorithmSpec::local(variant,
                                    static_cast<unsigned>(parse_count(fields[2], line_no)));
    }
    r.n = parse_count(fields[3], line_no);
    r.correct = parse_count(fields[4], line_no);
    if (r.n == 0 || r.correct > r.n) {
      throw MalformedRowError(line_no, "correct/n out of range");
    }
    r.accuracy = make_rational(r.correct, r.n);
    try {
      if (parse_rational(fields[5]) != r.accuracy) {
        throw MalformedRowError(line_no, "accuracy column disagrees with correct/n");
      }
    } catch (const DomainError& e) {
      throw MalformedRowError(line_no, e.what());
    }
    out.push_back(std::move(r));
  }
  return out;
}

void write_summary_json(std::ostream& out, std::span<const EvaluationRecord> records,
                        const FamilyCatalog& catalog) {
  using json = nlohmann::ordered_json;

  json summary = json::array();
  for (const FamilySummary& row : family_summary(records, catalog)) {
    summary.push_back({{"family", row.family},
                       {"algorithm", row.algorithm},
                       {"mean_accuracy", row.mean_accuracy.get_str()},
                       {"mean_accuracy_decimal", row.mean_accuracy.get_d()},
                       {"language_count", row.language_count}});
  }

  const auto best = detail::collapse_best(records);
  json distributions = json::object();
  for (Variant v : {Variant::GlobalPadic, Variant::GlobalSiegel, Variant::LocalPadic,
                    Variant::LocalSiegel, Variant::HybridSiegel}) {
    json points = json::array();
    for (const auto& [key, record] : best) {
      if (key.second != v) continue;
      json point = {{"language_code", key.first},
                    {"accuracy", record->accuracy.get_str()},
                    {"accuracy_decimal", record->accuracy.get_d()}};
      if (record->spec.k) point["k"] = *record->spec.k;
      points.push_back(std::move(point));
    }
    if (!points.empty()) {
      distributions[std::string(variant_label(v))] = std::move(points);
    }
  }

  json doc = {{"family_summary", std::move(summary)},
              {"accuracy_distribution", std::move(distributions)}};
  out << doc.dump(2) << '\n';
}

void write_tests_tsv(std::ostream& out, std::span<const TestResult> results) {
  out << kTestsHeader << '\n';
  for (const TestResult& t : results) {
    out << t.family << '\t' << t.label_a << " vs " << t.label_b << '\t' << t.n_languages
        << '\t' << t.w_plus.get_str() << '\t' << format_p(t.p_raw) << '\t'
        << format_p(t.p_corrected) << '\n';
  }
}

std::vector<PlanEntry> read_plan_tsv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line) || line != kPlanHeader) {
    throw MalformedRowError(1, "missing or invalid plan header");
  }
  ++line_no;

  std::vector<PlanEntry> out;
  while (std::getline(in, line)) {
    ++line_no;
    const std::vector<std::string> fields = split_tabs(line);
    if (fields.size() != 5) {
      throw MalformedRowError(line_no, "expected 5 columns, got " +
                                           std::to_string(fields.size()));
    }
    if (fields[0].empty()) {
      throw EmptyFieldError(line_no, "empty family");
    }
    PlanEntry entry;
    entry.family = fields[0];
    try {
      entry.a = parse_variant(fields[1]);
      entry.b = parse_variant(fields[2]);
      entry.correction = parse_correction(fields[3]);
    } catch (const DomainError& e) {
      throw MalformedRowError(line_no, e.what());
    }
    const unsigned long m = parse_count(fields[4], line_no);
    if (m < 1) {
      throw MalformedRowError(line_no, "multiplicity must be at least 1");
    }
    entry.multiplicity = static_cast<unsigned>(m);
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace padicfit
