// Command-line driver: encode/decode words, fit a points file, run the
// leave-one-out evaluation sweep, and run the statistical comparisons.
// Exit codes: 0 success, 1 input/IO error, 2 domain error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "padicfit/corpus.hpp"
#include "padicfit/errors.hpp"
#include "padicfit/harness.hpp"
#include "padicfit/report.hpp"
#include "padicfit/stats.hpp"
#include "padicfit/wordcode.hpp"

namespace {

using namespace padicfit;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitDomain = 2;

struct RunConfig {
  std::string input_path;
  std::string output_dir;
  unsigned long prime = 2;
  std::vector<std::string> variants;  // empty = all five
  unsigned k_min = AlgorithmSpec::kDefaultMinK;
  unsigned k_max = AlgorithmSpec::kDefaultMaxK;
  bool unsafe_k = false;  // lifts the 3..20 bound
  unsigned parallelism = 0;  // 0 = hardware concurrency
  unsigned long seed = 0;  // reserved; every algorithm is deterministic
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::ios_base::failure("cannot open " + path);
  }
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::ios_base::failure("cannot open " + path + " for writing");
  }
  return out;
}

unsigned effective_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw != 0 ? hw : 1;
}

std::vector<DataPoint> load_points(const std::string& path) {
  std::ifstream in = open_input(path);
  std::vector<DataPoint> points;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw MalformedRowError(line_no, "expected two tab-separated decimal columns");
    }
    try {
      points.push_back(DataPoint{parse_bigint(line.substr(0, tab)),
                                 parse_bigint(line.substr(tab + 1)), "", ""});
    } catch (const DomainError& e) {
      throw MalformedRowError(line_no, e.what());
    }
  }
  return points;
}

std::vector<AlgorithmSpec> build_variants(const RunConfig& config, const PadicPrime& p) {
  if (!config.unsafe_k &&
      (config.k_min < AlgorithmSpec::kDefaultMinK || config.k_max > AlgorithmSpec::kDefaultMaxK)) {
    throw DomainError("neighbourhood range must stay within 3..20 (pass --unsafe-k to override)");
  }
  if (config.k_min > config.k_max) {
    throw DomainError("k-min exceeds k-max");
  }
  if (config.variants.empty()) {
    return default_variants(p, config.k_min, config.k_max);
  }
  std::vector<AlgorithmSpec> specs;
  for (const std::string& label : config.variants) {
    const Variant v = parse_variant(label);
    if (v == Variant::GlobalPadic || v == Variant::GlobalSiegel) {
      specs.push_back(AlgorithmSpec::global(v, p));
    } else {
      for (unsigned k = config.k_min; k <= config.k_max; ++k) {
        specs.push_back(AlgorithmSpec::local(v, k, p));
      }
    }
  }
  return specs;
}

int cmd_encode(const std::string& word) {
  std::cout << encode(word).get_str() << '\n';
  return kExitOk;
}

int cmd_decode(const std::string& text) {
  BigInt value;
  try {
    value = parse_bigint(text);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  std::cout << decode(value) << '\n';
  return kExitOk;
}

int cmd_fit(const std::string& path, const std::string& metric, unsigned long prime) {
  const PadicPrime p(prime);
  const std::vector<DataPoint> points = load_points(path);
  if (metric == "padic") {
    const FitResult fit = fit_padic(points, p);
    std::cout << "m: " << fit.line.m.get_str() << '\n'
              << "b: " << fit.line.b.get_str() << '\n'
              << "residual_sum: " << fit.residual_sum.get_str() << '\n'
              << "support: " << fit.support.first << ' ' << fit.support.second << '\n'
              << "tie_count: " << fit.tie_count << '\n';
  } else {
    const Line line = fit_siegel(points);
    // No support pair or tie count exists for the repeated-median line; the
    // p-adic residual sum of the fitted line is reported for comparison.
    std::cout << "m: " << line.m.get_str() << '\n'
              << "b: " << line.b.get_str() << '\n'
              << "residual_sum: " << residual_sum_padic(points, line, p).get_str() << '\n';
  }
  return kExitOk;
}

int cmd_evaluate(const RunConfig& config) {
  const PadicPrime p(config.prime);
  const std::vector<AlgorithmSpec> variants = build_variants(config, p);

  std::ifstream in = open_input(config.input_path);
  const CorpusSet corpus_set = load_corpus(in);
  for (const LanguageCorpus& corpus : corpus_set.languages) {
    for (const CorpusWarning& w : validate_corpus(corpus)) {
      std::cerr << "warning: " << w.detail << '\n';
    }
  }

  const SweepResult result =
      sweep(corpus_set.languages, variants, effective_threads(config.parallelism));
  for (const std::string& w : result.warnings) {
    std::cerr << "warning: " << w << '\n';
  }

  std::filesystem::create_directories(config.output_dir);
  const std::filesystem::path dir(config.output_dir);
  {
    std::ofstream records = open_output((dir / "records.tsv").string());
    write_records_tsv(records, result.records);
  }
  {
    std::ofstream summary = open_output((dir / "summary.json").string());
    write_summary_json(summary, result.records, corpus_set.catalog);
  }
  std::cout << "evaluated " << corpus_set.languages.size() - result.warnings.size()
            << " languages x " << variants.size() << " configurations -> "
            << result.records.size() << " records\n";
  return kExitOk;
}

int cmd_compare(const std::string& records_path, const std::string& corpus_path,
                const std::string& plan_path, bool global_vs_local,
                const std::string& output_path) {
  std::ifstream records_in = open_input(records_path);
  const std::vector<EvaluationRecord> records = read_records_tsv(records_in);

  std::ifstream corpus_in = open_input(corpus_path);
  const CorpusSet corpus_set = load_corpus(corpus_in);

  std::vector<PlanEntry> plan;
  if (!plan_path.empty()) {
    std::ifstream plan_in = open_input(plan_path);
    plan = read_plan_tsv(plan_in);
  } else {
    plan = default_family_plan(records, corpus_set.catalog);
  }
  if (global_vs_local) {
    const std::vector<PlanEntry> extra = global_vs_local_plan(records, corpus_set.catalog);
    plan.insert(plan.end(), extra.begin(), extra.end());
  }

  std::vector<std::string> warnings;
  const std::vector<TestResult> results =
      compare_families(records, corpus_set.catalog, plan, &warnings);
  for (const std::string& w : warnings) {
    std::cerr << "warning: " << w << '\n';
  }

  std::ofstream out = open_output(output_path);
  write_tests_tsv(out, results);
  std::cout << "wrote " << results.size() << " test rows to " << output_path << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact p-adic linear regression over packed word encodings"};
  app.require_subcommand(1);

  std::string word;
  auto* encode_cmd = app.add_subcommand("encode", "Print the packed encoding of a word");
  encode_cmd->add_option("word", word, "UTF-8 word (may be empty)");

  std::string number;
  auto* decode_cmd = app.add_subcommand("decode", "Print the word for a packed encoding");
  decode_cmd->add_option("value", number, "non-negative decimal integer")->required();

  std::string fit_path;
  std::string metric = "padic";
  unsigned long fit_prime = 2;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a line to a two-column TSV of integers");
  fit_cmd->add_option("file", fit_path, "points file: x<TAB>y per row")->required();
  fit_cmd->add_option("--metric", metric, "padic (default) or siegel")
      ->check(CLI::IsMember({"padic", "siegel"}));
  fit_cmd->add_option("--p", fit_prime, "prime base of the metric (default 2)");

  RunConfig config;
  auto* eval_cmd = app.add_subcommand("evaluate", "Leave-one-out sweep over a corpus");
  eval_cmd->add_option("--input", config.input_path, "corpus TSV")->required();
  eval_cmd->add_option("--output-dir", config.output_dir,
                       "directory for records.tsv and summary.json")->required();
  eval_cmd->add_option("--p", config.prime, "prime base (default 2)");
  eval_cmd->add_option("--variants", config.variants,
                       "subset of GLOBAL_PADIC GLOBAL_SIEGEL LOCAL_PADIC LOCAL_SIEGEL "
                       "HYBRID_SIEGEL (default: all)");
  eval_cmd->add_option("--k-min", config.k_min, "smallest neighbourhood (default 3)");
  eval_cmd->add_option("--k-max", config.k_max, "largest neighbourhood (default 20)");
  eval_cmd->add_flag("--unsafe-k", config.unsafe_k, "allow k outside 3..20");
  eval_cmd->add_option("--parallelism", config.parallelism,
                       "worker threads (default: hardware concurrency)");
  eval_cmd->add_option("--seed", config.seed,
                       "reserved; all algorithms are deterministic");

  std::string records_path, corpus_path, plan_path;
  std::string tests_path = "tests.tsv";
  bool global_vs_local = false;
  auto* compare_cmd = app.add_subcommand("compare", "Wilcoxon comparisons over records");
  compare_cmd->add_option("--records", records_path, "records.tsv from evaluate")->required();
  compare_cmd->add_option("--corpus", corpus_path,
                          "corpus TSV (provides the family catalog)")->required();
  compare_cmd->add_option("--plan", plan_path,
                          "plan TSV; default: four tests per family, sidak-corrected");
  compare_cmd->add_flag("--global-vs-local", global_vs_local,
                        "append the global-vs-local p-adic comparison");
  compare_cmd->add_option("--output", tests_path, "output path (default tests.tsv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (encode_cmd->parsed()) return cmd_encode(word);
    if (decode_cmd->parsed()) return cmd_decode(number);
    if (fit_cmd->parsed()) return cmd_fit(fit_path, metric, fit_prime);
    if (eval_cmd->parsed()) return cmd_evaluate(config);
    return cmd_compare(records_path, corpus_path, plan_path, global_vs_local, tests_path);
  } catch (const MalformedRowError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const EmptyFieldError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const EncodingError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
}
