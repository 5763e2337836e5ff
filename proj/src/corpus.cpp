#include "padicfit/corpus.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>

#include "padicfit/errors.hpp"
#include "padicfit/wordcode.hpp"

namespace padicfit {
namespace {

constexpr std::string_view kHeader = "language_code\tfamily\tsingular\tplural";

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

void check_field(const std::string& field, std::size_t line_no) {
  if (field.empty()) {
    throw EmptyFieldError(line_no, "empty field");
  }
  if (field.find('\0') != std::string::npos) {
    throw MalformedRowError(line_no, "field contains U+0000");
  }
  if (field.find('\r') != std::string::npos) {
    throw MalformedRowError(line_no, "field contains a carriage return (use LF line endings)");
  }
  try {
    utf8_to_codepoints(field);
  } catch (const EncodingError& e) {
    throw EncodingError("line " + std::to_string(line_no) + ": " + e.what());
  }
}

}  // namespace

CorpusSet load_corpus(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) {
    throw MalformedRowError(1, "missing header row");
  }
  ++line_no;
  if (line != kHeader) {
    throw MalformedRowError(1, "header must be exactly \"language_code<TAB>family<TAB>singular<TAB>plural\"");
  }

  // Grouping state; languages keep their first-seen order internally and are
  // sorted at the end, pairs keep first-occurrence order.
  std::map<std::string, LanguageCorpus> by_language;
  std::map<std::string, std::set<std::pair<std::string, std::string>>> seen_pairs;
  std::map<std::string, std::set<std::string>> catalog;

  while (std::getline(in, line)) {
    ++line_no;
    const std::vector<std::string> fields = split_tabs(line);
    if (fields.size() != 4) {
      throw MalformedRowError(line_no, "expected 4 tab-separated columns, got " +
                                           std::to_string(fields.size()));
    }
    for (const std::string& f : fields) check_field(f, line_no);
    const std::string& language = fields[0];
    const std::string& family = fields[1];

    auto [it, inserted] = by_language.try_emplace(language);
    if (inserted) {
      it->second.language_code = language;
      it->second.family = family;
    }
    catalog[family].insert(language);
    if (seen_pairs[language].emplace(fields[2], fields[3]).second) {
      it->second.pairs.push_back(NounPair{fields[2], fields[3]});
    }
  }

  CorpusSet out;
  out.languages.reserve(by_language.size());
  for (auto& [code, corpus] : by_language) {
    out.languages.push_back(std::move(corpus));
  }
  for (auto& [family, members] : catalog) {
    out.catalog.families.emplace(family,
                                 std::vector<std::string>(members.begin(), members.end()));
  }
  return out;
}

void save_corpus(std::ostream& out, std::span<const LanguageCorpus> corpora) {
  out << kHeader << '\n';
  for (const LanguageCorpus& corpus : corpora) {
    for (const NounPair& pair : corpus.pairs) {
      out << corpus.language_code << '\t' << corpus.family << '\t' << pair.singular << '\t'
          << pair.plural << '\n';
    }
  }
}

std::vector<CorpusWarning> validate_corpus(const LanguageCorpus& corpus) {
  std::vector<CorpusWarning> warnings;
  std::map<std::string, std::set<std::string>> plurals_of;
  for (const NounPair& pair : corpus.pairs) {
    if (pair.singular == pair.plural) {
      warnings.push_back({WarningKind::IdenticalForms,
                          corpus.language_code + ": \"" + pair.singular +
                              "\" has identical singular and plural"});
    }
    plurals_of[pair.singular].insert(pair.plural);
  }
  for (const auto& [singular, plurals] : plurals_of) {
    if (plurals.size() > 1) {
      warnings.push_back({WarningKind::DuplicateSingular,
                          corpus.language_code + ": \"" + singular + "\" maps to " +
                              std::to_string(plurals.size()) + " distinct plurals"});
    }
  }
  if (corpus.pairs.size() < 3) {
    warnings.push_back({WarningKind::TooSmallForLocal,
                        corpus.language_code + ": only " +
                            std::to_string(corpus.pairs.size()) +
                            " pairs (local variants need k >= 3)"});
  }
  return warnings;
}

}  // namespace padicfit
