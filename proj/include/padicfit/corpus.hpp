#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace padicfit {

struct NounPair {
  std::string singular;
  std::string plural;

  friend bool operator==(const NounPair&, const NounPair&) = default;
};

struct LanguageCorpus {
  std::string language_code;
  std::string family;  // first family seen for this language; may be
                       // "Unclassified" or "Unrecorded"
  std::vector<NounPair> pairs;

  friend bool operator==(const LanguageCorpus&, const LanguageCorpus&) = default;
};

// family -> sorted unique member language codes. A language may appear
// under several families; the synthetic family "All" is never stored here,
// consumers materialise it from the records they aggregate.
struct FamilyCatalog {
  std::map<std::string, std::vector<std::string>> families;

  friend bool operator==(const FamilyCatalog&, const FamilyCatalog&) = default;
};

struct CorpusSet {
  std::vector<LanguageCorpus> languages;  // sorted by language_code
  FamilyCatalog catalog;
};

// Corpus file format: UTF-8, LF line endings, tab-separated, literal header
//   language_code\tfamily\tsingular\tplural
// Rows are grouped by language_code, exact duplicate (singular, plural)
// pairs are dropped (first occurrence kept). Noisy rows are retained; only
// structural problems are errors.
CorpusSet load_corpus(std::istream& in);

void save_corpus(std::ostream& out, std::span<const LanguageCorpus> corpora);

enum class WarningKind {
  IdenticalForms,     // singular = plural (legal, e.g. invariant nouns)
  DuplicateSingular,  // one singular mapped to several plurals
  TooSmallForLocal,   // fewer than 3 pairs
};

struct CorpusWarning {
  WarningKind kind;
  std::string detail;
};

/// Advisory checks only; a corpus is never rejected for content.
std::vector<CorpusWarning> validate_corpus(const LanguageCorpus& corpus);

}  // namespace padicfit
