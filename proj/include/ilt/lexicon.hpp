#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ilt/signs.hpp"

namespace ilt::lex {

enum class ErrorCode {
  BadSyntax,
  UnknownKey,
  MissingLanguages,
  BadLanguage,
  DuplicateEntry,
  EmptyForms,
  UnknownRelation,
  UnknownRole,
  DanglingPform,
  DanglingLink,
  UnknownLemma,
  UnsupportedIdiom,
  SemMismatch,
  BadStage,
  UnknownRule,
  NoTranslation,
  IoError,
};

const char* error_code_name(ErrorCode code);

class LexiconError : public std::runtime_error {
public:
  LexiconError(ErrorCode code, const std::string& detail, int line = 0);
  ErrorCode code() const { return code_; }
  int line() const { return line_; }

private:
  ErrorCode code_;
  int line_;
};

struct FormSpec {
  std::string surface;
  std::optional<signs::VForm> vform;
};

enum class EntryClass { Verb, Copula, Noun, Pron, Det, Prep, Adv };

/** One lexical entry: a lemma of one language with one frame. */
struct LexicalEntry {
  std::string lemma;
  signs::Lang lang = signs::Lang::Lt;
  EntryClass cls = EntryClass::Verb;
  bool proper = false;
  bool pred = false;
  std::optional<bool> human;
  std::string sem_name;
  std::vector<signs::SpecDesc> comps;
  std::string prd;
  std::string mod_cat;
  std::vector<FormSpec> forms;
  bool derived = false;
  std::string derived_from;
  int index = 0;
};

enum class Stage { Transfer, Distinct, Variable };

const char* stage_name(Stage stage);
std::optional<Stage> stage_from_name(std::string_view name);

/**
 * A pairing of one target-language and one first-language entry whose
 * semantics are identified. pair is a single structure [L1: ..., LT: ...]
 * whose two SEM paths share one node.
 */
struct BilingualEntry {
  std::string il_lemma;
  int lt_entry = -1;
  int l1_entry = -1;
  Stage stage = Stage::Distinct;
  avm::FeatureStructure pair;
};

enum class RepairKind { L1FrameSubstitution, IdiomTransfer };

const char* repair_kind_name(RepairKind kind);

/** What a repair edge means, fixed at mal-lexicon build time. */
struct RepairTemplate {
  RepairKind kind = RepairKind::L1FrameSubstitution;
  std::string il_lemma;
  std::string l1_lemma;
  std::string l1_frame;
  std::string mal_frame;
};

/** One precompiled transferred frame of the anticipatory mal-lexicon. */
struct MalEntry {
  std::string lemma;
  signs::Sign sign;
  RepairTemplate tmpl;
  std::vector<signs::SpecDesc> subcat;
  int bilingual = -1;
};

struct RelationInfo {
  std::vector<std::string> roles;
  bool scopal = false;
};

/** One lexical-rule directive as written, kept for print(). */
struct RuleDecl {
  std::string id;
  signs::Lang lang = signs::Lang::L1;
};

class Lexicon {
public:
  static Lexicon load_file(const std::string& path);
  static Lexicon load_string(std::string_view text, const std::string& name = "<input>");

  /**
   * The lexicon back in its file format. Loading the printed text yields
   * an equivalent lexicon, and printing that is byte-identical.
   */
  std::string print() const;

  const std::string& lt_language() const { return lt_language_; }
  const std::string& l1_language() const { return l1_language_; }

  const std::vector<LexicalEntry>& entries() const { return entries_; }
  const LexicalEntry* entry(std::string_view lemma, signs::Lang lang) const;
  /** Declared frame plus any rule-derived frames of the same lemma. */
  std::vector<const LexicalEntry*> frames_of(std::string_view lemma, signs::Lang lang) const;

  struct Hit {
    const LexicalEntry* entry;
    const FormSpec* form;
  };
  /** Entries of one language whose form set contains the token. */
  std::vector<Hit> lookup(std::string_view token, signs::Lang lang) const;

  const std::vector<RuleDecl>& rules() const { return rule_decls_; }

  const std::vector<BilingualEntry>& bilinguals() const { return bilinguals_; }
  const BilingualEntry* bilingual(std::string_view il_lemma) const;
  /** Bilingual entry owning this Lt entry, if any. */
  const BilingualEntry* bilingual_of(const LexicalEntry* lt_entry) const;

  const RelationInfo* relation(std::string_view name) const;
  std::optional<std::string> translate_pform(const std::string& l1_pform) const;
  std::optional<std::string> translate_lex(const std::string& l1_lex) const;
  int link_count() const { return link_count_; }

  /** Maps an L1 slot onto the target language through the form links. */
  signs::SpecDesc translate_spec(const signs::SpecDesc& spec) const;

  /** Full slot list of an entry, with the subject or specifier slot last. */
  std::vector<signs::SpecDesc> full_subcat(const LexicalEntry& entry) const;

  /** Instantiates the sign of one entry; null form means lemma-as-phon. */
  signs::Sign build(const LexicalEntry& entry, const FormSpec* form) const;

  /**
   * Signs the learner grammar assigns to a bilingual item: the transferred
   * frame at Transfer, the target frame at Distinct, both at Variable.
   */
  std::vector<signs::Sign> project_il_signs(const BilingualEntry& b,
                                            std::optional<Stage> stage_override = {}) const;

  const std::vector<MalEntry>& mal_lexicon() const { return mal_entries_; }

  struct MalHit {
    signs::Sign sign;
    const MalEntry* entry;
  };
  /** Transferred-frame signs for a surface token of the target language. */
  std::vector<MalHit> mal_signs_for(std::string_view token) const;

  /** Ordinary target-language signs for a token. */
  std::vector<std::pair<signs::Sign, Hit>> signs_for(std::string_view token) const;

  /** Learner-grammar signs for a token at a given acquisition stage. */
  std::vector<std::pair<signs::Sign, Hit>> il_signs_for(std::string_view token, Stage stage) const;

  const std::vector<std::string>& warnings() const { return warnings_; }

private:
  friend std::vector<LexicalEntry> apply_lexical_rule(std::string_view rule_id,
                                                      const LexicalEntry& entry,
                                                      const Lexicon& lexicon);
  friend class Loader;

  signs::SignDesc sign_desc(const LexicalEntry& entry, const FormSpec* form,
                            const std::vector<signs::SpecDesc>* comps_override) const;
  signs::Sign build_with_comps(const LexicalEntry& entry, const FormSpec* form,
                               const std::vector<signs::SpecDesc>& comps) const;

  std::string lt_language_;
  std::string l1_language_;
  std::vector<LexicalEntry> entries_;
  std::vector<RuleDecl> rule_decls_;
  std::vector<BilingualEntry> bilinguals_;
  std::vector<MalEntry> mal_entries_;
  std::map<std::string, RelationInfo> relations_;
  std::map<std::string, std::string> prep_links_;
  std::map<std::string, std::string> noun_links_;
  int link_count_ = 0;
  std::vector<std::string> warnings_;
  // (lang, surface) -> [(entry index, form index)]
  std::map<std::pair<int, std::string>, std::vector<std::pair<int, int>>> form_index_;
  std::map<std::pair<int, std::string>, std::vector<std::pair<int, int>>> folded_index_;
  std::multimap<std::string, int> mal_by_lemma_;
  std::map<int, int> bilingual_by_lt_entry_;
};

/**
 * Derives frame variants an L1 lexical rule licenses. The rule id names a
 * fixed rule; unknown ids are an error. Returns no entries when the rule
 * does not apply.
 */
std::vector<LexicalEntry> apply_lexical_rule(std::string_view rule_id, const LexicalEntry& entry,
                                             const Lexicon& lexicon);

}  // namespace ilt::lex
