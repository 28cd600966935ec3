#include "ilt/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace ilt::lex {

using signs::Cat;
using signs::Lang;
using signs::SemDesc;
using signs::SignDesc;
using signs::SpecCat;
using signs::SpecDesc;
using signs::VForm;

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadSyntax: return "BAD_SYNTAX";
    case ErrorCode::UnknownKey: return "UNKNOWN_KEY";
    case ErrorCode::MissingLanguages: return "MISSING_LANGUAGES";
    case ErrorCode::BadLanguage: return "BAD_LANGUAGE";
    case ErrorCode::DuplicateEntry: return "DUPLICATE_ENTRY";
    case ErrorCode::EmptyForms: return "EMPTY_FORMS";
    case ErrorCode::UnknownRelation: return "UNKNOWN_RELATION";
    case ErrorCode::UnknownRole: return "UNKNOWN_ROLE";
    case ErrorCode::DanglingPform: return "DANGLING_PFORM";
    case ErrorCode::DanglingLink: return "DANGLING_LINK";
    case ErrorCode::UnknownLemma: return "UNKNOWN_LEMMA";
    case ErrorCode::UnsupportedIdiom: return "UNSUPPORTED_IDIOM";
    case ErrorCode::SemMismatch: return "SEM_MISMATCH";
    case ErrorCode::BadStage: return "BAD_STAGE";
    case ErrorCode::UnknownRule: return "UNKNOWN_RULE";
    case ErrorCode::NoTranslation: return "NO_TRANSLATION";
    case ErrorCode::IoError: return "IO_ERROR";
  }
  return "UNKNOWN";
}

namespace {

std::string format_error(ErrorCode code, const std::string& detail, int line) {
  std::ostringstream out;
  out << error_code_name(code) << ": " << detail;
  if (line > 0) out << " (line " << line << ")";
  return out.str();
}

std::string ascii_lower(std::string_view s) {
  std::string out;
  for (char c : s) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

/** Splits on whitespace, except inside parentheses. */
std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  int depth = 0;
  for (char c : line) {
    if (c == '(') depth++;
    if (c == ')') depth--;
    if (depth == 0 && std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) fields.push_back(cur);
  return fields;
}

}  // namespace

LexiconError::LexiconError(ErrorCode code, const std::string& detail, int line)
    : std::runtime_error(format_error(code, detail, line)), code_(code), line_(line) {}

const char* stage_name(Stage stage) {
  switch (stage) {
    case Stage::Transfer: return "transfer";
    case Stage::Distinct: return "distinct";
    case Stage::Variable: return "variable";
  }
  return "?";
}

std::optional<Stage> stage_from_name(std::string_view name) {
  if (name == "transfer") return Stage::Transfer;
  if (name == "distinct") return Stage::Distinct;
  if (name == "variable") return Stage::Variable;
  return std::nullopt;
}

const char* repair_kind_name(RepairKind kind) {
  return kind == RepairKind::IdiomTransfer ? "idiom_transfer" : "lexical_transfer_subcat";
}

namespace {

std::optional<SpecCat> spec_cat_from_name(std::string_view name) {
  if (name == "np") return SpecCat::NP;
  if (name == "n") return SpecCat::N;
  if (name == "pp") return SpecCat::PP;
  if (name == "vp") return SpecCat::VP;
  if (name == "ap") return SpecCat::AP;
  if (name == "det") return SpecCat::Det;
  return std::nullopt;
}

/** Parses one subcategorization lexicon, e.g. "(pp[a]:theme +human, np)". */
class SpecParser {
public:
  SpecParser(const std::string& text, int line) : text_(text), line_(line) {}

  std::vector<SpecDesc> run() {
    std::string body = text_;
    if (body.size() < 2 || body.front() != '(' || body.back() != ')')
      fail(ErrorCode::BadSyntax, "subcat wants the shape (spec, ...)");
    body = body.substr(1, body.size() - 2);
    std::vector<SpecDesc> specs;
    for (const std::string& part : split_top(body)) {
      if (part.empty()) fail(ErrorCode::BadSyntax, "empty slot in subcat");
      specs.push_back(parse_spec(part));
    }
    return specs;
  }

private:
  [[noreturn]] void fail(ErrorCode code, const std::string& detail) {
    throw LexiconError(code, detail + " in '" + text_ + "'", line_);
  }

  static std::vector<std::string> split_top(const std::string& body) {
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char c : body) {
      if (c == '[') depth++;
      if (c == ']') depth--;
      if (c == ',' && depth == 0) {
        parts.push_back(trim(cur));
        cur.clear();
      } else {
        cur += c;
      }
    }
    parts.push_back(trim(cur));
    return parts;
  }

  static std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
  }

  SpecDesc parse_spec(const std::string& part) {
    std::vector<std::string> words;
    std::istringstream in(part);
    std::string w;
    while (in >> w) words.push_back(w);
    SpecDesc spec = parse_core(words[0]);
    for (std::size_t i = 1; i < words.size(); ++i) {
      if (words[i] == "+human") {
        spec.human = true;
      } else if (words[i] == "-human") {
        spec.human = false;
      } else {
        fail(ErrorCode::BadSyntax, "unknown slot flag '" + words[i] + "'");
      }
    }
    return spec;
  }

  SpecDesc parse_core(const std::string& core) {
    std::string rest = core;
    std::string cat_name;
    std::size_t i = 0;
    while (i < rest.size() && std::isalpha(static_cast<unsigned char>(rest[i]))) i++;
    cat_name = rest.substr(0, i);
    rest = rest.substr(i);

    auto cat = spec_cat_from_name(cat_name);
    if (!cat) fail(ErrorCode::BadSyntax, "unknown slot category '" + cat_name + "'");

    SpecDesc spec;
    spec.cat = *cat;

    std::string inner;
    if (!rest.empty() && rest.front() == '[') {
      std::size_t close = rest.find(']');
      if (close == std::string::npos) fail(ErrorCode::BadSyntax, "unclosed '['");
      inner = rest.substr(1, close - 1);
      rest = rest.substr(close + 1);
    }

    bool inner_is_lex = inner.rfind("lex=", 0) == 0;
    switch (spec.cat) {
      case SpecCat::PP:
        if (inner_is_lex)
          fail(ErrorCode::UnsupportedIdiom, "a lemma constraint on a pp slot");
        if (inner.empty()) fail(ErrorCode::BadSyntax, "pp slot wants pp[form]");
        spec.pform = inner;
        break;
      case SpecCat::N:
        if (!inner_is_lex) fail(ErrorCode::BadSyntax, "n slot wants n[lex=lemma]");
        spec.lex = inner.substr(4);
        if (spec.lex.empty()) fail(ErrorCode::BadSyntax, "empty lemma in n slot");
        break;
      case SpecCat::VP:
        if (inner_is_lex)
          fail(ErrorCode::UnsupportedIdiom, "a lemma constraint on a vp slot");
        if (inner == "fin") spec.vform = VForm::Fin;
        else if (inner == "inf") spec.vform = VForm::Inf;
        else if (!inner.empty()) fail(ErrorCode::BadSyntax, "vp slot wants vp[fin] or vp[inf]");
        break;
      default:
        if (inner_is_lex)
          fail(ErrorCode::UnsupportedIdiom,
               "a lemma constraint on a " + cat_name + " slot");
        if (!inner.empty()) fail(ErrorCode::BadSyntax, "unexpected '[...]' on " + cat_name);
        break;
    }

    if (!rest.empty() && rest.front() == '?') {
      spec.optional = true;
      rest = rest.substr(1);
    }
    if (!rest.empty() && rest.front() == ':') {
      spec.role = rest.substr(1);
      if (spec.role.empty()) fail(ErrorCode::BadSyntax, "empty role after ':'");
      rest.clear();
    }
    if (!rest.empty()) fail(ErrorCode::BadSyntax, "trailing '" + rest + "' in slot");
    return spec;
  }

  const std::string& text_;
  int line_;
};

}  // namespace

/** Builds a Lexicon from text: line parsing, cross-checks, derived data. */
class Loader {
public:
  Lexicon run(std::string_view text, const std::string& name) {
    name_ = name;
    std::string line;
    std::istringstream in{std::string(text)};
    while (std::getline(in, line)) {
      lineno_++;
      handle_line(line);
    }
    finalize();
    return std::move(lx_);
  }

private:
  [[noreturn]] void fail(ErrorCode code, const std::string& detail, int line = -1) {
    throw LexiconError(code, detail, line < 0 ? lineno_ : line);
  }

  void handle_line(const std::string& raw) {
    std::string line = raw;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::vector<std::string> fields = split_fields(line);
    if (fields.empty()) return;
    const std::string& kw = fields[0];
    if (kw == "languages") return languages_line(fields);
    if (!have_languages_) fail(ErrorCode::MissingLanguages, "the file must open with a languages line");
    if (kw == "roles") return roles_line(fields);
    if (kw == "verb" || kw == "copula" || kw == "noun" || kw == "pron" || kw == "det" ||
        kw == "prep" || kw == "adv")
      return entry_line(kw, fields);
    if (kw == "bilingual") return bilingual_line(fields);
    if (kw == "link") return link_line(fields);
    if (kw == "rule") return rule_line(fields);
    fail(ErrorCode::BadSyntax, "unknown directive '" + kw + "'");
  }

  static bool split_kv(const std::string& field, std::string& key, std::string& value) {
    std::size_t eq = field.find('=');
    if (eq == std::string::npos) return false;
    key = field.substr(0, eq);
    value = field.substr(eq + 1);
    return true;
  }

  void languages_line(const std::vector<std::string>& fields) {
    if (have_languages_) fail(ErrorCode::BadSyntax, "a second languages line");
    for (std::size_t i = 1; i < fields.size(); ++i) {
      std::string key, value;
      if (!split_kv(fields[i], key, value) || value.empty())
        fail(ErrorCode::BadSyntax, "languages wants lt=NAME [l1=NAME]");
      if (key == "lt") lx_.lt_language_ = value;
      else if (key == "l1") lx_.l1_language_ = value;
      else fail(ErrorCode::UnknownKey, "unknown languages key '" + key + "'");
    }
    if (lx_.lt_language_.empty()) fail(ErrorCode::BadSyntax, "languages wants lt=NAME");
    have_languages_ = true;
  }

  void roles_line(const std::vector<std::string>& fields) {
    std::vector<std::string> parts(fields.begin() + 1, fields.end());
    if (parts.empty()) fail(ErrorCode::BadSyntax, "roles wants 'roles NAME: role...'");
    std::string name = parts[0];
    if (!name.empty() && name.back() == ':') {
      name.pop_back();
      parts.erase(parts.begin());
    } else if (parts.size() >= 2 && parts[1] == ":") {
      parts.erase(parts.begin(), parts.begin() + 2);
    } else {
      fail(ErrorCode::BadSyntax, "roles wants 'roles NAME: role...'");
    }
    if (name.empty()) fail(ErrorCode::BadSyntax, "empty relation name");
    if (lx_.relations_.count(name)) fail(ErrorCode::BadSyntax, "relation '" + name + "' declared twice");
    RelationInfo info;
    for (const std::string& part : parts) {
      if (part == "scopal") {
        info.scopal = true;
      } else {
        info.roles.push_back(part);
      }
    }
    if (info.roles.empty()) fail(ErrorCode::BadSyntax, "relation '" + name + "' has no roles");
    lx_.relations_.emplace(name, std::move(info));
  }

  Lang parse_lang(const std::string& value) {
    if (value == "lt") return Lang::Lt;
    if (value == "l1") {
      if (lx_.l1_language_.empty())
        fail(ErrorCode::BadLanguage, "lang=l1 in a lexicon with no l1 language");
      return Lang::L1;
    }
    fail(ErrorCode::BadLanguage, "unknown language '" + value + "'");
  }

  std::vector<FormSpec> parse_forms(const std::string& value) {
    std::vector<FormSpec> forms;
    std::string cur;
    std::istringstream in(value);
    while (std::getline(in, cur, ',')) {
      if (cur.empty()) continue;
      FormSpec form;
      std::size_t colon = cur.find(':');
      if (colon == std::string::npos) {
        form.surface = cur;
      } else {
        form.surface = cur.substr(0, colon);
        std::string ann = cur.substr(colon + 1);
        if (ann == "fin") form.vform = VForm::Fin;
        else if (ann == "inf") form.vform = VForm::Inf;
        else fail(ErrorCode::BadSyntax, "unknown form annotation ':" + ann + "'");
      }
      if (form.surface.empty()) fail(ErrorCode::BadSyntax, "empty surface form");
      forms.push_back(std::move(form));
    }
    if (forms.empty()) fail(ErrorCode::EmptyForms, "forms= lists no forms");
    return forms;
  }

  std::optional<bool> parse_human(const std::string& value) {
    if (value == "+") return true;
    if (value == "-") return false;
    fail(ErrorCode::BadSyntax, "human wants + or -");
  }

  void entry_line(const std::string& kw, const std::vector<std::string>& fields) {
    if (fields.size() < 2) fail(ErrorCode::BadSyntax, kw + " wants a lemma");
    LexicalEntry entry;
    entry.lemma = fields[1];
    if (kw == "verb") entry.cls = EntryClass::Verb;
    else if (kw == "copula") entry.cls = EntryClass::Copula;
    else if (kw == "noun") entry.cls = EntryClass::Noun;
    else if (kw == "pron") entry.cls = EntryClass::Pron;
    else if (kw == "det") entry.cls = EntryClass::Det;
    else if (kw == "prep") entry.cls = EntryClass::Prep;
    else entry.cls = EntryClass::Adv;

    bool have_lang = false;
    for (std::size_t i = 2; i < fields.size(); ++i) {
      const std::string& field = fields[i];
      if (field == "proper") {
        if (entry.cls != EntryClass::Noun) fail(ErrorCode::UnknownKey, "proper is for nouns");
        entry.proper = true;
        continue;
      }
      if (field == "pred") {
        if (entry.cls != EntryClass::Adv) fail(ErrorCode::UnknownKey, "pred is for adverbs");
        entry.pred = true;
        continue;
      }
      std::string key, value;
      if (!split_kv(field, key, value))
        fail(ErrorCode::BadSyntax, "expected key=value, got '" + field + "'");
      if (key == "lang") {
        entry.lang = parse_lang(value);
        have_lang = true;
      } else if (key == "forms") {
        entry.forms = parse_forms(value);
      } else if (key == "human") {
        if (entry.cls != EntryClass::Noun && entry.cls != EntryClass::Pron)
          fail(ErrorCode::UnknownKey, "human= is for nouns and pronouns");
        entry.human = parse_human(value);
      } else if (key == "sem") {
        if (entry.cls != EntryClass::Verb && entry.cls != EntryClass::Adv &&
            entry.cls != EntryClass::Det)
          fail(ErrorCode::UnknownKey, "sem= is for verbs, adverbs and determiners");
        entry.sem_name = value;
      } else if (key == "subcat") {
        if (entry.cls != EntryClass::Verb)
          fail(ErrorCode::UnknownKey, "subcat= is for verbs");
        entry.comps = SpecParser(value, lineno_).run();
      } else if (key == "prd") {
        if (entry.cls != EntryClass::Copula) fail(ErrorCode::UnknownKey, "prd= is for copulas");
        entry.prd = value;
      } else if (key == "mod") {
        if (entry.cls != EntryClass::Adv) fail(ErrorCode::UnknownKey, "mod= is for adverbs");
        entry.mod_cat = value;
      } else {
        fail(ErrorCode::UnknownKey, "unknown key '" + key + "'");
      }
    }
    if (!have_lang) fail(ErrorCode::BadSyntax, kw + " " + entry.lemma + " wants lang=");
    if (entry.forms.empty()) entry.forms.push_back({entry.lemma, std::nullopt});

    switch (entry.cls) {
      case EntryClass::Verb:
      case EntryClass::Adv:
        if (entry.sem_name.empty())
          fail(ErrorCode::BadSyntax, kw + " " + entry.lemma + " wants sem=");
        break;
      case EntryClass::Copula:
        if (entry.prd.empty()) fail(ErrorCode::BadSyntax, "copula wants prd=");
        if (entry.prd != "ap" && entry.prd != "np")
          fail(ErrorCode::BadSyntax, "prd wants ap or np");
        break;
      default:
        break;
    }
    if (entry.cls == EntryClass::Adv) {
      if (entry.pred == !entry.mod_cat.empty())
        fail(ErrorCode::BadSyntax, "adv " + entry.lemma + " wants exactly one of pred, mod=");
      if (!entry.mod_cat.empty() && entry.mod_cat != "vp" && entry.mod_cat != "np" &&
          entry.mod_cat != "ap")
        fail(ErrorCode::BadSyntax, "mod wants vp, np or ap");
    }

    for (const auto& existing : lx_.entries_) {
      if (existing.lemma == entry.lemma && existing.lang == entry.lang)
        fail(ErrorCode::DuplicateEntry,
             "'" + entry.lemma + "' is declared twice for one language");
    }
    entry.index = static_cast<int>(lx_.entries_.size());
    entry_lines_.push_back(lineno_);
    lx_.entries_.push_back(std::move(entry));
  }

  void bilingual_line(const std::vector<std::string>& fields) {
    if (fields.size() < 4 || fields[2] != "<->")
      fail(ErrorCode::BadSyntax, "bilingual wants 'bilingual LT <-> L1 stage=...'");
    PendingBilingual pending;
    pending.lt = fields[1];
    pending.l1 = fields[3];
    pending.line = lineno_;
    bool have_stage = false;
    for (std::size_t i = 4; i < fields.size(); ++i) {
      std::string key, value;
      if (!split_kv(fields[i], key, value))
        fail(ErrorCode::BadSyntax, "expected key=value, got '" + fields[i] + "'");
      if (key == "stage") {
        auto stage = stage_from_name(value);
        if (!stage) fail(ErrorCode::BadStage, "unknown stage '" + value + "'");
        pending.stage = *stage;
        have_stage = true;
      } else {
        fail(ErrorCode::UnknownKey, "unknown key '" + key + "'");
      }
    }
    if (!have_stage) fail(ErrorCode::BadStage, "bilingual wants stage=");
    if (lx_.l1_language_.empty())
      fail(ErrorCode::BadLanguage, "bilingual entries need an l1 language");
    pending_bilinguals_.push_back(std::move(pending));
  }

  void link_line(const std::vector<std::string>& fields) {
    if (fields.size() != 5 || fields[3] != "->")
      fail(ErrorCode::BadSyntax, "link wants 'link prep|noun L1 -> LT'");
    PendingLink link;
    if (fields[1] == "prep") link.prep = true;
    else if (fields[1] == "noun") link.prep = false;
    else fail(ErrorCode::BadSyntax, "link wants prep or noun");
    link.from = fields[2];
    link.to = fields[4];
    link.line = lineno_;
    pending_links_.push_back(std::move(link));
  }

  void rule_line(const std::vector<std::string>& fields) {
    if (fields.size() < 2) fail(ErrorCode::BadSyntax, "rule wants an id");
    PendingRule rule;
    rule.id = fields[1];
    rule.line = lineno_;
    rule.lang = Lang::L1;
    for (std::size_t i = 2; i < fields.size(); ++i) {
      std::string key, value;
      if (!split_kv(fields[i], key, value))
        fail(ErrorCode::BadSyntax, "expected key=value, got '" + fields[i] + "'");
      if (key == "lang") rule.lang = parse_lang(value);
      else fail(ErrorCode::UnknownKey, "unknown key '" + key + "'");
    }
    pending_rules_.push_back(std::move(rule));
  }

  // Cross-checks that need the whole file, then derived data.
  void finalize() {
    if (!have_languages_)
      throw LexiconError(ErrorCode::MissingLanguages, "the file has no languages line", 0);

    for (std::size_t i = 0; i < lx_.entries_.size(); ++i)
      validate_entry(lx_.entries_[i], entry_lines_[i]);

    for (const PendingLink& link : pending_links_) {
      EntryClass cls = link.prep ? EntryClass::Prep : EntryClass::Noun;
      const LexicalEntry* from = find_entry(link.from, Lang::L1, cls);
      const LexicalEntry* to = find_entry(link.to, Lang::Lt, cls);
      if (!from || !to)
        throw LexiconError(ErrorCode::DanglingLink,
                           "link " + link.from + " -> " + link.to +
                               " names a lemma with no entry",
                           link.line);
      auto& links = link.prep ? lx_.prep_links_ : lx_.noun_links_;
      links[link.from] = link.to;
      lx_.link_count_++;
    }

    for (const PendingRule& rule : pending_rules_) {
      if (rule.id != "es-human-object-pp")
        throw LexiconError(ErrorCode::UnknownRule, "unknown rule '" + rule.id + "'", rule.line);
      lx_.rule_decls_.push_back({rule.id, rule.lang});
      std::size_t declared = lx_.entries_.size();
      for (std::size_t i = 0; i < declared; ++i) {
        if (lx_.entries_[i].lang != rule.lang) continue;
        if (lx_.entries_[i].cls != EntryClass::Verb) continue;
        std::vector<LexicalEntry> derived;
        try {
          derived = apply_lexical_rule(rule.id, lx_.entries_[i], lx_);
        } catch (const LexiconError& e) {
          throw LexiconError(e.code(), std::string(e.what()), rule.line);
        }
        for (LexicalEntry& d : derived) {
          d.index = static_cast<int>(lx_.entries_.size());
          lx_.entries_.push_back(std::move(d));
        }
      }
    }

    for (const PendingBilingual& pending : pending_bilinguals_) {
      const LexicalEntry* lt = find_entry(pending.lt, Lang::Lt, EntryClass::Verb);
      const LexicalEntry* l1 = find_entry(pending.l1, Lang::L1, EntryClass::Verb);
      if (!lt || !l1)
        throw LexiconError(ErrorCode::UnknownLemma,
                           "bilingual " + pending.lt + " <-> " + pending.l1 +
                               " names a verb with no entry",
                           pending.line);
      if (lt->sem_name != l1->sem_name)
        throw LexiconError(ErrorCode::SemMismatch,
                           pending.lt + " means " + lt->sem_name + " but " + pending.l1 +
                               " means " + l1->sem_name,
                           pending.line);
      BilingualEntry b;
      b.il_lemma = lt->lemma;
      b.lt_entry = lt->index;
      b.l1_entry = l1->index;
      b.stage = pending.stage;
      b.pair = make_pair_structure(*lt, *l1, pending.line);
      lx_.bilingual_by_lt_entry_[lt->index] = static_cast<int>(lx_.bilinguals_.size());
      lx_.bilinguals_.push_back(std::move(b));
    }

    build_mal_lexicon();
    build_indexes();
  }

  const LexicalEntry* find_entry(const std::string& lemma, Lang lang, EntryClass cls) {
    for (const auto& entry : lx_.entries_) {
      if (entry.derived) continue;
      if (entry.lemma == lemma && entry.lang == lang && entry.cls == cls) return &entry;
    }
    return nullptr;
  }

  void validate_entry(const LexicalEntry& entry, int line) {
    if (entry.cls == EntryClass::Verb || entry.cls == EntryClass::Adv) {
      const RelationInfo* rel = lx_.relation(entry.sem_name);
      if (!rel)
        throw LexiconError(ErrorCode::UnknownRelation,
                           "'" + entry.lemma + "' names undeclared relation '" +
                               entry.sem_name + "'",
                           line);
      for (const SpecDesc& spec : entry.comps) {
        if (spec.role.empty()) continue;
        if (std::find(rel->roles.begin(), rel->roles.end(), spec.role) == rel->roles.end())
          throw LexiconError(ErrorCode::UnknownRole,
                             "'" + entry.lemma + "' binds unknown role '" + spec.role + "'",
                             line);
      }
    }
    for (const SpecDesc& spec : entry.comps) {
      if (spec.cat == SpecCat::PP && !find_entry(spec.pform, entry.lang, EntryClass::Prep))
        throw LexiconError(ErrorCode::DanglingPform,
                           "'" + entry.lemma + "' selects pp[" + spec.pform +
                               "] but no such preposition is declared",
                           line);
      if (spec.cat == SpecCat::N && !find_entry(spec.lex, entry.lang, EntryClass::Noun))
        throw LexiconError(ErrorCode::UnknownLemma,
                           "'" + entry.lemma + "' selects n[lex=" + spec.lex +
                               "] but no such noun is declared",
                           line);
    }
  }

  avm::FeatureStructure make_pair_structure(const LexicalEntry& lt, const LexicalEntry& l1,
                                            int line) {
    signs::Sign lt_sign = lx_.build(lt, nullptr);
    signs::Sign l1_sign = lx_.build(l1, nullptr);
    avm::Graph g;
    avm::NodeId lt_root = g.import(lt_sign.fs());
    avm::NodeId l1_root = g.import(l1_sign.fs());
    auto lt_sem = g.resolve(lt_root, avm::Path({signs::F().SEM}));
    auto l1_sem = g.resolve(l1_root, avm::Path({signs::F().SEM}));
    if (!lt_sem || !l1_sem || !g.unify_nodes(*lt_sem, *l1_sem))
      throw LexiconError(ErrorCode::SemMismatch,
                         lt.lemma + " and " + l1.lemma + " have incompatible semantics", line);
    avm::NodeId root = g.add_avm();
    g.set(root, Symbol::intern("LT"), lt_root);
    g.set(root, Symbol::intern("L1"), l1_root);
    auto fs = g.extract(root);
    if (!fs)
      throw LexiconError(ErrorCode::SemMismatch,
                         lt.lemma + " and " + l1.lemma + " have incompatible semantics", line);
    return *fs;
  }

  void build_mal_lexicon() {
    for (std::size_t bi = 0; bi < lx_.bilinguals_.size(); ++bi) {
      const BilingualEntry& b = lx_.bilinguals_[bi];
      const LexicalEntry& lt = lx_.entries_[static_cast<std::size_t>(b.lt_entry)];
      const LexicalEntry& l1 = lx_.entries_[static_cast<std::size_t>(b.l1_entry)];
      for (const LexicalEntry* frame : lx_.frames_of(l1.lemma, Lang::L1)) {
        std::vector<SpecDesc> translated;
        bool ok = true;
        std::string why;
        for (const SpecDesc& spec : frame->comps) {
          try {
            translated.push_back(lx_.translate_spec(spec));
          } catch (const LexiconError& e) {
            ok = false;
            why = e.what();
            break;
          }
        }
        if (!ok) {
          lx_.warnings_.push_back("skipping a frame of " + lt.lemma + " <-> " + l1.lemma +
                                  ": " + why);
          continue;
        }
        MalEntry mal;
        mal.lemma = lt.lemma;
        mal.bilingual = static_cast<int>(bi);
        mal.subcat = translated;
        mal.sign = lx_.build_with_comps(lt, nullptr, translated);
        mal.tmpl.kind = RepairKind::L1FrameSubstitution;
        for (const SpecDesc& spec : translated)
          if (spec.cat == SpecCat::N) mal.tmpl.kind = RepairKind::IdiomTransfer;
        mal.tmpl.il_lemma = lt.lemma;
        mal.tmpl.l1_lemma = l1.lemma;
        mal.tmpl.l1_frame = signs::frame_summary(frame->comps);
        mal.tmpl.mal_frame = signs::frame_summary(translated);
        lx_.mal_by_lemma_.emplace(lt.lemma, static_cast<int>(lx_.mal_entries_.size()));
        lx_.mal_entries_.push_back(std::move(mal));
      }
    }
  }

  void build_indexes() {
    for (std::size_t i = 0; i < lx_.entries_.size(); ++i) {
      const LexicalEntry& entry = lx_.entries_[i];
      for (std::size_t j = 0; j < entry.forms.size(); ++j) {
        int lang = entry.lang == Lang::Lt ? 0 : 1;
        auto key = std::make_pair(lang, entry.forms[j].surface);
        lx_.form_index_[key].emplace_back(static_cast<int>(i), static_cast<int>(j));
        auto folded = std::make_pair(lang, ascii_lower(entry.forms[j].surface));
        lx_.folded_index_[folded].emplace_back(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }

  struct PendingBilingual {
    std::string lt, l1;
    Stage stage = Stage::Distinct;
    int line = 0;
  };
  struct PendingLink {
    bool prep = true;
    std::string from, to;
    int line = 0;
  };
  struct PendingRule {
    std::string id;
    Lang lang = Lang::L1;
    int line = 0;
  };

  Lexicon lx_;
  std::string name_;
  int lineno_ = 0;
  bool have_languages_ = false;
  std::vector<int> entry_lines_;
  std::vector<PendingBilingual> pending_bilinguals_;
  std::vector<PendingLink> pending_links_;
  std::vector<PendingRule> pending_rules_;
};

Lexicon Lexicon::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LexiconError(ErrorCode::IoError, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_string(buf.str(), path);
}

Lexicon Lexicon::load_string(std::string_view text, const std::string& name) {
  return Loader().run(text, name);
}

namespace {

const char* lang_word(Lang lang) { return lang == Lang::Lt ? "lt" : "l1"; }

const char* class_word(EntryClass cls) {
  switch (cls) {
    case EntryClass::Verb: return "verb";
    case EntryClass::Copula: return "copula";
    case EntryClass::Noun: return "noun";
    case EntryClass::Pron: return "pron";
    case EntryClass::Det: return "det";
    case EntryClass::Prep: return "prep";
    case EntryClass::Adv: return "adv";
  }
  return "verb";
}

std::string spec_source(const SpecDesc& spec) {
  std::string out;
  switch (spec.cat) {
    case SpecCat::NP: out = "np"; break;
    case SpecCat::N: out = "n[lex=" + spec.lex + "]"; break;
    case SpecCat::PP: out = "pp[" + spec.pform + "]"; break;
    case SpecCat::VP:
      out = "vp";
      if (spec.vform) out += *spec.vform == VForm::Fin ? "[fin]" : "[inf]";
      break;
    case SpecCat::AP: out = "ap"; break;
    case SpecCat::Det: out = "det"; break;
  }
  if (spec.optional) out += '?';
  if (!spec.role.empty()) out += ':' + spec.role;
  if (spec.human) out += *spec.human ? " +human" : " -human";
  return out;
}

std::string forms_source(const LexicalEntry& entry) {
  std::string out;
  for (std::size_t i = 0; i < entry.forms.size(); ++i) {
    if (i > 0) out += ',';
    out += entry.forms[i].surface;
    if (entry.forms[i].vform)
      out += *entry.forms[i].vform == VForm::Fin ? ":fin" : ":inf";
  }
  return out;
}

}  // namespace

std::string Lexicon::print() const {
  std::ostringstream out;
  out << "languages lt=" << lt_language_;
  if (!l1_language_.empty()) out << " l1=" << l1_language_;
  out << "\n\n";

  for (const auto& [name, info] : relations_) {
    out << "roles " << name << ":";
    for (const std::string& role : info.roles) out << ' ' << role;
    if (info.scopal) out << " scopal";
    out << '\n';
  }
  out << '\n';

  for (const LexicalEntry& entry : entries_) {
    if (entry.derived) continue;
    out << class_word(entry.cls) << ' ' << entry.lemma << " lang=" << lang_word(entry.lang);
    if (entry.proper) out << " proper";
    if (entry.pred) out << " pred";
    if (entry.human) out << " human=" << (*entry.human ? '+' : '-');
    if (!entry.sem_name.empty()) out << " sem=" << entry.sem_name;
    if (!entry.comps.empty()) {
      out << " subcat=(";
      for (std::size_t i = 0; i < entry.comps.size(); ++i) {
        if (i > 0) out << ", ";
        out << spec_source(entry.comps[i]);
      }
      out << ')';
    }
    if (!entry.prd.empty()) out << " prd=" << entry.prd;
    if (!entry.mod_cat.empty()) out << " mod=" << entry.mod_cat;
    out << " forms=" << forms_source(entry) << '\n';
  }
  out << '\n';

  for (const auto& [from, to] : prep_links_) out << "link prep " << from << " -> " << to << '\n';
  for (const auto& [from, to] : noun_links_) out << "link noun " << from << " -> " << to << '\n';
  for (const RuleDecl& rule : rule_decls_)
    out << "rule " << rule.id << " lang=" << lang_word(rule.lang) << '\n';
  for (const BilingualEntry& b : bilinguals_) {
    out << "bilingual " << entries_[static_cast<std::size_t>(b.lt_entry)].lemma << " <-> "
        << entries_[static_cast<std::size_t>(b.l1_entry)].lemma
        << " stage=" << stage_name(b.stage) << '\n';
  }
  return out.str();
}

const LexicalEntry* Lexicon::entry(std::string_view lemma, Lang lang) const {
  for (const auto& e : entries_)
    if (!e.derived && e.lemma == lemma && e.lang == lang) return &e;
  return nullptr;
}

std::vector<const LexicalEntry*> Lexicon::frames_of(std::string_view lemma, Lang lang) const {
  std::vector<const LexicalEntry*> out;
  for (const auto& e : entries_)
    if (e.lemma == lemma && e.lang == lang) out.push_back(&e);
  return out;
}

std::vector<Lexicon::Hit> Lexicon::lookup(std::string_view token, Lang lang) const {
  int lang_key = lang == Lang::Lt ? 0 : 1;
  std::vector<Hit> hits;
  auto collect = [&](const std::map<std::pair<int, std::string>,
                                    std::vector<std::pair<int, int>>>& index,
                     const std::string& key) {
    auto it = index.find(std::make_pair(lang_key, key));
    if (it == index.end()) return;
    for (auto [ei, fi] : it->second) {
      const LexicalEntry& e = entries_[static_cast<std::size_t>(ei)];
      hits.push_back(Hit{&e, &e.forms[static_cast<std::size_t>(fi)]});
    }
  };
  collect(form_index_, std::string(token));
  if (hits.empty()) collect(folded_index_, ascii_lower(token));
  return hits;
}

const BilingualEntry* Lexicon::bilingual(std::string_view il_lemma) const {
  for (const auto& b : bilinguals_)
    if (b.il_lemma == il_lemma) return &b;
  return nullptr;
}

const BilingualEntry* Lexicon::bilingual_of(const LexicalEntry* lt_entry) const {
  if (!lt_entry) return nullptr;
  auto it = bilingual_by_lt_entry_.find(lt_entry->index);
  if (it == bilingual_by_lt_entry_.end()) return nullptr;
  return &bilinguals_[static_cast<std::size_t>(it->second)];
}

const RelationInfo* Lexicon::relation(std::string_view name) const {
  auto it = relations_.find(std::string(name));
  if (it == relations_.end()) return nullptr;
  return &it->second;
}

std::optional<std::string> Lexicon::translate_pform(const std::string& l1_pform) const {
  auto it = prep_links_.find(l1_pform);
  if (it == prep_links_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> Lexicon::translate_lex(const std::string& l1_lex) const {
  auto it = noun_links_.find(l1_lex);
  if (it == noun_links_.end()) return std::nullopt;
  return it->second;
}

SpecDesc Lexicon::translate_spec(const SpecDesc& spec) const {
  SpecDesc out = spec;
  if (spec.cat == SpecCat::PP) {
    auto pform = translate_pform(spec.pform);
    if (!pform)
      throw LexiconError(ErrorCode::NoTranslation,
                         "no link for preposition '" + spec.pform + "'");
    out.pform = *pform;
  } else if (spec.cat == SpecCat::N) {
    auto lex = translate_lex(spec.lex);
    if (!lex)
      throw LexiconError(ErrorCode::NoTranslation, "no link for noun '" + spec.lex + "'");
    out.lex = *lex;
  }
  return out;
}

std::vector<SpecDesc> Lexicon::full_subcat(const LexicalEntry& entry) const {
  std::vector<SpecDesc> subcat = entry.comps;
  auto subject = [](const std::string& role) {
    SpecDesc s;
    s.cat = SpecCat::NP;
    s.role = role;
    s.subject = true;
    return s;
  };
  switch (entry.cls) {
    case EntryClass::Verb: {
      const RelationInfo* rel = relation(entry.sem_name);
      subcat.push_back(subject(rel && !rel->roles.empty() ? rel->roles[0] : ""));
      break;
    }
    case EntryClass::Copula: {
      SpecDesc prd;
      prd.cat = entry.prd == "np" ? SpecCat::NP : SpecCat::AP;
      subcat.push_back(prd);
      subcat.push_back(subject(""));
      break;
    }
    case EntryClass::Prep: {
      SpecDesc obj;
      obj.cat = SpecCat::NP;
      subcat.push_back(obj);
      break;
    }
    case EntryClass::Noun: {
      if (!entry.proper) {
        SpecDesc det;
        det.cat = SpecCat::Det;
        det.role = "poss";
        det.subject = true;
        subcat.push_back(det);
      }
      break;
    }
    case EntryClass::Adv: {
      if (entry.pred) {
        const RelationInfo* rel = relation(entry.sem_name);
        subcat.push_back(subject(rel && !rel->roles.empty() ? rel->roles[0] : ""));
      }
      break;
    }
    case EntryClass::Pron:
    case EntryClass::Det:
      break;
  }
  return subcat;
}

SignDesc Lexicon::sign_desc(const LexicalEntry& entry, const FormSpec* form,
                            const std::vector<SpecDesc>* comps_override) const {
  LexicalEntry shaped = entry;
  if (comps_override) shaped.comps = *comps_override;

  SignDesc desc;
  desc.phon = form ? form->surface : entry.lemma;
  desc.lemma = entry.lemma;
  if (form) desc.vform = form->vform;
  desc.subcat = full_subcat(shaped);

  switch (entry.cls) {
    case EntryClass::Verb: {
      desc.cat = Cat::Verb;
      desc.sem.kind = SemDesc::Kind::Relation;
      desc.sem.name = entry.sem_name;
      desc.sem.roles = relation(entry.sem_name)->roles;
      break;
    }
    case EntryClass::Copula: {
      desc.cat = Cat::Verb;
      desc.sem.kind = SemDesc::Kind::None;
      desc.sem_shared_with = static_cast<int>(desc.subcat.size()) - 2;
      break;
    }
    case EntryClass::Prep: {
      desc.cat = Cat::Prep;
      desc.pform = entry.lemma;
      desc.sem.kind = SemDesc::Kind::None;
      desc.sem_shared_with = 0;
      break;
    }
    case EntryClass::Noun:
    case EntryClass::Pron: {
      desc.cat = Cat::Noun;
      desc.sem.kind = SemDesc::Kind::Referent;
      desc.sem.name = entry.lemma;
      desc.sem.human = entry.human;
      desc.sem.has_poss = entry.cls == EntryClass::Noun && !entry.proper;
      break;
    }
    case EntryClass::Det: {
      desc.cat = Cat::Det;
      if (entry.sem_name.empty()) {
        desc.sem.kind = SemDesc::Kind::None;
      } else {
        desc.sem.kind = SemDesc::Kind::Referent;
        desc.sem.name = entry.sem_name;
      }
      break;
    }
    case EntryClass::Adv: {
      desc.cat = Cat::Adv;
      desc.sem.kind = SemDesc::Kind::Relation;
      desc.sem.name = entry.sem_name;
      desc.sem.roles = relation(entry.sem_name)->roles;
      if (!entry.mod_cat.empty()) {
        SpecDesc mod;
        mod.cat = entry.mod_cat == "vp"   ? SpecCat::VP
                  : entry.mod_cat == "np" ? SpecCat::NP
                                          : SpecCat::AP;
        mod.role = desc.sem.roles[0];
        desc.mod = mod;
      }
      break;
    }
  }
  return desc;
}

signs::Sign Lexicon::build(const LexicalEntry& entry, const FormSpec* form) const {
  return signs::build_sign(sign_desc(entry, form, nullptr));
}

signs::Sign Lexicon::build_with_comps(const LexicalEntry& entry, const FormSpec* form,
                                      const std::vector<SpecDesc>& comps) const {
  return signs::build_sign(sign_desc(entry, form, &comps));
}

std::vector<signs::Sign> Lexicon::project_il_signs(const BilingualEntry& b,
                                                   std::optional<Stage> stage_override) const {
  Stage stage = stage_override.value_or(b.stage);
  const LexicalEntry& lt = entries_[static_cast<std::size_t>(b.lt_entry)];
  std::vector<signs::Sign> out;
  if (stage == Stage::Distinct || stage == Stage::Variable) {
    for (const LexicalEntry* frame : frames_of(lt.lemma, Lang::Lt))
      out.push_back(build(*frame, nullptr));
  }
  if (stage == Stage::Transfer || stage == Stage::Variable) {
    for (const MalEntry& mal : mal_entries_)
      if (mal.lemma == lt.lemma) out.push_back(mal.sign);
  }
  return out;
}

std::vector<Lexicon::MalHit> Lexicon::mal_signs_for(std::string_view token) const {
  std::vector<MalHit> out;
  for (const Hit& hit : lookup(token, Lang::Lt)) {
    auto range = mal_by_lemma_.equal_range(hit.entry->lemma);
    for (auto it = range.first; it != range.second; ++it) {
      const MalEntry& mal = mal_entries_[static_cast<std::size_t>(it->second)];
      out.push_back(MalHit{build_with_comps(*hit.entry, hit.form, mal.subcat), &mal});
    }
  }
  return out;
}

std::vector<std::pair<signs::Sign, Lexicon::Hit>> Lexicon::signs_for(
    std::string_view token) const {
  std::vector<std::pair<signs::Sign, Hit>> out;
  for (const Hit& hit : lookup(token, Lang::Lt))
    out.emplace_back(build(*hit.entry, hit.form), hit);
  return out;
}

std::vector<std::pair<signs::Sign, Lexicon::Hit>> Lexicon::il_signs_for(std::string_view token,
                                                                        Stage stage) const {
  std::vector<std::pair<signs::Sign, Hit>> out;
  for (const Hit& hit : lookup(token, Lang::Lt)) {
    const BilingualEntry* b = bilingual_of(hit.entry);
    if (!b) {
      out.emplace_back(build(*hit.entry, hit.form), hit);
      continue;
    }
    if (stage == Stage::Distinct || stage == Stage::Variable)
      out.emplace_back(build(*hit.entry, hit.form), hit);
    if (stage == Stage::Transfer || stage == Stage::Variable) {
      auto range = mal_by_lemma_.equal_range(hit.entry->lemma);
      for (auto it = range.first; it != range.second; ++it) {
        const MalEntry& mal = mal_entries_[static_cast<std::size_t>(it->second)];
        out.emplace_back(build_with_comps(*hit.entry, hit.form, mal.subcat), hit);
      }
    }
  }
  return out;
}

std::vector<LexicalEntry> apply_lexical_rule(std::string_view rule_id, const LexicalEntry& entry,
                                             const Lexicon& lexicon) {
  if (rule_id != "es-human-object-pp")
    throw LexiconError(ErrorCode::UnknownRule, "unknown rule '" + std::string(rule_id) + "'");
  if (entry.cls != EntryClass::Verb) return {};
  bool applies = false;
  for (const SpecDesc& spec : entry.comps)
    if (spec.cat == SpecCat::NP && spec.human == true) applies = true;
  if (!applies) return {};
  bool have_a = false;
  for (const auto& e : lexicon.entries())
    if (!e.derived && e.cls == EntryClass::Prep && e.lang == entry.lang && e.lemma == "a")
      have_a = true;
  if (!have_a)
    throw LexiconError(ErrorCode::DanglingPform,
                       "rule es-human-object-pp needs a declared preposition 'a'");
  LexicalEntry derived = entry;
  derived.derived = true;
  derived.derived_from = std::string(rule_id);
  for (SpecDesc& spec : derived.comps) {
    if (spec.cat == SpecCat::NP && spec.human == true) {
      spec.cat = SpecCat::PP;
      spec.pform = "a";
    }
  }
  return {derived};
}

}  // namespace ilt::lex
