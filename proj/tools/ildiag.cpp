#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ilt.h"

namespace {

// 0 all inputs grammatical / lexicon valid, 1 diagnoses produced or
// expectation mismatches, 2 some input had no analysis or an unknown word,
// 3 usage, config or lexicon error.
constexpr int kExitDiagnosed = 1;
constexpr int kExitNoAnalysis = 2;
constexpr int kExitError = 3;

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0) out += ' ';
    out += words[i];
  }
  return out;
}

std::string trim(const std::string& text) {
  std::size_t lo = 0, hi = text.size();
  while (lo < hi && std::isspace(static_cast<unsigned char>(text[lo]))) ++lo;
  while (hi > lo && std::isspace(static_cast<unsigned char>(text[hi - 1]))) --hi;
  return text.substr(lo, hi - lo);
}

/** One corpus line: the sentence and an optional `# expect:` annotation. */
struct CorpusLine {
  std::string sentence;
  std::string expect_class;
  std::string expect_lemma;
};

CorpusLine split_corpus_line(const std::string& raw) {
  CorpusLine out;
  std::size_t hash = raw.find('#');
  out.sentence = trim(raw.substr(0, hash));
  if (hash == std::string::npos) return out;
  std::string note = trim(raw.substr(hash + 1));
  const std::string tag = "expect:";
  if (note.compare(0, tag.size(), tag) != 0) return out;
  std::istringstream fields(note.substr(tag.size()));
  fields >> out.expect_class >> out.expect_lemma;
  return out;
}

struct Session {
  std::string lexicon_path;
  ilt_lexicon* lexicon = nullptr;
  ilt_config config;

  Session() { ilt_config_init(&config); }
  ~Session() { ilt_lexicon_free(lexicon); }

  int load() {
    char err[512] = "";
    lexicon = ilt_lexicon_load(lexicon_path.c_str(), err, sizeof err);
    if (lexicon == nullptr) {
      std::cerr << "ildiag: " << err << '\n';
      return kExitError;
    }
    return 0;
  }

  /** Runs one sentence; returns the result or null after reporting. */
  ilt_result* query(const std::string& sentence, int& exit_code) {
    char err[512] = "";
    ilt_result* r = ilt_diagnose(lexicon, sentence.c_str(), &config, err, sizeof err);
    if (r == nullptr) {
      std::cerr << "ildiag: " << err << '\n';
      exit_code = kExitError;
    }
    return r;
  }
};

int exit_for_parse(ilt_status status) { return status == ILT_OK ? 0 : kExitNoAnalysis; }

int exit_for_diagnose(ilt_status status) {
  switch (status) {
    case ILT_OK: return 0;
    case ILT_DIAGNOSED: return kExitDiagnosed;
    default: return kExitNoAnalysis;
  }
}

void print_result(const ilt_result* r, const std::string& format) {
  if (format == "machine")
    for (int i = 0; i < ilt_result_line_count(r); ++i)
      std::cout << ilt_result_line(r, i) << '\n';
  else
    std::cout << ilt_result_text(r);
}

/** True when the result satisfies the line's `# expect:` annotation. */
bool expectation_met(const ilt_result* r, const CorpusLine& line) {
  if (line.expect_class == "no_diagnosis") return ilt_result_status(r) == ILT_OK;
  for (int i = 0; i < ilt_result_diagnosis_count(r); ++i) {
    ilt_diagnosis_view d;
    if (ilt_result_diagnosis(r, i, &d) != 0) continue;
    if (line.expect_class != d.classification) continue;
    if (line.expect_lemma.empty() || line.expect_lemma == d.il_lemma) return true;
  }
  return false;
}

int run_parse(Session& session, const std::string& sentence) {
  int code = 0;
  ilt_result* r = session.query(sentence, code);
  if (r == nullptr) return code;
  std::cout << ilt_result_text(r);
  code = exit_for_parse(ilt_result_status(r));
  ilt_result_free(r);
  return code;
}

int run_diagnose(Session& session, const std::string& sentence, const std::string& format) {
  int code = 0;
  ilt_result* r = session.query(sentence, code);
  if (r == nullptr) return code;
  print_result(r, format);
  code = exit_for_diagnose(ilt_result_status(r));
  ilt_result_free(r);
  return code;
}

int run_batch(Session& session, const std::string& path, const std::string& format) {
  std::istream* in = &std::cin;
  std::ifstream file;
  if (path != "-") {
    std::error_code ec;
    if (std::filesystem::is_directory(path, ec)) {
      std::cerr << "ildiag: IO_ERROR: '" << path << "' is a directory\n";
      return kExitError;
    }
    file.open(path);
    if (!file) {
      std::cerr << "ildiag: IO_ERROR: cannot open '" << path << "'\n";
      return kExitError;
    }
    in = &file;
  }
  std::map<std::string, int> counts;
  int total = 0, matched = 0, mismatched = 0;
  bool any_diagnosed = false, any_failed = false;
  std::string raw;
  while (std::getline(*in, raw)) {
    CorpusLine line = split_corpus_line(raw);
    if (line.sentence.empty()) continue;
    int code = 0;
    ilt_result* r = session.query(line.sentence, code);
    if (r == nullptr) return code;
    print_result(r, format);
    ++total;
    ilt_status status = ilt_result_status(r);
    ++counts[ilt_status_name(status)];
    if (status == ILT_DIAGNOSED) any_diagnosed = true;
    if (status != ILT_OK && status != ILT_DIAGNOSED) any_failed = true;
    if (!line.expect_class.empty()) {
      if (expectation_met(r, line)) {
        ++matched;
      } else {
        ++mismatched;
        std::cerr << "mismatch: " << line.sentence << " (expected " << line.expect_class;
        if (!line.expect_lemma.empty()) std::cerr << ' ' << line.expect_lemma;
        std::cerr << ", got " << ilt_status_name(status) << ")\n";
      }
    }
    ilt_result_free(r);
  }
  std::cerr << "sentences: " << total << '\n';
  for (const auto& [name, count] : counts) std::cerr << name << ": " << count << '\n';
  if (matched + mismatched > 0)
    std::cerr << "expectations: " << matched << " matched, " << mismatched << " mismatched\n";
  if (any_failed) return kExitNoAnalysis;
  if (any_diagnosed || mismatched > 0) return kExitDiagnosed;
  return 0;
}

int run_lexcheck(const Session& session) {
  std::cout << "lexicon: " << session.lexicon_path << '\n';
  std::cout << "languages: lt=" << ilt_lexicon_lt_language(session.lexicon)
            << " l1=" << ilt_lexicon_l1_language(session.lexicon) << '\n';
  std::cout << "entries: " << ilt_lexicon_entry_count(session.lexicon) << '\n';
  std::cout << "transfer frames: " << ilt_lexicon_transfer_frame_count(session.lexicon)
            << '\n';
  int warnings = ilt_lexicon_warning_count(session.lexicon);
  std::cout << "warnings: " << warnings << '\n';
  for (int i = 0; i < warnings; ++i)
    std::cout << "  " << ilt_lexicon_warning(session.lexicon, i) << '\n';
  std::cout << "ok\n";
  return 0;
}

int run_repl(Session& session, const std::string& format) {
  std::string line;
  while (true) {
    std::cerr << "ilt> " << std::flush;
    if (!std::getline(std::cin, line)) break;
    if (line == "\\q") break;
    if (line.empty()) continue;
    int code = 0;
    ilt_result* r = session.query(line, code);
    if (r == nullptr) continue;
    print_result(r, format);
    std::cout.flush();
    ilt_result_free(r);
  }
  std::cerr << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diagnoses first-language transfer errors in learner sentences"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", ilt_version());

  Session session;
  app.add_option("-l,--lexicon", session.lexicon_path, "Bilingual lexicon file")
      ->required();

  std::vector<std::string> words;
  std::string stage;
  std::string format;
  std::string batch_path;
  bool strict = false;

  CLI::App* parse = app.add_subcommand("parse", "Parse one sentence without repairs");
  parse->add_option("sentence", words, "Sentence tokens")->required();
  parse->add_option("--stage", stage,
                    "Learner grammar stage: transfer, distinct or variable");

  CLI::App* diagnose =
      app.add_subcommand("diagnose", "Parse one sentence, repairing on failure");
  diagnose->add_option("sentence", words, "Sentence tokens")->required();
  diagnose->add_flag("--strict", strict, "Disable repair; strict parse only");

  CLI::App* batch =
      app.add_subcommand("batch", "Diagnose a file of sentences, one per line");
  batch->add_option("file", batch_path, "Sentence file, - for stdin")->required();

  CLI::App* lexcheck = app.add_subcommand("lexcheck", "Load and summarize the lexicon");

  CLI::App* repl = app.add_subcommand("repl", "Diagnose lines read interactively");

  for (CLI::App* sub : {diagnose, batch, repl}) {
    sub->add_option("--format", format, "Output format: text or machine lines")
        ->check(CLI::IsMember({"text", "machine"}));
    sub->add_option("--max-repairs", session.config.max_repairs,
                    "Transferred frames one parse may use");
    sub->add_option("--beam", session.config.beam, "Analyses kept after ranking");
  }
  for (CLI::App* sub : {parse, diagnose, batch, repl})
    sub->add_option("--edge-cap", session.config.edge_cap, "Chart size bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  if (format.empty()) format = repl->parsed() ? "text" : "machine";

  if (int code = session.load(); code != 0) return code;

  if (parse->parsed()) {
    session.config.strict_only = 1;
    if (!stage.empty()) {
      session.config.stage = stage.c_str();
      session.config.strict_only = 0;
    }
    return run_parse(session, join(words));
  }
  if (diagnose->parsed()) {
    session.config.strict_only = strict ? 1 : 0;
    return run_diagnose(session, join(words), format);
  }
  if (batch->parsed()) return run_batch(session, batch_path, format);
  if (lexcheck->parsed()) return run_lexcheck(session);
  if (repl->parsed()) return run_repl(session, format);
  return kExitError;
}
