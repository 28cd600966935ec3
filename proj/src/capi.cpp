#include "ilt.h"

#include <cstdio>
#include <cstring>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "ilt/chart.hpp"
#include "ilt/diagnose.hpp"
#include "ilt/semantics.hpp"

using namespace ilt;

struct ilt_lexicon {
  lex::Lexicon impl;
};

struct ilt_result {
  ilt_status status = ILT_NO_ANALYSIS;
  diagnose::Report report;
  std::string semantics;
  std::string tree;
  std::string text;
  std::vector<std::string> lines;
  std::vector<std::string> lt_frames_joined;
  int unknown_index = -1;
  std::string unknown_token;
};

namespace {

void write_err(char* errbuf, size_t errbuf_len, const std::string& message) {
  if (errbuf == nullptr || errbuf_len == 0) return;
  std::snprintf(errbuf, errbuf_len, "%s", message.c_str());
}

ilt_lexicon* load_guarded(char* errbuf, size_t errbuf_len,
                          lex::Lexicon (*loader)(const std::string&), const std::string& arg) {
  try {
    return new ilt_lexicon{loader(arg)};
  } catch (const lex::LexiconError& e) {
    write_err(errbuf, errbuf_len, e.what());  // already "CODE: detail (line N)"
    return nullptr;
  } catch (const std::exception& e) {
    write_err(errbuf, errbuf_len, std::string("IO_ERROR: ") + e.what());
    return nullptr;
  }
}

ilt_status from_parse_status(chart::ParseStatus status) {
  switch (status) {
    case chart::ParseStatus::Ok: return ILT_OK;
    case chart::ParseStatus::NoParse: return ILT_NO_PARSE;
    case chart::ParseStatus::UnknownWord: return ILT_UNKNOWN_WORD;
    case chart::ParseStatus::EdgeCapExceeded: return ILT_EDGE_CAP_EXCEEDED;
  }
  return ILT_NO_PARSE;
}

ilt_status from_diagnose_status(diagnose::Status status) {
  switch (status) {
    case diagnose::Status::NoDiagnosis: return ILT_OK;
    case diagnose::Status::Diagnosed: return ILT_DIAGNOSED;
    case diagnose::Status::NoAnalysis: return ILT_NO_ANALYSIS;
    case diagnose::Status::UnknownWord: return ILT_UNKNOWN_WORD;
    case diagnose::Status::EdgeCapExceeded: return ILT_EDGE_CAP_EXCEEDED;
  }
  return ILT_NO_ANALYSIS;
}

/** Fills a result from a plain parse, for stage and strict-only modes. */
void fill_from_parse(ilt_result& r, const lex::Lexicon& lx, const std::string& sentence,
                     const chart::Result& parsed) {
  r.status = from_parse_status(parsed.status);
  std::ostringstream text;
  text << "sentence: " << sentence << '\n';
  if (parsed.status == chart::ParseStatus::Ok) {
    const chart::Edge& root = parsed.edges[static_cast<std::size_t>(parsed.roots[0])];
    r.semantics = sem::clause_semantics(root.sign, lx);
    r.tree = chart::render_tree(parsed, parsed.roots[0]);
    text << "status: ok\n" << r.tree << '\n' << "semantics: " << r.semantics << '\n';
  } else if (parsed.status == chart::ParseStatus::UnknownWord) {
    r.unknown_index = static_cast<int>(parsed.unknown_index);
    r.unknown_token = parsed.unknown_token;
    text << "status: unknown_word\n"
         << "unknown word: " << r.unknown_token << " (word " << parsed.unknown_index + 1
         << ")\n";
  } else if (parsed.status == chart::ParseStatus::EdgeCapExceeded) {
    text << "status: edge_cap_exceeded\n";
  } else {
    text << "status: no_parse\n";
  }
  r.text = text.str();
}

}  // namespace

extern "C" {

const char* ilt_status_name(ilt_status status) {
  switch (status) {
    case ILT_OK: return "OK";
    case ILT_DIAGNOSED: return "DIAGNOSED";
    case ILT_NO_ANALYSIS: return "NO_ANALYSIS";
    case ILT_UNKNOWN_WORD: return "UNKNOWN_WORD";
    case ILT_EDGE_CAP_EXCEEDED: return "EDGE_CAP_EXCEEDED";
    case ILT_NO_PARSE: return "NO_PARSE";
    case ILT_LEXICON_ERROR: return "LEXICON_ERROR";
    case ILT_IO_ERROR: return "IO_ERROR";
    case ILT_USAGE_ERROR: return "USAGE_ERROR";
  }
  return "USAGE_ERROR";
}

const char* ilt_version(void) { return "0.1.0"; }

void ilt_config_init(ilt_config* config) {
  if (config == nullptr) return;
  config->max_repairs = 2;
  config->beam = 16;
  config->edge_cap = 10000;
  config->stage = nullptr;
  config->strict_only = 0;
}

ilt_lexicon* ilt_lexicon_load(const char* path, char* errbuf, size_t errbuf_len) {
  if (path == nullptr) {
    write_err(errbuf, errbuf_len, "USAGE_ERROR: null path");
    return nullptr;
  }
  return load_guarded(errbuf, errbuf_len, &lex::Lexicon::load_file, path);
}

ilt_lexicon* ilt_lexicon_load_string(const char* text, char* errbuf, size_t errbuf_len) {
  if (text == nullptr) {
    write_err(errbuf, errbuf_len, "USAGE_ERROR: null text");
    return nullptr;
  }
  auto loader = [](const std::string& s) { return lex::Lexicon::load_string(s); };
  return load_guarded(errbuf, errbuf_len, loader, text);
}

void ilt_lexicon_free(ilt_lexicon* lexicon) { delete lexicon; }

const char* ilt_lexicon_lt_language(const ilt_lexicon* lexicon) {
  return lexicon == nullptr ? "" : lexicon->impl.lt_language().c_str();
}

const char* ilt_lexicon_l1_language(const ilt_lexicon* lexicon) {
  return lexicon == nullptr ? "" : lexicon->impl.l1_language().c_str();
}

int ilt_lexicon_entry_count(const ilt_lexicon* lexicon) {
  return lexicon == nullptr ? 0 : static_cast<int>(lexicon->impl.entries().size());
}

int ilt_lexicon_transfer_frame_count(const ilt_lexicon* lexicon) {
  return lexicon == nullptr ? 0 : static_cast<int>(lexicon->impl.mal_lexicon().size());
}

int ilt_lexicon_warning_count(const ilt_lexicon* lexicon) {
  return lexicon == nullptr ? 0 : static_cast<int>(lexicon->impl.warnings().size());
}

const char* ilt_lexicon_warning(const ilt_lexicon* lexicon, int index) {
  if (lexicon == nullptr || index < 0 ||
      static_cast<std::size_t>(index) >= lexicon->impl.warnings().size())
    return nullptr;
  return lexicon->impl.warnings()[static_cast<std::size_t>(index)].c_str();
}

ilt_result* ilt_diagnose(const ilt_lexicon* lexicon, const char* sentence,
                         const ilt_config* config, char* errbuf, size_t errbuf_len) {
  if (lexicon == nullptr || sentence == nullptr) {
    write_err(errbuf, errbuf_len, "USAGE_ERROR: null lexicon or sentence");
    return nullptr;
  }
  ilt_config defaults;
  ilt_config_init(&defaults);
  const ilt_config& cfg = config == nullptr ? defaults : *config;
  if (cfg.max_repairs < 0 || cfg.beam < 1 || cfg.edge_cap < 1) {
    write_err(errbuf, errbuf_len, "USAGE_ERROR: bad limits");
    return nullptr;
  }
  std::optional<lex::Stage> stage;
  if (cfg.stage != nullptr) {
    stage = lex::stage_from_name(cfg.stage);
    if (!stage) {
      write_err(errbuf, errbuf_len, std::string("USAGE_ERROR: unknown stage ") + cfg.stage);
      return nullptr;
    }
  }

  auto* r = new ilt_result;
  const lex::Lexicon& lx = lexicon->impl;
  std::vector<std::string> tokens = chart::tokenize(sentence);

  if (stage || cfg.strict_only != 0) {
    chart::Options opts;
    opts.edge_cap = static_cast<std::size_t>(cfg.edge_cap);
    opts.stage = stage;
    fill_from_parse(*r, lx, sentence, chart::Parser(lx).parse(tokens, opts));
    return r;
  }

  diagnose::Options opts;
  opts.max_cost = cfg.max_repairs;
  opts.beam = static_cast<std::size_t>(cfg.beam);
  opts.edge_cap = static_cast<std::size_t>(cfg.edge_cap);
  r->report = diagnose::run(lx, sentence, opts);
  r->status = from_diagnose_status(r->report.status);
  r->semantics = r->report.semantics;
  r->tree = r->report.tree;
  r->text = diagnose::text_report(r->report);
  r->lines = diagnose::json_lines(r->report);
  if (r->report.status == diagnose::Status::UnknownWord) {
    r->unknown_index = static_cast<int>(r->report.unknown_index);
    r->unknown_token = r->report.unknown_token;
  }
  r->lt_frames_joined.reserve(r->report.diagnoses.size());
  for (const diagnose::Diagnosis& d : r->report.diagnoses) {
    std::string joined;
    for (std::size_t i = 0; i < d.lt_frames.size(); ++i) {
      if (i > 0) joined += " | ";
      joined += d.lt_frames[i];
    }
    r->lt_frames_joined.push_back(std::move(joined));
  }
  return r;
}

void ilt_result_free(ilt_result* result) { delete result; }

ilt_status ilt_result_status(const ilt_result* result) {
  return result == nullptr ? ILT_USAGE_ERROR : result->status;
}

const char* ilt_result_semantics(const ilt_result* result) {
  return result == nullptr ? "" : result->semantics.c_str();
}

const char* ilt_result_tree(const ilt_result* result) {
  return result == nullptr ? "" : result->tree.c_str();
}

int ilt_result_unknown_index(const ilt_result* result) {
  return result == nullptr ? -1 : result->unknown_index;
}

const char* ilt_result_unknown_token(const ilt_result* result) {
  return result == nullptr ? "" : result->unknown_token.c_str();
}

const char* ilt_result_text(const ilt_result* result) {
  return result == nullptr ? "" : result->text.c_str();
}

int ilt_result_line_count(const ilt_result* result) {
  return result == nullptr ? 0 : static_cast<int>(result->lines.size());
}

const char* ilt_result_line(const ilt_result* result, int index) {
  if (result == nullptr || index < 0 ||
      static_cast<std::size_t>(index) >= result->lines.size())
    return nullptr;
  return result->lines[static_cast<std::size_t>(index)].c_str();
}

int ilt_result_diagnosis_count(const ilt_result* result) {
  return result == nullptr ? 0 : static_cast<int>(result->report.diagnoses.size());
}

int ilt_result_diagnosis(const ilt_result* result, int index, ilt_diagnosis_view* out) {
  if (result == nullptr || out == nullptr || index < 0 ||
      static_cast<std::size_t>(index) >= result->report.diagnoses.size())
    return -1;
  const diagnose::Diagnosis& d = result->report.diagnoses[static_cast<std::size_t>(index)];
  out->il_lemma = d.il_lemma.c_str();
  out->l1_lemma = d.l1_lemma.c_str();
  out->observed_frame = d.observed_frame.c_str();
  out->l1_frame = d.l1_frame.c_str();
  out->lt_frames = result->lt_frames_joined[static_cast<std::size_t>(index)].c_str();
  out->classification = d.classification.c_str();
  out->paraphrase = d.paraphrase.c_str();
  out->rank = d.rank;
  out->cost = d.cost;
  out->span_start = static_cast<int>(d.span_start);
  out->span_end = static_cast<int>(d.span_end);
  return 0;
}

}  // extern "C"
