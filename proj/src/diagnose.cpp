#include "ilt/diagnose.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

#include "ilt/semantics.hpp"

namespace ilt::diagnose {
namespace {

using nlohmann::ordered_json;

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i];
  }
  return out;
}

std::vector<std::string> target_frames(const lex::Lexicon& lx, const std::string& lemma) {
  std::vector<std::string> out;
  for (const lex::LexicalEntry* e : lx.frames_of(lemma, signs::Lang::Lt)) {
    std::string frame = signs::frame_summary(e->comps);
    if (std::find(out.begin(), out.end(), frame) == out.end()) out.push_back(frame);
  }
  return out;
}

/**
 * A rewrite exists only for a one-slot NP/PP frame mismatch: a transferred
 * PP drops its preposition, a transferred bare object gains the target one.
 */
std::string paraphrase_for(const lex::Lexicon& lx, const std::vector<std::string>& tokens,
                           const repair::RepairRecord& r) {
  if (r.comps.size() != 1) return "";
  std::vector<const signs::SpecDesc*> slots;
  for (const signs::SpecDesc& s : r.mal->subcat)
    if (!s.subject) slots.push_back(&s);
  if (slots.size() != 1) return "";
  const signs::SpecDesc& got = *slots[0];
  std::size_t comp_start = r.comps[0].first;
  for (const lex::LexicalEntry* e : lx.frames_of(r.mal->tmpl.il_lemma, signs::Lang::Lt)) {
    if (e->comps.size() != 1) continue;
    const signs::SpecDesc& want = e->comps[0];
    if (got.cat == signs::SpecCat::PP && want.cat == signs::SpecCat::NP) {
      std::vector<std::string> out;
      for (std::size_t i = 0; i < tokens.size(); ++i)
        if (i != comp_start) out.push_back(tokens[i]);
      return join_tokens(out);
    }
    if (got.cat == signs::SpecCat::NP && want.cat == signs::SpecCat::PP) {
      std::vector<std::string> out;
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i == comp_start) out.push_back(want.pform);
        out.push_back(tokens[i]);
      }
      return join_tokens(out);
    }
  }
  return "";
}

void describe_best(Report& report, const chart::Result& result, int root,
                   const lex::Lexicon& lx) {
  const chart::Edge& e = result.edges[static_cast<std::size_t>(root)];
  report.semantics = sem::clause_semantics(e.sign, lx);
  report.tree = chart::render_tree(result, root);
}

}  // namespace

const char* status_name(Status status) {
  switch (status) {
    case Status::NoDiagnosis: return "no_diagnosis";
    case Status::Diagnosed: return "diagnosed";
    case Status::NoAnalysis: return "no_analysis";
    case Status::UnknownWord: return "unknown_word";
    case Status::EdgeCapExceeded: return "edge_cap_exceeded";
  }
  return "no_analysis";
}

Report run(const lex::Lexicon& lexicon, const std::string& sentence, const Options& opts) {
  Report report;
  report.sentence = sentence;
  report.tokens = chart::tokenize(sentence);
  if (report.tokens.empty()) {
    report.status = Status::NoAnalysis;
    return report;
  }

  repair::Options ropts;
  ropts.max_cost = opts.max_cost;
  ropts.beam = opts.beam;
  ropts.edge_cap = opts.edge_cap;
  repair::Outcome out = repair::analyze(lexicon, report.tokens, ropts);

  switch (out.strict.status) {
    case chart::ParseStatus::Ok:
      report.status = Status::NoDiagnosis;
      describe_best(report, out.strict, out.strict.roots[0], lexicon);
      return report;
    case chart::ParseStatus::UnknownWord:
      report.status = Status::UnknownWord;
      report.unknown_index = out.strict.unknown_index;
      report.unknown_token = out.strict.unknown_token;
      return report;
    case chart::ParseStatus::EdgeCapExceeded:
      report.status = Status::EdgeCapExceeded;
      return report;
    case chart::ParseStatus::NoParse: break;
  }

  if (!out.repaired || out.repaired->status == chart::ParseStatus::NoParse ||
      out.analyses.empty()) {
    report.status = out.repaired && out.repaired->status == chart::ParseStatus::EdgeCapExceeded
                        ? Status::EdgeCapExceeded
                        : Status::NoAnalysis;
    return report;
  }

  report.status = Status::Diagnosed;
  describe_best(report, *out.repaired, out.analyses[0].root_edge, lexicon);
  for (std::size_t i = 0; i < out.analyses.size(); ++i) {
    const repair::Analysis& a = out.analyses[i];
    for (const repair::RepairRecord& r : a.repairs) {
      Diagnosis d;
      d.il_lemma = r.mal->tmpl.il_lemma;
      d.l1_lemma = r.mal->tmpl.l1_lemma;
      d.observed_frame = r.mal->tmpl.mal_frame;
      d.l1_frame = r.mal->tmpl.l1_frame;
      d.lt_frames = target_frames(lexicon, d.il_lemma);
      d.classification = lex::repair_kind_name(r.mal->tmpl.kind);
      d.rank = static_cast<int>(i) + 1;
      d.cost = a.cost;
      d.span_start = r.word_start;
      d.span_end = r.word_end;
      d.paraphrase = paraphrase_for(lexicon, report.tokens, r);
      report.diagnoses.push_back(std::move(d));
    }
  }
  return report;
}

std::vector<std::string> json_lines(const Report& report) {
  auto base = [&report]() {
    ordered_json j;
    j["sentence"] = report.sentence;
    j["span_start"] = nullptr;
    j["span_end"] = nullptr;
    j["il_lemma"] = nullptr;
    j["observed_frame"] = nullptr;
    j["lt_frames"] = nullptr;
    j["l1_lemma"] = nullptr;
    j["l1_frame"] = nullptr;
    j["classification"] = nullptr;
    j["rank"] = nullptr;
    j["cost"] = nullptr;
    j["paraphrase"] = nullptr;
    j["status"] = status_name(report.status);
    return j;
  };

  std::vector<std::string> lines;
  if (report.status == Status::Diagnosed) {
    for (const Diagnosis& d : report.diagnoses) {
      ordered_json j = base();
      j["span_start"] = d.span_start;
      j["span_end"] = d.span_end;
      j["il_lemma"] = d.il_lemma;
      j["observed_frame"] = d.observed_frame;
      j["lt_frames"] = d.lt_frames;
      j["l1_lemma"] = d.l1_lemma;
      j["l1_frame"] = d.l1_frame;
      j["classification"] = d.classification;
      j["rank"] = d.rank;
      j["cost"] = d.cost;
      if (!d.paraphrase.empty()) j["paraphrase"] = d.paraphrase;
      lines.push_back(j.dump());
    }
    return lines;
  }

  ordered_json j = base();
  if (report.status == Status::NoDiagnosis) {
    j["classification"] = "no_diagnosis";
    j["cost"] = 0;
  }
  if (report.status == Status::UnknownWord) {
    j["span_start"] = report.unknown_index;
    j["span_end"] = report.unknown_index + 1;
  }
  lines.push_back(j.dump());
  return lines;
}

std::string text_report(const Report& report) {
  std::ostringstream out;
  out << "sentence: " << report.sentence << '\n';
  out << "status: " << status_name(report.status) << '\n';
  if (report.status == Status::UnknownWord) {
    out << "unknown word: " << report.unknown_token << " (word " << report.unknown_index + 1
        << ")\n";
    return out.str();
  }
  for (const Diagnosis& d : report.diagnoses) {
    out << d.rank << ". " << d.il_lemma << ": observed " << d.observed_frame << ", expected ";
    for (std::size_t i = 0; i < d.lt_frames.size(); ++i) {
      if (i > 0) out << " or ";
      out << d.lt_frames[i];
    }
    out << "; frame of " << d.l1_lemma << ' ' << d.l1_frame << " (" << d.classification
        << ", cost " << d.cost << ", words " << d.span_start + 1 << ".." << d.span_end << ")\n";
    if (!d.paraphrase.empty()) out << "   suggest: " << d.paraphrase << '\n';
  }
  if (!report.semantics.empty()) out << "semantics: " << report.semantics << '\n';
  return out.str();
}

}  // namespace ilt::diagnose
