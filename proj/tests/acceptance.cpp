// Acceptance gate: one line per criterion, nonzero exit when any fails.
// Time bounds are part of the criteria and are asserted here.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "ilt/avm.hpp"
#include "ilt/avm_text.hpp"
#include "ilt/chart.hpp"
#include "ilt/diagnose.hpp"
#include "ilt/grammar.hpp"
#include "ilt/lexicon.hpp"
#include "ilt/repair.hpp"
#include "support/oracles.hpp"
#include "support/random_fs.hpp"

#ifndef ILT_FIXTURES_DIR
#error "ILT_FIXTURES_DIR must point at the fixture lexicons"
#endif

namespace {

using namespace ilt;
using lex::Lexicon;
using lex::Stage;

std::string fixture(const std::string& name) {
  return std::string(ILT_FIXTURES_DIR) + "/" + name;
}

const Lexicon& no_lexicon() {
  static const Lexicon lx = Lexicon::load_file(fixture("no-es.lex"));
  return lx;
}

const Lexicon& en_lexicon() {
  static const Lexicon lx = Lexicon::load_file(fixture("en-fr.lex"));
  return lx;
}

const Lexicon& lexicon_named(const std::string& corpus) {
  return corpus == "corpus-no.txt" ? no_lexicon() : en_lexicon();
}

std::vector<std::string> corpus_lines(const std::string& name) {
  std::ifstream in(fixture(name));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    line = line.substr(0, line.find('#'));
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

const std::vector<std::string> kCorpora = {"corpus-no.txt", "corpus-en.txt"};

/** Collects failure details; stops recording once the report is long. */
struct Check {
  bool ok = true;
  std::string detail;

  void fail(const std::string& msg) {
    ok = false;
    if (detail.size() > 400) return;
    if (!detail.empty()) detail += "; ";
    detail += msg;
  }
  void expect(bool cond, const std::string& msg) {
    if (!cond) fail(msg);
  }
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0) out += ' ';
    out += words[i];
  }
  return out;
}

// 1. The dative-looking complement after a verb that wants a bare object:
// one rank-1 diagnosis naming the verb, its first-language frame, and the
// observed frame.
void transferred_preposition(Check& c) {
  auto t0 = Clock::now();
  diagnose::Report r = diagnose::run(no_lexicon(), "Jeg kunne ikke svare til Per");
  double elapsed = ms_since(t0);
  c.expect(r.status == diagnose::Status::Diagnosed, "sentence was not diagnosed");
  int rank1 = 0;
  for (const auto& d : r.diagnoses)
    if (d.rank == 1) ++rank1;
  c.expect(rank1 == 1, "want exactly one rank-1 diagnosis");
  if (!r.diagnoses.empty()) {
    const diagnose::Diagnosis& d = r.diagnoses.front();
    c.expect(d.il_lemma == "svare", "il_lemma " + d.il_lemma);
    c.expect(d.l1_lemma == "responder", "l1_lemma " + d.l1_lemma);
    c.expect(d.l1_frame == "⟨PP[a]⟩", "l1_frame " + d.l1_frame);
    c.expect(d.observed_frame == "⟨PP[til]⟩", "observed " + d.observed_frame);
    c.expect(d.classification == "lexical_transfer_subcat", "class " + d.classification);
    c.expect(d.cost == 1, "cost " + std::to_string(d.cost));
  }
  c.expect(elapsed < 100.0, "took " + std::to_string(elapsed) + " ms");
}

// 2. The supported idiom: possession verb with a bare noun object keyed to
// one lexeme in each language.
void transferred_idiom(Check& c) {
  auto t0 = Clock::now();
  diagnose::Report r = diagnose::run(en_lexicon(), "My friend has hunger");
  double elapsed = ms_since(t0);
  c.expect(r.status == diagnose::Status::Diagnosed, "sentence was not diagnosed");
  if (!r.diagnoses.empty()) {
    const diagnose::Diagnosis& d = r.diagnoses.front();
    c.expect(d.rank == 1, "rank " + std::to_string(d.rank));
    c.expect(d.classification == "idiom_transfer", "class " + d.classification);
    c.expect(d.l1_lemma == "avoir", "l1_lemma " + d.l1_lemma);
    c.expect(d.l1_frame == "⟨N[faim]⟩", "l1_frame " + d.l1_frame);
    c.expect(d.observed_frame == "⟨N[hunger]⟩", "observed " + d.observed_frame);
  } else {
    c.fail("no diagnoses");
  }
  c.expect(elapsed < 100.0, "took " + std::to_string(elapsed) + " ms");
}

// 3. Well-formed input must pass the strict grammar untouched.
void grammatical_controls(Check& c) {
  struct Control {
    const Lexicon* lx;
    const char* sentence;
  };
  for (const Control& control : {Control{&no_lexicon(), "Jeg kunne ikke svare Per"},
                                 Control{&en_lexicon(), "My friend is hungry"}}) {
    diagnose::Report r = diagnose::run(*control.lx, control.sentence);
    c.expect(r.status == diagnose::Status::NoDiagnosis,
             std::string(control.sentence) + ": status " + diagnose::status_name(r.status));
    c.expect(r.diagnoses.empty(), std::string(control.sentence) + ": diagnoses nonempty");
    repair::Outcome out = repair::analyze(*control.lx, chart::tokenize(control.sentence), {});
    c.expect(out.strict.status == chart::ParseStatus::Ok,
             std::string(control.sentence) + ": strict parse failed");
    c.expect(out.analyses.empty() && !out.repaired.has_value(),
             std::string(control.sentence) + ": repairs recorded");
  }
}

// 4. The learner grammar by acquisition stage: frame substitution accepts
// the transferred string and rejects the target one; the distinct stage
// does the reverse; the variable stage accepts both.
void stage_simulation(Check& c) {
  auto accepts = [&](Stage stage, const char* sentence) {
    chart::Options opts;
    opts.stage = stage;
    return chart::Parser(no_lexicon()).parse(chart::tokenize(sentence), opts).status ==
           chart::ParseStatus::Ok;
  };
  const char* transferred = "Jeg kunne ikke svare til Per";
  const char* target = "Jeg kunne ikke svare Per";
  c.expect(accepts(Stage::Transfer, transferred), "transfer stage rejects transferred string");
  c.expect(!accepts(Stage::Transfer, target), "transfer stage accepts target string");
  c.expect(!accepts(Stage::Distinct, transferred), "distinct stage accepts transferred string");
  c.expect(accepts(Stage::Distinct, target), "distinct stage rejects target string");
  c.expect(accepts(Stage::Variable, transferred), "variable stage rejects transferred string");
  c.expect(accepts(Stage::Variable, target), "variable stage rejects target string");
}

/**
 * Every sentence of at most max_len tokens the transfer-stage grammar
 * generates, mapped to the lexemes whose transferred frames can license
 * it. Built bottom-up from lexical signs over the target vocabulary.
 */
std::map<std::string, std::set<std::string>> transfer_language(const Lexicon& lx,
                                                               std::size_t max_len) {
  struct Item {
    std::vector<std::string> tokens;
    signs::Sign sign;
    std::set<std::string> transferred;
  };
  std::vector<std::vector<Item>> by_len(max_len + 1);
  std::set<std::string> seen;

  auto add = [&](std::vector<std::string> tokens, signs::Sign sign,
                 std::set<std::string> transferred) {
    std::string key = join(tokens) + '\n' + avm::print(sign.fs());
    for (const std::string& lemma : transferred) key += '\n' + lemma;
    if (!seen.insert(key).second) return;
    by_len[tokens.size()].push_back({std::move(tokens), std::move(sign), std::move(transferred)});
  };

  std::set<std::string> vocab;
  for (const lex::LexicalEntry& entry : lx.entries())
    if (entry.lang == signs::Lang::Lt)
      for (const lex::FormSpec& form : entry.forms) vocab.insert(form.surface);

  for (const std::string& token : vocab) {
    std::set<std::string> strict_keys;
    for (const auto& [sign, hit] : lx.signs_for(token))
      for (const signs::Sign& variant : grammar::optional_skip(sign))
        strict_keys.insert(avm::print(variant.fs()));
    for (const auto& [sign, hit] : lx.il_signs_for(token, Stage::Transfer)) {
      for (const signs::Sign& variant : grammar::optional_skip(sign)) {
        std::set<std::string> label;
        if (strict_keys.count(avm::print(variant.fs())) == 0) label.insert(hit.entry->lemma);
        add({token}, variant, label);
      }
    }
  }

  for (std::size_t len = 2; len <= max_len; ++len) {
    for (std::size_t left = 1; left < len; ++left) {
      for (const Item& a : by_len[left]) {
        for (const Item& b : by_len[len - left]) {
          for (grammar::Combined& comb : grammar::combine_all(a.sign, b.sign)) {
            std::vector<std::string> tokens = a.tokens;
            tokens.insert(tokens.end(), b.tokens.begin(), b.tokens.end());
            std::set<std::string> transferred = a.transferred;
            transferred.insert(b.transferred.begin(), b.transferred.end());
            add(std::move(tokens), std::move(comb.sign), std::move(transferred));
          }
        }
      }
    }
  }

  std::map<std::string, std::set<std::string>> sentences;
  for (std::size_t len = 1; len <= max_len; ++len)
    for (const Item& item : by_len[len])
      if (item.sign.is_root_clause()) {
        auto& lemmas = sentences[join(item.tokens)];
        lemmas.insert(item.transferred.begin(), item.transferred.end());
      }
  return sentences;
}

// 5. Whatever the transfer-stage grammar can say and the strict grammar
// rejects must come back diagnosed, naming a lexeme able to generate it.
void learner_completeness(Check& c) {
  auto t0 = Clock::now();
  for (const std::string& corpus : kCorpora) {
    const Lexicon& lx = lexicon_named(corpus);
    int rejected = 0;
    for (const auto& [sentence, lemmas] : transfer_language(lx, 7)) {
      auto tokens = chart::tokenize(sentence);
      if (chart::Parser(lx).parse(tokens, {}).status == chart::ParseStatus::Ok) continue;
      ++rejected;
      diagnose::Report r = diagnose::run(lx, sentence);
      if (r.status != diagnose::Status::Diagnosed) {
        c.fail("undiagnosed: " + sentence);
        continue;
      }
      bool named = false;
      for (const diagnose::Diagnosis& d : r.diagnoses)
        if (lemmas.count(d.il_lemma) != 0) named = true;
      if (!named) c.fail("no generating lexeme named: " + sentence);
    }
    c.expect(rejected >= 1, corpus + ": no strict-rejected learner sentence");
  }
  double elapsed = ms_since(t0);
  c.expect(elapsed < 10000.0, "took " + std::to_string(elapsed) + " ms");
}

// 6. The unification lattice on random structures: identity, idempotence,
// commutativity, associativity with failure absorption, and sampled
// least-upper-bound.
void unification_algebra(Check& c) {
  auto t0 = Clock::now();
  testsupport::RandomFs gen(20250116);
  std::vector<avm::FeatureStructure> pool;
  pool.reserve(1000);
  for (int i = 0; i < 1000; ++i) pool.push_back(gen.next());
  const avm::FeatureStructure empty = *avm::read("[]").fs;

  auto eq_opt = [](const std::optional<avm::FeatureStructure>& x,
                   const std::optional<avm::FeatureStructure>& y) {
    if (x.has_value() != y.has_value()) return false;
    return !x || avm::equivalent(*x, *y);
  };

  for (std::size_t i = 0; i < pool.size(); ++i) {
    const avm::FeatureStructure& a = pool[i];
    const avm::FeatureStructure& b = pool[(i * 7 + 1) % pool.size()];
    const avm::FeatureStructure& d = pool[(i * 13 + 2) % pool.size()];
    std::string at = " at " + std::to_string(i);

    auto a_id = avm::unify(a, empty);
    c.expect(a_id && avm::equivalent(*a_id, a), "identity" + at);
    auto a_self = avm::unify(a, a);
    c.expect(a_self && avm::equivalent(*a_self, a), "idempotence" + at);

    auto ab = avm::unify(a, b);
    auto ba = avm::unify(b, a);
    c.expect(eq_opt(ab, ba), "commutativity" + at);

    auto bd = avm::unify(b, d);
    std::optional<avm::FeatureStructure> left, right;
    if (ab) left = avm::unify(*ab, d);
    if (bd) right = avm::unify(a, *bd);
    c.expect(eq_opt(left, right), "associativity" + at);

    if (ab) {
      c.expect(avm::subsumes(a, *ab) && avm::subsumes(b, *ab), "upper bound" + at);
      const avm::FeatureStructure& w = pool[(i * 31 + 5) % pool.size()];
      if (avm::subsumes(a, w) && avm::subsumes(b, w))
        c.expect(avm::subsumes(*ab, w), "least upper bound" + at);
    }
    if (!c.ok && c.detail.size() > 400) break;
  }
  double elapsed = ms_since(t0);
  c.expect(elapsed < 5000.0, "took " + std::to_string(elapsed) + " ms");
}

// 7. Ranked repair against brute force over transferred-frame position
// subsets: the beam's best analysis has the oracle's minimal cost and one
// of its minimal position sets.
void repair_oracle(Check& c) {
  auto t0 = Clock::now();
  for (const std::string& corpus : kCorpora) {
    const Lexicon& lx = lexicon_named(corpus);
    for (const std::string& sentence : corpus_lines(corpus)) {
      auto tokens = chart::tokenize(sentence);
      auto [min_size, sets] = oracle::minimal_enabling_sets(lx, tokens);
      for (int k = 1; k <= 2; ++k) {
        repair::Options opts;
        opts.max_cost = k;
        repair::Outcome out = repair::analyze(lx, tokens, opts);
        std::string at = sentence + " (K=" + std::to_string(k) + ")";
        if (min_size <= 0 || min_size > k) {
          c.expect(out.analyses.empty(), "unexpected analyses: " + at);
          continue;
        }
        if (out.analyses.empty()) {
          c.fail("no analyses: " + at);
          continue;
        }
        const repair::Analysis& best = out.analyses.front();
        c.expect(best.cost == min_size, "cost mismatch: " + at);
        std::set<std::size_t> positions;
        for (const repair::RepairRecord& r : best.repairs) positions.insert(r.word_start);
        c.expect(sets.count(positions) != 0, "positions not minimal: " + at);
      }
    }
  }
  double elapsed = ms_since(t0);
  c.expect(elapsed < 10000.0, "took " + std::to_string(elapsed) + " ms");
}

// 8. Defaults never hit the edge cap on fixture input, and the repaired
// chart stays within the proven growth envelope.
void explosion_control(Check& c) {
  for (const std::string& corpus : kCorpora) {
    const Lexicon& lx = lexicon_named(corpus);
    for (const std::string& sentence : corpus_lines(corpus)) {
      auto tokens = chart::tokenize(sentence);
      repair::Outcome out = repair::analyze(lx, tokens, {});
      c.expect(out.strict.status != chart::ParseStatus::EdgeCapExceeded,
               sentence + ": strict chart hit the cap");
      if (!out.repaired) continue;
      c.expect(out.repaired->status != chart::ParseStatus::EdgeCapExceeded,
               sentence + ": repair chart hit the cap");
      std::size_t malleable = 0;
      for (const std::string& token : tokens)
        if (!lx.mal_signs_for(token).empty()) ++malleable;
      c.expect(out.repaired->edges.size() <= out.strict.edges.size() * (1 + malleable) * 4,
               sentence + ": repair chart grew past the bound");
    }
  }
}

// 9. Three serializations round-trip: lexicon text, structure notation,
// and machine diagnosis records.
void format_round_trips(Check& c) {
  for (const char* name : {"no-es.lex", "en-fr.lex", "fr.lex"}) {
    Lexicon lx = Lexicon::load_file(fixture(name));
    std::string once = lx.print();
    c.expect(Lexicon::load_string(once, name).print() == once,
             std::string(name) + ": print is not a loader fixpoint");
  }

  testsupport::RandomFs gen(20250117);
  for (int i = 0; i < 500; ++i) {
    avm::FeatureStructure x = gen.next();
    avm::ReadResult back = avm::read(avm::print(x));
    if (!back.fs) {
      c.fail("structure " + std::to_string(i) + " did not read back: " + back.error);
      continue;
    }
    c.expect(avm::equivalent(*back.fs, x),
             "structure " + std::to_string(i) + " changed over print/read");
  }

  for (const std::string& corpus : kCorpora) {
    const Lexicon& lx = lexicon_named(corpus);
    for (const std::string& sentence : corpus_lines(corpus)) {
      for (const std::string& line : diagnose::json_lines(diagnose::run(lx, sentence))) {
        auto parsed = nlohmann::ordered_json::parse(line, nullptr, false);
        c.expect(!parsed.is_discarded() && parsed.dump() == line,
                 sentence + ": machine record changed over parse/dump");
      }
    }
  }
}

// 10. The first-language rule turning human bare objects into dative
// prepositional ones: applies once, skips inanimate frames, and its
// output is a fixed point.
void human_object_rule(Check& c) {
  Lexicon lx = Lexicon::load_string(
      "languages lt=no l1=es\n"
      "roles greet: agent theme\n"
      "roles see: agent theme\n"
      "prep til lang=lt\n"
      "prep a lang=l1\n"
      "noun Per lang=lt proper human=+\n"
      "verb hilse lang=lt sem=greet subcat=(np:theme)\n"
      "verb se lang=lt sem=see subcat=(np:theme)\n"
      "verb saludar lang=l1 sem=greet subcat=(np:theme +human)\n"
      "verb ver lang=l1 sem=see subcat=(np:theme -human)\n"
      "rule es-human-object-pp lang=l1\n"
      "link prep a -> til\n"
      "bilingual hilse <-> saludar stage=transfer\n"
      "bilingual se <-> ver stage=transfer\n");

  const lex::LexicalEntry* human = lx.entry("saludar", signs::Lang::L1);
  auto derived = lex::apply_lexical_rule("es-human-object-pp", *human, lx);
  if (derived.size() == 1) {
    c.expect(derived[0].comps.size() == 1, "derived frame arity changed");
    if (!derived[0].comps.empty()) {
      c.expect(derived[0].comps[0].cat == signs::SpecCat::PP, "derived complement is not a pp");
      c.expect(derived[0].comps[0].pform == "a", "derived pform " + derived[0].comps[0].pform);
      c.expect(derived[0].comps[0].role == "theme", "derived role " + derived[0].comps[0].role);
    }
    c.expect(lex::apply_lexical_rule("es-human-object-pp", derived[0], lx).empty(),
             "rule output is not a fixed point");
  } else {
    c.fail("human-object frame derived " + std::to_string(derived.size()) + " variants");
  }

  const lex::LexicalEntry* inanimate = lx.entry("ver", signs::Lang::L1);
  c.expect(lex::apply_lexical_rule("es-human-object-pp", *inanimate, lx).empty(),
           "rule touched an inanimate-object frame");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    void (*fn)(Check&);
  };
  const std::vector<Criterion> criteria = {
      {"transferred preposition frame diagnosis", transferred_preposition},
      {"transferred idiom diagnosis", transferred_idiom},
      {"grammatical controls stay clean", grammatical_controls},
      {"acquisition stage simulation", stage_simulation},
      {"learner grammar completeness sweep", learner_completeness},
      {"unification algebra properties", unification_algebra},
      {"repair matches the subset oracle", repair_oracle},
      {"chart growth stays bounded", explosion_control},
      {"format round trips", format_round_trips},
      {"human object preposition rule", human_object_rule},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    auto t0 = Clock::now();
    criteria[i].fn(c);
    double elapsed = ms_since(t0);
    std::printf("[%s] %2zu. %s (%.0f ms)\n", c.ok ? "PASS" : "FAIL", i + 1, criteria[i].name,
                elapsed);
    if (!c.ok) {
      std::printf("       %s\n", c.detail.c_str());
      ++failed;
    }
  }
  if (failed > 0) std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
