#include "doctest.h"

#include <random>
#include <string>

#include "ilt/avm_text.hpp"
#include "ilt/chart.hpp"
#include "ilt/semantics.hpp"
#include "support/oracles.hpp"

using namespace ilt;
using namespace ilt::chart;
using lex::Lexicon;

namespace {

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

Result parse(const Lexicon& lx, const std::string& sentence, Options opts = {}) {
  return Parser(lx).parse(tokenize(sentence), opts);
}

const Edge& first_root(const Result& r) {
  REQUIRE_FALSE(r.roots.empty());
  return r.edges[static_cast<std::size_t>(r.roots[0])];
}

std::string root_sem(const Lexicon& lx, const Result& r) {
  return sem::clause_semantics(first_root(r).sign, lx);
}

}  // namespace

TEST_CASE("tokenize splits on whitespace and trims punctuation") {
  CHECK(tokenize("Jeg svarte Per") == std::vector<std::string>{"Jeg", "svarte", "Per"});
  CHECK(tokenize("  Jeg\tsvarte  Per.  ") ==
        std::vector<std::string>{"Jeg", "svarte", "Per"});
  CHECK(tokenize("\"Jeg svarte Per!\"") ==
        std::vector<std::string>{"Jeg", "svarte", "Per"});
  CHECK(tokenize("...") == std::vector<std::string>{});
  CHECK(tokenize("") == std::vector<std::string>{});
  CHECK(tokenize("på") == std::vector<std::string>{"på"});
}

TEST_CASE("a grammatical sentence parses strictly") {
  const Lexicon& lx = no_lexicon();
  Result r = parse(lx, "Jeg svarte Per");
  REQUIRE(r.status == ParseStatus::Ok);
  REQUIRE(r.roots.size() == 1);
  const Edge& root = first_root(r);
  CHECK(root.cost == 0);
  CHECK(root.mals.empty());
  CHECK(render_tree(r, root.id) == "(S (NP Jeg) (VP[fin] (V svarte) (NP Per)))");
  CHECK(root_sem(lx, r) == "answer(agent=jeg, theme=Per)");
}

TEST_CASE("negation scopes over the whole clause") {
  const Lexicon& lx = no_lexicon();
  Result r = parse(lx, "Jeg kunne ikke svare Per");
  REQUIRE(r.status == ParseStatus::Ok);
  CHECK(render_tree(r, first_root(r).id) ==
        "(S (NP Jeg) (VP[fin] (V kunne) (VP[inf] (AP ikke) (VP[inf] (V svare) (NP Per)))))");
  CHECK(root_sem(lx, r) == "neg(soa=able(agent=jeg, soa=answer(agent=jeg, theme=Per)))");
}

TEST_CASE("prepositional complements parse strictly") {
  const Lexicon& lx = no_lexicon();
  Result r = parse(lx, "Jeg ventet på Per");
  REQUIRE(r.status == ParseStatus::Ok);
  CHECK(first_root(r).cost == 0);
  CHECK(root_sem(lx, r) == "await(agent=jeg, theme=Per)");
  CHECK(parse(lx, "Jeg kunne ikke vente på Per").status == ParseStatus::Ok);
}

TEST_CASE("ungrammatical input stays unparsed without repairs") {
  const Lexicon& lx = no_lexicon();
  CHECK(parse(lx, "Jeg kunne ikke svare til Per").status == ParseStatus::NoParse);
  CHECK(parse(lx, "Jeg ventet Per").status == ParseStatus::NoParse);
  CHECK(parse(lx, "svarte Jeg Per").status == ParseStatus::NoParse);
  CHECK(parse(lx, "Jeg svarte").status == ParseStatus::NoParse);
}

TEST_CASE("transferred frames repair the parse at cost one") {
  const Lexicon& lx = no_lexicon();
  Options repair;
  repair.max_cost = 2;
  Result r = parse(lx, "Jeg kunne ikke svare til Per", repair);
  REQUIRE(r.status == ParseStatus::Ok);
  const Edge& root = first_root(r);
  CHECK(root.cost == 1);
  REQUIRE(root.mals.size() == 1);
  CHECK(root.mals[0]->tmpl.il_lemma == "svare");
  CHECK(root.mals[0]->tmpl.mal_frame == "⟨PP[til]⟩");
  CHECK(render_tree(r, root.id).find("(V* svare)") != std::string::npos);
  CHECK(root_sem(lx, r) ==
        "neg(soa=able(agent=jeg, soa=answer(agent=jeg, theme=Per)))");

  Result v = parse(lx, "Jeg ventet Per", repair);
  REQUIRE(v.status == ParseStatus::Ok);
  CHECK(first_root(v).cost == 1);
  CHECK(first_root(v).mals[0]->tmpl.il_lemma == "vente");
  CHECK(first_root(v).mals[0]->tmpl.mal_frame == "⟨NP⟩");
}

TEST_CASE("a grammatical sentence keeps its zero cost parse under repair") {
  const Lexicon& lx = no_lexicon();
  Options repair;
  repair.max_cost = 2;
  Result r = parse(lx, "Jeg ventet på Per", repair);
  REQUIRE(r.status == ParseStatus::Ok);
  CHECK(first_root(r).cost == 0);
  CHECK(first_root(r).mals.empty());
}

TEST_CASE("every edge's cost equals its repair count") {
  const Lexicon& lx = no_lexicon();
  Options repair;
  repair.max_cost = 2;
  for (const char* s : {"Jeg kunne ikke svare til Per", "Jeg ventet Per",
                        "Jeg kunne ikke vente på Per"}) {
    Result r = parse(lx, s, repair);
    for (const Edge& e : r.edges)
      CHECK(e.cost == static_cast<int>(e.mals.size()));
  }
}

TEST_CASE("the first unknown token is reported") {
  const Lexicon& lx = no_lexicon();
  Result r = parse(lx, "Jeg kunne ikke svare xyzzy");
  CHECK(r.status == ParseStatus::UnknownWord);
  CHECK(r.unknown_index == 4);
  CHECK(r.unknown_token == "xyzzy");

  Result r2 = parse(lx, "wibble kunne wobble");
  CHECK(r2.status == ParseStatus::UnknownWord);
  CHECK(r2.unknown_index == 0);
  CHECK(r2.unknown_token == "wibble");

  // First-language-only words are unknown to the target parser.
  CHECK(parse(lx, "Jeg responder Per").status == ParseStatus::UnknownWord);
}

TEST_CASE("the edge cap aborts runaway charts") {
  const Lexicon& lx = no_lexicon();
  Options tiny;
  tiny.edge_cap = 3;
  CHECK(parse(lx, "Jeg kunne ikke svare Per", tiny).status ==
        ParseStatus::EdgeCapExceeded);
  CHECK(parse(lx, "", tiny).status == ParseStatus::NoParse);
}

TEST_CASE("the idiom sentence parses only with the transferred frame") {
  const Lexicon& lx = en_lexicon();
  CHECK(parse(lx, "My friend has hunger").status == ParseStatus::NoParse);

  Options repair;
  repair.max_cost = 2;
  Result r = parse(lx, "My friend has hunger", repair);
  REQUIRE(r.status == ParseStatus::Ok);
  const Edge& root = first_root(r);
  CHECK(root.cost == 1);
  REQUIRE(root.mals.size() == 1);
  CHECK(root.mals[0]->tmpl.kind == lex::RepairKind::IdiomTransfer);
  CHECK(root_sem(lx, r) == "have(haver=friend(poss=speaker), had=hunger)");
}

TEST_CASE("english strict parses render their semantics") {
  const Lexicon& lx = en_lexicon();
  Result hungry = parse(lx, "My friend is hungry");
  REQUIRE(hungry.status == ParseStatus::Ok);
  CHECK(root_sem(lx, hungry) == "hungry(experiencer=friend(poss=speaker))");

  Result book = parse(lx, "My friend has a book");
  REQUIRE(book.status == ParseStatus::Ok);
  CHECK(root_sem(lx, book) == "have(haver=friend(poss=speaker), had=book)");

  Result answered = parse(lx, "My friend answered");
  REQUIRE(answered.status == ParseStatus::Ok);
  CHECK(root_sem(lx, answered) == "answer(agent=friend(poss=speaker))");

  Result to = parse(lx, "My friend answered to Per");
  CHECK(to.status == ParseStatus::NoParse);
  Options repair;
  repair.max_cost = 2;
  Result repaired = parse(lx, "My friend answered to Per", repair);
  REQUIRE(repaired.status == ParseStatus::Ok);
  CHECK(first_root(repaired).mals[0]->tmpl.mal_frame == "⟨PP[to]⟩");
}

TEST_CASE("stage parsing swaps in the learner's grammar") {
  const Lexicon& lx = no_lexicon();
  Options transfer;
  transfer.stage = lex::Stage::Transfer;
  CHECK(parse(lx, "Jeg svarte til Per", transfer).status == ParseStatus::Ok);
  CHECK(parse(lx, "Jeg svarte Per", transfer).status == ParseStatus::NoParse);

  Options variable;
  variable.stage = lex::Stage::Variable;
  CHECK(parse(lx, "Jeg svarte til Per", variable).status == ParseStatus::Ok);
  CHECK(parse(lx, "Jeg svarte Per", variable).status == ParseStatus::Ok);

  Options distinct;
  distinct.stage = lex::Stage::Distinct;
  CHECK(parse(lx, "Jeg svarte til Per", distinct).status == ParseStatus::NoParse);
  CHECK(parse(lx, "Jeg svarte Per", distinct).status == ParseStatus::Ok);

  // Stage edges carry no repair cost: the learner grammar owns them.
  Result r = parse(lx, "Jeg svarte til Per", transfer);
  CHECK(first_root(r).cost == 0);
  CHECK(first_root(r).mals.empty());
}

TEST_CASE("parsing is deterministic") {
  const Lexicon& lx = no_lexicon();
  Options repair;
  repair.max_cost = 2;
  Result a = parse(lx, "Jeg kunne ikke svare til Per", repair);
  Result b = parse(lx, "Jeg kunne ikke svare til Per", repair);
  REQUIRE(a.edges.size() == b.edges.size());
  REQUIRE(a.roots == b.roots);
  for (std::size_t i = 0; i < a.edges.size(); ++i)
    CHECK(avm::print(a.edges[i].sign.fs()) == avm::print(b.edges[i].sign.fs()));
}

TEST_CASE("the chart closure matches plain cky on the corpus") {
  const Lexicon& no = no_lexicon();
  const Lexicon& en = en_lexicon();
  Options opts;
  opts.edge_cap = 100000;
  for (int cost = 0; cost <= 2; ++cost) {
    opts.max_cost = cost;
    for (const char* s :
         {"Jeg kunne ikke svare Per", "Jeg kunne ikke svare til Per", "Jeg svarte Per",
          "Jeg ventet på Per", "Jeg ventet Per", "Jeg kunne ikke vente på Per"}) {
      auto tokens = tokenize(s);
      Result r = Parser(no).parse(tokens, opts);
      CHECK_MESSAGE(oracle::chart_keys(r, false) ==
                        oracle::cky_keys(no, tokens, cost, {}, false),
                    "edge sets differ for '" << s << "' at cost " << cost);
      CHECK_MESSAGE(oracle::chart_keys(r, true) ==
                        oracle::cky_keys(no, tokens, cost, {}, true),
                    "root sets differ for '" << s << "' at cost " << cost);
    }
    for (const char* s :
         {"My friend has hunger", "My friend is hungry", "My friend has a book",
          "My friend answered Per", "My friend answered to Per", "My friend answered"}) {
      auto tokens = tokenize(s);
      Result r = Parser(en).parse(tokens, opts);
      CHECK_MESSAGE(oracle::chart_keys(r, false) ==
                        oracle::cky_keys(en, tokens, cost, {}, false),
                    "edge sets differ for '" << s << "' at cost " << cost);
    }
  }
}

TEST_CASE("the chart closure matches plain cky on random token strings") {
  const Lexicon& lx = no_lexicon();
  const std::vector<std::string> vocab = {"Jeg", "kunne", "ikke", "svare", "til",
                                          "Per", "svarte", "ventet", "på",  "vente"};
  std::mt19937 rng(20240818);
  Options opts;
  opts.edge_cap = 100000;
  for (int iter = 0; iter < 150; ++iter) {
    std::size_t len = 1 + rng() % 5;
    std::vector<std::string> tokens;
    for (std::size_t i = 0; i < len; ++i) tokens.push_back(vocab[rng() % vocab.size()]);
    int cost = static_cast<int>(rng() % 3);
    opts.max_cost = cost;
    Result r = Parser(lx).parse(tokens, opts);
    auto chart_edges = oracle::chart_keys(r, false);
    auto cky_edges = oracle::cky_keys(lx, tokens, cost, {}, false);
    bool same = chart_edges == cky_edges;
    CHECK(same);
    if (!same) {
      std::string joined;
      for (const auto& t : tokens) joined += t + " ";
      MESSAGE("diverged on: " << joined << " at cost " << cost);
      break;
    }
  }
}

TEST_CASE("stage charts also match the oracle") {
  const Lexicon& lx = no_lexicon();
  Options opts;
  opts.edge_cap = 100000;
  for (lex::Stage stage :
       {lex::Stage::Transfer, lex::Stage::Distinct, lex::Stage::Variable}) {
    opts.stage = stage;
    for (const char* s : {"Jeg svarte til Per", "Jeg svarte Per", "Jeg ventet Per"}) {
      auto tokens = tokenize(s);
      Result r = Parser(lx).parse(tokens, opts);
      CHECK(oracle::chart_keys(r, false) == oracle::cky_keys(lx, tokens, 0, stage, false));
    }
  }
}
