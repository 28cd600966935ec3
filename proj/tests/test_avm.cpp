#include "doctest.h"

#include "ilt/avm.hpp"
#include "ilt/avm_text.hpp"
#include "support/random_fs.hpp"

using namespace ilt;
using avm::FeatureStructure;
using avm::Path;

namespace {

FeatureStructure fs(const std::string& text) {
  auto r = avm::read(text);
  REQUIRE_MESSAGE(r.fs.has_value(), r.error);
  return *r.fs;
}

bool eq(const FeatureStructure& a, const FeatureStructure& b) {
  bool by_subsumption = avm::equivalent(a, b);
  bool by_print = avm::print(a) == avm::print(b);
  CHECK(by_subsumption == by_print);
  return by_subsumption;
}

}  // namespace

TEST_CASE("unify of atoms") {
  CHECK(eq(*avm::unify(fs("x"), fs("x")), fs("x")));
  CHECK(!avm::unify(fs("x"), fs("y")));
  CHECK(!avm::unify(fs("x"), fs("[A: x]")));
  CHECK(!avm::unify(fs("x"), fs("< >")));
}

TEST_CASE("unify merges feature maps") {
  auto u = avm::unify(fs("[A: x]"), fs("[B: y]"));
  REQUIRE(u);
  CHECK(eq(*u, fs("[A: x, B: y]")));

  CHECK(!avm::unify(fs("[A: x]"), fs("[A: y]")));
  CHECK(eq(*avm::unify(fs("[A: x]"), fs("[]")), fs("[A: x]")));
}

TEST_CASE("unify of lists is element-wise at equal length") {
  auto u = avm::unify(fs("< a, [] >"), fs("< [], b >"));
  REQUIRE(u);
  CHECK(eq(*u, fs("< a, b >")));

  CHECK(!avm::unify(fs("< a >"), fs("< a, b >")));
  CHECK(!avm::unify(fs("< >"), fs("< a >")));
  CHECK(eq(*avm::unify(fs("< >"), fs("< >")), fs("< >")));
}

TEST_CASE("unify propagates through shared nodes") {
  auto u = avm::unify(fs("[A: #1 [], B: #1]"), fs("[A: [X: plus]]"));
  REQUIRE(u);
  CHECK(avm::print(*u) == "[A: #1 [X: plus], B: #1]");

  auto v = avm::unify(fs("[A: x, B: x]"), fs("[A: #1 [], B: #1]"));
  REQUIRE(v);
  CHECK(avm::print(*v) == "[A: #1 x, B: #1]");

  // Incompatible values reached through sharing clash.
  CHECK(!avm::unify(fs("[A: #1 [], B: #1]"), fs("[A: x, B: y]")));
}

TEST_CASE("a cyclic unification result is a failure") {
  auto a = fs("[A: #1 [], B: [C: #1]]");
  auto b = fs("[A: [C: #2 []], B: #2]");
  CHECK(!avm::unify(a, b));
}

TEST_CASE("subsumption is directional") {
  CHECK(avm::subsumes(fs("[]"), fs("[A: x]")));
  CHECK(!avm::subsumes(fs("[A: x]"), fs("[]")));
  CHECK(avm::subsumes(fs("[A: []]"), fs("[A: x]")));
  CHECK(!avm::subsumes(fs("[A: x]"), fs("[A: []]")));
  CHECK(!avm::subsumes(fs("[A: x]"), fs("[B: x]")));
}

TEST_CASE("path existence counts as information") {
  CHECK(!avm::equivalent(fs("[A: []]"), fs("[]")));
  CHECK(avm::subsumes(fs("[]"), fs("[A: []]")));
  CHECK(!avm::subsumes(fs("[A: []]"), fs("[]")));
}

TEST_CASE("sharing counts as information") {
  auto shared = fs("[A: #1 [], B: #1]");
  auto unshared = fs("[A: [], B: []]");
  CHECK(!avm::equivalent(shared, unshared));
  CHECK(avm::subsumes(unshared, shared));
  CHECK(!avm::subsumes(shared, unshared));

  // Shared atoms are likewise more specific than equal unshared atoms.
  CHECK(avm::subsumes(fs("[A: x, B: x]"), fs("[A: #1 x, B: #1]")));
  CHECK(!avm::subsumes(fs("[A: #1 x, B: #1]"), fs("[A: x, B: x]")));
}

TEST_CASE("get walks paths and reports undefined ones") {
  auto x = fs("[A: [B: x], C: y]");
  CHECK(eq(*avm::get(x, Path::parse("A|B")), fs("x")));
  CHECK(eq(*avm::get(x, Path::parse("A")), fs("[B: x]")));
  CHECK(eq(*avm::get(x, Path::parse("")), x));
  CHECK(!avm::get(x, Path::parse("A|Z")));
  CHECK(!avm::get(x, Path::parse("C|B")));
}

TEST_CASE("get preserves sharing inside the substructure") {
  auto x = fs("[A: [P: #1 [], Q: #1]]");
  auto sub = avm::get(x, Path::parse("A"));
  REQUIRE(sub);
  CHECK(avm::print(*sub) == "[P: #1 [], Q: #1]");
}

TEST_CASE("put creates paths and unifies values in") {
  CHECK(eq(*avm::put(fs("[]"), Path::parse("A|B"), fs("x")), fs("[A: [B: x]]")));
  CHECK(eq(*avm::put(fs("[A: [B: x]]"), Path::parse("A|C"), fs("y")),
           fs("[A: [B: x, C: y]]")));
  CHECK(!avm::put(fs("[A: x]"), Path::parse("A"), fs("y")));
  CHECK(!avm::put(fs("[A: x]"), Path::parse("A|B"), fs("y")));
}

TEST_CASE("put through a shared node updates every route to it") {
  auto x = fs("[A: #1 [], B: #1]");
  auto y = avm::put(x, Path::parse("A"), fs("[X: plus]"));
  REQUIRE(y);
  CHECK(avm::print(*y) == "[A: #1 [X: plus], B: #1]");
  CHECK(eq(*avm::get(*y, Path::parse("B")), fs("[X: plus]")));
}

TEST_CASE("share makes two paths one node") {
  auto s = avm::share(fs("[]"), Path::parse("A"), Path::parse("B"));
  REQUIRE(s);
  CHECK(avm::print(*s) == "[A: #1 [], B: #1]");

  auto t = avm::share(fs("[A: x, B: []]"), Path::parse("A"), Path::parse("B"));
  REQUIRE(t);
  CHECK(avm::print(*t) == "[A: #1 x, B: #1]");

  CHECK(!avm::share(fs("[A: x, B: y]"), Path::parse("A"), Path::parse("B")));

  // Sharing a path with its own ancestor would be cyclic.
  CHECK(!avm::share(fs("[A: [B: []]]"), Path::parse("A"), Path::parse("A|B")));
}

TEST_CASE("equivalence ignores input feature order") {
  CHECK(eq(fs("[A: x, B: y]"), fs("[B: y, A: x]")));
}

TEST_CASE("unify algebra on random structures") {
  testsupport::RandomFs gen(20240817);
  auto empty = fs("[]");
  int lub_samples = 0;
  for (int i = 0; i < 300; ++i) {
    auto a = gen.next();
    auto b = gen.next();
    auto c = gen.next();

    CHECK(eq(*avm::unify(a, empty), a));
    CHECK(eq(*avm::unify(a, a), a));

    auto ab = avm::unify(a, b);
    auto ba = avm::unify(b, a);
    CHECK(ab.has_value() == ba.has_value());
    if (ab) {
      CHECK(eq(*ab, *ba));
      CHECK(avm::subsumes(a, *ab));
      CHECK(avm::subsumes(b, *ab));

      // Any common upper bound built independently sits above unify(a, b).
      auto bc = avm::unify(b, c);
      if (bc) {
        auto upper = avm::unify(a, *bc);
        if (upper) {
          CHECK(avm::subsumes(*ab, *upper));
          lub_samples++;
        }
      }
    }

    std::optional<FeatureStructure> left;
    if (ab) left = avm::unify(*ab, c);
    std::optional<FeatureStructure> right;
    auto bc2 = avm::unify(b, c);
    if (bc2) right = avm::unify(a, *bc2);
    CHECK(left.has_value() == right.has_value());
    if (left && right) CHECK(eq(*left, *right));
  }
  CHECK(lub_samples > 20);
}

TEST_CASE("subsumption agrees with unification on random structures") {
  testsupport::RandomFs gen(99251);
  for (int i = 0; i < 200; ++i) {
    auto a = gen.next();
    auto b = gen.next();
    auto u = avm::unify(a, b);
    if (avm::subsumes(a, b)) {
      // b already carries all of a, so their unification is b itself.
      REQUIRE(u);
      CHECK(eq(*u, b));
    }
    if (u && avm::equivalent(*u, b)) CHECK(avm::subsumes(a, b));
  }
}
