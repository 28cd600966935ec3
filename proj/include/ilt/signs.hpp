#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ilt/avm.hpp"

namespace ilt::signs {

/** Feature symbols of the sign geometry, interned once. */
struct Feats {
  Symbol PHON, SYN, LOC, HEAD, SUBCAT, SEM;
  Symbol CAT, VFORM, PFORM, LEX, MOD;
  Symbol RELN, HUMAN, POSS;
  Symbol OPT, SUBJ;
  static const Feats& get();
};

inline const Feats& F() { return Feats::get(); }

/** Atom symbols with fixed meaning inside signs. */
struct Atoms {
  Symbol verb, noun, prep, adv, det;
  Symbol fin, inf;
  Symbol plus, minus;
  static const Atoms& get();
};

inline const Atoms& A() { return Atoms::get(); }

enum class Lang { Lt, L1 };
enum class Cat { Verb, Noun, Prep, Adv, Det };
enum class VForm { Fin, Inf };

/** Category a subcategorization slot selects for. */
enum class SpecCat { NP, N, PP, VP, AP, Det };

/**
 * One subcategorization slot. Slots are ordered most oblique first; the
 * subject (or specifier) slot, when present, is last and flagged.
 */
struct SpecDesc {
  SpecCat cat = SpecCat::NP;
  std::string pform;          // PP: preposition form, required
  std::string lex;            // N: required lemma, marks a pseudo-idiom slot
  std::optional<VForm> vform; // VP
  std::string role;           // semantic role this slot fills, empty = none
  bool optional = false;
  std::optional<bool> human;  // selectional restriction on the filler
  bool subject = false;
};

/** Semantic contribution of a lexical sign. */
struct SemDesc {
  enum class Kind { None, Relation, Referent };
  Kind kind = Kind::None;
  std::string name;                 // relation symbol, or referent lemma
  std::vector<std::string> roles;   // relation: declared roles in render order
  std::optional<bool> human;        // referent
  bool has_poss = false;            // referent: possessor slot
};

/**
 * Full recipe for a lexical sign. Role names in the subcat slots refer to
 * sem.roles; bindings become structure sharing between the slot's SEM and
 * the relation's argument.
 */
struct SignDesc {
  std::string phon;
  std::string lemma;
  Cat cat = Cat::Verb;
  std::optional<VForm> vform;
  std::string pform;
  std::vector<SpecDesc> subcat;
  SemDesc sem;
  std::optional<SpecDesc> mod;   // adjuncts: what the sign modifies
  int sem_shared_with = -1;      // index of the slot whose SEM is this sign's SEM
};

/**
 * A linguistic sign: a feature structure of the fixed geometry
 * [PHON, SYN|LOC|HEAD, SYN|LOC|SUBCAT, SEM] with typed accessors.
 */
class Sign {
public:
  Sign() = default;
  explicit Sign(avm::FeatureStructure fs) : fs_(std::move(fs)) {}

  const avm::FeatureStructure& fs() const { return fs_; }

  std::optional<Symbol> phon() const;
  std::optional<Symbol> head_cat() const;
  std::optional<Symbol> head_vform() const;
  std::optional<Symbol> head_pform() const;
  std::optional<Symbol> head_lex() const;
  bool has_mod() const;

  std::size_t subcat_len() const;
  /** Node id of subcat slot i (0 = most oblique) inside fs(). */
  std::optional<avm::NodeId> subcat_elem(std::size_t i) const;
  bool slot_is_subject(std::size_t i) const;
  bool slot_is_optional(std::size_t i) const;

  /** Saturated finite verbal projection, i.e. a complete sentence. */
  bool is_root_clause() const;

  /**
   * Constituent summary as seen from outside: NP, N[faim], PP[til],
   * VP[inf], S, AP, DET.
   */
  std::string summary() const;

private:
  std::optional<avm::NodeId> head_node() const;
  std::optional<Symbol> head_atom(Symbol feat) const;
  avm::FeatureStructure fs_;
};

/** Builds the feature structure for a lexical sign. */
Sign build_sign(const SignDesc& desc);

/** Slot summary: NP, (NP), PP[a], N[faim], VP[inf], AP, DET. */
std::string spec_summary(const SpecDesc& spec);

/** Frame summary over the non-subject slots: ⟨PP[a], NP⟩. */
std::string frame_summary(const std::vector<SpecDesc>& subcat);

bool sign_equivalent(const Sign& a, const Sign& b);

}  // namespace ilt::signs
