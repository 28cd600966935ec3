#include "ilt/signs.hpp"

#include <cassert>
#include <cctype>
#include <map>

namespace ilt::signs {

const Feats& Feats::get() {
  static const Feats f = {
      Symbol::intern("PHON"),  Symbol::intern("SYN"),   Symbol::intern("LOC"),
      Symbol::intern("HEAD"),  Symbol::intern("SUBCAT"), Symbol::intern("SEM"),
      Symbol::intern("CAT"),   Symbol::intern("VFORM"), Symbol::intern("PFORM"),
      Symbol::intern("LEX"),   Symbol::intern("MOD"),   Symbol::intern("RELN"),
      Symbol::intern("HUMAN"), Symbol::intern("POSS"),  Symbol::intern("OPT"),
      Symbol::intern("SUBJ"),
  };
  return f;
}

const Atoms& Atoms::get() {
  static const Atoms a = {
      Symbol::intern("verb"), Symbol::intern("noun"), Symbol::intern("prep"),
      Symbol::intern("adv"),  Symbol::intern("det"),  Symbol::intern("fin"),
      Symbol::intern("inf"),  Symbol::intern("plus"), Symbol::intern("minus"),
  };
  return a;
}

namespace {

Symbol cat_atom(Cat c) {
  switch (c) {
    case Cat::Verb: return A().verb;
    case Cat::Noun: return A().noun;
    case Cat::Prep: return A().prep;
    case Cat::Adv: return A().adv;
    case Cat::Det: return A().det;
  }
  return A().verb;
}

Symbol vform_atom(VForm v) { return v == VForm::Fin ? A().fin : A().inf; }

Symbol role_feature(const std::string& role) {
  std::string upper;
  for (char c : role) upper += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return Symbol::intern(upper);
}

/** Builds the lexical sign graph; shared targets realize role bindings. */
class SignBuilder {
public:
  explicit SignBuilder(const SignDesc& desc) : desc_(desc) {}

  Sign run() {
    avm::NodeId root = b_.avm();
    if (!desc_.phon.empty()) b_.set(root, F().PHON, b_.atom(desc_.phon));

    avm::NodeId head = b_.avm();
    b_.set(head, F().CAT, b_.atom(cat_atom(desc_.cat)));
    if (desc_.vform) b_.set(head, F().VFORM, b_.atom(vform_atom(*desc_.vform)));
    if (!desc_.pform.empty()) b_.set(head, F().PFORM, b_.atom(desc_.pform));
    if (!desc_.lemma.empty()) b_.set(head, F().LEX, b_.atom(desc_.lemma));

    build_sem();
    resolve_targets();

    avm::NodeId subcat = b_.list();
    for (std::size_t i = 0; i < desc_.subcat.size(); ++i)
      b_.add_item(subcat, build_slot(desc_.subcat[i], targets_[i]));

    avm::NodeId loc = b_.avm();
    b_.set(loc, F().HEAD, head);
    b_.set(loc, F().SUBCAT, subcat);
    avm::NodeId syn = b_.avm();
    b_.set(syn, F().LOC, loc);
    b_.set(root, F().SYN, syn);

    avm::NodeId sem = sem_node_;
    if (desc_.sem_shared_with >= 0) sem = targets_[static_cast<std::size_t>(desc_.sem_shared_with)];
    b_.set(root, F().SEM, sem);

    if (desc_.mod) {
      avm::NodeId mod_slot = build_slot(*desc_.mod, target_for(*desc_.mod));
      b_.set(head, F().MOD, mod_slot);
    }

    auto fs = b_.finish(root);
    assert(fs);
    return Sign(std::move(*fs));
  }

private:
  void build_sem() {
    const SemDesc& sem = desc_.sem;
    switch (sem.kind) {
      case SemDesc::Kind::None:
        sem_node_ = b_.empty();
        break;
      case SemDesc::Kind::Relation: {
        sem_node_ = b_.avm();
        b_.set(sem_node_, F().RELN, b_.atom(sem.name));
        for (const std::string& role : sem.roles) {
          avm::NodeId arg = b_.empty();
          args_[role] = arg;
          b_.set(sem_node_, role_feature(role), arg);
        }
        break;
      }
      case SemDesc::Kind::Referent: {
        sem_node_ = b_.avm();
        b_.set(sem_node_, F().RELN, b_.atom(sem.name));
        if (sem.human) b_.set(sem_node_, F().HUMAN, b_.atom(*sem.human ? A().plus : A().minus));
        if (sem.has_poss) {
          avm::NodeId poss = b_.empty();
          args_["poss"] = poss;
          b_.set(sem_node_, F().POSS, poss);
        }
        break;
      }
    }
  }

  avm::NodeId target_for(const SpecDesc& spec) {
    if (spec.role.empty()) return b_.empty();
    auto it = args_.find(spec.role);
    assert(it != args_.end());
    return it->second;
  }

  void resolve_targets() {
    targets_.clear();
    for (const SpecDesc& spec : desc_.subcat) targets_.push_back(target_for(spec));
  }

  avm::NodeId subject_sem() {
    for (std::size_t i = desc_.subcat.size(); i > 0; --i) {
      if (desc_.subcat[i - 1].subject) return targets_[i - 1];
    }
    return b_.empty();
  }

  avm::NodeId build_slot(const SpecDesc& spec, avm::NodeId target) {
    if (spec.human) b_.set(target, F().HUMAN, b_.atom(*spec.human ? A().plus : A().minus));

    avm::NodeId head = b_.avm();
    std::optional<avm::NodeId> subcat;
    switch (spec.cat) {
      case SpecCat::NP:
        b_.set(head, F().CAT, b_.atom(A().noun));
        subcat = b_.list();
        break;
      case SpecCat::N:
        b_.set(head, F().CAT, b_.atom(A().noun));
        b_.set(head, F().LEX, b_.atom(spec.lex));
        break;
      case SpecCat::PP:
        b_.set(head, F().CAT, b_.atom(A().prep));
        b_.set(head, F().PFORM, b_.atom(spec.pform));
        subcat = b_.list();
        break;
      case SpecCat::VP: {
        b_.set(head, F().CAT, b_.atom(A().verb));
        if (spec.vform) b_.set(head, F().VFORM, b_.atom(vform_atom(*spec.vform)));
        subcat = b_.list();
        avm::NodeId subj = b_.avm();
        b_.set(subj, F().SEM, subject_sem());
        b_.add_item(*subcat, subj);
        break;
      }
      case SpecCat::AP: {
        b_.set(head, F().CAT, b_.atom(A().adv));
        subcat = b_.list();
        avm::NodeId subj = b_.avm();
        b_.set(subj, F().SEM, subject_sem());
        b_.add_item(*subcat, subj);
        break;
      }
      case SpecCat::Det:
        b_.set(head, F().CAT, b_.atom(A().det));
        subcat = b_.list();
        break;
    }

    avm::NodeId loc = b_.avm();
    b_.set(loc, F().HEAD, head);
    if (subcat) b_.set(loc, F().SUBCAT, *subcat);
    avm::NodeId syn = b_.avm();
    b_.set(syn, F().LOC, loc);

    avm::NodeId slot = b_.avm();
    b_.set(slot, F().SYN, syn);
    b_.set(slot, F().SEM, target);
    if (spec.optional) b_.set(slot, F().OPT, b_.atom(A().plus));
    if (spec.subject) b_.set(slot, F().SUBJ, b_.atom(A().plus));
    return slot;
  }

  const SignDesc& desc_;
  avm::Builder b_;
  avm::NodeId sem_node_ = 0;
  std::map<std::string, avm::NodeId> args_;
  std::vector<avm::NodeId> targets_;
};

}  // namespace

std::optional<avm::NodeId> Sign::head_node() const {
  return fs_.node_at(avm::Path({F().SYN, F().LOC, F().HEAD}));
}

std::optional<Symbol> Sign::head_atom(Symbol feat) const {
  auto head = head_node();
  if (!head) return std::nullopt;
  const avm::Node* n = &fs_.node(*head);
  const avm::NodeId* v = n->feature(feat);
  if (!v) return std::nullopt;
  const avm::Node& value = fs_.node(*v);
  if (value.kind != avm::NodeKind::Atom) return std::nullopt;
  return value.atom;
}

std::optional<Symbol> Sign::phon() const {
  auto id = fs_.node_at(avm::Path({F().PHON}));
  if (!id) return std::nullopt;
  const avm::Node& n = fs_.node(*id);
  if (n.kind != avm::NodeKind::Atom) return std::nullopt;
  return n.atom;
}

std::optional<Symbol> Sign::head_cat() const { return head_atom(F().CAT); }
std::optional<Symbol> Sign::head_vform() const { return head_atom(F().VFORM); }
std::optional<Symbol> Sign::head_pform() const { return head_atom(F().PFORM); }
std::optional<Symbol> Sign::head_lex() const { return head_atom(F().LEX); }

bool Sign::has_mod() const {
  auto head = head_node();
  if (!head) return false;
  return fs_.node(*head).feature(F().MOD) != nullptr;
}

std::size_t Sign::subcat_len() const {
  auto id = fs_.node_at(avm::Path({F().SYN, F().LOC, F().SUBCAT}));
  if (!id) return 0;
  const avm::Node& n = fs_.node(*id);
  if (n.kind != avm::NodeKind::List) return 0;
  return n.items.size();
}

std::optional<avm::NodeId> Sign::subcat_elem(std::size_t i) const {
  auto id = fs_.node_at(avm::Path({F().SYN, F().LOC, F().SUBCAT}));
  if (!id) return std::nullopt;
  const avm::Node& n = fs_.node(*id);
  if (n.kind != avm::NodeKind::List || i >= n.items.size()) return std::nullopt;
  return n.items[i];
}

namespace {

bool slot_flag(const avm::FeatureStructure& fs, std::optional<avm::NodeId> slot, Symbol feat) {
  if (!slot) return false;
  const avm::Node& n = fs.node(*slot);
  const avm::NodeId* v = n.feature(feat);
  if (!v) return false;
  const avm::Node& value = fs.node(*v);
  return value.kind == avm::NodeKind::Atom && value.atom == A().plus;
}

}  // namespace

bool Sign::slot_is_subject(std::size_t i) const {
  return slot_flag(fs_, subcat_elem(i), F().SUBJ);
}

bool Sign::slot_is_optional(std::size_t i) const {
  return slot_flag(fs_, subcat_elem(i), F().OPT);
}

bool Sign::is_root_clause() const {
  return head_cat() == A().verb && head_vform() == A().fin && subcat_len() == 0;
}

std::string Sign::summary() const {
  auto cat = head_cat();
  std::size_t len = subcat_len();
  if (cat == A().noun) {
    if (len == 0) return "NP";
    auto lex = head_lex();
    return lex ? "N[" + lex->str() + "]" : "N";
  }
  if (cat == A().prep) {
    auto pform = head_pform();
    return pform ? "PP[" + pform->str() + "]" : "PP";
  }
  if (cat == A().verb) {
    auto vform = head_vform();
    if (len == 0) return vform == A().fin ? "S" : "VP";
    if (len == 1) return vform ? "VP[" + vform->str() + "]" : "VP";
    return "V";
  }
  if (cat == A().adv) return "AP";
  if (cat == A().det) return "DET";
  return "?";
}

Sign build_sign(const SignDesc& desc) { return SignBuilder(desc).run(); }

std::string spec_summary(const SpecDesc& spec) {
  std::string body;
  switch (spec.cat) {
    case SpecCat::NP: body = "NP"; break;
    case SpecCat::N: body = "N[" + spec.lex + "]"; break;
    case SpecCat::PP: body = "PP[" + spec.pform + "]"; break;
    case SpecCat::VP:
      body = spec.vform ? "VP[" + vform_atom(*spec.vform).str() + "]" : "VP";
      break;
    case SpecCat::AP: body = "AP"; break;
    case SpecCat::Det: body = "DET"; break;
  }
  if (spec.optional) return "(" + body + ")";
  return body;
}

std::string frame_summary(const std::vector<SpecDesc>& subcat) {
  std::string out = "⟨";
  bool first = true;
  for (const SpecDesc& spec : subcat) {
    if (spec.subject) continue;
    if (!first) out += ", ";
    out += spec_summary(spec);
    first = false;
  }
  out += "⟩";
  return out;
}

bool sign_equivalent(const Sign& a, const Sign& b) {
  return avm::equivalent(a.fs(), b.fs());
}

}  // namespace ilt::signs
