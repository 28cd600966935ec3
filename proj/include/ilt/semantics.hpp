#pragma once

#include <string>

#include "ilt/lexicon.hpp"
#include "ilt/signs.hpp"

namespace ilt::sem {

/**
 * The clause semantics with scopal relations raised: a relation declared
 * scopal that sits in an argument position is spliced out of its host
 * (the host inherits its argument) and wrapped around the whole clause.
 * Raising repeats until no embedded scopal relation remains; if splicing
 * ever produces a cyclic structure the unraised semantics is returned.
 */
avm::FeatureStructure raised_semantics(const signs::Sign& sign, const lex::Lexicon& lx);

/**
 * Text form: relation(role=value, ...) with roles in declaration order
 * and unfilled arguments skipped; referents render as their name, with
 * (poss=...) when the possessor is known.
 */
std::string render_semantics(const avm::FeatureStructure& sem, const lex::Lexicon& lx);

/** render_semantics over raised_semantics. */
std::string clause_semantics(const signs::Sign& sign, const lex::Lexicon& lx);

}  // namespace ilt::sem
