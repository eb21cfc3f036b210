#ifndef PMC_LTL_HH
#define PMC_LTL_HH

#include <memory>
#include <string>
#include <vector>

#include "pmc/automaton.hh"

namespace pmc {

// LTL syntax tree. Shared subtrees are allowed; formulas are immutable.
struct LtlNode;
using LtlFormula = std::shared_ptr<const LtlNode>;

enum class LtlOp {
    tt,
    ff,
    ap,
    not_,
    and_,
    or_,
    next,
    until,
    release,
    eventually,
    globally,
};

struct LtlNode {
    LtlOp op;
    std::string name;  // ap only
    LtlFormula left;   // unary operand or left operand
    LtlFormula right;  // binary right operand
};

LtlFormula ltl_true();
LtlFormula ltl_false();
LtlFormula ltl_ap(const std::string& name);
LtlFormula ltl_not(LtlFormula f);
LtlFormula ltl_and(LtlFormula a, LtlFormula b);
LtlFormula ltl_or(LtlFormula a, LtlFormula b);
LtlFormula ltl_next(LtlFormula f);
LtlFormula ltl_until(LtlFormula a, LtlFormula b);
LtlFormula ltl_release(LtlFormula a, LtlFormula b);
LtlFormula ltl_eventually(LtlFormula f);
LtlFormula ltl_globally(LtlFormula f);

// Grammar: ! & | X U R F G, parentheses, identifiers, true/false.
// Unary operators bind tightest, then U/R (right associative), then &, then |.
// Throws InputError with a character position on bad input.
LtlFormula parse_ltl(const std::string& text);

// Canonical rendering; parsing it again yields the same tree.
std::string to_string(const LtlFormula& f);

// Negation normal form over the core {tt, ff, literal, &, |, X, U, R}:
// F and G are desugared, negations pushed onto atomic propositions.
LtlFormula nnf(const LtlFormula& f);

// nnf(¬f).
LtlFormula nnf_negated(const LtlFormula& f);

// Atomic propositions of the formula, sorted.
std::vector<std::string> collect_propositions(const LtlFormula& f);

// Tableau translation to an NGBA over the formula's propositions, one
// accepting set per until subformula (a single total set when there are
// none). Correct rather than minimal; the lazy pipeline is built to cope
// with nondeterministic automata.
Ngba translate_ltl_to_ngba(const LtlFormula& f);
Ngba translate_ltl_to_ngba(const LtlFormula& f, const Alphabet& alphabet);

// Standard LTL semantics on the ultimately periodic word, by fixpoint over
// the folded positions. The oracle for the translation.
bool eval_ltl_on_lasso(const LtlFormula& f, const LassoWord& word,
                       const Alphabet& alphabet);

}  // namespace pmc

#endif
