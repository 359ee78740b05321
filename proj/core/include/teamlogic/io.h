// Plain-text file formats. '#' starts a comment that runs to the end of the
// line in every format.
//
// Structure files:
//
//   universe 3
//   rel G/2: (0,1) (1,2)          tuples, separated by blanks or ';'
//   rel P/1: 0 2                  unary tuples may drop the parentheses
//   fun f/1: 0->1 1->2 2->0       every argument tuple needs a value
//   fun c/0: 1
//   quant Q/1: {0,1} {1,2}        generators of q, or a builtin name such
//   quant Q/1: at_least(2)        as exists, majority, fraction(2,3)
//
// Team files: a "vars x y" line, then one row of values per line. With no
// variables, "()" stands for the empty assignment.
//
// Formula files: optional declaration lines "rel NAME/k" or "fun NAME/k",
// then the formula, which may span several lines.
//
// Signature files: declarations in Signature::Parse syntax.
//
// Syntax errors throw ParseError; values that parse but make no sense
// (out of range, missing function entries, trivial q) throw
// WellFormednessError.

#ifndef TEAMLOGIC_IO_H_
#define TEAMLOGIC_IO_H_

#include <optional>
#include <string>
#include <string_view>

#include "teamlogic/model.h"
#include "teamlogic/syntax.h"
#include "teamlogic/team.h"

namespace teamlogic {

// Throws Error when the file cannot be read.
std::string ReadTextFile(const std::string& path);

std::string StripComments(std::string_view text);

struct StructureFile {
  Structure structure;
  // Declared relation and function symbols.
  Signature signature;
  std::optional<QuantifierInterpretation> quantifier;
};

StructureFile ParseStructureFile(std::string_view text);

// Also accepts a builtin name, as in the quant line.
QuantifierInterpretation ParseQuantifier(std::string_view text, int universe_size,
                                         int arity = 1);

Team ParseTeamFile(std::string_view text, int universe_size);

struct FormulaFile {
  // `base` merged with the declarations of the file.
  Signature signature;
  Formula formula;
};

FormulaFile ParseFormulaFile(std::string_view text, const Signature& base = {},
                             const ParseOptions& options = {});

Signature ParseSignatureFile(std::string_view text);

}  // namespace teamlogic

#endif  // TEAMLOGIC_IO_H_
