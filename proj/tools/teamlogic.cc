// Command-line front end: files in, verdicts and formulas out.
//
// Exit codes: 0 success, 1 parse error, 2 validation error or proof
// violations, 3 evaluation limit exceeded.

#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "teamlogic/approx.h"
#include "teamlogic/derivation.h"
#include "teamlogic/io.h"
#include "teamlogic/kernel.h"
#include "teamlogic/normalform.h"
#include "teamlogic/semantics.h"

namespace teamlogic {
namespace {

enum ExitCode { kOk = 0, kParse = 1, kInvalid = 2, kLimit = 3 };

struct Outcome {
  int code = kOk;
  std::string out;
  std::string err;
};

struct Options {
  std::string structure_file;
  std::string team_file;
  std::string signature_file;
  std::vector<std::string> files;
  std::string quant;
  std::string relation = "R";
  int k = 1;
  std::size_t limit = 0;
  int jobs = 1;
  bool q1 = false;
  bool approx = false;
};

bool UsesQuantifier(const Formula& f) {
  if (f.kind() == Kind::kQ || f.kind() == Kind::kQd) return true;
  return std::any_of(f.children().begin(), f.children().end(), UsesQuantifier);
}

// Runs `body`, mapping library exceptions to exit codes.
template <typename F>
Outcome Guarded(const std::string& context, F body) {
  Outcome o;
  try {
    body(o);
  } catch (const ParseError& e) {
    o.code = kParse;
    o.err = context + ": parse error: " + e.what() + "\n";
  } catch (const LimitExceeded& e) {
    o.code = kLimit;
    o.out = "limit-exceeded\n";
    o.err = context + ": " + e.what() + "\n";
  } catch (const Error& e) {
    o.code = kInvalid;
    o.err = context + ": " + e.what() + "\n";
  }
  return o;
}

FormulaFile LoadFormula(const std::string& path, const Signature& base = {}) {
  return ParseFormulaFile(ReadTextFile(path), base);
}

NormalFormSentence LoadNormalForm(const std::string& path, const Signature& base,
                                  Signature* sig) {
  FormulaFile ff = LoadFormula(path, base);
  auto sigma = NormalFormSentence::Recognize(ff.formula);
  if (!sigma) throw ShapeError("not a normal-form sentence: " + Render(ff.formula));
  if (sig) *sig = ff.signature;
  return *sigma;
}

Outcome EvalOne(const StructureFile& sf, const std::optional<Team>& team,
                const std::string& path, const Options& opt) {
  return Guarded(path, [&](Outcome& o) {
    FormulaFile ff = LoadFormula(path, sf.signature);
    sf.structure.CheckCovers(ff.signature);
    const int n = sf.structure.size();
    QuantifierInterpretation q = QuantifierInterpretation::Exists(n);
    if (!opt.quant.empty()) {
      q = ParseQuantifier(opt.quant, n);
    } else if (sf.quantifier) {
      q = *sf.quantifier;
    } else if (UsesQuantifier(ff.formula)) {
      throw WellFormednessError("formula uses Q but no quantifier is given (--quant or a quant line)");
    }
    WeakModel w(sf.structure, q);
    EvalConfig cfg;
    if (opt.limit) cfg.max_nodes = opt.limit;
    bool verdict;
    if (opt.approx) {
      if (team) throw WellFormednessError("--approx evaluates sentences only");
      auto sigma = NormalFormSentence::Recognize(ff.formula);
      if (!sigma) throw ShapeError("--approx needs a normal-form sentence");
      verdict = FiniteWitness(w, *sigma, cfg).has_value();
    } else {
      verdict = EvalTeam(w, team ? *team : Team::Unit(), ff.formula, cfg);
    }
    o.out = verdict ? "true\n" : "false\n";
  });
}

int Emit(const Outcome& o) {
  std::cout << o.out;
  std::cerr << o.err;
  return o.code;
}

int CmdEval(const Options& opt) {
  StructureFile sf;
  std::optional<Team> team;
  Outcome setup = Guarded(opt.structure_file, [&](Outcome&) {
    sf = ParseStructureFile(ReadTextFile(opt.structure_file));
    if (!opt.team_file.empty()) {
      team = ParseTeamFile(ReadTextFile(opt.team_file), sf.structure.size());
    }
  });
  if (setup.code != kOk) return Emit(setup);

  std::vector<Outcome> results(opt.files.size());
  const std::size_t workers =
      std::min<std::size_t>(std::max(opt.jobs, 1), opt.files.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < opt.files.size(); i += workers) {
        results[i] = EvalOne(sf, team, opt.files[i], opt);
      }
    });
  }
  for (auto& th : pool) th.join();

  int code = kOk;
  for (std::size_t i = 0; i < results.size(); ++i) {
    Outcome& r = results[i];
    if (opt.files.size() > 1 && !r.out.empty()) r.out = opt.files[i] + ": " + r.out;
    code = std::max(code, Emit(r));
  }
  return code;
}

// Reads "# signature: ..." from the script when no signature file is given.
Signature ScriptSignature(const std::string& script) {
  std::istringstream in(script);
  std::string line;
  const std::string tag = "# signature:";
  while (std::getline(in, line)) {
    if (line.rfind(tag, 0) == 0) return Signature::Parse(line.substr(tag.size()));
  }
  return {};
}

int CmdCheckProof(const Options& opt) {
  int code = kOk;
  for (const auto& path : opt.files) {
    Outcome o = Guarded(path, [&](Outcome& o) {
      std::string script = ReadTextFile(path);
      Signature sig = opt.signature_file.empty()
                          ? ScriptSignature(script)
                          : ParseSignatureFile(ReadTextFile(opt.signature_file));
      Derivation d = Derivation::Parse(script, sig);
      KernelMode mode;
      mode.with_approx = opt.approx;
      mode.with_q1 = opt.q1;
      CheckReport report = Check(d, sig, mode);
      std::ostringstream out;
      if (opt.files.size() > 1) out << path << ": ";
      if (report.ok()) {
        out << "ok\n";
        for (const auto& [label, f] : report.open) {
          out << "  open " << label << ": " << Render(f) << "\n";
        }
      } else {
        out << report.violations.size() << " violation"
            << (report.violations.size() == 1 ? "" : "s") << "\n";
        for (const auto& v : report.violations) out << "  " << v.ToString() << "\n";
        o.code = kInvalid;
      }
      o.out = out.str();
    });
    code = std::max(code, Emit(o));
  }
  return code;
}

int CmdTransform(const std::string& kind, const Options& opt) {
  Signature base;
  Outcome setup = Guarded(opt.signature_file, [&](Outcome&) {
    if (!opt.signature_file.empty()) base = ParseSignatureFile(ReadTextFile(opt.signature_file));
  });
  if (setup.code != kOk) return Emit(setup);
  int code = kOk;
  for (const auto& path : opt.files) {
    Outcome o = Guarded(path, [&](Outcome& o) {
      std::ostringstream out;
      if (kind == "normalize") {
        FormulaFile ff = LoadFormula(path, base);
        NormalizeResult r = Normalize(ff.formula, ff.signature);
        out << r.sentence.ToString() << "\n\n" << r.certificate.ToScript();
      } else {
        Signature sig;
        NormalFormSentence sigma = LoadNormalForm(path, base, &sig);
        if (kind == "skolemize") {
          FreshNames fresh(sigma.ToFormula());
          fresh.Reserve(sig);
          SkolemForm sk = Skolemize(sigma, fresh);
          out << Render(sk.sentence) << "\n";
          if (!sk.functions.empty()) out << sk.delta().ToString() << "\n";
        } else {
          if (sigma.prefix().empty()) {
            o.err = path + ": note: empty prefix, " + opt.relation + " is 0-ary\n";
          }
          if (sig.HasSymbol(opt.relation)) {
            throw WellFormednessError("relation name '" + opt.relation +
                                      "' is already in the signature");
          }
          out << Render(kind == "approx" ? MakeA(sigma, opt.relation, opt.k)
                                         : MakeB(sigma, opt.relation))
              << "\n";
        }
      }
      o.out = out.str();
    });
    code = std::max(code, Emit(o));
  }
  return code;
}

int Run(int argc, char** argv) {
  CLI::App app{"Dependence logic with a monotone generalized quantifier"};
  app.require_subcommand(1);
  Options opt;

  auto* eval = app.add_subcommand("eval", "Evaluate formulas over a structure");
  eval->add_option("structure", opt.structure_file, "Structure file")->required();
  eval->add_option("formulas", opt.files, "Formula files")->required();
  eval->add_option("--team", opt.team_file, "Team file (default {()})");
  eval->add_option("--quant", opt.quant, "Interpretation of Q, e.g. majority or \"{0,1} {1,2}\"");
  eval->add_option("--limit", opt.limit, "Search node budget")->check(CLI::PositiveNumber);
  eval->add_option("--jobs", opt.jobs, "Formula files evaluated in parallel")
      ->check(CLI::PositiveNumber);
  eval->add_flag("--approx", opt.approx, "Decide a normal-form sentence through its approximations");

  auto* check = app.add_subcommand("check-proof", "Check proof scripts");
  check->add_option("scripts", opt.files, "Proof scripts")->required();
  check->add_option("--signature", opt.signature_file,
                    "Signature file (default: the script's '# signature:' line)");
  check->add_flag("--q1", opt.q1, "Enable the Q1 rules and the Skolem rule");
  check->add_flag("--approx", opt.approx, "Enable the approximation rule");

  auto* normalize = app.add_subcommand("normalize", "Normal form with its certificate");
  normalize->add_option("formulas", opt.files, "Formula files")->required();
  normalize->add_option("--signature", opt.signature_file, "Signature file");

  auto* approx = app.add_subcommand("approx", "k-th approximation of a normal-form sentence");
  approx->add_option("formulas", opt.files, "Formula files")->required();
  approx->add_option("--signature", opt.signature_file, "Signature file");
  approx->add_option("-k", opt.k, "Index of the approximation")->check(CLI::PositiveNumber);
  approx->add_option("--relation", opt.relation, "Name of the fresh relation");

  auto* skolemize = app.add_subcommand("skolemize", "Skolem translation of a normal-form sentence");
  skolemize->add_option("formulas", opt.files, "Formula files")->required();
  skolemize->add_option("--signature", opt.signature_file, "Signature file");

  auto* bsent = app.add_subcommand("b-sentence", "B sentence of a normal-form sentence");
  bsent->add_option("formulas", opt.files, "Formula files")->required();
  bsent->add_option("--signature", opt.signature_file, "Signature file");
  bsent->add_option("--relation", opt.relation, "Name of the fresh relation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  if (*eval) return CmdEval(opt);
  if (*check) return CmdCheckProof(opt);
  if (*normalize) return CmdTransform("normalize", opt);
  if (*approx) return CmdTransform("approx", opt);
  if (*skolemize) return CmdTransform("skolemize", opt);
  return CmdTransform("b-sentence", opt);
}

}  // namespace
}  // namespace teamlogic

int main(int argc, char** argv) { return teamlogic::Run(argc, argv); }
