#pragma once

#include <string>
#include <vector>

#include "ad/io.hpp"

namespace ad::cli {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // first counterexample or error message
};

struct CaseReport {
    std::string name;
    std::vector<CheckResult> checks;
    bool parse_error = false;
    double wall_ms = 0;

    bool pass() const;
};

struct SuiteReport {
    std::vector<CaseReport> cases;  // sorted by case name
    std::string warning;            // e.g. empty corpus directory
    bool any_parse_error = false;

    bool all_pass() const;
    std::string summary() const;
};

// Every structural check for one corpus case: extension, adjoint bundle,
// model correspondence, trivialization, fiber group, tower + cyclotomic
// action when a mid subfield is given, character blocks when a table is
// given, abelian collapse, and 20 seeded mutation-sensitivity probes.
CaseReport run_case(const io::CorpusCase& c);

// Runs every *.json case in the directory (in parallel when jobs > 1), the
// profinite checks, and — when golden_dir is nonempty — byte-exact golden
// comparisons for the S3 adjoint bundle and the n=3 Cartier isomorphism.
SuiteReport run_suite(const std::string& corpus_dir, int jobs = 1,
                      const std::string& golden_dir = "", int degree_bound = 24);

// Canonical dumps: "base", "trivial:<n>", "cartier:<n>" (n in 2..4),
// "adjoint:<extension file>". Throws ParseError on unknown selectors.
io::Json dump_selector(const std::string& selector, int degree_bound = 24);

}  // namespace ad::cli
