#pragma once

// Verification targets, pipeline orchestration, report generation.
//
// Targets: the headline series identity, the explicit-constant certificates
// and the registry of parametrized table rows (data/table1.json).  Every
// check reduces to a residual compared against a tolerance; expected-failure
// checks (the monodromy negative control) instead assert that a discrepancy
// EXCEEDS a floor, so a silent implementation bug cannot masquerade as the
// genuine analytic failure.

#include "piverify/precision.hpp"
#include "piverify/special.hpp"
#include "piverify/sun_series.hpp"
#include "piverify/modular.hpp"

#include <string>
#include <vector>

namespace piv {

struct TableEntry {
    std::string id;            // table label, e.g. "3.24"
    GaussianRational x, y;
    QuadraticIrrational tau;
    int p = 5;                 // one of 3, 5, 7, 13, 17, 19
    bool starred = false;      // rows where Y = 1/k'(p tau) replaces k'(p tau)
    std::string cross_ref;     // companion-series label, may be empty
};

struct CheckResult {
    std::string name;
    Real residual;
    Real tolerance;
    Verdict verdict = Verdict::inconclusive;
    bool expected_failure = false;   // verified means: failed as predicted
    std::vector<BranchCertificate> branch_certificates;
};

struct VerificationReport {
    std::string target;
    std::vector<CheckResult> checks;
    unsigned precision_digits = 0;
    long wall_ms = 0;

    bool verified() const;
};

// Registry ------------------------------------------------------------------

std::string default_registry_path();
std::vector<TableEntry> load_registry(const std::string& path);

// Pipelines -----------------------------------------------------------------

// Four stages: (1) X = k'(tau), Y = k'(p tau) (inverted when starred) via
// theta quotients; (2) both algebraic relations at (x, y); (3) absolute
// convergence of the double series; (4) double series against the
// hypergeometric product.  Failures are recorded and the pipeline continues.
VerificationReport verify_entry(const TableEntry& e, const PrecisionContext& ctx,
                                const Real& tol);

VerificationReport verify_headline(const PrecisionContext& ctx, const Real& tol);

VerificationReport verify_constants(const PrecisionContext& ctx, const Real& tol);

// Runner --------------------------------------------------------------------

enum class ReportFormat { json, text };

struct RunConfig {
    unsigned digits = 120;
    Real tolerance;            // <= 0 means the default for the digit count
    std::string registry_path; // empty means default_registry_path()
    std::string report_dir;    // empty means no files written
    ReportFormat format = ReportFormat::json;
    int jobs = 1;
};

// 10^-40 at >= 90 digits, else 10^(5 - digits/2).
Real default_tolerance(unsigned digits);

struct RunSummary {
    std::vector<VerificationReport> reports;
    bool all_verified = false;
};

// Headline + constants + the 17 numbered table rows, in that order.
RunSummary run_all(const RunConfig& config);

// Reports -------------------------------------------------------------------

std::string report_to_json(const VerificationReport& r);
std::string report_to_text(const VerificationReport& r);
void write_report(const VerificationReport& r, const std::string& dir,
                  ReportFormat format);

}  // namespace piv
