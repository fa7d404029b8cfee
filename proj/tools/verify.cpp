// Command-line driver for the verification harness.
//
// Exit codes: 0 all targets verified; 1 any check refuted or inconclusive;
// 2 configuration error.

#include "piverify/harness.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <iostream>

using namespace piv;

int main(int argc, char** argv) {
    CLI::App app{"High-precision verification of a Ramanujan-type formula "
                 "for 520/pi and its parametrized siblings"};

    bool all = false, headline = false, constants = false;
    std::string entry_id, tolerance_str, report_dir, format_str = "json";
    unsigned digits = 120;
    int jobs = 1;

    auto* opt_all = app.add_flag("--all", all, "verify every target");
    auto* opt_entry =
        app.add_option("--entry", entry_id, "verify a single table entry by id");
    auto* opt_headline =
        app.add_flag("--headline", headline, "verify the headline identity");
    auto* opt_constants =
        app.add_flag("--constants", constants, "verify the explicit constants");
    app.add_option("--digits", digits, "working precision in decimal digits")
        ->capture_default_str()
        ->check(CLI::Range(20u, 100000u));
    app.add_option("--tolerance", tolerance_str,
                   "override the residual tolerance, e.g. 1e-40");
    app.add_option("--report-dir", report_dir, "write one report file per target");
    app.add_option("--format", format_str, "report format")
        ->capture_default_str()
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--jobs", jobs, "parallel workers for table entries")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    const int modes = (opt_all->count() ? 1 : 0) + (opt_entry->count() ? 1 : 0) +
                      (opt_headline->count() ? 1 : 0) + (opt_constants->count() ? 1 : 0);
    if (modes != 1) {
        std::cerr << "error: exactly one of --all, --entry, --headline, "
                     "--constants is required\n";
        return 2;
    }

    try {
        PrecisionGuard guard(digits);
        RunConfig config;
        config.digits = digits;
        config.tolerance = Real(0);
        config.jobs = jobs;
        config.report_dir = report_dir;
        config.format = format_str == "text" ? ReportFormat::text : ReportFormat::json;
        if (!tolerance_str.empty()) {
            try {
                config.tolerance = Real(tolerance_str);
            } catch (const std::exception&) {
                std::cerr << "error: cannot parse tolerance '" << tolerance_str
                          << "'\n";
                return 2;
            }
            if (!(config.tolerance > 0)) {
                std::cerr << "error: tolerance must be positive\n";
                return 2;
            }
        }

        auto emit = [&](const VerificationReport& r) {
            std::cout << (config.format == ReportFormat::json ? report_to_json(r)
                                                              : report_to_text(r));
            if (!config.report_dir.empty())
                write_report(r, config.report_dir, config.format);
        };

        if (all) {
            RunSummary summary = run_all(config);   // run_all writes the files
            for (const auto& r : summary.reports)
                std::cout << (config.format == ReportFormat::json
                                  ? report_to_json(r)
                                  : report_to_text(r));
            return summary.all_verified ? 0 : 1;
        }

        const Real tol =
            config.tolerance > 0 ? config.tolerance : default_tolerance(digits);
        auto ctx = ctx_new(digits);

        if (headline) {
            auto r = verify_headline(ctx, tol);
            emit(r);
            return r.verified() ? 0 : 1;
        }
        if (constants) {
            auto r = verify_constants(ctx, tol);
            emit(r);
            return r.verified() ? 0 : 1;
        }

        auto registry = load_registry(default_registry_path());
        for (const auto& e : registry) {
            if (e.id != entry_id) continue;
            auto r = verify_entry(e, ctx, tol);
            emit(r);
            return r.verified() ? 0 : 1;
        }
        std::cerr << "error: no registry entry with id '" << entry_id << "'\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
}
