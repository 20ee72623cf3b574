#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "bpss/error.hpp"
#include "report.hpp"

using namespace bpss;
using namespace bpss::cli;

namespace {

int fail_usage(const std::string& msg) {
    std::cerr << "error: " << msg << '\n';
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Milnor operations and the Atiyah-Hirzebruch spectral sequence for BP<m>^*(BG_n), G_n = SL2^{n+1}/mu2"};
    app.require_subcommand(1);

    RunConfig cfg;
    int n = -1, m = -1;
    bool allow_large = false;
    std::string format = "table";
    std::map<std::string, Format> formats{{"table", Format::Table}, {"json", Format::Json}, {"csv", Format::Csv}};

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--n", n, "number of SL2 factors minus one");
        sub->add_option("--m", m, "truncation level of BP<m>");
        sub->add_option("--cutoff", cfg.cutoff, "report region s + t <= cutoff")->capture_default_str();
        sub->add_option("--format", format, "table, json or csv")
            ->check(CLI::IsMember({"table", "json", "csv"}))
            ->capture_default_str();
        sub->add_flag("--allow-large", allow_large, "lift the n <= 4, m <= 5 guard");
    };

    auto* report = app.add_subcommand("report", "print a computed table");
    std::string kind;
    report->add_option("kind", kind, "cohomology, milnor, families, page or einfty")
        ->required()
        ->check(CLI::IsMember({"cohomology", "milnor", "families", "page", "einfty"}));
    add_common(report);
    report->add_option("--page", cfg.page, "page index u of E_u")->capture_default_str();
    report->add_option("--r", cfg.r, "family index, or the largest j for milnor")->capture_default_str();
    report->add_option("--max-degree", cfg.max_degree, "largest degree for cohomology (default: cutoff)");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    verify->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
    add_common(verify);
    verify->add_option("--seed", cfg.seed, "seed for random samples")->capture_default_str();
    verify->add_option("--samples", cfg.samples, "random targets per cell")->capture_default_str();

    CLI11_PARSE(app, argc, argv);
    cfg.format = formats.at(format);

    if (cfg.cutoff < 8) return fail_usage("--cutoff must be at least 8");
    if (n != -1 && n < 1) return fail_usage("--n must be at least 1");
    if (m < -1) return fail_usage("--m must be non-negative");
    if (!allow_large && (n > 4 || m > 5)) return fail_usage("n <= 4 and m <= 5 unless --allow-large is given");

    try {
        if (report->parsed()) {
            cfg.n = n == -1 ? 1 : n;
            cfg.m = m == -1 ? 0 : m;
            if (kind == "cohomology") {
                report_cohomology(cfg, std::cout);
            } else if (kind == "milnor") {
                report_milnor(cfg, std::cout);
            } else if (kind == "families") {
                if (cfg.r < 1) return fail_usage("--r must be at least 1");
                report_families(cfg, std::cout);
            } else {
                if (cfg.page < 2) return fail_usage("--page must be at least 2");
                EPage page = build_e2(cfg.n, cfg.m, cfg.cutoff);
                page = kind == "page" ? advance_to(page, cfg.page) : e_infinity(page);
                report_page(page, cfg, std::cout);
            }
            return 0;
        }
        VerifyOptions opt;
        opt.n = n == -1 ? 0 : n;
        opt.m = m;
        opt.cutoff = cfg.cutoff;
        opt.seed = cfg.seed;
        opt.samples = cfg.samples;
        SuiteResult res = run_suite(suite, opt);
        report_suite(res, cfg, std::cout);
        return res.passed() ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
