#pragma once

#include <iosfwd>
#include <string>

#include "bpss/ahss.hpp"
#include "bpss/verify.hpp"

namespace bpss::cli {

enum class Format { Table, Json, Csv };

struct RunConfig {
    int n = 1;
    int m = 0;
    int cutoff = 48;
    int page = 2;
    int r = 1;
    int max_degree = -1;  // -1: the cutoff
    uint64_t seed = 1;
    int samples = 500;
    Format format = Format::Table;
};

void report_cohomology(const RunConfig& cfg, std::ostream& out);
void report_milnor(const RunConfig& cfg, std::ostream& out);
void report_families(const RunConfig& cfg, std::ostream& out);
void report_page(const EPage& page, const RunConfig& cfg, std::ostream& out);
void report_suite(const SuiteResult& res, const RunConfig& cfg, std::ostream& out);

}  // namespace bpss::cli
