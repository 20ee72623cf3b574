#include "bpss/error.hpp"
#include "bpss/verify.hpp"
#include "doctest.h"

using namespace bpss;

TEST_CASE("zero checks is not a pass") {
    SuiteResult r;
    CHECK_FALSE(r.passed());
    r.checks = 3;
    CHECK(r.passed());
    r.failures = 1;
    CHECK_FALSE(r.passed());
}

TEST_CASE("small suites pass") {
    VerifyOptions opt;
    for (const char* s : {"lemma32", "prop31", "lemma33", "cohomology"}) {
        SuiteResult r = run_suite(s, opt);
        INFO(s << ": " << r.first_failure);
        CHECK(r.checks > 0);
        CHECK(r.passed());
    }
}

TEST_CASE("preimage suite with a few samples") {
    VerifyOptions opt;
    opt.n = 3;
    opt.samples = 25;
    opt.seed = 7;
    SuiteResult r = run_suite("prop34", opt);
    INFO(r.first_failure);
    CHECK(r.passed());
}

TEST_CASE("page suite at a small cutoff") {
    VerifyOptions opt;
    opt.n = 1;
    opt.m = 2;
    opt.cutoff = 16;
    SuiteResult r = run_suite("pages", opt);
    INFO(r.first_failure);
    CHECK(r.passed());
}

TEST_CASE("unknown suite") {
    CHECK(suite_names().size() >= 7);
    CHECK_THROWS_AS(run_suite("nope", VerifyOptions{}), Error);
}
