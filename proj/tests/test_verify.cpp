#include <string>

#include "bethecorr/errors.hpp"
#include "bethecorr/verify.hpp"
#include "doctest.h"

namespace vf = bethecorr::verify;

TEST_CASE("every suite passes at a modest instance count") {
    for (const std::string& name : vf::suite_names()) {
        CAPTURE(name);
        const auto report = vf::run_suite(name, 42, 25);
        CHECK(report.all_passed());
        CHECK(report.suite == name);
        for (const auto& p : report.properties) {
            CAPTURE(p.name);
            CHECK(p.worst <= p.tolerance);
            CHECK(p.instances >= 1);
        }
    }
}

TEST_CASE("the aggregate run concatenates the suites in order") {
    const auto all = vf::run_suite("all", 7, 5);
    CHECK(all.all_passed());
    std::size_t total = 0;
    std::size_t cursor = 0;
    for (const std::string& name : vf::suite_names()) {
        const auto single = vf::run_suite(name, 7, 5);
        total += single.properties.size();
        for (const auto& p : single.properties) {
            REQUIRE(cursor < all.properties.size());
            CHECK(all.properties[cursor].name == p.name);
            CHECK(all.properties[cursor].worst == p.worst);
            ++cursor;
        }
    }
    CHECK(all.properties.size() == total);
}

TEST_CASE("reports are byte-identical for equal seeds and differ otherwise") {
    const auto a = vf::run_suite("lemmas", 123, 20);
    const auto b = vf::run_suite("lemmas", 123, 20);
    CHECK(vf::render_report(a) == vf::render_report(b));

    const auto c = vf::run_suite("lemmas", 124, 20);
    bool any_differs = false;
    for (std::size_t k = 0; k < a.properties.size(); ++k)
        if (a.properties[k].worst != c.properties[k].worst) any_differs = true;
    CHECK(any_differs);
}

TEST_CASE("report text carries one line per property and a verdict") {
    const auto report = vf::run_suite("kernel", 1, 3);
    const std::string text = vf::render_report(report);
    CHECK(text.find("verify suite=kernel seed=1 trials=3") == 0);
    std::size_t lines = 0;
    for (const char ch : text)
        if (ch == '\n') ++lines;
    CHECK(lines == report.properties.size() + 2);
    CHECK(text.find("result: pass") != std::string::npos);
    CHECK(text.find("kernel/f-equals-one-plus-g") != std::string::npos);
}

TEST_CASE("a failed property is visible in the report") {
    auto report = vf::run_suite("kernel", 5, 2);
    report.properties.front().worst = 1.0;
    CHECK_FALSE(report.all_passed());
    const std::string text = vf::render_report(report);
    CHECK(text.find("FAIL") != std::string::npos);
    CHECK(text.find("result: FAIL") != std::string::npos);
}

TEST_CASE("unknown suites and degenerate trial counts are rejected") {
    CHECK_THROWS_AS(vf::run_suite("kernels", 1, 10), bethecorr::DomainError);
    CHECK_THROWS_AS(vf::run_suite("", 1, 10), bethecorr::DomainError);
    CHECK_THROWS_AS(vf::run_suite("kernel", 1, 0), bethecorr::DomainError);
}
