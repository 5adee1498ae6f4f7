#include <doctest.h>

#include "extlin/faults.hpp"
#include "extlin/laws.hpp"

using namespace extlin;
using laws::json;

TEST_CASE("every suite passes on a small batch") {
    for (const auto& name : laws::suite_names()) {
        laws::Report r = laws::run_suite(name, 7, 6);
        INFO(laws::render_text(r));
        CHECK(r.passed());
        CHECK(r.cases == 6);
    }
}

TEST_CASE("reports are deterministic in the seed") {
    laws::Report a = laws::run_suite("motivic_yoga", 11, 8);
    laws::Report b = laws::run_suite("motivic_yoga", 11, 8);
    json ja = laws::to_json(a), jb = laws::to_json(b);
    ja.erase("elapsed_ms");
    jb.erase("elapsed_ms");
    CHECK(ja == jb);
    CHECK(ja["suite"] == "motivic_yoga");
    CHECK(ja["seed"] == 11);
    CHECK(ja["failures"].empty());
}

TEST_CASE("zero cases pass vacuously") {
    laws::Report r = laws::run_suite("chain_model", 0, 0);
    CHECK(r.passed());
    CHECK(laws::render_text(r).rfind("PASS chain_model: 0 cases", 0) == 0);
}

TEST_CASE("unknown suites list the registered ones") {
    try {
        laws::run_suite("nosuch", 0, 1);
        FAIL("expected UnknownSuite");
    } catch (const laws::UnknownSuite& e) {
        std::string msg = e.what();
        CHECK(msg.find("nosuch") != std::string::npos);
        for (const auto& name : laws::suite_names())
            CHECK(msg.find(name) != std::string::npos);
    }
}

TEST_CASE("each injected fault is caught with a serialized counterexample") {
    const std::pair<faults::Fault, const char*> cases[] = {
        {faults::Fault::koszul_sign, "chain_model"},
        {faults::Fault::transpose_transport, "hq_coproducts"},
        {faults::Fault::corrupt_composition, "hq_coproducts"},
    };
    for (const auto& [fault, suite] : cases) {
        faults::Scoped scoped(fault);
        laws::Report r = laws::run_suite(suite, 0, 20);
        INFO(faults::name(fault));
        REQUIRE_FALSE(r.passed());
        CHECK_FALSE(r.failures.front().input.empty());
        CHECK_FALSE(r.failures.front().detail.empty());
    }
    CHECK(laws::run_suite("hq_coproducts", 0, 20).passed());
}
