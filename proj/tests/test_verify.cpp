#include "doctest.h"
#include "opforge/verify.hpp"

#include <stdexcept>

using namespace opforge;

namespace {

SuiteParams params(std::map<std::string, std::string> v, Mutation m = Mutation::None, std::uint64_t seed = 1) {
    SuiteParams p;
    p.values = std::move(v);
    p.mutation = m;
    p.seed = seed;
    return p;
}

}  // namespace

TEST_CASE("pre-Lie suite on PreLie") {
    const SuiteReport r = run_suite("prelie", params({{"operad", "PreLie"}, {"max_vertices", "4"}}));
    CHECK(r.passed());
    CHECK(r.cases >= 1000);
    CHECK(r.params.at("max_each") == "4");
}

TEST_CASE("sign bug is caught with a three-tree counterexample") {
    const SuiteReport r = run_suite("prelie", params({{"operad", "PreLie"}}, Mutation::SignFlip));
    REQUIRE_FALSE(r.passed());
    const auto& f = r.failures.front();
    CHECK(f.inputs.find("x=tree[") != std::string::npos);
    CHECK(f.inputs.find("y=tree[") != std::string::npos);
    CHECK(f.inputs.find("z=tree[") != std::string::npos);
    CHECK(f.lhs != f.rhs);
    CHECK(r.failures.size() <= SuiteReport::max_stored);
    CHECK(r.params.at("mutation") == "sign-flip");
}

TEST_CASE("cointeraction suite") {
    for (const char* n : {"1", "2"}) {
        const SuiteReport r = run_suite("cointeraction", params({{"N", n}, {"max_vertices", "3"}}));
        CHECK(r.passed());
        CHECK(r.cases > 50);
    }
}

TEST_CASE("every suite passes at its defaults") {
    for (const auto& id : suite_ids()) {
        CAPTURE(id);
        const SuiteReport r = run_suite(id, {});
        CHECK(r.passed());
        CHECK(r.cases > 0);
    }
}

TEST_CASE("every mutation produces counterexamples") {
    struct Case {
        const char* suite;
        std::map<std::string, std::string> values;
    };
    const std::vector<Case> cases = {
        {"operad-assoc", {{"operad", "As"}}},
        {"prelie", {}},
        {"brace", {}},
        {"binf", {}},
        {"dendriform", {}},
        {"bialgebra", {{"handle", "ck"}}},
        {"bialgebra", {{"handle", "quasi-shuffle"}}},
        {"pairing", {{"handle", "ck-gl"}}},
        {"cointeraction", {}},
        {"monoid", {{"operad", "PreLie"}}},
        {"antipode", {{"handle", "gl"}}},
    };
    for (const auto& c : cases)
        for (auto m : {Mutation::SignFlip, Mutation::DropTerm, Mutation::SwapTensor}) {
            CAPTURE(c.suite);
            CAPTURE(mutation_name(m));
            const auto p = params(c.values, m);
            const std::string id = c.suite;
            const bool tensors = id == "dendriform" || id == "bialgebra" || id == "pairing" || id == "cointeraction";
            if (m == Mutation::SwapTensor && !tensors) {
                CHECK_THROWS_AS(run_suite(id, p), std::invalid_argument);
                continue;
            }
            const SuiteReport r = run_suite(id, p);
            CHECK(r.failure_count >= 1);
            CHECK_FALSE(r.failures.empty());
        }
}

TEST_CASE("reports are deterministic") {
    const auto p = params({{"operad", "PreLie"}, {"bound", "4"}}, Mutation::DropTerm, 7);
    CHECK(report_text(run_suite("monoid", p)) == report_text(run_suite("monoid", p)));
    const auto q = params({{"operad", "PreLie"}}, Mutation::SignFlip);
    CHECK(report_text(run_suite("prelie", q)) == report_text(run_suite("prelie", q)));
}

TEST_CASE("seeded suites pass for several seeds") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        CHECK(run_suite("monoid", params({{"operad", "Com"}}, Mutation::None, seed)).passed());
        CHECK(run_suite("monoid", params({{"operad", "PreLie"}, {"colors", "1"}}, Mutation::None, seed)).passed());
    }
}

TEST_CASE("passing at a bound implies passing below it") {
    for (int b = 2; b <= 5; ++b) {
        CAPTURE(b);
        const auto bs = std::to_string(b);
        CHECK(run_suite("operad-assoc", params({{"operad", "PreLie"}, {"max_total", bs}})).passed());
        CHECK(run_suite("monoid", params({{"operad", "Com"}, {"bound", bs}})).passed());
        CHECK(run_suite("bialgebra", params({{"handle", "ck"}, {"max_vertices", bs}})).passed());
    }
}

TEST_CASE("suite errors") {
    CHECK_THROWS_AS(run_suite("nope", {}), std::invalid_argument);
    CHECK_THROWS_AS(run_suite("prelie", params({{"operad", "Lie"}})), std::invalid_argument);
    CHECK_THROWS_AS(run_suite("prelie", params({{"bogus", "1"}})), std::invalid_argument);
    CHECK_THROWS_AS(run_suite("prelie", params({{"max_total", "x"}})), std::invalid_argument);
    CHECK_THROWS_AS(run_suite("antipode", params({{"handle", "ec"}})), std::invalid_argument);
    CHECK_THROWS_AS(parse_mutation("flip"), std::invalid_argument);
    CHECK(parse_mutation("swap_tensor") == Mutation::SwapTensor);
}
