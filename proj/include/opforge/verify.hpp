#pragma once

#include "opforge/characters.hpp"
#include "opforge/hopf.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace opforge {

// Injected faults used to check that the suites can fail.
//   SignFlip   : operad suites run on the sign-bugged operad; the other
//                suites negate the first term of every computed value.
//   DropTerm   : the last term of every computed value is dropped.
//   SwapTensor : tensor factors of every computed tensor are exchanged
//                (suites without tensor-valued checks reject it).
enum class Mutation { None, SignFlip, DropTerm, SwapTensor };

Mutation parse_mutation(const std::string& s);
std::string mutation_name(Mutation m);

struct SuiteParams {
    std::map<std::string, std::string> values;
    std::uint64_t seed = 1;
    Mutation mutation = Mutation::None;

    std::string get(const std::string& key, const std::string& fallback) const;
    int get_int(const std::string& key, int fallback) const;
    bool has(const std::string& key) const { return values.count(key) > 0; }
};

struct Counterexample {
    std::string check;
    std::string inputs;
    std::string lhs;
    std::string rhs;
};

struct SuiteReport {
    std::string suite;
    std::map<std::string, std::string> params;  // effective parameters
    long long cases = 0;
    long long failure_count = 0;
    std::vector<Counterexample> failures;  // the first max_stored failures

    static constexpr std::size_t max_stored = 20;
    bool passed() const { return failure_count == 0; }
};

std::vector<std::string> suite_ids();
// Throws std::invalid_argument on an unknown suite or parameter value and
// CapacityError on guard overflow.
SuiteReport run_suite(const std::string& id, const SuiteParams& params);

std::string report_text(const SuiteReport& r);

// Key sets shared by the suites and the tests.
std::vector<Obj> letter_set(const Operad& op, int max_arity, bool coinvariant);
// Words (or sorted monomials) of letters with total size in [1, max_total]
// and at most max_len letters.
std::vector<Mono> key_words(const std::vector<Obj>& letters, int max_total, int max_len, bool commutative);

}  // namespace opforge
