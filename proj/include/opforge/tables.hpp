#pragma once

#include "opforge/expr.hpp"

#include <string>
#include <vector>

namespace opforge {

// One computed entry of a golden table. `operad`, `colors` and `coinvariant`
// describe the evaluation context under which `value` reads back.
struct GoldenRow {
    std::string command;  // compose, brace, coproduct or theta
    std::string operad;
    int colors = 0;
    bool coinvariant = false;
    std::string handle;   // coproduct rows only
    std::string input;
    Value value;
};

std::vector<std::string> golden_ids();
// Throws std::invalid_argument on an unknown id.
std::vector<GoldenRow> golden_table(const std::string& id);
// One line per row: "<command> [<context>] <input> = <value>".
std::string golden_text(const std::vector<GoldenRow>& rows);

}  // namespace opforge
