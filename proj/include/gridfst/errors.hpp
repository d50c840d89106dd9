// Copyright (c) 2026 the gridfst authors
// SPDX-License-Identifier: Apache-2.0
//
// Error taxonomy shared by all components.

#pragma once

#include <stdexcept>
#include <string>

namespace gridfst {

enum class Errc {
    invalid_symbol,
    no_answer,
    ambiguous_answer,
    incomplete_table,
    runaway_expert,
    infeasible_n,
    parse,
    integrity,
    degenerate_sample,
    non_finite,
    precondition,
    io,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::invalid_symbol: return "invalid-symbol";
        case Errc::no_answer: return "no-answer";
        case Errc::ambiguous_answer: return "ambiguous-answer";
        case Errc::incomplete_table: return "incomplete-table";
        case Errc::runaway_expert: return "runaway-expert";
        case Errc::infeasible_n: return "infeasible-n";
        case Errc::parse: return "parse";
        case Errc::integrity: return "integrity";
        case Errc::degenerate_sample: return "degenerate-sample";
        case Errc::non_finite: return "non-finite";
        case Errc::precondition: return "precondition";
        case Errc::io: return "io";
    }
    return "unknown";
}

}  // namespace gridfst
