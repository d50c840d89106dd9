// Copyright (c) 2026 the gridfst authors
// SPDX-License-Identifier: Apache-2.0

#include "gridfst/alphabet.hpp"

#include <set>

namespace gridfst {

Motion motion_from_glyph(std::string_view g) {
    for (int i = 0; i < kNumMotions; ++i) {
        if (g == kMotionGlyphs[i]) return static_cast<Motion>(i);
    }
    fail(Errc::parse, "unknown motion token: " + std::string(g));
}

Sym Alphabet::operator_index() const { return index_of(operator_glyph); }

const std::string& Alphabet::glyph(Sym s) const {
    if (!valid(s)) fail(Errc::invalid_symbol, "symbol index out of range: " + std::to_string(s));
    return symbols[static_cast<std::size_t>(s)];
}

Sym Alphabet::index_of(std::string_view g) const {
    for (int i = 0; i < size(); ++i) {
        if (symbols[static_cast<std::size_t>(i)] == g) return i;
    }
    fail(Errc::invalid_symbol, "glyph not in alphabet: " + std::string(g));
}

Alphabet Alphabet::arithmetic(int radix, std::string operator_glyph) {
    if (radix < 2 || radix > 10) fail(Errc::precondition, "radix must be in 2..10");
    Alphabet a;
    a.radix = radix;
    for (int d = 0; d < radix; ++d) a.symbols.push_back(std::string(1, static_cast<char>('0' + d)));
    a.symbols.push_back(kLambdaGlyph);
    a.lambda_index = radix;
    a.symbols.push_back(operator_glyph);
    a.operator_glyph = std::move(operator_glyph);
    a.validate();
    return a;
}

void Alphabet::validate() const {
    if (size() < 2) fail(Errc::integrity, "alphabet needs at least two symbols");
    if (lambda_index < 0 || lambda_index >= size()) fail(Errc::integrity, "lambda index out of range");
    std::set<std::string> seen;
    int lambda_count = 0;
    for (const auto& s : symbols) {
        if (!seen.insert(s).second) fail(Errc::integrity, "duplicate symbol glyph: " + s);
        if (s == kLambdaGlyph) ++lambda_count;
    }
    if (symbols[static_cast<std::size_t>(lambda_index)] != kLambdaGlyph || lambda_count != 1)
        fail(Errc::integrity, "the empty symbol must appear exactly once");
    if (radix < 0 || radix > size()) fail(Errc::integrity, "radix out of range");
    for (int d = 0; d < radix; ++d) {
        if (symbols[static_cast<std::size_t>(d)] != std::string(1, static_cast<char>('0' + d)))
            fail(Errc::integrity, "digit glyphs must occupy indices 0..radix-1");
    }
}

int task_radix(ExpertTask t) {
    return (t == ExpertTask::add2 || t == ExpertTask::mult2) ? 2 : 10;
}

bool task_is_mult(ExpertTask t) {
    return t == ExpertTask::mult2 || t == ExpertTask::mult10;
}

const char* task_name(ExpertTask t) {
    switch (t) {
        case ExpertTask::add2: return "add2";
        case ExpertTask::add10: return "add10";
        case ExpertTask::mult2: return "mult2";
        case ExpertTask::mult10: return "mult10";
    }
    return "?";
}

ExpertTask task_from_name(std::string_view name) {
    if (name == "add2") return ExpertTask::add2;
    if (name == "add10") return ExpertTask::add10;
    if (name == "mult2") return ExpertTask::mult2;
    if (name == "mult10") return ExpertTask::mult10;
    fail(Errc::parse, "unknown task: " + std::string(name));
}

Alphabet task_alphabet(ExpertTask t) {
    return Alphabet::arithmetic(task_radix(t), task_is_mult(t) ? "\xc3\x97" : "+");
}

}  // namespace gridfst
