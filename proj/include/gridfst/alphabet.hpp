// Copyright (c) 2026 the gridfst authors
// SPDX-License-Identifier: Apache-2.0
//
// Symbol alphabets and motion tokens.
//
// Token index layout is frozen for dataset/checkpoint portability:
// digits 0..R-1 occupy indices 0..R-1, the empty symbol comes next,
// then the operator. Motions are U=0, D=1, L=2, R=3, S=4.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gridfst/errors.hpp"

namespace gridfst {

using Sym = int;

enum class Motion : int { Up = 0, Down = 1, Left = 2, Right = 3, Stay = 4 };

inline constexpr int kNumMotions = 5;
inline constexpr const char* kMotionGlyphs[kNumMotions] = {"U", "D", "L", "R", "S"};

Motion motion_from_glyph(std::string_view g);

struct Alphabet {
    std::vector<std::string> symbols;
    int lambda_index = -1;
    int radix = 0;
    std::string operator_glyph;

    int size() const { return static_cast<int>(symbols.size()); }
    bool valid(Sym s) const { return s >= 0 && s < size(); }
    Sym lambda() const { return lambda_index; }
    Sym operator_index() const;
    const std::string& glyph(Sym s) const;
    Sym index_of(std::string_view glyph) const;  // throws invalid_symbol
    bool is_digit(Sym s) const { return s >= 0 && s < radix; }

    // Digits, then the empty symbol, then the operator. Radix 2..10.
    static Alphabet arithmetic(int radix, std::string operator_glyph);

    void validate() const;
    bool operator==(const Alphabet&) const = default;
};

inline constexpr const char* kLambdaGlyph = "\xce\xbb";  // UTF-8 lambda

enum class ExpertTask { add2, add10, mult2, mult10 };

int task_radix(ExpertTask t);
bool task_is_mult(ExpertTask t);
const char* task_name(ExpertTask t);
ExpertTask task_from_name(std::string_view name);
Alphabet task_alphabet(ExpertTask t);

}  // namespace gridfst
