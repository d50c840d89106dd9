// Copyright (c) 2026 the gridfst authors
// SPDX-License-Identifier: Apache-2.0

#include "gridfst/grid.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace gridfst {

Position apply_motion(Position p, Motion m) {
    switch (m) {
        case Motion::Up: return {p.col, p.row + 1};
        case Motion::Down: return {p.col, p.row - 1};
        case Motion::Left: return {p.col - 1, p.row};
        case Motion::Right: return {p.col + 1, p.row};
        case Motion::Stay: return p;
    }
    return p;
}

void write_string(WorldState& w, const Alphabet& a, Position start, std::string_view glyphs) {
    // Greedy longest-match tokenization, so multi-byte glyphs work.
    std::vector<Sym> toks;
    std::size_t i = 0;
    while (i < glyphs.size()) {
        int best = -1;
        std::size_t best_len = 0;
        for (Sym s = 0; s < a.size(); ++s) {
            const std::string& g = a.symbols[static_cast<std::size_t>(s)];
            if (g.size() > best_len && glyphs.compare(i, g.size(), g) == 0) {
                best = s;
                best_len = g.size();
            }
        }
        if (best < 0) fail(Errc::invalid_symbol, "glyph not in alphabet at byte " + std::to_string(i));
        toks.push_back(best);
        i += best_len;
    }
    for (std::size_t k = 0; k < toks.size(); ++k) {
        w.write({start.col + static_cast<std::int64_t>(k), start.row}, toks[k]);
    }
}

std::string read_answer(const WorldState& w, const Alphabet& a) {
    if (w.occupied() == 0) fail(Errc::no_answer, "world is empty");
    std::int64_t row = 0;
    bool have_row = false;
    std::vector<std::int64_t> cols;
    for (const auto& [pos, sym] : w.cells()) {
        (void)sym;
        if (!have_row) {
            row = pos.row;
            have_row = true;
        } else if (pos.row != row) {
            fail(Errc::ambiguous_answer, "more than one occupied row");
        }
        cols.push_back(pos.col);
    }
    std::sort(cols.begin(), cols.end());
    for (std::size_t i = 1; i < cols.size(); ++i) {
        if (cols[i] != cols[i - 1] + 1) fail(Errc::ambiguous_answer, "more than one horizontal run");
    }
    std::string out;
    for (std::int64_t c : cols) out += a.glyph(w.read({c, row}));
    return out;
}

}  // namespace gridfst
