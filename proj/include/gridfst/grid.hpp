// Copyright (c) 2026 the gridfst authors
// SPDX-License-Identifier: Apache-2.0
//
// The symbolic universe over the integer plane: sparse world-states,
// cell reads/writes and unit motions. Only non-empty cells are stored,
// so memory is O(occupied cells) regardless of how far an agent roams.
//
// Coordinate convention (frozen): +col = right, +row = up.

#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>

#include "gridfst/alphabet.hpp"

namespace gridfst {

struct Position {
    std::int64_t col = 0;
    std::int64_t row = 0;
    bool operator==(const Position&) const = default;
};

struct PositionHash {
    std::size_t operator()(const Position& p) const {
        std::uint64_t h = static_cast<std::uint64_t>(p.col) * 0x9e3779b97f4a7c15ULL;
        h ^= static_cast<std::uint64_t>(p.row) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

Position apply_motion(Position p, Motion m);

class WorldState {
public:
    WorldState(int n_symbols, Sym lambda) : n_symbols_(n_symbols), lambda_(lambda) {}
    explicit WorldState(const Alphabet& a) : WorldState(a.size(), a.lambda()) {}

    Sym read(Position p) const {
        auto it = cells_.find(p);
        return it == cells_.end() ? lambda_ : it->second;
    }

    // Writing the empty symbol deletes the entry.
    void write(Position p, Sym s) {
        if (s < 0 || s >= n_symbols_) fail(Errc::invalid_symbol, "write: symbol index out of range");
        if (s == lambda_) {
            cells_.erase(p);
        } else {
            cells_[p] = s;
        }
    }

    Sym lambda() const { return lambda_; }
    int n_symbols() const { return n_symbols_; }
    std::size_t occupied() const { return cells_.size(); }
    const std::unordered_map<Position, Sym, PositionHash>& cells() const { return cells_; }

private:
    int n_symbols_;
    Sym lambda_;
    std::unordered_map<Position, Sym, PositionHash> cells_;
};

// Places glyphs left-to-right starting at `start`. Glyph i lands at
// (start.col + i, start.row). Multi-byte glyphs are matched greedily
// against the alphabet (longest match first).
void write_string(WorldState& w, const Alphabet& a, Position start, std::string_view glyphs);

// Extracts the single maximal horizontal run of non-empty cells.
// Errors: empty world -> no_answer; more than one run or more than one
// occupied row -> ambiguous_answer.
std::string read_answer(const WorldState& w, const Alphabet& a);

}  // namespace gridfst
