// Copyright (c) 2026 the gridfst authors
// SPDX-License-Identifier: Apache-2.0

#include "gridfst/fst.hpp"

#include <sstream>

namespace gridfst {

void FstSpec::validate() const {
    if (n_states <= 0) fail(Errc::integrity, "fst: need at least one state");
    if (q0 < 0 || q0 >= n_states || qf < 0 || qf >= n_states)
        fail(Errc::integrity, "fst: q0/qf out of range");
    if (delta.size() != static_cast<std::size_t>(n_states) * static_cast<std::size_t>(alphabet.size()))
        fail(Errc::integrity, "fst: delta size mismatch");
    alphabet.validate();
    for (int q = 0; q < n_states; ++q) {
        for (Sym s = 0; s < alphabet.size(); ++s) {
            const auto& t = at(q, s);
            if (!t) continue;
            if (q == qf) fail(Errc::integrity, "fst: final state must have no outgoing transitions");
            if (t->next_state < 0 || t->next_state >= n_states)
                fail(Errc::integrity, "fst: transition target out of range");
            if (!alphabet.valid(t->write)) fail(Errc::integrity, "fst: written symbol out of range");
        }
    }
}

StepResult step_fst(const FstSpec& spec, int q, WorldState& w, Position& p) {
    if (q == spec.qf) fail(Errc::precondition, "step_fst: agent already halted");
    const Sym obs = w.read(p);
    const auto& t = spec.at(q, obs);
    if (!t)
        fail(Errc::incomplete_table, "undefined transition at state " + std::to_string(q) +
                                         ", symbol " + spec.alphabet.glyph(obs));
    w.write(p, t->write);
    p = apply_motion(p, t->move);
    return {t->next_state, t->write, t->move};
}

RunResult run_fst(const FstSpec& spec, WorldState& w, Position p0, std::int64_t max_steps) {
    if (max_steps <= 0) fail(Errc::precondition, "run_fst: max_steps must be positive");
    Position p = p0;
    int q = spec.q0;
    RunResult r;
    while (q != spec.qf && r.steps < max_steps) {
        q = step_fst(spec, q, w, p).state;
        ++r.steps;
    }
    r.halted = (q == spec.qf);
    return r;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
        if (tok[0] == '#') break;
        out.push_back(tok);
    }
    return out;
}

int parse_int(const std::string& tok, int line_no) {
    try {
        std::size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        fail(Errc::parse, "line " + std::to_string(line_no) + ": expected integer, got '" + tok + "'");
    }
}

}  // namespace

FstSpec parse_fst(const std::string& text) {
    FstSpec spec;
    bool have_states = false;
    struct RawTransition {
        int line_no;
        std::string q, s, q2, s2, m;
    };
    std::vector<RawTransition> raw;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        const std::string& key = toks[0];
        if (key == "alphabet") {
            spec.alphabet.symbols.assign(toks.begin() + 1, toks.end());
        } else if (key == "lambda" && toks.size() == 2) {
            spec.alphabet.lambda_index = parse_int(toks[1], line_no);
        } else if (key == "radix" && toks.size() == 2) {
            spec.alphabet.radix = parse_int(toks[1], line_no);
        } else if (key == "operator" && toks.size() == 2) {
            spec.alphabet.operator_glyph = toks[1];
        } else if (key == "states" && toks.size() == 2) {
            spec.n_states = parse_int(toks[1], line_no);
            have_states = true;
        } else if (key == "q0" && toks.size() == 2) {
            spec.q0 = parse_int(toks[1], line_no);
        } else if (key == "qf" && toks.size() == 2) {
            spec.qf = parse_int(toks[1], line_no);
        } else if (toks.size() == 6 && toks[2] == "->") {
            raw.push_back({line_no, toks[0], toks[1], toks[3], toks[4], toks[5]});
        } else {
            fail(Errc::parse, "line " + std::to_string(line_no) + ": unrecognized syntax");
        }
    }
    if (!have_states || spec.alphabet.symbols.empty())
        fail(Errc::parse, "missing states/alphabet header");
    try {
        spec.alphabet.validate();
    } catch (const Error& e) {
        fail(Errc::parse, std::string("bad alphabet header: ") + e.what());
    }
    spec.delta.assign(static_cast<std::size_t>(spec.n_states) *
                          static_cast<std::size_t>(spec.alphabet.size()),
                      std::nullopt);
    for (const auto& r : raw) {
        const int q = parse_int(r.q, r.line_no);
        const int q2 = parse_int(r.q2, r.line_no);
        if (q < 0 || q >= spec.n_states || q2 < 0 || q2 >= spec.n_states)
            fail(Errc::parse, "line " + std::to_string(r.line_no) + ": state out of range");
        Sym s, s2;
        Motion m;
        try {
            s = spec.alphabet.index_of(r.s);
            s2 = spec.alphabet.index_of(r.s2);
            m = motion_from_glyph(r.m);
        } catch (const Error& e) {
            fail(Errc::parse, "line " + std::to_string(r.line_no) + ": " + e.what());
        }
        if (spec.at(q, s)) fail(Errc::parse, "line " + std::to_string(r.line_no) + ": duplicate transition");
        spec.set(q, s, Transition{q2, s2, m});
    }
    spec.validate();
    return spec;
}

std::string dump_fst(const FstSpec& spec) {
    std::ostringstream out;
    out << "alphabet";
    for (const auto& s : spec.alphabet.symbols) out << ' ' << s;
    out << '\n';
    out << "lambda " << spec.alphabet.lambda_index << '\n';
    out << "radix " << spec.alphabet.radix << '\n';
    out << "operator " << spec.alphabet.operator_glyph << '\n';
    out << "states " << spec.n_states << '\n';
    out << "q0 " << spec.q0 << '\n';
    out << "qf " << spec.qf << '\n';
    for (int q = 0; q < spec.n_states; ++q) {
        for (Sym s = 0; s < spec.alphabet.size(); ++s) {
            const auto& t = spec.at(q, s);
            if (!t) continue;
            out << q << ' ' << spec.alphabet.glyph(s) << " -> " << t->next_state << ' '
                << spec.alphabet.glyph(t->write) << ' '
                << kMotionGlyphs[static_cast<int>(t->move)] << '\n';
        }
    }
    return out.str();
}

FstSpec random_fst(Rng& rng, const Alphabet& a, int n_states) {
    if (n_states < 2) fail(Errc::precondition, "random_fst: need at least 2 states");
    FstSpec spec;
    spec.alphabet = a;
    spec.n_states = n_states;
    spec.q0 = 0;
    spec.qf = n_states - 1;
    spec.delta.assign(static_cast<std::size_t>(n_states) * static_cast<std::size_t>(a.size()),
                      std::nullopt);
    for (int q = 0; q + 1 < n_states; ++q) {
        for (Sym s = 0; s < a.size(); ++s) {
            Transition t;
            t.next_state = static_cast<int>(rng.index(static_cast<std::uint64_t>(n_states)));
            t.write = static_cast<Sym>(rng.index(static_cast<std::uint64_t>(a.size())));
            t.move = static_cast<Motion>(rng.index(kNumMotions));
            spec.set(q, s, t);
        }
    }
    spec.validate();
    return spec;
}

}  // namespace gridfst
