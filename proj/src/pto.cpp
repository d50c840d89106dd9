// Copyright (c) 2026 the gridfst authors
// SPDX-License-Identifier: Apache-2.0

#include "gridfst/pto.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "gridfst/fileio.hpp"

namespace gridfst {

Pto record_pto(const FstSpec& spec, ExpertTask task, const std::string& a, const std::string& b,
               std::int64_t max_steps) {
    if (a.empty() || b.empty()) fail(Errc::precondition, "record_pto: operands must be non-empty");
    Pto pto;
    pto.task = task;
    pto.a = a;
    pto.b = b;
    WorldState w = make_input_world(spec.alphabet, a, b);
    Position p{0, 0};
    int q = spec.q0;
    std::int64_t steps = 0;
    while (q != spec.qf) {
        if (steps >= max_steps)
            fail(Errc::runaway_expert,
                 "expert did not halt within " + std::to_string(max_steps) + " steps on " + a +
                     spec.alphabet.operator_glyph + b);
        pto.x.push_back(w.read(p));
        const StepResult r = step_fst(spec, q, w, p);
        pto.s.push_back(r.written);
        pto.m.push_back(static_cast<int>(r.moved));
        q = r.state;
        ++steps;
    }
    return pto;
}

bool replay_consistent(const Pto& pto, const Alphabet& alphabet) {
    if (pto.x.size() != pto.s.size() || pto.x.size() != pto.m.size()) return false;
    WorldState w = make_input_world(alphabet, pto.a, pto.b);
    Position p{0, 0};
    for (std::size_t t = 0; t < pto.x.size(); ++t) {
        if (w.read(p) != pto.x[t]) return false;
        if (!alphabet.valid(pto.s[t]) || pto.m[t] < 0 || pto.m[t] >= kNumMotions) return false;
        w.write(p, pto.s[t]);
        p = apply_motion(p, static_cast<Motion>(pto.m[t]));
    }
    return true;
}

std::int64_t trace_length_bound(ExpertTask task) { return task_is_mult(task) ? 464 : 70; }

std::int64_t Dataset::max_t_len() const {
    std::int64_t m = 0;
    for (const auto& r : records) m = std::max(m, r.t_len());
    return m;
}

std::int64_t operand_count(int radix, int p) {
    std::int64_t total = 0, pow = 1;
    for (int l = 1; l <= p; ++l) {
        pow *= radix;
        total += pow;
    }
    return total;
}

namespace {

std::string pair_key(const std::string& a, const std::string& b) { return a + "|" + b; }

// Digit strings of length 1..p in (length, lexicographic) order.
std::vector<std::string> enumerate_operands(int radix, int p) {
    std::vector<std::string> out;
    for (int l = 1; l <= p; ++l) {
        std::string s(static_cast<std::size_t>(l), '0');
        for (;;) {
            out.push_back(s);
            int i = l - 1;
            while (i >= 0 && s[static_cast<std::size_t>(i)] == static_cast<char>('0' + radix - 1)) {
                s[static_cast<std::size_t>(i)] = '0';
                --i;
            }
            if (i < 0) break;
            ++s[static_cast<std::size_t>(i)];
        }
    }
    return out;
}

}  // namespace

Dataset ds_sample(ExpertTask task, int p, int q, std::int64_t n, std::uint64_t seed) {
    if (p < 1 || q < p) fail(Errc::precondition, "ds_sample: need 1 <= p <= q");
    const int radix = task_radix(task);
    Dataset ds;
    ds.task = task;
    ds.radix = radix;
    ds.p = p;
    ds.q = q;
    ds.n = n;
    ds.seed = seed;

    const std::int64_t ops_p = operand_count(radix, p);
    const std::int64_t s1 = ops_p * ops_p;
    const std::int64_t s2 = static_cast<std::int64_t>(radix) * radix;
    if (n < s1 + s2)
        fail(Errc::precondition, "ds_sample: N must be at least " + std::to_string(s1 + s2));
    const std::int64_t ops_q = operand_count(radix, q);
    if (n > ops_q * ops_q)
        fail(Errc::infeasible_n, "ds_sample: only " + std::to_string(ops_q * ops_q) +
                                     " distinct pairs exist, requested " + std::to_string(n));

    const FstSpec spec = expert_spec(task);
    std::unordered_set<std::string> seen;
    auto add_pair = [&](const std::string& a, const std::string& b) {
        if (!seen.insert(pair_key(a, b)).second) return false;
        ds.records.push_back(
            record_pto(spec, task, a, b, expert_step_budget(task, a.size(), b.size())));
        return true;
    };

    // Stratum 1: exhaustive small pairs.
    const auto small = enumerate_operands(radix, p);
    for (const auto& a : small) {
        for (const auto& b : small) add_pair(a, b);
    }
    ds.n_exhaustive = ds.records.size();

    // Stratum 2: same-digit q-digit pairs.
    for (int da = 0; da < radix; ++da) {
        for (int db = 0; db < radix; ++db) {
            add_pair(std::string(static_cast<std::size_t>(q), static_cast<char>('0' + da)),
                     std::string(static_cast<std::size_t>(q), static_cast<char>('0' + db)));
        }
    }
    ds.n_same_digit = ds.records.size() - ds.n_exhaustive;

    // Stratum 3: random distinct pairs with up to q digits.
    Rng rng = Rng::salted(seed, 0x64735f73616d70ULL);
    auto random_operand = [&] {
        const auto len = static_cast<std::size_t>(rng.range(1, q));
        std::string s;
        s.reserve(len);
        for (std::size_t i = 0; i < len; ++i)
            s.push_back(static_cast<char>('0' + rng.index(static_cast<std::uint64_t>(radix))));
        return s;
    };
    while (static_cast<std::int64_t>(ds.records.size()) < n) {
        add_pair(random_operand(), random_operand());
    }
    ds.n_random = ds.records.size() - ds.n_exhaustive - ds.n_same_digit;

    const std::int64_t bound = trace_length_bound(task);
    if (ds.max_t_len() > bound) {
        ds.warnings.push_back("max trace length " + std::to_string(ds.max_t_len()) +
                              " exceeds the reference bound " + std::to_string(bound) +
                              " (expert construction dependent)");
    }
    return ds;
}

namespace {

std::string csv_join(const std::vector<int>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out.push_back(',');
        out += std::to_string(v[i]);
    }
    return out;
}

std::vector<int> csv_split(const std::string& s, int line_no) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const std::size_t comma = std::min(s.find(',', pos), s.size());
        const std::string tok = s.substr(pos, comma - pos);
        if (tok.empty()) fail(Errc::parse, "line " + std::to_string(line_no) + ": empty token");
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            fail(Errc::parse, "line " + std::to_string(line_no) + ": bad integer '" + tok + "'");
        }
        if (comma == s.size()) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace

std::string serialize_dataset(const Dataset& ds) {
    const Alphabet al = task_alphabet(ds.task);
    std::ostringstream out;
    out << "gridfst-dataset 1\n";
    out << "task " << task_name(ds.task) << '\n';
    out << "radix " << ds.radix << '\n';
    out << "p " << ds.p << '\n';
    out << "q " << ds.q << '\n';
    out << "n " << ds.n << '\n';
    out << "seed " << ds.seed << '\n';
    out << "symbols";
    for (const auto& s : al.symbols) out << ' ' << s;
    out << '\n';
    out << "lambda " << al.lambda_index << '\n';
    out << "operator " << al.operator_glyph << '\n';
    out << "motions";
    for (const auto* m : kMotionGlyphs) out << ' ' << m;
    out << '\n';
    out << "strata " << ds.n_exhaustive << ' ' << ds.n_same_digit << ' ' << ds.n_random << '\n';
    for (const auto& r : ds.records) {
        out << "record " << r.a << ' ' << r.b << ' ' << csv_join(std::vector<int>(r.x.begin(), r.x.end()))
            << ' ' << csv_join(std::vector<int>(r.s.begin(), r.s.end())) << ' ' << csv_join(r.m)
            << '\n';
    }
    return out.str();
}

Dataset deserialize_dataset(const std::string& text) {
    Dataset ds;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool have_task = false;
    std::vector<std::string> symbols;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string key;
        ss >> key;
        if (line_no == 1) {
            if (line != "gridfst-dataset 1") fail(Errc::parse, "line 1: not a gridfst dataset");
            continue;
        }
        if (key == "task") {
            std::string name;
            ss >> name;
            ds.task = task_from_name(name);
            have_task = true;
        } else if (key == "radix") {
            ss >> ds.radix;
        } else if (key == "p") {
            ss >> ds.p;
        } else if (key == "q") {
            ss >> ds.q;
        } else if (key == "n") {
            ss >> ds.n;
        } else if (key == "seed") {
            ss >> ds.seed;
        } else if (key == "symbols") {
            std::string tok;
            while (ss >> tok) symbols.push_back(tok);
        } else if (key == "lambda" || key == "operator" || key == "motions") {
            // self-description; validated against the task alphabet below
        } else if (key == "strata") {
            ss >> ds.n_exhaustive >> ds.n_same_digit >> ds.n_random;
        } else if (key == "record") {
            if (!have_task) fail(Errc::parse, "line " + std::to_string(line_no) + ": record before task");
            Pto r;
            r.task = ds.task;
            std::string xs, ssym, ms;
            ss >> r.a >> r.b >> xs >> ssym >> ms;
            if (ss.fail()) fail(Errc::parse, "line " + std::to_string(line_no) + ": malformed record");
            for (const auto v : csv_split(xs, line_no)) r.x.push_back(v);
            for (const auto v : csv_split(ssym, line_no)) r.s.push_back(v);
            for (const auto v : csv_split(ms, line_no)) r.m.push_back(v);
            ds.records.push_back(std::move(r));
        } else {
            fail(Errc::parse, "line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
        if (ss.fail()) fail(Errc::parse, "line " + std::to_string(line_no) + ": bad value");
    }
    if (!have_task) fail(Errc::parse, "dataset: missing task header");
    const Alphabet al = task_alphabet(ds.task);
    if (ds.radix != al.radix) fail(Errc::integrity, "dataset: radix does not match task");
    if (!symbols.empty() && symbols != al.symbols)
        fail(Errc::integrity, "dataset: symbol table does not match task alphabet");
    if (static_cast<std::int64_t>(ds.records.size()) != ds.n)
        fail(Errc::integrity, "dataset: record count does not match n");
    if (ds.n_exhaustive + ds.n_same_digit + ds.n_random != ds.records.size())
        fail(Errc::integrity, "dataset: strata counts do not sum to n");
    std::unordered_set<std::string> seen;
    for (const auto& r : ds.records) {
        if (r.a.empty() || r.b.empty()) fail(Errc::integrity, "dataset: empty operand");
        for (const char ch : r.a + r.b) {
            if (ch < '0' || ch >= static_cast<char>('0' + ds.radix))
                fail(Errc::integrity, "dataset: operand digit out of radix: " + r.a + "," + r.b);
        }
        if (!seen.insert(pair_key(r.a, r.b)).second)
            fail(Errc::integrity, "dataset: duplicate pair " + r.a + "," + r.b);
        if (!replay_consistent(r, al))
            fail(Errc::integrity, "dataset: trajectory fails replay check for " + r.a + "," + r.b);
    }
    return ds;
}

void save_dataset(const std::string& path, const Dataset& ds) {
    write_file_atomic(path, serialize_dataset(ds));
}

Dataset load_dataset(const std::string& path) { return deserialize_dataset(read_file(path)); }

}  // namespace gridfst
