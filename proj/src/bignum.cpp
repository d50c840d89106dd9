// Copyright (c) 2026 the gridfst authors
// SPDX-License-Identifier: Apache-2.0

#include "gridfst/bignum.hpp"

#include <algorithm>

#include "gridfst/errors.hpp"

namespace gridfst {

namespace {
void trim(BigNumber& n) {
    while (!n.limbs.empty() && n.limbs.back() == 0) n.limbs.pop_back();
}
}  // namespace

BigNumber BigNumber::from_string(const std::string& digits, int radix) {
    if (digits.empty()) fail(Errc::precondition, "empty digit string");
    BigNumber n;
    n.radix = radix;
    n.limbs.reserve(digits.size());
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        const int d = *it - '0';
        if (d < 0 || d >= radix) fail(Errc::invalid_symbol, std::string("bad digit: ") + *it);
        n.limbs.push_back(static_cast<std::uint8_t>(d));
    }
    trim(n);
    return n;
}

std::string BigNumber::to_string() const {
    if (limbs.empty()) return "0";
    std::string s;
    s.reserve(limbs.size());
    for (auto it = limbs.rbegin(); it != limbs.rend(); ++it)
        s.push_back(static_cast<char>('0' + *it));
    return s;
}

BigNumber BigNumber::add(const BigNumber& x, const BigNumber& y) {
    BigNumber r;
    r.radix = x.radix;
    const std::size_t n = std::max(x.limbs.size(), y.limbs.size());
    r.limbs.reserve(n + 1);
    int carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
        int s = carry;
        if (i < x.limbs.size()) s += x.limbs[i];
        if (i < y.limbs.size()) s += y.limbs[i];
        r.limbs.push_back(static_cast<std::uint8_t>(s % x.radix));
        carry = s / x.radix;
    }
    if (carry) r.limbs.push_back(static_cast<std::uint8_t>(carry));
    return r;
}

BigNumber BigNumber::mul(const BigNumber& x, const BigNumber& y) {
    BigNumber r;
    r.radix = x.radix;
    if (x.limbs.empty() || y.limbs.empty()) return r;
    r.limbs.assign(x.limbs.size() + y.limbs.size(), 0);
    for (std::size_t i = 0; i < x.limbs.size(); ++i) {
        int carry = 0;
        for (std::size_t j = 0; j < y.limbs.size(); ++j) {
            const int s = r.limbs[i + j] + x.limbs[i] * y.limbs[j] + carry;
            r.limbs[i + j] = static_cast<std::uint8_t>(s % x.radix);
            carry = s / x.radix;
        }
        std::size_t k = i + y.limbs.size();
        while (carry) {
            const int s = r.limbs[k] + carry;
            r.limbs[k] = static_cast<std::uint8_t>(s % x.radix);
            carry = s / x.radix;
            ++k;
        }
    }
    trim(r);
    return r;
}

std::uint64_t BigNumber::to_u64() const {
    std::uint64_t v = 0;
    for (auto it = limbs.rbegin(); it != limbs.rend(); ++it)
        v = v * static_cast<std::uint64_t>(radix) + *it;
    return v;
}

std::string oracle(ExpertTask task, const std::string& a, const std::string& b) {
    const int radix = task_radix(task);
    const BigNumber x = BigNumber::from_string(a, radix);
    const BigNumber y = BigNumber::from_string(b, radix);
    return (task_is_mult(task) ? BigNumber::mul(x, y) : BigNumber::add(x, y)).to_string();
}

}  // namespace gridfst
