/*
 * Copyright 2026 The Church Ordinals Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "church/ordinal.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "church/errors.hpp"

namespace church {

std::uint64_t OrdinalExpr::finite_part() const
{
    return !terms.empty() && terms.back().exp == 0 ? terms.back().coeff : 0;
}

OrdinalExpr ordinal_finite(std::uint64_t k)
{
    OrdinalExpr a;
    if (k) a.terms.push_back({0, k});
    return a;
}

OrdinalExpr ordinal_power(std::uint64_t exp, std::uint64_t coeff)
{
    OrdinalExpr a;
    if (coeff) a.terms.push_back({exp, coeff});
    return a;
}

OrdinalExpr ordinal_add(const OrdinalExpr& a, const OrdinalExpr& b)
{
    if (b.flag) return b;  // every term of a is absorbed by w^w
    if (b.terms.empty()) return a;
    OrdinalExpr r;
    r.flag = a.flag;
    std::uint64_t lead = b.terms[0].exp;
    for (const auto& t : a.terms)
        if (t.exp > lead) r.terms.push_back(t);
        else if (t.exp == lead) {
            r.terms.push_back({lead, t.coeff + b.terms[0].coeff});
            r.terms.insert(r.terms.end(), b.terms.begin() + 1, b.terms.end());
            return r;
        }
    r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
    return r;
}

namespace {

class OrdinalParser {
public:
    explicit OrdinalParser(std::string_view s, std::size_t start = 0) : s_(s), pos_(start) {}

    OrdinalExpr expr()
    {
        OrdinalExpr a;
        bool first = true;
        std::uint64_t last_exp = 0;
        for (;;) {
            skip();
            std::size_t at = pos_;
            OrdinalExpr::Term t;
            bool ww = false;
            if (peek() == 'w') {
                ++pos_;
                skip();
                if (peek() == '^') {
                    ++pos_;
                    skip();
                    if (peek() == 'w') {
                        ++pos_;
                        ww = true;
                    } else {
                        t.exp = nat();
                    }
                } else {
                    t.exp = 1;
                }
                skip();
                if (!ww && peek() == '*') {
                    ++pos_;
                    t.coeff = nat();
                }
            } else {
                t.exp = 0;
                t.coeff = nat();
            }
            if (ww) {
                if (!first) throw ParseError("w^w must be the leading term", at);
                a.flag = true;
            } else {
                if (!a.terms.empty() && t.exp >= last_exp)
                    throw ParseError("exponents must strictly decrease", at);
                if (t.coeff == 0) throw ParseError("coefficients must be positive", at);
                a.terms.push_back(t);
                last_exp = t.exp;
            }
            first = false;
            skip();
            if (pos_ == s_.size()) break;
            if (peek() != '+') throw ParseError("expected '+'", pos_);
            ++pos_;
        }
        if (a.is_zero()) throw InvalidInput("the ordinal must be positive");
        return a;
    }

    Code code()
    {
        Code c;
        expect('[');
        std::uint64_t f = nat();
        if (f > 1) throw ParseError("code flag must be 0 or 1", pos_);
        c.flag = f == 1;
        skip();
        while (peek() == ',') {
            ++pos_;
            c.digits.push_back(nat());
            skip();
        }
        expect(']');
        skip();
        if (pos_ != s_.size()) throw ParseError("trailing input after code", pos_);
        return c;
    }

private:
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void expect(char c)
    {
        skip();
        if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }
    std::uint64_t nat()
    {
        skip();
        std::uint64_t v = 0;
        auto [p, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
        if (ec != std::errc()) throw ParseError("expected a natural number", pos_);
        pos_ = static_cast<std::size_t>(p - s_.data());
        return v;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

Code parse_code(std::string_view text)
{
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (text.substr(i, 5) != "code:") throw ParseError("expected 'code:'", i);
    return OrdinalParser(text, i + 5).code();
}

OrdinalExpr parse_ordinal(std::string_view text)
{
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (text.substr(i, 5) == "code:") return ordinal_of(parse_code(text));
    return OrdinalParser(text).expr();
}

std::string render(const OrdinalExpr& a)
{
    std::ostringstream os;
    bool first = true;
    if (a.flag) {
        os << "w^w";
        first = false;
    }
    for (const auto& t : a.terms) {
        if (!first) os << " + ";
        first = false;
        if (t.exp == 0) {
            os << t.coeff;
            continue;
        }
        os << "w";
        if (t.exp > 1) os << "^" << t.exp;
        if (t.coeff > 1) os << "*" << t.coeff;
    }
    if (first) os << "0";
    return os.str();
}

Code code_of(const OrdinalExpr& a)
{
    if (a.is_zero()) throw InvalidInput("the zero ordinal has no code");
    Code c;
    c.flag = a.flag;
    if (a.terms.empty()) return c;
    c.digits.assign(a.terms[0].exp + 1, 0);
    for (const auto& t : a.terms) c.digits[a.terms[0].exp - t.exp] = t.coeff;
    return c;
}

OrdinalExpr ordinal_of(const Code& c)
{
    OrdinalExpr a;
    a.flag = c.flag;
    const std::size_t n = c.digits.size();
    for (std::size_t i = 0; i < n; ++i)
        if (c.digits[i]) a.terms.push_back({n - 1 - i, c.digits[i]});
    if (a.is_zero()) throw InvalidInput("code denotes the zero ordinal");
    return a;
}

std::string render(const Code& c)
{
    std::ostringstream os;
    os << "code:[" << (c.flag ? 1 : 0);
    for (auto d : c.digits) os << "," << d;
    os << "]";
    return os.str();
}

Code code_n(const OrdinalExpr& a, std::size_t m)
{
    if (a.is_zero()) throw InvalidInput("the zero ordinal has no code");
    Code c;
    c.flag = a.flag;
    c.digits.assign(m, 0);
    for (const auto& t : a.terms) {
        if (t.exp >= m) c.flag = true;
        else c.digits[m - 1 - t.exp] = t.coeff;
    }
    return c;
}

std::uint64_t trun(std::uint64_t k, std::uint64_t lag, std::uint64_t period)
{
    if (period == 0) throw InvalidInput("period must be positive");
    return k < lag ? k : lag + (k - lag) % period;
}

Code gcode_of(const OrdinalExpr& a, const StabilizationInfo& stab)
{
    Code c = code_n(a, stab.m);
    for (std::size_t i = 0; i < stab.m; ++i) {
        std::size_t k = stab.m - 1 - i;
        c.digits[i] = trun(c.digits[i], stab.lag[k], stab.period[k]);
    }
    return c;
}

OrdinalExpr ordinal_of_gcode(const Code& g, const StabilizationInfo& stab)
{
    if (g.digits.size() != stab.m) throw InvalidInput("game code length does not match m");
    OrdinalExpr a;
    a.flag = g.flag;
    for (std::size_t i = 0; i < stab.m; ++i)
        if (g.digits[i]) a.terms.push_back({stab.m - 1 - i, g.digits[i]});
    if (a.is_zero()) throw InvalidInput("game code denotes the zero ordinal");
    return a;
}

}  // namespace church
