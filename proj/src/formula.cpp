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

#include "church/formula.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <map>

#include "church/errors.hpp"

namespace church {

Sort sort_of(std::string_view name)
{
    return (!name.empty() && std::isupper(static_cast<unsigned char>(name[0]))) ? Sort::Set : Sort::FirstOrder;
}

Formula Formula::constant(bool value)
{
    return Formula(std::make_shared<const Node>(Node{value ? Op::True : Op::False, {}, {}, {}}));
}
Formula Formula::less(std::string t1, std::string t2)
{
    return Formula(std::make_shared<const Node>(Node{Op::Less, std::move(t1), std::move(t2), {}}));
}
Formula Formula::equal(std::string t1, std::string t2)
{
    return Formula(std::make_shared<const Node>(Node{Op::Equal, std::move(t1), std::move(t2), {}}));
}
Formula Formula::in(std::string t, std::string set)
{
    return Formula(std::make_shared<const Node>(Node{Op::In, std::move(t), std::move(set), {}}));
}
Formula Formula::sub(std::string a, std::string b)
{
    return Formula(std::make_shared<const Node>(Node{Op::Sub, std::move(a), std::move(b), {}}));
}
Formula Formula::empty(std::string set)
{
    return Formula(std::make_shared<const Node>(Node{Op::Empty, std::move(set), {}, {}}));
}
Formula Formula::sing(std::string set)
{
    return Formula(std::make_shared<const Node>(Node{Op::Sing, std::move(set), {}, {}}));
}
Formula Formula::negate(Formula f)
{
    return Formula(std::make_shared<const Node>(Node{Op::Not, {}, {}, {std::move(f)}}));
}
Formula Formula::binary(Op op, Formula a, Formula b)
{
    return Formula(std::make_shared<const Node>(Node{op, {}, {}, {std::move(a), std::move(b)}}));
}
Formula Formula::quantifier(Op op, std::string var, Formula body)
{
    return Formula(std::make_shared<const Node>(Node{op, std::move(var), {}, {std::move(body)}}));
}
Formula Formula::conj(const std::vector<Formula>& fs)
{
    if (fs.empty()) return constant(true);
    Formula acc = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i) acc = binary(Op::And, acc, fs[i]);
    return acc;
}
Formula Formula::disj(const std::vector<Formula>& fs)
{
    if (fs.empty()) return constant(false);
    Formula acc = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i) acc = binary(Op::Or, acc, fs[i]);
    return acc;
}

bool Formula::is_atom() const
{
    switch (op()) {
    case Op::True: case Op::False: case Op::Less: case Op::Equal:
    case Op::In: case Op::Sub: case Op::Empty: case Op::Sing:
        return true;
    default:
        return false;
    }
}

bool Formula::is_quantifier() const
{
    return op() == Op::Exists1 || op() == Op::Forall1 || op() == Op::Exists2 || op() == Op::Forall2;
}

bool operator==(const Formula& a, const Formula& b)
{
    if (a.node_ == b.node_) return true;
    if (!a.node_ || !b.node_) return false;
    if (a.op() != b.op() || a.var1() != b.var1() || a.var2() != b.var2()) return false;
    if (a.kids().size() != b.kids().size()) return false;
    for (std::size_t i = 0; i < a.kids().size(); ++i)
        if (!(a.kid(i) == b.kid(i))) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Ident, Less, Equal, LParen, RParen, Not, And, Or, Implies, Iff, Colon, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        std::size_t start = i;
        if (std::isalpha(static_cast<unsigned char>(c))) {
            while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
            out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
            continue;
        }
        if (s.compare(i, 3, "<->") == 0) { out.push_back({Tok::Iff, "<->", start}); i += 3; continue; }
        if (s.compare(i, 2, "->") == 0) { out.push_back({Tok::Implies, "->", start}); i += 2; continue; }
        switch (c) {
        case '<': out.push_back({Tok::Less, "<", start}); break;
        case '=': out.push_back({Tok::Equal, "=", start}); break;
        case '(': out.push_back({Tok::LParen, "(", start}); break;
        case ')': out.push_back({Tok::RParen, ")", start}); break;
        case '~': out.push_back({Tok::Not, "~", start}); break;
        case '&': out.push_back({Tok::And, "&", start}); break;
        case '|': out.push_back({Tok::Or, "|", start}); break;
        case ':': out.push_back({Tok::Colon, ":", start}); break;
        default:
            throw ParseError(std::string("unexpected character '") + c + "'", start);
        }
        ++i;
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

bool is_keyword(const std::string& s)
{
    static const char* const kw[] = {"ex1", "all1", "ex2", "all2", "in", "sub", "empty", "sing", "true", "false"};
    return std::any_of(std::begin(kw), std::end(kw), [&](const char* k) { return s == k; });
}

class Parser {
public:
    Parser(std::string_view text, const ParseOptions& opts) : toks_(tokenize(text)), opts_(opts) {}

    Formula parse()
    {
        Formula f = parse_iff();
        if (peek().kind != Tok::End) fail("unexpected token '" + peek().text + "'");
        return f;
    }

private:
    const Token& peek() const { return toks_[i_]; }
    const Token& next() { return toks_[i_++]; }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().pos); }

    void expect(Tok k, const char* what)
    {
        if (peek().kind != k) fail(std::string("expected ") + what);
        ++i_;
    }

    Formula parse_iff()
    {
        Formula lhs = parse_implies();
        while (peek().kind == Tok::Iff) {
            next();
            lhs = Formula::binary(Op::Iff, lhs, parse_implies());
        }
        return lhs;
    }

    Formula parse_implies()
    {
        Formula lhs = parse_or();
        if (peek().kind == Tok::Implies) {
            next();
            return Formula::binary(Op::Implies, lhs, parse_implies());
        }
        return lhs;
    }

    Formula parse_or()
    {
        Formula lhs = parse_and();
        while (peek().kind == Tok::Or) {
            next();
            lhs = Formula::binary(Op::Or, lhs, parse_and());
        }
        return lhs;
    }

    Formula parse_and()
    {
        Formula lhs = parse_unary();
        while (peek().kind == Tok::And) {
            next();
            lhs = Formula::binary(Op::And, lhs, parse_unary());
        }
        return lhs;
    }

    Formula parse_unary()
    {
        const Token& t = peek();
        if (t.kind == Tok::Not) {
            next();
            return Formula::negate(parse_unary());
        }
        if (t.kind == Tok::LParen) {
            next();
            Formula f = parse_iff();
            expect(Tok::RParen, "')'");
            return f;
        }
        if (t.kind == Tok::Ident) {
            if (t.text == "ex1" || t.text == "all1" || t.text == "ex2" || t.text == "all2") return parse_quantifier();
            return parse_atom();
        }
        fail(t.kind == Tok::End ? "unexpected end of input" : "unexpected token '" + t.text + "'");
    }

    Formula parse_quantifier()
    {
        std::string q = next().text;
        bool first_order = (q == "ex1" || q == "all1");
        const Token& v = peek();
        if (v.kind != Tok::Ident || is_keyword(v.text)) fail("expected variable after '" + q + "'");
        if (first_order && sort_of(v.text) != Sort::FirstOrder)
            fail("sort mismatch: '" + q + "' binds first-order variables, got '" + v.text + "'");
        if (!first_order && sort_of(v.text) != Sort::Set)
            fail("sort mismatch: '" + q + "' binds set variables, got '" + v.text + "'");
        std::string var = next().text;
        expect(Tok::Colon, "':'");
        bound_.push_back(var);
        Formula body = parse_iff();
        bound_.pop_back();
        Op op = q == "ex1" ? Op::Exists1 : q == "all1" ? Op::Forall1 : q == "ex2" ? Op::Exists2 : Op::Forall2;
        return Formula::quantifier(op, var, body);
    }

    std::string first_order_var()
    {
        const Token& t = peek();
        if (t.kind != Tok::Ident || is_keyword(t.text)) fail("expected first-order variable");
        if (sort_of(t.text) != Sort::FirstOrder)
            fail("sort mismatch: expected first-order variable, got set variable '" + t.text + "'");
        if (!opts_.allow_free_first_order && std::find(bound_.begin(), bound_.end(), t.text) == bound_.end())
            fail("unbound variable '" + t.text + "'");
        return next().text;
    }

    std::string set_var()
    {
        const Token& t = peek();
        if (t.kind != Tok::Ident || is_keyword(t.text)) fail("expected set variable");
        if (sort_of(t.text) != Sort::Set)
            fail("sort mismatch: expected set variable, got first-order variable '" + t.text + "'");
        return next().text;
    }

    Formula parse_atom()
    {
        const Token& t = peek();
        if (t.text == "true") { next(); return Formula::constant(true); }
        if (t.text == "false") { next(); return Formula::constant(false); }
        if (t.text == "empty" || t.text == "sing") {
            bool empty = t.text == "empty";
            next();
            expect(Tok::LParen, "'('");
            std::string x = set_var();
            expect(Tok::RParen, "')'");
            return empty ? Formula::empty(x) : Formula::sing(x);
        }
        if (is_keyword(t.text)) fail("unexpected keyword '" + t.text + "'");
        if (sort_of(t.text) == Sort::Set) {
            std::string x = set_var();
            if (peek().kind == Tok::Ident && peek().text == "sub") {
                next();
                return Formula::sub(x, set_var());
            }
            if (peek().kind == Tok::Less || peek().kind == Tok::Equal || (peek().kind == Tok::Ident && peek().text == "in"))
                fail("sort mismatch: set variable '" + x + "' used as a first-order term");
            fail("expected 'sub' after set variable");
        }
        std::string a = first_order_var();
        const Token& op = peek();
        if (op.kind == Tok::Less) { next(); return Formula::less(a, first_order_var()); }
        if (op.kind == Tok::Equal) { next(); return Formula::equal(a, first_order_var()); }
        if (op.kind == Tok::Ident && op.text == "in") { next(); return Formula::in(a, set_var()); }
        if (op.kind == Tok::Ident && op.text == "sub")
            fail("sort mismatch: first-order variable '" + a + "' used as a set");
        fail("expected '<', '=' or 'in'");
    }

    std::vector<Token> toks_;
    std::size_t i_ = 0;
    ParseOptions opts_;
    std::vector<std::string> bound_;
};

}  // namespace

Formula parse_formula(std::string_view text, const ParseOptions& opts)
{
    return Parser(text, opts).parse();
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

int precedence(Op op)
{
    switch (op) {
    case Op::Iff: return 1;
    case Op::Implies: return 2;
    case Op::Or: return 3;
    case Op::And: return 4;
    case Op::Not: return 5;
    case Op::Exists1: case Op::Forall1: case Op::Exists2: case Op::Forall2: return 0;
    default: return 6;
    }
}

const char* op_text(Op op)
{
    switch (op) {
    case Op::Iff: return " <-> ";
    case Op::Implies: return " -> ";
    case Op::Or: return " | ";
    case Op::And: return " & ";
    case Op::Exists1: return "ex1 ";
    case Op::Forall1: return "all1 ";
    case Op::Exists2: return "ex2 ";
    case Op::Forall2: return "all2 ";
    default: return "";
    }
}

class Renderer {
public:
    explicit Renderer(const RenderOptions& o) : opts_(o) {}

    void go(const Formula& f, std::string& out)
    {
        switch (f.op()) {
        case Op::True: out += "true"; return;
        case Op::False: out += "false"; return;
        case Op::Less: out += name(f.var1()) + " < " + name(f.var2()); return;
        case Op::Equal: out += name(f.var1()) + " = " + name(f.var2()); return;
        case Op::In: out += name(f.var1()) + " in " + name(f.var2()); return;
        case Op::Sub: out += name(f.var1()) + " sub " + name(f.var2()); return;
        case Op::Empty: out += "empty(" + name(f.var1()) + ")"; return;
        case Op::Sing: out += "sing(" + name(f.var1()) + ")"; return;
        case Op::Not:
            out += "~";
            child(f.kid(0), 5, out);
            return;
        case Op::Exists1: case Op::Forall1: case Op::Exists2: case Op::Forall2: {
            out += op_text(f.op());
            std::string fresh = bind(f.var1());
            out += fresh + ": ";
            go(f.kid(0), out);
            unbind(f.var1());
            return;
        }
        default: {
            int p = precedence(f.op());
            bool right_assoc = f.op() == Op::Implies;
            child(f.kid(0), right_assoc ? p + 1 : p, out);
            out += op_text(f.op());
            child(f.kid(1), right_assoc ? p : p + 1, out);
            return;
        }
        }
    }

private:
    void child(const Formula& f, int min_prec, std::string& out)
    {
        bool paren = f.is_quantifier() || precedence(f.op()) < min_prec;
        if (paren) out += "(";
        go(f, out);
        if (paren) out += ")";
    }

    std::string bind(const std::string& v)
    {
        if (!opts_.regenerate_names) return v;
        std::string fresh = sort_of(v) == Sort::Set ? "Z" + std::to_string(set_count_++) : "t" + std::to_string(fo_count_++);
        scope_[v].push_back(fresh);
        return fresh;
    }

    void unbind(const std::string& v)
    {
        if (!opts_.regenerate_names) return;
        scope_[v].pop_back();
    }

    std::string name(const std::string& v) const
    {
        auto it = scope_.find(v);
        if (it == scope_.end() || it->second.empty()) return v;
        return it->second.back();
    }

    RenderOptions opts_;
    std::map<std::string, std::vector<std::string>> scope_;
    int fo_count_ = 0;
    int set_count_ = 0;
};

}  // namespace

std::string render(const Formula& f, const RenderOptions& opts)
{
    std::string out;
    Renderer r(opts);
    r.go(f, out);
    return out;
}

// ---------------------------------------------------------------------------

int quantifier_depth(const Formula& f)
{
    int d = 0;
    for (const auto& k : f.kids()) d = std::max(d, quantifier_depth(k));
    return f.is_quantifier() ? d + 1 : d;
}

std::size_t formula_size(const Formula& f)
{
    std::size_t n = 1;
    for (const auto& k : f.kids()) n += formula_size(k);
    return n;
}

namespace {

void collect_free(const Formula& f, std::vector<std::string>& bound, FreeVars& out)
{
    auto note = [&](const std::string& v) {
        if (v.empty() || std::find(bound.begin(), bound.end(), v) != bound.end()) return;
        (sort_of(v) == Sort::Set ? out.sets : out.first_order).insert(v);
    };
    if (f.is_atom()) {
        note(f.var1());
        note(f.var2());
        return;
    }
    if (f.is_quantifier()) {
        bound.push_back(f.var1());
        collect_free(f.kid(0), bound, out);
        bound.pop_back();
        return;
    }
    for (const auto& k : f.kids()) collect_free(k, bound, out);
}

void collect_names(const Formula& f, std::set<std::string>& out)
{
    if (!f.var1().empty()) out.insert(f.var1());
    if (!f.var2().empty()) out.insert(f.var2());
    for (const auto& k : f.kids()) collect_names(k, out);
}

Formula rename_bound(const Formula& f, std::map<std::string, std::vector<std::string>>& scope,
                     const std::set<std::string>& avoid, int& fo, int& so)
{
    auto name = [&](const std::string& v) {
        auto it = scope.find(v);
        return (it == scope.end() || it->second.empty()) ? v : it->second.back();
    };
    switch (f.op()) {
    case Op::True: case Op::False: return f;
    case Op::Less: return Formula::less(name(f.var1()), name(f.var2()));
    case Op::Equal: return Formula::equal(name(f.var1()), name(f.var2()));
    case Op::In: return Formula::in(name(f.var1()), name(f.var2()));
    case Op::Sub: return Formula::sub(name(f.var1()), name(f.var2()));
    case Op::Empty: return Formula::empty(name(f.var1()));
    case Op::Sing: return Formula::sing(name(f.var1()));
    case Op::Not: return Formula::negate(rename_bound(f.kid(0), scope, avoid, fo, so));
    case Op::Exists1: case Op::Forall1: case Op::Exists2: case Op::Forall2: {
        bool set = sort_of(f.var1()) == Sort::Set;
        std::string fresh;
        do {
            fresh = set ? "Z" + std::to_string(so++) : "t" + std::to_string(fo++);
        } while (avoid.count(fresh));
        scope[f.var1()].push_back(fresh);
        Formula body = rename_bound(f.kid(0), scope, avoid, fo, so);
        scope[f.var1()].pop_back();
        return Formula::quantifier(f.op(), fresh, body);
    }
    default:
        return Formula::binary(f.op(), rename_bound(f.kid(0), scope, avoid, fo, so),
                               rename_bound(f.kid(1), scope, avoid, fo, so));
    }
}

}  // namespace

FreeVars free_variables(const Formula& f)
{
    FreeVars out;
    std::vector<std::string> bound;
    collect_free(f, bound, out);
    return out;
}

Formula normalize(const Formula& f)
{
    FreeVars fv = free_variables(f);
    std::set<std::string> avoid(fv.sets.begin(), fv.sets.end());
    avoid.insert(fv.first_order.begin(), fv.first_order.end());
    std::map<std::string, std::vector<std::string>> scope;
    int fo = 0, so = 0;
    return rename_bound(f, scope, avoid, fo, so);
}

// ---------------------------------------------------------------------------
// Relativization

namespace {

std::atomic<unsigned> g_fresh{0};

std::string fresh_fo()
{
    return "r_" + std::to_string(g_fresh++);
}

class Relativizer {
public:
    Relativizer(RelMode mode, std::string pivot) : mode_(mode), pivot_(std::move(pivot)) {}

    Formula region(const std::string& u) const
    {
        Formula below = Formula::less(u, pivot_);
        return mode_ == RelMode::Below ? below : Formula::negate(below);
    }

    Formula go(const Formula& f, std::vector<std::string>& bound_sets)
    {
        // Shared subformulas are relativized once per binding context.
        std::string ctx;
        for (const auto& b : bound_sets) ctx += b + ",";
        auto key = std::make_pair(f.id(), ctx);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        Formula out = step(f, bound_sets);
        memo_.emplace(key, out);
        return out;
    }

    Formula step(const Formula& f, std::vector<std::string>& bound_sets)
    {
        auto is_bound = [&](const std::string& x) {
            return std::find(bound_sets.begin(), bound_sets.end(), x) != bound_sets.end();
        };
        switch (f.op()) {
        case Op::Sub: {
            if (is_bound(f.var1()) && is_bound(f.var2())) return f;
            std::string u = fresh_fo();
            return Formula::quantifier(Op::Forall1, u,
                Formula::binary(Op::Implies, region(u),
                    Formula::binary(Op::Implies, Formula::in(u, f.var1()), Formula::in(u, f.var2()))));
        }
        case Op::Empty: {
            if (is_bound(f.var1())) return f;
            std::string u = fresh_fo();
            return Formula::negate(Formula::quantifier(Op::Exists1, u,
                Formula::binary(Op::And, region(u), Formula::in(u, f.var1()))));
        }
        case Op::Sing: {
            if (is_bound(f.var1())) return f;
            std::string u = fresh_fo(), v = fresh_fo();
            Formula only = Formula::quantifier(Op::Forall1, v,
                Formula::binary(Op::Implies, Formula::binary(Op::And, region(v), Formula::in(v, f.var1())),
                                Formula::equal(v, u)));
            return Formula::quantifier(Op::Exists1, u,
                Formula::conj({region(u), Formula::in(u, f.var1()), only}));
        }
        case Op::True: case Op::False: case Op::Less: case Op::Equal: case Op::In:
            return f;
        case Op::Not:
            return Formula::negate(go(f.kid(0), bound_sets));
        case Op::Exists1:
            return Formula::quantifier(Op::Exists1, f.var1(),
                Formula::binary(Op::And, region(f.var1()), go(f.kid(0), bound_sets)));
        case Op::Forall1:
            return Formula::quantifier(Op::Forall1, f.var1(),
                Formula::binary(Op::Implies, region(f.var1()), go(f.kid(0), bound_sets)));
        case Op::Exists2: case Op::Forall2: {
            bound_sets.push_back(f.var1());
            Formula body = go(f.kid(0), bound_sets);
            bound_sets.pop_back();
            std::string u = fresh_fo();
            Formula guard = Formula::quantifier(Op::Forall1, u,
                Formula::binary(Op::Implies, Formula::in(u, f.var1()), region(u)));
            Op link = f.op() == Op::Exists2 ? Op::And : Op::Implies;
            return Formula::quantifier(f.op(), f.var1(), Formula::binary(link, guard, body));
        }
        default:
            return Formula::binary(f.op(), go(f.kid(0), bound_sets), go(f.kid(1), bound_sets));
        }
    }

private:
    RelMode mode_;
    std::string pivot_;
    std::map<std::pair<const void*, std::string>, Formula> memo_;
};

}  // namespace

Formula relativize(const Formula& f, RelMode mode, const std::string& pivot)
{
    FreeVars fv = free_variables(f);
    if (fv.first_order.count(pivot)) throw InvalidInput("pivot '" + pivot + "' occurs free in the formula");
    // Bound occurrences of the pivot name would capture it; rename them away first.
    std::set<std::string> names;
    collect_names(f, names);
    Formula g = names.count(pivot) ? normalize(f) : f;
    std::vector<std::string> bound_sets;
    return Relativizer(mode, pivot).go(g, bound_sets);
}

namespace {

Formula rename_in(const Formula& f, std::map<std::string, std::string> m,
                  std::map<const void*, Formula>& memo)
{
    if (m.empty()) return f;
    auto it = memo.find(f.id());
    if (it != memo.end()) return it->second;
    Formula out;
    switch (f.op()) {
    case Op::In: {
        auto r = m.find(f.var2());
        out = r == m.end() ? f : Formula::in(f.var1(), r->second);
        break;
    }
    case Op::Sub: {
        auto a = m.find(f.var1()), b = m.find(f.var2());
        out = Formula::sub(a == m.end() ? f.var1() : a->second, b == m.end() ? f.var2() : b->second);
        break;
    }
    case Op::Empty: case Op::Sing: {
        auto a = m.find(f.var1());
        out = a == m.end() ? f : f.op() == Op::Empty ? Formula::empty(a->second) : Formula::sing(a->second);
        break;
    }
    case Op::True: case Op::False: case Op::Less: case Op::Equal:
        out = f;
        break;
    case Op::Not:
        out = Formula::negate(rename_in(f.kid(0), m, memo));
        break;
    case Op::Exists1: case Op::Forall1:
        out = Formula::quantifier(f.op(), f.var1(), rename_in(f.kid(0), m, memo));
        break;
    case Op::Exists2: case Op::Forall2: {
        auto inner = m;
        inner.erase(f.var1());
        for (const auto& [from, to] : inner)
            if (to == f.var1()) throw InvalidInput("renaming " + from + " to " + to + " would be captured");
        std::map<const void*, Formula> fresh;
        out = Formula::quantifier(f.op(), f.var1(), rename_in(f.kid(0), inner, inner.size() == m.size() ? memo : fresh));
        break;
    }
    default:
        out = Formula::binary(f.op(), rename_in(f.kid(0), m, memo), rename_in(f.kid(1), m, memo));
    }
    memo.emplace(f.id(), out);
    return out;
}

}  // namespace

Formula rename_sets(const Formula& f, const std::vector<std::pair<std::string, std::string>>& renames)
{
    std::map<std::string, std::string> m(renames.begin(), renames.end());
    for (const auto& [from, to] : m)
        if (sort_of(from) != Sort::Set || sort_of(to) != Sort::Set) throw InvalidInput("rename_sets expects set variables");
    std::map<const void*, Formula> memo;
    return rename_in(f, m, memo);
}

// ---------------------------------------------------------------------------
// Templates

namespace templates {

namespace {

std::string fresh(char prefix)
{
    return std::string(1, prefix) + "_" + std::to_string(g_fresh++);
}

}  // namespace

Formula is_first(const std::string& t)
{
    std::string u = fresh('u');
    return Formula::negate(Formula::quantifier(Op::Exists1, u, Formula::less(u, t)));
}

Formula has_predecessors(const std::string& t, int k)
{
    if (k == 0) return is_first(t);
    std::vector<std::string> us;
    for (int i = 0; i < k; ++i) us.push_back(fresh('u'));
    std::vector<Formula> parts;
    for (int i = 0; i + 1 < k; ++i) parts.push_back(Formula::less(us[i], us[i + 1]));
    parts.push_back(Formula::less(us[k - 1], t));
    std::string w = fresh('w');
    std::vector<Formula> eqs;
    for (const auto& u : us) eqs.push_back(Formula::equal(w, u));
    parts.push_back(Formula::quantifier(Op::Forall1, w,
        Formula::binary(Op::Implies, Formula::less(w, t), Formula::disj(eqs))));
    Formula body = Formula::conj(parts);
    for (int i = k - 1; i >= 0; --i) body = Formula::quantifier(Op::Exists1, us[i], body);
    return body;
}

Formula successor(const std::string& t, const std::string& u)
{
    std::string w = fresh('w');
    return Formula::binary(Op::And, Formula::less(t, u),
        Formula::negate(Formula::quantifier(Op::Exists1, w,
            Formula::binary(Op::And, Formula::less(t, w), Formula::less(w, u)))));
}

Formula exactly(int k)
{
    if (k == 0) {
        std::string x = fresh('x');
        return Formula::negate(Formula::quantifier(Op::Exists1, x, Formula::equal(x, x)));
    }
    std::vector<std::string> xs;
    for (int i = 0; i < k; ++i) xs.push_back(fresh('x'));
    std::vector<Formula> parts;
    for (int i = 0; i + 1 < k; ++i) parts.push_back(Formula::less(xs[i], xs[i + 1]));
    std::string w = fresh('w');
    std::vector<Formula> eqs;
    for (const auto& x : xs) eqs.push_back(Formula::equal(w, x));
    parts.push_back(Formula::quantifier(Op::Forall1, w, Formula::disj(eqs)));
    Formula body = Formula::conj(parts);
    for (int i = k - 1; i >= 0; --i) body = Formula::quantifier(Op::Exists1, xs[i], body);
    return body;
}

Formula set_has_size(const std::string& set, int k)
{
    if (k == 0) return Formula::empty(set);
    std::vector<std::string> xs;
    for (int i = 0; i < k; ++i) xs.push_back(fresh('x'));
    std::vector<Formula> parts;
    for (int i = 0; i < k; ++i) parts.push_back(Formula::in(xs[i], set));
    for (int i = 0; i + 1 < k; ++i) parts.push_back(Formula::less(xs[i], xs[i + 1]));
    std::string w = fresh('w');
    std::vector<Formula> eqs;
    for (const auto& x : xs) eqs.push_back(Formula::equal(w, x));
    parts.push_back(Formula::quantifier(Op::Forall1, w,
        Formula::binary(Op::Implies, Formula::in(w, set), Formula::disj(eqs))));
    Formula body = Formula::conj(parts);
    for (int i = k - 1; i >= 0; --i) body = Formula::quantifier(Op::Exists1, xs[i], body);
    return body;
}

namespace {

// v is a j-limit: v > 0 and the last exponent of its Cantor normal form is >= j.
Formula limit_of_order(const std::string& v, int j)
{
    std::string w = fresh('w');
    Formula positive = Formula::quantifier(Op::Exists1, w, Formula::less(w, v));
    if (j == 0) return positive;
    std::string a = fresh('w'), b = fresh('w');
    Formula cofinal = Formula::quantifier(Op::Forall1, a,
        Formula::binary(Op::Implies, Formula::less(a, v),
            Formula::quantifier(Op::Exists1, b,
                Formula::conj({Formula::less(a, b), Formula::less(b, v), limit_of_order(b, j - 1)}))));
    return Formula::binary(Op::And, positive, cofinal);
}

}  // namespace

Formula mult_omega_power(const std::string& set, int i)
{
    std::string u = fresh('u'), v = fresh('u');
    Formula nonempty = Formula::negate(Formula::empty(set));
    Formula initial = Formula::quantifier(Op::Forall1, u, Formula::quantifier(Op::Forall1, v,
        Formula::binary(Op::Implies, Formula::binary(Op::And, Formula::in(v, set), Formula::less(u, v)),
                        Formula::in(u, set))));
    if (i == 0) return Formula::binary(Op::And, nonempty, initial);
    std::string a = fresh('u'), b = fresh('u');
    Formula cofinal = Formula::quantifier(Op::Forall1, a,
        Formula::binary(Op::Implies, Formula::in(a, set),
            Formula::quantifier(Op::Exists1, b,
                Formula::conj({Formula::in(b, set), Formula::less(a, b), limit_of_order(b, i - 1)}))));
    return Formula::conj({nonempty, initial, cofinal});
}

Formula mod_count(const std::string& x, const std::string& y, int p, int k)
{
    if (p < 1) throw InvalidInput("modulus must be positive");
    std::vector<std::string> zs;
    for (int r = 0; r < p; ++r) zs.push_back("M" + std::to_string(g_fresh++));
    auto hit = [&](const std::string& t) { return Formula::binary(Op::And, Formula::in(t, x), Formula::in(t, y)); };
    std::string t = fresh('u'), s = fresh('u'), w = fresh('u');
    std::vector<Formula> parts;
    // each hit position lies in exactly one label, others in none
    {
        std::vector<Formula> exactly_one;
        for (int r = 0; r < p; ++r) {
            std::vector<Formula> others;
            for (int q = 0; q < p; ++q)
                if (q != r) others.push_back(Formula::negate(Formula::in(t, zs[q])));
            exactly_one.push_back(Formula::binary(Op::And, Formula::in(t, zs[r]), Formula::conj(others)));
        }
        std::vector<Formula> none;
        for (int r = 0; r < p; ++r) none.push_back(Formula::negate(Formula::in(t, zs[r])));
        parts.push_back(Formula::quantifier(Op::Forall1, t,
            Formula::binary(Op::And,
                Formula::binary(Op::Implies, hit(t), Formula::disj(exactly_one)),
                Formula::binary(Op::Implies, Formula::negate(hit(t)), Formula::conj(none)))));
    }
    auto no_hit_between = [&](const std::string& a, const std::string& b) {
        return Formula::negate(Formula::quantifier(Op::Exists1, w,
            Formula::conj({Formula::less(a, w), Formula::less(w, b), hit(w)})));
    };
    // first hit gets label 1 mod p
    {
        std::string a = fresh('u'), c = fresh('u');
        Formula first = Formula::binary(Op::And, hit(a),
            Formula::negate(Formula::quantifier(Op::Exists1, c, Formula::binary(Op::And, Formula::less(c, a), hit(c)))));
        parts.push_back(Formula::quantifier(Op::Forall1, a,
            Formula::binary(Op::Implies, first, Formula::in(a, zs[1 % p]))));
    }
    // consecutive hits advance the label
    {
        std::vector<Formula> steps;
        for (int r = 0; r < p; ++r)
            steps.push_back(Formula::binary(Op::Implies, Formula::in(s, zs[r]), Formula::in(t, zs[(r + 1) % p])));
        parts.push_back(Formula::quantifier(Op::Forall1, s, Formula::quantifier(Op::Forall1, t,
            Formula::binary(Op::Implies, Formula::conj({hit(s), hit(t), Formula::less(s, t), no_hit_between(s, t)}),
                            Formula::conj(steps)))));
    }
    // last hit carries label k mod p
    {
        std::string a = fresh('u'), c = fresh('u');
        Formula last = Formula::binary(Op::And, hit(a),
            Formula::negate(Formula::quantifier(Op::Exists1, c, Formula::binary(Op::And, Formula::less(a, c), hit(c)))));
        parts.push_back(Formula::quantifier(Op::Exists1, a, Formula::binary(Op::And, last, Formula::in(a, zs[((k % p) + p) % p]))));
    }
    Formula labelled = Formula::conj(parts);
    for (int r = p - 1; r >= 0; --r) labelled = Formula::quantifier(Op::Exists2, zs[r], labelled);
    std::string e = fresh('u');
    Formula none_hit = Formula::negate(Formula::quantifier(Op::Exists1, e, hit(e)));
    if (((k % p) + p) % p == 0) return Formula::binary(Op::Or, none_hit, labelled);
    return labelled;
}

Formula set_equals_where(const std::string& set, const std::string& t, const Formula& body)
{
    return Formula::quantifier(Op::Forall1, t, Formula::binary(Op::Iff, Formula::in(t, set), body));
}

Formula agree_below(const std::string& x, const std::string& y, const std::string& t, bool inclusive)
{
    std::string u = fresh('u');
    Formula region = inclusive ? Formula::binary(Op::Or, Formula::less(u, t), Formula::equal(u, t)) : Formula::less(u, t);
    return Formula::quantifier(Op::Forall1, u,
        Formula::binary(Op::Implies, region, Formula::binary(Op::Iff, Formula::in(u, x), Formula::in(u, y))));
}

}  // namespace templates

}  // namespace church
