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

#include "church/kernel.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "church/errors.hpp"

namespace church {

KernelFormula KernelFormula::constant(bool v)
{
    return KernelFormula(std::make_shared<const Node>(Node{v ? KOp::True : KOp::False, 0, 0, {}, 0}));
}

KernelFormula KernelFormula::atom(KOp op, int a, int b)
{
    return KernelFormula(std::make_shared<const Node>(Node{op, a, b, {}, 0}));
}

KernelFormula KernelFormula::negate(KernelFormula f)
{
    int d = f.depth();
    return KernelFormula(std::make_shared<const Node>(Node{KOp::Not, 0, 0, {std::move(f)}, d}));
}

KernelFormula KernelFormula::binary(KOp op, KernelFormula a, KernelFormula b)
{
    int d = std::max(a.depth(), b.depth());
    return KernelFormula(std::make_shared<const Node>(Node{op, 0, 0, {std::move(a), std::move(b)}, d}));
}

KernelFormula KernelFormula::exists(KernelFormula body)
{
    int d = body.depth() + 1;
    return KernelFormula(std::make_shared<const Node>(Node{KOp::Exists, 0, 0, {std::move(body)}, d}));
}

namespace {

using K = KernelFormula;

class Translator {
public:
    explicit Translator(const std::vector<std::string>& free) : l_(static_cast<int>(free.size()))
    {
        for (int i = 0; i < l_; ++i) env_[free[i]].push_back(i);
    }

    K go(const Formula& f)
    {
        switch (f.op()) {
        case Op::True: return K::constant(true);
        case Op::False: return K::constant(false);
        case Op::Less: return K::atom(KOp::Before, var(f.var1()), var(f.var2()));
        case Op::Equal: {
            int a = var(f.var1()), b = var(f.var2());
            return K::binary(KOp::And, K::atom(KOp::Sub, a, b), K::atom(KOp::Sub, b, a));
        }
        case Op::In: return K::atom(KOp::Sub, var(f.var1()), var(f.var2()));
        case Op::Sub: return K::atom(KOp::Sub, var(f.var1()), var(f.var2()));
        case Op::Empty: return K::atom(KOp::Empty, var(f.var1()));
        case Op::Sing: return K::atom(KOp::Sing, var(f.var1()));
        case Op::Not: return K::negate(go(f.kid(0)));
        case Op::And: return K::binary(KOp::And, go(f.kid(0)), go(f.kid(1)));
        case Op::Or: return K::binary(KOp::Or, go(f.kid(0)), go(f.kid(1)));
        case Op::Implies: return K::binary(KOp::Or, K::negate(go(f.kid(0))), go(f.kid(1)));
        case Op::Iff: {
            K a = go(f.kid(0)), b = go(f.kid(1));
            return K::binary(KOp::Or, K::binary(KOp::And, a, b), K::binary(KOp::And, K::negate(a), K::negate(b)));
        }
        case Op::Exists1: case Op::Forall1: case Op::Exists2: case Op::Forall2: {
            int idx = l_ + depth_;
            env_[f.var1()].push_back(idx);
            ++depth_;
            K body = go(f.kid(0));
            --depth_;
            env_[f.var1()].pop_back();
            bool universal = f.op() == Op::Forall1 || f.op() == Op::Forall2;
            bool first_order = f.op() == Op::Exists1 || f.op() == Op::Forall1;
            if (universal) body = K::negate(body);
            if (first_order) body = K::binary(KOp::And, K::atom(KOp::Sing, idx), body);
            K q = K::exists(body);
            return universal ? K::negate(q) : q;
        }
        }
        throw InvalidInput("unknown formula node");
    }

private:
    int var(const std::string& name)
    {
        auto it = env_.find(name);
        if (it == env_.end() || it->second.empty()) throw InvalidInput("unexpected free variable '" + name + "'");
        return it->second.back();
    }

    int l_;
    int depth_ = 0;
    std::map<std::string, std::vector<int>> env_;
};

}  // namespace

Kernel to_kernel(const Formula& f, const std::vector<std::string>& free_sets)
{
    FreeVars fv = free_variables(f);
    if (!fv.first_order.empty()) throw InvalidInput("free first-order variable '" + *fv.first_order.begin() + "'");
    for (const auto& x : fv.sets)
        if (std::find(free_sets.begin(), free_sets.end(), x) == free_sets.end())
            throw InvalidInput("unexpected free set variable '" + x + "'");
    Translator t(free_sets);
    return Kernel{t.go(f), static_cast<int>(free_sets.size()), free_sets};
}

Kernel game_kernel(const Formula& f)
{
    return to_kernel(f, {"X1", "X2"});
}

Kernel sentence_kernel(const Formula& f)
{
    return to_kernel(f, {});
}

namespace {

void render_k(const KernelFormula& f, int l, int depth, std::string& out)
{
    auto name = [&](int v) { return "X" + std::to_string(v + 1); };
    switch (f.op()) {
    case KOp::True: out += "true"; return;
    case KOp::False: out += "false"; return;
    case KOp::Sub: out += "Sub(" + name(f.a()) + "," + name(f.b()) + ")"; return;
    case KOp::Before: out += "Before(" + name(f.a()) + "," + name(f.b()) + ")"; return;
    case KOp::Empty: out += "Empty(" + name(f.a()) + ")"; return;
    case KOp::Sing: out += "Sing(" + name(f.a()) + ")"; return;
    case KOp::Not:
        out += "~";
        if (f.kid(0).op() == KOp::And || f.kid(0).op() == KOp::Or) {
            out += "(";
            render_k(f.kid(0), l, depth, out);
            out += ")";
        } else {
            render_k(f.kid(0), l, depth, out);
        }
        return;
    case KOp::And: case KOp::Or:
        out += "(";
        render_k(f.kid(0), l, depth, out);
        out += f.op() == KOp::And ? " & " : " | ";
        render_k(f.kid(1), l, depth, out);
        out += ")";
        return;
    case KOp::Exists:
        out += "E" + name(l + depth) + ".";
        render_k(f.kid(0), l, depth + 1, out);
        return;
    }
}

}  // namespace

std::string render_kernel(const KernelFormula& f, int free_count)
{
    std::string out;
    render_k(f, free_count, 0, out);
    return out;
}

std::size_t kernel_size(const KernelFormula& f)
{
    std::size_t n = 1;
    for (const auto& k : f.kids()) n += kernel_size(k);
    return n;
}


namespace {

Formula back(const KernelFormula& f, const std::vector<std::string>& names, std::unordered_map<const void*, Formula>& memo)
{
    auto it = memo.find(f.id());
    if (it != memo.end()) return it->second;
    auto name = [&](int v) { return v < static_cast<int>(names.size()) ? names[static_cast<std::size_t>(v)] : "Z" + std::to_string(v); };
    Formula out;
    switch (f.op()) {
    case KOp::True: out = Formula::constant(true); break;
    case KOp::False: out = Formula::constant(false); break;
    case KOp::Sub: out = Formula::sub(name(f.a()), name(f.b())); break;
    case KOp::Empty: out = Formula::empty(name(f.a())); break;
    case KOp::Sing: out = Formula::sing(name(f.a())); break;
    case KOp::Before:
        out = Formula::quantifier(
            Op::Exists1, "u",
            Formula::quantifier(Op::Exists1, "v",
                                Formula::conj({Formula::in("u", name(f.a())), Formula::in("v", name(f.b())),
                                               Formula::less("u", "v")})));
        break;
    case KOp::Not: out = Formula::negate(back(f.kid(0), names, memo)); break;
    case KOp::And:
    case KOp::Or:
        out = Formula::binary(f.op() == KOp::And ? Op::And : Op::Or, back(f.kid(0), names, memo),
                              back(f.kid(1), names, memo));
        break;
    case KOp::Exists: {
        // The bound index is one past the highest variable visible here.
        int v = static_cast<int>(names.size());
        std::vector<std::string> inner = names;
        inner.push_back("Z" + std::to_string(v));
        std::unordered_map<const void*, Formula> fresh;
        out = Formula::quantifier(Op::Exists2, inner.back(), back(f.kid(0), inner, fresh));
        break;
    }
    }
    memo.emplace(f.id(), out);
    return out;
}

}  // namespace

Formula kernel_to_formula(const KernelFormula& f, const std::vector<std::string>& free_names)
{
    std::unordered_map<const void*, Formula> memo;
    return back(f, free_names, memo);
}

}  // namespace church
