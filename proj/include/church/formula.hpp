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

#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace church {

enum class Op {
    True,
    False,
    Less,     // t1 < t2
    Equal,    // t1 = t2
    In,       // t in X
    Sub,      // X sub Y
    Empty,    // empty(X)
    Sing,     // sing(X)
    Not,
    And,
    Or,
    Implies,
    Iff,
    Exists1,
    Forall1,
    Exists2,
    Forall2,
};

enum class Sort { FirstOrder, Set };

/// Lowercase identifiers are first-order, uppercase identifiers are sets.
Sort sort_of(std::string_view name);

/// Immutable MLO formula. Copies share structure.
class Formula {
public:
    struct Node {
        Op op;
        std::string v1;  // atom argument or bound variable
        std::string v2;  // second atom argument
        std::vector<Formula> kids;
    };

    Formula() = default;

    static Formula constant(bool value);
    static Formula less(std::string t1, std::string t2);
    static Formula equal(std::string t1, std::string t2);
    static Formula in(std::string t, std::string set);
    static Formula sub(std::string a, std::string b);
    static Formula empty(std::string set);
    static Formula sing(std::string set);
    static Formula negate(Formula f);
    static Formula binary(Op op, Formula a, Formula b);
    static Formula quantifier(Op op, std::string var, Formula body);
    /// Conjunction/disjunction of a list; the empty list yields true/false.
    static Formula conj(const std::vector<Formula>& fs);
    static Formula disj(const std::vector<Formula>& fs);

    bool valid() const { return node_ != nullptr; }
    Op op() const { return node_->op; }
    const std::string& var1() const { return node_->v1; }
    const std::string& var2() const { return node_->v2; }
    const std::vector<Formula>& kids() const { return node_->kids; }
    const Formula& kid(std::size_t i) const { return node_->kids[i]; }
    const void* id() const { return node_.get(); }

    bool is_atom() const;
    bool is_quantifier() const;

    friend bool operator==(const Formula& a, const Formula& b);

private:
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

struct ParseOptions {
    /// Permit free first-order variables (needed for relativized fragments).
    bool allow_free_first_order = false;
};

/// Parses the textual grammar; throws ParseError on syntax, unbound-variable and
/// sort errors.
Formula parse_formula(std::string_view text, const ParseOptions& opts = {});

struct RenderOptions {
    /// Rename bound variables to t0,t1,... / Z0,Z1,... in binding order.
    bool regenerate_names = false;
};

std::string render(const Formula& f, const RenderOptions& opts = {});

int quantifier_depth(const Formula& f);
std::size_t formula_size(const Formula& f);

struct FreeVars {
    std::set<std::string> first_order;
    std::set<std::string> sets;
};
FreeVars free_variables(const Formula& f);

/// Renames bound variables so that no variable is bound twice on any path and
/// no bound name collides with a free one.
Formula normalize(const Formula& f);

enum class RelMode { Below, AtOrAbove };

/// Restricts every quantifier and every set atom to positions < pivot (or >= pivot).
/// Bound set variables additionally receive a guard conjunct confining them to the
/// region. Raises quantifier depth by at most 2.
Formula relativize(const Formula& f, RelMode mode, const std::string& pivot);

/// Renames free set variables; bound occurrences are left alone.
Formula rename_sets(const Formula& f, const std::vector<std::pair<std::string, std::string>>& renames);

/// Formula fragments used when emitting strategies and winning-code sentences.
namespace templates {

/// "t is the first element".
Formula is_first(const std::string& t);
/// "t has exactly k predecessors".
Formula has_predecessors(const std::string& t, int k);
/// "u is the immediate successor of t".
Formula successor(const std::string& t, const std::string& u);
/// Sentence true exactly on chains with k elements.
Formula exactly(int k);
/// "X has exactly k elements" for a set variable X (k small).
Formula set_has_size(const std::string& set, int k);
/// Mult_{w^i}(X): X is a nonempty initial segment whose order type is a multiple of w^i.
Formula mult_omega_power(const std::string& set, int i);
/// Mod_{p,k}(X,Y): the number of Y-positions in X is congruent to k mod p (X finite).
Formula mod_count(const std::string& x, const std::string& y, int p, int k);
/// X = the set of all positions satisfying body(t).
Formula set_equals_where(const std::string& set, const std::string& t, const Formula& body);
/// "X and Y agree on all positions < t" / "<= t".
Formula agree_below(const std::string& x, const std::string& y, const std::string& t, bool inclusive);

}  // namespace templates

}  // namespace church
