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

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "church/finite_oracle.hpp"
#include "church/game_types.hpp"
#include "church/omega_game.hpp"
#include "church/ordinal.hpp"

namespace church {

/// A strategy for `player` on a segment of order type `segment`. For I it
/// guarantees that the segment's play type lies in `objective`; for II that
/// it lies outside.
struct StrategyNode {
    enum class Kind { Leaf, OmegaLeaf, OmegaNode, SeqNode };
    using Ptr = std::shared_ptr<const StrategyNode>;

    Kind kind = Kind::Leaf;
    Player player = Player::I;
    OrdinalExpr segment;
    WinSet objective = 0;

    FiniteStrategyTable table;  // Leaf
    MealyMachine machine;       // OmegaLeaf, OmegaNode (meta game)
    std::vector<WinSet> proposals;  // OmegaNode: I's moves in the meta game
    std::map<WinSet, Ptr> blocks;   // OmegaNode: block objective -> strategy for one block
    Ptr left;                       // SeqNode
    std::map<Elem, Ptr> branches;   // SeqNode: realized prefix type -> suffix strategy
};

const char* kind_name(StrategyNode::Kind k);

struct StrategyTree {
    Player winner = Player::I;
    OrdinalExpr ordinal;
    StrategyNode::Ptr root;
};

struct SynthOptions {
    int max_leaf = 5;  // longest finite segment solved by a single table
};

/// Player-I block objective of an OmegaNode machine state, or for II the
/// complement of the answers the machine gives to every proposal.
WinSet omega_block_objective(const StrategyNode& n, int state, WinSet full);

StrategyTree synthesize(ChurchProblem& p, const OrdinalExpr& a, const SynthOptions& opts = {});

struct Obligation {
    std::string path;
    std::string what;
    bool ok = true;
};

struct VerifyReport {
    std::vector<Obligation> obligations;
    std::size_t failures() const;
    bool ok() const { return failures() == 0; }
    std::string text() const;
};

/// Checks every node certificate: tables exhaustively, machines by model
/// checking, and the composition conditions of sums and omega-powers.
VerifyReport verify_strategy_tree(const StrategyTree& t, ChurchProblem& p);

/// Own moves on a finite tree against the opponent's bits.
std::uint64_t run_finite_tree(const StrategyNode& n, const GameAlgebra& ga, std::uint64_t opponent_bits);

/// One table for a finite-ordinal tree.
FiniteStrategyTable flatten(const StrategyTree& t, const GameAlgebra& ga);

/// The condition for the w^w game equivalent to the game of length a >= w^w:
/// the play type lies in K(gt(beta), G) where beta is the part of a below w^w.
struct Reduction {
    OrdinalExpr beta;
    WinSet k = 0;
    Formula condition;  // disjunction of class characterizers over X1, X2
};

Reduction reduce_to_omega_omega(ChurchProblem& p, const OrdinalExpr& a);

/// Formula over X1, X2 true exactly on plays whose type is in g.
Formula winset_formula(const ChurchProblem& p, WinSet g);

}  // namespace church
