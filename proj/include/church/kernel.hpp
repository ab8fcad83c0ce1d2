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
#include <string>
#include <vector>

#include "church/formula.hpp"

namespace church {

enum class KOp { True, False, Sub, Before, Empty, Sing, Not, And, Or, Exists };

/// Set-variable-only formula. Variables are numbered: 0..l-1 free, the
/// variable bound by the quantifier at nesting depth d is l+d.
class KernelFormula {
public:
    struct Node {
        KOp op;
        int a = 0;
        int b = 0;
        std::vector<KernelFormula> kids;
        int depth = 0;
    };

    KernelFormula() = default;

    static KernelFormula constant(bool v);
    static KernelFormula atom(KOp op, int a, int b = 0);
    static KernelFormula negate(KernelFormula f);
    static KernelFormula binary(KOp op, KernelFormula a, KernelFormula b);
    static KernelFormula exists(KernelFormula body);

    bool valid() const { return node_ != nullptr; }
    KOp op() const { return node_->op; }
    int a() const { return node_->a; }
    int b() const { return node_->b; }
    int depth() const { return node_->depth; }
    const std::vector<KernelFormula>& kids() const { return node_->kids; }
    const KernelFormula& kid(std::size_t i) const { return node_->kids[i]; }
    const Node* id() const { return node_.get(); }

private:
    explicit KernelFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

struct Kernel {
    KernelFormula body;
    int free_count = 0;
    std::vector<std::string> free_names;
    int depth() const { return body.depth(); }
};

/// Translate with the given free set variables numbered in order. Any other
/// free variable is an error.
Kernel to_kernel(const Formula& f, const std::vector<std::string>& free_sets);

/// Game condition: free variables among X1 (index 0) and X2 (index 1).
Kernel game_kernel(const Formula& f);

/// Sentence: no free variables.
Kernel sentence_kernel(const Formula& f);

std::string render_kernel(const KernelFormula& f, int free_count);

std::size_t kernel_size(const KernelFormula& f);

/// Back to the surface syntax. Free variable i is named free_names[i], the
/// variable bound at index v is Z<v>; Before becomes two first-order quantifiers.
Formula kernel_to_formula(const KernelFormula& f, const std::vector<std::string>& free_names);

}  // namespace church
