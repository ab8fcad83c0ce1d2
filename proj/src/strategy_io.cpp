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

#include "church/strategy_io.hpp"

#include <fstream>
#include <map>

#include "church/errors.hpp"

namespace church {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "church-strategy";
constexpr int kVersion = 1;

Player player_from(const json& j)
{
    std::string s = j.get<std::string>();
    if (s == "I") return Player::I;
    if (s == "II") return Player::II;
    throw InvalidInput("unknown player '" + s + "'");
}

StrategyNode::Kind kind_from(const std::string& s)
{
    for (auto k : {StrategyNode::Kind::Leaf, StrategyNode::Kind::OmegaLeaf, StrategyNode::Kind::OmegaNode,
                   StrategyNode::Kind::SeqNode})
        if (s == kind_name(k)) return k;
    throw InvalidInput("unknown node kind '" + s + "'");
}

json machine_to_json(const MealyMachine& m)
{
    json j{{"player", player_name(m.player)}, {"initial", m.initial}, {"next", m.next}};
    if (m.player == Player::I)
        j["out"] = m.out_i;
    else
        j["out"] = m.out_ii;
    return j;
}

MealyMachine machine_from_json(const json& j)
{
    MealyMachine m;
    m.player = player_from(j.at("player"));
    m.initial = j.at("initial").get<int>();
    m.next = j.at("next").get<std::vector<std::vector<int>>>();
    if (m.player == Player::I)
        m.out_i = j.at("out").get<std::vector<int>>();
    else
        m.out_ii = j.at("out").get<std::vector<std::vector<int>>>();
    const std::size_t n = m.next.size();
    if (n == 0 || m.initial < 0 || static_cast<std::size_t>(m.initial) >= n)
        throw InvalidInput("machine has no valid initial state");
    if ((m.player == Player::I ? m.out_i.size() : m.out_ii.size()) != n)
        throw InvalidInput("machine output table has the wrong size");
    // -1 marks opponent moves that cannot occur in that state.
    for (const auto& row : m.next)
        for (int t : row)
            if (t < -1 || (t >= 0 && static_cast<std::size_t>(t) >= n)) throw InvalidInput("machine transition out of range");
    return m;
}

class Writer {
public:
    std::size_t add(const StrategyNode& n)
    {
        auto it = ids_.find(&n);
        if (it != ids_.end()) return it->second;
        json j{{"kind", kind_name(n.kind)},
               {"player", player_name(n.player)},
               {"segment", render(n.segment)},
               {"objective", winset_to_json(n.objective)}};
        switch (n.kind) {
        case StrategyNode::Kind::Leaf: {
            std::string moves;
            for (auto b : n.table.moves) moves += b ? '1' : '0';
            j["table"] = {{"length", n.table.length}, {"moves", moves}};
            break;
        }
        case StrategyNode::Kind::OmegaLeaf: j["machine"] = machine_to_json(n.machine); break;
        case StrategyNode::Kind::OmegaNode: {
            j["machine"] = machine_to_json(n.machine);
            json props = json::array();
            for (WinSet p : n.proposals) props.push_back(winset_to_json(p));
            j["proposals"] = props;
            json blocks = json::array();
            for (const auto& [obj, b] : n.blocks) blocks.push_back({{"objective", winset_to_json(obj)}, {"node", add(*b)}});
            j["blocks"] = blocks;
            break;
        }
        case StrategyNode::Kind::SeqNode: {
            j["left"] = add(*n.left);
            json br = json::array();
            for (const auto& [tau, b] : n.branches) br.push_back({{"type", tau}, {"node", add(*b)}});
            j["branches"] = br;
            break;
        }
        }
        std::size_t id = nodes_.size();
        j["id"] = id;
        nodes_.push_back(std::move(j));
        ids_.emplace(&n, id);
        return id;
    }

    json nodes() const { return nodes_; }

private:
    std::map<const StrategyNode*, std::size_t> ids_;
    json nodes_ = json::array();
};

class Reader {
public:
    explicit Reader(const json& nodes) : nodes_(nodes), built_(nodes.size()), busy_(nodes.size(), false) {}

    StrategyNode::Ptr get(std::size_t id)
    {
        if (id >= nodes_.size()) throw InvalidInput("node id " + std::to_string(id) + " out of range");
        if (built_[id]) return built_[id];
        if (busy_[id]) throw InvalidInput("strategy document contains a cycle");
        busy_[id] = true;
        const json& j = nodes_[id];
        auto n = std::make_shared<StrategyNode>();
        n->kind = kind_from(j.at("kind").get<std::string>());
        n->player = player_from(j.at("player"));
        n->segment = parse_ordinal(j.at("segment").get<std::string>());
        n->objective = winset_from_json(j.at("objective"));
        switch (n->kind) {
        case StrategyNode::Kind::Leaf: {
            n->table.player = n->player;
            n->table.length = j.at("table").at("length").get<int>();
            std::string moves = j.at("table").at("moves").get<std::string>();
            if (n->table.length < 0 || n->table.length > 20 ||
                moves.size() != FiniteStrategyTable::table_size(n->player, n->table.length))
                throw InvalidInput("leaf table has the wrong size");
            for (char c : moves) {
                if (c != '0' && c != '1') throw InvalidInput("leaf table entries must be 0 or 1");
                n->table.moves.push_back(c == '1');
            }
            break;
        }
        case StrategyNode::Kind::OmegaLeaf: n->machine = machine_from_json(j.at("machine")); break;
        case StrategyNode::Kind::OmegaNode:
            n->machine = machine_from_json(j.at("machine"));
            for (const auto& p : j.at("proposals")) n->proposals.push_back(winset_from_json(p));
            for (const auto& b : j.at("blocks"))
                n->blocks.emplace(winset_from_json(b.at("objective")), get(b.at("node").get<std::size_t>()));
            break;
        case StrategyNode::Kind::SeqNode:
            n->left = get(j.at("left").get<std::size_t>());
            for (const auto& b : j.at("branches")) {
                auto tau = b.at("type").get<std::size_t>();
                if (tau >= 64) throw InvalidInput("type index out of range");
                n->branches.emplace(static_cast<Elem>(tau), get(b.at("node").get<std::size_t>()));
            }
            if (n->branches.empty()) throw InvalidInput("sum node without branches");
            break;
        }
        built_[id] = n;
        busy_[id] = false;
        return n;
    }

private:
    const json& nodes_;
    std::vector<StrategyNode::Ptr> built_;
    std::vector<bool> busy_;
};

}  // namespace

json winset_to_json(WinSet g)
{
    json out = json::array();
    for (int i = 0; i < 64; ++i)
        if (g >> i & 1) out.push_back(i);
    return out;
}

WinSet winset_from_json(const json& j)
{
    WinSet g = 0;
    for (const auto& x : j) {
        auto i = x.get<std::size_t>();
        if (i >= 64) throw InvalidInput("type index out of range");
        g |= WinSet{1} << i;
    }
    return g;
}

json strategy_to_json(const StrategyTree& t)
{
    if (!t.root) throw InvalidInput("empty strategy tree");
    Writer w;
    std::size_t root = w.add(*t.root);
    return json{{"format", kFormat},
                {"version", kVersion},
                {"winner", player_name(t.winner)},
                {"ordinal", render(t.ordinal)},
                {"root", root},
                {"nodes", w.nodes()}};
}

StrategyTree strategy_from_json(const json& doc)
{
    try {
        if (doc.at("format").get<std::string>() != kFormat) throw InvalidInput("not a strategy document");
        if (doc.at("version").get<int>() != kVersion) throw InvalidInput("unsupported strategy document version");
        StrategyTree t;
        t.winner = player_from(doc.at("winner"));
        t.ordinal = parse_ordinal(doc.at("ordinal").get<std::string>());
        Reader r(doc.at("nodes"));
        t.root = r.get(doc.at("root").get<std::size_t>());
        return t;
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed strategy document: ") + e.what());
    }
}

void save_strategy(const StrategyTree& t, const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write " + path);
    out << strategy_to_json(t).dump(1) << "\n";
}

StrategyTree load_strategy(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot read " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed strategy document: ") + e.what());
    }
    return strategy_from_json(doc);
}

}  // namespace church
