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

// Command-line front end. Exit status: 0 success, 1 usage or parse error,
// 2 resource limit, 3 a strategy failed verification.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "church/emit.hpp"
#include "church/errors.hpp"
#include "church/finite_oracle.hpp"
#include "church/strategy_io.hpp"
#include "church/synthesis.hpp"

using namespace church;
using nlohmann::json;

namespace {

struct RunConfig {
    std::size_t max_types = 200'000;
    std::size_t max_states = 200'000;
    std::size_t max_length = 10;
    bool json = false;

    Limits limits() const
    {
        Limits l;
        l.max_types = max_types;
        l.max_states = max_states;
        return l;
    }
};

struct Failed {
    int status;
};

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const RunConfig& cfg, const json& doc, const std::string& text)
{
    if (cfg.json)
        std::cout << doc.dump(2) << "\n";
    else
        std::cout << text;
}

Formula condition(const std::string& expr, const std::string& file)
{
    if (expr.empty() == file.empty()) throw InvalidInput("give exactly one of --expr and --file");
    return parse_formula(expr.empty() ? slurp(file) : expr);
}

int cmd_decide(const RunConfig& cfg, const std::string& expr, const std::string& file, const std::string& ord)
{
    Formula phi = condition(expr, file);
    OrdinalExpr a = parse_ordinal(ord);
    ChurchProblem p(phi, cfg.limits());
    Player w = p.decide(a);
    json doc{{"command", "decide"}, {"ordinal", render(a)}, {"winner", player_name(w)}, {"types", p.algebra().size()}};
    emit(cfg, doc, std::string("winner ") + player_name(w) + "\n");
    return 0;
}

int cmd_mth(const RunConfig& cfg, const std::string& sentence, const std::string& ord)
{
    Formula s = parse_formula(sentence);
    OrdinalExpr a = parse_ordinal(ord);
    bool v = decide_sentence(s, code_of(a), cfg.max_types);
    json doc{{"command", "mth"}, {"ordinal", render(a)}, {"value", v}};
    emit(cfg, doc, v ? "true\n" : "false\n");
    return 0;
}

std::size_t count_nodes(const StrategyTree& t)
{
    std::set<const StrategyNode*> seen;
    std::function<void(const StrategyNode&)> go = [&](const StrategyNode& n) {
        if (!seen.insert(&n).second) return;
        if (n.left) go(*n.left);
        for (const auto& [k, b] : n.branches) go(*b);
        for (const auto& [k, b] : n.blocks) go(*b);
    };
    go(*t.root);
    return seen.size();
}

int cmd_synth(const RunConfig& cfg, const std::string& expr, const std::string& file, const std::string& ord,
              const std::string& out, bool show_formula)
{
    Formula phi = condition(expr, file);
    OrdinalExpr a = parse_ordinal(ord);
    ChurchProblem p(phi, cfg.limits());
    StrategyTree t = synthesize(p, a);
    VerifyReport r = verify_strategy_tree(t, p);
    if (!out.empty()) save_strategy(t, out);
    json doc{{"command", "synth"},
             {"ordinal", render(a)},
             {"winner", player_name(t.winner)},
             {"nodes", count_nodes(t)},
             {"obligations", r.obligations.size()},
             {"failures", r.failures()}};
    std::ostringstream text;
    text << "winner " << player_name(t.winner) << "\n"
         << count_nodes(t) << " nodes, " << r.obligations.size() << " obligations, " << r.failures() << " failed\n";
    if (show_formula) {
        Formula psi = emit_strategy_formula(t, p);
        doc["strategy_formula"] = render(psi);
        doc["formula_checked"] = a.finite();
        if (a.finite()) {
            FiniteChain chain;
            chain.k = static_cast<int>(a.finite_part());
            bool ok = eval_finite(win_sentences(phi, psi, t.winner).win, chain);
            doc["formula_verified"] = ok;
            text << "strategy formula " << (ok ? "verified" : "FAILED") << " on the chain of length " << chain.k << "\n";
        } else {
            text << "strategy formula (construction-faithful, not machine-verified)\n";
        }
        text << render(psi) << "\n";
    }
    if (!out.empty()) text << "wrote " << out << "\n";
    emit(cfg, doc, text.str());
    return r.ok() ? 0 : 3;
}

int cmd_verify(const RunConfig& cfg, const std::string& path, const std::string& expr, const std::string& file,
               const std::string& ord)
{
    Formula phi = condition(expr, file);
    OrdinalExpr a = parse_ordinal(ord);
    StrategyTree t = load_strategy(path);
    if (render(t.ordinal) != render(a))
        throw InvalidInput("strategy is for " + render(t.ordinal) + ", not " + render(a));
    ChurchProblem p(phi, cfg.limits());
    VerifyReport r = verify_strategy_tree(t, p);
    bool flat_ok = true;
    if (r.ok() && a.finite()) {
        FiniteStrategyTable tab = flatten(t, p.games());
        flat_ok = verify_finite_strategy(tab, condition_of(phi), tab.length);
        r.obligations.push_back({"/", "flattened table wins every play", flat_ok});
    }
    json obl = json::array();
    for (const auto& o : r.obligations) obl.push_back({{"path", o.path}, {"what", o.what}, {"ok", o.ok}});
    json doc{{"command", "verify"},
             {"ordinal", render(a)},
             {"winner", player_name(t.winner)},
             {"verified", r.ok()},
             {"obligations", obl}};
    std::string text = r.text() + (r.ok() ? "verified: strategy wins for " : "NOT verified: claimed winner ") +
                       player_name(t.winner) + "\n";
    emit(cfg, doc, text);
    return r.ok() ? 0 : 3;
}

int cmd_atlas(const RunConfig& cfg, const std::string& expr, const std::string& file, const std::string& out,
              std::size_t max_rows)
{
    Formula phi = condition(expr, file);
    ChurchProblem p(phi, cfg.limits());
    Atlas at = p.atlas(max_rows);
    json rows = json::array();
    std::ostringstream text;
    text << "m " << at.info.m << "\n";
    for (std::size_t k = 0; k < at.info.m; ++k)
        text << "w^" << k << ": lag " << at.info.lag[k] << " period " << at.info.period[k] << "\n";
    for (const auto& row : at.rows) {
        rows.push_back({{"gcode", render(row.gcode)},
                        {"representative", render(ordinal_of_gcode(row.gcode, at.info))},
                        {"winner", player_name(row.winner)}});
        text << render(row.gcode) << "  " << render(ordinal_of_gcode(row.gcode, at.info)) << "  " << player_name(row.winner)
             << "\n";
    }
    json lag = at.info.lag, period = at.info.period;
    json doc{{"command", "atlas"}, {"m", at.info.m}, {"lag", lag}, {"period", period},
             {"domain_size", at.domain_size}, {"rows", rows}};
    if (!out.empty()) {
        std::ofstream f(out);
        if (!f) throw InvalidInput("cannot write " + out);
        f << doc.dump(1) << "\n";
        text << "wrote " << out << "\n";
    }
    emit(cfg, doc, text.str());
    return 0;
}

int cmd_reduce(const RunConfig& cfg, const std::string& expr, const std::string& file, const std::string& ord)
{
    Formula phi = condition(expr, file);
    OrdinalExpr a = parse_ordinal(ord);
    ChurchProblem p(phi, cfg.limits());
    Reduction r = reduce_to_omega_omega(p, a);
    OrdinalExpr ww;
    ww.flag = true;
    Player reduced = p.game_type(ww).contains(r.k) ? Player::I : Player::II;
    json doc{{"command", "reduce"},
             {"ordinal", render(a)},
             {"beta", render(r.beta)},
             {"k_set", winset_to_json(r.k)},
             {"condition", render(r.condition)},
             {"winner", player_name(reduced)}};
    std::ostringstream text;
    text << "beta " << render(r.beta) << "\nK " << render_winset(r.k) << "\nwinner of the w^w game " << player_name(reduced)
         << "\ncondition " << render(r.condition) << "\n";
    emit(cfg, doc, text.str());
    return 0;
}

int cmd_search(const RunConfig& cfg, const std::string& expr, const std::string& file, const std::string& ord,
               std::size_t budget, std::size_t max_size)
{
    Formula phi = condition(expr, file);
    OrdinalExpr a = parse_ordinal(ord);
    SearchOptions o;
    o.budget = budget;
    o.max_size = max_size;
    o.max_types = cfg.max_types;
    SearchResult r = search_definable_strategy(phi, code_of(a), o);
    json doc{{"command", "search"}, {"ordinal", render(a)}, {"found", r.found}, {"tested", r.tested}, {"skipped", r.skipped}};
    std::ostringstream text;
    if (r.found) {
        doc["player"] = player_name(r.player);
        doc["strategy_formula"] = render(r.psi);
        text << "player " << player_name(r.player) << " wins with " << render(r.psi) << "\n";
    } else {
        text << "none within budget\n";
    }
    text << r.tested << " candidates tested, " << r.skipped << " skipped\n";
    emit(cfg, doc, text.str());
    return 0;
}

// Whether `p` can still force its goal from a history of `round` full rounds.
bool can_force(const PlayCondition& cond, int k, Player p, int round, std::uint64_t x1, std::uint64_t x2)
{
    if (round == k) return cond(x1, x2, k) == (p == Player::I);
    auto after = [&](int a, int b) {
        return can_force(cond, k, p, round + 1, x1 | std::uint64_t(a) << round, x2 | std::uint64_t(b) << round);
    };
    auto second = [&](int a) {
        bool any = false, all = true;
        for (int b = 0; b < 2; ++b) {
            bool w = after(a, b);
            any = any || w;
            all = all && w;
        }
        return p == Player::II ? any : all;
    };
    bool any = false, all = true;
    for (int a = 0; a < 2; ++a) {
        bool w = second(a);
        any = any || w;
        all = all && w;
    }
    return p == Player::I ? any : all;
}

int read_bit(std::istream& in, const std::string& prompt, bool echo)
{
    for (;;) {
        if (echo) std::cout << prompt << std::flush;
        std::string line;
        if (!std::getline(in, line)) throw Failed{1};
        if (line == "0" || line == "1") return line[0] - '0';
        if (line == "q" || line == "quit") throw Failed{1};
        std::cout << "enter 0 or 1 (q to abort)\n";
    }
}

int cmd_play(const RunConfig& cfg, const std::string& expr, const std::string& file, std::size_t length,
             const std::string& ord, std::size_t horizon, const std::string& side, const std::string& transcript_path)
{
    Formula phi = condition(expr, file);
    Player human = side == "I" ? Player::I : Player::II;
    Player engine = opponent(human);
    OrdinalExpr a = ord.empty() ? ordinal_finite(length) : parse_ordinal(ord);
    const bool finite = a.finite();
    if (finite && (a.finite_part() == 0 || a.finite_part() > cfg.max_length))
        throw InvalidInput("game length must be between 1 and " + std::to_string(cfg.max_length));
    if (!finite && (render(a) != "w" || horizon == 0 || horizon > 63))
        throw InvalidInput("infinite play is limited to w with a horizon between 1 and 63");
    const int k = finite ? static_cast<int>(a.finite_part()) : static_cast<int>(horizon);

    ChurchProblem p(phi, cfg.limits());
    StrategyTree t = synthesize(p, a);
    std::optional<FiniteStrategyTable> table;
    const MealyMachine* machine = nullptr;
    if (t.winner == engine) {
        if (finite)
            table = flatten(t, p.games());
        else
            machine = &t.root->machine;
    }
    PlayCondition cond = condition_of(phi);
    std::cout << "game of length " << render(a) << ", you are Player " << player_name(human) << ", engine is "
              << player_name(engine) << (t.winner == engine ? " (winning side)" : "") << "\n";

    std::uint64_t x1 = 0, x2 = 0;
    int state = machine ? machine->initial : 0;
    auto engine_move = [&](int round, int other) {
        if (table) return int(table->move(round, engine == Player::I ? x2 : (x1 | std::uint64_t(other) << round)));
        if (machine) return machine->respond(state, other);
        // Losing side: take a move that forces a win if the human has slipped.
        for (int b = 0; b < 2; ++b) {
            const std::uint64_t bit = std::uint64_t(b) << round;
            if (engine == Player::II) {
                if (can_force(cond, k, engine, round + 1, x1 | std::uint64_t(other) << round, x2 | bit)) return b;
                continue;
            }
            bool ok = true;
            for (int c = 0; c < 2 && ok; ++c)
                ok = can_force(cond, k, engine, round + 1, x1 | bit, x2 | std::uint64_t(c) << round);
            if (ok) return b;
        }
        return 0;
    };
    json rounds = json::array();
    for (int r = 0; r < k; ++r) {
        int b1, b2;
        if (human == Player::I) {
            b1 = read_bit(std::cin, "round " + std::to_string(r) + ", your move: ", true);
            b2 = engine_move(r, b1);
        } else {
            b1 = engine_move(r, 0);
            std::cout << "round " << r << ", engine plays " << b1 << "\n";
            b2 = read_bit(std::cin, "round " + std::to_string(r) + ", your move: ", true);
        }
        if (machine) state = machine->step(state, engine == Player::I ? b2 : b1).second;
        x1 |= std::uint64_t(b1) << r;
        x2 |= std::uint64_t(b2) << r;
        if (human == Player::I) std::cout << "engine plays " << b2 << "\n";
        rounds.push_back({{"I", b1}, {"II", b2}});
    }
    json doc{{"command", "play"}, {"condition", render(phi)}, {"ordinal", render(a)}, {"length", k}, {"rounds", rounds}};
    std::string verdict;
    if (finite) {
        verdict = cond(x1, x2, k) ? "I" : "II";
        doc["verdict"] = verdict;
        std::cout << "verdict: Player " << verdict << " wins\n";
    } else {
        doc["verdict"] = nullptr;
        doc["horizon"] = k;
        std::cout << "horizon reached after " << k << " rounds, not a verdict; engine strategy wins the full game for "
                  << player_name(t.winner) << "\n";
    }
    if (!transcript_path.empty()) {
        std::ofstream f(transcript_path);
        if (!f) throw InvalidInput("cannot write " + transcript_path);
        f << doc.dump(1) << "\n";
    }
    if (cfg.json) std::cout << doc.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Decide and synthesize strategies for MLO games of countable ordinal length"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    app.add_option("--max-types", cfg.max_types, "Cap on reduced-algebra elements per level")->check(CLI::PositiveNumber);
    app.add_option("--max-states", cfg.max_states, "Cap on parity automaton states")->check(CLI::PositiveNumber);
    app.add_option("--max-length", cfg.max_length, "Longest finite game for play")->check(CLI::Range(1, 20));
    app.add_flag("--json", cfg.json, "Machine-readable output");

    std::string expr, file, ord, out, strategy, sentence, side = "II";
    std::size_t budget = 1000, max_size = 7, length = 0, horizon = 0, max_rows = 100'000;
    bool show_formula = false;
    std::function<int()> run;

    auto with_formula = [&](CLI::App* sc) {
        auto* e = sc->add_option("--expr", expr, "Winning condition over X1, X2");
        auto* f = sc->add_option("--file", file, "File holding the winning condition");
        e->excludes(f);
    };

    auto* decide = app.add_subcommand("decide", "Winner of the game of the given length");
    with_formula(decide);
    decide->add_option("--ordinal", ord, "w-expression or code:[f,...]")->required();
    decide->callback([&] { run = [&] { return cmd_decide(cfg, expr, file, ord); }; });

    auto* mth = app.add_subcommand("mth", "Truth of a sentence in an ordinal");
    mth->add_option("--sentence", sentence)->required();
    mth->add_option("--ordinal", ord)->required();
    mth->callback([&] { run = [&] { return cmd_mth(cfg, sentence, ord); }; });

    auto* synth = app.add_subcommand("synth", "Synthesize and verify a winning strategy");
    with_formula(synth);
    synth->add_option("--ordinal", ord)->required();
    synth->add_option("--out", out, "Write the strategy document here");
    synth->add_flag("--formula", show_formula, "Print a strategy formula");
    synth->callback([&] { run = [&] { return cmd_synth(cfg, expr, file, ord, out, show_formula); }; });

    auto* verify = app.add_subcommand("verify", "Check a strategy document");
    verify->add_option("--strategy", strategy)->required();
    with_formula(verify);
    verify->add_option("--ordinal", ord)->required();
    verify->callback([&] { run = [&] { return cmd_verify(cfg, strategy, expr, file, ord); }; });

    auto* atlas = app.add_subcommand("atlas", "Winner for every game code");
    with_formula(atlas);
    atlas->add_option("--out", out);
    atlas->add_option("--max-rows", max_rows)->check(CLI::PositiveNumber);
    atlas->callback([&] { run = [&] { return cmd_atlas(cfg, expr, file, out, max_rows); }; });

    auto* reduce = app.add_subcommand("reduce", "Equivalent condition for the w^w game");
    with_formula(reduce);
    reduce->add_option("--ordinal", ord)->required();
    reduce->callback([&] { run = [&] { return cmd_reduce(cfg, expr, file, ord); }; });

    auto* search = app.add_subcommand("search", "Look for a small defining formula of a winning strategy");
    with_formula(search);
    search->add_option("--ordinal", ord)->required();
    search->add_option("--budget", budget, "Candidates to test");
    search->add_option("--max-size", max_size, "Largest candidate body");
    search->callback([&] { run = [&] { return cmd_search(cfg, expr, file, ord, budget, max_size); }; });

    auto* play = app.add_subcommand("play", "Play against the engine");
    with_formula(play);
    auto* len = play->add_option("--length", length, "Number of rounds");
    auto* pord = play->add_option("--ordinal", ord, "Only w, played to --horizon");
    len->excludes(pord);
    play->add_option("--horizon", horizon, "Rounds shown of an infinite game");
    play->add_option("--as", side, "Your side")->check(CLI::IsMember({"I", "II"}));
    play->add_option("--transcript", out, "Write the transcript here");
    play->callback([&] { run = [&] { return cmd_play(cfg, expr, file, length, ord, horizon, side, out); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    try {
        return run();
    } catch (const Failed& f) {
        std::cerr << "aborted\n";
        return f.status;
    } catch (const ResourceLimit& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
