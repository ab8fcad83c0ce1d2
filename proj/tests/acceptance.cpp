// Acceptance run: one line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "church/algebra.hpp"
#include "church/automata.hpp"
#include "church/errors.hpp"
#include "church/finite_oracle.hpp"
#include "church/game_types.hpp"
#include "church/omega_game.hpp"
#include "church/ordinal.hpp"
#include "church/parity.hpp"
#include "church/synthesis.hpp"

using namespace church;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Entry {
    std::string text;
    Formula phi;
    std::unique_ptr<ChurchProblem> problem;
    std::map<int, Player> minimax;  // length -> winner
};

std::vector<Entry> g_corpus;

const char* kCopycat = "all1 t: (t in X1 <-> t in X2)";
const char* kSomeX1 = "ex1 x: x in X1";
// II answers with an infinite X2 set whose every nonempty initial part has a maximum,
// i.e. II must keep extending X2 while avoiding limit points in it.
const char* kLimitExample =
    "~(ex1 x: x in X2 & all1 x: (x in X2 -> ex1 y: (x < y & y in X2)) & all1 y: (y in X2 -> all2 Z: ((ex1 z: z "
    "in Z & all1 z: (z in Z -> z < y)) -> ex1 z: (z in Z & all1 w: (w in Z -> (w < z | w = z))))))";

void load_corpus()
{
    std::ifstream in(CORPUS_PATH);
    if (!in) throw InvalidInput(std::string("cannot read ") + CORPUS_PATH);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        Entry e;
        e.text = line;
        e.phi = parse_formula(line);
        e.problem = std::make_unique<ChurchProblem>(e.phi);
        g_corpus.push_back(std::move(e));
    }
}

Player minimax(Entry& e, int k)
{
    auto it = e.minimax.find(k);
    if (it != e.minimax.end()) return it->second;
    Player w = solve_finite_game(condition_of(e.phi), k).winner;
    e.minimax.emplace(k, w);
    return w;
}

std::vector<std::vector<std::uint32_t>> words_upto(int max_len, int alphabet)
{
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::vector<std::uint32_t>> layer{{}};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<std::vector<std::uint32_t>> next;
        for (const auto& w : layer)
            for (int x = 0; x < alphabet; ++x) {
                auto w2 = w;
                w2.push_back(static_cast<std::uint32_t>(x));
                next.push_back(w2);
            }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

std::vector<int> as_ints(const std::vector<std::uint32_t>& w)
{
    return std::vector<int>(w.begin(), w.end());
}

struct Result {
    bool pass = false;
    std::string detail;
};

// Collects mismatch descriptions and keeps the first few for the report.
struct Tally {
    std::size_t checks = 0;
    std::size_t bad = 0;
    std::string first;

    void check(bool ok, const std::string& what)
    {
        ++checks;
        if (ok) return;
        if (bad++ < 3) first += (first.empty() ? "" : "; ") + what;
    }
    std::string text() const
    {
        std::string s = std::to_string(checks) + " checks, " + std::to_string(bad) + " mismatches";
        if (bad) s += " [" + first + "]";
        return s;
    }
};

std::string fmt(double x, int prec = 1)
{
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(prec);
    os << x;
    return os.str();
}

// 1. Finite lengths against exhaustive minimax.
Result criterion1()
{
    auto t0 = Clock::now();
    Tally t;
    for (Entry& e : g_corpus)
        for (int k = 1; k <= 5; ++k) {
            Player d = e.problem->decide(ordinal_finite(static_cast<std::uint64_t>(k)));
            t.check(d == minimax(e, k), e.text + " at " + std::to_string(k));
        }
    double s = seconds_since(t0);
    bool in_time = s < 600;
    return {t.bad == 0 && in_time && g_corpus.size() >= 30,
            std::to_string(g_corpus.size()) + " formulas, lengths 1..5, " + t.text() + ", " + fmt(s) + " s"};
}

// 2. Types of words evaluate formulas correctly; sum and projection are homomorphic.
Result criterion2()
{
    TypeTable tt;
    Tally eval, hom;
    auto words = words_upto(4, 4);
    std::map<std::pair<int, std::vector<std::uint32_t>>, TypeId> ty;
    for (int n = 0; n <= 2; ++n)
        for (const auto& w : words) ty[{n, w}] = enumerate_type(tt, n, 2, FiniteChain::from_word(w, 2));

    for (const Entry& e : g_corpus) {
        const Kernel& k = e.problem->kernel();
        const FormulaAlgebra& alg = e.problem->formula_algebra();
        for (const auto& w : words) {
            FiniteChain m = FiniteChain::from_word(w, 2);
            bool truth = eval_finite(e.phi, m);
            for (int n = k.depth(); n <= 2; ++n)
                eval.check(tt.eval(k.body, ty[{n, w}]) == truth, e.text + " on a word of length " + std::to_string(w.size()));
            if (k.depth() <= 2) {
                std::vector<Elem> letters;
                for (auto b : w) letters.push_back(alg.universe_letter(b));
                auto x = alg.from_full(tt, ty[{k.depth(), w}]);
                hom.check(x && *x == alg.universe().fold(letters), e.text + " reduced type of a word");
            }
        }
    }
    for (int n = 0; n <= 2; ++n)
        for (const auto& w1 : words)
            for (const auto& w2 : words) {
                if (w1.size() + w2.size() > 4) continue;
                auto w = w1;
                w.insert(w.end(), w2.begin(), w2.end());
                hom.check(tt.add(ty[{n, w1}], ty[{n, w2}]) == ty[{n, w}], "sum at depth " + std::to_string(n));
            }
    for (int n = 0; n <= 2; ++n)
        for (const auto& w : words) {
            std::vector<TypeId> ls;
            for (auto b : w) ls.push_back(tt.letter(n, 2, b));
            hom.check(tt.fold(ls) == ty[{n, w}], "letters at depth " + std::to_string(n));
            if (n > 0) hom.check(tt.proj(ty[{n, w}]) == ty[{n - 1, w}], "projection at depth " + std::to_string(n));
        }
    return {eval.bad == 0 && hom.bad == 0, "evaluation: " + eval.text() + "; homomorphisms: " + hom.text()};
}

void semigroup_laws(const Semigroup& s, const std::string& name, Tally& t, bool exhaustive, std::mt19937& rng)
{
    const Elem n = static_cast<Elem>(s.size());
    if (exhaustive) {
        for (Elem a = 0; a < n; ++a)
            for (Elem b = 0; b < n; ++b)
                for (Elem c = 0; c < n; ++c)
                    t.check(s.add(s.add(a, b), c) == s.add(a, s.add(b, c)), name + " associativity");
    } else {
        std::uniform_int_distribution<Elem> pick(0, n - 1);
        for (int i = 0; i < 10000; ++i) {
            Elem a = pick(rng), b = pick(rng), c = pick(rng);
            t.check(s.add(s.add(a, b), c) == s.add(a, s.add(b, c)), name + " associativity");
        }
    }
    for (Elem e = 0; e < n; ++e) {
        if (s.idempotent(e)) t.check(s.add(e, s.omega(e)) == s.omega(e), name + " idempotent absorption");
        for (Elem f = 0; f < n; ++f) t.check(s.omega(s.add(e, f)) == s.add(e, s.omega(s.add(f, e))), name + " omega rotation");
        for (int j = 2; j <= 3; ++j) {
            Elem p = e;
            for (int i = 1; i < j; ++i) p = s.add(p, e);
            t.check(s.omega(p) == s.omega(e), name + " omega of powers");
        }
    }
    // Lasso regrouping on short lassos.
    auto words = words_upto(n <= 6 ? 3 : 2, static_cast<int>(n));
    std::vector<std::vector<Elem>> us{{}};
    for (const auto& w : words) us.push_back(std::vector<Elem>(w.begin(), w.end()));
    for (const auto& u : us)
        for (std::size_t i = 1; i < us.size(); ++i) {
            const auto& v = us[i];
            Elem val = lasso_value(s, u, v);
            auto uv = u;
            uv.insert(uv.end(), v.begin(), v.end());
            t.check(lasso_value(s, uv, v) == val, name + " unrolling");
            auto vv = v;
            vv.insert(vv.end(), v.begin(), v.end());
            t.check(lasso_value(s, u, vv) == val, name + " doubling");
            auto u1 = u;
            u1.push_back(v[0]);
            std::vector<Elem> rot(v.begin() + 1, v.end());
            rot.push_back(v[0]);
            t.check(lasso_value(s, u1, rot) == val, name + " rotation");
        }
}

// 3. Semigroup and omega laws.
Result criterion3()
{
    std::mt19937 rng(20261016);
    Tally t;
    // Full semantic types of depth 0: every reachable element.
    TypeTable tt;
    Universe u0 = reachable_universe(tt, 0, 2);
    for (TypeId a : u0.elements)
        for (TypeId b : u0.elements)
            for (TypeId c : u0.elements) t.check(tt.add(tt.add(a, b), c) == tt.add(a, tt.add(b, c)), "depth-0 types");
    for (TypeId e : u0.elements)
        if (tt.idempotent(e)) t.check(tt.add(e, tt.omega(e)) == tt.omega(e), "depth-0 idempotent");
    // Full semantic types of depth 1 for words up to length 3, all triples.
    std::vector<TypeId> t1;
    for (const auto& w : words_upto(3, 4)) t1.push_back(enumerate_type(tt, 1, 2, FiniteChain::from_word(w, 2)));
    std::sort(t1.begin(), t1.end());
    t1.erase(std::unique(t1.begin(), t1.end()), t1.end());
    for (TypeId a : t1)
        for (TypeId b : t1)
            for (TypeId c : t1) t.check(tt.add(tt.add(a, b), c) == tt.add(a, tt.add(b, c)), "depth-1 types");

    std::size_t algebras = 0, sampled = 0;
    for (const Entry& e : g_corpus) {
        const FormulaAlgebra& alg = e.problem->formula_algebra();
        bool deep = alg.depth() >= 2;
        t.check(alg.universe().check_laws().empty(), e.text + " universe laws");
        t.check(alg.syntactic().check_laws().empty(), e.text + " quotient laws");
        semigroup_laws(alg.universe(), e.text + " universe", t, true, rng);
        semigroup_laws(alg.syntactic(), e.text + " quotient", t, true, rng);
        if (deep) {
            semigroup_laws(alg.universe(), e.text + " universe", t, false, rng);
            ++sampled;
        }
        algebras += 2;
    }
    return {t.bad == 0, std::to_string(u0.elements.size()) + " depth-0 types, " + std::to_string(t1.size()) +
                            " depth-1 word types, " + std::to_string(algebras) + " corpus algebras (" +
                            std::to_string(sampled) + " with 10^4 seeded triples), " + t.text()};
}

std::string table_key(const Semigroup& s)
{
    std::string k;
    for (Elem x : s.add_table()) k += std::to_string(x) + ",";
    k += "|";
    for (Elem x : s.omega_table()) k += std::to_string(x) + ",";
    return k;
}

// 4. Buchi automaton, parity automaton and lasso values agree.
Result criterion4()
{
    std::mt19937 rng(4);
    Tally t;
    std::set<std::string> seen;
    std::size_t small = 0, lassos = 0, random_lassos = 0, over_cap = 0;
    auto each = [&](const Semigroup& s, const std::vector<bool>& formula_win, const std::string& name) {
        std::string key = table_key(s);
        for (bool b : formula_win) key += b ? '1' : '0';
        if (!seen.insert(key).second) return;
        const std::size_t n = s.size();
        if (n <= 6) {
            ++small;
            std::vector<std::vector<bool>> wins;
            if (n <= 4) {
                for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
                    std::vector<bool> w(n);
                    for (std::size_t i = 0; i < n; ++i) w[i] = (mask >> i) & 1;
                    wins.push_back(w);
                }
            } else {
                wins.push_back(formula_win);
                std::vector<bool> c(n);
                for (std::size_t i = 0; i < n; ++i) c[i] = !formula_win[i];
                wins.push_back(c);
            }
            auto words = words_upto(3, static_cast<int>(n));
            std::vector<std::vector<int>> us{{}};
            for (const auto& w : words) us.push_back(as_ints(w));
            ValueAutomata va(s);
            for (const auto& win : wins) {
                NBA nba = build_value_nba(s, win);
                // The solver's automaton goes through the quotient by the win set;
                // the unquotiented one is built as well when it fits.
                const DPA& dpa = va.get(win);
                std::optional<DPA> direct;
                try {
                    direct = reduce(determinize(nba, 50'000));
                } catch (const ResourceLimit&) {
                    ++over_cap;
                }
                for (const auto& u : us)
                    for (std::size_t i = 1; i < us.size(); ++i) {
                        const auto& v = us[i];
                        std::vector<Elem> ue(u.begin(), u.end()), ve(v.begin(), v.end());
                        bool want = win[lasso_value(s, ue, ve)];
                        bool a = nba_accepts_lasso(nba, u, v), b = dpa_accepts_lasso(dpa, u, v);
                        bool c = !direct || dpa_accepts_lasso(*direct, u, v);
                        t.check(a == want && b == want && (!direct || c == want), name + " lasso");
                        ++lassos;
                    }
            }
        } else {
            ValueAutomata va(s);
            NBA nba = build_value_nba(s, formula_win);
            const DPA& dpa = va.get(formula_win);
            std::uniform_int_distribution<int> len(0, 6), letter(0, static_cast<int>(n) - 1);
            for (int i = 0; i < 10000; ++i) {
                std::vector<int> u(static_cast<std::size_t>(len(rng))), v(static_cast<std::size_t>(1 + len(rng)));
                for (auto& x : u) x = letter(rng);
                for (auto& x : v) x = letter(rng);
                std::vector<Elem> ue(u.begin(), u.end()), ve(v.begin(), v.end());
                bool want = formula_win[lasso_value(s, ue, ve)];
                t.check(nba_accepts_lasso(nba, u, v) == want && dpa_accepts_lasso(dpa, u, v) == want, name + " random lasso");
                ++random_lassos;
            }
        }
    };
    for (const Entry& e : g_corpus) {
        const FormulaAlgebra& alg = e.problem->formula_algebra();
        each(alg.syntactic(), alg.winset(), e.text + " quotient");
        each(alg.universe(), alg.universe_winset(), e.text + " universe");
    }
    bool enough = random_lassos >= 10000;
    return {t.bad == 0 && enough, std::to_string(small) + " algebras of size <= 6 (" + std::to_string(lassos) +
                                       " lassos), " + std::to_string(random_lassos) + " random lassos on larger ones, " +
                                       std::to_string(over_cap) + " direct determinizations over the state cap, " +
                                       t.text()};
}

void check_arena(const ParityArena& g, Tally& t)
{
    ParitySolution s = solve_parity(g);
    std::vector<int> bf = brute_force_winners(g);
    t.check(s.winner == bf, "winners on " + std::to_string(g.size()) + " positions");
    for (std::size_t v = 0; v < g.size(); ++v)
        t.check(strategy_wins_from(g, s.strategy, s.winner[v], static_cast<int>(v)), "strategy from a winning position");
}

// 5. Parity games against brute force.
Result criterion5()
{
    Tally t;
    std::size_t exhaustive = 0, sampled = 0;
    for (int n = 1; n <= 3; ++n) {
        const int prios = n + 1;
        std::size_t owners = std::size_t(1) << n;
        std::size_t prio_count = 1;
        for (int i = 0; i < n; ++i) prio_count *= static_cast<std::size_t>(prios);
        std::size_t succ_sets = (std::size_t(1) << n) - 1;
        std::size_t edge_count = 1;
        for (int i = 0; i < n; ++i) edge_count *= succ_sets;
        for (std::size_t o = 0; o < owners; ++o)
            for (std::size_t p = 0; p < prio_count; ++p)
                for (std::size_t ed = 0; ed < edge_count; ++ed) {
                    ParityArena g;
                    std::size_t pp = p, ee = ed;
                    for (int v = 0; v < n; ++v) {
                        g.add_position(static_cast<int>((o >> v) & 1), static_cast<int>(pp % static_cast<std::size_t>(prios)));
                        pp /= static_cast<std::size_t>(prios);
                    }
                    for (int v = 0; v < n; ++v) {
                        std::size_t mask = 1 + ee % succ_sets;
                        ee /= succ_sets;
                        for (int w = 0; w < n; ++w)
                            if ((mask >> w) & 1) g.add_edge(v, w);
                    }
                    check_arena(g, t);
                    ++exhaustive;
                }
    }
    std::mt19937 rng(5);
    for (int n = 4; n <= 8; ++n) {
        int count = n <= 6 ? 4000 : 1000;
        for (int i = 0; i < count; ++i) {
            ParityArena g;
            for (int v = 0; v < n; ++v) g.add_position(static_cast<int>(rng() % 2), static_cast<int>(rng() % static_cast<unsigned>(n + 1)));
            for (int v = 0; v < n; ++v) {
                std::uint32_t mask = 0;
                while (!mask) mask = rng() & ((1u << n) - 1);
                // Keep out-degrees small so that brute force stays cheap.
                while (std::popcount(mask) > 3) mask &= mask - 1;
                for (int w = 0; w < n; ++w)
                    if ((mask >> w) & 1) g.add_edge(v, w);
            }
            check_arena(g, t);
            ++sampled;
        }
    }
    return {t.bad == 0, std::to_string(exhaustive) + " arenas with <= 3 positions (all), " + std::to_string(sampled) +
                            " seeded arenas with 4..8 positions, " + t.text()};
}

std::map<std::string, RoundGameSolution> g_omega_solutions;

// 6. Games of length w: winner, finite-memory strategy, model check.
Result criterion6()
{
    Tally t;
    for (Entry& e : g_corpus) {
        GameAlgebra& ga = e.problem->games();
        std::vector<bool> win = ga.as_vector(e.problem->winset());
        RoundGameSolution sol = solve_mcnaughton_omega(ga.automata(), ga.letters(), win);
        t.check(model_check_strategy(mcnaughton_round(ga.letters()), ga.automata().get(win), sol.machine),
                e.text + " model check");
        t.check(sol.winner == e.problem->decide(parse_ordinal("w")), e.text + " winner agrees with decide");
        g_omega_solutions.emplace(e.text, sol);
    }
    std::string spots;
    auto spot = [&](const char* text, const std::vector<const char*>& ordinals, Player want) {
        ChurchProblem p(parse_formula(text));
        GameAlgebra& ga = p.games();
        std::vector<bool> win = ga.as_vector(p.winset());
        RoundGameSolution sol = solve_mcnaughton_omega(ga.automata(), ga.letters(), win);
        t.check(sol.winner == want, std::string(text) + " winner at w");
        t.check(model_check_strategy(mcnaughton_round(ga.letters()), ga.automata().get(win), sol.machine),
                std::string(text) + " model check");
        for (const char* o : ordinals) t.check(p.decide(parse_ordinal(o)) == want, std::string(text) + " at " + o);
    };
    spot(kCopycat, {"w"}, Player::II);
    spot(kSomeX1, {"w"}, Player::I);
    spot(kLimitExample, {"w", "w*2", "w^2", "w^3*2+w", "w^w", "w^w+w"}, Player::II);
    return {t.bad == 0, std::to_string(g_corpus.size()) +
                            " formulas, spot checks copycat->II, X1 nonempty->I, limit example->II at 6 limits, " + t.text()};
}

// 7. Synthesis and verification.
Result criterion7()
{
    auto t0 = Clock::now();
    Tally t;
    const char* ordinals[] = {"1", "2", "3", "4", "5", "w", "w+1", "w*2", "w^2", "w^2+w*3+2"};
    std::size_t obligations = 0;
    for (Entry& e : g_corpus)
        for (const char* o : ordinals) {
            OrdinalExpr a = parse_ordinal(o);
            StrategyTree tree = synthesize(*e.problem, a);
            VerifyReport r = verify_strategy_tree(tree, *e.problem);
            obligations += r.obligations.size();
            t.check(r.ok(), e.text + " at " + o + ": " + std::to_string(r.failures()) + " failed obligations");
            t.check(tree.winner == e.problem->decide(a), e.text + " at " + o + " winner");
            if (a.finite()) {
                FiniteStrategyTable table = flatten(tree, e.problem->games());
                int k = static_cast<int>(a.finite_part());
                t.check(verify_finite_strategy(table, condition_of(e.phi), k), e.text + " at " + o + " flattened");
            }
        }
    return {t.bad == 0, std::to_string(g_corpus.size() * 10) + " trees, " + std::to_string(obligations) +
                            " obligations, " + t.text() + ", " + fmt(seconds_since(t0)) + " s"};
}

// Game type of an ordinal below w^w built from gt(1) by w-powers and sums only.
class DirectTypes {
public:
    explicit DirectTypes(GameAlgebra& ga) : ga_(ga) { powers_.push_back(ga.one()); }

    GameType power(std::uint64_t e)
    {
        while (powers_.size() <= e) powers_.push_back(ga_.times_omega(powers_.back()));
        return powers_[e];
    }

    GameType of(const OrdinalExpr& a)
    {
        std::optional<GameType> acc;
        for (const auto& term : a.terms) {
            GameType p = power(term.exp);
            for (std::uint64_t i = 0; i < term.coeff; ++i) acc = acc ? ga_.add(*acc, p) : p;
        }
        if (!acc) throw InvalidInput("empty ordinal");
        return *acc;
    }

private:
    GameAlgebra& ga_;
    std::vector<GameType> powers_;
};

// 8. Stabilization, codes and the atlas.
Result criterion8()
{
    std::mt19937 rng(8);
    Tally t;
    std::size_t pairs = 0, soft_failures = 0, rows = 0;
    std::string soft;
    for (Entry& e : g_corpus) {
        ChurchProblem& p = *e.problem;
        const Stabilization* st = nullptr;
        try {
            st = &p.stabilization();
        } catch (const ResourceLimit& ex) {
            if (p.kernel().depth() <= 1) {
                t.check(false, e.text + " did not stabilize: " + ex.what());
            } else {
                ++soft_failures;
                soft += e.text + ": " + ex.what() + "; ";
            }
            continue;
        }
        t.check(st->idempotent_top, e.text + " top power not idempotent");
        const StabilizationInfo& info = st->info;
        std::uint64_t span = 2;
        for (std::size_t k = 0; k < info.m; ++k) span = std::max(span, info.lag[k] + 2 * info.period[k]);

        DirectTypes direct(p.games());
        WinSet g = p.winset();
        auto random_ordinal = [&] {
            OrdinalExpr a;
            std::uint64_t top = info.m + 2;
            std::uint64_t e0 = rng() % (top + 1);
            for (std::uint64_t x = e0 + 1; x-- > 0;)
                if (x == e0 || rng() % 2) a.terms.push_back({x, 1 + rng() % span});
            return a;
        };
        // Same code, different ordinal: shift coefficients past their lag by a
        // period, and grow exponents at or above m.
        auto variant = [&](const OrdinalExpr& a) {
            OrdinalExpr b;
            for (const auto& term : a.terms) {
                auto x = term;
                if (x.exp >= info.m) {
                    x.exp += 1 + rng() % 2;
                    x.coeff += rng() % 3;
                } else if (x.coeff >= info.lag[x.exp]) {
                    x.coeff += info.period[x.exp] * (1 + rng() % 2);
                }
                b.terms.push_back(x);
            }
            return b;
        };
        for (int i = 0; i < 3; ++i) {
            OrdinalExpr a = random_ordinal();
            OrdinalExpr b = variant(a);
            if (!(gcode_of(a, info) == gcode_of(b, info))) {
                t.check(false, e.text + " variant changed the code of " + render(a));
                continue;
            }
            Player da = p.decide(a), db = p.decide(b);
            Player xa = direct.of(a).contains(g) ? Player::I : Player::II;
            Player xb = direct.of(b).contains(g) ? Player::I : Player::II;
            t.check(da == db && xa == xb && da == xa,
                    e.text + " on " + render(a) + " and " + render(b));
            ++pairs;
        }
        Atlas at = p.atlas();
        for (const AtlasRow& row : at.rows) {
            OrdinalExpr rep = ordinal_of_gcode(row.gcode, at.info);
            t.check(p.decide(rep) == row.winner, e.text + " atlas row " + render(row.gcode));
            if (!rep.flag) {
                Player x = direct.of(rep).contains(g) ? Player::I : Player::II;
                t.check(x == row.winner, e.text + " atlas row " + render(row.gcode) + " by direct composition");
            }
            ++rows;
        }
        for (int k = 1; k <= 5; ++k) {
            Code c = gcode_of(ordinal_finite(static_cast<std::uint64_t>(k)), at.info);
            bool found = false;
            for (const AtlasRow& row : at.rows)
                if (row.gcode == c) {
                    found = true;
                    t.check(row.winner == minimax(e, k), e.text + " atlas at " + std::to_string(k));
                }
            t.check(found, e.text + " atlas has no row for " + std::to_string(k));
        }
    }
    std::string detail = std::to_string(pairs) + " equal-code ordinal pairs, " + std::to_string(rows) +
                         " atlas rows, " + t.text();
    if (soft_failures) detail += ", depth-2 stabilization over caps: " + soft;
    return {t.bad == 0 && pairs >= 50, detail};
}

// 9. Games past w^w reduce to a condition for the w^w game.
Result criterion9()
{
    Tally t;
    auto words = words_upto(3, 4);
    for (Entry& e : g_corpus) {
        ChurchProblem& p = *e.problem;
        GameType top = p.game_type(parse_ordinal("w^w"));
        const FormulaAlgebra& alg = p.formula_algebra();
        for (const char* beta : {"0", "1", "w", "w+2"}) {
            OrdinalExpr b = std::string(beta) == "0" ? OrdinalExpr{} : parse_ordinal(beta);
            OrdinalExpr a = ordinal_add(parse_ordinal("w^w"), b);
            Reduction r = reduce_to_omega_omega(p, a);
            t.check(r.beta == b, e.text + " beta for " + beta);
            Player want = p.decide(a);
            t.check(top.contains(r.k) == (want == Player::I), e.text + " w^w + " + beta);
            for (const auto& w : words) {
                std::vector<Elem> ls;
                for (auto b : w) ls.push_back(alg.letter(b));
                Elem cls = alg.syntactic().fold(ls);
                bool in_k = (r.k >> cls) & 1;
                t.check(eval_finite(r.condition, FiniteChain::from_word(w, 2)) == in_k,
                        e.text + " reduced condition on a word, beta " + beta);
            }
        }
    }
    return {t.bad == 0, std::to_string(g_corpus.size() * 4) + " reductions, " + t.text()};
}

// 10. Single mutations of winning strategies.
Result criterion10()
{
    std::size_t f_total = 0, f_losing = 0, f_rejected = 0, f_caught = 0, f_false = 0;
    std::size_t m_total = 0, m_losing = 0, m_rejected = 0, m_caught = 0, m_false = 0;
    std::size_t sanity = 0;

    // Finite tables: verifier is the tree checker over the algebra, the oracle
    // plays every opponent sequence and evaluates the formula.
    for (Entry& e : g_corpus) {
        ChurchProblem& p = *e.problem;
        PlayCondition cond = condition_of(e.phi);
        for (int k = 1; k <= 5; ++k) {
            StrategyTree tree = synthesize(p, ordinal_finite(static_cast<std::uint64_t>(k)));
            if (tree.root->kind != StrategyNode::Kind::Leaf) continue;
            for (std::size_t i = 0; i < tree.root->table.moves.size(); ++i) {
                auto node = std::make_shared<StrategyNode>(*tree.root);
                node->table.moves[i] ^= 1;
                StrategyTree mutant = tree;
                mutant.root = node;
                bool rejected = !verify_strategy_tree(mutant, p).ok();
                bool losing = !verify_finite_strategy(node->table, cond, k);
                ++f_total;
                f_rejected += rejected;
                f_losing += losing;
                f_caught += rejected && losing;
                f_false += rejected && !losing;
            }
        }
    }

    // Machines at w: verifier is the parity model check, the oracle plays
    // ultimately periodic opponents over the unreduced algebra.
    std::vector<std::vector<int>> opp{{}}, opp_long{{}};
    for (const auto& w : words_upto(3, 2)) opp.push_back(as_ints(w));
    for (const auto& w : words_upto(6, 2)) opp_long.push_back(as_ints(w));
    for (Entry& e : g_corpus) {
        ChurchProblem& p = *e.problem;
        GameAlgebra& ga = p.games();
        const FormulaAlgebra& alg = p.formula_algebra();
        std::vector<bool> win = ga.as_vector(p.winset());
        RoundGame game = mcnaughton_round(ga.letters());
        const DPA& dpa = ga.automata().get(win);
        std::vector<Elem> uletters;
        for (std::uint32_t b = 0; b < 4; ++b) uletters.push_back(alg.universe_letter(b));
        RoundGame ugame = mcnaughton_round(uletters);
        const MealyMachine& base = g_omega_solutions.at(e.text).machine;

        auto oracle_loses = [&](const MealyMachine& m, const std::vector<std::vector<int>>& opps) {
            for (const auto& pre : opps)
                for (std::size_t i = 1; i < opps.size(); ++i) {
                    auto [u, v] = play_lasso(ugame, m, pre, opps[i]);
                    std::vector<Elem> ue(u.begin(), u.end()), ve(v.begin(), v.end());
                    bool i_wins = alg.universe_wins(lasso_value(alg.universe(), ue, ve));
                    if (i_wins != (m.player == Player::I)) return true;
                }
            return false;
        };
        if (oracle_loses(base, opp)) ++sanity;

        std::vector<MealyMachine> mutants;
        const int states = static_cast<int>(base.states());
        for (int s = 0; s < states; ++s) {
            if (base.player == Player::I) {
                MealyMachine m = base;
                m.out_i[static_cast<std::size_t>(s)] ^= 1;
                mutants.push_back(m);
            }
            for (int x = 0; x < 2; ++x) {
                if (base.player == Player::II) {
                    MealyMachine m = base;
                    m.out_ii[static_cast<std::size_t>(s)][static_cast<std::size_t>(x)] ^= 1;
                    mutants.push_back(m);
                }
                for (int d = 1; d < states; ++d) {
                    MealyMachine m = base;
                    int& nx = m.next[static_cast<std::size_t>(s)][static_cast<std::size_t>(x)];
                    nx = (nx + d) % states;
                    mutants.push_back(m);
                }
            }
        }
        for (const MealyMachine& m : mutants) {
            bool rejected = !model_check_strategy(game, dpa, m);
            bool losing = oracle_loses(m, opp);
            // Longer opponent lassos only where the short ones found nothing.
            if (rejected && !losing) losing = oracle_loses(m, opp_long);
            ++m_total;
            m_rejected += rejected;
            m_losing += losing;
            m_caught += rejected && losing;
            m_false += rejected && !losing;
        }
    }

    auto pct = [](std::size_t a, std::size_t b) { return b ? 100.0 * static_cast<double>(a) / static_cast<double>(b) : 100.0; };
    double f_rate = pct(f_caught, f_losing), m_rate = pct(m_caught, m_losing);
    std::string detail = "tables: " + std::to_string(f_total) + " mutants, " + std::to_string(f_rejected) +
                         " rejected (" + fmt(pct(f_rejected, f_total)) + "% of all), " + std::to_string(f_losing) +
                         " losing by the formula oracle, " + fmt(f_rate) + "% of those rejected, " +
                         std::to_string(f_false) + " winning mutants rejected; machines: " + std::to_string(m_total) +
                         " mutants, " + std::to_string(m_rejected) + " rejected (" + fmt(pct(m_rejected, m_total)) +
                         "% of all), " + std::to_string(m_losing) + " losing by the lasso oracle, " + fmt(m_rate) +
                         "% of those rejected, " + std::to_string(m_false) + " rejected without an oracle counterexample";
    if (sanity) detail += ", " + std::to_string(sanity) + " unmutated machines lost to the oracle";
    bool pass = f_rate >= 95.0 && m_rate >= 95.0 && f_false == 0 && sanity == 0 && f_total > 0 && m_total > 0;
    return {pass, detail};
}

}  // namespace

int main()
{
    auto t0 = Clock::now();
    try {
        load_corpus();
    } catch (const std::exception& ex) {
        std::printf("cannot load corpus: %s\n", ex.what());
        return 1;
    }
    std::vector<std::function<Result()>> criteria = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                     criterion6, criterion7, criterion8, criterion9, criterion10};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto ti = Clock::now();
        Result r;
        try {
            r = criteria[i]();
        } catch (const std::exception& ex) {
            r = {false, std::string("exception: ") + ex.what()};
        }
        failed += !r.pass;
        std::printf("PRIMARY criterion %zu: %s  %s (%.1f s)\n", i + 1, r.pass ? "PASS" : "FAIL", r.detail.c_str(),
                    seconds_since(ti));
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed, %.1f s total\n", failed, criteria.size(), seconds_since(t0));
    return failed ? 1 : 0;
}
