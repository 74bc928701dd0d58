#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "treelie/claims.hpp"
#include "treelie/errors.hpp"
#include "treelie/gl_action.hpp"
#include "treelie/johnson.hpp"
#include "treelie/lattice.hpp"
#include "treelie/parser.hpp"
#include "treelie/tensor.hpp"
#include "treelie/trace.hpp"

using namespace treelie;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kDomain = 3, kBudget = 4 };

std::string sector_text(const TreeSum& s) {
    std::set<std::pair<int, int>> w;
    for (const auto& [key, c] : s.terms()) w.insert(key_color_weight(key));
    if (w.empty()) return "zero";
    if (w.size() > 1) return "mixed";
    return "(" + std::to_string(w.begin()->first) + "," + std::to_string(w.begin()->second) + ")";
}

SpanOptions span_options(int jobs, double budget_s) {
    SpanOptions o;
    o.jobs = jobs;
    o.deadline_ms = budget_s > 0 ? static_cast<std::int64_t>(budget_s * 1000) : 0;
    return o;
}

json lattice_json(const Lattice& l) {
    return {{"rank", std::to_string(l.rank())}, {"digest", l.digest()}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations in the tree Lie algebra A_k(H)"};
    app.require_subcommand(1);

    int max_degree = kDefaultMaxDegree;
    int genus = 6;
    std::string support_arg = "1..6";
    int jobs = 1;
    double budget = 0;

    // eval
    auto* eval = app.add_subcommand("eval", "Evaluate a tree expression to canonical form");
    std::string expr;
    bool expand_flag = false;
    std::string act;
    eval->add_option("expr", expr, "Tree expression")->required();
    eval->add_flag("--expand", expand_flag, "Print the tensor expansion");
    eval->add_option("--act", act, "GL element applied to the result, e.g. 'perm(1 2) transv(1->3,+1)'");
    eval->add_option("--genus", genus, "Genus for --act")->check(CLI::Range(1, kMaxIndex));
    eval->add_option("--max-degree", max_degree, "Largest allowed degree")->check(CLI::Range(1, kMaxSupportedDegree));

    // trace
    auto* trace = app.add_subcommand("trace", "Apply a trace map to a degree-3 expression (JSON)");
    std::string map = "ALambda";
    trace->add_option("--map", map, "Trace map")->check(CLI::IsMember({"A3", "ALambda", "BLambda"}));
    trace->add_option("expr", expr, "Tree expression")->required();

    // member
    auto* member = app.add_subcommand("member", "Lattice membership of an expression (JSON)");
    std::string recipe_arg;
    int sector = -1;
    member->add_option("expr", expr, "Tree expression")->required();
    auto* mr = member->add_option("--recipe", recipe_arg, "Recipe such as '[a3,a2b]' or '[[a3,a2b],ab2]'");
    auto* ms = member->add_option("--sector", sector, "Sector of Im τ3 by A-leaf count")->check(CLI::Range(0, 5));
    mr->excludes(ms);
    member->add_option("--support", support_arg, "Index support, e.g. 1..6 or 1,2,5");
    member->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    member->add_option("--budget", budget, "Time budget in seconds");

    // span
    auto* spancmd = app.add_subcommand("span", "Rank and digest of a recipe lattice (JSON)");
    spancmd->add_option("recipe", recipe_arg, "Recipe text")->required();
    spancmd->add_option("--support", support_arg, "Index support");
    spancmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    spancmd->add_option("--budget", budget, "Time budget in seconds");

    // coinv
    auto* coinv = app.add_subcommand("coinv", "GL_g(Z) coinvariants of the n-th tensor power of H (JSON)");
    int power = 1;
    coinv->add_option("n", power, "Tensor power")->required()->check(CLI::Range(1, 8));
    coinv->add_option("--genus", genus, "Genus")->check(CLI::Range(1, kMaxIndex));

    // verify
    auto* verify = app.add_subcommand("verify", "Run registered claims");
    std::string suite = "all", mode, format = "text", config_file;
    std::uint64_t seed = 0;
    bool timings = false;
    verify->add_option("suite", suite, "'all', a group such as L3.2, or a claim id");
    auto* vg = verify->add_option("--genus", genus, "Genus");
    auto* vs = verify->add_option("--support", support_arg, "Index support");
    auto* vm = verify->add_option("--mode", mode, "fast or full")->check(CLI::IsMember({"fast", "full"}));
    auto* vj = verify->add_option("--jobs", jobs, "Claims run in parallel")->check(CLI::PositiveNumber);
    auto* vb = verify->add_option("--budget", budget, "Time budget in seconds");
    auto* vseed = verify->add_option("--seed", seed, "Seed for the randomized property checks");
    auto* vd = verify->add_option("--max-degree", max_degree, "Largest allowed degree");
    verify->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    verify->add_option("--config", config_file, "key=value configuration file");
    verify->add_flag("--timings", timings, "Include wall times in JSON");

    // claims list
    auto* claims = app.add_subcommand("claims", "Claim registry");
    claims->require_subcommand(1);
    claims->add_subcommand("list", "Dump the registry as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        if (*eval) {
            TreeSum s = parse_expression(expr, max_degree);
            if (!act.empty()) s = gl_apply(parse_gl(act, genus), s);
            if (expand_flag) std::cout << to_string(expand(s)) << "\n";
            else std::cout << to_string(s) << "\n";
            return kOk;
        }
        if (*trace) {
            TreeSum s = parse_expression(expr, kMaxSupportedDegree);
            json j;
            j["input"] = expr;
            j["sector"] = sector_text(s);
            j["map"] = map;
            if (map == "A3") j["value"] = to_string(tr_A3(s));
            else if (map == "ALambda") j["value"] = to_string(tr_A_lambda(s));
            else j["value"] = to_string(tr_B_lambda(s));
            j["convention-signs"] = {{"bracket", "+1"},
                                     {"trace", std::to_string(kTraceSign)},
                                     {"composite", std::to_string(kCompositeSign)}};
            std::cout << j.dump(2) << "\n";
            return kOk;
        }
        if (*member || *spancmd) {
            auto support = parse_support(support_arg);
            auto opt = span_options(jobs, budget);
            std::vector<BracketRecipe> rs;
            std::string name;
            if (*member && sector >= 0) {
                rs = sector_recipes(sector, support);
                name = "sector " + std::to_string(sector);
            } else {
                if (recipe_arg.empty()) throw ArgumentError("member needs --recipe or --sector");
                rs = {parse_recipe(recipe_arg, support)};
                name = rs[0].name();
            }
            SpanStats stats;
            Lattice l = span_recipes(rs, &stats, opt);
            json j;
            j["lattice"] = name;
            j["support"] = support_text(support);
            j.update(lattice_json(l));
            if (*spancmd) {
                j["generators"] = std::to_string(stats.generators);
                j["pruned"] = std::to_string(stats.pruned);
                j["zero"] = std::to_string(stats.zero);
            } else {
                TreeSum s = parse_expression(expr, kMaxSupportedDegree);
                auto w = l.member(expand(s));
                j["input"] = expr;
                j["member"] = w.has_value();
                if (w) {
                    // nonzero coordinates against the basis rows, by row index
                    json coords = json::object();
                    for (std::size_t i = 0; i < w->size(); ++i)
                        if ((*w)[i] != 0) coords[std::to_string(i)] = (*w)[i].str();
                    j["witness"] = coords;
                }
            }
            std::cout << j.dump(2) << "\n";
            return kOk;
        }
        if (*coinv) {
            auto q = quotient(coinvariant_ambient(power, genus), coinvariant_relations(power, genus));
            json t = json::array();
            for (const auto& x : q.torsion) t.push_back(x.str());
            json j{{"n", std::to_string(power)}, {"genus", std::to_string(genus)}, {"rank", std::to_string(q.rank)},
                   {"torsion", t}};
            std::cout << j.dump(2) << "\n";
            return kOk;
        }
        if (*verify) {
            ClaimConfig c;
            if (const char* env = std::getenv("TREELIE_CACHE")) c.cache_dir = env;
            if (!config_file.empty()) {
                std::ifstream in(config_file);
                if (!in) throw ConfigError("cannot read " + config_file);
                std::stringstream ss;
                ss << in.rdbuf();
                c.load(ss.str());
            }
            if (*vg) c.genus = genus;
            if (*vs) {
                c.support = parse_support(support_arg);
                c.support_set = true;
            }
            if (*vm) c.mode = mode;
            if (*vj) c.jobs = jobs;
            if (*vb) c.budget_ms = static_cast<std::int64_t>(budget * 1000);
            if (*vseed) c.seed = seed;
            if (*vd) c.max_degree = max_degree;
            c.timings = timings;
            c.settle();
            if (!suite_exists(suite)) {
                std::cerr << "error: unknown suite '" << suite << "'\n";
                return kUsage;
            }
            SuiteReport r = run_suite(suite, c);
            std::cout << (format == "json" ? report_json(r) : report_text(r));
            return r.exit_code();
        }
        if (*claims) {
            std::cout << claims_json();
            return kOk;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kDomain;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return kBudget;
    }
    return kOk;
}
