#include "treelie/johnson.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "treelie/errors.hpp"
#include "treelie/gl_action.hpp"
#include "treelie/tensor.hpp"

namespace treelie {

// ---------------------------------------------------------------- specs

ColorModuleSpec ColorModuleSpec::exact(int i, int j, std::vector<int> support) {
    ColorModuleSpec s;
    s.degree = i + j - 2;
    s.a_min = s.a_max = i;
    s.support = std::move(support);
    s.validate();
    return s;
}

ColorModuleSpec ColorModuleSpec::threshold(int k, int r, int s, std::vector<int> support) {
    ColorModuleSpec m;
    m.degree = k;
    m.a_min = r;
    m.a_max = k + 2 - s;
    m.support = std::move(support);
    m.validate();
    return m;
}

void ColorModuleSpec::validate() const {
    if (degree < 1) throw ConfigError("module degree must be positive");
    if (a_min < 0 || a_max > leaves() || a_min > a_max) throw ConfigError("bad color weight for " + name());
    if (support.empty()) throw ConfigError("empty support with positive degree");
    for (int i : support)
        if (i < 1 || i > 63) throw ConfigError("support index out of range");
}

namespace {

std::string power(char c, int e) {
    if (e == 0) return "";
    if (e == 1) return std::string(1, c);
    return std::string(1, c) + "^" + std::to_string(e);
}

}  // namespace

std::string ColorModuleSpec::name() const {
    const int n = leaves();
    if (a_min == a_max) return "W(" + power('a', a_min) + power('b', n - a_min) + ")";
    std::string s = "W" + std::to_string(degree) + "(";
    s += a_min > 0 ? "a>=" + std::to_string(a_min) : "a";
    s += a_max < n ? "b>=" + std::to_string(n - a_max) : "b";
    return s + ")";
}

std::vector<int> support_range(int lo, int hi) {
    std::vector<int> s;
    for (int i = lo; i <= hi; ++i) s.push_back(i);
    return s;
}

std::vector<int> parse_support(const std::string& text) {
    std::set<int> out;
    std::size_t pos = 0;
    auto number = [&]() {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw ParseError("expected support index", start);
        return std::stoi(text.substr(start, pos - start));
    };
    while (pos < text.size()) {
        int lo = number();
        int hi = lo;
        if (text.compare(pos, 2, "..") == 0) {
            pos += 2;
            hi = number();
        }
        if (hi < lo) throw ParseError("empty support range", pos);
        for (int i = lo; i <= hi; ++i) out.insert(i);
        if (pos < text.size()) {
            if (text[pos] != ',') throw ParseError("expected ',' in support", pos);
            ++pos;
        }
    }
    if (out.empty()) throw ParseError("empty support", 0);
    return {out.begin(), out.end()};
}

std::string support_text(const std::vector<int>& s) {
    if (s.empty()) return "";
    bool contiguous = true;
    for (std::size_t i = 1; i < s.size(); ++i) contiguous = contiguous && s[i] == s[i - 1] + 1;
    if (contiguous && s.size() > 1) return std::to_string(s.front()) + ".." + std::to_string(s.back());
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out;
}

std::vector<TreeTerm> enumerate_trees(const ColorModuleSpec& spec) {
    spec.validate();
    const int n = spec.leaves();
    if (spec.degree > kMaxSupportedDegree) throw DomainError("degree above supported maximum");
    std::vector<BasisLabel> letters;
    for (int i : spec.support) letters.push_back(a(i));
    for (int i : spec.support) letters.push_back(b(i));
    std::set<std::string> keys;
    std::vector<BasisLabel> cur(n);
    std::function<void(int, int)> rec = [&](int pos, int acount) {
        if (pos == n) {
            if (!spec.admits(acount)) return;
            Canonical c = as_canonical(parse_caterpillar(cur, kMaxSupportedDegree));
            if (c.sign != 0) keys.insert(c.key);
            return;
        }
        const int left = n - pos;
        for (BasisLabel x : letters) {
            int na = acount + (x.side == Side::A ? 1 : 0);
            if (na > spec.a_max || na + left - 1 < spec.a_min) continue;
            cur[pos] = x;
            rec(pos + 1, na);
        }
    };
    rec(0, 0);
    std::vector<TreeTerm> out;
    out.reserve(keys.size());
    for (const auto& k : keys) out.push_back(decode_key(k));
    return out;
}

// ---------------------------------------------------------------- recipes

int BracketRecipe::degree() const {
    int d = 0;
    for (const auto& m : modules) d += m.degree;
    return d;
}

std::pair<int, int> BracketRecipe::color() const {
    int i = 0, n = 0;
    for (const auto& m : modules) {
        if (m.a_min != m.a_max) throw ConfigError("recipe color needs exact weights");
        i += m.a_min;
        n += m.leaves();
    }
    int brackets = static_cast<int>(modules.size()) - 1;
    return {i - brackets, n - i - brackets};
}

std::string BracketRecipe::name() const {
    if (modules.size() == 1) return modules[0].name();
    if (modules.size() == 2) return "[" + modules[0].name() + "," + modules[1].name() + "]";
    return "[[" + modules[0].name() + "," + modules[1].name() + "]," + modules[2].name() + "]";
}

namespace {

struct Masks {
    std::uint64_t amask = 0, bmask = 0;
};

Masks masks_of(const TreeSum& s) {
    Masks m;
    for (const auto& [k, c] : s.terms())
        for (BasisLabel x : key_labels(k)) (x.side == Side::A ? m.amask : m.bmask) |= 1ULL << x.index;
    return m;
}

bool may_contract(const Masks& x, const Masks& y) { return (x.amask & y.bmask) || (x.bmask & y.amask); }

std::int64_t now_ms() {
    using namespace std::chrono;
    return duration_cast<milliseconds>(steady_clock::now().time_since_epoch()).count();
}

// Computes generator vectors in parallel chunks and inserts them in index order.
void feed(Lattice& l, std::size_t count, const std::function<std::optional<SparseVector>(std::size_t)>& make,
          const SpanOptions& opt, SpanStats* stats) {
    const std::size_t chunk = 512;
    const int jobs = std::max(1, opt.jobs);
    const std::int64_t start = now_ms();
    std::vector<std::optional<SparseVector>> buf;
    for (std::size_t base = 0; base < count; base += chunk) {
        if (opt.deadline_ms > 0 && now_ms() - start > opt.deadline_ms) throw BudgetExceeded("span budget exhausted");
        const std::size_t n = std::min(chunk, count - base);
        buf.assign(n, std::nullopt);
        if (jobs == 1) {
            for (std::size_t i = 0; i < n; ++i) buf[i] = make(base + i);
        } else {
            std::vector<std::thread> pool;
            std::exception_ptr err;
            std::mutex m;
            for (int t = 0; t < jobs; ++t)
                pool.emplace_back([&, t] {
                    try {
                        for (std::size_t i = t; i < n; i += jobs) buf[i] = make(base + i);
                    } catch (...) {
                        std::lock_guard<std::mutex> g(m);
                        if (!err) err = std::current_exception();
                    }
                });
            for (auto& th : pool) th.join();
            if (err) std::rethrow_exception(err);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!buf[i]) continue;
            if (stats) ++stats->generators;
            l.insert(*buf[i], static_cast<std::int64_t>(base + i));
        }
    }
}

std::vector<TreeSum> as_sums(const std::vector<TreeTerm>& ts) {
    std::vector<TreeSum> out;
    out.reserve(ts.size());
    for (const auto& t : ts) out.emplace_back(t);
    return out;
}

// Pairs (i,j) of generators whose bracket can be nonzero.
std::vector<std::pair<std::uint32_t, std::uint32_t>> contracting_pairs(const std::vector<TreeSum>& xs,
                                                                       const std::vector<TreeSum>& ys, bool wedge,
                                                                       SpanStats* stats) {
    std::vector<Masks> mx, my;
    for (const auto& x : xs) mx.push_back(masks_of(x));
    for (const auto& y : ys) my.push_back(masks_of(y));
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (std::uint32_t i = 0; i < xs.size(); ++i)
        for (std::uint32_t j = wedge ? i + 1 : 0; j < ys.size(); ++j) {
            if (may_contract(mx[i], my[j])) out.emplace_back(i, j);
            else if (stats) ++stats->pruned;
        }
    return out;
}

std::optional<SparseVector> bracket_vector(const TreeSum& x, const TreeSum& y, SpanStats* stats, std::mutex* m) {
    TreeSum s = bracket(x, y, kMaxSupportedDegree);
    if (s.is_zero()) {
        if (stats) {
            std::lock_guard<std::mutex> g(*m);
            ++stats->zero;
        }
        return std::nullopt;
    }
    SparseVector v = to_sparse(expand(s));
    if (v.empty()) return std::nullopt;
    return v;
}

bool same_module(const ColorModuleSpec& x, const ColorModuleSpec& y) {
    return x.degree == y.degree && x.a_min == y.a_min && x.a_max == y.a_max && x.support == y.support;
}

std::mutex inner_mutex;
std::map<std::string, std::vector<TreeSum>> inner_cache;

std::string inner_key(const ColorModuleSpec& x, const ColorModuleSpec& y) {
    // ordered: [X,Y] and [Y,X] have different generating subsets
    return x.name() + "|" + y.name() + "|" + support_text(x.support) + "|" + support_text(y.support);
}

void check_degree(int d) {
    if (d > kDefaultMaxDegree) throw DomainError("recipe degree " + std::to_string(d) + " above maximum");
}

}  // namespace

std::vector<TreeSum> bracket_generators(const ColorModuleSpec& x, const ColorModuleSpec& y, SpanStats* stats,
                                        const SpanOptions& opt) {
    check_degree(x.degree + y.degree);
    const std::string key = inner_key(x, y);
    {
        std::lock_guard<std::mutex> g(inner_mutex);
        auto it = inner_cache.find(key);
        if (it != inner_cache.end()) return it->second;
    }
    std::vector<TreeSum> xs = as_sums(enumerate_trees(x)), ys = as_sums(enumerate_trees(y));
    auto pairs = contracting_pairs(xs, ys, same_module(x, y), stats);
    Lattice l(x.leaves() + y.leaves() - 2);
    std::mutex m;
    feed(
        l, pairs.size(),
        [&](std::size_t i) { return bracket_vector(xs[pairs[i].first], ys[pairs[i].second], stats, &m); }, opt, stats);
    std::vector<TreeSum> out;
    for (std::int64_t id : l.generating_subset()) {
        if (id < 0) continue;
        out.push_back(bracket(xs[pairs[id].first], ys[pairs[id].second], kMaxSupportedDegree));
    }
    std::lock_guard<std::mutex> g(inner_mutex);
    inner_cache.emplace(key, out);
    return out;
}

namespace {

void span_into(Lattice& l, const BracketRecipe& r, SpanStats* stats, const SpanOptions& opt) {
    check_degree(r.degree());
    std::mutex m;
    if (r.modules.size() == 1) {
        std::vector<TreeSum> xs = as_sums(enumerate_trees(r.modules[0]));
        feed(
            l, xs.size(),
            [&](std::size_t i) -> std::optional<SparseVector> {
                SparseVector v = to_sparse(expand(xs[i]));
                if (v.empty()) return std::nullopt;
                return v;
            },
            opt, stats);
        return;
    }
    std::vector<TreeSum> xs, ys;
    bool wedge = false;
    if (r.modules.size() == 2) {
        xs = as_sums(enumerate_trees(r.modules[0]));
        ys = as_sums(enumerate_trees(r.modules[1]));
        wedge = same_module(r.modules[0], r.modules[1]);
    } else if (r.modules.size() == 3) {
        xs = bracket_generators(r.modules[0], r.modules[1], stats, opt);
        ys = as_sums(enumerate_trees(r.modules[2]));
    } else {
        throw ConfigError("recipes take one to three modules");
    }
    auto pairs = contracting_pairs(xs, ys, wedge, stats);
    feed(
        l, pairs.size(),
        [&](std::size_t i) { return bracket_vector(xs[pairs[i].first], ys[pairs[i].second], stats, &m); }, opt, stats);
}

int recipe_arity(const BracketRecipe& r) { return r.degree() + 2; }

}  // namespace

Lattice span_recipe(const BracketRecipe& r, SpanStats* stats, const SpanOptions& opt) {
    if (r.modules.empty()) return Lattice(0);
    Lattice l(recipe_arity(r));
    span_into(l, r, stats, opt);
    return l;
}

Lattice span_recipes(const std::vector<BracketRecipe>& rs, SpanStats* stats, const SpanOptions& opt) {
    Lattice l(0);
    bool first = true;
    for (const auto& r : rs) {
        if (r.modules.empty()) continue;
        if (first) {
            l = Lattice(recipe_arity(r));
            first = false;
        } else if (recipe_arity(r) != l.arity()) {
            throw ArgumentError("recipes of different degree");
        }
        span_into(l, r, stats, opt);
    }
    return l;
}

std::vector<TreeSum> recipe_elements(const BracketRecipe& r, const SpanOptions& opt) {
    check_degree(r.degree());
    if (r.modules.size() == 1) {
        std::vector<TreeSum> out;
        for (auto& x : as_sums(enumerate_trees(r.modules[0])))
            if (!x.is_zero()) out.push_back(std::move(x));
        return out;
    }
    std::vector<TreeSum> xs, ys;
    bool wedge = false;
    if (r.modules.size() == 2) {
        xs = as_sums(enumerate_trees(r.modules[0]));
        ys = as_sums(enumerate_trees(r.modules[1]));
        wedge = same_module(r.modules[0], r.modules[1]);
    } else if (r.modules.size() == 3) {
        xs = bracket_generators(r.modules[0], r.modules[1], nullptr, opt);
        ys = as_sums(enumerate_trees(r.modules[2]));
    } else {
        throw ConfigError("recipes take one to three modules");
    }
    std::vector<TreeSum> out;
    for (auto [i, j] : contracting_pairs(xs, ys, wedge, nullptr)) {
        TreeSum s = bracket(xs[i], ys[j], kMaxSupportedDegree);
        if (!s.is_zero()) out.push_back(std::move(s));
    }
    return out;
}

Lattice span_trees(const std::vector<TreeSum>& gens, int degree) {
    Lattice l(degree + 2);
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (!gens[i].is_zero() && gens[i].degree() != degree) throw ArgumentError("generator of wrong degree");
        l.insert(expand(gens[i]), static_cast<std::int64_t>(i));
    }
    return l;
}

std::vector<BracketRecipe> sector_recipes(int i, const std::vector<int>& s) {
    auto W = [&](int x, int y) { return ColorModuleSpec::exact(x, y, s); };
    auto R = [](ColorModuleSpec x, ColorModuleSpec y, ColorModuleSpec z) { return BracketRecipe{{x, y, z}}; };
    const auto a3 = W(3, 0), a2b = W(2, 1), ab2 = W(1, 2), b3 = W(0, 3);
    switch (i) {
        case 5: return {R(a3, a2b, a2b)};
        case 4: return {R(a3, a2b, ab2), R(a2b, a2b, a2b)};
        case 3: return {R(a2b, ab2, a2b)};
        case 2: return {R(ab2, a2b, ab2)};
        case 1: return {R(b3, ab2, a2b), R(ab2, ab2, ab2)};
        case 0: return {R(b3, ab2, ab2)};
        default: throw ConfigError("degree-3 sectors have 0..5 A-leaves");
    }
}

std::vector<BracketRecipe> gamma3_recipes(const std::vector<ColorModuleSpec>& mods, int a_count) {
    std::vector<BracketRecipe> out;
    for (std::size_t x = 0; x < mods.size(); ++x)
        for (std::size_t y = x; y < mods.size(); ++y)
            for (std::size_t z = 0; z < mods.size(); ++z) {
                BracketRecipe r{{mods[x], mods[y], mods[z]}};
                if (r.color().first == a_count) out.push_back(r);
            }
    return out;
}

ImTau3 im_tau3(const std::vector<int>& support, const SpanOptions& opt) {
    ImTau3 out;
    out.support = support;
    for (int i = 5; i >= 0; --i) out.sectors.emplace(i, span_recipes(sector_recipes(i, support), nullptr, opt));
    return out;
}

Lattice swap_lattice(const Lattice& l) {
    Lattice r(l.arity());
    std::int64_t id = 0;
    for (const auto& row : l.basis()) r.insert(swap_ab(to_tensor(row, l.arity())), id++);
    return r;
}

std::vector<TreeSum> k_family(const std::vector<int>& s) {
    std::vector<TreeSum> out;
    for (int p1 : s)
        for (int p2 : s)
            for (int p3 : s)
                for (int p4 : s) {
                    std::set<int> d{p1, p2, p3, p4};
                    if (d.size() != 4) continue;
                    out.push_back(cat({b(p1), b(p2), b(p4), a(p4), b(p3)}));
                }
    return out;
}

}  // namespace treelie
