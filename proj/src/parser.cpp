#include "treelie/parser.hpp"

#include <cctype>

#include "treelie/errors.hpp"

namespace treelie {

namespace {

class Cursor {
public:
    explicit Cursor(std::string_view s) : s_(s) {}

    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool done() {
        skip();
        return i_ >= s_.size();
    }
    char peek() {
        skip();
        return i_ < s_.size() ? s_[i_] : '\0';
    }
    bool accept(char c) {
        if (peek() != c) return false;
        ++i_;
        return true;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    std::size_t pos() const { return i_; }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, i_); }

    Integer integer() {
        skip();
        std::size_t j = i_;
        while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
        if (j == i_) fail("expected integer");
        Integer v(std::string(s_.substr(i_, j - i_)));
        i_ = j;
        return v;
    }

    BasisLabel label() {
        skip();
        std::size_t start = i_, j = i_;
        if (j < s_.size() && (s_[j] == 'a' || s_[j] == 'b')) ++j;
        while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
        try {
            BasisLabel x = parse_label(s_.substr(start, j - start));
            i_ = j;
            return x;
        } catch (const ParseError& e) {
            throw ParseError("expected label like a1 or b2", start + e.position);
        }
    }

    bool starts_with(std::string_view w) {
        skip();
        return s_.substr(i_, w.size()) == w;
    }
    void advance(std::size_t n) { i_ += n; }

private:
    std::string_view s_;
    std::size_t i_ = 0;
};

class ExprParser {
public:
    ExprParser(std::string_view s, int max_degree) : c_(s), max_degree_(max_degree) {}

    TreeSum run() {
        TreeSum r = expr();
        if (!c_.done()) c_.fail("unexpected trailing input");
        return r;
    }

private:
    TreeSum expr() {
        TreeSum acc;
        bool first = true;
        while (true) {
            int sign = 1;
            if (c_.accept('-')) sign = -1;
            else if (!c_.accept('+') && !first) break;
            acc.add(item(), sign);
            first = false;
            char p = c_.peek();
            if (p != '+' && p != '-') break;
        }
        return acc;
    }

    TreeSum item() {
        Integer coef = 1;
        if (std::isdigit(static_cast<unsigned char>(c_.peek()))) {
            std::size_t at = c_.pos();
            coef = c_.integer();
            if (!c_.accept('*')) {
                char p = c_.peek();
                if (p == '\0' || p == '+' || p == '-' || p == ')' || p == ']' || p == ',') {
                    if (coef != 0) throw ParseError("only 0 may stand alone", at);
                    return TreeSum();
                }
            }
        }
        TreeSum a = atom();
        return coef == 1 ? a : coef * a;
    }

    TreeSum atom() {
        if (c_.accept('[')) {
            TreeSum x = expr();
            c_.expect(',');
            TreeSum y = expr();
            c_.expect(']');
            return bracket(x, y, max_degree_);
        }
        if (c_.accept('(')) {
            TreeSum x = expr();
            c_.expect(')');
            return x;
        }
        if (c_.starts_with("t(")) {
            c_.advance(2);
            std::size_t at = c_.pos();
            std::vector<BasisLabel> labels{c_.label()};
            while (c_.accept(',')) labels.push_back(c_.label());
            c_.expect(')');
            if (labels.size() < 3) throw ParseError("a tree needs at least three labels", at);
            return TreeSum(parse_caterpillar(labels, max_degree_));
        }
        if (c_.starts_with("r(")) {
            c_.advance(2);
            return rooted();
        }
        c_.fail("expected t(...), r(...), '[' or '('");
    }

    // r(root, node): root leaf is node 0
    TreeSum rooted() {
        TreeTerm t;
        t.nodes.emplace_back();
        t.nodes[0].leaf = true;
        t.nodes[0].label = c_.label();
        c_.expect(',');
        std::size_t at = c_.pos();
        int top = node(t, 0);
        c_.expect(')');
        t.nodes[0].nbr[0] = top;
        if (t.nodes[top].leaf) throw ParseError("rooted tree needs an internal vertex", at);
        if (t.degree() > std::min(max_degree_, kMaxSupportedDegree))
            throw DomainError("tree degree " + std::to_string(t.degree()) + " above maximum");
        return TreeSum(t);
    }

    int node(TreeTerm& t, int parent) {
        int id = static_cast<int>(t.nodes.size());
        t.nodes.emplace_back();
        if (!c_.accept('(')) {
            t.nodes[id].leaf = true;
            t.nodes[id].label = c_.label();
            t.nodes[id].nbr[0] = parent;
            return id;
        }
        int l = node(t, id);
        c_.expect(',');
        int r = node(t, id);
        c_.expect(')');
        t.nodes[id].nbr = {parent, l, r};
        return id;
    }

    Cursor c_;
    int max_degree_;
};

}  // namespace

TreeSum parse_expression(std::string_view text, int max_degree) { return ExprParser(text, max_degree).run(); }

WedgeCubic parse_wedge(std::string_view text) {
    Cursor c(text);
    std::optional<WedgeCubic> acc;
    bool first = true;
    while (!c.done()) {
        int sign = 1;
        if (c.accept('-')) sign = -1;
        else if (!c.accept('+') && !first) c.fail("expected '+' or '-'");
        first = false;
        Integer coef = 1;
        if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
            coef = c.integer();
            c.accept('*');
        }
        std::size_t at = c.pos();
        BasisLabel x = c.label();
        c.expect('^');
        BasisLabel y = c.label();
        c.expect('^');
        BasisLabel z = c.label();
        if (x.side != y.side || y.side != z.side) throw ParseError("wedge labels must share a side", at);
        if (!acc) acc.emplace(x.side);
        else if (acc->side() != x.side) throw ParseError("wedge terms must share a side", at);
        acc->add(WedgeCubic::wedge(x, y, z), coef * sign);
    }
    if (!acc) throw ParseError("empty wedge", 0);
    return *acc;
}

namespace {

ColorModuleSpec module(Cursor& c, const std::vector<int>& support) {
    bool wrapped = false;
    if (c.starts_with("W(")) {
        c.advance(2);
        wrapped = true;
    }
    int na = 0, nb = 0;
    std::size_t at = c.pos();
    while (c.peek() == 'a' || c.peek() == 'b') {
        char side = c.peek();
        c.advance(1);
        int e = 1;
        c.accept('^');
        if (std::isdigit(static_cast<unsigned char>(c.peek()))) e = static_cast<int>(c.integer());
        (side == 'a' ? na : nb) += e;
    }
    if (na + nb != 3) throw ParseError("degree-1 module needs three leaves", at);
    if (wrapped) c.expect(')');
    return ColorModuleSpec::exact(na, nb, support);
}

}  // namespace

BracketRecipe parse_recipe(std::string_view text, const std::vector<int>& support) {
    Cursor c(text);
    BracketRecipe r;
    if (c.accept('[')) {
        if (c.accept('[')) {
            r.modules.push_back(module(c, support));
            c.expect(',');
            r.modules.push_back(module(c, support));
            c.expect(']');
        } else {
            r.modules.push_back(module(c, support));
        }
        c.expect(',');
        r.modules.push_back(module(c, support));
        c.expect(']');
    } else {
        r.modules.push_back(module(c, support));
    }
    if (!c.done()) c.fail("unexpected trailing input");
    return r;
}

}  // namespace treelie
