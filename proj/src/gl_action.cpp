#include "treelie/gl_action.hpp"

#include <cctype>

#include "treelie/errors.hpp"

namespace treelie {

IntMatrix unimodular_inverse(const IntMatrix& m) {
    const Eigen::Index n = m.rows();
    if (m.cols() != n) throw ArgumentError("matrix is not square");
    IntMatrix a = m;
    IntMatrix inv = IntMatrix::Identity(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        // Euclid on rows c..n-1 until a single nonzero remains in column c
        while (true) {
            Eigen::Index best = -1;
            for (Eigen::Index r = c; r < n; ++r)
                if (a(r, c) != 0 && (best < 0 || abs_value(a(r, c)) < abs_value(a(best, c)))) best = r;
            if (best < 0) throw ArgumentError("matrix is singular");
            if (best != c) {
                a.row(best).swap(a.row(c));
                inv.row(best).swap(inv.row(c));
            }
            bool done = true;
            for (Eigen::Index r = c + 1; r < n; ++r) {
                if (a(r, c) == 0) continue;
                BigInt q = a(r, c) / a(c, c);
                a.row(r) -= q * a.row(c);
                inv.row(r) -= q * inv.row(c);
                if (a(r, c) != 0) done = false;
            }
            if (done) break;
        }
        if (abs_value(a(c, c)) != BigInt(1)) throw ArgumentError("matrix is not unimodular");
        if (a(c, c) < 0) {
            a.row(c) *= BigInt(-1);
            inv.row(c) *= BigInt(-1);
        }
    }
    for (Eigen::Index c = n - 1; c >= 0; --c)
        for (Eigen::Index r = 0; r < c; ++r) {
            if (a(r, c) == 0) continue;
            BigInt q = a(r, c);
            a.row(r) -= q * a.row(c);
            inv.row(r) -= q * inv.row(c);
        }
    return inv;
}

GLElement::GLElement(IntMatrix m) : m_(std::move(m)) { inv_ = unimodular_inverse(m_); }

GLElement GLElement::identity(int genus) {
    IntMatrix id = IntMatrix::Identity(genus, genus);
    return {id, id};
}

GLElement GLElement::transvection(int genus, int i, int j, int sign) {
    if (i == j) throw ArgumentError("transvection needs i != j");
    if (i < 1 || j < 1 || i > genus || j > genus) throw ConfigError("transvection index outside genus");
    if (sign != 1 && sign != -1) throw ArgumentError("transvection sign must be +1 or -1");
    IntMatrix m = IntMatrix::Identity(genus, genus);
    IntMatrix inv = m;
    m(i - 1, j - 1) = sign;
    inv(i - 1, j - 1) = -sign;
    return {m, inv};
}

GLElement GLElement::permutation(int genus, const std::vector<int>& p) {
    if (static_cast<int>(p.size()) != genus) throw ArgumentError("permutation size differs from genus");
    IntMatrix m = IntMatrix::Zero(genus, genus);
    std::vector<char> hit(genus, 0);
    for (int k = 1; k <= genus; ++k) {
        int t = p[k - 1];
        if (t < 1 || t > genus || hit[t - 1]) throw ArgumentError("not a permutation");
        hit[t - 1] = 1;
        m(t - 1, k - 1) = 1;
    }
    IntMatrix inv = m.transpose();
    return {m, inv};
}

GLElement GLElement::cycles(int genus, const std::vector<std::vector<int>>& cs) {
    GLElement g = identity(genus);
    for (const auto& c : cs) {
        std::vector<int> p(genus);
        for (int k = 1; k <= genus; ++k) p[k - 1] = k;
        for (std::size_t i = 0; i < c.size(); ++i) {
            int from = c[i], to = c[(i + 1) % c.size()];
            if (from < 1 || from > genus || to < 1 || to > genus) throw ConfigError("cycle entry outside genus");
            p[from - 1] = to;
        }
        g = g * permutation(genus, p);
    }
    return g;
}

HVector GLElement::image(BasisLabel x) const {
    const int n = genus();
    if (x.index < 1 || x.index > n) throw ConfigError("label " + to_string(x) + " outside genus");
    HVector r;
    const int j = x.index - 1;
    for (int i = 0; i < n; ++i) {
        if (x.side == Side::A) r.add(a(i + 1), m_(i, j).value());
        else r.add(b(i + 1), inv_(j, i).value());
    }
    return r;
}

GLElement GLElement::inverse_element() const { return {inv_, m_}; }

GLElement operator*(const GLElement& g, const GLElement& h) {
    if (g.genus() != h.genus()) throw ArgumentError("composing GL elements of different genus");
    IntMatrix m = g.m_ * h.m_;
    IntMatrix inv = h.inv_ * g.inv_;
    return {m, inv};
}

HVector gl_apply(const GLElement& g, const HVector& v) {
    HVector r;
    for (const auto& [x, c] : v.terms()) r += c * g.image(x);
    return r;
}

TreeSum gl_apply(const GLElement& g, const TreeSum& s) {
    return substitute(s, [&](BasisLabel x) { return g.image(x); });
}

namespace {

template <class F>
TensorVec map_tensor(const TensorVec& v, F image) {
    TensorVec r(v.arity());
    const int m = v.arity();
    for (const auto& [k, c] : v.terms()) {
        std::vector<std::vector<std::pair<BasisLabel, Integer>>> im;
        bool zero = false;
        for (BasisLabel x : unpack(k, m)) {
            HVector h = image(x);
            if (h.is_zero()) zero = true;
            im.emplace_back(h.terms().begin(), h.terms().end());
        }
        if (zero) continue;
        std::vector<std::size_t> pick(m, 0);
        while (true) {
            Integer coef = c;
            TensorKey key = 0;
            for (int i = 0; i < m; ++i) {
                key = (key << 8) | static_cast<TensorKey>(im[i][pick[i]].first.code());
                coef *= im[i][pick[i]].second;
            }
            r.add(key, coef);
            int i = m - 1;
            while (i >= 0 && ++pick[i] == im[i].size()) pick[i--] = 0;
            if (i < 0) break;
        }
    }
    return r;
}

}  // namespace

TensorVec gl_apply(const GLElement& g, const TensorVec& v) {
    return map_tensor(v, [&](BasisLabel x) { return g.image(x); });
}

WedgeCubic gl_apply(const GLElement& g, const WedgeCubic& w) {
    WedgeCubic r(w.side());
    auto letter = [&](int i) { return w.side() == Side::A ? a(i) : b(i); };
    for (const auto& [t, c] : w.terms()) {
        HVector x = g.image(letter(t[0])), y = g.image(letter(t[1])), z = g.image(letter(t[2]));
        for (const auto& [lx, cx] : x.terms())
            for (const auto& [ly, cy] : y.terms())
                for (const auto& [lz, cz] : z.terms()) r.add({lx.index, ly.index, lz.index}, c * cx * cy * cz);
    }
    return r;
}

SymCubic gl_apply(const GLElement& g, const SymCubic& s) {
    SymCubic r;
    for (const auto& [t, c] : s.terms()) {
        HVector x = g.image(b(t[0])), y = g.image(b(t[1])), z = g.image(b(t[2]));
        for (const auto& [lx, cx] : x.terms())
            for (const auto& [ly, cy] : y.terms())
                for (const auto& [lz, cz] : z.terms()) r.add({lx.index, ly.index, lz.index}, c * cx * cy * cz);
    }
    return r;
}

TreeSum swap_ab(const TreeSum& s) {
    return substitute(s, [](BasisLabel x) { return HVector(swap_side(x)); });
}

TensorVec swap_ab(const TensorVec& v) {
    return map_tensor(v, [](BasisLabel x) { return HVector(swap_side(x)); });
}

WedgeCubic swap_ab(const WedgeCubic& w) {
    WedgeCubic r(w.side() == Side::A ? Side::B : Side::A);
    for (const auto& [t, c] : w.terms()) r.add(t, c);
    return r;
}

// ---------------------------------------------------------------- parsing

namespace {

struct Cursor {
    std::string_view s;
    std::size_t pos = 0;
    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(std::string_view tok) {
        skip_ws();
        if (s.substr(pos, tok.size()) == tok) {
            pos += tok.size();
            return true;
        }
        return false;
    }
    void expect(std::string_view tok) {
        if (!eat(tok)) throw ParseError("expected '" + std::string(tok) + "'", pos);
    }
    int integer() {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
            throw ParseError("expected integer", start);
        return std::stoi(std::string(s.substr(start, pos - start)));
    }
};

}  // namespace

GLElement parse_gl(std::string_view text, int genus) {
    Cursor c{text};
    GLElement g = GLElement::identity(genus);
    c.skip_ws();
    if (c.pos == text.size()) throw ParseError("empty GL expression", 0);
    while (true) {
        c.skip_ws();
        if (c.pos == text.size()) break;
        if (c.eat("perm")) {
            std::vector<std::vector<int>> cyc;
            while (c.eat("(")) {
                std::vector<int> cur;
                while (!c.eat(")")) {
                    cur.push_back(c.integer());
                    c.eat(",");
                }
                cyc.push_back(cur);
            }
            if (cyc.empty()) throw ParseError("perm needs at least one cycle", c.pos);
            g = GLElement::cycles(genus, cyc) * g;
        } else if (c.eat("transv")) {
            c.expect("(");
            int i = c.integer();
            c.expect("->");
            int j = c.integer();
            c.expect(",");
            int s = c.integer();
            c.expect(")");
            g = GLElement::transvection(genus, i, j, s) * g;
        } else {
            throw ParseError("expected perm(...) or transv(...)", c.pos);
        }
    }
    return g;
}

}  // namespace treelie
