#include "treelie/lattice.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include <Eigen/Core>

#include "treelie/eigen_scalars.hpp"
#include "treelie/errors.hpp"

namespace treelie {

SparseVector to_sparse(const TensorVec& v) {
    SparseVector r;
    r.reserve(v.size());
    for (const auto& [k, c] : v.terms()) r.emplace_back(k, c);
    return r;
}

TensorVec to_tensor(const SparseVector& v, int arity) {
    TensorVec r(arity);
    for (const auto& [k, c] : v) r.add(k, c);
    return r;
}

namespace {

template <class S>
using SVec = std::vector<std::pair<std::uint64_t, S>>;

template <class S>
SVec<S> convert_in(const SparseVector& v) {
    SVec<S> r;
    r.reserve(v.size());
    for (const auto& [k, c] : v) r.emplace_back(k, from_integer<S>(c));
    return r;
}

template <class S>
SparseVector convert_out(const SVec<S>& v) {
    SparseVector r;
    r.reserve(v.size());
    for (const auto& [k, c] : v) r.emplace_back(k, to_integer(c));
    return r;
}

// x*u + y*w
template <class S>
SVec<S> lincomb(const S& x, const SVec<S>& u, const S& y, const SVec<S>& w) {
    SVec<S> r;
    r.reserve(u.size() + w.size());
    std::size_t i = 0, j = 0;
    while (i < u.size() || j < w.size()) {
        if (j == w.size() || (i < u.size() && u[i].first < w[j].first)) {
            S c = x * u[i].second;
            if (c != S(0)) r.emplace_back(u[i].first, c);
            ++i;
        } else if (i == u.size() || w[j].first < u[i].first) {
            S c = y * w[j].second;
            if (c != S(0)) r.emplace_back(w[j].first, c);
            ++j;
        } else {
            S c = x * u[i].second + y * w[j].second;
            if (c != S(0)) r.emplace_back(u[i].first, c);
            ++i;
            ++j;
        }
    }
    return r;
}

// u - q*w, the common case
template <class S>
SVec<S> sub_multiple(const SVec<S>& u, const S& q, const SVec<S>& w) {
    return lincomb(S(1), u, -q, w);
}

template <class S>
struct Echelon {
    std::vector<SVec<S>> rows;  // insertion slots
    std::unordered_map<std::uint64_t, std::size_t> pivot;
    std::vector<std::int64_t> origin;
    std::set<std::int64_t> log;

    // Reduces v into the echelon. Each step builds its results before
    // assigning, so an OverflowError leaves (rows, v) spanning the right lattice.
    bool insert(SVec<S>& v, std::int64_t gen, bool& changed) {
        while (!v.empty()) {
            auto it = pivot.find(v.front().first);
            if (it == pivot.end()) {
                if (v.front().second < S(0))
                    for (auto& e : v) e.second = -e.second;
                pivot.emplace(v.front().first, rows.size());
                rows.push_back(std::move(v));
                origin.push_back(gen);
                v.clear();
                log.insert(gen);
                changed = true;
                return true;
            }
            SVec<S>& r = rows[it->second];
            const S a = r.front().second, b = v.front().second;
            if (b % a == S(0)) {
                SVec<S> nv = sub_multiple(v, S(b / a), r);
                v = std::move(nv);
            } else {
                auto [g, s, t] = xgcd(a, b);
                SVec<S> nr = lincomb(s, r, t, v);
                SVec<S> nv = lincomb(S(a / g), v, S(-(b / g)), r);
                r = std::move(nr);
                v = std::move(nv);
                changed = true;
                log.insert(gen);
            }
        }
        return changed;
    }

    std::optional<std::vector<std::pair<std::size_t, S>>> reduce(SVec<S> v) const {
        std::vector<std::pair<std::size_t, S>> w;
        while (!v.empty()) {
            auto it = pivot.find(v.front().first);
            if (it == pivot.end()) return std::nullopt;
            const SVec<S>& r = rows[it->second];
            const S a = r.front().second, b = v.front().second;
            if (b % a != S(0)) return std::nullopt;
            S q = b / a;
            v = sub_multiple(v, q, r);
            w.emplace_back(it->second, q);
        }
        return w;
    }
};

template <class To, class From>
Echelon<To> convert_echelon(const Echelon<From>& e) {
    Echelon<To> r;
    r.rows.reserve(e.rows.size());
    for (const auto& row : e.rows) {
        SVec<To> x;
        x.reserve(row.size());
        for (const auto& [k, c] : row) x.emplace_back(k, To(to_integer(c)));
        r.rows.push_back(std::move(x));
    }
    r.pivot = e.pivot;
    r.origin = e.origin;
    r.log = e.log;
    return r;
}

void put_u32(std::string& out, std::uint32_t x) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((x >> (8 * i)) & 0xff));
}
void put_u64(std::string& out, std::uint64_t x) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((x >> (8 * i)) & 0xff));
}

struct Reader {
    const std::string& s;
    std::size_t pos = 0;
    std::uint64_t get(int bytes) {
        if (pos + bytes > s.size()) throw ArgumentError("truncated lattice data");
        std::uint64_t x = 0;
        for (int i = 0; i < bytes; ++i) x |= static_cast<std::uint64_t>(static_cast<unsigned char>(s[pos + i])) << (8 * i);
        pos += bytes;
        return x;
    }
};

void put_integer(std::string& out, const Integer& c) {
    out.push_back(c < 0 ? 1 : 0);
    std::vector<unsigned char> mag;
    Integer m = c < 0 ? Integer(-c) : c;
    export_bits(m, std::back_inserter(mag), 8, false);
    put_u32(out, static_cast<std::uint32_t>(mag.size()));
    out.append(mag.begin(), mag.end());
}

Integer get_integer(Reader& r) {
    bool neg = r.get(1) != 0;
    std::uint32_t n = static_cast<std::uint32_t>(r.get(4));
    if (r.pos + n > r.s.size()) throw ArgumentError("truncated lattice data");
    Integer c;
    import_bits(c, r.s.begin() + r.pos, r.s.begin() + r.pos + n, 8, false);
    r.pos += n;
    return neg ? Integer(-c) : c;
}

}  // namespace

struct Lattice::Impl {
    std::optional<Echelon<Checked64>> small{Echelon<Checked64>{}};
    std::optional<Echelon<BigInt>> large;

    void promote() {
        if (large) return;
        large = convert_echelon<BigInt>(*small);
        small.reset();
    }

    template <class F>
    auto visit(F f) const {
        return small ? f(*small) : f(*large);
    }
};

Lattice::Lattice(int arity) : arity_(arity), impl_(std::make_unique<Impl>()) {
    if (arity < 0 || arity > kMaxArity) throw ArgumentError("lattice arity out of range");
}
Lattice::Lattice(const Lattice& o) : arity_(o.arity_), impl_(std::make_unique<Impl>(*o.impl_)) {}
Lattice::Lattice(Lattice&&) noexcept = default;
Lattice& Lattice::operator=(const Lattice& o) {
    if (this != &o) {
        arity_ = o.arity_;
        impl_ = std::make_unique<Impl>(*o.impl_);
    }
    return *this;
}
Lattice& Lattice::operator=(Lattice&&) noexcept = default;
Lattice::~Lattice() = default;

std::size_t Lattice::rank() const {
    return impl_->visit([](const auto& e) { return e.rows.size(); });
}

bool Lattice::big() const { return !impl_->small; }

bool Lattice::insert(const TensorVec& v, std::int64_t gen_id) {
    if (arity_ != 0 && !v.is_zero() && v.arity() != arity_) throw ArgumentError("arity mismatch in lattice insert");
    return insert(to_sparse(v), gen_id);
}

bool Lattice::insert(const SparseVector& v, std::int64_t gen_id) {
    if (impl_->small) {
        SVec<Checked64> x;
        try {
            x = convert_in<Checked64>(v);
        } catch (const OverflowError&) {
            impl_->promote();
            bool changed = false;
            SVec<BigInt> y = convert_in<BigInt>(v);
            impl_->large->insert(y, gen_id, changed);
            return changed;
        }
        bool changed = false;
        try {
            impl_->small->insert(x, gen_id, changed);
            return changed;
        } catch (const OverflowError&) {
        }
        impl_->promote();
        SVec<BigInt> y;
        for (const auto& [k, c] : x) y.emplace_back(k, BigInt(c));
        impl_->large->insert(y, gen_id, changed);
        return changed;
    }
    bool changed = false;
    SVec<BigInt> y = convert_in<BigInt>(v);
    impl_->large->insert(y, gen_id, changed);
    return changed;
}

std::optional<std::vector<Integer>> Lattice::member(const TensorVec& v) const {
    if (arity_ != 0 && !v.is_zero() && v.arity() != arity_) throw ArgumentError("arity mismatch in membership");
    return member(to_sparse(v));
}

namespace {

template <class S>
std::vector<std::size_t> slot_order(const Echelon<S>& e) {
    std::vector<std::size_t> order(e.rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return e.rows[x].front().first < e.rows[y].front().first; });
    return order;
}

template <class S>
std::optional<std::vector<Integer>> member_in(const Echelon<S>& e, const SparseVector& v) {
    auto w = e.reduce(convert_in<S>(v));
    if (!w) return std::nullopt;
    std::vector<std::size_t> order = slot_order(e);
    std::vector<std::size_t> position(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
    std::vector<Integer> out(order.size());
    for (const auto& [slot, q] : *w) out[position[slot]] += to_integer(q);
    return out;
}

}  // namespace

std::optional<std::vector<Integer>> Lattice::member(const SparseVector& v) const {
    if (impl_->small) {
        try {
            return member_in(*impl_->small, v);
        } catch (const OverflowError&) {
            return member_in(convert_echelon<BigInt>(*impl_->small), v);
        }
    }
    return member_in(*impl_->large, v);
}

bool Lattice::contains(const Lattice& other) const {
    if (arity_ != other.arity_) throw ArgumentError("arity mismatch in lattice comparison");
    for (const auto& row : other.basis())
        if (!member(row)) return false;
    return true;
}

std::vector<SparseVector> Lattice::basis() const {
    return impl_->visit([](const auto& e) {
        std::vector<SparseVector> out;
        for (std::size_t s : slot_order(e)) out.push_back(convert_out(e.rows[s]));
        return out;
    });
}

std::vector<std::uint64_t> Lattice::pivots() const {
    std::vector<std::uint64_t> out;
    for (const auto& row : basis()) out.push_back(row.front().first);
    return out;
}

namespace {

Integer coeff_at(const SparseVector& v, std::uint64_t key) {
    auto it = std::lower_bound(v.begin(), v.end(), key, [](const auto& e, std::uint64_t k) { return e.first < k; });
    return it != v.end() && it->first == key ? it->second : Integer(0);
}

SparseVector sub_multiple_int(const SparseVector& u, const Integer& q, const SparseVector& w) {
    SVec<BigInt> a = convert_in<BigInt>(u), b = convert_in<BigInt>(w);
    return convert_out(sub_multiple(a, BigInt(q), b));
}

}  // namespace

std::vector<SparseVector> Lattice::hnf() const {
    std::vector<SparseVector> rows = basis();
    for (std::size_t j = 0; j < rows.size(); ++j) {
        const std::uint64_t p = rows[j].front().first;
        const Integer a = rows[j].front().second;
        for (std::size_t i = 0; i < j; ++i) {
            Integer c = coeff_at(rows[i], p);
            if (c == 0) continue;
            Integer q = floor_div(c, a);
            if (q != 0) rows[i] = sub_multiple_int(rows[i], q, rows[j]);
        }
    }
    return rows;
}

std::string Lattice::digest() const {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](const std::string& s) {
        for (unsigned char ch : s) {
            h ^= ch;
            h *= 1099511628211ULL;
        }
    };
    mix(std::to_string(arity_) + ";");
    for (const auto& row : hnf()) {
        for (const auto& [k, c] : row) mix(std::to_string(k) + ":" + c.str() + ",");
        mix(";");
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[i] = hex[h & 0xf];
    return out;
}

std::vector<std::int64_t> Lattice::generating_subset() const {
    return impl_->visit([](const auto& e) {
        std::vector<std::int64_t> out(e.log.begin(), e.log.end());
        return out;
    });
}

std::vector<std::int64_t> Lattice::row_origins() const {
    return impl_->visit([](const auto& e) {
        std::vector<std::int64_t> out;
        for (std::size_t s : slot_order(e)) out.push_back(e.origin[s]);
        return out;
    });
}

std::string Lattice::serialize() const {
    std::string out;
    std::vector<SparseVector> rows = basis();
    put_u32(out, static_cast<std::uint32_t>(arity_));
    put_u64(out, rows.size());
    std::uint64_t triples = 0;
    for (const auto& r : rows) triples += r.size();
    put_u64(out, triples);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& [k, c] : rows[i]) {
            put_u64(out, i);
            put_u64(out, k);
            put_integer(out, c);
        }
    return out;
}

Lattice Lattice::deserialize(const std::string& bytes) {
    Reader r{bytes};
    int arity = static_cast<int>(r.get(4));
    std::uint64_t count = r.get(8), triples = r.get(8);
    std::vector<SparseVector> rows(count);
    for (std::uint64_t t = 0; t < triples; ++t) {
        std::uint64_t row = r.get(8), col = r.get(8);
        if (row >= count) throw ArgumentError("bad row index in lattice data");
        rows[row].emplace_back(col, get_integer(r));
    }
    if (r.pos != bytes.size()) throw ArgumentError("trailing bytes in lattice data");
    Lattice l(arity);
    for (std::uint64_t i = 0; i < count; ++i) {
        std::sort(rows[i].begin(), rows[i].end());
        l.insert(rows[i], static_cast<std::int64_t>(i));
    }
    if (l.rank() != count) throw ArgumentError("lattice data is not a basis");
    return l;
}

Lattice span(const std::vector<TensorVec>& generators) {
    int arity = 0;
    for (const auto& g : generators) {
        if (g.is_zero()) continue;
        if (arity == 0) arity = g.arity();
        else if (g.arity() != arity) throw ArgumentError("generators of different arity");
    }
    Lattice l(arity);
    for (std::size_t i = 0; i < generators.size(); ++i) l.insert(generators[i], static_cast<std::int64_t>(i));
    return l;
}

bool lattice_equal(const Lattice& x, const Lattice& y) {
    if (x.arity() != y.arity() && x.rank() + y.rank() > 0) throw ArgumentError("arity mismatch in lattice comparison");
    if (x.rank() != y.rank()) return false;
    return x.contains(y) && y.contains(x);
}

std::vector<SparseVector> integer_kernel(const std::vector<SparseVector>& images) {
    constexpr std::uint64_t tag = 1ULL << 62;
    Lattice l(0);
    for (std::size_t i = 0; i < images.size(); ++i) {
        SparseVector v = images[i];
        if (!v.empty() && v.back().first >= tag) throw ArgumentError("image coordinate too large for kernel");
        v.emplace_back(tag + i, 1);
        l.insert(v, static_cast<std::int64_t>(i));
    }
    std::vector<SparseVector> out;
    for (const auto& row : l.basis()) {
        if (row.front().first < tag) continue;
        SparseVector k;
        for (const auto& [c, x] : row) k.emplace_back(c - tag, x);
        out.push_back(std::move(k));
    }
    return out;
}

SparseVector combine(const std::vector<SparseVector>& rows, const SparseVector& coords) {
    std::map<std::uint64_t, Integer> acc;
    for (const auto& [i, c] : coords) {
        if (i >= rows.size()) throw ArgumentError("coordinate outside basis");
        for (const auto& [k, x] : rows[i]) acc[k] += c * x;
    }
    SparseVector out;
    for (auto& [k, x] : acc)
        if (x != 0) out.emplace_back(k, std::move(x));
    return out;
}

// ---------------------------------------------------------------- Smith form

namespace {

template <class S>
using Dense = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

template <class S>
std::vector<Integer> smith_dense(Dense<S> m) {
    const Eigen::Index R = m.rows(), C = m.cols();
    std::vector<Integer> out;
    for (Eigen::Index t = 0; t < std::min(R, C); ++t) {
        // smallest nonzero in the trailing block
        Eigen::Index br = -1, bc = -1;
        for (Eigen::Index r = t; r < R; ++r)
            for (Eigen::Index c = t; c < C; ++c)
                if (m(r, c) != S(0) && (br < 0 || abs_value(m(r, c)) < abs_value(m(br, bc)))) br = r, bc = c;
        if (br < 0) break;
        m.row(t).swap(m.row(br));
        m.col(t).swap(m.col(bc));
        while (true) {
            bool clean = true;
            for (Eigen::Index r = t + 1; r < R; ++r) {
                if (m(r, t) == S(0)) continue;
                S q = m(r, t) / m(t, t);
                if (q != S(0)) m.row(r) -= q * m.row(t);
                if (m(r, t) != S(0)) clean = false;
            }
            for (Eigen::Index c = t + 1; c < C; ++c) {
                if (m(t, c) == S(0)) continue;
                S q = m(t, c) / m(t, t);
                if (q != S(0)) m.col(c) -= q * m.col(t);
                if (m(t, c) != S(0)) clean = false;
            }
            if (!clean) {
                Eigen::Index pr = t, pc = t;
                for (Eigen::Index r = t + 1; r < R; ++r)
                    if (m(r, t) != S(0) && abs_value(m(r, t)) < abs_value(m(pr, pc))) pr = r, pc = t;
                for (Eigen::Index c = t + 1; c < C; ++c)
                    if (m(t, c) != S(0) && abs_value(m(t, c)) < abs_value(m(pr, pc))) pr = t, pc = c;
                m.row(t).swap(m.row(pr));
                m.col(t).swap(m.col(pc));
                continue;
            }
            // divisibility of the trailing block
            Eigen::Index bad = -1;
            for (Eigen::Index r = t + 1; r < R && bad < 0; ++r)
                for (Eigen::Index c = t + 1; c < C; ++c)
                    if (m(r, c) % m(t, t) != S(0)) {
                        bad = r;
                        break;
                    }
            if (bad < 0) break;
            m.row(t) += m.row(bad);
        }
        out.push_back(to_integer(abs_value(m(t, t))));
    }
    return out;
}

template <class S>
Dense<S> to_dense(const std::vector<std::vector<Integer>>& rows) {
    const Eigen::Index R = static_cast<Eigen::Index>(rows.size());
    const Eigen::Index C = R ? static_cast<Eigen::Index>(rows[0].size()) : 0;
    Dense<S> m(R, C);
    for (Eigen::Index r = 0; r < R; ++r) {
        if (static_cast<Eigen::Index>(rows[r].size()) != C) throw ArgumentError("ragged matrix");
        for (Eigen::Index c = 0; c < C; ++c) m(r, c) = S(rows[r][c]);
    }
    return m;
}

}  // namespace

std::vector<Integer> smith_invariants(const std::vector<std::vector<Integer>>& rows) {
    try {
        return smith_dense(to_dense<Checked64>(rows));
    } catch (const OverflowError&) {
        return smith_dense(to_dense<BigInt>(rows));
    }
}

QuotientPresentation quotient(std::int64_t ambient, const std::vector<SparseVector>& relations) {
    Lattice l(0);
    for (const auto& r : relations) {
        if (!r.empty() && r.back().first >= static_cast<std::uint64_t>(ambient))
            throw ArgumentError("relation coordinate outside ambient");
        l.insert(r);
    }
    std::vector<SparseVector> rows = l.basis();
    // dense matrix on the columns actually used
    std::map<std::uint64_t, std::size_t> col;
    for (const auto& r : rows)
        for (const auto& [k, c] : r) col.emplace(k, 0);
    std::size_t n = 0;
    for (auto& [k, i] : col) i = n++;
    std::vector<std::vector<Integer>> dense(rows.size(), std::vector<Integer>(n));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& [k, c] : rows[i]) dense[i][col[k]] = c;
    QuotientPresentation q;
    q.rank = ambient - static_cast<std::int64_t>(rows.size());
    for (const auto& d : smith_invariants(dense))
        if (d > 1) q.torsion.push_back(d);
    return q;
}

std::vector<GLElement> coinvariant_generators(int genus) {
    std::vector<GLElement> gens;
    for (int i = 1; i <= genus; ++i)
        for (int j = 1; j <= genus; ++j)
            if (i != j)
                for (int s : {1, -1}) gens.push_back(GLElement::transvection(genus, i, j, s));
    for (int i = 1; i < genus; ++i) gens.push_back(GLElement::cycles(genus, {{i, i + 1}}));
    return gens;
}

std::int64_t coinvariant_ambient(int n, int genus) {
    std::int64_t d = 1;
    for (int i = 0; i < n; ++i) {
        d *= 2 * genus;
        if (d > (std::int64_t(1) << 40)) return d;
    }
    return d;
}

std::uint64_t coinvariant_index(const std::vector<BasisLabel>& tuple, int genus) {
    std::uint64_t idx = 0;
    for (BasisLabel x : tuple) {
        if (x.index < 1 || x.index > genus) throw ConfigError("label outside genus");
        idx = idx * (2 * genus) + (x.side == Side::A ? x.index - 1 : genus + x.index - 1);
    }
    return idx;
}

std::vector<SparseVector> coinvariant_relations(int n, int genus, std::int64_t max_ambient) {
    if (n < 0 || genus < 1) throw ConfigError("coinvariants need n >= 0 and genus >= 1");
    if (n == 0) return {};
    if (n > kMaxArity) throw BudgetExceeded("tensor power above supported arity");
    const std::int64_t dim = coinvariant_ambient(n, genus);
    if (dim > max_ambient)
        throw BudgetExceeded("ambient dimension " + std::to_string(dim) + " exceeds budget " + std::to_string(max_ambient));
    std::vector<BasisLabel> letters;
    for (int i = 1; i <= genus; ++i) letters.push_back(a(i));
    for (int i = 1; i <= genus; ++i) letters.push_back(b(i));
    std::vector<SparseVector> out;
    for (const GLElement& g : coinvariant_generators(genus)) {
        for (std::int64_t e = 0; e < dim; ++e) {
            std::vector<BasisLabel> tuple(n);
            std::int64_t x = e;
            for (int s = n - 1; s >= 0; --s, x /= 2 * genus) tuple[s] = letters[x % (2 * genus)];
            TensorVec v(n);
            v.add(tuple, 1);
            TensorVec d = gl_apply(g, v) - v;
            std::map<std::uint64_t, Integer> acc;
            for (const auto& [k, c] : d.terms()) acc[coinvariant_index(unpack(k, n), genus)] += c;
            SparseVector r;
            for (auto& [k, c] : acc)
                if (c != 0) r.emplace_back(k, c);
            out.push_back(std::move(r));
        }
    }
    return out;
}

}  // namespace treelie
