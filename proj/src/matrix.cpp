#include "frobsub/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <string>

#include "frobsub/errors.hpp"

namespace frobsub {

namespace {

void require_non_negative(const BigInt& x) {
    if (sgn(x) < 0) throw InvalidArgument("negative entry " + x.get_str());
}

}  // namespace

// ---------------------------------------------------------------- ExactVector

ExactVector::ExactVector(std::size_t n) : coords_(n, BigInt(0)) {}

ExactVector::ExactVector(std::vector<BigInt> coords) : coords_(std::move(coords)) {
    for (const auto& c : coords_) require_non_negative(c);
}

ExactVector::ExactVector(std::initializer_list<long> coords) {
    coords_.reserve(coords.size());
    for (long c : coords) {
        coords_.emplace_back(c);
        require_non_negative(coords_.back());
    }
}

ExactVector ExactVector::unit(std::size_t n, std::size_t i) {
    if (i >= n) throw InvalidArgument("unit vector index out of range");
    ExactVector v(n);
    v.coords_[i] = 1;
    return v;
}

BigInt ExactVector::l1_norm() const {
    BigInt s = 0;
    for (const auto& c : coords_) s += c;
    return s;
}

bool ExactVector::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const BigInt& c) { return sgn(c) == 0; });
}

std::vector<double> ExactVector::normalized() const {
    std::vector<double> mant(coords_.size(), 0.0);
    std::vector<long> expo(coords_.size(), 0);
    long top = std::numeric_limits<long>::min();
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (sgn(coords_[i]) == 0) continue;
        mant[i] = mpz_get_d_2exp(&expo[i], coords_[i].get_mpz_t());
        top = std::max(top, expo[i]);
    }
    std::vector<double> out(coords_.size(), 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (mant[i] == 0.0) continue;
        out[i] = std::ldexp(mant[i], static_cast<int>(std::max(expo[i] - top, -2000L)));
        total += out[i];
    }
    if (total > 0.0)
        for (auto& x : out) x /= total;
    return out;
}

// ---------------------------------------------------------------- ExactMatrix

ExactMatrix::ExactMatrix(std::vector<std::vector<BigInt>> rows) : n_(rows.size()) {
    if (n_ == 0) throw InvalidArgument("matrix must have at least one row");
    entries_.reserve(n_ * n_);
    for (auto& row : rows) {
        if (row.size() != n_) throw DimensionMismatch("matrix is not square");
        for (auto& x : row) {
            require_non_negative(x);
            entries_.push_back(std::move(x));
        }
    }
}

ExactMatrix::ExactMatrix(std::initializer_list<std::initializer_list<long>> rows) : n_(rows.size()) {
    if (n_ == 0) throw InvalidArgument("matrix must have at least one row");
    entries_.reserve(n_ * n_);
    for (const auto& row : rows) {
        if (row.size() != n_) throw DimensionMismatch("matrix is not square");
        for (long x : row) {
            entries_.emplace_back(x);
            require_non_negative(entries_.back());
        }
    }
}

ExactMatrix ExactMatrix::identity(std::size_t n) {
    ExactMatrix m = zero(n);
    for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = 1;
    return m;
}

ExactMatrix ExactMatrix::zero(std::size_t n) {
    if (n == 0) throw InvalidArgument("matrix must have at least one row");
    ExactMatrix m;
    m.n_ = n;
    m.entries_.assign(n * n, BigInt(0));
    return m;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& rhs) const {
    if (rhs.n_ != n_) throw DimensionMismatch("matrix product of different sizes");
    ExactMatrix out = zero(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t k = 0; k < n_; ++k) {
            const BigInt& a = entries_[i * n_ + k];
            if (sgn(a) == 0) continue;
            for (std::size_t j = 0; j < n_; ++j) out.entries_[i * n_ + j] += a * rhs.entries_[k * n_ + j];
        }
    return out;
}

ExactVector ExactMatrix::operator*(const ExactVector& v) const {
    if (v.size() != n_) throw DimensionMismatch("matrix and vector sizes differ");
    std::vector<BigInt> out(n_, BigInt(0));
    for (std::size_t j = 0; j < n_; ++j) {
        if (sgn(v[j]) == 0) continue;
        for (std::size_t i = 0; i < n_; ++i) {
            const BigInt& a = entries_[i * n_ + j];
            if (sgn(a) != 0) out[i] += a * v[j];
        }
    }
    return ExactVector(std::move(out));
}

std::vector<double> ExactMatrix::apply(std::span<const double> v) const {
    if (v.size() != n_) throw DimensionMismatch("matrix and vector sizes differ");
    std::vector<double> out(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            if (sgn(entries_[i * n_ + j]) != 0) out[i] += entries_[i * n_ + j].get_d() * v[j];
    return out;
}

std::vector<long double> ExactMatrix::apply(std::span<const long double> v) const {
    if (v.size() != n_) throw DimensionMismatch("matrix and vector sizes differ");
    std::vector<long double> out(n_, 0.0L);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            if (sgn(entries_[i * n_ + j]) != 0)
                out[i] += static_cast<long double>(entries_[i * n_ + j].get_d()) * v[j];
    return out;
}

ExactMatrix ExactMatrix::power(std::uint64_t t) const {
    ExactMatrix result = identity(n_);
    ExactMatrix base = *this;
    while (t > 0) {
        if (t & 1U) result = result * base;
        t >>= 1U;
        if (t > 0) base = base * base;
    }
    return result;
}

ExactMatrix ExactMatrix::submatrix(std::span<const std::size_t> indices) const {
    ExactMatrix out = zero(indices.size());
    for (std::size_t p = 0; p < indices.size(); ++p)
        for (std::size_t q = 0; q < indices.size(); ++q)
            out.entries_[p * indices.size() + q] = (*this)(indices[p], indices[q]);
    return out;
}

ExactMatrix ExactMatrix::permuted(std::span<const std::size_t> perm) const {
    if (perm.size() != n_) throw DimensionMismatch("permutation has wrong length");
    return submatrix(perm);
}

std::vector<std::vector<double>> ExactMatrix::to_double() const {
    std::vector<std::vector<double>> out(n_, std::vector<double>(n_));
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) out[i][j] = entries_[i * n_ + j].get_d();
    return out;
}

std::vector<std::vector<BigInt>> ExactMatrix::rows() const {
    std::vector<std::vector<BigInt>> out(n_);
    for (std::size_t i = 0; i < n_; ++i)
        out[i].assign(entries_.begin() + static_cast<std::ptrdiff_t>(i * n_),
                      entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_));
    return out;
}

bool ExactMatrix::has_zero_column() const {
    for (std::size_t j = 0; j < n_; ++j) {
        bool zero = true;
        for (std::size_t i = 0; i < n_ && zero; ++i) zero = sgn(entries_[i * n_ + j]) == 0;
        if (zero) return true;
    }
    return false;
}

BigInt ExactMatrix::max_entry() const {
    BigInt best = 0;
    for (const auto& x : entries_)
        if (x > best) best = x;
    return best;
}

// --------------------------------------------------------- BlockDecomposition

const char* to_string(BlockClass c) {
    switch (c) {
        case BlockClass::Primitive: return "primitive";
        case BlockClass::PowerBounded: return "power-bounded";
        case BlockClass::ZeroOne: return "zero-one";
        case BlockClass::Imprimitive: return "imprimitive";
    }
    return "?";
}

BlockDecomposition::BlockDecomposition(std::vector<Block> blocks, std::vector<std::vector<char>> reach)
    : blocks_(std::move(blocks)), reach_(std::move(reach)) {
    std::size_t n = 0;
    for (const auto& b : blocks_) n += b.size();
    block_of_.assign(n, 0);
    for (std::size_t i = 0; i < blocks_.size(); ++i)
        for (std::size_t idx : blocks_[i].indices) {
            permutation_.push_back(idx);
            block_of_[idx] = i;
        }
}

std::vector<std::size_t> BlockDecomposition::dependency(std::size_t i) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < blocks_.size(); ++j)
        if (reaches(i, j)) out.push_back(j);
    return out;
}

std::vector<std::size_t> BlockDecomposition::dependency_indices(std::size_t i) const {
    std::vector<std::size_t> out;
    for (std::size_t j : dependency(i)) out.insert(out.end(), blocks_[j].indices.begin(), blocks_[j].indices.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> BlockDecomposition::order_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < blocks_.size(); ++i)
        for (std::size_t j = 0; j < blocks_.size(); ++j)
            if (reaches(i, j)) out.emplace_back(i, j);
    return out;
}

bool BlockDecomposition::is_invariant(std::span<const std::size_t> cone_blocks) const {
    std::vector<char> member(blocks_.size(), 0);
    for (std::size_t b : cone_blocks) {
        if (b >= blocks_.size()) throw InvalidArgument("block index out of range");
        member[b] = 1;
    }
    for (std::size_t b : cone_blocks)
        for (std::size_t j = 0; j < blocks_.size(); ++j)
            if (reaches(b, j) && !member[j]) return false;
    return true;
}

bool BlockDecomposition::is_zero_block(std::size_t i) const {
    return blocks_[i].period == 0;
}

bool BlockDecomposition::is_growing(std::size_t i) const {
    const auto c = blocks_[i].cls;
    return c == BlockClass::Primitive || c == BlockClass::Imprimitive;
}

bool BlockDecomposition::is_pb_frobenius() const {
    return std::none_of(blocks_.begin(), blocks_.end(),
                        [](const Block& b) { return b.cls == BlockClass::Imprimitive; });
}

bool BlockDecomposition::is_primitive_frobenius() const {
    return std::all_of(blocks_.begin(), blocks_.end(), [](const Block& b) {
        return b.cls == BlockClass::Primitive || b.cls == BlockClass::ZeroOne;
    });
}

// ------------------------------------------------------------- graph routines

namespace {

// Tarjan's algorithm on the flow digraph (edge j -> i when m(i, j) > 0).
std::vector<std::vector<std::size_t>> strong_components(const ExactMatrix& m) {
    const std::size_t n = m.size();
    std::vector<std::vector<std::size_t>> out_edges(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (m.positive(i, j)) out_edges[j].push_back(i);

    constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, kUnseen), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> comps;
    std::size_t counter = 0;

    // Iterative DFS; frames hold (vertex, next edge position).
    std::vector<std::pair<std::size_t, std::size_t>> frames;
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != kUnseen) continue;
        frames.emplace_back(root, 0);
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!frames.empty()) {
            auto& [v, pos] = frames.back();
            if (pos < out_edges[v].size()) {
                const std::size_t w = out_edges[v][pos++];
                if (index[w] == kUnseen) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    frames.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            const std::size_t done = v;
            frames.pop_back();
            if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
            if (low[done] == index[done]) {
                std::vector<std::size_t> comp;
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp.push_back(w);
                } while (w != done);
                std::sort(comp.begin(), comp.end());
                comps.push_back(std::move(comp));
            }
        }
    }
    return comps;
}

// gcd of cycle lengths via BFS levels; 0 when the component has no edge.
std::size_t component_period(const ExactMatrix& m, const std::vector<std::size_t>& comp) {
    const std::size_t s = comp.size();
    std::vector<long> level(s, -1);
    level[0] = 0;
    std::queue<std::size_t> q;
    q.push(0);
    while (!q.empty()) {
        const std::size_t a = q.front();
        q.pop();
        for (std::size_t b = 0; b < s; ++b)
            if (m.positive(comp[b], comp[a]) && level[b] < 0) {
                level[b] = level[a] + 1;
                q.push(b);
            }
    }
    std::size_t g = 0;
    for (std::size_t a = 0; a < s; ++a)
        for (std::size_t b = 0; b < s; ++b)
            if (m.positive(comp[b], comp[a])) {
                const long diff = level[a] + 1 - level[b];
                g = std::gcd(g, static_cast<std::size_t>(diff < 0 ? -diff : diff));
            }
    return g;
}

// A strongly connected block has spectral radius 1 exactly when it is a
// single cycle of entry-1 edges.
bool is_unit_cycle(const ExactMatrix& m, const std::vector<std::size_t>& comp) {
    std::size_t edges = 0;
    for (std::size_t a : comp)
        for (std::size_t b : comp) {
            if (!m.positive(b, a)) continue;
            if (m(b, a) != 1) return false;
            ++edges;
        }
    return edges == comp.size();
}

BlockClass classify(const ExactMatrix& m, const std::vector<std::size_t>& comp, std::size_t period) {
    if (comp.size() == 1 && m(comp[0], comp[0]) <= 1) return BlockClass::ZeroOne;
    if (is_unit_cycle(m, comp)) return BlockClass::PowerBounded;
    return period == 1 ? BlockClass::Primitive : BlockClass::Imprimitive;
}

}  // namespace

BlockDecomposition scc_blocks(const ExactMatrix& m) {
    auto comps = strong_components(m);
    const std::size_t k = comps.size();
    const std::size_t n = m.size();

    std::vector<std::size_t> comp_of(n);
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t v : comps[c]) comp_of[v] = c;

    std::vector<std::vector<char>> edge(k, std::vector<char>(k, 0));
    std::vector<std::size_t> indegree(k, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t from = comp_of[j], to = comp_of[i];
            if (from != to && m.positive(i, j) && !edge[from][to]) {
                edge[from][to] = 1;
                ++indegree[to];
            }
        }

    // Kahn's algorithm; ties broken by smallest original index.
    using Key = std::pair<std::size_t, std::size_t>;  // (min index, component)
    std::priority_queue<Key, std::vector<Key>, std::greater<>> ready;
    for (std::size_t c = 0; c < k; ++c)
        if (indegree[c] == 0) ready.emplace(comps[c].front(), c);
    std::vector<std::size_t> order;
    while (!ready.empty()) {
        const std::size_t c = ready.top().second;
        ready.pop();
        order.push_back(c);
        for (std::size_t d = 0; d < k; ++d)
            if (edge[c][d] && --indegree[d] == 0) ready.emplace(comps[d].front(), d);
    }

    std::vector<std::size_t> position(k);
    for (std::size_t p = 0; p < k; ++p) position[order[p]] = p;

    std::vector<Block> blocks(k);
    for (std::size_t p = 0; p < k; ++p) {
        auto& comp = comps[order[p]];
        blocks[p].period = component_period(m, comp);
        blocks[p].cls = classify(m, comp, blocks[p].period);
        blocks[p].indices = std::move(comp);
    }

    // Transitive closure, processed bottom-up in topological order.
    std::vector<std::vector<char>> reach(k, std::vector<char>(k, 0));
    for (std::size_t p = k; p-- > 0;)
        for (std::size_t d = 0; d < k; ++d)
            if (edge[order[p]][d]) {
                const std::size_t q = position[d];
                reach[p][q] = 1;
                for (std::size_t r = 0; r < k; ++r)
                    if (reach[q][r]) reach[p][r] = 1;
            }

    return BlockDecomposition(std::move(blocks), std::move(reach));
}

bool is_primitive(const ExactMatrix& m) {
    const auto dec = scc_blocks(m);
    if (dec.block_count() != 1) return false;
    const auto& b = dec.block(0);
    return b.period == 1;
}

bool is_power_bounded(const ExactMatrix& m) {
    const auto dec = scc_blocks(m);
    const std::size_t k = dec.block_count();
    std::vector<char> unit(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
        if (dec.is_growing(i)) return false;
        unit[i] = dec.is_zero_block(i) ? 0 : 1;
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (unit[i] && unit[j] && dec.reaches(i, j)) return false;
    return true;
}

bool is_expanding(const ExactMatrix& m) {
    // Every index must reach a growing block; equivalently every sink block grows.
    const auto dec = scc_blocks(m);
    for (std::size_t i = 0; i < dec.block_count(); ++i) {
        if (dec.is_growing(i)) continue;
        bool found = false;
        for (std::size_t j = 0; j < dec.block_count() && !found; ++j) found = dec.reaches(i, j) && dec.is_growing(j);
        if (!found) return false;
    }
    return true;
}

namespace {

FrobeniusPower raise(const ExactMatrix& m, std::uint64_t exponent) {
    FrobeniusPower out;
    out.exponent = exponent;
    out.power = exponent == 1 ? m : m.power(exponent);
    out.decomposition = scc_blocks(out.power);
    return out;
}

}  // namespace

FrobeniusPower pb_frobenius_power(const ExactMatrix& m) {
    const auto dec = scc_blocks(m);
    std::uint64_t e = 1;
    for (const auto& b : dec.blocks())
        if (b.cls == BlockClass::Imprimitive) e = std::lcm(e, static_cast<std::uint64_t>(b.period));
    return raise(m, e);
}

FrobeniusPower primitive_frobenius_power(const ExactMatrix& m) {
    const auto dec = scc_blocks(m);
    std::uint64_t e = 1;
    for (const auto& b : dec.blocks())
        if (b.period > 0) e = std::lcm(e, static_cast<std::uint64_t>(b.period));
    return raise(m, e);
}

ExactVector mat_pow_apply(const ExactMatrix& m, const ExactVector& v, std::uint64_t t) {
    if (v.size() != m.size()) throw DimensionMismatch("matrix and vector sizes differ");
    ExactVector w = v;
    for (std::uint64_t s = 0; s < t; ++s) w = m * w;
    return w;
}

}  // namespace frobsub
