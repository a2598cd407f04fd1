#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

namespace oracle {

using Dense = std::vector<std::vector<double>>;

std::vector<mpz_class> exact_iterate(const ExactMatrix& m, const std::vector<mpz_class>& v, std::uint64_t t) {
    const std::size_t n = m.size();
    std::vector<mpz_class> cur = v, next(n);
    for (std::uint64_t k = 0; k < t; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            next[i] = 0;
            for (std::size_t j = 0; j < n; ++j) next[i] += m(i, j) * cur[j];
        }
        std::swap(cur, next);
    }
    return cur;
}

Vec exact_normalized(const std::vector<mpz_class>& v) {
    mpz_class total = 0;
    for (const auto& x : v) total += x;
    Vec out;
    for (const auto& x : v) out.push_back(mpq_class(x, total).get_d());
    return out;
}

std::vector<mpz_class> unit(std::size_t n, std::size_t i) {
    std::vector<mpz_class> v(n, 0);
    v[i] = 1;
    return v;
}

namespace {

Eigen::MatrixXd to_eigen(const Dense& a) {
    Eigen::MatrixXd e(a.size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) e(i, j) = a[i][j];
    return e;
}

Vec normalize_ray(const Eigen::VectorXd& x) {
    Eigen::VectorXd y = x.sum() < 0 ? Eigen::VectorXd(-x) : x;
    const double scale = y.cwiseAbs().maxCoeff();
    if (scale == 0.0 || y.minCoeff() < -1e-9 * scale) return {};
    Vec out(y.size());
    double total = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) total += out[i] = std::max(0.0, y(i));
    for (auto& v : out) v /= total;
    return out;
}

void combinations(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                  std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        combinations(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

Dense dense(const ExactMatrix& m) {
    return m.to_double();
}

Dense submatrix(const Dense& a, const std::vector<std::size_t>& idx) {
    Dense out(idx.size(), std::vector<double>(idx.size()));
    for (std::size_t r = 0; r < idx.size(); ++r)
        for (std::size_t c = 0; c < idx.size(); ++c) out[r][c] = a[idx[r]][idx[c]];
    return out;
}

Vec real_eigenvalues(const Dense& a) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(to_eigen(a), false);
    Vec out;
    for (const auto& z : es.eigenvalues())
        if (std::abs(z.imag()) < 1e-9) out.push_back(z.real());
    std::sort(out.begin(), out.end());
    return out;
}

double spectral_radius(const Dense& a) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(to_eigen(a), false);
    double r = 0.0;
    for (const auto& z : es.eigenvalues()) r = std::max(r, std::abs(z));
    return r;
}

std::vector<Vec> nonnegative_eigen_rays(const Dense& a, double lambda) {
    const std::size_t n = a.size();
    Eigen::MatrixXd shifted = to_eigen(a) - lambda * Eigen::MatrixXd::Identity(n, n);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(shifted, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double thresh = 1e-8 * std::max(1.0, sv(0));
    std::vector<Eigen::Index> kernel_cols;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) <= thresh) kernel_cols.push_back(i);
    const std::size_t k = kernel_cols.size();
    if (k == 0) return {};
    Eigen::MatrixXd basis(n, k);
    for (std::size_t c = 0; c < k; ++c) basis.col(c) = svd.matrixV().col(kernel_cols[c]);

    std::vector<Vec> rays;
    auto add = [&](const Eigen::VectorXd& x) {
        auto r = normalize_ray(x);
        if (r.empty()) return;
        for (const auto& q : rays)
            if (l1_dist(q, r) < 1e-7) return;
        rays.push_back(std::move(r));
    };
    if (k == 1) {
        add(basis.col(0));
        return rays;
    }
    std::vector<std::vector<std::size_t>> faces;
    std::vector<std::size_t> cur;
    combinations(n, k - 1, 0, cur, faces);
    for (const auto& face : faces) {
        Eigen::MatrixXd rows(k - 1, k);
        for (std::size_t r = 0; r < face.size(); ++r) rows.row(r) = basis.row(face[r]);
        Eigen::JacobiSVD<Eigen::MatrixXd> fs(rows, Eigen::ComputeFullV);
        const auto& fsv = fs.singularValues();
        if (fsv.size() > 0 && fsv(fsv.size() - 1) < 1e-9) continue;  // face of dimension > 1
        add(basis * fs.matrixV().col(k - 1));
    }
    return rays;
}

Vec perron_vector(const Dense& a) {
    const std::size_t n = a.size();
    Vec v(n, 1.0 / n);
    for (int it = 0; it < 100000; ++it) {
        Vec w = mul(a, v);
        for (std::size_t i = 0; i < n; ++i) w[i] += v[i];
        const double s = l1(w);
        for (auto& x : w) x /= s;
        const double d = l1_dist(v, w);
        v = std::move(w);
        if (d < 1e-16) break;
    }
    return v;
}

Vec resolvent_series(const Dense& a, const Vec& u, double lambda, int terms) {
    Vec term = u, sum(u.size(), 0.0);
    for (int k = 0; k <= terms; ++k) {
        for (std::size_t i = 0; i < u.size(); ++i) sum[i] += term[i];
        term = mul(a, term);
        for (auto& x : term) x /= lambda;
    }
    for (auto& x : sum) x /= lambda;
    return sum;
}

Vec mul(const Dense& a, const Vec& v) {
    Vec out(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
    return out;
}

double l1(const Vec& v) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s;
}

double l1_dist(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return s;
}

double residual(const Dense& a, const Vec& v, double lambda) {
    const Vec mv = mul(a, v);
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += std::abs(mv[i] - lambda * v[i]);
    return s;
}

mpz_class max_entry_upto(const ExactMatrix& m, std::size_t t_max) {
    ExactMatrix p = m;
    mpz_class best = 0;
    for (std::size_t t = 1; t <= t_max; ++t) {
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = 0; j < m.size(); ++j) best = std::max(best, mpz_class(p(i, j)));
        p = p * m;
    }
    return best;
}

bool primitive_by_powers(const ExactMatrix& m) {
    const std::size_t n = m.size();
    const std::size_t bound = (n - 1) * (n - 1) + 1;
    ExactMatrix p = m;
    for (std::size_t t = 1; t <= bound; ++t) {
        bool positive = true;
        for (std::size_t i = 0; i < n && positive; ++i)
            for (std::size_t j = 0; j < n && positive; ++j) positive = sgn(p(i, j)) > 0;
        if (positive) return true;
        p = p * m;
    }
    return false;
}

std::vector<std::vector<bool>> reachability(const ExactMatrix& m) {
    const std::size_t n = m.size();
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r[j][i] = sgn(m(i, j)) > 0;  // edge j -> i
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (r[i][k] && r[k][j]) r[i][j] = true;
    return r;
}

namespace {

struct Summary {
    mpz_class count = 0;
    mpz_class length = 0;
    Word head;  // first min(len, n-1) letters
    Word tail;  // last min(len, n-1) letters
};

std::uint64_t occurrences(const Word& w, const Word& u) {
    return sliding_count(w, u);
}

Summary join(const Summary& a, const Summary& b, const Word& u) {
    const std::size_t keep = u.size() - 1;
    Summary out;
    Word seam = a.tail;
    seam.insert(seam.end(), b.head.begin(), b.head.end());
    out.count = a.count + b.count + occurrences(seam, u);
    out.length = a.length + b.length;
    Word head = a.head;
    head.insert(head.end(), b.head.begin(), b.head.end());
    if (head.size() > keep) head.resize(keep);
    out.head = std::move(head);
    Word tail = a.tail;
    tail.insert(tail.end(), b.tail.begin(), b.tail.end());
    if (tail.size() > keep) tail.erase(tail.begin(), tail.end() - static_cast<std::ptrdiff_t>(keep));
    out.tail = std::move(tail);
    return out;
}

std::vector<Summary> summaries(const Substitution& s, const Word& u, std::uint64_t t) {
    const std::size_t keep = u.size() - 1;
    std::vector<Summary> level(s.size());
    for (frobsub::Letter x = 0; x < s.size(); ++x) {
        level[x].count = (u.size() == 1 && u[0] == x) ? 1 : 0;
        level[x].length = 1;
        if (keep > 0) level[x].head = level[x].tail = Word{x};
    }
    for (std::uint64_t k = 0; k < t; ++k) {
        std::vector<Summary> next(s.size());
        for (frobsub::Letter x = 0; x < s.size(); ++x) {
            Summary acc;
            for (frobsub::Letter y : s.image(x)) acc = join(acc, level[y], u);
            next[x] = std::move(acc);
        }
        level = std::move(next);
    }
    return level;
}

}  // namespace

mpz_class count_in_iterate(const Substitution& s, frobsub::Letter a, const Word& u, std::uint64_t t) {
    return summaries(s, u, t)[a].count;
}

mpz_class length_of_iterate(const Substitution& s, frobsub::Letter a, std::uint64_t t) {
    return summaries(s, Word{0}, t)[a].length;
}

std::uint64_t sliding_count(const Word& w, const Word& u) {
    std::uint64_t c = 0;
    for (std::size_t p = 0; p + u.size() <= w.size(); ++p) {
        std::size_t k = 0;
        while (k < u.size() && w[p + k] == u[k]) ++k;
        if (k == u.size()) ++c;
    }
    return c;
}

std::vector<Word> all_words(std::size_t k, std::size_t n) {
    std::vector<Word> out{Word{}};
    for (std::size_t len = 0; len < n; ++len) {
        std::vector<Word> next;
        for (const auto& w : out)
            for (frobsub::Letter x = 0; x < k; ++x) {
                Word v = w;
                v.push_back(x);
                next.push_back(std::move(v));
            }
        out = std::move(next);
    }
    return out;
}

ExactMatrix random_matrix(std::mt19937_64& rng, std::size_t n, int max_entry, double zero_prob) {
    std::bernoulli_distribution zero(zero_prob);
    std::uniform_int_distribution<int> entry(1, max_entry);
    std::vector<std::vector<mpz_class>> rows(n, std::vector<mpz_class>(n, 0));
    for (auto& row : rows)
        for (auto& x : row)
            if (!zero(rng)) x = entry(rng);
    return ExactMatrix(std::move(rows));
}

std::vector<ExactMatrix> expanding_pb_corpus(std::uint64_t seed, std::size_t count, std::size_t max_n, int max_entry) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> dim(1, max_n);
    std::uniform_real_distribution<double> sparsity(0.3, 0.8);
    std::vector<ExactMatrix> out;
    while (out.size() < count) {
        auto m = random_matrix(rng, dim(rng), max_entry, sparsity(rng));
        if (frobsub::is_expanding(m) && frobsub::scc_blocks(m).is_pb_frobenius()) out.push_back(std::move(m));
    }
    return out;
}

Substitution random_substitution(std::mt19937_64& rng, std::size_t letters, std::size_t max_image) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < letters; ++i) names.emplace_back(1, static_cast<char>('a' + i));
    std::uniform_int_distribution<std::size_t> len(1, max_image);
    std::uniform_int_distribution<frobsub::Letter> letter(0, static_cast<frobsub::Letter>(letters - 1));
    std::vector<Word> images(letters);
    for (auto& img : images) {
        img.resize(len(rng));
        for (auto& x : img) x = letter(rng);
    }
    return Substitution(frobsub::Alphabet(names), std::move(images));
}

ExactMatrix worked_8x8() {
    return ExactMatrix{{3, 1, 0, 0, 0, 0, 0, 0}, {1, 1, 0, 0, 0, 0, 0, 0}, {1, 2, 2, 1, 0, 0, 0, 0},
                       {1, 1, 1, 1, 0, 0, 0, 0}, {4, 0, 0, 0, 3, 1, 0, 0}, {1, 1, 0, 0, 1, 1, 0, 0},
                       {0, 3, 1, 3, 2, 3, 2, 1}, {1, 1, 2, 1, 0, 4, 1, 1}};
}

ExactMatrix case3_fixture() {
    // A 2-cycle on {1,2}; 1 feeds 3 and 2 feeds 4, both growing with factor 3.
    return ExactMatrix{{0, 1, 0, 0}, {1, 0, 0, 0}, {1, 0, 3, 0}, {0, 1, 0, 3}};
}

Substitution subst(const std::vector<std::pair<std::string, std::string>>& rules) {
    return Substitution::from_strings(rules);
}

std::vector<std::pair<std::string, Substitution>> substitution_corpus() {
    std::vector<std::pair<std::string, Substitution>> c;
    c.emplace_back("fibonacci", subst({{"a", "ab"}, {"b", "a"}}));
    c.emplace_back("thue-morse", subst({{"a", "ab"}, {"b", "ba"}}));
    c.emplace_back("aab/bb", subst({{"a", "aab"}, {"b", "bb"}}));
    c.emplace_back("ab/bbb", subst({{"a", "ab"}, {"b", "bbb"}}));
    c.emplace_back("imprimitive", subst({{"a", "cd"}, {"b", "c"}, {"c", "ab"}, {"d", "a"}}));
    c.emplace_back("swap", subst({{"a", "bb"}, {"b", "aa"}}));
    c.emplace_back("period-doubling", subst({{"a", "ab"}, {"b", "aa"}}));
    c.emplace_back("tribonacci", subst({{"a", "ab"}, {"b", "ac"}, {"c", "a"}}));
    c.emplace_back("aaab/bb", subst({{"a", "aaab"}, {"b", "bb"}}));
    c.emplace_back("two-bottom", subst({{"a", "aaa"}, {"b", "bbb"}, {"c", "cab"}}));
    c.emplace_back("chain", subst({{"a", "abc"}, {"b", "bc"}, {"c", "cc"}}));
    {
        frobsub::Alphabet names({"x1", "x2"});
        c.emplace_back("fibonacci-named", Substitution(names, {names.parse("x1 x2"), names.parse("x1")}));
    }
    return c;
}

}  // namespace oracle
