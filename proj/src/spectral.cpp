#include "frobsub/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace frobsub {

double l1_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s;
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DimensionMismatch("vectors of different length");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return s;
}

FloatVector l1_normalized(std::span<const double> v) {
    const double n = l1_norm(v);
    if (n == 0.0) throw InvalidArgument("cannot normalize the zero vector");
    FloatVector out(v.begin(), v.end());
    for (auto& x : out) x /= n;
    return out;
}

double eigen_residual(const ExactMatrix& m, std::span<const double> v, double lambda) {
    const auto mv = m.apply(v);
    double r = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) r += std::abs(mv[i] - lambda * v[i]);
    return r;
}

bool same_eigenvalue(double a, double b) {
    return std::abs(a - b) <= kEigenvalueTol * std::max({1.0, std::abs(a), std::abs(b)});
}

int compare(const GrowthType& a, const GrowthType& b) {
    if (!same_eigenvalue(a.lambda, b.lambda)) return a.lambda < b.lambda ? -1 : 1;
    if (a.degree != b.degree) return a.degree < b.degree ? -1 : 1;
    return 0;
}

// ------------------------------------------------------------ PF eigenpairs

BlockEigen pf_eigen_block(const ExactMatrix& m, const BlockDecomposition& dec, std::size_t i) {
    if (i >= dec.block_count()) throw InvalidArgument("block index out of range");
    const Block& b = dec.block(i);
    BlockEigen out;
    out.extended.assign(m.size(), 0.0);

    if (b.cls == BlockClass::ZeroOne) {
        out.lambda = m(b.indices[0], b.indices[0]).get_d();
        out.local = {1.0};
        out.extended[b.indices[0]] = 1.0;
        return out;
    }
    if (b.cls != BlockClass::Primitive)
        throw InvalidArgument(std::string("PF eigenpair needs a primitive or zero-one block, got ") + to_string(b.cls));

    // Power iteration on A + I (same eigenvectors, unique dominant modulus),
    // stopped by the Collatz-Wielandt bracket.
    const std::size_t s = b.size();
    std::vector<std::vector<long double>> a(s, std::vector<long double>(s));
    for (std::size_t p = 0; p < s; ++p)
        for (std::size_t q = 0; q < s; ++q)
            a[p][q] = static_cast<long double>(m(b.indices[p], b.indices[q]).get_d()) + (p == q ? 1.0L : 0.0L);

    std::vector<long double> v(s, 1.0L / static_cast<long double>(s)), w(s);
    long double lo = 0, hi = std::numeric_limits<long double>::max();
    long double best_width = hi;
    std::size_t since_improvement = 0;
    constexpr long double kRequired = 1e-12L;
    for (std::size_t iter = 0; iter < 2'000'000; ++iter) {
        for (std::size_t p = 0; p < s; ++p) {
            w[p] = 0;
            for (std::size_t q = 0; q < s; ++q) w[p] += a[p][q] * v[q];
        }
        lo = std::numeric_limits<long double>::max();
        hi = 0;
        long double total = 0;
        for (std::size_t p = 0; p < s; ++p) {
            const long double r = w[p] / v[p];
            lo = std::min(lo, r);
            hi = std::max(hi, r);
            total += w[p];
        }
        for (std::size_t p = 0; p < s; ++p) v[p] = w[p] / total;
        const long double width = hi - lo;
        if (width < best_width * 0.999L) {
            best_width = width;
            since_improvement = 0;
        } else {
            ++since_improvement;
        }
        if (width <= 1e-16L * hi) break;
        if (width <= kRequired && since_improvement > 50) break;
    }
    if (hi - lo > kRequired * std::max<long double>(1, hi))
        throw Error("PF eigenvalue bracket did not close for block " + std::to_string(i));

    out.lambda = static_cast<double>((lo + hi) / 2 - 1);
    out.local.resize(s);
    for (std::size_t p = 0; p < s; ++p) {
        out.local[p] = static_cast<double>(v[p]);
        out.extended[b.indices[p]] = out.local[p];
    }
    return out;
}

std::vector<double> block_eigenvalues(const ExactMatrix& m, const BlockDecomposition& dec) {
    std::vector<double> out(dec.block_count());
    for (std::size_t i = 0; i < dec.block_count(); ++i) {
        switch (dec.block(i).cls) {
            case BlockClass::Primitive:
            case BlockClass::ZeroOne: out[i] = pf_eigen_block(m, dec, i).lambda; break;
            case BlockClass::PowerBounded: out[i] = 1.0; break;
            case BlockClass::Imprimitive:
                throw NotPBFrobenius("block " + std::to_string(i + 1) + " is imprimitive; raise the matrix to a power");
        }
    }
    return out;
}

// ------------------------------------------------------------- growth types

namespace {

void require_eigenvalues(const BlockDecomposition& dec, std::span<const double> eigenvalues) {
    if (eigenvalues.size() != dec.block_count()) throw DimensionMismatch("one eigenvalue per block expected");
}

// Longest chain B_{k} > ... > B_{1} among the blocks flagged in `member`.
// Block indices are a topological order, so one backward sweep suffices.
std::size_t longest_chain(const BlockDecomposition& dec, const std::vector<char>& member) {
    const std::size_t k = dec.block_count();
    std::vector<std::size_t> len(k, 0);
    std::size_t best = 0;
    for (std::size_t i = k; i-- > 0;) {
        if (!member[i]) continue;
        std::size_t tail = 0;
        for (std::size_t j = i + 1; j < k; ++j)
            if (member[j] && dec.reaches(i, j)) tail = std::max(tail, len[j]);
        len[i] = tail + 1;
        best = std::max(best, len[i]);
    }
    return best;
}

}  // namespace

GrowthType growth_type(const BlockDecomposition& dec, std::span<const double> eigenvalues, std::size_t i) {
    require_eigenvalues(dec, eigenvalues);
    if (i >= dec.block_count()) throw InvalidArgument("block index out of range");
    double lam = eigenvalues[i];
    for (std::size_t j : dec.dependency(i)) lam = std::max(lam, eigenvalues[j]);

    std::vector<char> member(dec.block_count(), 0);
    member[i] = same_eigenvalue(eigenvalues[i], lam);
    for (std::size_t j : dec.dependency(i)) member[j] = same_eigenvalue(eigenvalues[j], lam);

    GrowthType g{lam, 0};
    if (lam > 0.0) g.degree = longest_chain(dec, member) - 1;
    return g;
}

GrowthType cone_growth_type(const BlockDecomposition& dec, std::span<const double> eigenvalues,
                            std::span<const std::size_t> cone_blocks) {
    GrowthType best{0.0, 0};
    for (std::size_t b : cone_blocks) {
        const auto g = growth_type(dec, eigenvalues, b);
        if (compare(g, best) > 0) best = g;
    }
    return best;
}

bool dominant_interior_contains(const BlockDecomposition& dec, std::span<const double> eigenvalues,
                                std::span<const std::size_t> cone_blocks, std::span<const double> v) {
    require_eigenvalues(dec, eigenvalues);
    if (v.size() != dec.dimension()) throw DimensionMismatch("vector length differs from matrix size");
    if (!dec.is_invariant(cone_blocks)) throw InvalidArgument("block cone is not invariant");

    std::vector<char> in_cone(dec.block_count(), 0);
    for (std::size_t b : cone_blocks) in_cone[b] = 1;
    for (std::size_t idx = 0; idx < v.size(); ++idx) {
        if (v[idx] < 0.0) throw InvalidArgument("vector has a negative coordinate");
        if (v[idx] > 0.0 && !in_cone[dec.block_of(idx)]) throw InvalidArgument("vector has support outside the cone");
    }

    const auto g = cone_growth_type(dec, eigenvalues, cone_blocks);
    std::vector<char> good(dec.block_count(), 0);
    for (std::size_t b : cone_blocks) {
        if (!same_eigenvalue(eigenvalues[b], g.lambda)) continue;
        const auto& idx = dec.block(b).indices;
        good[b] = std::all_of(idx.begin(), idx.end(), [&](std::size_t p) { return v[p] > 0.0; });
    }
    return longest_chain(dec, good) == g.degree + 1;
}

// ------------------------------------------------------------- convergence

namespace {

// Coordinates scaled by a common power of two so the largest has 64
// significant bits; exact in long double.
std::vector<long double> direction(const ExactVector& w) {
    std::size_t top = 0;
    for (const auto& c : w.coords())
        if (sgn(c) > 0) top = std::max(top, mpz_sizeinbase(c.get_mpz_t(), 2));
    std::vector<long double> out(w.size(), 0.0L);
    BigInt tmp;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const auto& c = w[i];
        if (sgn(c) == 0) continue;
        if (top > 64)
            mpz_fdiv_q_2exp(tmp.get_mpz_t(), c.get_mpz_t(), top - 64);
        else
            mpz_mul_2exp(tmp.get_mpz_t(), c.get_mpz_t(), 64 - top);
        out[i] = static_cast<long double>(mpz_get_ui(tmp.get_mpz_t()));
    }
    return out;
}

// Drops low-order bits so the largest coordinate keeps `keep` bits.
void rescale(ExactVector& w, std::size_t keep) {
    std::size_t top = 0;
    for (const auto& c : w.coords())
        if (sgn(c) > 0) top = std::max(top, mpz_sizeinbase(c.get_mpz_t(), 2));
    if (top <= keep) return;
    std::vector<BigInt> shifted(w.coords());
    for (auto& c : shifted) mpz_fdiv_q_2exp(c.get_mpz_t(), c.get_mpz_t(), top - keep);
    w = ExactVector(std::move(shifted));
}

struct Snapshot {
    FloatVector z;
    double lambda = 0.0;
    double residual = 0.0;
};

Snapshot filtered_snapshot(const ExactMatrix& m, const ExactVector& w, long double lambda, std::size_t degree) {
    auto y = direction(w);
    for (std::size_t k = 0; k < degree; ++k) {
        auto my = m.apply(std::span<const long double>(y));
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = my[i] - lambda * y[i];
    }
    long double total = 0;
    for (auto x : y) total += x;
    Snapshot s;
    s.z.resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) s.z[i] = total != 0 ? static_cast<double>(y[i] / total) : 0.0;
    const auto mz = m.apply(std::span<const double>(s.z));
    for (double x : mz) s.lambda += x;
    for (std::size_t i = 0; i < mz.size(); ++i) s.residual += std::abs(mz[i] - s.lambda * s.z[i]);
    return s;
}

ConvergenceReport finish(const ExactMatrix& m, Snapshot s, std::size_t iterations, const GrowthType& growth) {
    ConvergenceReport r;
    for (auto& x : s.z) x = std::max(x, 0.0);
    const double total = l1_norm(s.z);
    if (total > 0.0)
        for (auto& x : s.z) x /= total;
    r.limit = std::move(s.z);
    const auto ml = m.apply(std::span<const double>(r.limit));
    r.eigenvalue = 0.0;
    for (double x : ml) r.eigenvalue += x;
    r.residual = eigen_residual(m, r.limit, r.eigenvalue);
    r.iterations = iterations;
    r.growth = growth;
    return r;
}

}  // namespace

ConvergenceReport normalized_limit(const ExactMatrix& m, const ExactVector& v0, double tol, std::size_t max_iter) {
    if (v0.size() != m.size()) throw DimensionMismatch("start vector length differs from matrix size");
    if (v0.is_zero()) throw InvalidArgument("start vector is zero");
    const auto dec = scc_blocks(m);
    if (!dec.is_pb_frobenius()) throw NotPBFrobenius("matrix is not in PB-Frobenius form; raise it to a power first");
    if (!is_expanding(m)) throw NotExpanding("matrix is not expanding");

    const auto eig = block_eigenvalues(m, dec);
    std::vector<std::size_t> support_blocks;
    for (std::size_t i = 0; i < v0.size(); ++i)
        if (sgn(v0[i]) > 0) support_blocks.push_back(dec.block_of(i));
    std::sort(support_blocks.begin(), support_blocks.end());
    support_blocks.erase(std::unique(support_blocks.begin(), support_blocks.end()), support_blocks.end());
    const GrowthType growth = cone_growth_type(dec, eig, support_blocks);

    constexpr std::size_t kKeepBits = 256;
    constexpr std::size_t kRescaleEvery = 64;

    ExactVector w = v0;
    Snapshot prev = filtered_snapshot(m, w, growth.lambda, growth.degree);
    for (std::size_t t = 1; t <= max_iter; ++t) {
        w = m * w;
        if (t % kRescaleEvery == 0) rescale(w, kKeepBits);
        Snapshot cur = filtered_snapshot(m, w, growth.lambda, growth.degree);
        const double step = l1_distance(cur.z, prev.z);
        if (step <= tol && cur.residual <= tol) {
            // Keep going while the steps still shrink, at most doubling the work.
            const std::size_t stop = std::min(max_iter, 2 * t);
            double last = step;
            while (t < stop && last > 1e-15) {
                ExactVector next = m * w;
                if ((t + 1) % kRescaleEvery == 0) rescale(next, kKeepBits);
                Snapshot more = filtered_snapshot(m, next, growth.lambda, growth.degree);
                const double d = l1_distance(more.z, cur.z);
                if (d >= last) break;
                w = std::move(next);
                cur = std::move(more);
                last = d;
                ++t;
            }
            return finish(m, std::move(cur), t, growth);
        }
        prev = std::move(cur);
    }
    throw MaxIterExceeded("no convergence within " + std::to_string(max_iter) + " iterations",
                          finish(m, std::move(prev), max_iter, growth));
}

LimitCase classify_limit_case(const BlockDecomposition& dec, std::span<const double> eigenvalues, std::size_t i) {
    require_eigenvalues(dec, eigenvalues);
    if (i >= dec.block_count()) throw InvalidArgument("block index out of range");
    double lambda_u = 0.0;
    for (std::size_t j : dec.dependency(i)) lambda_u = std::max(lambda_u, eigenvalues[j]);
    const double lambda = eigenvalues[i];
    if (same_eigenvalue(lambda, lambda_u)) return LimitCase::Tied;
    return lambda > lambda_u ? LimitCase::BlockDominates : LimitCase::DependencyDominates;
}

// ------------------------------------------------------ principal eigenvectors

namespace {

void require_primitive_frobenius(const ExactMatrix& m, const BlockDecomposition& dec) {
    if (dec.dimension() != m.size()) throw DimensionMismatch("decomposition does not match the matrix");
    if (!dec.is_primitive_frobenius()) throw InvalidArgument("decomposition is not in primitive Frobenius form");
    if (m.has_zero_column()) throw ZeroColumn("matrix has a zero column");
}

}  // namespace

std::vector<std::size_t> principal_blocks(const ExactMatrix& m, const BlockDecomposition& dec,
                                          std::span<const double> eigenvalues) {
    require_eigenvalues(dec, eigenvalues);
    require_primitive_frobenius(m, dec);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < dec.block_count(); ++i) {
        bool principal = true;
        for (std::size_t j : dec.dependency(i))
            if (!(eigenvalues[i] > eigenvalues[j]) || same_eigenvalue(eigenvalues[i], eigenvalues[j])) {
                principal = false;
                break;
            }
        if (principal) out.push_back(i);
    }
    return out;
}

FloatVector solve_linear(std::vector<std::vector<double>> a, FloatVector b, double pivot_tol) {
    const std::size_t n = b.size();
    if (a.size() != n) throw DimensionMismatch("system matrix and right-hand side differ in size");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < pivot_tol) throw SingularSystem("pivot below tolerance in column " + std::to_string(col));
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    FloatVector x(n);
    for (std::size_t r = n; r-- > 0;) {
        double s = b[r];
        for (std::size_t c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
        x[r] = s / a[r][r];
    }
    return x;
}

PrincipalEigenvector principal_eigenvector(const ExactMatrix& m, const BlockDecomposition& dec,
                                           std::span<const double> eigenvalues, std::size_t i, double tol) {
    const auto principal = principal_blocks(m, dec, eigenvalues);
    if (std::find(principal.begin(), principal.end(), i) == principal.end())
        throw NotPrincipal("block " + std::to_string(i + 1) + " is not principal");

    PrincipalEigenvector out;
    out.block = i;
    out.lambda = eigenvalues[i];
    out.pf_part = pf_eigen_block(m, dec, i).extended;
    out.dependency_part.assign(m.size(), 0.0);

    // (lambda I - M_C) x = (M v_pf)|_C
    const auto dep = dec.dependency_indices(i);
    if (!dep.empty()) {
        const auto mv = m.apply(std::span<const double>(out.pf_part));
        FloatVector u(dep.size());
        std::vector<std::vector<double>> a(dep.size(), std::vector<double>(dep.size()));
        for (std::size_t p = 0; p < dep.size(); ++p) {
            u[p] = mv[dep[p]];
            for (std::size_t q = 0; q < dep.size(); ++q)
                a[p][q] = (p == q ? out.lambda : 0.0) - m(dep[p], dep[q]).get_d();
        }
        const auto x = solve_linear(std::move(a), std::move(u));
        for (std::size_t p = 0; p < dep.size(); ++p) {
            if (x[p] < -1e-9) throw SingularSystem("dependency solution is negative; lambda does not dominate");
            out.dependency_part[dep[p]] = std::max(x[p], 0.0);
        }
    }

    out.vector.resize(m.size());
    for (std::size_t p = 0; p < m.size(); ++p) out.vector[p] = out.pf_part[p] + out.dependency_part[p];
    out.vector = l1_normalized(out.vector);
    out.residual = eigen_residual(m, out.vector, out.lambda);
    if (out.residual > tol)
        throw Error("principal eigenvector residual " + std::to_string(out.residual) + " exceeds tolerance");
    return out;
}

// -------------------------------------------------------------- NNLS / cone

FloatVector nnls(const std::vector<FloatVector>& columns, std::span<const double> b) {
    const std::size_t p = columns.size();
    const std::size_t n = b.size();
    for (const auto& c : columns)
        if (c.size() != n) throw DimensionMismatch("NNLS column has wrong length");
    FloatVector x(p, 0.0);
    if (p == 0) return x;

    auto gradient = [&](const FloatVector& coef) {
        FloatVector r(b.begin(), b.end());
        for (std::size_t j = 0; j < p; ++j)
            for (std::size_t i = 0; i < n; ++i) r[i] -= columns[j][i] * coef[j];
        FloatVector g(p, 0.0);
        for (std::size_t j = 0; j < p; ++j)
            for (std::size_t i = 0; i < n; ++i) g[j] += columns[j][i] * r[i];
        return g;
    };
    auto least_squares = [&](const std::vector<std::size_t>& set) {
        const std::size_t k = set.size();
        std::vector<std::vector<double>> a(k, std::vector<double>(k, 0.0));
        FloatVector rhs(k, 0.0);
        for (std::size_t r = 0; r < k; ++r) {
            for (std::size_t c = 0; c < k; ++c)
                for (std::size_t i = 0; i < n; ++i) a[r][c] += columns[set[r]][i] * columns[set[c]][i];
            for (std::size_t i = 0; i < n; ++i) rhs[r] += columns[set[r]][i] * b[i];
        }
        return solve_linear(std::move(a), std::move(rhs), 1e-14);
    };

    constexpr double kEps = 1e-14;
    std::vector<char> passive(p, 0);
    for (std::size_t outer = 0; outer < 3 * p + 10; ++outer) {
        const auto g = gradient(x);
        std::size_t pick = p;
        double best = kEps;
        for (std::size_t j = 0; j < p; ++j)
            if (!passive[j] && g[j] > best) {
                best = g[j];
                pick = j;
            }
        if (pick == p) break;
        passive[pick] = 1;

        for (std::size_t inner = 0; inner < 3 * p + 10; ++inner) {
            std::vector<std::size_t> set;
            for (std::size_t j = 0; j < p; ++j)
                if (passive[j]) set.push_back(j);
            const auto s_set = least_squares(set);
            FloatVector s(p, 0.0);
            for (std::size_t r = 0; r < set.size(); ++r) s[set[r]] = s_set[r];
            if (std::all_of(set.begin(), set.end(), [&](std::size_t j) { return s[j] > kEps; })) {
                x = s;
                break;
            }
            double alpha = 1.0;
            for (std::size_t j : set)
                if (s[j] <= kEps) alpha = std::min(alpha, x[j] / (x[j] - s[j]));
            for (std::size_t j = 0; j < p; ++j) x[j] += alpha * (s[j] - x[j]);
            for (std::size_t j : set)
                if (x[j] <= kEps) {
                    passive[j] = 0;
                    x[j] = 0.0;
                }
        }
    }
    return x;
}

bool eigencone_membership(const ExactMatrix& m, const BlockDecomposition& dec, std::span<const double> eigenvalues,
                          std::span<const double> v, double lambda, double tol) {
    if (v.size() != m.size()) throw DimensionMismatch("vector length differs from matrix size");
    for (double x : v)
        if (x < 0.0) throw InvalidArgument("vector has a negative coordinate");
    const auto target = l1_normalized(v);

    std::vector<FloatVector> span_set;
    for (std::size_t b : principal_blocks(m, dec, eigenvalues))
        if (same_eigenvalue(eigenvalues[b], lambda))
            span_set.push_back(principal_eigenvector(m, dec, eigenvalues, b).vector);
    if (span_set.empty()) return false;

    const auto coef = nnls(span_set, target);
    FloatVector proj(m.size(), 0.0);
    for (std::size_t j = 0; j < span_set.size(); ++j)
        for (std::size_t i = 0; i < m.size(); ++i) proj[i] += coef[j] * span_set[j][i];
    return l1_distance(proj, target) <= tol;
}

bool power_eigenvector_lift(const ExactMatrix& m0, std::uint64_t k, std::span<const double> v, double tol) {
    if (k == 0) throw InvalidArgument("power must be positive");
    if (v.size() != m0.size()) throw DimensionMismatch("vector length differs from matrix size");
    const auto dec = scc_blocks(m0);
    if (!dec.is_pb_frobenius()) throw NotPBFrobenius("matrix is not in PB-Frobenius form");
    if (!is_expanding(m0)) throw NotExpanding("matrix is not expanding");
    for (double x : v)
        if (x < 0.0) throw InvalidArgument("vector has a negative coordinate");
    const auto unit = l1_normalized(v);

    const auto m1 = m0.power(k);
    const auto m1v = m1.apply(std::span<const double>(unit));
    const double mu = l1_norm(m1v);
    if (eigen_residual(m1, unit, mu) > 1e-6 * std::max(1.0, mu))
        throw InvalidArgument("vector is not an eigenvector of the power");

    const double lambda0 = l1_norm(m0.apply(std::span<const double>(unit)));
    return eigen_residual(m0, unit, lambda0) <= tol;
}

}  // namespace frobsub
