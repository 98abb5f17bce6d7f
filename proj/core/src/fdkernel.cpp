#include "ivpfactor/fdkernel.hpp"

#include <algorithm>
#include <limits>

namespace ivp {

namespace {

std::size_t count_nonzero(const std::vector<long>& row) {
    return static_cast<std::size_t>(
        std::count_if(row.begin(), row.end(), [](long x) { return x != 0; }));
}

// Reduced row echelon form with unit pivots; returns pivot columns.
std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& m, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t col = 0; col < cols && lead < m.size(); ++col) {
        std::size_t pivot_row = lead;
        while (pivot_row < m.size() && m[pivot_row][col] == 0) ++pivot_row;
        if (pivot_row == m.size()) continue;
        std::swap(m[lead], m[pivot_row]);
        Rational inv = m[lead][col];
        for (std::size_t j = col; j < cols; ++j) m[lead][j] /= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == lead || m[i][col] == 0) continue;
            Rational factor = m[i][col];
            for (std::size_t j = col; j < cols; ++j) m[i][j] -= factor * m[lead][j];
        }
        pivots.push_back(col);
        ++lead;
    }
    return pivots;
}

std::vector<Int> primitive_integer(const std::vector<Rational>& v) {
    Int lcm_den(1);
    for (const Rational& c : v) {
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den().get_mpz_t());
    }
    std::vector<Int> out;
    Int content(0);
    for (const Rational& c : v) {
        Rational scaled = c * Rational(lcm_den);
        out.push_back(scaled.get_num());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), out.back().get_mpz_t());
    }
    if (content > 1) {
        for (Int& c : out) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), content.get_mpz_t());
    }
    for (const Int& c : out) {
        if (c != 0) {
            if (c < 0) {
                for (Int& x : out) x = -x;
            }
            break;
        }
    }
    return out;
}

bool kernel_vector_less(const KernelVector& a, const KernelVector& b) {
    Int ka = a.k_value();
    Int kb = b.k_value();
    if (ka != kb) return ka < kb;
    return std::lexicographical_compare(a.v.begin(), a.v.end(), b.v.begin(), b.v.end());
}

}  // namespace

FdpMatrix build_fdp_matrix(const WitnessReport& report) {
    if (report.classes.empty()) {
        throw VerifyError("cannot build an fdp matrix from an empty witness report");
    }
    FdpMatrix a;
    a.num_cols = report.classes.front().valuations.size();
    for (const WitnessClass& wc : report.classes) {
        a.rows.push_back(wc.valuations);
        a.row_labels.push_back(wc.cls.representative);
    }
    return a;
}

FdpMatrix reduce_fdp_matrix(const FdpMatrix& a) {
    FdpMatrix out;
    out.num_cols = a.num_cols;
    out.reduced = true;

    // Incremental elimination basis used only for the independence test.
    std::vector<std::vector<Rational>> basis;
    std::vector<std::size_t> basis_pivot;

    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        bool duplicate = false;
        for (const auto& kept : out.rows) {
            if (kept == a.rows[i]) {
                duplicate = true;
                break;
            }
        }
        if (duplicate) continue;

        std::vector<Rational> work(a.num_cols);
        for (std::size_t j = 0; j < a.num_cols; ++j) work[j] = Rational(a.rows[i][j]);
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const Rational& c = work[basis_pivot[b]];
            if (c == 0) continue;
            Rational factor = c;
            for (std::size_t j = 0; j < a.num_cols; ++j) work[j] -= factor * basis[b][j];
        }
        std::size_t pivot = a.num_cols;
        for (std::size_t j = 0; j < a.num_cols; ++j) {
            if (work[j] != 0) {
                pivot = j;
                break;
            }
        }
        if (pivot == a.num_cols) continue;  // dependent

        Rational inv = work[pivot];
        for (std::size_t j = 0; j < a.num_cols; ++j) work[j] /= inv;
        basis.push_back(std::move(work));
        basis_pivot.push_back(pivot);
        out.rows.push_back(a.rows[i]);
        out.row_labels.push_back(a.row_labels.empty() ? Int(static_cast<long>(i))
                                                      : a.row_labels[i]);
    }

    out.rank = out.rows.size();
    for (const auto& row : out.rows) {
        if (count_nonzero(row) == 1) ++out.single_entry_rows;
    }
    return out;
}

KernelDescription rational_kernel_basis(const FdpMatrix& a) {
    if (!a.reduced) throw ComputeError("rational_kernel_basis: matrix must be reduced");
    std::vector<std::vector<Rational>> m(a.rows.size(), std::vector<Rational>(a.num_cols));
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        for (std::size_t j = 0; j < a.num_cols; ++j) m[i][j] = Rational(a.rows[i][j]);
    }
    std::vector<std::size_t> pivots = rref(m, a.num_cols);
    if (pivots.size() != a.rows.size()) {
        throw VerifyError("reduced fdp matrix has dependent rows");
    }

    KernelDescription kernel;
    std::vector<bool> is_pivot(a.num_cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    for (std::size_t col = 0; col < a.num_cols; ++col) {
        if (is_pivot[col]) continue;
        std::vector<Rational> v(a.num_cols, Rational(0));
        v[col] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][col];
        kernel.sample_integer_vectors.push_back(primitive_integer(v));
        kernel.rational_basis.push_back(std::move(v));
    }
    kernel.dimension = kernel.rational_basis.size();
    return kernel;
}

Int siegel_bound(long n, std::size_t r, std::size_t u, std::size_t s) {
    if (s == 0) {
        throw ComputeError("siegel_bound: kernel is trivial (s = 0), bound undefined");
    }
    if (n < 1) throw ComputeError("siegel_bound: n must be positive");
    if (u > r) throw ComputeError("siegel_bound: u exceeds the row count");
    Int power;
    mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(n),
                  static_cast<unsigned long>(r - u));
    Int root;
    mpz_root(root.get_mpz_t(), power.get_mpz_t(), static_cast<unsigned long>(s));
    return root;
}

std::vector<Int> KernelVector::positive_part() const {
    std::vector<Int> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] > 0 ? v[i] : Int(0);
    return out;
}

std::vector<Int> KernelVector::negative_part() const {
    std::vector<Int> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] < 0 ? Int(-v[i]) : Int(0);
    return out;
}

Int KernelVector::inf_norm() const {
    Int m(0);
    for (const Int& x : v) {
        Int a = abs(x);
        if (a > m) m = a;
    }
    return m;
}

Int KernelVector::positive_inf_norm() const {
    Int m(0);
    for (const Int& x : v) {
        if (x > m) m = x;
    }
    return m;
}

Int KernelVector::negative_inf_norm() const {
    Int m(0);
    for (const Int& x : v) {
        if (-x > m) m = -x;
    }
    return m;
}

Int KernelVector::k_value() const { return positive_inf_norm() + negative_inf_norm(); }

namespace {

void check_reduced(const FdpMatrix& a, const char* who) {
    if (!a.reduced) throw ComputeError(std::string(who) + ": matrix must be reduced");
}

void sort_kernel_vectors(std::vector<KernelVector>& vectors) {
    std::sort(vectors.begin(), vectors.end(), kernel_vector_less);
}

}  // namespace

std::vector<KernelVector> enumerate_integer_kernel(const FdpMatrix& a, const Int& radius,
                                                   const EnumerationOptions& opts) {
    check_reduced(a, "enumerate_integer_kernel");
    if (radius < 1) throw ComputeError("enumerate_integer_kernel: radius must be positive");

    Int side = 2 * radius + 1;
    Int candidates(1);
    for (std::size_t j = 0; j < a.num_cols; ++j) candidates *= side;
    if (candidates > Int(static_cast<unsigned long>(opts.candidate_limit))) {
        throw LimitError("kernel box enumeration would visit " + candidates.get_str() +
                         " candidates (limit " + std::to_string(opts.candidate_limit) +
                         "); use the kernel-basis parametrized enumeration instead");
    }

    long r = radius.get_si();
    // Products stay well inside long range: guard against pathological entry
    // sizes once, then use machine arithmetic.
    long max_entry = 0;
    for (const auto& row : a.rows) {
        for (long e : row) max_entry = std::max(max_entry, std::abs(e));
    }
    bool use_long = max_entry == 0 ||
                    r <= (std::numeric_limits<long>::max() / (max_entry + 1)) /
                             static_cast<long>(std::max<std::size_t>(a.num_cols, 1)) / 2;

    std::vector<KernelVector> out;
    std::vector<long> v(a.num_cols, -r);
    while (true) {
        std::size_t first_nonzero = a.num_cols;
        for (std::size_t j = 0; j < a.num_cols; ++j) {
            if (v[j] != 0) {
                first_nonzero = j;
                break;
            }
        }
        if (first_nonzero < a.num_cols && v[first_nonzero] > 0) {
            bool in_kernel = true;
            if (use_long) {
                for (const auto& row : a.rows) {
                    long dot = 0;
                    for (std::size_t j = 0; j < a.num_cols; ++j) dot += row[j] * v[j];
                    if (dot != 0) {
                        in_kernel = false;
                        break;
                    }
                }
            } else {
                for (const auto& row : a.rows) {
                    Int dot(0);
                    for (std::size_t j = 0; j < a.num_cols; ++j) dot += Int(row[j]) * v[j];
                    if (dot != 0) {
                        in_kernel = false;
                        break;
                    }
                }
            }
            if (in_kernel) {
                KernelVector kv;
                kv.v.reserve(a.num_cols);
                for (long x : v) kv.v.emplace_back(x);
                out.push_back(std::move(kv));
            }
        }
        // odometer, last coordinate fastest
        bool done = true;
        for (std::size_t j = a.num_cols; j-- > 0;) {
            if (v[j] < r) {
                ++v[j];
                done = false;
                break;
            }
            v[j] = -r;
        }
        if (done) break;
    }
    sort_kernel_vectors(out);
    return out;
}

std::vector<KernelVector> enumerate_integer_kernel_parametrized(const FdpMatrix& a,
                                                                const Int& radius,
                                                                const EnumerationOptions& opts) {
    check_reduced(a, "enumerate_integer_kernel_parametrized");
    if (radius < 1) {
        throw ComputeError("enumerate_integer_kernel_parametrized: radius must be positive");
    }
    KernelDescription kernel = rational_kernel_basis(a);
    std::size_t s = kernel.dimension;
    if (s == 0) return {};

    Int side = 2 * radius + 1;
    Int candidates(1);
    for (std::size_t j = 0; j < s; ++j) candidates *= side;
    if (candidates > Int(static_cast<unsigned long>(opts.candidate_limit))) {
        throw LimitError("parametrized kernel enumeration would visit " + candidates.get_str() +
                         " candidates (limit " + std::to_string(opts.candidate_limit) + ")");
    }

    // v = sum_j t_j B_j; clear denominators so membership in Z^P is a
    // divisibility test.  Each B_j is 1 at its own free column and 0 at the
    // other free columns, so t is recovered from v and the enumeration is
    // exhaustive over the box.
    Int den(1);
    for (const auto& b : kernel.rational_basis) {
        for (const Rational& c : b) {
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
        }
    }
    std::vector<std::vector<Int>> scaled(s, std::vector<Int>(a.num_cols));
    for (std::size_t j = 0; j < s; ++j) {
        for (std::size_t c = 0; c < a.num_cols; ++c) {
            Rational x = kernel.rational_basis[j][c] * Rational(den);
            scaled[j][c] = x.get_num();
        }
    }

    long r = radius.get_si();
    std::vector<KernelVector> out;
    std::vector<long> t(s, -r);
    std::vector<Int> acc(a.num_cols);
    while (true) {
        bool nonzero = std::any_of(t.begin(), t.end(), [](long x) { return x != 0; });
        if (nonzero) {
            for (std::size_t c = 0; c < a.num_cols; ++c) {
                acc[c] = 0;
                for (std::size_t j = 0; j < s; ++j) {
                    if (t[j] != 0) acc[c] += scaled[j][c] * t[j];
                }
            }
            bool ok = true;
            for (std::size_t c = 0; c < a.num_cols && ok; ++c) {
                if (!mpz_divisible_p(acc[c].get_mpz_t(), den.get_mpz_t())) ok = false;
            }
            if (ok) {
                KernelVector kv;
                kv.v.resize(a.num_cols);
                bool sign_ok = true;
                bool saw_nonzero = false;
                for (std::size_t c = 0; c < a.num_cols; ++c) {
                    mpz_divexact(kv.v[c].get_mpz_t(), acc[c].get_mpz_t(), den.get_mpz_t());
                    if (!saw_nonzero && kv.v[c] != 0) {
                        saw_nonzero = true;
                        sign_ok = kv.v[c] > 0;
                    }
                    if (abs(kv.v[c]) > radius) {
                        ok = false;
                        break;
                    }
                }
                if (ok && saw_nonzero && sign_ok) out.push_back(std::move(kv));
            }
        }
        bool done = true;
        for (std::size_t j = s; j-- > 0;) {
            if (t[j] < r) {
                ++t[j];
                done = false;
                break;
            }
            t[j] = -r;
        }
        if (done) break;
    }
    sort_kernel_vectors(out);
    return out;
}

std::optional<MinimalK> minimal_K(const FdpMatrix& a, long n, const EnumerationOptions& opts) {
    check_reduced(a, "minimal_K");
    if (a.rank >= a.num_cols) return std::nullopt;  // trivial kernel
    std::size_t s = a.num_cols - a.rank;
    Int bound = siegel_bound(n, a.rank, a.single_entry_rows, s);
    Int radius = 2 * bound;
    if (radius < 1) radius = 1;
    std::vector<KernelVector> vectors = enumerate_integer_kernel_parametrized(a, radius, opts);
    if (vectors.empty()) {
        throw VerifyError("Siegel search box of radius " + radius.get_str() +
                          " contains no kernel vector, contradicting the Siegel lemma");
    }
    return MinimalK{vectors.front().k_value(), vectors.front()};
}

}  // namespace ivp
