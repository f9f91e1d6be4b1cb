#include "divlab/linear_forms.hpp"

#include <algorithm>
#include <stdexcept>

namespace divlab {

namespace {

using MpzMatrix = std::vector<std::vector<mpz_class>>;

int bareiss_rank(MpzMatrix m) {
    const std::size_t rows = m.size();
    if (rows == 0) return 0;
    const std::size_t cols = m.front().size();
    std::size_t r = 0;
    mpz_class previous = 1;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t pivot = r;
        while (pivot < rows && m[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[pivot], m[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j) {
                mpz_class v = m[r][col] * m[i][j] - m[i][col] * m[r][j];
                mpz_divexact(m[i][j].get_mpz_t(), v.get_mpz_t(), previous.get_mpz_t());
            }
            m[i][col] = 0;
        }
        previous = m[r][col];
        ++r;
    }
    return static_cast<int>(r);
}

void check_shape(const IntMatrix& a) {
    if (a.empty() || a.front().empty()) throw std::invalid_argument("linear forms: matrix must be non-empty");
    for (const auto& row : a) {
        if (row.size() != a.front().size()) throw std::invalid_argument("linear forms: ragged matrix");
    }
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RationalMatrix& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size();
    const std::size_t cols = m.front().size();
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t pivot = r;
        while (pivot < rows && m[pivot][col].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[pivot], m[r]);
        const Rational inv = m[r][col].inverse();
        for (auto& v : m[r]) v *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][col].is_zero()) continue;
            const Rational factor = m[i][col];
            for (std::size_t j = col; j < cols; ++j) m[i][j] -= factor * m[r][j];
        }
        pivots.push_back(col);
        ++r;
    }
    return pivots;
}

// Integral primitive representative with a positive first nonzero entry.
std::vector<Rational> primitive(std::vector<Rational> v) {
    mpz_class lcm = 1;
    for (const auto& x : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.denominator().get_mpz_t());
    mpz_class gcd = 0;
    for (auto& x : v) {
        x *= Rational(lcm, mpz_class(1));
        mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), x.numerator().get_mpz_t());
    }
    if (gcd == 0) return v;
    const auto first = std::find_if(v.begin(), v.end(), [](const Rational& x) { return !x.is_zero(); });
    if (first->sign() < 0) gcd = -gcd;
    for (auto& x : v) x /= Rational(gcd, mpz_class(1));
    return v;
}

// Nonzero kernel vector of the matrix whose columns are the given rows.
std::vector<Rational> kernel_vector(const IntMatrix& rows) {
    const std::size_t n = rows.size();
    const std::size_t dim = rows.front().size();
    RationalMatrix m(dim, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t d = 0; d < dim; ++d) m[d][i] = Rational(rows[i][d]);
    }
    const auto pivots = rref(m);
    std::size_t free_col = 0;
    while (free_col < n && std::find(pivots.begin(), pivots.end(), free_col) != pivots.end()) ++free_col;
    if (free_col == n) throw std::logic_error("kernel_vector: columns are independent");
    std::vector<Rational> out(n);
    out[free_col] = Rational(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) out[pivots[r]] = -m[r][free_col];
    return primitive(std::move(out));
}

bool next_combination(std::vector<int>& idx, int n) {
    const int k = static_cast<int>(idx.size());
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return false;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    return true;
}

}  // namespace

int rank(const IntMatrix& matrix) {
    MpzMatrix m;
    for (const auto& row : matrix) {
        std::vector<mpz_class> r;
        for (long v : row) r.emplace_back(v);
        m.push_back(std::move(r));
    }
    return bareiss_rank(std::move(m));
}

int rank(const RationalMatrix& matrix) {
    MpzMatrix m;
    for (const auto& row : matrix) {
        mpz_class lcm = 1;
        for (const auto& v : row) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.denominator().get_mpz_t());
        std::vector<mpz_class> r;
        for (const auto& v : row) r.push_back((v * Rational(lcm, mpz_class(1))).numerator());
        m.push_back(std::move(r));
    }
    return bareiss_rank(std::move(m));
}

IntMatrix augmented_rows(const IntMatrix& a) {
    check_shape(a);
    IntMatrix out = a;
    for (auto& row : out) row.push_back(1);
    return out;
}

RankAnalysis analyze(const IntMatrix& a) {
    IntMatrix extended = augmented_rows(a);
    std::vector<long> last(a.front().size(), 0);
    last.push_back(1);
    extended.push_back(std::move(last));
    const int rank_a = rank(a);
    const int rank_e = rank(extended);
    return {std::move(extended), rank_a, rank_e};
}

std::optional<DependentSubset> minimal_dependent_subset(const IntMatrix& a) {
    const IntMatrix rows = augmented_rows(a);
    if (rows.size() > kMaxFormsForCircuitSearch) {
        throw std::length_error("minimal_dependent_subset: at most " + std::to_string(kMaxFormsForCircuitSearch) +
                                " forms supported, got " + std::to_string(rows.size()));
    }
    const int n = static_cast<int>(rows.size());
    if (rank(rows) == n) return std::nullopt;
    for (int size = 1; size <= n; ++size) {
        std::vector<int> idx(static_cast<std::size_t>(size));
        for (int i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = i;
        do {
            IntMatrix subset;
            for (int i : idx) subset.push_back(rows[static_cast<std::size_t>(i)]);
            if (rank(subset) < size) {
                return DependentSubset{size, idx, kernel_vector(subset)};
            }
        } while (next_combination(idx, n));
    }
    return std::nullopt;
}

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::independent: return "independent";
        case Scenario::nondegenerate: return "nondegenerate";
        case Scenario::degenerate: return "degenerate";
    }
    return "?";
}

Classification classify(const IntMatrix& a) {
    check_shape(a);
    auto witness = minimal_dependent_subset(a);
    if (!witness) return {Scenario::independent, std::nullopt, 0, std::nullopt, std::nullopt};

    IntMatrix t_parts;
    for (int i : witness->indices) t_parts.push_back(a[static_cast<std::size_t>(i)]);
    const int t_rank = rank(t_parts);
    const int r = witness->r;
    if (t_rank != r - 1 && t_rank != r - 2) throw std::logic_error("classify: t-part rank outside {r-2, r-1}");

    ReducedOperator reduced;
    IntMatrix basis_rows;
    for (int i : witness->indices) {
        IntMatrix trial = basis_rows;
        trial.push_back(a[static_cast<std::size_t>(i)]);
        if (rank(trial) > static_cast<int>(basis_rows.size())) {
            basis_rows = std::move(trial);
            reduced.basis.push_back(i);
        } else {
            reduced.expressed.push_back(i);
        }
    }
    const std::size_t dim = a.front().size();
    for (int e : reduced.expressed) {
        // solve sum_j c_j basis_j = t-part(e)
        RationalMatrix system(dim, std::vector<Rational>(basis_rows.size() + 1));
        for (std::size_t d = 0; d < dim; ++d) {
            for (std::size_t j = 0; j < basis_rows.size(); ++j) system[d][j] = Rational(basis_rows[j][d]);
            system[d][basis_rows.size()] = Rational(a[static_cast<std::size_t>(e)][d]);
        }
        const auto pivots = rref(system);
        std::vector<Rational> coefficients(basis_rows.size());
        for (std::size_t p = 0; p < pivots.size(); ++p) {
            if (pivots[p] == basis_rows.size()) throw std::logic_error("classify: inconsistent reduction");
            coefficients[pivots[p]] = system[p][basis_rows.size()];
        }
        reduced.coefficients.push_back(std::move(coefficients));
    }

    const Scenario scenario = t_rank == r - 1 ? Scenario::degenerate : Scenario::nondegenerate;
    std::optional<Rational> bound;
    if (scenario == Scenario::degenerate) bound = Rational(r, r - 1);
    return {scenario, std::move(witness), t_rank, std::move(bound), std::move(reduced)};
}

}  // namespace divlab
