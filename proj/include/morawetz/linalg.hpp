#pragma once

#include "morawetz/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace morawetz {

using Vector = std::vector<double>;

inline double dot(const Vector& a, const Vector& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vector& a) { return std::sqrt(dot(a, a)); }

/**
 * General band matrix in LAPACK gb layout with kl extra rows for pivoting fill.
 * Entry (i, j) lives at ab[j * ldab + kl + ku + i - j].
 */
class BandedMatrix {
public:
    BandedMatrix() = default;
    BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku)
        : n_(n), kl_(kl), ku_(ku), ldab_(2 * kl + ku + 1), ab_(ldab_ * n, 0.0)
    {
        if (n == 0) throw ConfigError("BandedMatrix: dimension must be positive");
    }

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] std::size_t kl() const noexcept { return kl_; }
    [[nodiscard]] std::size_t ku() const noexcept { return ku_; }
    [[nodiscard]] std::size_t ldab() const noexcept { return ldab_; }

    [[nodiscard]] bool in_band(std::size_t i, std::size_t j) const noexcept
    {
        return i < n_ && j < n_ && i + ku_ >= j && j + kl_ >= i;
    }

    double& operator()(std::size_t i, std::size_t j) noexcept { return ab_[j * ldab_ + kl_ + ku_ + i - j]; }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept
    {
        return ab_[j * ldab_ + kl_ + ku_ + i - j];
    }
    /// Entry or zero when outside the band.
    [[nodiscard]] double at(std::size_t i, std::size_t j) const noexcept { return in_band(i, j) ? (*this)(i, j) : 0.0; }

    void add(std::size_t i, std::size_t j, double v)
    {
        if (!in_band(i, j)) {
            std::ostringstream os;
            os << "BandedMatrix: entry (" << i << "," << j << ") outside band";
            throw std::out_of_range(os.str());
        }
        (*this)(i, j) += v;
    }

    [[nodiscard]] Vector multiply(const Vector& x) const
    {
        check_dim(x.size());
        Vector y(n_, 0.0);
        for (std::size_t j = 0; j < n_; ++j) {
            const double xj = x[j];
            if (xj == 0.0) continue;
            const std::size_t i0 = j > ku_ ? j - ku_ : 0;
            const std::size_t i1 = std::min(n_ - 1, j + kl_);
            const double* col = &ab_[j * ldab_ + kl_ + ku_ - j];
            for (std::size_t i = i0; i <= i1; ++i) y[i] += col[i] * xj;
        }
        return y;
    }

    [[nodiscard]] Vector multiply_transpose(const Vector& x) const
    {
        check_dim(x.size());
        Vector y(n_, 0.0);
        for (std::size_t j = 0; j < n_; ++j) {
            const std::size_t i0 = j > ku_ ? j - ku_ : 0;
            const std::size_t i1 = std::min(n_ - 1, j + kl_);
            const double* col = &ab_[j * ldab_ + kl_ + ku_ - j];
            double s = 0.0;
            for (std::size_t i = i0; i <= i1; ++i) s += col[i] * x[i];
            y[j] = s;
        }
        return y;
    }

    /// Largest absolute entry.
    [[nodiscard]] double max_abs() const noexcept
    {
        double m = 0.0;
        for (double v : ab_) m = std::max(m, std::abs(v));
        return m;
    }

    /// Frobenius norm.
    [[nodiscard]] double frobenius() const noexcept
    {
        double s = 0.0;
        for (double v : ab_) s += v * v;
        return std::sqrt(s);
    }

    /// Largest |i - j| over nonzero entries.
    [[nodiscard]] std::size_t occupied_bandwidth() const noexcept
    {
        std::size_t w = 0;
        for (std::size_t j = 0; j < n_; ++j) {
            const std::size_t i0 = j > ku_ ? j - ku_ : 0;
            const std::size_t i1 = std::min(n_ - 1, j + kl_);
            for (std::size_t i = i0; i <= i1; ++i)
                if ((*this)(i, j) != 0.0) w = std::max(w, i > j ? i - j : j - i);
        }
        return w;
    }

    [[nodiscard]] const std::vector<double>& data() const noexcept { return ab_; }
    std::vector<double>& data() noexcept { return ab_; }

private:
    void check_dim(std::size_t m) const
    {
        if (m != n_) throw std::invalid_argument("BandedMatrix: dimension mismatch");
    }

    std::size_t n_ = 0;
    std::size_t kl_ = 0;
    std::size_t ku_ = 0;
    std::size_t ldab_ = 1;
    std::vector<double> ab_;
};

/// Row-pivoted band LU: P A = L U with U of upper bandwidth kl + ku.
struct LUFactors {
    BandedMatrix lu;
    std::vector<std::size_t> ipiv;
    double min_pivot_ratio = 0.0; ///< min |u_jj| / max|A|
};

/// Relative pivot size below which a matrix is reported singular.
inline constexpr double singular_pivot_tolerance = 1e-13;

/**
 * Unblocked band LU with partial pivoting.
 * Throws SingularMatrixError when |pivot| <= singular_pivot_tolerance * max|A|.
 */
inline LUFactors lu_factor(BandedMatrix A, double rel_tol = singular_pivot_tolerance)
{
    const std::size_t n = A.size();
    const std::size_t kl = A.kl();
    const std::size_t ku = A.ku();
    const std::size_t kv = kl + ku;
    const std::size_t ld = A.ldab();
    double* ab = A.data().data();
    const double amax = A.max_abs();
    const double thresh = rel_tol * amax;

    LUFactors f;
    f.ipiv.resize(n);
    double min_piv = std::numeric_limits<double>::infinity();

    // Zero fill rows of the first columns.
    for (std::size_t j = ku + 1; j < std::min(kv, n); ++j)
        for (std::size_t i = kv - j; i < kl; ++i) ab[j * ld + i] = 0.0;

    std::size_t ju = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (j + kv < n)
            for (std::size_t i = 0; i < kl; ++i) ab[(j + kv) * ld + i] = 0.0;

        const std::size_t km = std::min(kl, n - 1 - j);
        double* colj = ab + j * ld + kv; // colj[r] = A(j + r, j)
        std::size_t jp = 0;
        double best = std::abs(colj[0]);
        for (std::size_t r = 1; r <= km; ++r)
            if (std::abs(colj[r]) > best) {
                best = std::abs(colj[r]);
                jp = r;
            }
        f.ipiv[j] = j + jp;
        min_piv = std::min(min_piv, best);
        if (!(best > thresh)) {
            std::ostringstream os;
            os << "singular matrix: pivot " << best << " at column " << j << " (max entry " << amax << ")";
            throw SingularMatrixError(os.str(), j);
        }
        ju = std::max(ju, std::min(j + ku + jp, n - 1));
        if (jp != 0) {
            // Swap rows j and j + jp across columns j..ju.
            for (std::size_t c = j; c <= ju; ++c) {
                double& a = ab[c * ld + kv + j - c];
                double& b = ab[c * ld + kv + j + jp - c];
                std::swap(a, b);
            }
        }
        if (km > 0) {
            const double inv = 1.0 / colj[0];
            for (std::size_t r = 1; r <= km; ++r) colj[r] *= inv;
            for (std::size_t c = j + 1; c <= ju; ++c) {
                double* colc = ab + c * ld + kv - c; // colc[i] = A(i, c)
                const double ujc = colc[j];
                if (ujc == 0.0) continue;
                for (std::size_t r = 1; r <= km; ++r) colc[j + r] -= colj[r] * ujc;
            }
        }
    }
    f.min_pivot_ratio = amax > 0.0 ? min_piv / amax : 0.0;
    f.lu = std::move(A);
    return f;
}

/// Solve A x = b.
inline Vector solve(const LUFactors& f, Vector b)
{
    const BandedMatrix& A = f.lu;
    const std::size_t n = A.size();
    if (b.size() != n) throw std::invalid_argument("solve: dimension mismatch");
    const std::size_t kl = A.kl();
    const std::size_t kv = kl + A.ku();
    const std::size_t ld = A.ldab();
    const double* ab = A.data().data();

    for (std::size_t j = 0; j + 1 < n; ++j) {
        const std::size_t lm = std::min(kl, n - 1 - j);
        const std::size_t jp = f.ipiv[j];
        if (jp != j) std::swap(b[j], b[jp]);
        const double bj = b[j];
        if (bj == 0.0) continue;
        const double* l = ab + j * ld + kv;
        for (std::size_t r = 1; r <= lm; ++r) b[j + r] -= l[r] * bj;
    }
    for (std::size_t j = n; j-- > 0;) {
        const double* colj = ab + j * ld + kv - j; // colj[i] = U(i, j)
        b[j] /= colj[j];
        const double bj = b[j];
        if (bj == 0.0) continue;
        const std::size_t i0 = j > kv ? j - kv : 0;
        for (std::size_t i = i0; i < j; ++i) b[i] -= colj[i] * bj;
    }
    return b;
}

/// Solve A^T x = b.
inline Vector solve_transpose(const LUFactors& f, Vector b)
{
    const BandedMatrix& A = f.lu;
    const std::size_t n = A.size();
    if (b.size() != n) throw std::invalid_argument("solve_transpose: dimension mismatch");
    const std::size_t kl = A.kl();
    const std::size_t kv = kl + A.ku();
    const std::size_t ld = A.ldab();
    const double* ab = A.data().data();

    for (std::size_t j = 0; j < n; ++j) {
        const double* colj = ab + j * ld + kv - j;
        const std::size_t i0 = j > kv ? j - kv : 0;
        double s = b[j];
        for (std::size_t i = i0; i < j; ++i) s -= colj[i] * b[i];
        b[j] = s / colj[j];
    }
    for (std::size_t j = n - 1; j-- > 0;) {
        const std::size_t lm = std::min(kl, n - 1 - j);
        const double* l = ab + j * ld + kv;
        double s = b[j];
        for (std::size_t r = 1; r <= lm; ++r) s -= l[r] * b[j + r];
        b[j] = s;
        const std::size_t jp = f.ipiv[j];
        if (jp != j) std::swap(b[j], b[jp]);
    }
    return b;
}

/**
 * Symmetric band matrix storing the lower triangle: entry (i, j), i >= j, at ab[j * (k + 1) + i - j].
 */
class SymBandMatrix {
public:
    SymBandMatrix() = default;
    SymBandMatrix(std::size_t n, std::size_t k) : n_(n), k_(k), ab_((k + 1) * n, 0.0)
    {
        if (n == 0) throw ConfigError("SymBandMatrix: dimension must be positive");
    }

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] std::size_t bandwidth() const noexcept { return k_; }

    [[nodiscard]] bool in_band(std::size_t i, std::size_t j) const noexcept
    {
        const std::size_t d = i > j ? i - j : j - i;
        return i < n_ && j < n_ && d <= k_;
    }

    /// Entry (i, j) with i >= j.
    double& lower(std::size_t i, std::size_t j) noexcept { return ab_[j * (k_ + 1) + i - j]; }
    [[nodiscard]] double lower(std::size_t i, std::size_t j) const noexcept { return ab_[j * (k_ + 1) + i - j]; }

    [[nodiscard]] double at(std::size_t i, std::size_t j) const noexcept
    {
        if (!in_band(i, j)) return 0.0;
        return i >= j ? lower(i, j) : lower(j, i);
    }

    /// Adds v to (i, j); only the lower triangle is stored so upper entries are ignored.
    void add_lower(std::size_t i, std::size_t j, double v)
    {
        if (i < j) return;
        if (!in_band(i, j)) throw std::out_of_range("SymBandMatrix: entry outside band");
        lower(i, j) += v;
    }

    [[nodiscard]] Vector multiply(const Vector& x) const
    {
        if (x.size() != n_) throw std::invalid_argument("SymBandMatrix: dimension mismatch");
        Vector y(n_, 0.0);
        for (std::size_t j = 0; j < n_; ++j) {
            const double* col = &ab_[j * (k_ + 1)];
            const std::size_t i1 = std::min(n_ - 1, j + k_);
            y[j] += col[0] * x[j];
            double s = 0.0;
            for (std::size_t i = j + 1; i <= i1; ++i) {
                y[i] += col[i - j] * x[j];
                s += col[i - j] * x[i];
            }
            y[j] += s;
        }
        return y;
    }

    [[nodiscard]] double quadratic(const Vector& x) const { return dot(x, multiply(x)); }
    [[nodiscard]] double bilinear(const Vector& x, const Vector& y) const { return dot(x, multiply(y)); }

    [[nodiscard]] const std::vector<double>& data() const noexcept { return ab_; }
    std::vector<double>& data() noexcept { return ab_; }

private:
    std::size_t n_ = 0;
    std::size_t k_ = 0;
    std::vector<double> ab_;
};

/// Band Cholesky factor A = L L^T, stored in the same lower layout.
struct CholeskyFactor {
    SymBandMatrix L;
};

inline CholeskyFactor cholesky_factor(SymBandMatrix A)
{
    const std::size_t n = A.size();
    const std::size_t k = A.bandwidth();
    const std::size_t ld = k + 1;
    double* ab = A.data().data();
    for (std::size_t j = 0; j < n; ++j) {
        double* colj = ab + j * ld;
        const double d = colj[0];
        if (!(d > 0.0)) {
            std::ostringstream os;
            os << "cholesky: matrix not positive definite at column " << j;
            throw SingularMatrixError(os.str(), j);
        }
        const double ljj = std::sqrt(d);
        colj[0] = ljj;
        const std::size_t m = std::min(k, n - 1 - j);
        for (std::size_t r = 1; r <= m; ++r) colj[r] /= ljj;
        for (std::size_t s = 1; s <= m; ++s) {
            double* cols = ab + (j + s) * ld; // cols[r - s] = A(j + r, j + s)
            const double ls = colj[s];
            for (std::size_t r = s; r <= m; ++r) cols[r - s] -= colj[r] * ls;
        }
    }
    return {std::move(A)};
}

inline Vector cholesky_solve(const CholeskyFactor& f, Vector b)
{
    const SymBandMatrix& L = f.L;
    const std::size_t n = L.size();
    if (b.size() != n) throw std::invalid_argument("cholesky_solve: dimension mismatch");
    const std::size_t k = L.bandwidth();
    const double* ab = L.data().data();
    const std::size_t ld = k + 1;
    for (std::size_t j = 0; j < n; ++j) {
        const double* colj = ab + j * ld;
        b[j] /= colj[0];
        const std::size_t m = std::min(k, n - 1 - j);
        for (std::size_t r = 1; r <= m; ++r) b[j + r] -= colj[r] * b[j];
    }
    for (std::size_t j = n; j-- > 0;) {
        const double* colj = ab + j * ld;
        const std::size_t m = std::min(k, n - 1 - j);
        double s = b[j];
        for (std::size_t r = 1; r <= m; ++r) s -= colj[r] * b[j + r];
        b[j] = s / colj[0];
    }
    return b;
}

struct ConditionEstimate {
    double kappa = 0.0;
    double sigma_max = 0.0;
    double sigma_min = 0.0;
    bool converged = false; ///< false means the estimate is approximate
    std::size_t iterations = 0;
};

/**
 * 2-norm condition number: power iteration on B^T B for sigma_max and inverse
 * iteration on (B^T B)^{-1} through the LU factors for sigma_min.
 */
inline ConditionEstimate cond2_estimate(const BandedMatrix& B, const LUFactors& f, double tol = 1e-6,
                                        std::size_t max_iter = 20000, std::uint64_t seed = 12345)
{
    const std::size_t n = B.size();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    Vector start(n);
    for (double& v : start) v = nd(rng);
    const double s0 = norm2(start);
    for (double& v : start) v /= s0;

    ConditionEstimate est;
    bool conv_max = false;
    bool conv_min = false;

    // Largest eigenvalue of B^T B via the Rayleigh quotient ||B x||^2.
    Vector x = start;
    double lam_max = 0.0;
    std::size_t it_max = 0;
    for (; it_max < max_iter; ++it_max) {
        Vector y = B.multiply(x);
        const double lam = dot(y, y);
        Vector z = B.multiply_transpose(y);
        const double nz = norm2(z);
        if (nz == 0.0) break;
        for (std::size_t i = 0; i < n; ++i) x[i] = z[i] / nz;
        if (it_max > 0 && std::abs(lam - lam_max) <= tol * lam) {
            lam_max = lam;
            conv_max = true;
            break;
        }
        lam_max = lam;
    }

    // Largest eigenvalue of (B^T B)^{-1} = B^{-1} B^{-T}.
    x = start;
    double mu_max = 0.0;
    std::size_t it_min = 0;
    for (; it_min < max_iter; ++it_min) {
        Vector y = solve_transpose(f, x);
        const double mu = dot(y, y);
        Vector z = solve(f, y);
        const double nz = norm2(z);
        if (nz == 0.0) break;
        for (std::size_t i = 0; i < n; ++i) x[i] = z[i] / nz;
        if (it_min > 0 && std::abs(mu - mu_max) <= tol * mu) {
            mu_max = mu;
            conv_min = true;
            break;
        }
        mu_max = mu;
    }

    est.sigma_max = std::sqrt(lam_max);
    est.sigma_min = mu_max > 0.0 ? 1.0 / std::sqrt(mu_max) : 0.0;
    est.kappa = est.sigma_min > 0.0 ? est.sigma_max / est.sigma_min : std::numeric_limits<double>::infinity();
    est.converged = conv_max && conv_min;
    est.iterations = std::max(it_max, it_min);
    return est;
}

} // namespace morawetz
