#pragma once

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fourierbf/kernels.hpp"

namespace fourierbf {

/// Truncated cosine-series approximation of a range kernel on the integer
/// grid {0..T}:  phi_N(t) = d_0 + sum_{n=1..N} d_n cos(n * omega * t),
/// omega = pi/T. N is the highest harmonic, so a constant-only fit has N=0.
struct FourierKernelApprox {
    int T = 0;
    double omega = 0.0;
    int N = 0;
    std::vector<double> d;           // d_0..d_N
    double residual_norm = 0.0;      // final l2 residual over the grid
    double max_pointwise_error = 0;  // max_t |phi(t) - phi_N(t)| over the grid

    double evaluate(double t) const {
        double s = d[0];
        for (int n = 1; n <= N; ++n) s += d[n] * std::cos(n * omega * t);
        return s;
    }

    /// Complex-exponential coefficients c_{-N}..c_N of the same function:
    /// c_0 = d_0 and c_{+-n} = d_n / 2.
    std::vector<double> complex_coeffs() const {
        std::vector<double> c(2 * static_cast<size_t>(N) + 1, 0.0);
        c[static_cast<size_t>(N)] = d[0];
        for (int n = 1; n <= N; ++n) {
            c[static_cast<size_t>(N + n)] = 0.5 * d[n];
            c[static_cast<size_t>(N - n)] = 0.5 * d[n];
        }
        return c;
    }
};

/// Incrementally grown QR factorization of the basis matrix, one column per
/// harmonic. Columns are orthonormalized by modified Gram-Schmidt with a
/// second correction pass; R keeps a strictly positive diagonal. The raw
/// basis columns are retained so the residual can be recomputed from A and d
/// rather than inferred from QR quantities.
class QrState {
public:
    /// Starts from the all-ones column (the constant basis function).
    explicit QrState(std::vector<double> samples) : b_(std::move(samples)) {
        if (b_.size() < 2)
            throw std::invalid_argument("QrState: need at least two samples");
        const std::vector<double> ones(b_.size(), 1.0);
        const double nrm = std::sqrt(static_cast<double>(b_.size()));
        A_.push_back(ones);
        std::vector<double> q(b_.size(), 1.0 / nrm);
        p_.push_back(dot(q, b_));
        Q_.push_back(std::move(q));
        R_.push_back({nrm});
    }

    /// Orthogonalizes `a` against the current columns and appends it.
    /// Returns false (leaving the state untouched) when the residual norm
    /// falls below 1e-12 * ||a||, i.e. the column is linearly dependent.
    bool append_column(std::span<const double> a) {
        if (a.size() != b_.size())
            throw std::invalid_argument("QrState: column length mismatch");
        const size_t k = Q_.size();
        std::vector<double> v(a.begin(), a.end());
        std::vector<double> r(k, 0.0);
        for (int pass = 0; pass < 2; ++pass) {
            for (size_t j = 0; j < k; ++j) {
                const double s = dot(v, Q_[j]);
                axpy(v, -s, Q_[j]);
                r[j] += s;
            }
        }
        const double rnorm = norm(v);
        if (rnorm < 1e-12 * norm(a)) return false;

        for (double& x : v) x /= rnorm;
        r.push_back(rnorm);
        A_.emplace_back(a.begin(), a.end());
        p_.push_back(dot(v, b_));
        Q_.push_back(std::move(v));
        R_.push_back(std::move(r));
        return true;
    }

    /// Back-substitution on R d = p.
    std::vector<double> solve() const {
        const size_t k = R_.size();
        std::vector<double> d(k, 0.0);
        for (size_t i = k; i-- > 0;) {
            double s = p_[i];
            for (size_t j = i + 1; j < k; ++j) s -= R_[j][i] * d[j];
            d[i] = s / R_[i][i];
        }
        return d;
    }

    /// ||b - A d|| recomputed from the stored basis columns. Also reports
    /// the largest absolute residual component when requested.
    double residual(const std::vector<double>& d, double* max_abs = nullptr) const {
        double ss = 0.0, mx = 0.0;
        for (size_t t = 0; t < b_.size(); ++t) {
            double r = b_[t];
            for (size_t j = 0; j < A_.size(); ++j) r -= A_[j][t] * d[j];
            ss += r * r;
            mx = std::max(mx, std::abs(r));
        }
        if (max_abs) *max_abs = mx;
        return std::sqrt(ss);
    }

    size_t cols() const { return Q_.size(); }
    size_t rows() const { return b_.size(); }
    const std::vector<std::vector<double>>& basis() const { return A_; }
    const std::vector<std::vector<double>>& orthonormal() const { return Q_; }
    /// Column j of R holds its j+1 upper-triangular entries.
    const std::vector<std::vector<double>>& triangular() const { return R_; }
    const std::vector<double>& projections() const { return p_; }
    const std::vector<double>& samples() const { return b_; }

private:
    static double dot(const std::vector<double>& x, const std::vector<double>& y) {
        double s = 0.0;
        for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
        return s;
    }
    static double norm(std::span<const double> x) {
        double s = 0.0;
        for (double v : x) s += v * v;
        return std::sqrt(s);
    }
    static void axpy(std::vector<double>& y, double a, const std::vector<double>& x) {
        for (size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
    }

    std::vector<double> b_;
    std::vector<std::vector<double>> A_;
    std::vector<std::vector<double>> Q_;
    std::vector<std::vector<double>> R_;
    std::vector<double> p_;
};

/// b[t] = phi(t) for t = 0..T.
inline std::vector<double> sample_kernel(const RangeKernel& kernel, int T) {
    if (T < 1) throw std::invalid_argument("sample_kernel: T must be >= 1");
    std::vector<double> b(static_cast<size_t>(T) + 1);
    for (int t = 0; t <= T; ++t) b[static_cast<size_t>(t)] = kernel.eval(t);
    return b;
}

struct FitStep {
    int order;                  // highest harmonic so far
    double residual;            // ||b - A d||
    std::vector<double> coeffs; // d_0..d_order
};
using FitTrace = std::vector<FitStep>;

/// Grows the cosine basis one harmonic at a time, re-solving the
/// least-squares problem through the recursive QR update, until the l2
/// residual drops to `epsilon`. Returns the smallest such order.
inline FourierKernelApprox progressive_fit(std::span<const double> samples, double epsilon,
                                           FitTrace* trace = nullptr) {
    if (samples.size() < 2)
        throw std::invalid_argument("progressive_fit: T must be >= 1");
    const int T = static_cast<int>(samples.size()) - 1;
    if (!(epsilon > 0.0) || !(epsilon < std::sqrt(static_cast<double>(T) + 1.0)))
        throw std::invalid_argument(
            "progressive_fit: epsilon must lie in (0, sqrt(T+1)); larger values are met "
            "by the zero fit and carry no information");

    const double omega = std::numbers::pi / T;
    QrState state(std::vector<double>(samples.begin(), samples.end()));

    int N = 0;
    std::vector<double> d = state.solve();
    double max_abs = 0.0;
    double E = state.residual(d, &max_abs);
    if (trace) trace->push_back({N, E, d});

    std::vector<double> column(samples.size());
    while (E > epsilon) {
        if (N == T)
            throw std::runtime_error(
                "progressive_fit: numerical breakdown: basis spans the whole grid but the "
                "residual still exceeds epsilon");
        const int n = N + 1;
        for (int t = 0; t <= T; ++t) column[static_cast<size_t>(t)] = std::cos(n * omega * t);
        if (!state.append_column(column))
            throw std::runtime_error(
                "progressive_fit: numerical breakdown: linearly dependent basis column at "
                "harmonic " + std::to_string(n));
        N = n;
        d = state.solve();
        E = state.residual(d, &max_abs);
        if (trace) trace->push_back({N, E, d});
    }

    FourierKernelApprox approx;
    approx.T = T;
    approx.omega = omega;
    approx.N = N;
    approx.d = std::move(d);
    approx.residual_norm = E;
    approx.max_pointwise_error = max_abs;
    return approx;
}

inline FourierKernelApprox progressive_fit(const RangeKernel& kernel, int T, double epsilon,
                                           FitTrace* trace = nullptr) {
    return progressive_fit(sample_kernel(kernel, T), epsilon, trace);
}

/// Debug dump of the fit trajectory, one line per step: "N,E,d_0,...,d_N".
inline void write_fit_trace_csv(const FitTrace& trace, std::ostream& out) {
    char buf[32];
    for (const FitStep& s : trace) {
        out << s.order;
        std::snprintf(buf, sizeof buf, "%.17g", s.residual);
        out << ',' << buf;
        for (double c : s.coeffs) {
            std::snprintf(buf, sizeof buf, "%.17g", c);
            out << ',' << buf;
        }
        out << '\n';
    }
}

}  // namespace fourierbf
