#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include "fourierbf/image.hpp"

namespace fourierbf {

namespace detail {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace detail

/// Worst-case absolute output error of the approximate filter:
/// 2*T*epsilon / (w0 - epsilon). Valid only while epsilon < w0.
inline double error_bound(int T, double epsilon, double w0) {
    if (T < 0) throw std::invalid_argument("error_bound: negative dynamic range");
    if (!(epsilon >= 0.0)) throw std::invalid_argument("error_bound: negative tolerance");
    if (!(epsilon < w0))
        throw std::invalid_argument(
            "error_bound: tolerance must stay below the center spatial weight");
    return 2.0 * T * epsilon / (w0 - epsilon);
}

/// Largest absolute pixel difference between two equally sized images.
inline double linf_error(const Image& a, const Image& b) {
    if (!a.same_size(b)) throw std::invalid_argument("linf_error: size mismatch");
    double worst = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i)
        worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
    return worst;
}

/// Accuracy accounting for one filter run. `epsilon_achieved` is the
/// measured worst-case kernel approximation error on the sampling grid;
/// the output bound is evaluated at that achieved value, which keeps the
/// certificate valid while making it as tight as the fit allows.
/// `measured_linf` is present only when an exact reference was computed
/// alongside. `weaker_guarantee_flag` marks runs on non-integer
/// intensities, where the certificate holds on the integer grid only.
struct AccuracyReport {
    int T = 0;
    double epsilon_requested = 0.0;
    double epsilon_achieved = 0.0;
    std::optional<int> N;
    double w0 = 0.0;
    double predicted_bound = 0.0;
    std::optional<double> measured_linf;
    bool weaker_guarantee_flag = false;

    void write_key_values(std::ostream& os) const {
        os << "T=" << T << '\n';
        if (N) os << "N=" << *N << '\n';
        os << "epsilon_requested=" << detail::format_double(epsilon_requested) << '\n';
        os << "epsilon_achieved=" << detail::format_double(epsilon_achieved) << '\n';
        os << "w0=" << detail::format_double(w0) << '\n';
        os << "predicted_bound=" << detail::format_double(predicted_bound) << '\n';
        if (measured_linf) os << "measured_linf=" << detail::format_double(*measured_linf) << '\n';
        os << "weaker_guarantee_flag=" << (weaker_guarantee_flag ? "true" : "false") << '\n';
    }

    static std::string csv_header() {
        return "T,N,epsilon_requested,epsilon_achieved,w0,predicted_bound,measured_linf,"
               "weaker_guarantee_flag";
    }

    std::string csv_row() const {
        std::string row = std::to_string(T) + ',';
        if (N) row += std::to_string(*N);
        row += ',' + detail::format_double(epsilon_requested);
        row += ',' + detail::format_double(epsilon_achieved);
        row += ',' + detail::format_double(w0);
        row += ',' + detail::format_double(predicted_bound);
        row += ',';
        if (measured_linf) row += detail::format_double(*measured_linf);
        row += ',';
        row += weaker_guarantee_flag ? "true" : "false";
        return row;
    }
};

inline AccuracyReport make_report(int T, double epsilon_requested, double epsilon_achieved,
                                  std::optional<int> N, double w0, bool weaker_guarantee) {
    AccuracyReport r;
    r.T = T;
    r.epsilon_requested = epsilon_requested;
    r.epsilon_achieved = epsilon_achieved;
    r.N = N;
    r.w0 = w0;
    r.predicted_bound = epsilon_achieved < w0 ? error_bound(T, epsilon_achieved, w0)
                                              : std::numeric_limits<double>::infinity();
    r.weaker_guarantee_flag = weaker_guarantee;
    return r;
}

}  // namespace fourierbf
