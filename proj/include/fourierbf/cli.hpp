#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fourierbf/analysis.hpp"
#include "fourierbf/bilateral.hpp"
#include "fourierbf/image.hpp"
#include "fourierbf/kernel_approx.hpp"
#include "fourierbf/kernels.hpp"
#include "fourierbf/pgm.hpp"
#include "fourierbf/spatial.hpp"

namespace fourierbf {

struct CliOptions {
    std::string input_path;
    std::string output_path;
    double sigma_s = 0.0;
    double sigma_r = 0.0;
    RangeFamily kernel_family = RangeFamily::gaussian;
    std::string tabulated_path;  // used when kernel_family is tabulated
    double epsilon = 1e-3;
    SpatialKind spatial_kind = SpatialKind::gaussian;
    ConvolutionBackend backend = ConvolutionBackend::direct;
    bool compare_exact = false;
    std::string report_path;
    bool bench = false;
};

namespace detail {

inline RangeKernel build_range_kernel(const CliOptions& opt, double sigma_r) {
    switch (opt.kernel_family) {
        case RangeFamily::gaussian:
            return RangeKernel::gaussian(sigma_r);
        case RangeFamily::exponential:
            return RangeKernel::exponential(sigma_r);
        case RangeFamily::tabulated:
            return RangeKernel::tabulated_from_file(opt.tabulated_path);
    }
    throw std::logic_error("unknown kernel family");
}

inline SpatialKernel build_spatial_kernel(const CliOptions& opt, double sigma_s) {
    if (!(sigma_s > 0.0)) throw std::invalid_argument("--sigma-s must be positive");
    if (opt.spatial_kind == SpatialKind::box)
        return make_spatial_box(static_cast<int>(std::ceil(sigma_s)));
    return make_spatial_gaussian(sigma_s);
}

inline double time_fast_filter_ms(const Image& image, const SpatialKernel& spatial,
                                  const FourierKernelApprox& approx,
                                  ConvolutionBackend backend) {
    const auto start = std::chrono::steady_clock::now();
    const Image out = bilateral_fast(image, spatial, approx, backend);
    const auto stop = std::chrono::steady_clock::now();
    (void)out;
    return std::chrono::duration<double, std::milli>(stop - start).count();
}

inline void run_bench(const CliOptions& opt, const Image& image, std::ostream& out) {
    if (opt.kernel_family == RangeFamily::tabulated)
        throw std::invalid_argument("--bench needs a parametric kernel family to sweep sigma_r");

    out << "param,value,millis\n";
    char row[96];

    for (const double sigma_s : {1.0, 2.0, 5.0, 8.0, 10.0, 12.0}) {
        const SpatialKernel spatial = build_spatial_kernel(opt, sigma_s);
        const RangeKernel range = build_range_kernel(opt, opt.sigma_r);
        const int T = local_dynamic_range(image, spatial.radius);
        const FourierKernelApprox approx = progressive_fit(range, std::max(T, 1), opt.epsilon);
        const double ms = time_fast_filter_ms(image, spatial, approx, opt.backend);
        std::snprintf(row, sizeof(row), "sigma_s,%g,%.3f\n", sigma_s, ms);
        out << row;
    }
    for (const double sigma_r : {10.0, 15.0, 20.0, 30.0, 50.0, 100.0}) {
        const SpatialKernel spatial = build_spatial_kernel(opt, opt.sigma_s);
        const RangeKernel range = build_range_kernel(opt, sigma_r);
        const int T = local_dynamic_range(image, spatial.radius);
        const FourierKernelApprox approx = progressive_fit(range, std::max(T, 1), opt.epsilon);
        const double ms = time_fast_filter_ms(image, spatial, approx, opt.backend);
        std::snprintf(row, sizeof(row), "sigma_r,%g,%.3f\n", sigma_r, ms);
        out << row;
    }
}

}  // namespace detail

/// Executes one CLI invocation. Returns 0 on success; on failure prints a
/// diagnostic to `err` and returns 1. `out` receives benchmark CSV only,
/// so ordinary runs are quiet and reports stay byte-reproducible.
inline int run(const CliOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        if (opt.input_path.empty()) throw std::invalid_argument("--input is required");
        if (opt.output_path.empty() && !opt.bench)
            throw std::invalid_argument("--output is required unless --bench is set");
        if (opt.kernel_family != RangeFamily::tabulated && !(opt.sigma_r > 0.0))
            throw std::invalid_argument("--sigma-r must be positive");
        if (!(opt.epsilon > 0.0)) throw std::invalid_argument("--epsilon must be positive");

        const Image image = read_pgm(opt.input_path);

        if (opt.bench) detail::run_bench(opt, image, out);
        if (opt.output_path.empty()) return 0;

        const FilterConfig config{detail::build_spatial_kernel(opt, opt.sigma_s),
                                  detail::build_range_kernel(opt, opt.sigma_r), opt.epsilon,
                                  true, opt.backend};

        auto [filtered, report] = filter(image, config);

        if (opt.compare_exact) {
            const Image exact = bilateral_exact(image, config.spatial, config.range);
            report.measured_linf = linf_error(exact, filtered);
        }

        write_pgm(filtered, opt.output_path);

        if (!opt.report_path.empty()) {
            std::ofstream rep(opt.report_path, std::ios::trunc);
            if (!rep) throw std::runtime_error("cannot open " + opt.report_path + " for writing");
            report.write_key_values(rep);
            if (!rep.good()) throw std::runtime_error("write failure on " + opt.report_path);
        }
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace fourierbf
