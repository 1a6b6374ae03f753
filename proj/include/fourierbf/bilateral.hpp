#pragma once

#include <cmath>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fourierbf/analysis.hpp"
#include "fourierbf/image.hpp"
#include "fourierbf/kernel_approx.hpp"
#include "fourierbf/kernels.hpp"
#include "fourierbf/spatial.hpp"

namespace fourierbf {

namespace detail {

/// Sliding-window maximum along each row, window [-W, W], mirror padding.
/// Monotonic-deque scan, so the cost per pixel is independent of W.
inline void row_sliding_max(Plane& img, int W) {
    const int n = img.width;
    const int span = 2 * W + 1;
    std::vector<double> padded(static_cast<size_t>(n + 2 * W));
    std::deque<int> hold;  // indices into padded, values strictly decreasing
    for (int y = 0; y < img.height; ++y) {
        double* row = &img.values[static_cast<size_t>(y) * n];
        for (int i = 0; i < n + 2 * W; ++i)
            padded[static_cast<size_t>(i)] = row[mirror_index(i - W, n)];
        hold.clear();
        for (int i = 0; i < n + 2 * W; ++i) {
            while (!hold.empty() && padded[static_cast<size_t>(hold.back())] <=
                                        padded[static_cast<size_t>(i)])
                hold.pop_back();
            hold.push_back(i);
            if (hold.front() <= i - span) hold.pop_front();
            if (i >= 2 * W) row[i - 2 * W] = padded[static_cast<size_t>(hold.front())];
        }
    }
}

/// Windowed max (or min) over the full (2W+1)^2 square, computed as two
/// 1-D passes; min reuses the max scan on the negated plane.
inline Plane window_extreme(const Plane& img, int W, bool maximum) {
    Plane work = img;
    if (!maximum)
        for (double& v : work.values) v = -v;
    row_sliding_max(work, W);
    work = transpose(work);
    row_sliding_max(work, W);
    work = transpose(work);
    if (!maximum)
        for (double& v : work.values) v = -v;
    return work;
}

}  // namespace detail

/// Largest intensity spread seen inside any single filtering window:
/// ceil of max over pixels of (windowed max - windowed min), with the
/// same mirror padding the filter itself uses.
inline int local_dynamic_range(const Image& image, int W) {
    if (image.width <= 0 || image.height <= 0)
        throw std::invalid_argument("local_dynamic_range: empty image");
    if (W < 1) throw std::invalid_argument("local_dynamic_range: window radius must be positive");
    const Plane hi = detail::window_extreme(image, W, true);
    const Plane lo = detail::window_extreme(image, W, false);
    double spread = 0.0;
    for (size_t i = 0; i < hi.values.size(); ++i)
        spread = std::max(spread, hi.values[i] - lo.values[i]);
    return static_cast<int>(std::ceil(spread));
}

/// Direct evaluation of the bilateral filter by window iteration.
/// Serves as the accuracy reference; cost grows with the window area.
inline Image bilateral_exact(const Image& image, const SpatialKernel& spatial,
                             const RangeKernel& range) {
    if (image.width <= 0 || image.height <= 0)
        throw std::invalid_argument("bilateral_exact: empty image");
    const int W = spatial.radius;
    Image out(image.width, image.height);
    for (int y = 0; y < image.height; ++y) {
        for (int x = 0; x < image.width; ++x) {
            const double center = image(x, y);
            double num = 0.0, den = 0.0;
            for (int dy = -W; dy <= W; ++dy) {
                const int sy = mirror_index(y - dy, image.height);
                for (int dx = -W; dx <= W; ++dx) {
                    const int sx = mirror_index(x - dx, image.width);
                    const double v = image(sx, sy);
                    const double wgt = spatial.weight(dx, dy) * range.eval(v - center);
                    num += wgt * v;
                    den += wgt;
                }
            }
            out(x, y) = num / den;
        }
    }
    return out;
}

/// Bilateral filtering through the cosine decomposition of the range
/// kernel: each harmonic contributes two modulated planes whose spatial
/// convolutions assemble the numerator P and denominator Q. Harmonics are
/// accumulated in ascending order for reproducible output, and the
/// division happens once per pixel at the end.
inline Image bilateral_fast(const Image& image, const SpatialKernel& spatial,
                            const FourierKernelApprox& approx,
                            ConvolutionBackend backend = ConvolutionBackend::direct) {
    if (image.width <= 0 || image.height <= 0)
        throw std::invalid_argument("bilateral_fast: empty image");
    const double eps = approx.max_pointwise_error;
    if (!(eps < spatial.w0))
        throw std::invalid_argument(
            "bilateral_fast: kernel approximation error must stay below the center "
            "spatial weight");

    const int w = image.width, h = image.height;
    const size_t count = image.values.size();
    Plane P(w, h), Q(w, h);
    Plane cosn(w, h), sinn(w, h), fcos(w, h), fsin(w, h);

    for (int n = 0; n <= approx.N; ++n) {
        const double freq = approx.omega * n;
        for (size_t i = 0; i < count; ++i) {
            const double phase = freq * image.values[i];
            cosn.values[i] = std::cos(phase);
            sinn.values[i] = std::sin(phase);
            fcos.values[i] = cosn.values[i] * image.values[i];
            fsin.values[i] = sinn.values[i] * image.values[i];
        }
        const Plane fcos_s = convolve(fcos, spatial, backend);
        const Plane fsin_s = convolve(fsin, spatial, backend);
        const Plane cos_s = convolve(cosn, spatial, backend);
        const Plane sin_s = convolve(sinn, spatial, backend);
        const double dn = approx.d[static_cast<size_t>(n)];
        for (size_t i = 0; i < count; ++i) {
            P.values[i] += dn * (cosn.values[i] * fcos_s.values[i] +
                                 sinn.values[i] * fsin_s.values[i]);
            Q.values[i] += dn * (cosn.values[i] * cos_s.values[i] +
                                 sinn.values[i] * sin_s.values[i]);
        }
    }

    const double q_floor = (spatial.w0 - eps) / 2.0;
    Image out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const size_t i = static_cast<size_t>(y) * w + x;
            if (std::abs(Q.values[i]) < q_floor)
                throw std::runtime_error(
                    "bilateral_fast: numerical anomaly, denominator collapsed at pixel (" +
                    std::to_string(x) + ", " + std::to_string(y) + ")");
            out.values[i] = P.values[i] / Q.values[i];
        }
    }
    return out;
}

struct FilterConfig {
    SpatialKernel spatial;
    RangeKernel range;
    double epsilon = 1e-3;
    bool integer_intensities = true;
    ConvolutionBackend backend = ConvolutionBackend::direct;
};

/// End-to-end pipeline: measure the local dynamic range, fit the range
/// kernel to the requested tolerance, filter, and account for accuracy.
/// A constant window structure (T = 0) short-circuits to the identity.
inline std::pair<Image, AccuracyReport> filter(const Image& image, const FilterConfig& config) {
    if (!(config.epsilon > 0.0)) throw std::invalid_argument("filter: tolerance must be positive");
    if (!(config.epsilon < config.spatial.w0))
        throw std::invalid_argument(
            "filter: tolerance must stay below the center spatial weight w(0); lower "
            "--epsilon or reduce the spatial radius");

    const bool weaker = !config.integer_intensities;
    Image working = image;
    if (config.integer_intensities) working = round_to_integers(working);

    const int T = local_dynamic_range(working, config.spatial.radius);
    if (T == 0) {
        AccuracyReport report =
            make_report(0, config.epsilon, 0.0, std::nullopt, config.spatial.w0, weaker);
        return {image, report};
    }

    const FourierKernelApprox approx = progressive_fit(config.range, T, config.epsilon);
    Image out = bilateral_fast(working, config.spatial, approx, config.backend);
    AccuracyReport report = make_report(T, config.epsilon, approx.max_pointwise_error, approx.N,
                                        config.spatial.w0, weaker);
    return {std::move(out), report};
}

}  // namespace fourierbf
