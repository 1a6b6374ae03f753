#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fourierbf/image.hpp"
#include "fourierbf/recursive_gaussian.hpp"

namespace fourierbf {

enum class SpatialKind { gaussian, box };

enum class ConvolutionBackend {
    direct,     ///< separable FIR, O(W) per pixel, exact
    recursive,  ///< IIR Gaussian, O(1) per pixel, approximate
};

/// Separable, symmetric, non-negative spatial window on [-W, W]^2.
/// The 2-D weight factorizes as profile[dx+W] * profile[dy+W] and the
/// 1-D profile sums to one, so the full window sums to one as well.
struct SpatialKernel {
    SpatialKind kind = SpatialKind::gaussian;
    double sigma_s = 0.0;         // meaningful for the gaussian kind only
    int radius = 1;               // W
    std::vector<double> profile;  // 2W+1 normalized taps
    double w0 = 0.0;              // center weight profile[W]^2

    double weight(int dx, int dy) const {
        return profile[static_cast<size_t>(dx + radius)] *
               profile[static_cast<size_t>(dy + radius)];
    }
};

/// Gaussian window, truncated at W = ceil(3 sigma_s) and renormalized.
inline SpatialKernel make_spatial_gaussian(double sigma_s) {
    if (!(sigma_s > 0.0)) throw std::invalid_argument("spatial sigma must be positive");
    SpatialKernel k;
    k.kind = SpatialKind::gaussian;
    k.sigma_s = sigma_s;
    k.radius = static_cast<int>(std::ceil(3.0 * sigma_s));
    k.profile.resize(static_cast<size_t>(2 * k.radius + 1));
    double sum = 0.0;
    for (int j = -k.radius; j <= k.radius; ++j) {
        const double v = std::exp(-(static_cast<double>(j) * j) / (2.0 * sigma_s * sigma_s));
        k.profile[static_cast<size_t>(j + k.radius)] = v;
        sum += v;
    }
    for (double& v : k.profile) v /= sum;
    k.w0 = k.profile[static_cast<size_t>(k.radius)] * k.profile[static_cast<size_t>(k.radius)];
    return k;
}

/// Uniform window of the given radius.
inline SpatialKernel make_spatial_box(int radius) {
    if (radius < 1) throw std::invalid_argument("box radius must be at least 1");
    SpatialKernel k;
    k.kind = SpatialKind::box;
    k.sigma_s = 0.0;
    k.radius = radius;
    const double tap = 1.0 / (2.0 * radius + 1.0);
    k.profile.assign(static_cast<size_t>(2 * radius + 1), tap);
    k.w0 = tap * tap;
    return k;
}

using Plane = Image;

namespace detail {

/// One separable pass along x: out(i) = sum_j profile[j+W] * in(i-j),
/// accumulated in ascending j for a fixed, reproducible summation order.
/// Boundaries are mirror-extended through a padded line buffer.
inline void convolve_rows(Plane& img, const std::vector<double>& profile, int radius) {
    const int w = img.width;
    std::vector<double> padded(static_cast<size_t>(w + 2 * radius));
    for (int y = 0; y < img.height; ++y) {
        double* row = &img.values[static_cast<size_t>(y) * w];
        for (int i = 0; i < w + 2 * radius; ++i)
            padded[static_cast<size_t>(i)] = row[mirror_index(i - radius, w)];
        for (int i = 0; i < w; ++i) {
            double acc = 0.0;
            for (int j = -radius; j <= radius; ++j)
                acc += profile[static_cast<size_t>(j + radius)] *
                       padded[static_cast<size_t>(i - j + radius)];
            row[i] = acc;
        }
    }
}

}  // namespace detail

/// Convolves a plane with the kernel's separable window under mirror
/// boundary extension. The recursive backend substitutes an IIR Gaussian
/// of the same sigma; it is an approximation and falls back to the exact
/// direct path for box windows and below sigma 2, where the third-order
/// recursion loses accuracy and the direct window is short anyway.
inline Plane convolve(const Plane& plane, const SpatialKernel& kernel,
                      ConvolutionBackend backend = ConvolutionBackend::direct) {
    if (plane.width <= 0 || plane.height <= 0)
        throw std::invalid_argument("convolve: empty plane");

    if (backend == ConvolutionBackend::recursive && kernel.kind == SpatialKind::gaussian &&
        kernel.sigma_s >= 2.0)
        return detail::gaussian_recursive(plane, kernel.sigma_s);

    Plane out = plane;
    detail::convolve_rows(out, kernel.profile, kernel.radius);
    out = detail::transpose(out);
    detail::convolve_rows(out, kernel.profile, kernel.radius);
    return detail::transpose(out);
}

}  // namespace fourierbf
