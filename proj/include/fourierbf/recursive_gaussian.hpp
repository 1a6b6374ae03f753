#pragma once

#include <cmath>
#include <vector>

#include "fourierbf/image.hpp"

// Recursive (IIR) Gaussian smoothing with run-time independent of sigma,
// third-order filter after van Vliet, Young and Verbeek. Boundary handling
// keeps the library's mirror convention by warming the recursion up on a
// mirrored pad instead of correcting the tail states analytically.

namespace fourierbf::detail {

struct VyvCoeffs {
    double a1, a2, a3;  // feedback taps, already divided by b0
    double gain;        // feedforward gain, normalizes DC to 1
};

inline VyvCoeffs vyv_coeffs(double sigma) {
    const double q = sigma >= 2.5 ? 0.98711 * sigma - 0.96330
                                  : 3.97156 - 4.14554 * std::sqrt(1.0 - 0.26891 * sigma);
    const double q2 = q * q, q3 = q2 * q;
    const double b0 = 1.57825 + 2.44413 * q + 1.42810 * q2 + 0.422205 * q3;
    const double b1 = 2.44413 * q + 2.85619 * q2 + 1.26661 * q3;
    const double b2 = -(1.42810 * q2 + 1.26661 * q3);
    const double b3 = 0.422205 * q3;
    VyvCoeffs c;
    c.a1 = b1 / b0;
    c.a2 = b2 / b0;
    c.a3 = b3 / b0;
    c.gain = 1.0 - (c.a1 + c.a2 + c.a3);
    return c;
}

inline int vyv_pad(double sigma) { return static_cast<int>(std::ceil(4.0 * sigma)) + 12; }

/// Smooths one line in place through `buf`, which must have room for
/// n + 2*pad samples. The pad region is filled by mirror reflection.
inline void vyv_line(double* line, int n, const VyvCoeffs& c, int pad, std::vector<double>& buf) {
    const int m = n + 2 * pad;
    buf.resize(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) buf[static_cast<size_t>(i)] = line[mirror_index(i - pad, n)];

    // forward pass; constant start-up state equals the first padded sample
    double y1 = buf[0], y2 = buf[0], y3 = buf[0];
    for (int i = 0; i < m; ++i) {
        const double y = c.gain * buf[static_cast<size_t>(i)] + c.a1 * y1 + c.a2 * y2 + c.a3 * y3;
        buf[static_cast<size_t>(i)] = y;
        y3 = y2;
        y2 = y1;
        y1 = y;
    }
    // backward pass
    y1 = y2 = y3 = buf[static_cast<size_t>(m - 1)];
    for (int i = m; i-- > 0;) {
        const double y = c.gain * buf[static_cast<size_t>(i)] + c.a1 * y1 + c.a2 * y2 + c.a3 * y3;
        buf[static_cast<size_t>(i)] = y;
        y3 = y2;
        y2 = y1;
        y1 = y;
    }
    for (int i = 0; i < n; ++i) line[i] = buf[static_cast<size_t>(i + pad)];
}

inline Image transpose(const Image& img) {
    Image out(img.height, img.width);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) out(y, x) = img(x, y);
    return out;
}

inline Image gaussian_recursive(const Image& img, double sigma) {
    const VyvCoeffs c = vyv_coeffs(sigma);
    const int pad = vyv_pad(sigma);
    std::vector<double> buf;

    Image out = img;
    for (int y = 0; y < out.height; ++y)
        vyv_line(&out.values[static_cast<size_t>(y) * out.width], out.width, c, pad, buf);
    out = transpose(out);
    for (int y = 0; y < out.height; ++y)
        vyv_line(&out.values[static_cast<size_t>(y) * out.width], out.width, c, pad, buf);
    return transpose(out);
}

}  // namespace fourierbf::detail
