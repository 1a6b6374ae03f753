#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fourierbf {

/// 2-D grid of real-valued intensities, row-major. Used both for input
/// images and for the intermediate planes of the fast filtering loop.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    Image() = default;
    Image(int w, int h, double fill = 0.0) : width(w), height(h) {
        if (w < 1 || h < 1)
            throw std::invalid_argument("Image: dimensions must be positive");
        values.assign(static_cast<size_t>(w) * h, fill);
    }

    double& operator()(int x, int y) { return values[static_cast<size_t>(y) * width + x]; }
    double operator()(int x, int y) const { return values[static_cast<size_t>(y) * width + x]; }

    bool empty() const { return values.empty(); }
    size_t size() const { return values.size(); }

    bool same_size(const Image& o) const { return width == o.width && height == o.height; }
};

/// Mirror (symmetric) boundary fold: ...cba|abc...abc|cba...
/// Maps any integer index onto [0, n) by reflection at the edges.
inline int mirror_index(int i, int n) {
    if (i >= 0 && i < n) return i;
    const int period = 2 * n;
    int j = i % period;
    if (j < 0) j += period;
    return j < n ? j : period - 1 - j;
}

/// Copy with every intensity rounded half-up to the integer grid.
inline Image round_to_integers(const Image& img) {
    Image out = img;
    for (double& v : out.values) v = std::floor(v + 0.5);
    return out;
}

inline Image mirror_horizontal(const Image& img) {
    Image out(img.width, img.height);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            out(x, y) = img(img.width - 1 - x, y);
    return out;
}

inline Image mirror_vertical(const Image& img) {
    Image out(img.width, img.height);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            out(x, y) = img(x, img.height - 1 - y);
    return out;
}

}  // namespace fourierbf
