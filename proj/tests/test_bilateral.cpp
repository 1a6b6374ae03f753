#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "fourierbf/analysis.hpp"
#include "fourierbf/bilateral.hpp"
#include "fourierbf/image.hpp"
#include "fourierbf/kernel_approx.hpp"
#include "fourierbf/kernels.hpp"
#include "fourierbf/spatial.hpp"

using fourierbf::bilateral_exact;
using fourierbf::bilateral_fast;
using fourierbf::convolve;
using fourierbf::error_bound;
using fourierbf::filter;
using fourierbf::FilterConfig;
using fourierbf::FourierKernelApprox;
using fourierbf::Image;
using fourierbf::linf_error;
using fourierbf::local_dynamic_range;
using fourierbf::make_spatial_box;
using fourierbf::make_spatial_gaussian;
using fourierbf::mirror_horizontal;
using fourierbf::mirror_index;
using fourierbf::mirror_vertical;
using fourierbf::progressive_fit;
using fourierbf::RangeKernel;
using fourierbf::SpatialKernel;

namespace {

Image random_integer_image(int w, int h, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dist(0, 255);
    Image img(w, h);
    for (double& v : img.values) v = dist(rng);
    return img;
}

// Scalar re-statement of the weighted-average definition, written
// independently of the library's window iteration.
Image reference_bilateral(const Image& f, const SpatialKernel& s, const RangeKernel& phi) {
    Image out(f.width, f.height);
    for (int y = 0; y < f.height; ++y)
        for (int x = 0; x < f.width; ++x) {
            double num = 0.0, den = 0.0;
            for (int jy = -s.radius; jy <= s.radius; ++jy)
                for (int jx = -s.radius; jx <= s.radius; ++jx) {
                    const double neighbor =
                        f(mirror_index(x - jx, f.width), mirror_index(y - jy, f.height));
                    const double w =
                        s.weight(jx, jy) * phi.eval(neighbor - f(x, y));
                    num += w * neighbor;
                    den += w;
                }
            out(x, y) = num / den;
        }
    return out;
}

// Brute-force windowed max minus min.
int reference_dynamic_range(const Image& f, int W) {
    double spread = 0.0;
    for (int y = 0; y < f.height; ++y)
        for (int x = 0; x < f.width; ++x) {
            double hi = -1e300, lo = 1e300;
            for (int jy = -W; jy <= W; ++jy)
                for (int jx = -W; jx <= W; ++jx) {
                    const double v =
                        f(mirror_index(x - jx, f.width), mirror_index(y - jy, f.height));
                    hi = std::max(hi, v);
                    lo = std::min(lo, v);
                }
            spread = std::max(spread, hi - lo);
        }
    return static_cast<int>(std::ceil(spread));
}

// Modulated-planes reference in complex arithmetic: one term per signed
// harmonic, convolutions via the library's spatial path on real and
// imaginary parts separately. Returns the complex ratio per pixel.
std::vector<std::complex<double>> complex_fast_reference(const Image& f, const SpatialKernel& s,
                                                         const FourierKernelApprox& approx) {
    const size_t count = f.values.size();
    const std::vector<double> c = approx.complex_coeffs();
    std::vector<std::complex<double>> P(count), Q(count);
    for (int n = -approx.N; n <= approx.N; ++n) {
        const double cn = c[static_cast<size_t>(n + approx.N)];
        Image g_re(f.width, f.height), g_im(f.width, f.height);
        Image fg_re(f.width, f.height), fg_im(f.width, f.height);
        for (size_t i = 0; i < count; ++i) {
            const double phase = n * approx.omega * f.values[i];
            g_re.values[i] = std::cos(phase);
            g_im.values[i] = std::sin(phase);
            fg_re.values[i] = g_re.values[i] * f.values[i];
            fg_im.values[i] = g_im.values[i] * f.values[i];
        }
        const Image fbar_re = convolve(fg_re, s);
        const Image fbar_im = convolve(fg_im, s);
        const Image gbar_re = convolve(g_re, s);
        const Image gbar_im = convolve(g_im, s);
        for (size_t i = 0; i < count; ++i) {
            const std::complex<double> conj_g(g_re.values[i], -g_im.values[i]);
            const std::complex<double> h = cn * conj_g;
            P[i] += h * std::complex<double>(fbar_re.values[i], fbar_im.values[i]);
            Q[i] += h * std::complex<double>(gbar_re.values[i], gbar_im.values[i]);
        }
    }
    std::vector<std::complex<double>> ratio(count);
    for (size_t i = 0; i < count; ++i) ratio[i] = P[i] / Q[i];
    return ratio;
}

FourierKernelApprox identity_approx(int T) {
    FourierKernelApprox a;
    a.T = T;
    a.omega = std::numbers::pi / T;
    a.N = 0;
    a.d = {1.0};
    a.residual_norm = 0.0;
    a.max_pointwise_error = 0.0;
    return a;
}

}  // namespace

TEST(LocalDynamicRange, KnownSmallCases) {
    EXPECT_EQ(local_dynamic_range(Image(5, 4, 9.0), 2), 0);

    Image img(2, 2);
    img(0, 0) = 0.0;
    img(1, 0) = 255.0;
    img(0, 1) = 0.0;
    img(1, 1) = 255.0;
    EXPECT_EQ(local_dynamic_range(img, 1), 255);
}

TEST(LocalDynamicRange, MatchesBruteForceOracle) {
    for (unsigned seed = 0; seed < 6; ++seed) {
        const Image img = random_integer_image(seed % 2 ? 7 : 16, seed % 3 ? 5 : 12, seed);
        for (const int W : {1, 2, 5})
            EXPECT_EQ(local_dynamic_range(img, W), reference_dynamic_range(img, W))
                << "seed " << seed << " W " << W;
    }
}

TEST(LocalDynamicRange, CeilsFractionalSpreads) {
    Image img(3, 1, 0.0);
    img(1, 0) = 1.25;
    EXPECT_EQ(local_dynamic_range(img, 1), 2);
}

TEST(LocalDynamicRange, ValidatesArguments) {
    EXPECT_THROW(local_dynamic_range(Image(), 1), std::invalid_argument);
    EXPECT_THROW(local_dynamic_range(Image(4, 4, 0.0), 0), std::invalid_argument);
}

TEST(BilateralExact, ConstantImagePassesThrough) {
    const Image img(9, 6, 77.0);
    const Image out = bilateral_exact(img, make_spatial_gaussian(2.0), RangeKernel::gaussian(20.0));
    for (const double v : out.values) EXPECT_NEAR(v, 77.0, 1e-12);
}

TEST(BilateralExact, AllOnesRangeKernelReducesToConvolution) {
    const Image img = random_integer_image(12, 10, 21);
    const SpatialKernel s = make_spatial_gaussian(1.5);
    const RangeKernel ones = RangeKernel::tabulated(std::vector<double>(256, 1.0));
    const Image a = bilateral_exact(img, s, ones);
    const Image b = convolve(img, s);
    for (size_t i = 0; i < a.values.size(); ++i) EXPECT_NEAR(a.values[i], b.values[i], 1e-11);
}

TEST(BilateralExact, MatchesIndependentScalarOracle) {
    const Image img = random_integer_image(5, 5, 33);
    for (const SpatialKernel& s : {make_spatial_box(1), make_spatial_gaussian(1.0)}) {
        for (const RangeKernel& phi :
             {RangeKernel::gaussian(30.0), RangeKernel::exponential(25.0)}) {
            const Image a = bilateral_exact(img, s, phi);
            const Image b = reference_bilateral(img, s, phi);
            for (size_t i = 0; i < a.values.size(); ++i)
                ASSERT_NEAR(a.values[i], b.values[i], 1e-12);
        }
    }
}

TEST(BilateralExact, OutputStaysInsideInputRange) {
    const Image img = random_integer_image(16, 16, 55);
    double lo = 1e300, hi = -1e300;
    for (const double v : img.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const Image out = bilateral_exact(img, make_spatial_gaussian(2.0), RangeKernel::gaussian(15.0));
    for (const double v : out.values) {
        EXPECT_GE(v, lo - 1e-9);
        EXPECT_LE(v, hi + 1e-9);
    }
}

TEST(BilateralExact, ShiftEquivariant) {
    const Image img = random_integer_image(10, 8, 66);
    Image shifted = img;
    for (double& v : shifted.values) v += 40.0;
    const SpatialKernel s = make_spatial_gaussian(1.0);
    const RangeKernel phi = RangeKernel::gaussian(20.0);
    const Image a = bilateral_exact(shifted, s, phi);
    const Image b = bilateral_exact(img, s, phi);
    for (size_t i = 0; i < a.values.size(); ++i)
        EXPECT_NEAR(a.values[i], b.values[i] + 40.0, 1e-10);
}

TEST(BilateralFast, ConstantImagePassesThrough) {
    const Image img(8, 8, 120.0);
    const SpatialKernel s = make_spatial_gaussian(1.0);
    const FourierKernelApprox approx = progressive_fit(RangeKernel::gaussian(30.0), 255, 1e-3);
    const Image out = bilateral_fast(img, s, approx);
    for (const double v : out.values) EXPECT_NEAR(v, 120.0, 1e-10);
}

TEST(BilateralFast, IdentityApproximationReducesToConvolution) {
    const Image img = random_integer_image(14, 9, 77);
    const SpatialKernel s = make_spatial_gaussian(2.0);
    const Image a = bilateral_fast(img, s, identity_approx(255));
    const Image b = convolve(img, s);
    for (size_t i = 0; i < a.values.size(); ++i) EXPECT_NEAR(a.values[i], b.values[i], 1e-12);
}

TEST(BilateralFast, MatchesComplexModulationReference) {
    const Image img = random_integer_image(16, 16, 88);
    const SpatialKernel s = make_spatial_gaussian(2.0);
    const int T = local_dynamic_range(img, s.radius);
    const FourierKernelApprox approx = progressive_fit(RangeKernel::gaussian(30.0), T, 1e-3);
    const Image fast = bilateral_fast(img, s, approx);
    const auto ref = complex_fast_reference(img, s, approx);
    for (size_t i = 0; i < fast.values.size(); ++i) {
        ASSERT_NEAR(fast.values[i], ref[i].real(), 1e-9);
        ASSERT_LE(std::abs(ref[i].imag()), 1e-9);
    }
}

TEST(BilateralFast, StaysWithinTheGuaranteedBound) {
    const Image img = random_integer_image(64, 64, 99);
    const SpatialKernel s = make_spatial_gaussian(2.0);
    const RangeKernel phi = RangeKernel::gaussian(30.0);
    const int T = local_dynamic_range(img, s.radius);
    const FourierKernelApprox approx = progressive_fit(phi, T, 1e-3);
    const Image fast = bilateral_fast(img, s, approx);
    const Image exact = bilateral_exact(img, s, phi);
    const double bound = error_bound(T, approx.max_pointwise_error, s.w0);
    EXPECT_LE(linf_error(exact, fast), bound);
}

TEST(BilateralFast, ShiftEquivariantUnderTheSameApproximation) {
    const Image img = random_integer_image(12, 12, 101);
    Image shifted = img;
    for (double& v : shifted.values) v += 10.0;
    const SpatialKernel s = make_spatial_gaussian(1.0);
    const FourierKernelApprox approx = progressive_fit(RangeKernel::gaussian(25.0), 255, 1e-4);
    const Image a = bilateral_fast(shifted, s, approx);
    const Image b = bilateral_fast(img, s, approx);
    for (size_t i = 0; i < a.values.size(); ++i)
        EXPECT_NEAR(a.values[i], b.values[i] + 10.0, 1e-9);
}

TEST(BilateralFast, CommutesWithMirroring) {
    const Image img = random_integer_image(13, 9, 111);
    const SpatialKernel s = make_spatial_gaussian(1.5);
    const int T = local_dynamic_range(img, s.radius);
    const FourierKernelApprox approx = progressive_fit(RangeKernel::gaussian(30.0), T, 1e-3);
    const Image a = bilateral_fast(mirror_horizontal(img), s, approx);
    const Image b = mirror_horizontal(bilateral_fast(img, s, approx));
    for (size_t i = 0; i < a.values.size(); ++i) EXPECT_NEAR(a.values[i], b.values[i], 1e-10);
    const Image c = bilateral_fast(mirror_vertical(img), s, approx);
    const Image d = mirror_vertical(bilateral_fast(img, s, approx));
    for (size_t i = 0; i < c.values.size(); ++i) EXPECT_NEAR(c.values[i], d.values[i], 1e-10);
}

TEST(BilateralFast, AccuracyImprovesWithTighterTolerance) {
    const Image img = random_integer_image(32, 32, 123);
    const SpatialKernel s = make_spatial_gaussian(1.0);
    const RangeKernel phi = RangeKernel::gaussian(30.0);
    const int T = local_dynamic_range(img, s.radius);
    const Image exact = bilateral_exact(img, s, phi);
    const Image loose = bilateral_fast(img, s, progressive_fit(phi, T, 1e-2));
    const Image tight = bilateral_fast(img, s, progressive_fit(phi, T, 1e-5));
    EXPECT_LE(linf_error(exact, tight), linf_error(exact, loose));
}

TEST(BilateralFast, RejectsApproximationWiderThanCenterWeight) {
    const Image img = random_integer_image(8, 8, 7);
    FourierKernelApprox bad = identity_approx(255);
    bad.max_pointwise_error = 0.5;
    EXPECT_THROW(bilateral_fast(img, make_spatial_gaussian(3.0), bad), std::invalid_argument);
}

TEST(BilateralFast, CollapsedDenominatorNamesThePixel) {
    const Image img = random_integer_image(6, 6, 8);
    FourierKernelApprox lying = identity_approx(255);
    lying.d = {0.0};
    try {
        bilateral_fast(img, make_spatial_gaussian(1.0), lying);
        FAIL() << "expected a numerical-anomaly failure";
    } catch (const std::runtime_error& e) {
        EXPECT_NE(std::string(e.what()).find("pixel (0, 0)"), std::string::npos) << e.what();
    }
}

TEST(Filter, ConstantImageShortCircuits) {
    const Image img(8, 8, 42.0);
    const FilterConfig cfg{make_spatial_gaussian(2.0), RangeKernel::gaussian(30.0), 1e-3, true,
                           fourierbf::ConvolutionBackend::direct};
    const auto [out, report] = filter(img, cfg);
    EXPECT_EQ(out.values, img.values);
    EXPECT_EQ(report.T, 0);
    EXPECT_FALSE(report.N.has_value());
    EXPECT_DOUBLE_EQ(report.predicted_bound, 0.0);
    EXPECT_FALSE(report.weaker_guarantee_flag);
}

TEST(Filter, ReportsTheFitAndTheBound) {
    const Image img = random_integer_image(24, 24, 200);
    const SpatialKernel s = make_spatial_gaussian(2.0);
    const RangeKernel phi = RangeKernel::gaussian(30.0);
    const FilterConfig cfg{s, phi, 1e-3, true, fourierbf::ConvolutionBackend::direct};
    const auto [out, report] = filter(img, cfg);

    EXPECT_EQ(report.T, local_dynamic_range(img, s.radius));
    const FourierKernelApprox approx = progressive_fit(phi, report.T, 1e-3);
    ASSERT_TRUE(report.N.has_value());
    EXPECT_EQ(*report.N, approx.N);
    EXPECT_DOUBLE_EQ(report.epsilon_requested, 1e-3);
    EXPECT_DOUBLE_EQ(report.epsilon_achieved, approx.max_pointwise_error);
    EXPECT_DOUBLE_EQ(report.predicted_bound,
                     error_bound(report.T, report.epsilon_achieved, s.w0));
    EXPECT_FALSE(report.measured_linf.has_value());

    const Image exact = bilateral_exact(img, s, phi);
    EXPECT_LE(linf_error(exact, out), report.predicted_bound);
}

TEST(Filter, RoundsIntensitiesWhenRequested) {
    Image img = random_integer_image(10, 10, 17);
    Image jittered = img;
    for (double& v : jittered.values) v += 0.25;
    const FilterConfig cfg{make_spatial_gaussian(1.0), RangeKernel::gaussian(20.0), 1e-3, true,
                           fourierbf::ConvolutionBackend::direct};
    const auto [a, ra] = filter(img, cfg);
    const auto [b, rb] = filter(jittered, cfg);
    EXPECT_EQ(ra.T, rb.T);
    for (size_t i = 0; i < a.values.size(); ++i) EXPECT_NEAR(a.values[i], b.values[i], 1e-12);
    EXPECT_FALSE(rb.weaker_guarantee_flag);
}

TEST(Filter, FlagsNonIntegerRuns) {
    Image img = random_integer_image(10, 10, 18);
    for (double& v : img.values) v += 0.5;
    const FilterConfig cfg{make_spatial_gaussian(1.0), RangeKernel::gaussian(20.0), 1e-3, false,
                           fourierbf::ConvolutionBackend::direct};
    const auto [out, report] = filter(img, cfg);
    EXPECT_TRUE(report.weaker_guarantee_flag);
    EXPECT_GT(report.T, 0);
}

TEST(Filter, RejectsToleranceAtOrAboveCenterWeight) {
    const Image img = random_integer_image(8, 8, 19);
    const FilterConfig cfg{make_spatial_gaussian(3.0), RangeKernel::gaussian(30.0), 0.02, true,
                           fourierbf::ConvolutionBackend::direct};
    EXPECT_THROW(filter(img, cfg), std::invalid_argument);
}
