#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fourierbf/cli.hpp"

namespace {

bool parse_kernel(const std::string& text, fourierbf::CliOptions& opt) {
    if (text == "gaussian") {
        opt.kernel_family = fourierbf::RangeFamily::gaussian;
        return true;
    }
    if (text == "exponential") {
        opt.kernel_family = fourierbf::RangeFamily::exponential;
        return true;
    }
    if (text.rfind("tabulated:", 0) == 0 && text.size() > 10) {
        opt.kernel_family = fourierbf::RangeFamily::tabulated;
        opt.tabulated_path = text.substr(10);
        return true;
    }
    return false;
}

}  // namespace

int main(int argc, char** argv) {
    fourierbf::CliOptions opt;
    std::string kernel_text = "gaussian";
    std::string spatial_text = "gaussian";
    std::string backend_text = "direct";

    CLI::App app{"Fast bilateral filter via a cosine decomposition of the range kernel"};
    app.add_option("--input", opt.input_path, "input PGM image (P5 or P2)")->required();
    app.add_option("--output", opt.output_path, "output PGM image (P5)");
    app.add_option("--sigma-s", opt.sigma_s, "spatial scale")->required();
    app.add_option("--sigma-r", opt.sigma_r, "range scale (gaussian/exponential kernels)");
    app.add_option("--epsilon", opt.epsilon, "kernel approximation tolerance")
        ->capture_default_str();
    app.add_option("--kernel", kernel_text, "range kernel: gaussian|exponential|tabulated:<path>")
        ->capture_default_str();
    app.add_option("--spatial", spatial_text, "spatial window: gaussian|box")
        ->check(CLI::IsMember({"gaussian", "box"}))
        ->capture_default_str();
    app.add_option("--backend", backend_text, "convolution backend: direct|recursive")
        ->check(CLI::IsMember({"direct", "recursive"}))
        ->capture_default_str();
    app.add_flag("--compare-exact", opt.compare_exact,
                 "also run the direct filter and record the worst pixel error");
    app.add_option("--report", opt.report_path, "write a key=value accuracy report here");
    app.add_flag("--bench", opt.bench, "time the fast path across sigma sweeps, CSV to stdout");

    CLI11_PARSE(app, argc, argv);

    if (!parse_kernel(kernel_text, opt)) {
        std::cerr << "error: --kernel must be gaussian, exponential, or tabulated:<path>\n";
        return 1;
    }
    opt.spatial_kind =
        spatial_text == "box" ? fourierbf::SpatialKind::box : fourierbf::SpatialKind::gaussian;
    opt.backend = backend_text == "recursive" ? fourierbf::ConvolutionBackend::recursive
                                              : fourierbf::ConvolutionBackend::direct;

    return fourierbf::run(opt, std::cout, std::cerr);
}
