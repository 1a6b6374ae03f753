#pragma once

#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fourierbf {

enum class RangeFamily { gaussian, exponential, tabulated };

/// Symmetric range kernel phi(t) with phi(0) = 1 and 0 <= phi <= 1.
/// Tabulated kernels are defined on the integer grid t = 0..T; non-integer
/// queries round to the nearest integer abscissa.
class RangeKernel {
public:
    static RangeKernel gaussian(double sigma_r) {
        require_sigma(sigma_r);
        RangeKernel k;
        k.family_ = RangeFamily::gaussian;
        k.sigma_r_ = sigma_r;
        return k;
    }

    static RangeKernel exponential(double sigma_r) {
        require_sigma(sigma_r);
        RangeKernel k;
        k.family_ = RangeFamily::exponential;
        k.sigma_r_ = sigma_r;
        return k;
    }

    static RangeKernel tabulated(std::vector<double> table) {
        if (table.empty())
            throw std::invalid_argument("RangeKernel: table must not be empty");
        if (table[0] != 1.0)
            throw std::invalid_argument("RangeKernel: table[0] must equal 1.0");
        for (size_t t = 0; t < table.size(); ++t) {
            if (!(table[t] >= 0.0 && table[t] <= 1.0))
                throw std::invalid_argument("RangeKernel: table values must lie in [0,1] (line " +
                                            std::to_string(t + 1) + ")");
        }
        RangeKernel k;
        k.family_ = RangeFamily::tabulated;
        k.table_ = std::move(table);
        return k;
    }

    /// Load a tabulated kernel from a plain-text file: one real per line,
    /// line index = t, first line must equal 1.0.
    static RangeKernel tabulated_from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("RangeKernel: cannot open '" + path + "'");
        std::vector<double> table;
        std::string line;
        size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            // allow blank trailing lines
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            std::istringstream ls(line);
            double v;
            if (!(ls >> v))
                throw std::runtime_error("RangeKernel: '" + path + "' line " +
                                         std::to_string(lineno) + ": not a number");
            table.push_back(v);
        }
        if (table.empty())
            throw std::runtime_error("RangeKernel: '" + path + "' contains no samples");
        return tabulated(std::move(table));
    }

    /// phi(|t|). Returns 1 at t = 0 for every family.
    double eval(double t) const {
        const double a = std::abs(t);
        switch (family_) {
            case RangeFamily::gaussian:
                return std::exp(-(a * a) / (2.0 * sigma_r_ * sigma_r_));
            case RangeFamily::exponential:
                return std::exp(-a / sigma_r_);
            case RangeFamily::tabulated: {
                const auto idx = static_cast<long long>(std::llround(a));
                if (idx >= static_cast<long long>(table_.size()))
                    throw std::out_of_range("RangeKernel: |t|=" + std::to_string(a) +
                                            " outside table of size " +
                                            std::to_string(table_.size()));
                return table_[static_cast<size_t>(idx)];
            }
        }
        return 0.0;  // unreachable
    }

    RangeFamily family() const { return family_; }
    double sigma_r() const { return sigma_r_; }
    const std::vector<double>& table() const { return table_; }

private:
    RangeKernel() = default;

    static void require_sigma(double sigma_r) {
        if (!(sigma_r > 0.0))
            throw std::invalid_argument("RangeKernel: sigma_r must be positive");
    }

    RangeFamily family_ = RangeFamily::gaussian;
    double sigma_r_ = 0.0;
    std::vector<double> table_;
};

}  // namespace fourierbf
