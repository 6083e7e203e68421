#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace apmm {

/// Values on the macro mesh, one per cell center (function of x only).
struct MacroField {
    std::vector<double> values;

    MacroField() = default;
    explicit MacroField(std::size_t n, double fill = 0.0) : values(n, fill) {}
    explicit MacroField(std::vector<double> v) : values(std::move(v)) {}

    std::size_t size() const { return values.size(); }
    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }
};

/// Values on the x-by-y tensor grid, periodic in y, stored row-major by x.
class MicroField {
public:
    MicroField() = default;
    MicroField(std::size_t nx, std::size_t ny, double fill = 0.0)
        : nx_(nx), ny_(ny), values_(nx * ny, fill)
    {
    }

    std::size_t nx() const { return nx_; }
    std::size_t ny() const { return ny_; }

    double& operator()(std::size_t i, std::size_t j) { return values_[i * ny_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return values_[i * ny_ + j]; }

    std::span<double> row(std::size_t i) { return {values_.data() + i * ny_, ny_}; }
    std::span<const double> row(std::size_t i) const { return {values_.data() + i * ny_, ny_}; }

    std::vector<double>& data() { return values_; }
    const std::vector<double>& data() const { return values_; }

    /// y-constant field whose row i equals macro[i].
    static MicroField lift(const MacroField& macro, std::size_t ny);

private:
    std::size_t nx_ = 0;
    std::size_t ny_ = 0;
    std::vector<double> values_;
};

inline MicroField MicroField::lift(const MacroField& macro, std::size_t ny)
{
    MicroField out(macro.size(), ny);
    for (std::size_t i = 0; i < macro.size(); ++i) {
        for (std::size_t j = 0; j < ny; ++j) out(i, j) = macro[i];
    }
    return out;
}

bool all_finite(std::span<const double> values);

}  // namespace apmm
