#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace apmm {

/// Thomas-algorithm factorization of a tridiagonal matrix.
///
/// Row i reads sub[i]*x[i-1] + diag[i]*x[i] + sup[i]*x[i+1]; sub[0] and sup[n-1] are ignored.
/// No pivoting: the matrix is expected to be diagonally dominant.
class TridiagonalFactor {
public:
    TridiagonalFactor() = default;
    TridiagonalFactor(std::span<const double> sub, std::span<const double> diag,
                      std::span<const double> sup);

    std::size_t size() const { return inv_pivot_.size(); }
    void solve_in_place(std::span<double> x) const;

private:
    std::vector<double> sub_;
    std::vector<double> sup_scaled_;
    std::vector<double> inv_pivot_;
};

/// Direct solver for periodic (cyclic) tridiagonal systems, optionally plus shift * 1 1^T.
///
/// The corner entries are peeled off as a rank-one correction (Sherman-Morrison) around a
/// plain tridiagonal factorization; a nonzero `rank_one_shift` adds a second rank-one term,
/// which is how the bordered zero-mean system for the singular periodic Laplacian is solved.
/// T^{-1} applied to the correction columns is precomputed, so each solve costs one Thomas
/// sweep plus a couple of dot products.
class CyclicTridiagonal {
public:
    CyclicTridiagonal() = default;
    CyclicTridiagonal(std::span<const double> sub, std::span<const double> diag,
                      std::span<const double> sup, double rank_one_shift = 0.0);

    std::size_t size() const { return base_.size(); }
    void solve_in_place(std::span<double> x) const;
    std::vector<double> solve(std::span<const double> rhs) const;

private:
    TridiagonalFactor base_;
    std::size_t rank_ = 0;
    // Correction columns U = [u, shift*1] and rows V = [v, 1]; Z = T^{-1} U.
    std::array<std::vector<double>, 2> z_;
    std::array<std::vector<double>, 2> v_;
    std::array<std::array<double, 2>, 2> capacitance_inv_{};
};

}  // namespace apmm
