#pragma once

#include <span>
#include <vector>

#include "apmm/fields.hpp"
#include "apmm/homogenization.hpp"
#include "apmm/problem.hpp"
#include "apmm/tridiagonal.hpp"

namespace apmm {

/// Wall values of a macro field at x=0 and x=1.
struct MacroBoundary {
    double left = 0.0;
    double right = 0.0;
};

/// Wall traces of a micro field, one value per y node. Empty vectors mean zero data.
struct MicroBoundary {
    std::vector<double> left;
    std::vector<double> right;
};

/// Periodic y-average per x slice.
MacroField project_pi(const MicroField& u);

/// u - Pi u, slice by slice.
MicroField remove_mean(const MicroField& u);

/// Periodic flux-form y-diffusion d/dy(a du/dy).
MicroField apply_L(const MicroField& u, const CoefficientTables& tables);

/// Zero-mean solution of L w = r. Throws NumericalError if a slice of r has a
/// nonzero mean beyond 1e-10 * max|r|.
MicroField solve_L(const MicroField& r, const CoefficientTables& tables);

/// Solution of (I - c L) w = rhs for c > 0. The y-mean of rhs is carried over exactly.
MicroField shifted_solve_L(const MicroField& rhs, const CoefficientTables& tables, double c);

/// x-diffusion d/dx(a du/dx) in flux form. Ghost cells follow u_ghost = 2 u_wall - u_first.
MicroField apply_D(const MicroField& u, const CoefficientTables& tables,
                   const MicroBoundary& bc = {});
/// D applied to a y-independent field; the result depends on y through a.
MicroField apply_D(const MacroField& u, const CoefficientTables& tables,
                   const MacroBoundary& bc = {});

/// Mixed operator d/dx(a du/dy) + d/dy(a du/dx). The x-derivatives in the two boundary
/// cells use a one-sided stencil through the wall trace.
MicroField apply_B(const MicroField& u, const CoefficientTables& tables,
                   const MicroBoundary& bc = {});
MicroField apply_B(const MacroField& u, const CoefficientTables& tables,
                   const MacroBoundary& bc = {});

/// Homogenized operator Pi D F - Pi B L^{-1} (I - Pi) B F.
///
/// The inner L^{-1} solution has no boundary data of its own; its wall trace is taken
/// as -chi(wall, y) dF/dx(wall), the limit the inner solve represents.
MacroField apply_Dbar(const MacroField& F, const CoefficientTables& tables,
                      const HomogenizedData& hom, const MacroBoundary& bc = {});

class CellSolver;
MacroField apply_Dbar(const MacroField& F, const CoefficientTables& tables,
                      const HomogenizedData& hom, const CellSolver& solver,
                      const MacroBoundary& bc = {});

/// 1D flux-form diffusion with face coefficients (n+1 values) and Dirichlet wall values.
void apply_diffusion_1d(std::span<const double> u, std::span<const double> face_coeff, double dx,
                        MacroBoundary bc, std::span<double> out);

/// Per-slice factorizations of L (bordered, zero mean) and of I - cL.
///
/// The coefficient and c are fixed during a run, so factorizations are built once.
class CellSolver {
public:
    explicit CellSolver(const CoefficientTables& tables, double shift = 0.0);

    double shift() const { return shift_; }

    MicroField solve_L(const MicroField& r) const;
    MicroField shifted_solve(const MicroField& rhs) const;

private:
    std::vector<CyclicTridiagonal> zero_mean_;
    std::vector<CyclicTridiagonal> shifted_;
    double shift_;
};

}  // namespace apmm
