#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ft/types.hpp"

namespace ft {

/// A strictly hyperbolic system u_t + f(u)_x = g(x,u) restricted to a
/// box-shaped admissible region on which all characteristic speeds stay
/// bounded away from zero (non-resonance).
class SystemDefinition {
public:
    virtual ~SystemDefinition() = default;

    virtual int dimension() const = 0;
    virtual State flux(const State& u) const = 0;
    virtual Matrix jacobian(const State& u) const = 0;
    virtual bool genuinely_nonlinear(int family) const = 0;

    /// Closed-form eigenstructure when the system has one. Must follow the
    /// same ordering and normalization as the numeric path.
    virtual std::optional<std::vector<EigenTriple>> analytic_eigen(
        const State& u) const {
        return std::nullopt;
    }

    /// Additional admissibility predicate beyond the box (e.g. a subsonic
    /// margin). Defaults to true.
    virtual bool extra_admissible(const State& u) const { return true; }

    virtual std::string name() const = 0;

    const State& box_lo() const { return box_lo_; }
    const State& box_hi() const { return box_hi_; }

    bool admissible(const State& u) const;

    /// Non-resonance margin c with |lambda_i| >= c over the whole box.
    double resonance_margin() const { return resonance_margin_; }

    /// Number of families with negative characteristic speed; constant over
    /// the admissible region by non-resonance.
    int split_index() const { return split_index_; }

    /// sup |lambda_i| over the admissible box (sampled).
    double max_wave_speed() const { return max_wave_speed_; }

protected:
    /// Scans the box (corners plus a coarse grid) for the resonance margin,
    /// split index and the wave speed bound. Call from derived constructors
    /// after the box is set.
    void finalize_region(const State& lo, const State& hi);

    State box_lo_, box_hi_;
    double resonance_margin_ = 0.0;
    int split_index_ = 0;
    double max_wave_speed_ = 0.0;
};

using SystemPtr = std::shared_ptr<const SystemDefinition>;

/// Eigen-decomposition at u: sorted, |r_i| = 1 with the first nonzero
/// component positive, l_i . r_j = delta_ij.
std::vector<EigenTriple> eigen_decompose(const SystemDefinition& sys,
                                         const State& u,
                                         double separation_tol = 1e-8);

/// Scalar law f(u) = a u (linearly degenerate for any a != 0).
class ScalarLinearSystem : public SystemDefinition {
public:
    ScalarLinearSystem(double a, double box_lo, double box_hi);
    int dimension() const override { return 1; }
    State flux(const State& u) const override;
    Matrix jacobian(const State& u) const override;
    bool genuinely_nonlinear(int) const override { return false; }
    std::optional<std::vector<EigenTriple>> analytic_eigen(
        const State& u) const override;
    std::string name() const override { return "scalar_linear"; }

private:
    double a_;
};

/// Scalar law f(u) = u^2/2 + shift u; genuinely nonlinear, non-resonant as
/// long as the box stays away from u = -shift.
class ScalarShiftedBurgersSystem : public SystemDefinition {
public:
    ScalarShiftedBurgersSystem(double shift, double box_lo, double box_hi);
    int dimension() const override { return 1; }
    State flux(const State& u) const override;
    Matrix jacobian(const State& u) const override;
    bool genuinely_nonlinear(int) const override { return true; }
    std::optional<std::vector<EigenTriple>> analytic_eigen(
        const State& u) const override;
    std::string name() const override { return "scalar_shifted_burgers"; }

private:
    double shift_;
};

}  // namespace ft
