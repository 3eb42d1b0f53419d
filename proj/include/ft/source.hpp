#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "ft/system.hpp"
#include "ft/types.hpp"

namespace ft {

/// The source g(x,u) together with its dominating profile omega (P3) and the
/// C^2 dominating profile M~ (P2). omega is integrable but may be unbounded;
/// its singular points are declared so quadrature can split around them.
class SourceTerm {
public:
    virtual ~SourceTerm() = default;

    virtual int dimension() const = 0;
    virtual State g(double x, const State& u) const = 0;

    /// Jacobian of g with respect to u; default central finite difference.
    virtual Matrix dg_du(double x, const State& u) const;

    virtual double omega(double x) const = 0;

    /// W(x) = int_{x_ref}^x omega; exact when the scenario declares a
    /// closed-form antiderivative, else adaptive quadrature.
    virtual double antiderivative(double x) const = 0;

    /// Pointwise C^2 dominating profile M~(x).
    virtual double mtilde(double x) const { return omega(x); }

    virtual std::vector<double> singular_points() const { return {}; }

    /// Support of omega as a finite union of intervals; empty means g == 0.
    virtual std::vector<Interval> support() const = 0;

    /// int_0^h g(x0+s, u) ds; default singularity-aware quadrature,
    /// overridden with closed forms where available.
    virtual State g_integral(double x0, double h, const State& u) const;

    virtual bool is_zero() const { return false; }

    /// int_0^h omega(x0+s) ds = W(x0+h) - W(x0).
    double omega_integral(double x0, double h) const;

    double omega_l1() const;
    double mtilde_l1() const;
};

using SourcePtr = std::shared_ptr<const SourceTerm>;

/// int_a^b g(x,u) dx with sign.
State g_integral_signed(const SourceTerm& src, double a, double b,
                        const State& u);

/// epsilon~_h = sup_x int_0^h omega(x+s) ds, by candidate enumeration
/// (singular points, support endpoints, a uniform grid) plus local polish.
double epsilon_tilde(const SourceTerm& src, double h);

/// g == 0.
class ZeroSource : public SourceTerm {
public:
    explicit ZeroSource(int n) : n_(n) {}
    int dimension() const override { return n_; }
    State g(double, const State&) const override { return State::Zero(n_); }
    Matrix dg_du(double, const State&) const override {
        return Matrix::Zero(n_, n_);
    }
    double omega(double) const override { return 0.0; }
    double antiderivative(double) const override { return 0.0; }
    std::vector<Interval> support() const override { return {}; }
    State g_integral(double, double, const State&) const override {
        return State::Zero(n_);
    }
    bool is_zero() const override { return true; }

private:
    int n_;
};

/// g(x,u) = d * 1_[a,b](x) for a fixed vector d.
class ConstantOnIntervalSource : public SourceTerm {
public:
    ConstantOnIntervalSource(State d, double a, double b);
    int dimension() const override { return static_cast<int>(d_.size()); }
    State g(double x, const State&) const override;
    Matrix dg_du(double, const State&) const override {
        return Matrix::Zero(d_.size(), d_.size());
    }
    double omega(double x) const override;
    double antiderivative(double x) const override;
    std::vector<Interval> support() const override { return {{a_, b_}}; }
    State g_integral(double x0, double h, const State&) const override;

private:
    State d_;
    double a_, b_, dnorm_;
};

/// g(x,u) = d * omega(x) with omega(x) = amp / (2 sqrt|x-c|) on |x-c| <= R.
/// The antiderivative sign(x-c) sqrt(|x-c|) is exact; |d| <= 1 keeps the
/// domination |g| <= omega strict.
class InverseSqrtSource : public SourceTerm {
public:
    InverseSqrtSource(State d, double amp, double center, double radius);
    int dimension() const override { return static_cast<int>(d_.size()); }
    State g(double x, const State&) const override;
    Matrix dg_du(double, const State&) const override {
        return Matrix::Zero(d_.size(), d_.size());
    }
    double omega(double x) const override;
    double antiderivative(double x) const override;
    std::vector<double> singular_points() const override { return {c_}; }
    std::vector<Interval> support() const override {
        return {{c_ - r_, c_ + r_}};
    }
    State g_integral(double x0, double h, const State&) const override;

private:
    State d_;
    double amp_, c_, r_;
};

/// g(x,u) = c(x) * d with piecewise polynomial profile c; omega = |c| |d|.
class PiecewisePolySource : public SourceTerm {
public:
    /// breaks.size() == coeffs.size() + 1; coeffs[i] are the monomial
    /// coefficients of c on [breaks[i], breaks[i+1]), in the local
    /// coordinate x - breaks[i]. c == 0 outside.
    PiecewisePolySource(State d, std::vector<double> breaks,
                        std::vector<std::vector<double>> coeffs);
    int dimension() const override { return static_cast<int>(d_.size()); }
    State g(double x, const State&) const override;
    Matrix dg_du(double, const State&) const override {
        return Matrix::Zero(d_.size(), d_.size());
    }
    double omega(double x) const override;
    double antiderivative(double x) const override;
    std::vector<double> singular_points() const override { return breaks_; }
    std::vector<Interval> support() const override {
        return {{breaks_.front(), breaks_.back()}};
    }

private:
    double profile(double x) const;
    State d_;
    std::vector<double> breaks_;
    std::vector<std::vector<double>> coeffs_;
    std::vector<double> cum_;  // cumulative int |c| at breakpoints
    double dnorm_;
};

/// Witness of a failed domination audit.
struct DominationViolation {
    double x;
    State u;
    double bound;    // omega(x) or mtilde(x)
    double value;    // the offending sample norm
    std::string which;
};

/// Random sampling audit of |g| <= omega, |D_u g| <= omega and the C^2
/// sample <= M~ over the system's box; returns the first violation found.
std::optional<DominationViolation> audit_domination(const SourceTerm& src,
                                                    const SystemDefinition& sys,
                                                    unsigned seed,
                                                    int samples = 2000,
                                                    double slack = 1e-12);

}  // namespace ft
