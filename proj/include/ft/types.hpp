#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace ft {

/// A point in state space, the vector of conserved quantities.
using State = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Eigenvalue with matching right and left eigenvectors, l_i . r_j = delta_ij.
struct EigenTriple {
    double lambda;
    State r;
    State l;
};

enum class ErrorCode {
    NonAdmissibleState,
    EigenvalueClustering,
    CurveLeftRegion,
    NewtonDivergence,
    SonicBreakdown,
    Validation,
    RuntimeAbort,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

struct Interval {
    double a = 0.0;
    double b = 0.0;
    double length() const { return b - a; }
};

}  // namespace ft
