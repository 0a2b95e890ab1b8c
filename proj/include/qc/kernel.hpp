#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace qc {

// Edge-probability kernel kappa : [0,1]^2 -> (0,1). Four shapes, each with
// exact closed-form maximum and infimum computations:
//   constant         kappa = p everywhere
//   rank1            kappa(x,y) = phi(x)*phi(y), phi piecewise linear
//   block            piecewise constant on a grid of intervals (SBM)
//   grid             bilinear interpolation of node values on a uniform grid
// All stored probabilities are strictly inside (0,1); symmetry holds by
// construction for every variant.

struct constant_kernel {
    double p;
};

struct rank1_kernel {
    // (x, phi(x)) knots; x strictly increasing from 0 to 1, phi in (0,1).
    std::vector<std::pair<double, double>> knots;

    double phi(double x) const;
};

struct block_kernel {
    std::vector<double> cuts;                 // 0 = t_0 < ... < t_k = 1
    std::vector<std::vector<double>> probs;   // symmetric k x k

    // Cell containing x; breakpoints belong to the lower-index cell.
    int cell(double x) const;
};

struct grid_kernel {
    std::vector<std::vector<double>> values;  // symmetric (d+1) x (d+1)
};

// Kernel maximum on the diagonal: p_max = kappa(c, c).
struct max_point {
    double c;
    double p_max;
};

class kernel {
public:
    kernel() : variant_(constant_kernel{0.5}) {}
    explicit kernel(constant_kernel k);
    explicit kernel(rank1_kernel k);
    explicit kernel(block_kernel k);
    explicit kernel(grid_kernel k);

    double eval(double x, double y) const;

    // Maximizer of kappa(x, x) over the diagonal. Deterministic tie-breaks:
    // midpoint for constant kernels, the smallest maximizing knot/block/cell
    // otherwise.
    max_point max_on_diagonal() const;

    // inf of kappa over [c-delta, c+delta]^2 clipped to [0,1]^2 (the proof's
    // p_n), computed exactly from the variant structure.
    double inf_on_square(double c, double delta) const;

    // Exact global maximum of kappa over [0,1]^2.
    double global_max() const;

    // Throws hypothesis_error when the global maximum exceeds the diagonal
    // maximum by more than 1e-6; the concentration theory needs the maximum
    // at a diagonal point and we refuse to guess otherwise.
    void require_diagonal_max() const;

    static kernel from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    static kernel load_file(const std::string& path);

    // Stable content hash of the canonical JSON form, as 16 hex digits.
    std::string id() const;

    const std::variant<constant_kernel, rank1_kernel, block_kernel, grid_kernel>& raw() const {
        return variant_;
    }

private:
    std::variant<constant_kernel, rank1_kernel, block_kernel, grid_kernel> variant_;
};

}  // namespace qc
