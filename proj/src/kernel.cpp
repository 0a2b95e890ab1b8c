#include "qc/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qc/errors.hpp"

namespace qc {

namespace {

void check_prob(double p, const char* what) {
    if (!(p > 0.0 && p < 1.0))
        throw parse_error(std::string(what) + " must lie strictly in (0,1)");
}

void check_unit(double x, const char* what) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument(std::string(what) + " outside [0,1]");
}

void validate(const constant_kernel& k) { check_prob(k.p, "constant kernel p"); }

void validate(const rank1_kernel& k) {
    if (k.knots.size() < 2) throw parse_error("rank1 kernel needs at least two knots");
    if (k.knots.front().first != 0.0 || k.knots.back().first != 1.0)
        throw parse_error("rank1 knots must start at x=0 and end at x=1");
    for (std::size_t i = 0; i < k.knots.size(); ++i) {
        if (i > 0 && !(k.knots[i - 1].first < k.knots[i].first))
            throw parse_error("rank1 knot x-values must be strictly increasing");
        check_prob(k.knots[i].second, "rank1 phi value");
    }
}

void validate(const block_kernel& k) {
    const std::size_t blocks = k.probs.size();
    if (blocks < 1 || k.cuts.size() != blocks + 1)
        throw parse_error("block kernel needs k+1 cuts for k blocks");
    if (k.cuts.front() != 0.0 || k.cuts.back() != 1.0)
        throw parse_error("block cuts must start at 0 and end at 1");
    for (std::size_t i = 1; i < k.cuts.size(); ++i) {
        if (!(k.cuts[i - 1] < k.cuts[i]))
            throw parse_error("block cuts must be strictly increasing");
    }
    for (std::size_t a = 0; a < blocks; ++a) {
        if (k.probs[a].size() != blocks) throw parse_error("block prob matrix must be square");
        for (std::size_t b = 0; b < blocks; ++b) {
            check_prob(k.probs[a][b], "block probability");
            if (k.probs[a][b] != k.probs[b][a])
                throw parse_error("block prob matrix must be symmetric");
        }
    }
}

void validate(const grid_kernel& k) {
    const std::size_t side = k.values.size();
    if (side < 2) throw parse_error("grid kernel needs at least a 2x2 value matrix");
    for (std::size_t a = 0; a < side; ++a) {
        if (k.values[a].size() != side) throw parse_error("grid value matrix must be square");
        for (std::size_t b = 0; b < side; ++b) {
            check_prob(k.values[a][b], "grid value");
            if (k.values[a][b] != k.values[b][a])
                throw parse_error("grid value matrix must be symmetric");
        }
    }
}

// Bilinear patch of one grid cell along terms grouped so that eval(x,y) and
// eval(y,x) are bit-identical for a symmetric value matrix.
double bilinear(double v00, double v01, double v10, double v11, double u, double v) {
    const double a = (1.0 - u) * (1.0 - v) * v00;
    const double b = u * v * v11;
    const double c1 = (1.0 - u) * v * v01;
    const double c2 = u * (1.0 - v) * v10;
    return (a + b) + (c1 + c2);
}

int grid_cell(double x, int d) { return std::min(static_cast<int>(x * d), d - 1); }

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

double rank1_kernel::phi(double x) const {
    auto it = std::lower_bound(knots.begin(), knots.end(), x,
                               [](const auto& kn, double v) { return kn.first < v; });
    if (it != knots.end() && it->first == x) return it->second;
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    return lo.second + (x - lo.first) * (hi.second - lo.second) / (hi.first - lo.first);
}

int block_kernel::cell(double x) const {
    // First cell whose upper cut is >= x; breakpoints land in the lower cell.
    auto it = std::lower_bound(cuts.begin() + 1, cuts.end(), x);
    return static_cast<int>(it - (cuts.begin() + 1));
}

kernel::kernel(constant_kernel k) : variant_(std::move(k)) {
    validate(std::get<constant_kernel>(variant_));
}
kernel::kernel(rank1_kernel k) : variant_(std::move(k)) {
    validate(std::get<rank1_kernel>(variant_));
}
kernel::kernel(block_kernel k) : variant_(std::move(k)) {
    validate(std::get<block_kernel>(variant_));
}
kernel::kernel(grid_kernel k) : variant_(std::move(k)) {
    validate(std::get<grid_kernel>(variant_));
}

double kernel::eval(double x, double y) const {
    check_unit(x, "kernel argument x");
    check_unit(y, "kernel argument y");
    return std::visit(
        [&](const auto& k) -> double {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, constant_kernel>) {
                return k.p;
            } else if constexpr (std::is_same_v<T, rank1_kernel>) {
                return k.phi(x) * k.phi(y);
            } else if constexpr (std::is_same_v<T, block_kernel>) {
                return k.probs[k.cell(x)][k.cell(y)];
            } else {
                const int d = static_cast<int>(k.values.size()) - 1;
                const int cx = grid_cell(x, d);
                const int cy = grid_cell(y, d);
                const double u = x * d - cx;
                const double v = y * d - cy;
                return bilinear(k.values[cx][cy], k.values[cx][cy + 1], k.values[cx + 1][cy],
                                k.values[cx + 1][cy + 1], u, v);
            }
        },
        variant_);
}

max_point kernel::max_on_diagonal() const {
    return std::visit(
        [&](const auto& k) -> max_point {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, constant_kernel>) {
                // Every point is maximal; fixed at the midpoint so dense-core
                // extraction is deterministic.
                return {0.5, k.p};
            } else if constexpr (std::is_same_v<T, rank1_kernel>) {
                // phi is piecewise linear, so its max sits at a knot.
                double c = k.knots.front().first;
                double best = k.knots.front().second;
                for (const auto& [x, y] : k.knots) {
                    if (y > best) {
                        best = y;
                        c = x;
                    }
                }
                return {c, eval(c, c)};
            } else if constexpr (std::is_same_v<T, block_kernel>) {
                std::size_t bestb = 0;
                for (std::size_t b = 1; b < k.probs.size(); ++b) {
                    if (k.probs[b][b] > k.probs[bestb][bestb]) bestb = b;
                }
                const double c = 0.5 * (k.cuts[bestb] + k.cuts[bestb + 1]);
                return {c, k.probs[bestb][bestb]};
            } else {
                // Candidates: grid nodes plus the stationary point of each
                // cell's diagonal quadratic. eval() is the referee so p_max
                // always equals eval(c, c) exactly.
                const int d = static_cast<int>(k.values.size()) - 1;
                double c = 0.0;
                double best = eval(0.0, 0.0);
                auto consider = [&](double x) {
                    const double val = eval(x, x);
                    if (val > best) {
                        best = val;
                        c = x;
                    }
                };
                for (int i = 1; i <= d; ++i) consider(static_cast<double>(i) / d);
                for (int i = 0; i < d; ++i) {
                    const double v00 = k.values[i][i];
                    const double v01 = k.values[i][i + 1];
                    const double v11 = k.values[i + 1][i + 1];
                    const double denom = v00 - 2.0 * v01 + v11;
                    if (denom != 0.0) {
                        const double u = (v00 - v01) / denom;
                        if (u > 0.0 && u < 1.0) consider((i + u) / d);
                    }
                }
                return {c, best};
            }
        },
        variant_);
}

double kernel::inf_on_square(double c, double delta) const {
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    check_unit(c, "square center c");
    const double lo = std::max(0.0, c - delta);
    const double hi = std::min(1.0, c + delta);
    return std::visit(
        [&](const auto& k) -> double {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, constant_kernel>) {
                return k.p;
            } else if constexpr (std::is_same_v<T, rank1_kernel>) {
                // min of phi over [lo, hi]: endpoints or interior knots.
                double m = std::min(k.phi(lo), k.phi(hi));
                for (const auto& [x, y] : k.knots) {
                    if (x > lo && x < hi) m = std::min(m, y);
                }
                return m * m;
            } else if constexpr (std::is_same_v<T, block_kernel>) {
                const int a0 = k.cell(lo);
                const int a1 = k.cell(hi);
                double m = 1.0;
                for (int a = a0; a <= a1; ++a) {
                    for (int b = a0; b <= a1; ++b) m = std::min(m, k.probs[a][b]);
                }
                return m;
            } else {
                // Bilinear patches take extremes at corners, so the infimum
                // over the clipped square is the min over the corners of each
                // intersected cell rectangle.
                const int d = static_cast<int>(k.values.size()) - 1;
                const int a0 = grid_cell(lo, d);
                const int a1 = grid_cell(hi, d);
                double m = 1.0;
                for (int a = a0; a <= a1; ++a) {
                    const double xl = std::max(lo, static_cast<double>(a) / d);
                    const double xh = std::min(hi, static_cast<double>(a + 1) / d);
                    for (int b = a0; b <= a1; ++b) {
                        const double yl = std::max(lo, static_cast<double>(b) / d);
                        const double yh = std::min(hi, static_cast<double>(b + 1) / d);
                        m = std::min({m, eval(xl, yl), eval(xl, yh), eval(xh, yl), eval(xh, yh)});
                    }
                }
                return m;
            }
        },
        variant_);
}

double kernel::global_max() const {
    return std::visit(
        [&](const auto& k) -> double {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, constant_kernel>) {
                return k.p;
            } else if constexpr (std::is_same_v<T, rank1_kernel>) {
                double m = 0.0;
                for (const auto& [x, y] : k.knots) m = std::max(m, y);
                return m * m;
            } else if constexpr (std::is_same_v<T, block_kernel>) {
                double m = 0.0;
                for (const auto& row : k.probs)
                    for (double p : row) m = std::max(m, p);
                return m;
            } else {
                // A bilinear interpolant never exceeds its node values.
                double m = 0.0;
                for (const auto& row : k.values)
                    for (double p : row) m = std::max(m, p);
                return m;
            }
        },
        variant_);
}

void kernel::require_diagonal_max() const {
    const double diag = max_on_diagonal().p_max;
    const double glob = global_max();
    if (diag < glob - 1e-6) {
        std::ostringstream msg;
        msg << "kernel maximum " << glob << " is attained off the diagonal (diagonal max " << diag
            << "); the concentration theory does not cover this kernel";
        throw hypothesis_error(msg.str());
    }
}

kernel kernel::from_json(const nlohmann::json& j) {
    try {
        const std::string type = j.at("type").get<std::string>();
        if (type == "constant") {
            return kernel(constant_kernel{j.at("p").get<double>()});
        }
        if (type == "rank1") {
            rank1_kernel k;
            for (const auto& kn : j.at("knots")) {
                if (!kn.is_array() || kn.size() != 2) throw parse_error("knot must be [x, phi]");
                k.knots.emplace_back(kn[0].get<double>(), kn[1].get<double>());
            }
            return kernel(std::move(k));
        }
        if (type == "block") {
            block_kernel k;
            k.cuts = j.at("cuts").get<std::vector<double>>();
            k.probs = j.at("probs").get<std::vector<std::vector<double>>>();
            return kernel(std::move(k));
        }
        if (type == "grid") {
            grid_kernel k;
            k.values = j.at("values").get<std::vector<std::vector<double>>>();
            return kernel(std::move(k));
        }
        throw parse_error("unknown kernel type `" + type + "`");
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("bad kernel config: ") + e.what());
    }
}

nlohmann::json kernel::to_json() const {
    return std::visit(
        [&](const auto& k) -> nlohmann::json {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, constant_kernel>) {
                return {{"type", "constant"}, {"p", k.p}};
            } else if constexpr (std::is_same_v<T, rank1_kernel>) {
                nlohmann::json knots = nlohmann::json::array();
                for (const auto& [x, y] : k.knots) knots.push_back({x, y});
                return {{"type", "rank1"}, {"knots", knots}};
            } else if constexpr (std::is_same_v<T, block_kernel>) {
                return {{"type", "block"}, {"cuts", k.cuts}, {"probs", k.probs}};
            } else {
                return {{"type", "grid"}, {"values", k.values}};
            }
        },
        variant_);
}

kernel kernel::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open kernel config `" + path + "`");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("bad kernel json: ") + e.what());
    }
    return from_json(j);
}

std::string kernel::id() const {
    // nlohmann keeps object keys sorted, so dump() is canonical.
    const std::uint64_t h = fnv1a64(to_json().dump());
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace qc
