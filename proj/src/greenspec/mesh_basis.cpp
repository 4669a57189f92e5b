#include "greenspec/mesh_basis.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

namespace greenspec {

Mesh::Mesh(int n) : n_(n), h_(0.0) {
    if (n < 1) throw Error(ErrorCode::InvalidMesh, "mesh needs n >= 1, got " + std::to_string(n));
    h_ = 1.0 / n;
    breakpoints_.resize(n + 1);
    for (int j = 0; j <= n; ++j) breakpoints_[j] = static_cast<double>(j) / n;
}

int Mesh::panel_of(double t, Side side) const {
    int j = static_cast<int>(std::ceil(t * n_)) - 1;
    j = std::clamp(j, 0, n_ - 1);
    if (side == Side::Right) {
        while (j < n_ - 1 && t >= breakpoints_[j + 1]) ++j;
        while (j > 0 && t < breakpoints_[j]) --j;
    } else {
        while (j > 0 && t <= breakpoints_[j]) --j;
        while (j < n_ - 1 && t > breakpoints_[j + 1]) ++j;
    }
    return j;
}

Mesh make_mesh(int n) { return Mesh(n); }

PolySpace::PolySpace(Mesh mesh, int r) : mesh_(std::move(mesh)), r_(r) {
    if (r < 0 || r > 31)
        throw Error(ErrorCode::InvalidArgument, "degree parameter r must be in [0, 31]");
    const int m = 2 * r;
    if (r == 0) {
        reference_nodes_ = {0.0};
        barycentric_weights_ = {1.0};
        return;
    }
    reference_nodes_.resize(m + 1);
    barycentric_weights_.resize(m + 1);
    double binom = 1.0;
    for (int i = 0; i <= m; ++i) {
        reference_nodes_[i] = -1.0 + 2.0 * i / m;
        barycentric_weights_[i] = (i % 2 == 0 ? 1.0 : -1.0) * binom;
        binom = binom * (m - i) / (i + 1);
    }
}

double PolySpace::local_coordinate(int panel, double t) const {
    return (2.0 * t - mesh_.left(panel) - mesh_.right(panel)) / mesh_.h();
}

double PolySpace::to_global(int panel, double x) const {
    return 0.5 * (mesh_.left(panel) + mesh_.right(panel)) + 0.5 * mesh_.h() * x;
}

void PolySpace::lagrange_values(double x, std::span<double> out) const {
    const int k = local_dim();
    if (k == 1) {
        out[0] = 1.0;
        return;
    }
    for (int i = 0; i < k; ++i) {
        if (x == reference_nodes_[i]) {
            std::fill(out.begin(), out.begin() + k, 0.0);
            out[i] = 1.0;
            return;
        }
    }
    double denom = 0.0;
    for (int i = 0; i < k; ++i) {
        out[i] = barycentric_weights_[i] / (x - reference_nodes_[i]);
        denom += out[i];
    }
    for (int i = 0; i < k; ++i) out[i] /= denom;
}

void PolySpace::legendre_values(double x, std::span<double> out) const {
    const int k = local_dim();
    const double scale = 1.0 / mesh_.h();
    double p0 = 1.0;
    double p1 = x;
    for (int eta = 0; eta < k; ++eta) {
        double value;
        if (eta == 0) {
            value = 1.0;
        } else if (eta == 1) {
            value = x;
        } else {
            const double p2 = ((2.0 * eta - 1.0) * x * p1 - (eta - 1.0) * p0) / eta;
            p0 = p1;
            p1 = p2;
            value = p2;
        }
        out[eta] = std::sqrt((2.0 * eta + 1.0) * scale) * value;
    }
}

double legendre_eval(int eta, double x) {
    if (eta < 0) throw Error(ErrorCode::InvalidArgument, "Legendre degree must be >= 0");
    if (eta == 0) return 1.0;
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= eta; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

double basis_eval(const PolySpace& space, int panel, int eta, double t) {
    if (panel < 0 || panel >= space.n() || eta < 0 || eta > 2 * space.r())
        throw Error(ErrorCode::IndexOutOfRange, "basis index out of range");
    if (t < 0.0 || t > 1.0) return 0.0;
    if (space.mesh().panel_of(t) != panel) return 0.0;
    const double x = space.local_coordinate(panel, t);
    return std::sqrt((2.0 * eta + 1.0) / space.mesh().h()) * legendre_eval(eta, x);
}

std::vector<double> lagrange_nodes(const PolySpace& space) {
    std::vector<double> nodes;
    nodes.reserve(space.dim());
    const double h = space.mesh().h();
    const int m = 2 * space.r();
    for (int j = 0; j < space.n(); ++j) {
        const double left = space.mesh().left(j);
        if (m == 0) {
            nodes.push_back(0.5 * (left + space.mesh().right(j)));
        } else {
            for (int i = 0; i <= m; ++i) nodes.push_back(left + i * h / m);
        }
    }
    return nodes;
}

std::vector<double> standard_grid(const PolySpace& space, int uniform_points) {
    if (uniform_points < 2) throw Error(ErrorCode::InvalidArgument, "grid needs >= 2 uniform points");
    std::vector<double> grid;
    for (int i = 0; i < uniform_points; ++i)
        grid.push_back(static_cast<double>(i) / (uniform_points - 1));
    for (int j = 0; j < space.n(); ++j)
        grid.push_back(0.5 * (space.mesh().left(j) + space.mesh().right(j)));
    const auto nodes = lagrange_nodes(space);
    grid.insert(grid.end(), nodes.begin(), nodes.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

PiecewiseFn::PiecewiseFn(PolySpace space, Representation rep, std::vector<double> coeffs)
    : space_(std::move(space)), rep_(rep), coeffs_(std::move(coeffs)) {
    if (static_cast<int>(coeffs_.size()) != space_.dim())
        throw Error(ErrorCode::InvalidArgument, "coefficient count does not match dim(X_n)");
}

double PiecewiseFn::eval_in_panel(int panel, double t) const {
    const int k = space_.local_dim();
    const double x = space_.local_coordinate(panel, t);
    double values[64];
    std::span<double> basis(values, k);
    if (rep_ == Representation::Legendre)
        space_.legendre_values(x, basis);
    else
        space_.lagrange_values(x, basis);
    double sum = 0.0;
    for (int i = 0; i < k; ++i) sum += coeffs_[space_.index(panel, i)] * basis[i];
    return sum;
}

double PiecewiseFn::operator()(double t, Side side) const {
    if (!(t >= 0.0 && t <= 1.0))
        throw Error(ErrorCode::OutOfDomain, "evaluation point " + std::to_string(t) + " outside [0,1]");
    return eval_in_panel(space_.mesh().panel_of(t, side), t);
}

namespace {

struct PiecewiseAdapter final : FunctionBase {
    explicit PiecewiseAdapter(PiecewiseFn p) : p(std::move(p)) {}
    double value(double t, Side side) const override { return p(t, side); }
    PiecewiseFn p;
};

}  // namespace

EvalFn PiecewiseFn::as_function() const { return EvalFn(std::make_shared<PiecewiseAdapter>(*this)); }

double eval_piecewise(const PiecewiseFn& p, double t) { return p(t); }

PiecewiseFn project_orthogonal(const PolySpace& space, const EvalFn& f, const QuadRule& rule) {
    const int k = space.local_dim();
    const double half = 0.5 * space.mesh().h();
    std::vector<double> coeffs(space.dim(), 0.0);
    std::vector<double> basis(k);
    for (int j = 0; j < space.n(); ++j) {
        for (int i = 0; i < rule.size(); ++i) {
            const double x = rule.nodes[i];
            const double fx = f(space.to_global(j, x));
            space.legendre_values(x, basis);
            for (int eta = 0; eta < k; ++eta)
                coeffs[space.index(j, eta)] += half * rule.weights[i] * fx * basis[eta];
        }
    }
    return PiecewiseFn(space, Representation::Legendre, std::move(coeffs));
}

PiecewiseFn project_interpolatory(const PolySpace& space, const EvalFn& f) {
    const int k = space.local_dim();
    const auto nodes = lagrange_nodes(space);
    std::vector<double> values(space.dim());
    for (int j = 0; j < space.n(); ++j) {
        for (int i = 0; i < k; ++i) {
            Side side = Side::Owner;
            if (k > 1 && i == 0) side = Side::Right;
            if (k > 1 && i == k - 1) side = Side::Left;
            values[space.index(j, i)] = f(nodes[space.index(j, i)], side);
        }
    }
    return PiecewiseFn(space, Representation::Nodal, std::move(values));
}

}  // namespace greenspec
