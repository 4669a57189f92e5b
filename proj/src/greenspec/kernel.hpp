#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "greenspec/expr.hpp"
#include "greenspec/function.hpp"

namespace greenspec {

using KernelPiece = std::function<double(double, double)>;

/// Exact reference eigenpair shipped with a kernel.
struct ExactEigenpair {
    double eigenvalue = 0.0;
    EvalFn eigenfunction;
    std::string eigenfunction_text;
};

/// User-facing kernel description, e.g. from a JSON config file.
struct KernelConfig {
    std::string name;
    std::string kappa1;
    std::string kappa2;
    std::optional<int> alpha;
    std::optional<double> exact_eigenvalue;
    std::optional<std::string> exact_eigenfunction;
};

/// Green's-function-type kernel: kappa1 on t <= s, kappa2 on s <= t, equal
/// on the diagonal.
class GreenKernel {
public:
    /// Validates diagonal continuity (101 samples, tolerance 1e-10); throws
    /// ContinuityError naming the worst sample.
    GreenKernel(std::string name, KernelPiece kappa1, KernelPiece kappa2,
                std::optional<int> alpha = std::nullopt,
                std::optional<ExactEigenpair> exact = std::nullopt);

    const std::string& name() const noexcept { return name_; }
    const std::optional<int>& alpha() const noexcept { return alpha_; }
    const std::optional<ExactEigenpair>& exact() const noexcept { return exact_; }

    double kappa1(double s, double t) const { return kappa1_(s, t); }
    double kappa2(double s, double t) const { return kappa2_(s, t); }

    /// kappa1 for t <= s, kappa2 otherwise. Assumes (s,t) in [0,1]^2.
    double operator()(double s, double t) const { return t <= s ? kappa1_(s, t) : kappa2_(s, t); }

    /// True when kappa(s,t) == kappa(t,s) on a 21x21 sample grid (within 1e-13).
    bool is_symmetric() const;

    /// Kernel of the adjoint operator, kappa*(s,t) = kappa(t,s).
    GreenKernel adjoint() const;

    /// Source text of the two pieces, when known.
    const std::string& kappa1_text() const noexcept { return kappa1_text_; }
    const std::string& kappa2_text() const noexcept { return kappa2_text_; }
    GreenKernel with_text(std::string kappa1_text, std::string kappa2_text) const;

private:
    std::string kappa1_text_;
    std::string kappa2_text_;
    std::string name_;
    KernelPiece kappa1_;
    KernelPiece kappa2_;
    std::optional<int> alpha_;
    std::optional<ExactEigenpair> exact_;
};

inline constexpr double kContinuityTolerance = 1e-10;
inline constexpr int kContinuitySamples = 101;

/// Builds and validates a kernel from expression strings.
GreenKernel make_kernel(const KernelConfig& config);

/// Checked point evaluation; throws OutOfDomain outside [0,1]^2.
double kernel_eval(const GreenKernel& k, double s, double t);

/// Parses the JSON kernel config format:
/// {"name", "kappa1", "kappa2", "alpha"?, "exact": {"eigenvalue", "eigenfunction"}?}
KernelConfig parse_kernel_config(std::string_view json_text);
KernelConfig load_kernel_config(const std::string& path);

/// Builtin registry.
std::vector<std::string> builtin_kernel_names();
GreenKernel builtin_kernel(std::string_view name);

}  // namespace greenspec
