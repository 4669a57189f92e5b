#include "greenspec/kernel.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "greenspec/error.hpp"

namespace greenspec {

GreenKernel::GreenKernel(std::string name, KernelPiece kappa1, KernelPiece kappa2,
                         std::optional<int> alpha, std::optional<ExactEigenpair> exact)
    : name_(std::move(name)),
      kappa1_(std::move(kappa1)),
      kappa2_(std::move(kappa2)),
      alpha_(alpha),
      exact_(std::move(exact)) {
    double worst = -1.0;
    double worst_s = 0.0;
    for (int i = 0; i < kContinuitySamples; ++i) {
        const double s = static_cast<double>(i) / (kContinuitySamples - 1);
        double gap = std::abs(kappa1_(s, s) - kappa2_(s, s));
        if (std::isnan(gap)) gap = std::numeric_limits<double>::infinity();
        if (gap > worst) {
            worst = gap;
            worst_s = s;
        }
    }
    if (worst > kContinuityTolerance) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "kernel '%s' is discontinuous across the diagonal: "
                      "|kappa1(s,s) - kappa2(s,s)| = %.6g at s = %.6g",
                      name_.c_str(), worst, worst_s);
        throw Error(ErrorCode::Continuity, buf);
    }
}

bool GreenKernel::is_symmetric() const {
    constexpr int samples = 21;
    for (int i = 0; i < samples; ++i) {
        for (int j = 0; j < i; ++j) {
            const double s = static_cast<double>(i) / (samples - 1);
            const double t = static_cast<double>(j) / (samples - 1);
            const double a = (*this)(s, t);
            const double b = (*this)(t, s);
            if (std::abs(a - b) > 1e-13 * (1.0 + std::abs(a))) return false;
        }
    }
    return true;
}

GreenKernel GreenKernel::adjoint() const {
    // For t <= s the adjoint reads kappa(t, s) with second argument >= first,
    // which is the kappa2 piece; symmetrically for the other triangle.
    auto k1 = kappa1_;
    auto k2 = kappa2_;
    GreenKernel adj(name_ + "*", [k2](double s, double t) { return k2(t, s); },
                    [k1](double s, double t) { return k1(t, s); }, alpha_, std::nullopt);
    return adj;
}

GreenKernel GreenKernel::with_text(std::string kappa1_text, std::string kappa2_text) const {
    GreenKernel copy = *this;
    copy.kappa1_text_ = std::move(kappa1_text);
    copy.kappa2_text_ = std::move(kappa2_text);
    return copy;
}

GreenKernel make_kernel(const KernelConfig& config) {
    const Expr e1 = parse_expr(config.kappa1);
    const Expr e2 = parse_expr(config.kappa2);
    std::optional<ExactEigenpair> exact;
    if (config.exact_eigenvalue) {
        if (!config.exact_eigenfunction)
            throw Error(ErrorCode::InvalidArgument, "exact eigenvalue given without eigenfunction");
        const Expr phi = parse_expr(*config.exact_eigenfunction);
        exact = ExactEigenpair{*config.exact_eigenvalue, EvalFn([phi](double s) { return phi(s, 0.0); }),
                               *config.exact_eigenfunction};
    }
    return GreenKernel(config.name, e1, e2, config.alpha, std::move(exact))
        .with_text(config.kappa1, config.kappa2);
}

double kernel_eval(const GreenKernel& k, double s, double t) {
    if (!(s >= 0.0 && s <= 1.0 && t >= 0.0 && t <= 1.0))
        throw Error(ErrorCode::OutOfDomain, "kernel evaluated outside [0,1]^2");
    return k(s, t);
}

KernelConfig parse_kernel_config(std::string_view json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("kernel config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "kernel config must be a JSON object");

    auto require_string = [&](const char* key) {
        if (!j.contains(key) || !j[key].is_string())
            throw Error(ErrorCode::InvalidArgument, std::string("kernel config needs string field '") + key + "'");
        return j[key].get<std::string>();
    };

    KernelConfig config;
    config.name = require_string("name");
    config.kappa1 = require_string("kappa1");
    config.kappa2 = require_string("kappa2");
    if (j.contains("alpha")) {
        if (!j["alpha"].is_number_integer())
            throw Error(ErrorCode::InvalidArgument, "kernel config field 'alpha' must be an integer");
        config.alpha = j["alpha"].get<int>();
    }
    if (j.contains("exact")) {
        const auto& ex = j["exact"];
        if (!ex.is_object() || !ex.contains("eigenvalue") || !ex["eigenvalue"].is_number() ||
            !ex.contains("eigenfunction") || !ex["eigenfunction"].is_string())
            throw Error(ErrorCode::InvalidArgument,
                        "kernel config field 'exact' needs number 'eigenvalue' and string 'eigenfunction'");
        config.exact_eigenvalue = ex["eigenvalue"].get<double>();
        config.exact_eigenfunction = ex["eigenfunction"].get<std::string>();
    }
    return config;
}

KernelConfig load_kernel_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open kernel config '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_kernel_config(buffer.str());
}

std::vector<std::string> builtin_kernel_names() { return {"greens_laplace", "smooth_exp"}; }

GreenKernel builtin_kernel(std::string_view name) {
    if (name == "greens_laplace") {
        // Green's function of -u'' = f with u(0) = u(1) = 0.
        ExactEigenpair exact{1.0 / (std::numbers::pi * std::numbers::pi),
                             EvalFn([](double s) { return std::sin(std::numbers::pi * s); }),
                             "sin(pi*s)"};
        return GreenKernel("greens_laplace", [](double s, double t) { return t * (1.0 - s); },
                           [](double s, double t) { return s * (1.0 - t); }, std::nullopt, std::move(exact))
            .with_text("t*(1-s)", "s*(1-t)");
    }
    if (name == "smooth_exp") {
        auto k = [](double s, double t) { return std::exp(s * t); };
        return GreenKernel("smooth_exp", k, k).with_text("exp(s*t)", "exp(s*t)");
    }
    std::string valid;
    for (const auto& n : builtin_kernel_names()) valid += (valid.empty() ? "" : ", ") + n;
    throw Error(ErrorCode::UnknownKernel,
                "unknown kernel '" + std::string(name) + "' (builtin kernels: " + valid + ")");
}

}  // namespace greenspec
