#pragma once

#include <functional>
#include <memory>
#include <type_traits>
#include <utility>

namespace greenspec {

/// Which one-sided limit to take at a point where a piecewise function may
/// jump. `Owner` follows the panel ownership convention.
enum class Side { Owner, Left, Right };

/// Interface for functions on [0,1] that may be piecewise.
class FunctionBase {
public:
    virtual ~FunctionBase() = default;
    virtual double value(double t, Side side) const = 0;
};

/// Immutable, cheaply copyable handle to an evaluable function of one
/// variable. Smooth functions ignore the side argument.
class EvalFn {
public:
    EvalFn() = default;
    explicit EvalFn(std::shared_ptr<const FunctionBase> impl) : impl_(std::move(impl)) {}

    template <class F>
        requires(!std::is_same_v<std::remove_cvref_t<F>, EvalFn> &&
                 std::is_invocable_r_v<double, F, double>)
    EvalFn(F f) : impl_(std::make_shared<Smooth<F>>(std::move(f))) {}

    double operator()(double t) const { return impl_->value(t, Side::Owner); }
    double operator()(double t, Side side) const { return impl_->value(t, side); }

    explicit operator bool() const noexcept { return static_cast<bool>(impl_); }

    /// Pointwise scaling that preserves one-sided limits.
    EvalFn scaled(double factor) const;

private:
    template <class F>
    struct Smooth final : FunctionBase {
        explicit Smooth(F f) : f(std::move(f)) {}
        double value(double t, Side) const override { return f(t); }
        F f;
    };

    std::shared_ptr<const FunctionBase> impl_;
};

}  // namespace greenspec
