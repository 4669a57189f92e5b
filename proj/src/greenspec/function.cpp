#include "greenspec/function.hpp"

namespace greenspec {

namespace {

struct Scaled final : FunctionBase {
    Scaled(EvalFn f, double factor) : f(std::move(f)), factor(factor) {}
    double value(double t, Side side) const override { return factor * f(t, side); }
    EvalFn f;
    double factor;
};

}  // namespace

EvalFn EvalFn::scaled(double factor) const {
    return EvalFn(std::make_shared<Scaled>(*this, factor));
}

}  // namespace greenspec
