#pragma once

#include <doctest.h>

#include "greenspec/error.hpp"

// Runs fn and returns the ErrorCode it throws; fails the test if it returns.
template <class F>
greenspec::ErrorCode code_of(F&& fn) {
    try {
        fn();
    } catch (const greenspec::Error& e) {
        return e.code();
    }
    FAIL("expected a greenspec::Error");
    return greenspec::ErrorCode::InvalidArgument;
}
