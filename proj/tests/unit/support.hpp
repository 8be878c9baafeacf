#pragma once

#include "disctrace/geometry.hpp"

#include <gtest/gtest.h>

#include <complex>

namespace disctrace::testing {

inline ::testing::AssertionResult near(cplx actual, cplx expected, double tol) {
    if (std::abs(actual - expected) <= tol) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << actual << " differs from " << expected << " by " << std::abs(actual - expected);
}

inline ::testing::AssertionResult near(const Complex2& actual, const Complex2& expected, double tol) {
    const double d = (actual - expected).norm();
    if (d <= tol) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << "(" << actual.z1 << ", " << actual.z2 << ") differs from (" << expected.z1 << ", "
                                         << expected.z2 << ") by " << d;
}

} // namespace disctrace::testing

#define EXPECT_CNEAR(a, b, tol) EXPECT_TRUE(::disctrace::testing::near((a), (b), (tol)))

#define EXPECT_THROW_KIND(stmt, expected_kind)                                  \
    do {                                                                        \
        try {                                                                   \
            stmt;                                                               \
            ADD_FAILURE() << "expected " #expected_kind;                        \
        } catch (const ::disctrace::Error& e) {                                 \
            EXPECT_EQ(e.kind(), ::disctrace::ErrorKind::expected_kind) << e.what(); \
        }                                                                       \
    } while (0)
