#pragma once

#include "critherm/error.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#define EXPECT_ERROR_CODE(stmt, expected)                                    \
  do {                                                                       \
    try {                                                                    \
      stmt;                                                                  \
      ADD_FAILURE() << "expected critherm::Error from " #stmt;               \
    } catch (const critherm::Error& err_) {                                  \
      EXPECT_EQ(err_.code(), expected) << err_.what();                       \
    }                                                                        \
  } while (0)

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}
