#pragma once

#include <gtest/gtest.h>

#include "desolve/error.hpp"

#define EXPECT_DESOLVE_ERROR(statement, expected_code)                          \
  do {                                                                          \
    bool thrown_ = false;                                                       \
    try {                                                                       \
      statement;                                                                \
    } catch (const ::desolve::Error& e_) {                                      \
      thrown_ = true;                                                           \
      EXPECT_EQ(e_.code(), expected_code) << e_.what();                         \
    }                                                                           \
    EXPECT_TRUE(thrown_) << "expected " << ::desolve::to_string(expected_code); \
  } while (false)
