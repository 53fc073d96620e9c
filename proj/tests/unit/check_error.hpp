#pragma once

#include "doctest.h"
#include "orthodual/error.hpp"

#define CHECK_ERROR_CODE(expr, expected)                         \
  do {                                                           \
    bool thrown_ = false;                                        \
    try {                                                        \
      (void)(expr);                                              \
    } catch (const orthodual::Error& e_) {                       \
      thrown_ = true;                                            \
      CHECK(e_.code() == orthodual::ErrorCode::expected);        \
    }                                                            \
    CHECK_MESSAGE(thrown_, "expected ErrorCode::" #expected);    \
  } while (false)
