#pragma once

#include "frobdens/error.hpp"
#include "frobdens/group.hpp"

#include <doctest.h>

#include <string>

/// Runs `expr` and checks that it throws frobdens::Error with `code`.
#define CHECK_ERROR_CODE(expr, want)                     \
  do {                                                    \
    bool thrown_ = false;                                 \
    try {                                                 \
      (void)(expr);                                       \
    } catch (const frobdens::Error& e_) {                 \
      thrown_ = true;                                     \
      CHECK_EQ(e_.code(), want);                          \
    }                                                     \
    CHECK_MESSAGE(thrown_, "expected an Error");          \
  } while (0)

namespace test {

inline frobdens::ElemId perm(const frobdens::GroupPtr& g, const std::string& cycles, int n) {
  return g->index_of(frobdens::parse_cycles(cycles, n));
}

inline frobdens::ElemId residue(const frobdens::GroupPtr& g, int r) {
  return g->index_of(frobdens::Code{r});
}

inline frobdens::Rational q(long long a, long long b = 1) { return frobdens::make_rational(a, b); }

}  // namespace test
