#pragma once

#include <optional>
#include <utility>

#include "trsys/errors.hpp"

namespace testutil {

// Runs f and reports the trsys error kind it threw, if any.
template <typename F>
std::optional<trsys::ErrorKind> caught_kind(F&& f) {
  try {
    std::forward<F>(f)();
  } catch (const trsys::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

}  // namespace testutil
