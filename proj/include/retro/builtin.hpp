#pragma once

#include "retro/core.hpp"

namespace retro {

/// Registry holding every in-process suite, built once.
const SuiteRegistry& builtin_registry();

} // namespace retro
