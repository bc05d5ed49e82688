// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace mwlab {

// Process-wide worker count used by parallel_for (1 = serial).
void set_worker_count(std::size_t workers);
std::size_t worker_count();

// Calls body(i) for i in [0, count). Work is dealt out dynamically but every
// index writes only its own output slot, so results never depend on the
// worker count. Nested calls from inside a worker run serially. If several
// bodies throw, the exception from the lowest index is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace mwlab
