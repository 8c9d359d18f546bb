// Copyright (c) 2026 The FockForge Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>

namespace fockforge {

// Worker count: `requested` if positive, else FOCKFORGE_THREADS if set,
// else hardware concurrency.  Always at least 1.
int resolve_thread_count(int requested);

// Runs fn(0..count-1) across `threads` workers.  Results must be written to
// disjoint slots — the function provides no synchronization beyond joining.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

}  // namespace fockforge
