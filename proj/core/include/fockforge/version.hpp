// Copyright (c) 2026 The FockForge Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace fockforge {

inline constexpr const char* kVersionString = "0.1.0";

}  // namespace fockforge
