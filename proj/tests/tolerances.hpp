// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

// Frozen error thresholds: twice the maxima reported by measure_tolerances
// (see tolerances_measured.txt), rounded up to two significant digits.

#pragma once

namespace nemesis::tolerances {

inline constexpr double kEncode = 5.9e-6;
inline constexpr double kFresh = 5.1e-3;
inline constexpr double kMult = 3.4e-3;
inline constexpr double kRand = 1.4e-12;
inline constexpr double kRache = 2.3e-3;
inline constexpr double kNoiseRegression = 6.7e-2;

inline constexpr double kAggNemesis = 1.5e-3;
inline constexpr double kAggBatch = 1.4e-3;
inline constexpr double kAggNaive = 6.3e-4;
inline constexpr double kAggRache = 3.1e-3;

}  // namespace nemesis::tolerances
