// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

#include "nemesis/context.hpp"

namespace nemesis {
namespace {

const SchemeParams& validated(const SchemeParams& params) {
  params.validate();
  return params;
}

}  // namespace

Context::Context(const SchemeParams& params)
    : params_(validated(params)),
      ring_(make_ring(params.ring_degree, params.modulus)),
      embedding_(params.slot_count()) {}

}  // namespace nemesis
