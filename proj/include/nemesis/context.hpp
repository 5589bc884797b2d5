// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>

#include "nemesis/embedding.hpp"
#include "nemesis/params.hpp"
#include "nemesis/ring.hpp"

namespace nemesis {

/// Validated parameters together with the ring and embedding tables they
/// induce. Immutable and shareable across threads.
class Context {
 public:
  explicit Context(const SchemeParams& params);

  static std::shared_ptr<const Context> create(const SchemeParams& params) {
    return std::make_shared<const Context>(params);
  }

  const SchemeParams& params() const { return params_; }
  const RingPtr& ring() const { return ring_; }
  const EmbeddingTables<double>& embedding() const { return embedding_; }
  std::size_t degree() const { return params_.ring_degree; }
  std::size_t slot_count() const { return params_.slot_count(); }
  double scale() const { return params_.scale; }

 private:
  SchemeParams params_;
  RingPtr ring_;
  EmbeddingTables<double> embedding_;
};

using ContextPtr = std::shared_ptr<const Context>;

}  // namespace nemesis
