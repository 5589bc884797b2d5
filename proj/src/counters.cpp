// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

#include "nemesis/counters.hpp"

namespace nemesis {

OpCounters& OpCounters::operator+=(const OpCounters& o) {
  ntt_forward += o.ntt_forward;
  ntt_inverse += o.ntt_inverse;
  ring_muls += o.ring_muls;
  public_key_muls += o.public_key_muls;
  encryptions += o.encryptions;
  ternary_samples += o.ternary_samples;
  uniform_samples += o.uniform_samples;
  gaussian_samples += o.gaussian_samples;
  ct_additions += o.ct_additions;
  precomputes += o.precomputes;
  return *this;
}

OpCounters operator-(const OpCounters& a, const OpCounters& b) {
  OpCounters d;
  d.ntt_forward = a.ntt_forward - b.ntt_forward;
  d.ntt_inverse = a.ntt_inverse - b.ntt_inverse;
  d.ring_muls = a.ring_muls - b.ring_muls;
  d.public_key_muls = a.public_key_muls - b.public_key_muls;
  d.encryptions = a.encryptions - b.encryptions;
  d.ternary_samples = a.ternary_samples - b.ternary_samples;
  d.uniform_samples = a.uniform_samples - b.uniform_samples;
  d.gaussian_samples = a.gaussian_samples - b.gaussian_samples;
  d.ct_additions = a.ct_additions - b.ct_additions;
  d.precomputes = a.precomputes - b.precomputes;
  return d;
}

std::ostream& operator<<(std::ostream& os, const OpCounters& c) {
  return os << "{ntt_fwd=" << c.ntt_forward << " ntt_inv=" << c.ntt_inverse
            << " ring_muls=" << c.ring_muls << " pk_muls=" << c.public_key_muls
            << " encryptions=" << c.encryptions << " ternary=" << c.ternary_samples
            << " uniform=" << c.uniform_samples << " gaussian=" << c.gaussian_samples
            << " ct_adds=" << c.ct_additions << " precomputes=" << c.precomputes << "}";
}

namespace instrumentation {

OpCounters& thread_counters() {
  thread_local OpCounters counters;
  return counters;
}

}  // namespace instrumentation
}  // namespace nemesis
