// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

#include <Eigen/LU>

#include "doctest.h"
#include "nemesis/context.hpp"
#include "nemesis/encoding.hpp"
#include "nemesis/errors.hpp"
#include "nemesis/sampling.hpp"
#include "support.hpp"
#include "tolerances.hpp"

using namespace nemesis;
using testing::max_diff;
using testing::random_slots;

namespace {

Eigen::VectorXd to_real(const IntVector& v) { return v.cast<double>(); }

}  // namespace

TEST_CASE("Vandermonde solve agrees with an LU factorisation") {
  for (std::size_t d : {1u, 2u, 8u, 64u}) {
    const VandermondeSystem<double> system(d);
    const Eigen::MatrixXcd v = system.matrix();
    Rng rng(d);
    for (int t = 0; t < 10; ++t) {
      Eigen::VectorXcd rhs(static_cast<Eigen::Index>(d));
      for (auto& x : rhs) x = {2 * rng.next_unit_open() - 1, 2 * rng.next_unit_open() - 1};
      const Eigen::VectorXcd lu = v.fullPivLu().solve(rhs);
      const Eigen::VectorXcd y = system.solve(rhs);
      CHECK((lu - y).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((system.apply(y) - rhs).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((v * y - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
    if (d > 1) {
      const std::complex<double> w = system.omega();
      CHECK(std::abs(std::pow(w, static_cast<double>(d)) - 1.0) < 1e-12);
      CHECK(std::abs(std::pow(w, static_cast<double>(d / 2)) + 1.0) < 1e-12);
    }
  }
  CHECK_THROWS_AS(VandermondeSystem<double>(6), ParameterError);
}

TEST_CASE("the Vandermonde system is generic over the scalar type") {
  const VandermondeSystem<long double> wide(16);
  const VandermondeSystem<float> narrow(16);
  ComplexVectorT<long double> rhs = ComplexVectorT<long double>::Zero(16);
  rhs[3] = 1;
  const auto y = wide.solve(rhs);
  CHECK(std::abs(wide.apply(y)[3] - 1.0L) < 1e-15L);
  ComplexVectorT<float> rhs_f = rhs.cast<std::complex<float>>();
  CHECK(std::abs(narrow.apply(narrow.solve(rhs_f))[3] - 1.0f) < 1e-5f);
  const EmbeddingTables<long double> tables(8);
  RealVectorT<long double> slots = RealVectorT<long double>::Constant(8, 0.5L);
  const IntVector c = embed_fast(tables, slots, 1024.0L);
  CHECK(c[0] == 512);
}

TEST_CASE("both encoders agree within one unit for d in {2, 8, 64}") {
  for (std::size_t d : {2u, 8u, 64u}) {
    const EmbeddingTables<double> tables(d);
    const VandermondeSystem<double> system(d);
    Rng rng(100 + d);
    for (int t = 0; t < 100; ++t) {
      const Eigen::VectorXd m = random_slots(rng, d, 4.0);
      const IntVector a = embed_vandermonde(tables, system, m, 0x1p25);
      const IntVector b = embed_fast(tables, m, 0x1p25);
      REQUIRE(a.size() == static_cast<Eigen::Index>(2 * d));
      CHECK((a - b).cwiseAbs().maxCoeff() <= 1);
    }
  }
}

TEST_CASE("encoding evaluates back to the slots at the embedding points") {
  const Context ctx(params_with_degree(16));
  Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    const SlotVector m = random_slots(rng, 8);
    const Plaintext pt = encode_fast(ctx, m);
    const Eigen::VectorXcd z = testing::evaluate_slots(testing::centered_coefficients(pt.poly), pt.scale);
    CHECK(max_diff(z.real(), m) < 1e-6);
    CHECK(z.imag().cwiseAbs().maxCoeff() < 1e-6);
    const Plaintext pv = encode_vandermonde(ctx, m, build_vandermonde(8, 8));
    const Eigen::VectorXcd zv = testing::evaluate_slots(testing::centered_coefficients(pv.poly), pv.scale);
    CHECK(max_diff(zv.real(), m) < 1e-6);
  }
}

TEST_CASE("special inputs") {
  const Context ctx(default_params());
  const std::size_t d = ctx.slot_count();
  CHECK(encode_fast(ctx, SlotVector::Zero(static_cast<Eigen::Index>(d))).poly.is_zero());
  const auto system = build_vandermonde(d, d);
  CHECK(encode_vandermonde(ctx, SlotVector::Zero(static_cast<Eigen::Index>(d)), system).poly.is_zero());
  for (double c : {1.0, -2.5, 0.125}) {
    for (const Plaintext& pt : {encode_fast(ctx, SlotVector::Constant(static_cast<Eigen::Index>(d), c)),
                                encode_vandermonde(ctx, SlotVector::Constant(static_cast<Eigen::Index>(d), c), system)}) {
      const auto coeffs = testing::centered_coefficients(pt.poly);
      CHECK(coeffs[0] == c * ctx.scale());
      for (std::size_t i = 1; i < coeffs.size(); ++i) CHECK(coeffs[i] == 0);
    }
  }
  const Plaintext short_pt = encode_fast(ctx, SlotVector::Constant(5, 0.5));
  CHECK(short_pt.slots_used == 5);
  CHECK(decode(ctx, short_pt).size() == 5);
}

TEST_CASE("encoding preconditions") {
  const Context ctx(params_with_degree(16));
  CHECK_THROWS_AS(encode_fast(ctx, SlotVector::Zero(9)), ParameterError);
  CHECK_THROWS_AS(encode_fast(ctx, SlotVector::Constant(2, 65.0)), RangeError);
  CHECK_THROWS_AS(encode_fast(ctx, SlotVector::Constant(2, std::nan(""))), RangeError);
  CHECK_THROWS_AS(build_vandermonde(16, 8), ParameterError);
  CHECK_THROWS_AS(build_vandermonde(3, 8), ParameterError);
  CHECK_THROWS_AS(encode_vandermonde(ctx, SlotVector::Zero(4), build_vandermonde(4, 8)), ParameterError);
  Plaintext pt = encode_fast(ctx, SlotVector::Zero(4));
  pt.scale = 0;
  CHECK_THROWS_AS(decode(ctx, pt), ParameterError);
}

TEST_CASE("roundtrip error stays below the encoding tolerance") {
  const Context ctx(default_params());
  Rng rng(77);
  double worst = 0;
  for (int t = 0; t < 10000; ++t) {
    const SlotVector m = random_slots(rng, ctx.slot_count());
    worst = std::max(worst, max_diff(decode(ctx, encode_fast(ctx, m)), m));
  }
  CHECK(worst <= tolerances::kEncode);
  MESSAGE("max roundtrip error " << worst);
}

TEST_CASE("encoding is linear up to rounding") {
  const Context ctx(default_params());
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const SlotVector a = random_slots(rng, ctx.slot_count());
    const SlotVector b = random_slots(rng, ctx.slot_count());
    const auto lhs = testing::centered_coefficients(encode_fast(ctx, 3.0 * a + b).poly);
    const auto ea = testing::centered_coefficients(encode_fast(ctx, a).poly);
    const auto eb = testing::centered_coefficients(encode_fast(ctx, b).poly);
    double worst = 0;
    for (std::size_t i = 0; i < lhs.size(); ++i) worst = std::max(worst, std::abs(lhs[i] - (3 * ea[i] + eb[i])));
    CHECK(worst <= 4.0);  // rounding: 0.5 per encode, scaled by the coefficients
    const SlotVector sum = decode(ctx, Plaintext{ring_add(encode_fast(ctx, a).poly, encode_fast(ctx, b).poly),
                                                 ctx.scale(), ctx.slot_count()});
    CHECK(max_diff(sum, a + b) <= 2 * tolerances::kEncode);
  }
}

TEST_CASE("slot-wise product theorem at N = 16") {
  const Context ctx(params_with_degree(16));
  Rng rng(16);
  for (int t = 0; t < 200; ++t) {
    const SlotVector a = random_slots(rng, 8, 4.0);
    const SlotVector b = random_slots(rng, 8, 4.0);
    const RingElement prod = ring_mul(encode_fast(ctx, a).poly, encode_fast(ctx, b).poly);
    const Eigen::VectorXcd direct =
        testing::evaluate_slots(testing::centered_coefficients(prod), ctx.scale() * ctx.scale());
    CHECK(max_diff(direct.real(), a.cwiseProduct(b)) < 1e-5);
    const SlotVector decoded = decode(ctx, Plaintext{prod, ctx.scale() * ctx.scale(), 8});
    CHECK(max_diff(decoded, a.cwiseProduct(b)) < 1e-5);
  }
}

TEST_CASE("decode of the zero polynomial") {
  const Context ctx(default_params());
  const SlotVector z = decode(ctx, Plaintext{RingElement(ctx.ring()), ctx.scale(), ctx.slot_count()});
  CHECK(z.cwiseAbs().maxCoeff() == 0.0);
  CHECK(to_real(embed_fast<double>(ctx.embedding(), Eigen::VectorXd(Eigen::VectorXd::Zero(4)), 1.0)).cwiseAbs().maxCoeff() == 0.0);
}
