// Copyright 2026 The symtest developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include <catch2/catch_amalgamated.hpp>

#include "symtest/protocol.hpp"

using namespace symtest;

namespace {

const std::vector<SubgroupKind> kSubgroups{trivial_subgroup(), torus_subgroup(),
                                           orthogonal_subgroup()};

double acceptance_of(const ParallelProtocol& p, const CMat& g) {
  const Eigen::Index sys = Eigen::Index(1) << p.n;
  const CMat f = tensor_power(g, p.n);
  const Eigen::Map<const CMat> psi(p.input.amplitudes().data(), sys, p.reference_dim);
  CMat moved = f * psi;
  const Eigen::Map<const CVec> w(moved.data(), sys * p.reference_dim);
  return (w.adjoint() * p.tester.matrix() * w)(0, 0).real();
}

}  // namespace

TEST_CASE("frozen constructions") {
  SECTION("torus at two queries") {
    const auto p = build_optimal_protocol(torus_subgroup(), 2);
    CHECK(p.reference_free);
    CHECK(p.reference_dim == 1);
    CHECK(p.target_beta == Rational(1, 4));
    // (1/2)|singlet> + (sqrt3/2)|triplet, m=0>
    const double a = 0.5 / std::sqrt(2.0), b = std::sqrt(3.0) / 2.0 / std::sqrt(2.0);
    CHECK(std::abs(p.input.amplitudes()(1) - cplx(a + b)) < 1e-12);
    CHECK(std::abs(p.input.amplitudes()(2) - cplx(b - a)) < 1e-12);
    CHECK(std::abs(p.input.amplitudes()(0)) < 1e-14);
    CHECK(std::abs(p.input.amplitudes()(3)) < 1e-14);
  }

  SECTION("identity test at one query uses the Bell pair") {
    const auto p = build_optimal_protocol(trivial_subgroup(), 1);
    CHECK_FALSE(p.reference_free);
    CHECK(p.reference_dim == 2);
    CHECK(p.target_beta == Rational(1, 4));
    const double rt = 1.0 / std::sqrt(2.0);
    CVec bell(4);
    bell << rt, 0, 0, rt;
    CHECK((p.input.amplitudes() - bell).norm() < 1e-12);
    // tester is the projector onto that state
    CHECK(max_abs(p.tester.matrix() - CMat(bell * bell.adjoint())) < 1e-12);
  }

  SECTION("time-reversal test at one query accepts everything") {
    const auto p = build_optimal_protocol(orthogonal_subgroup(), 1);
    CHECK(p.reference_free);
    CHECK(p.target_beta == 1);
    const auto r = simulate(p, 500, 2000, RngStream{61, 0});
    CHECK(r.type1_worst <= 1e-9);
    CHECK(r.type2_mean == Catch::Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("tester feasibility and invariance") {
  for (const auto& subgroup : kSubgroups) {
    for (int n = 1; n <= 4; ++n) {
      const auto p = build_optimal_protocol(subgroup, n);

      SECTION("spectrum of T0 in [0, 1], " + subgroup_name(subgroup) + " n=" + std::to_string(n)) {
        const auto sys = hermitian_eig(p.tester);
        CHECK(sys.values.minCoeff() >= -1e-10);
        CHECK(sys.values.maxCoeff() <= 1.0 + 1e-10);
      }

      SECTION("invariance under 50 sampled subgroup elements, " + subgroup_name(subgroup) +
              " n=" + std::to_string(n)) {
        CounterRng rng(RngStream{62, static_cast<std::uint64_t>(10 * n)});
        for (int i = 0; i < 50; ++i) {
          CMat g = CMat::Identity(2, 2);
          if (subgroup.family == SubgroupFamily::Torus) g = haar_sample(torus_group(2), rng);
          if (subgroup.family == SubgroupFamily::Orthogonal)
            g = haar_sample(orthogonal2_group(), rng);
          const CMat fg = kron(tensor_power(g, n), CMat::Identity(p.reference_dim, p.reference_dim));
          CHECK(max_abs(fg * p.tester.matrix() * fg.adjoint() - p.tester.matrix()) < 1e-8);
        }
      }
    }
  }
}

TEST_CASE("zero type-I error and constant acceptance") {
  for (const auto& subgroup : kSubgroups) {
    for (int n = 1; n <= 4; ++n) {
      const auto p = build_optimal_protocol(subgroup, n);
      CounterRng rng(RngStream{63, static_cast<std::uint64_t>(n)});
      double mean = 0.0, mean_sq = 0.0;
      const int draws = 200;
      for (int i = 0; i < draws; ++i) {
        CMat g = CMat::Identity(2, 2);
        if (subgroup.family == SubgroupFamily::Torus) g = haar_sample(torus_group(2), rng);
        if (subgroup.family == SubgroupFamily::Orthogonal)
          g = haar_sample(orthogonal2_group(), rng);
        const double acc = acceptance_of(p, g);
        CHECK(1.0 - acc <= 1e-9);
        mean += acc / draws;
        mean_sq += acc * acc / draws;
      }
      CHECK(mean_sq - mean * mean <= 1e-18);
    }
  }
}

TEST_CASE("simulated type-II error matches the optimum") {
  for (const auto& subgroup : kSubgroups) {
    for (int n = 1; n <= 4; ++n) {
      const auto p = build_optimal_protocol(subgroup, n);
      const auto r = simulate(p, 1000, 20000, RngStream{64, static_cast<std::uint64_t>(n)});
      const double beta = static_cast<double>(p.target_beta);
      CHECK(r.type1_worst <= 1e-9);
      CHECK(std::abs(r.type2_mean - beta) <= 4.0 * r.type2_stderr + 1e-12);
    }
  }
}

TEST_CASE("frozen simulation examples") {
  {
    const auto r = simulate(build_optimal_protocol(torus_subgroup(), 2), 10000, 100000,
                            RngStream{65, 0});
    CHECK(r.type1_worst <= 1e-9);
    CHECK(std::abs(r.type2_mean - 0.25) <= 4.0 * r.type2_stderr);
  }
  {
    const auto r = simulate(build_optimal_protocol(trivial_subgroup(), 2), 10000, 100000,
                            RngStream{65, 1});
    CHECK(r.type1_worst <= 1e-9);
    CHECK(std::abs(r.type2_mean - 0.10) <= 4.0 * r.type2_stderr);
  }
}

TEST_CASE("accept-all tester is blind") {
  const Eigen::Index dim = 4;
  CVec psi = CVec::Zero(dim);
  psi(0) = 1.0;
  ParallelProtocol blind{2,
                         torus_subgroup(),
                         PureState(psi),
                         1,
                         HermitianOperator(CMat::Identity(dim, dim)),
                         std::nullopt,
                         true,
                         Rational(1),
                         std::nullopt};
  const auto r = simulate(blind, 500, 1000, RngStream{66, 0});
  CHECK(r.type1_worst <= 1e-12);
  CHECK(r.type2_mean == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("reference flags") {
  for (int n = 1; n <= 6; ++n) {
    CHECK_FALSE(reference_free_verdict(trivial_subgroup(), n));
    CHECK(reference_free_verdict(torus_subgroup(), n));
    CHECK(reference_free_verdict(orthogonal_subgroup(), n));
  }
  for (int n = 1; n <= 5; ++n) {
    CHECK(build_optimal_protocol(trivial_subgroup(), n).reference_free == false);
    CHECK(build_optimal_protocol(torus_subgroup(), n).reference_free == true);
    CHECK(build_optimal_protocol(orthogonal_subgroup(), n).reference_free == true);
  }

  SECTION("flags agree with the branching criterion at the construction eta") {
    for (int n = 1; n <= 5; ++n) {
      for (const auto& subgroup : kSubgroups) {
        const auto p = build_optimal_protocol(subgroup, n);
        const int table_n =
            (subgroup.family == SubgroupFamily::Orthogonal && n % 2 == 1) ? n - 1 : n;
        if (table_n == 0) continue;  // idle extension of the empty test has no eta
        REQUIRE(p.eta.has_value());
        CHECK(ancilla_free_condition(branching_table(subgroup, table_n), *p.eta) ==
              p.reference_free);
      }
    }
  }
}

TEST_CASE("plateau construction at odd time-reversal queries") {
  const auto p3 = build_optimal_protocol(orthogonal_subgroup(), 3);
  CHECK(p3.n == 3);
  CHECK(p3.reference_free);
  CHECK(p3.target_beta == Rational(1, 3));
  CHECK(p3.target_beta == closed_form_beta0(orthogonal_subgroup(), 2));
  const auto r = simulate(p3, 2000, 20000, RngStream{67, 0});
  CHECK(r.type1_worst <= 1e-9);
  CHECK(std::abs(r.type2_mean - 1.0 / 3.0) <= 4.0 * r.type2_stderr);
}

TEST_CASE("protocol JSON export") {
  const auto p = build_optimal_protocol(torus_subgroup(), 2);
  const auto j = protocol_to_json(p);
  CHECK(j.at("n") == 2);
  CHECK(j.at("subgroup") == "torus");
  CHECK(j.at("reference_free") == true);
  CHECK(j.at("target_beta").at("rational") == "1/4");
  REQUIRE(j.at("input_state").size() == 4);
  for (Eigen::Index i = 0; i < 4; ++i) {
    const auto& pair = j.at("input_state").at(i);
    CHECK(pair.at(0).get<double>() == Catch::Approx(p.input.amplitudes()(i).real()));
    CHECK(pair.at(1).get<double>() == Catch::Approx(p.input.amplitudes()(i).imag()));
  }
  CHECK(j.at("tester").at("side") == 4);
  CHECK(j.at("tester").at("entries").size() == 4);
}

TEST_CASE("construction guards") {
  CHECK_THROWS_AS(build_optimal_protocol(torus_subgroup(), 0), RangeError);
  CHECK_THROWS_AS(build_optimal_protocol(torus_subgroup(), 6), RangeError);
  CHECK_THROWS_AS(simulate(build_optimal_protocol(torus_subgroup(), 1), 10, 10, RngStream{}),
                  RangeError);
}
