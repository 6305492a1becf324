/*
 *   Copyright 2026 The ergoq Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

#include "ergoq/qrseq.hpp"
#include "oracles.hpp"

using namespace ergoq;

TEST(Digits, Examples) {
  EXPECT_EQ(to_digits(5, 3).digits, (std::vector<std::uint32_t>{2, 1}));
  EXPECT_EQ(to_digits(0, 3).digits, (std::vector<std::uint32_t>{0}));
  EXPECT_EQ(to_digits(9, 3).digits, (std::vector<std::uint32_t>{0, 0, 1}));
  EXPECT_EQ(to_digits(9, 3).base, 3u);
}

TEST(Digits, RejectsBaseBelowTwo) {
  EXPECT_THROW(to_digits(5, 1), InvalidArgument);
  EXPECT_THROW(to_digits(5, 0), InvalidArgument);
}

TEST(Digits, ReconstructAndNoTrailingZeros) {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 2000; ++rep) {
    const std::uint64_t n = rng() >> (rng() % 64);
    const std::uint32_t p = std::uniform_int_distribution<std::uint32_t>(2, 40)(rng);
    const auto dv = to_digits(n, p);
    EXPECT_EQ(dv.value(), n);
    for (auto d : dv.digits) EXPECT_LT(d, p);
    if (n != 0) {
      EXPECT_NE(dv.digits.back(), 0u);
    }
  }
}

TEST(RadicalInverse, Examples) {
  EXPECT_DOUBLE_EQ(radical_inverse({{0, 1}, 3}), 1.0 / 9);
  EXPECT_DOUBLE_EQ(radical_inverse({{0, 0, 1}, 3}), 1.0 / 27);
  EXPECT_EQ(radical_inverse({{0}, 3}), 0.0);
  EXPECT_EQ(radical_inverse({{1}, 2}), 0.5);
  // 13 = 111 in base 3
  EXPECT_NEAR(radical_inverse(to_digits(13, 3)), 13.0 / 27, 1e-15);
}

TEST(RadicalInverse, ResolutionGrid) {
  // n < p^k  =>  phi(n) is a multiple of p^-k.
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    std::uint64_t pk = 1;
    for (int k = 1; k <= 6; ++k) {
      pk *= p;
      for (std::uint64_t n = 0; n < pk; n += std::max<std::uint64_t>(1, pk / 97)) {
        const double scaled = radical_inverse(to_digits(n, p)) * static_cast<double>(pk);
        EXPECT_NEAR(scaled, std::round(scaled), 1e-9) << "p=" << p << " n=" << n;
      }
    }
  }
}

TEST(RadicalInverse, StaysBelowOne) {
  EXPECT_LT(radical_inverse(to_digits(~std::uint64_t{0}, 2)), 1.0);
  EXPECT_LT(radical_inverse(to_digits(~std::uint64_t{0}, 3)), 1.0);
}

TEST(Pascal, Examples) {
  EXPECT_EQ(pascal_permute({{2}, 3}).digits, (std::vector<std::uint32_t>{2}));
  EXPECT_EQ(pascal_permute({{4}, 5}).digits, (std::vector<std::uint32_t>{4}));
  EXPECT_EQ(pascal_permute({{0, 1}, 3}).digits, (std::vector<std::uint32_t>{1, 1}));
  EXPECT_EQ(pascal_permute({{2, 1}, 3}).digits, (std::vector<std::uint32_t>{0, 1}));
}

TEST(Pascal, LeadingDigitSpreadsDown) {
  // out[j] = C(2, j) mod 3
  EXPECT_EQ(pascal_permute({{0, 0, 1}, 3}).digits, (std::vector<std::uint32_t>{1, 2, 1}));
  // C(2,1) = 2 vanishes mod 2
  EXPECT_EQ(pascal_permute({{0, 0, 1}, 2}).digits, (std::vector<std::uint32_t>{1, 0, 1}));
}

TEST(Pascal, PeriodIsBase) {
  // The Pascal matrix mod p has order p: P^m(j,l) = C(l,j) m^(l-j).
  std::mt19937_64 rng(3);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (int rep = 0; rep < 50; ++rep) {
      auto dv = to_digits(rng() % 1000000, p);
      auto cur = dv;
      for (std::uint32_t m = 0; m < p; ++m) cur = pascal_permute(cur);
      EXPECT_EQ(cur, dv);
    }
  }
}

TEST(Primes, SmallestPrimeGreater) {
  EXPECT_EQ(smallest_prime_greater(1), 2u);
  EXPECT_EQ(smallest_prime_greater(2), 3u);
  EXPECT_EQ(smallest_prime_greater(3), 5u);
  EXPECT_EQ(smallest_prime_greater(4), 5u);
  EXPECT_EQ(smallest_prime_greater(5), 7u);
  EXPECT_EQ(smallest_prime_greater(100), 101u);
  EXPECT_EQ(smallest_prime_greater(1000), 1009u);
  EXPECT_THROW(smallest_prime_greater(0), InvalidArgument);
}

TEST(Primes, FirstPrimes) {
  EXPECT_EQ(first_primes(6), (std::vector<std::uint32_t>{2, 3, 5, 7, 11, 13}));
}

TEST(Faure, BaseFollowsDimension) {
  EXPECT_EQ(GeneratorSpec::faure(1).resolved_base(), 2u);
  EXPECT_EQ(GeneratorSpec::faure(2).resolved_base(), 3u);
  EXPECT_EQ(GeneratorSpec::faure(3).resolved_base(), 5u);
  EXPECT_EQ(GeneratorSpec::faure(4).resolved_base(), 5u);
  EXPECT_EQ(GeneratorSpec::faure(2).resolved_skip(), 3u);
  EXPECT_EQ(GeneratorSpec::torus(2).resolved_skip(), 0u);
}

TEST(Faure, TableRowsTwoDimensions) {
  const auto spec = GeneratorSpec::faure(2);
  EXPECT_EQ(faure_point(0, spec), (Point{{0.0, 0.0}}));
  const auto p1 = faure_point(1, spec);
  EXPECT_NEAR(p1[0], 1.0 / 3, 1e-15);
  EXPECT_NEAR(p1[1], 1.0 / 3, 1e-15);
  const auto p3 = faure_point(3, spec);
  EXPECT_NEAR(p3[0], 1.0 / 9, 1e-15);
  EXPECT_NEAR(p3[1], 4.0 / 9, 1e-15);
  const auto p9 = faure_point(9, spec);
  EXPECT_NEAR(p9[0], 1.0 / 27, 1e-15);
  // [0,0,1] -> [1,2,1] under one Pascal step: 1/3 + 2/9 + 1/27.
  EXPECT_NEAR(p9[1], 16.0 / 27, 1e-15);
}

TEST(Faure, FirstCoordinateIsRadicalInverse) {
  for (std::size_t d : {1u, 2u, 3u, 7u}) {
    const auto spec = GeneratorSpec::faure(d);
    const Generator g(spec);
    for (std::uint64_t i = 0; i < 500; ++i) {
      EXPECT_EQ(g.point(i)[0], radical_inverse(to_digits(i, spec.resolved_base())));
    }
  }
}

TEST(Faure, MatchesClosedFormPascalPower) {
  for (std::size_t d : {2u, 4u, 6u, 12u}) {
    const auto spec = GeneratorSpec::faure(d);
    const Generator g(spec);
    const auto p = spec.resolved_base();
    for (std::uint64_t i = 0; i < 400; i += 3) {
      const auto pt = g.point(i);
      for (std::size_t k = 0; k < d; ++k) {
        EXPECT_NEAR(pt[k], oracle::faure_coordinate(i, k, p), 1e-15)
            << "d=" << d << " i=" << i << " k=" << k;
      }
    }
  }
}

TEST(Faure, BlockPermutationBase3) {
  const Generator g(GeneratorSpec::faure(2));
  for (std::size_t k = 0; k < 2; ++k) {
    std::set<long> seen;
    for (std::uint64_t i = 0; i < 9; ++i) seen.insert(std::lround(g.point(i)[k] * 9));
    EXPECT_EQ(seen.size(), 9u);
    EXPECT_EQ(*seen.begin(), 0);
    EXPECT_EQ(*seen.rbegin(), 8);
  }
  std::set<long> seen27;
  for (std::uint64_t i = 0; i < 27; ++i) seen27.insert(std::lround(g.point(i)[0] * 27));
  EXPECT_EQ(seen27.size(), 27u);
}

TEST(Faure, RejectsBadSpecs) {
  GeneratorSpec s = GeneratorSpec::faure(3);
  s.base = 4;
  EXPECT_THROW(Generator{s}, InvalidArgument);
  s.base = 2;
  EXPECT_THROW(Generator{s}, InvalidArgument);
  EXPECT_THROW(faure_point(0, GeneratorSpec::torus(2)), InvalidArgument);
  EXPECT_THROW(Generator{GeneratorSpec::faure(0)}, InvalidArgument);
}

namespace {

using Big = boost::multiprecision::cpp_bin_float_50;

double big_frac(std::uint64_t i, const Big& alpha) {
  const Big x = Big(i) * alpha;
  return static_cast<double>(x - floor(x));
}

}  // namespace

TEST(Kronecker, Examples) {
  EXPECT_EQ(kronecker_point(0, GeneratorSpec::torus(3)), (Point{{0.0, 0.0, 0.0}}));
  const auto p = kronecker_point(1, GeneratorSpec::torus(2));
  EXPECT_NEAR(p[0], 0.4142135624, 1e-10);
  EXPECT_NEAR(p[1], 0.7320508076, 1e-10);
  EXPECT_NEAR(kronecker_point(2, GeneratorSpec::torus(1))[0], 0.8284271247, 1e-10);
}

TEST(Kronecker, TorusMatchesHighPrecision) {
  const auto primes = first_primes(5);
  const Generator g(GeneratorSpec::torus(5));
  std::mt19937_64 rng(5);
  std::vector<std::uint64_t> idx = {1, 2, 3, 1000, 9999999, 10000000};
  for (int r = 0; r < 200; ++r) idx.push_back(rng() % 10000001);
  for (auto i : idx) {
    const auto pt = g.point(i);
    for (std::size_t k = 0; k < 5; ++k) {
      const double expect = big_frac(i, sqrt(Big(primes[k])));
      EXPECT_NEAR(pt[k], expect, 1e-12) << "i=" << i << " k=" << k;
    }
  }
}

TEST(Kronecker, ExplicitMultipliers) {
  const auto spec = GeneratorSpec::kronecker({0.5, 1.25});
  EXPECT_EQ(kronecker_point(3, spec), (Point{{0.5, 0.75}}));
  EXPECT_THROW(Generator{GeneratorSpec::kronecker({1.0, -2.0})}, InvalidArgument);
  EXPECT_THROW(Generator{GeneratorSpec::kronecker({0.0})}, InvalidArgument);
  GeneratorSpec mismatch = GeneratorSpec::kronecker({0.5});
  mismatch.dim = 2;
  EXPECT_THROW(Generator{mismatch}, InvalidArgument);
}

TEST(Generators, RangeAndDeterminism) {
  std::mt19937_64 rng(99);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t d = 1 + rng() % 12;
    GeneratorSpec spec;
    switch (rng() % 3) {
      case 0: spec = GeneratorSpec::faure(d); break;
      case 1: spec = GeneratorSpec::torus(d); break;
      default: {
        std::vector<double> a(d);
        for (auto& x : a) x = std::uniform_real_distribution<double>(0.01, 50.0)(rng);
        spec = GeneratorSpec::kronecker(a);
      }
    }
    const Generator g(spec);
    const std::uint64_t i = rng() % 5000000;
    const auto a = g.point(i);
    const auto b = Generator(spec).point(i);
    ASSERT_EQ(a, b);
    for (double x : a.coords) {
      EXPECT_GE(x, 0.0);
      EXPECT_LT(x, 1.0);
    }
  }
}

TEST(VanDerCorput, Base2) {
  const Generator g(GeneratorSpec::van_der_corput());
  EXPECT_EQ(g.point(1)[0], 0.5);
  EXPECT_EQ(g.point(2)[0], 0.25);
  EXPECT_EQ(g.point(3)[0], 0.75);
  GeneratorSpec bad = GeneratorSpec::van_der_corput(4);
  EXPECT_THROW(Generator{bad}, InvalidArgument);
}

TEST(GeneratorKind, NamesRoundTrip) {
  for (auto k : {GeneratorKind::Faure, GeneratorKind::Kronecker, GeneratorKind::Torus,
                 GeneratorKind::VanDerCorput}) {
    EXPECT_EQ(parse_generator_kind(to_string(k)), k);
  }
  EXPECT_THROW(parse_generator_kind("sobol"), InvalidArgument);
}
