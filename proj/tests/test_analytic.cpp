#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "lrfhss/analytic.hpp"
#include "lrfhss/errors.hpp"
#include "lrfhss/rng.hpp"

using namespace lrfhss;
using doctest::Approx;

TEST_CASE("ongoing transmission count") {
  CHECK(ongoing_count(1000, 30, 1000, 3) ==
        Approx(36.85294117647059).epsilon(1e-12));
  CHECK(ongoing_count(102, 1, 102, 3) ==
        Approx(7.852941176470588).epsilon(1e-12));
  CHECK(ongoing_count(0, 30, 1000, 3) == 0.0);
  // two replicas shorten the airtime term
  CHECK(ongoing_count(1000, 30, 1000, 2) < ongoing_count(1000, 30, 1000, 3));
  CHECK_THROWS_AS(ongoing_count(-1, 30, 1000, 3), Error);
  CHECK_THROWS_AS(ongoing_count(10, 0, 1000, 3), Error);
}

TEST_CASE("free channel expectation") {
  CHECK(free_obw(35, 0) == 35.0);
  CHECK(free_obw(1, 1) == 0.0);
  CHECK(free_obw(35, 35) == Approx(12.689619168653506).epsilon(1e-12));
  CHECK_THROWS_AS(free_obw(0, 1), Error);
  CHECK_THROWS_AS(free_obw(35, -1), Error);
}

TEST_CASE("collision probability") {
  CHECK(coll(102, 35, 0) == 0.0);
  CHECK(coll(102, 35, 35) == Approx(0.6374394523241855).epsilon(1e-12));
  CHECK(coll(233, 35, 35) == Approx(0.9523413613589051).epsilon(1e-12));
  // 233 ms spans three slots, 102 ms exactly one
  CHECK(coll(233, 35, 10) > coll(102, 35, 10));
  CHECK(coll(102.0, 35, 10) == coll(50.0, 35, 10));   // both round up to 1 slot
  CHECK(coll(102.1, 35, 10) == coll(204.0, 35, 10));  // both round up to 2
  CHECK_THROWS_AS(coll(0, 35, 10), Error);
}

TEST_CASE("collision probability is monotone in duration and load") {
  double prev = -1.0;
  for (double d : {50.0, 102.0, 233.0, 500.0, 1000.0}) {
    double v = coll(d, 35, 20);
    CHECK(v >= prev);
    prev = v;
  }
  prev = -1.0;
  for (double n : {0.0, 1.0, 5.0, 35.0, 70.0, 500.0}) {
    double v = coll(102, 35, n);
    CHECK(v >= prev);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    prev = v;
  }
}

TEST_CASE("header survival") {
  CHECK(p_header(0, 3) == 1.0);
  CHECK(p_header(1, 3) == 0.0);
  CHECK(p_header(0.9523, 3) == Approx(0.13638266133299992).epsilon(1e-12));
  // an extra replica can only help
  CHECK(p_header(0.9, 3) > p_header(0.9, 2));
  CHECK_THROWS_AS(p_header(1.5, 3), Error);
}

TEST_CASE("payload survival") {
  CHECK(p_payload(10, 0.0, {1, 3}) == 1.0);
  CHECK(p_payload(10, 1.0, {1, 3}) == 0.0);
  CHECK(p_payload(3, 0.5, {1, 3}) == Approx(0.875).epsilon(1e-9));
  SUBCASE("numerically stable at large fragment counts") {
    CHECK(p_payload(1000, 0.3, {1, 3}) ==
          Approx(0.9999999999996259).epsilon(1e-9));
    CHECK(p_payload(1000, 0.7, {1, 3}) ==
          Approx(0.010921080113238026).epsilon(1e-9));
    CHECK(std::isfinite(p_payload(1000, 0.99, {2, 3})));
  }
  SUBCASE("lenient threshold dominates strict threshold") {
    for (int P : {1, 3, 10, 30, 90}) {
      for (double c : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        CHECK(p_payload(P, c, {1, 3}) >= p_payload(P, c, {2, 3}));
      }
    }
  }
}

TEST_CASE("frame survival composes header and payload") {
  auto sc = make_scenario(CodingRate::cr_1_3, 35, 1000, 30, 0);
  CHECK(p_frame(sc) == 1.0);  // empty channel, exact

  SUBCASE("reference point, three replicas") {
    auto robust = make_scenario(CodingRate::cr_1_3, 35, 1000, 30, 1000);
    const double n_og = ongoing_count(1000, 30, 1000, 3);
    const double hdr = p_header(coll(233, 35, n_og), 3);
    const double pld = p_payload(30, coll(102, 35, n_og), {1, 3});
    CHECK(hdr == Approx(0.1168276214106031).epsilon(1e-9));
    CHECK(pld == Approx(0.6145665868307952).epsilon(1e-9));
    CHECK(p_frame(robust) == Approx(0.07179835253787469).epsilon(1e-9));
    // published summary: about 90% of headers and 40% of payloads do not
    // survive at this load
    CHECK(std::abs((1.0 - hdr) - 0.9) <= 0.05);
    CHECK(std::abs((1.0 - pld) - 0.4) <= 0.05);
  }

  SUBCASE("reference point, two replicas") {
    const double n_og = ongoing_count(1000, 30, 1000, 2);
    const double pld = p_payload(30, coll(102, 35, n_og), {2, 3});
    // published summary: payload survives for only about 0.1% of frames
    CHECK(pld == Approx(0.0008316903847676253).epsilon(1e-9));
    CHECK(pld < 0.002);
    CHECK(pld > 0.0);
  }
}

TEST_CASE("frame survival never increases with load") {
  for (CodingRate cr : {CodingRate::cr_1_3, CodingRate::cr_2_3}) {
    for (int P : {10, 30, 50, 70, 90}) {
      double prev = 2.0;
      for (int n_tx = 0; n_tx <= 3000; n_tx += 100) {
        auto sc = make_scenario(cr, 35, 1000, P, n_tx);
        const double v = p_frame(sc);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        CHECK(v <= prev);
        prev = v;
      }
    }
  }
}

TEST_CASE("collision formula agrees with resampling") {
  // occupancy draw per interferer, fixed seed, 4 standard errors at 2e5
  const int C = 35;
  const int trials = 200000;
  Rng rng(20240817);
  for (int n_og : {5, 35, 70}) {
    int hits = 0;
    for (int i = 0; i < trials; ++i) {
      bool hit = false;
      for (int k = 0; k < n_og; ++k) {
        if (rng.below(C) == 0) hit = true;
      }
      hits += hit ? 1 : 0;
    }
    const double est = static_cast<double>(hits) / trials;
    const double expect = coll(102, C, n_og);
    const double se = std::sqrt(expect * (1 - expect) / trials);
    CHECK(std::abs(est - expect) <= 4.0 * se);
  }
}

TEST_CASE("curve emitter writes the documented columns") {
  std::ostringstream out;
  emit_analytic_csv(35, 1000, {3}, {0.0}, {CodingRate::cr_1_3}, out);
  CHECK(out.str() ==
        "n_tx,P,config,p_hdr,p_pld,p_frame\n"
        "0,3,robust,1,1,1\n");

  std::ostringstream out2;
  emit_analytic_csv(35, 1000, {10, 30}, {0.0, 500.0, 1000.0},
                    {CodingRate::cr_2_3, CodingRate::cr_1_3}, out2);
  std::istringstream lines(out2.str());
  std::string line;
  int rows = 0;
  bool saw_fast = false, saw_robust = false;
  while (std::getline(lines, line)) {
    ++rows;
    if (line.find(",fast,") != std::string::npos) saw_fast = true;
    if (line.find(",robust,") != std::string::npos) saw_robust = true;
  }
  CHECK(rows == 1 + 2 * 2 * 3);
  CHECK(saw_fast);
  CHECK(saw_robust);
}

TEST_CASE("config names round-trip") {
  CHECK(config_name(CodingRate::cr_1_3) == "robust");
  CHECK(config_name(CodingRate::cr_2_3) == "fast");
  CHECK(config_from_name("robust") == CodingRate::cr_1_3);
  CHECK(config_from_name("fast") == CodingRate::cr_2_3);
  CHECK_THROWS_AS(config_from_name("slow"), Error);
}
