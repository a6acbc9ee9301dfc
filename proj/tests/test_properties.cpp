#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "renyi/properties.hpp"

using namespace renyi;

namespace {

void expect(const props::Check& c) {
  INFO(c.name << " worst " << c.worst << " tol " << c.tol);
  CHECK(c.pass());
}

}  // namespace

TEST_CASE("divergence properties on small random samples") {
  props::WitnessTally w;
  expect(props::ordering(8, 101, w));
  expect(props::data_processing(6, 102, w));
  expect(props::state_subadditivity(4, 103, w));
  expect(props::isometric_invariance(6, 104, w));
  expect(props::homogeneity(6, 105, w));
  expect(props::block_additivity(6, 106, w));
  expect(props::cq_direct_sum(6, 107, w));
  expect(props::large_alpha_envelope(6, 108, w));
  CHECK(w.failed == 0);
  CHECK(w.solves > 0);
}

TEST_CASE("channel properties on small random samples") {
  props::WitnessTally w;
  expect(props::chain_rule(3, 201, w));
  expect(props::channel_subadditivity(2, 202, w));
  CHECK(w.failed == 0);
}

TEST_CASE("mean and pinching identities") {
  expect(props::mean_identities(10, 301));
  expect(props::pinching_inequality(10, 302));
}
