#include <doctest.h>

#include <random>

#include "../support/av.hpp"
#include "../support/properties.hpp"
#include "rulebook/error.hpp"
#include "rulebook/rulebook.hpp"

using namespace rulebook;
using namespace rulebook::testing;

namespace {

const Rulebook& av_rulebook() {
  static const Instance inst = av_instance();
  return inst.rulebook();
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::ValidationError;
}

}  // namespace

TEST_CASE("violation lookups on the pedestrian tables") {
  const Rulebook& rb = av_rulebook();
  CHECK(rb.violation("r1", {"tau1", "xi2"}) == 225.0);
  CHECK(rb.violation("r2", {"tau4", "xi1"}) == 1.0);
  CHECK(rb.violation("r1", {"tau3", "xi2"}) == 0.0);
  CHECK(rb.violation("r3", {"tau2", "xi1"}) == 1.77);
}

TEST_CASE("violation and comparison errors") {
  const Rulebook& rb = av_rulebook();
  CHECK(kind_of([&] { rb.violation("r9", {"tau1", "xi1"}); }) == ErrorKind::UnknownRule);
  CHECK(kind_of([&] { rb.violation("r1", {"tau9", "xi1"}); }) == ErrorKind::UnknownRealization);
  CHECK(kind_of([&] { rb.violation("r1", {"tau1", "xi9"}); }) == ErrorKind::UnknownRealization);
  CHECK(kind_of([&] { rb.compare_realizations({"tau1", "xi1"}, {"tau1", "xi7"}); }) ==
        ErrorKind::UnknownRealization);
}

TEST_CASE("realization comparisons") {
  const Rulebook& rb = av_rulebook();
  // tau2 loses on r3 at xi1 with nothing above to make up for it.
  CHECK(rb.compare_realizations({"tau2", "xi1"}, {"tau1", "xi1"}) == Verdict::Higher);
  CHECK(rb.compare_realizations({"tau2", "xi1"}, {"tau2", "xi1"}) == Verdict::Equal);
  // At xi2, tau2's r3 loss is outweighed by its r1 advantage.
  CHECK(rb.compare_realizations({"tau2", "xi2"}, {"tau1", "xi2"}) == Verdict::Lower);
  CHECK(rb.compare_realizations({"tau1", "xi2"}, {"tau2", "xi2"}) == Verdict::Higher);
}

TEST_CASE("equal-rank rules do not compensate each other") {
  const std::vector<Edge> tie = {{"a", "b"}, {"b", "a"}};
  const Rulebook rb({"t0", "t1"}, {"x"}, {{"a", {1, 0}}, {"b", {0, 1}}},
                    Preorder::build({"a", "b"}, tie));
  CHECK(rb.compare_realizations({"t0", "x"}, {"t1", "x"}) == Verdict::Incomparable);

  const std::vector<Edge> strict = {{"a", "b"}};
  const Rulebook ranked({"t0", "t1"}, {"x"}, {{"a", {1, 0}}, {"b", {0, 1}}},
                        Preorder::build({"a", "b"}, strict));
  CHECK(ranked.compare_realizations({"t0", "x"}, {"t1", "x"}) == Verdict::Higher);
}

TEST_CASE("rulebook construction is validated") {
  const Preorder p = Preorder::build({"a"}, {});
  CHECK(kind_of([&] { Rulebook({"t"}, {"x"}, {{"a", {-1}}}, p); }) == ErrorKind::ValidationError);
  CHECK(kind_of([&] { Rulebook({"t"}, {"x"}, {{"a", {1, 2}}}, p); }) == ErrorKind::ValidationError);
  CHECK(kind_of([&] { Rulebook({"t", "t"}, {"x"}, {{"a", {1, 2}}}, p); }) ==
        ErrorKind::DuplicateElement);
  const Preorder q = Preorder::build({"b"}, {});
  CHECK(kind_of([&] { Rulebook({"t"}, {"x"}, {{"a", {1}}}, q); }) == ErrorKind::ValidationError);
}

TEST_CASE("all 64 pedestrian realization pairs agree with the definition") {
  const Rulebook& rb = av_rulebook();
  const std::vector<std::pair<int, int>> edges = {{0, 1}, {1, 2}, {1, 3}};
  const auto above = oracle::closure(4, edges);
  int pairs = 0;
  for (std::size_t ta = 0; ta < 4; ++ta) {
    for (std::size_t ea = 0; ea < 2; ++ea) {
      for (std::size_t tb = 0; tb < 4; ++tb) {
        for (std::size_t eb = 0; eb < 2; ++eb) {
          const auto x = rb.profile(ta, ea), y = rb.profile(tb, eb);
          const bool xy = oracle::at_least_as_good(above, x, y);
          const bool yx = oracle::at_least_as_good(above, y, x);
          const Verdict got = rb.compare_realizations({rb.trajectories()[ta], rb.env_trajectories()[ea]},
                                                      {rb.trajectories()[tb], rb.env_trajectories()[eb]});
          CHECK(got == verdict_from(yx, xy));
          CHECK((got == Verdict::Equal) == (x == y));
          ++pairs;
        }
      }
    }
  }
  CHECK(pairs == 64);
}

TEST_CASE("realization preorder laws on random rulebooks") {
  std::mt19937_64 rng(31);
  for (int iter = 0; iter < 500; ++iter) {
    const RandomCase rc = random_case(rng);
    const std::string msg = check_realization_preorder(rc);
    INFO(msg);
    REQUIRE(msg.empty());
  }
}
