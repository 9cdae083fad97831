#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spdmeans/verify.hpp"
#include "spdmeans/types.hpp"

using namespace spdmeans;

namespace {

VerifyOptions quick_options(Suite suite) {
  VerifyOptions o;
  o.suite = suite;
  o.dim_min = 2;
  o.dim_max = 3;
  o.samples = 4;
  o.seed = 20240811;
  return o;
}

}  // namespace

TEST_CASE("every suite passes on a quick sweep") {
  for (Suite suite : {Suite::Properties, Suite::Order, Suite::Divergence, Suite::Barycenter}) {
    const VerifyReport report = run_verification(quick_options(suite));
    CHECK(report.properties.size() > 0);
    for (const PropertyResult& p : report.properties) {
      INFO(p.name, " margin=", p.worst_margin, " detail=",
           p.replays.empty() ? "" : p.replays.front().detail);
      CHECK(p.violations == 0);
      CHECK(p.samples > 0);
    }
  }
}

TEST_CASE("serial and parallel sweeps produce identical reports") {
  VerifyOptions o = quick_options(Suite::Order);
  o.exec = Execution::Serial;
  const VerifyReport serial = run_verification(o);
  o.exec = Execution::Parallel;
  const VerifyReport parallel = run_verification(o);
  REQUIRE(serial.properties.size() == parallel.properties.size());
  for (std::size_t i = 0; i < serial.properties.size(); ++i) {
    const PropertyResult& a = serial.properties[i];
    const PropertyResult& b = parallel.properties[i];
    CHECK(a.name == b.name);
    CHECK(a.samples == b.samples);
    CHECK(a.passes == b.passes);
    CHECK(a.skips == b.skips);
    CHECK(a.violations == b.violations);
    CHECK(a.worst_margin == b.worst_margin);
    CHECK(a.note == b.note);
  }
}

TEST_CASE("identical options give identical reports (determinism)") {
  const VerifyReport first = run_verification(quick_options(Suite::Divergence));
  const VerifyReport second = run_verification(quick_options(Suite::Divergence));
  REQUIRE(first.properties.size() == second.properties.size());
  for (std::size_t i = 0; i < first.properties.size(); ++i) {
    CHECK(first.properties[i].worst_margin == second.properties[i].worst_margin);
    CHECK(first.properties[i].passes == second.properties[i].passes);
  }
}

TEST_CASE("corrupted tolerances produce violations with replay records") {
  VerifyOptions o = quick_options(Suite::Properties);
  o.tol_scale = -1.0;
  const VerifyReport report = run_verification(o);
  CHECK(report.total_violations() > 0);
  bool has_replay = false;
  for (const PropertyResult& p : report.properties) {
    if (!p.replays.empty()) {
      has_replay = true;
      CHECK(p.replays.front().sample_seed != 0);
      CHECK_FALSE(p.replays.front().property.empty());
    }
  }
  CHECK(has_replay);
}

TEST_CASE("suite selection and validation") {
  CHECK(suite_from_string("order") == Suite::Order);
  CHECK(suite_from_string("all") == Suite::All);
  CHECK_THROWS_AS(suite_from_string("bogus"), InvalidParameter);

  VerifyOptions bad = quick_options(Suite::All);
  bad.samples = 0;
  CHECK_THROWS_AS(run_verification(bad), InvalidParameter);
  bad = quick_options(Suite::All);
  bad.dim_min = 3;
  bad.dim_max = 2;
  CHECK_THROWS_AS(run_verification(bad), InvalidParameter);
}
