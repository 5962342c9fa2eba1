#include <doctest.h>

#include "support/properties.hpp"

// Short runs of the property suites; the acceptance binary runs them at full size.
TEST_CASE("property suites (smoke size)") {
  for (const auto& [name, prop] : full::testing::all_properties()) {
    CAPTURE(name);
    auto outcome = prop(7, 60);
    for (const auto& f : outcome.failures) MESSAGE(f);
    CHECK(outcome.ok());
  }
}
