#include <catch_amalgamated.hpp>

#include "support/properties.hpp"

TEST_CASE("invariant properties hold on 1000 random cases each") {
    for (const auto& r : testprop::run_all(2024, 1000)) {
        INFO(r.name << ": " << r.first_failure);
        CHECK(r.cases >= 1000);
        CHECK(r.ok());
    }
}
