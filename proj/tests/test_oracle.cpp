#include <catch_amalgamated.hpp>

#include "epschain/oracle.hpp"
#include "support/generators.hpp"
#include "support/properties.hpp"

using namespace epschain;

TEST_CASE("oracle: two points") {
    const auto c = PointCloud::from_points("two", {{0, 0}, {0.5, 0}});
    const auto o = oracle_classes(c, 0, 1, Scale(0.5), 3);
    // [p,q], [p,p,q], [p,q,q]
    CHECK(o.chains.size() == 3);
    CHECK(o.class_count == 1);
    const auto o4 = oracle_classes(c, 0, 1, Scale(0.5), 4);
    CHECK(o4.chains.size() == 7);
    CHECK(o4.class_count == 1);
    CHECK(oracle_classes(c, 0, 1, Scale(0.4), 4).chains.empty());
}

TEST_CASE("oracle: filled triangle") {
    const auto c = PointCloud::from_points("tri", {{0, 0}, {1, 0}, {0.5, 0.8}});
    const auto o = oracle_classes(c, 0, 2, Scale(1), 3);
    CHECK(o.class_count == 1);
    REQUIRE(o.class_of_chain(std::vector<VertexId>{0, 1, 2}));
    CHECK_FALSE(o.index_of(std::vector<VertexId>{0, 1}));
}

TEST_CASE("oracle: hexagon has two antipodal classes") {
    const auto hex = testgen::polygon(6);
    const auto o = oracle_classes(hex, 0, 3, Scale(1.01), 7);
    CHECK(o.class_count == 2);
    const auto a = o.class_of_chain(std::vector<VertexId>{0, 1, 2, 3});
    const auto b = o.class_of_chain(std::vector<VertexId>{0, 5, 4, 3});
    REQUIRE(a);
    REQUIRE(b);
    CHECK(*a != *b);
    CHECK(o.class_of_chain(std::vector<VertexId>{0, 1, 2, 2, 3}) == a);
}

TEST_CASE("oracle: loops identify [x] with [x, x]") {
    const auto c = PointCloud::from_points("two", {{0, 0}, {0.5, 0}});
    const auto o = oracle_classes(c, 0, 0, Scale(0.5), 3);
    CHECK(o.class_count == 1);
    CHECK(o.index_of(std::vector<VertexId>{0}));
}

TEST_CASE("oracle: size guards") {
    const auto big = testgen::polygon(13);
    CHECK_THROWS_AS(oracle_classes(big, 0, 1, Scale(1), 3), std::invalid_argument);
    const auto c = testgen::polygon(12, 0.1);
    CHECK_THROWS_AS(oracle_classes(c, 0, 1, Scale(1), 8), std::length_error);
    CHECK_THROWS_AS(oracle_classes(c, 0, 1, Scale(1), 0), std::invalid_argument);
}

TEST_CASE("engine agrees with the oracle on small clouds") {
    const auto cmp = testprop::compare_with_oracle(99, 40, 8);
    CHECK(cmp.clouds == 40);
    CHECK(cmp.disagreements == 0);
    INFO(cmp.first_disagreement);
    CHECK(cmp.agreements > cmp.queries / 2);
}
