#include <catch2/catch_amalgamated.hpp>
TEST_CASE("x") { REQUIRE(true); }
