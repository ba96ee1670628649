#include <doctest.h>

TEST_CASE("placeholder test_ewrecon") { CHECK(true); }
